#pragma once

#include <compare>
#include <string>
#include <vector>

namespace codeq::history {

/// Inclusive, 1-based line range.
struct LineRange {
  int first = 0;
  int last = 0;
  auto operator<=>(const LineRange&) const = default;
};

enum class DiffOp { Keep, Remove, Add };

/// Shortest edit script turning `before` into `after` (Myers). The kept lines
/// form a longest common subsequence.
std::vector<DiffOp> diff_lines(const std::vector<std::string>& before,
                               const std::vector<std::string>& after);

/// Changed line ranges of `after`. An added or replaced block yields its new
/// lines; a pure removal yields the single line now at the removal point,
/// clamped to the file. Result is sorted and non-overlapping.
std::vector<LineRange> changed_ranges(const std::vector<std::string>& before,
                                      const std::vector<std::string>& after);

}  // namespace codeq::history
