#include "codeq/history/diff.hpp"

#include <algorithm>
#include <unordered_map>

namespace codeq::history {

namespace {

// Interns lines so the search compares integers.
std::pair<std::vector<int>, std::vector<int>> intern(const std::vector<std::string>& a,
                                                     const std::vector<std::string>& b) {
  std::unordered_map<std::string_view, int> ids;
  auto map = [&](const std::vector<std::string>& lines) {
    std::vector<int> out;
    out.reserve(lines.size());
    for (const auto& l : lines) {
      out.push_back(ids.emplace(l, static_cast<int>(ids.size())).first->second);
    }
    return out;
  };
  auto left = map(a);
  auto right = map(b);
  return {std::move(left), std::move(right)};
}

}  // namespace

std::vector<DiffOp> diff_lines(const std::vector<std::string>& before,
                               const std::vector<std::string>& after) {
  auto [a, b] = intern(before, after);
  const int n = static_cast<int>(a.size());
  const int m = static_cast<int>(b.size());

  // trace[d][(k + d) / 2] is the furthest x on diagonal k after d edits.
  std::vector<std::vector<int>> trace;
  auto at = [&](int d, int k) { return trace[static_cast<std::size_t>(d)][static_cast<std::size_t>((k + d) / 2)]; };
  bool done = false;
  for (int d = 0; d <= n + m && !done; ++d) {
    std::vector<int> row(static_cast<std::size_t>(d + 1));
    for (int k = -d; k <= d; k += 2) {
      int x;
      if (d == 0) {
        x = 0;
      } else if (k == -d || (k != d && at(d - 1, k - 1) < at(d - 1, k + 1))) {
        x = at(d - 1, k + 1);
      } else {
        x = at(d - 1, k - 1) + 1;
      }
      int y = x - k;
      while (x < n && y < m && a[static_cast<std::size_t>(x)] == b[static_cast<std::size_t>(y)]) {
        ++x;
        ++y;
      }
      row[static_cast<std::size_t>((k + d) / 2)] = x;
      if (x >= n && y >= m) done = true;
    }
    trace.push_back(std::move(row));
  }

  std::vector<DiffOp> ops;
  int x = n;
  int y = m;
  for (int d = static_cast<int>(trace.size()) - 1; d >= 0; --d) {
    int k = x - y;
    if (d == 0) {
      while (x > 0 && y > 0) {
        ops.push_back(DiffOp::Keep);
        --x;
        --y;
      }
      break;
    }
    int prev_k = (k == -d || (k != d && at(d - 1, k - 1) < at(d - 1, k + 1))) ? k + 1 : k - 1;
    int prev_x = at(d - 1, prev_k);
    int prev_y = prev_x - prev_k;
    while (x > prev_x && y > prev_y) {
      ops.push_back(DiffOp::Keep);
      --x;
      --y;
    }
    ops.push_back(prev_k == k + 1 ? DiffOp::Add : DiffOp::Remove);
    x = prev_x;
    y = prev_y;
  }
  std::reverse(ops.begin(), ops.end());
  return ops;
}

std::vector<LineRange> changed_ranges(const std::vector<std::string>& before,
                                      const std::vector<std::string>& after) {
  const int total = static_cast<int>(after.size());
  std::vector<LineRange> ranges;
  auto ops = diff_lines(before, after);
  int line = 0;  // lines of `after` consumed so far
  std::size_t i = 0;
  while (i < ops.size()) {
    if (ops[i] == DiffOp::Keep) {
      ++line;
      ++i;
      continue;
    }
    int first_added = -1;
    int last_added = -1;
    int point = line;
    for (; i < ops.size() && ops[i] != DiffOp::Keep; ++i) {
      if (ops[i] == DiffOp::Add) {
        ++line;
        if (first_added < 0) first_added = line;
        last_added = line;
      }
    }
    if (first_added > 0) {
      ranges.push_back({first_added, last_added});
    } else if (total > 0) {
      int at_point = std::clamp(point + 1, 1, total);
      ranges.push_back({at_point, at_point});
    }
  }

  std::sort(ranges.begin(), ranges.end());
  std::vector<LineRange> merged;
  for (const auto& r : ranges) {
    if (!merged.empty() && r.first <= merged.back().last) {
      merged.back().last = std::max(merged.back().last, r.last);
    } else {
      merged.push_back(r);
    }
  }
  return merged;
}

}  // namespace codeq::history
