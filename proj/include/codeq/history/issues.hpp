#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

namespace codeq::history {

struct Issue {
  std::int64_t number = 0;
  std::string title;
  std::string body;
};

/// Issue lookup backed by a JSON file `[{"number", "title", "body"}, ...]`.
class IssueTracker {
 public:
  IssueTracker() = default;
  /// Throws FileNotFound, or InvalidValue for malformed documents and
  /// repeated numbers.
  static IssueTracker load(const std::filesystem::path& file);
  static IssueTracker parse(const std::string& json_text);

  /// Throws UnknownIssue.
  const Issue& lookup(std::int64_t number) const;
  const std::map<std::int64_t, Issue>& all() const { return issues_; }

 private:
  std::map<std::int64_t, Issue> issues_;
};

}  // namespace codeq::history
