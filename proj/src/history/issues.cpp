#include "codeq/history/issues.hpp"

#include "codeq/support/error.hpp"
#include "codeq/support/text.hpp"
#include "json.hpp"

namespace codeq::history {

IssueTracker IssueTracker::load(const std::filesystem::path& file) {
  return parse(text::read_file(file));
}

IssueTracker IssueTracker::parse(const std::string& json_text) {
  IssueTracker tracker;
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(Errc::InvalidValue, std::string("malformed issue file: ") + e.what());
  }
  if (!doc.is_array()) fail(Errc::InvalidValue, "issue file must hold a JSON array");
  for (const auto& item : doc) {
    if (!item.is_object() || !item.contains("number") || !item["number"].is_number_integer()) {
      fail(Errc::InvalidValue, "every issue needs an integer \"number\"");
    }
    Issue issue;
    issue.number = item["number"].get<std::int64_t>();
    issue.title = item.value("title", "");
    issue.body = item.value("body", "");
    if (!tracker.issues_.emplace(issue.number, issue).second) {
      fail(Errc::InvalidValue, "issue #" + std::to_string(issue.number) + " appears twice");
    }
  }
  return tracker;
}

const Issue& IssueTracker::lookup(std::int64_t number) const {
  auto it = issues_.find(number);
  if (it == issues_.end()) fail(Errc::UnknownIssue, "no issue #" + std::to_string(number));
  return it->second;
}

}  // namespace codeq::history
