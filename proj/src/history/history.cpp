#include "codeq/history/history.hpp"

#include <charconv>
#include <regex>
#include <set>

#include "codeq/lang/parser.hpp"
#include "codeq/support/error.hpp"
#include "codeq/support/process.hpp"
#include "codeq/support/text.hpp"

namespace codeq::history {

namespace fs = std::filesystem;

std::unique_ptr<HistoryProvider> open_history(const fs::path& dir) {
  if (fs::exists(dir / "log.txt") || fs::exists(dir / "history" / "log.txt")) {
    return open_fixture_history(dir);
  }
  return open_git_history(dir);
}

std::vector<Commit> last_commits(const HistoryProvider& history, std::size_t n) {
  if (n == 0) fail(Errc::InvalidValue, "commit count must be at least 1");
  auto all = history.commits();
  if (all.empty()) fail(Errc::NoRepository, "repository has no commits");
  if (all.size() > n) all.resize(n);
  return all;
}

Commit resolve_ref(const HistoryProvider& history, const std::string& ref) {
  return history.resolve(ref);
}

std::vector<ChangeRecord> changes_between(const HistoryProvider& history,
                                          const std::optional<Commit>& older, const Commit& newer) {
  std::map<std::string, std::string> before;
  if (older) before = history.tree(*older);
  auto after = history.tree(newer);

  std::vector<std::string> changed;
  for (const auto& [path, key] : after) {
    auto it = before.find(path);
    if (it == before.end() || it->second != key) changed.push_back(path);
  }
  if (changed.empty()) return {};

  std::vector<std::string> existed;
  for (const auto& p : changed) {
    if (before.count(p)) existed.push_back(p);
  }
  auto new_text = history.read(newer, changed);
  std::map<std::string, std::string> old_text;
  if (older) old_text = history.read(*older, existed);

  std::vector<ChangeRecord> records;
  for (const auto& path : changed) {
    auto new_lines = text::split_lines(new_text[path]);
    std::vector<std::string> old_lines;
    if (auto it = old_text.find(path); it != old_text.end()) old_lines = text::split_lines(it->second);
    auto ranges = changed_ranges(old_lines, new_lines);
    if (!ranges.empty()) records.push_back({newer.id, path, std::move(ranges)});
  }
  return records;
}

std::vector<ChangeRecord> changes_in(const HistoryProvider& history, const Commit& commit) {
  std::optional<Commit> parent;
  if (commit.parent) parent = history.resolve(*commit.parent);
  return changes_between(history, parent, commit);
}

TupleSet map_changes_to_nodes(const lang::Program& program,
                              const std::vector<ChangeRecord>& records,
                              const lang::KindFilter& granularity) {
  TupleSet out;
  for (const auto& e : program.entries()) {
    if (!granularity.matches(e.node->kind)) continue;
    const std::string& file = program.file_of(*e.node);
    for (const auto& rec : records) {
      if (rec.file != file) continue;
      for (const auto& r : rec.ranges) {
        if (e.node->span.overlaps_lines(r.first, r.last)) {
          out.insert(Tuple::make("change", {{"id", Value::text(rec.commit_id)},
                                            {"ast", Value::node(e.id)}}));
          break;
        }
      }
    }
  }
  return out;
}

TupleSet changed_nodes(const HistoryProvider& history, const std::vector<Commit>& commits,
                       const lang::Program& current, const lang::KindFilter& granularity,
                       const std::string& corpus_prefix, std::vector<std::string>* warnings) {
  std::string prefix = corpus_prefix;
  if (!prefix.empty() && prefix.back() != '/') prefix += '/';
  auto relevant = [&](const std::string& path) {
    return path.size() > 5 && path.compare(path.size() - 5, 5, ".mini") == 0 &&
           path.compare(0, prefix.size(), prefix) == 0;
  };

  TupleSet out;
  for (const auto& commit : commits) {
    std::vector<ChangeRecord> records;
    for (auto& rec : changes_in(history, commit)) {
      if (!relevant(rec.file)) continue;
      rec.file.erase(0, prefix.size());
      records.push_back(std::move(rec));
    }
    if (records.empty()) continue;

    std::vector<std::string> paths;
    for (const auto& [path, _] : history.tree(commit)) {
      if (relevant(path)) paths.push_back(path);
    }
    std::vector<lang::SourceText> sources;
    for (auto& [path, contents] : history.read(commit, paths)) {
      sources.push_back({path.substr(prefix.size()), std::move(contents)});
    }
    lang::Program snapshot;
    try {
      snapshot = lang::parse_program(sources);
    } catch (const Error& e) {
      if (warnings) {
        warnings->push_back("commit " + commit.id + " skipped: " + e.what());
      }
      continue;
    }
    for (const auto& t : map_changes_to_nodes(snapshot, records, granularity)) {
      const lang::Node* now = current.find(t.find("ast")->as_node());
      if (now && granularity.matches(now->kind)) out.insert(t);
    }
  }
  return out;
}

TupleSet commit_tuples(const std::vector<Commit>& commits) {
  TupleSet out;
  for (const auto& c : commits) {
    out.insert(Tuple::make("commit", {{"id", Value::text(c.id)},
                                      {"author", Value::text(c.author)},
                                      {"message", Value::text(c.message)}}));
  }
  return out;
}

std::vector<std::int64_t> issues_referenced(const std::string& message) {
  static const std::regex pattern(R"(#(\d+))");
  std::vector<std::int64_t> out;
  for (auto it = std::sregex_iterator(message.begin(), message.end(), pattern);
       it != std::sregex_iterator(); ++it) {
    std::string digits = (*it)[1].str();
    std::int64_t n = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
    if (ec == std::errc()) out.push_back(n);
  }
  return out;
}

namespace {

void run_git(const fs::path& repo, std::vector<std::string> args,
             std::vector<std::pair<std::string, std::string>> env = {}) {
  ProcessOptions options;
  options.argv = {"git", "-C", repo.string(), "-c", "commit.gpgsign=false", "-c",
                  "core.hooksPath=/dev/null"};
  options.argv.insert(options.argv.end(), args.begin(), args.end());
  options.env = std::move(env);
  options.env.emplace_back("GIT_CONFIG_NOSYSTEM", "1");
  options.env.emplace_back("GIT_CONFIG_GLOBAL", "/dev/null");
  auto r = run_process(options);
  if (!r.ok()) {
    fail(Errc::Io, "git " + args.front() + " failed: " +
                       std::string(text::trim(r.spawn_error ? *r.spawn_error : r.err)));
  }
}

}  // namespace

void materialize_as_git(const fs::path& fixture_dir, const fs::path& target) {
  auto fixture = open_fixture_history(fixture_dir);
  auto newest_first = fixture->commits();
  fs::create_directories(target);
  run_git(target, {"init", "-q", "-b", "main"});

  long seconds = 1700000000;
  for (auto it = newest_first.rbegin(); it != newest_first.rend(); ++it) {
    for (const auto& entry : fs::directory_iterator(target)) {
      if (entry.path().filename() != ".git") fs::remove_all(entry.path());
    }
    for (const auto& [path, contents] : fixture->read(*it, [&] {
           std::vector<std::string> paths;
           for (const auto& [p, _] : fixture->tree(*it)) paths.push_back(p);
           return paths;
         }())) {
      fs::create_directories((target / path).parent_path());
      text::write_file(target / path, contents);
    }
    run_git(target, {"add", "-A"});
    std::string date = std::to_string(seconds += 60) + " +0000";
    std::string email = it->author + "@example.invalid";
    run_git(target,
            {"commit", "-q", "--allow-empty", "--cleanup=verbatim", "-m", it->message},
            {{"GIT_AUTHOR_NAME", it->author},
             {"GIT_AUTHOR_EMAIL", email},
             {"GIT_AUTHOR_DATE", date},
             {"GIT_COMMITTER_NAME", it->author},
             {"GIT_COMMITTER_EMAIL", email},
             {"GIT_COMMITTER_DATE", date}});
  }
}

}  // namespace codeq::history
