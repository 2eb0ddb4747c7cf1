#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "codeq/history/diff.hpp"
#include "codeq/lang/program.hpp"
#include "codeq/tuple/tuple_set.hpp"

namespace codeq::history {

struct Commit {
  std::string id;
  std::string author;
  std::string message;
  std::optional<std::string> parent;

  bool operator==(const Commit&) const = default;
};

struct ChangeRecord {
  std::string commit_id;
  std::string file;
  std::vector<LineRange> ranges;

  bool operator==(const ChangeRecord&) const = default;
};

/// Read access to a project's version history. Implementations are read-only
/// once opened.
class HistoryProvider {
 public:
  virtual ~HistoryProvider() = default;

  virtual std::string backend() const = 0;
  /// Commits reachable from HEAD along first parents, newest first.
  virtual std::vector<Commit> commits() const = 0;
  /// Throws UnknownRef or AmbiguousPrefix.
  virtual Commit resolve(const std::string& ref) const = 0;
  /// Every file of the commit's tree mapped to a key; equal keys mean equal
  /// contents.
  virtual std::map<std::string, std::string> tree(const Commit& commit) const = 0;
  virtual std::map<std::string, std::string> read(const Commit& commit,
                                                  const std::vector<std::string>& paths) const = 0;
};

/// A directory holding `log.txt` (lines `id|author|message|parent`, oldest
/// first) and one numbered snapshot folder per line. An optional `refs.txt`
/// adds `name|id` branch names. Accepts the fixture root or its `history`
/// folder. Throws NoRepository.
std::unique_ptr<HistoryProvider> open_fixture_history(const std::filesystem::path& dir);

/// A git working tree; shells out to `git`. Throws NoRepository.
std::unique_ptr<HistoryProvider> open_git_history(const std::filesystem::path& dir);

/// Picks the backend by looking at the directory. Throws NoRepository.
std::unique_ptr<HistoryProvider> open_history(const std::filesystem::path& dir);

/// Up to n newest commits, newest first. Throws NoRepository when there are
/// none at all.
std::vector<Commit> last_commits(const HistoryProvider& history, std::size_t n);

Commit resolve_ref(const HistoryProvider& history, const std::string& ref);

/// One record per file whose contents differ and which still exists with
/// content in `newer`. `older` may be absent (everything is new).
std::vector<ChangeRecord> changes_between(const HistoryProvider& history,
                                          const std::optional<Commit>& older, const Commit& newer);

/// Changes a commit introduced relative to its first parent.
std::vector<ChangeRecord> changes_in(const HistoryProvider& history, const Commit& commit);

/// `change:(id: commit, ast: node)` for every granularity node whose span
/// overlaps a changed range of its file.
TupleSet map_changes_to_nodes(const lang::Program& program,
                              const std::vector<ChangeRecord>& records,
                              const lang::KindFilter& granularity);

/// Maps each commit's own changes onto the program parsed from that commit's
/// snapshot, keeping nodes whose id still exists in `current`. Only snapshot
/// files below `corpus_prefix` (a relative directory, may be empty) take part;
/// the prefix is stripped so paths line up with the current corpus.
TupleSet changed_nodes(const HistoryProvider& history, const std::vector<Commit>& commits,
                       const lang::Program& current, const lang::KindFilter& granularity,
                       const std::string& corpus_prefix = {},
                       std::vector<std::string>* warnings = nullptr);

/// `commit:(id, author, message)` per commit.
TupleSet commit_tuples(const std::vector<Commit>& commits);

/// Numbers of every `#<digits>` in the text, in order.
std::vector<std::int64_t> issues_referenced(const std::string& message);

/// Builds a git repository at `target` replaying a fixture history, one git
/// commit per fixture commit, with fixed identities and dates.
void materialize_as_git(const std::filesystem::path& fixture_dir,
                        const std::filesystem::path& target);

}  // namespace codeq::history
