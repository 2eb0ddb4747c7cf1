#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "codeq/history/history.hpp"
#include "codeq/history/issues.hpp"
#include "codeq/lang/program.hpp"
#include "codeq/tuple/tuple_set.hpp"

namespace codeq::engine {

/// The corpus on disk and the program parsed from it. Mutating queries go
/// through commit(), which rewrites only the files whose trees changed.
class Workspace {
 public:
  Workspace() = default;
  Workspace(std::filesystem::path root, lang::Program program);
  /// Parses every `*.mini` file below root.
  static Workspace open(const std::filesystem::path& root);

  const std::filesystem::path& root() const { return root_; }
  const lang::Program& program() const { return program_; }

  /// Writes changed files (pretty-printed) and adopts the new program. All
  /// files are staged first; nothing is replaced unless every stage succeeds.
  /// Holds an exclusive flock on the root directory meanwhile. Throws
  /// WriteFailure.
  void commit(lang::Program updated);

  /// When false, commit() only adopts the program.
  void set_write_back(bool enabled) { write_back_ = enabled; }
  std::vector<std::string> written() const { return written_; }

 private:
  std::filesystem::path root_;
  lang::Program program_;
  bool write_back_ = true;
  std::vector<std::string> written_;
};

struct RenderPlan {
  std::string renderer;  // messages, arrows, highlight, table, heatmap, ...
  TupleSet payload;
  std::vector<std::string> options;
  bool automatic = false;
};

/// Everything a query may consult while running: the program, the context
/// node, history and issue providers, and where scripts live.
class ExecutionContext {
 public:
  explicit ExecutionContext(Workspace& workspace) : workspace_(&workspace) {}

  Workspace& workspace() { return *workspace_; }
  const lang::Program& program() const { return workspace_->program(); }

  /// Throws UnknownNodeId when the id does not resolve.
  void set_focus(std::optional<NodeId> node);
  const std::optional<NodeId>& focus() const { return focus_; }

  std::shared_ptr<const history::HistoryProvider> history;
  std::shared_ptr<const history::IssueTracker> issues;
  /// Directory of the corpus relative to the repository root, when the
  /// corpus lives inside it.
  std::string corpus_prefix;
  std::filesystem::path script_dir;
  std::filesystem::path working_dir = ".";
  std::string output_format = "text";

  void warn(std::string message) { warnings_.push_back(std::move(message)); }
  void render(RenderPlan plan) { renders_.push_back(std::move(plan)); }
  const std::vector<std::string>& warnings() const { return warnings_; }
  const std::vector<RenderPlan>& renders() const { return renders_; }
  void clear_run_output() {
    warnings_.clear();
    renders_.clear();
  }

 private:
  Workspace* workspace_;
  std::optional<NodeId> focus_;
  std::vector<std::string> warnings_;
  std::vector<RenderPlan> renders_;
};

}  // namespace codeq::engine
