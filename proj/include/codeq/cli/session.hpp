#pragma once

#include <chrono>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "codeq/cli/render.hpp"
#include "codeq/engine/executor.hpp"
#include "codeq/prompt/alias.hpp"

namespace codeq::cli {

struct SessionOptions {
  std::filesystem::path corpus = ".";
  std::optional<std::filesystem::path> repo;
  std::optional<std::filesystem::path> issues;
  std::optional<std::filesystem::path> scripts;
  /// Alias file, read at start and rewritten when aliases change.
  std::optional<std::filesystem::path> aliases;
  Format format = Format::Text;
  bool color = false;
  bool write_back = true;
  std::chrono::milliseconds script_timeout = std::chrono::seconds(30);
};

/// A corpus with its history, issues, scripts, aliases and focus: everything
/// one `run` or one REPL needs.
class Session {
 public:
  /// Throws ParseError for a corpus that does not parse and NoRepository /
  /// FileNotFound for missing providers.
  explicit Session(SessionOptions options);
  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;

  const lang::Program& program() const { return workspace_.program(); }
  engine::ExecutionContext& context() { return context_; }
  const engine::Registry& registry() const { return registry_; }
  const prompt::AliasTable& aliases() const { return aliases_; }
  const SessionOptions& options() const { return options_; }
  /// Notes from opening the session (skipped scripts and the like).
  const std::vector<std::string>& notices() const { return notices_; }

  /// NODEID or FILE:LINE:COL (innermost node at that position). Throws
  /// UnknownNodeId or InvalidValue.
  void focus(const std::string& where);
  void clear_focus() { context_.set_focus(std::nullopt); }
  const std::optional<NodeId>& focus() const { return context_.focus(); }

  /// Parses, expands aliases, validates and executes one prompt line.
  engine::RunResult run(std::string_view prompt_text);
  /// Every plan of the run in order, followed by nothing else; warnings are
  /// left to the caller.
  std::string render(const engine::RunResult& result) const;

  /// Throws InvalidValue when the name belongs to a query, plus whatever
  /// AliasTable::define raises. Persists the alias file when configured.
  void define_alias(const std::string& name, const std::string& body);
  void set_format(Format format) { options_.format = format; }

  /// Re-reads corpus, scripts and aliases. A focus that no longer resolves is
  /// dropped and reported in the returned notes.
  std::vector<std::string> reload();

 private:
  void load_scripts();

  SessionOptions options_;
  engine::Workspace workspace_;
  engine::ExecutionContext context_;
  engine::Registry registry_;
  prompt::AliasTable aliases_;
  std::vector<std::string> notices_;
};

/// `FILE:LINE:COL` split into its parts, or nullopt for anything else.
struct Position {
  std::string file;
  int line = 0;
  int column = 0;
};
std::optional<Position> parse_position(const std::string& text);

}  // namespace codeq::cli
