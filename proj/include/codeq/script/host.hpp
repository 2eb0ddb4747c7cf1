#pragma once

#include <chrono>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "codeq/engine/registry.hpp"
#include "codeq/lang/program.hpp"
#include "codeq/script/codec.hpp"

namespace codeq::script {

struct ScriptQuery {
  std::string name;  // file stem
  std::filesystem::path path;
  std::vector<std::string> command;  // interpreter and its arguments, without the script path
};

struct Discovery {
  std::vector<ScriptQuery> scripts;  // sorted by name
  std::vector<std::string> warnings;
};

/// Interpreter for a script: the shebang line when present, otherwise by
/// extension (.py python3, .sh sh, .js node, .rb ruby, .pl perl), otherwise
/// the file itself when executable.
std::optional<std::vector<std::string>> interpreter_for(const std::filesystem::path& script);

/// One query per script file directly inside dir. Names listed in `reserved`
/// (the builtins) shadow scripts of the same name, with a warning.
Discovery discover(const std::filesystem::path& dir, const std::set<std::string>& reserved = {});

struct ScriptRequest {
  std::optional<NodeId> context;
  std::vector<std::string> args;
  std::optional<TupleSet> input;
  const lang::Program* program = nullptr;
};

struct ScriptResponse {
  TupleSet output;
  std::vector<std::string> warnings;
};

/// The request document sent on standard input.
Json request_document(const ScriptRequest& request);

/// Runs the script once. Throws ScriptCrash (non-zero exit, with standard
/// error), Timeout, ProtocolError (malformed response) or ScriptError (the
/// script reported an error).
ScriptResponse invoke(const ScriptQuery& query, const ScriptRequest& request,
                      std::chrono::milliseconds timeout = std::chrono::seconds(30));

/// Applies and strips `edit:` tuples: every
/// `edit:(op: "insertPrintFront", node, seq, arg0, arg1, ...)` becomes a
/// print statement at the start of the method, ordered by seq. Returns the
/// edited program and the remaining tuples. Throws ProtocolError for unknown
/// operations or unparsable arguments, NotAMethodNode for non-method targets.
std::pair<lang::Program, TupleSet> apply_edits(const lang::Program& program,
                                               const TupleSet& output);

/// A registry entry that invokes the script and writes any edits back
/// through the context's workspace.
engine::QueryDef script_query_def(ScriptQuery query,
                                  std::chrono::milliseconds timeout = std::chrono::seconds(30));

}  // namespace codeq::script
