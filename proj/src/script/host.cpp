#include "codeq/script/host.hpp"

#include <algorithm>
#include <map>
#include <sys/stat.h>

#include "codeq/engine/context.hpp"
#include "codeq/lang/parser.hpp"
#include "codeq/support/error.hpp"
#include "codeq/support/process.hpp"
#include "codeq/support/text.hpp"

namespace codeq::script {

namespace fs = std::filesystem;

std::optional<std::vector<std::string>> interpreter_for(const fs::path& script) {
  std::string head;
  try {
    head = text::read_file(script).substr(0, 256);
  } catch (const Error&) {
    return std::nullopt;
  }
  if (text::starts_with(head, "#!")) {
    std::string line = head.substr(2, head.find('\n') == std::string::npos ? std::string::npos
                                                                           : head.find('\n') - 2);
    std::vector<std::string> command;
    for (const auto& part : text::split(std::string(text::trim(line)), ' ')) {
      if (!part.empty()) command.push_back(part);
    }
    if (!command.empty()) return command;
  }
  static const std::map<std::string, std::string> by_extension{
      {".py", "python3"}, {".sh", "sh"}, {".js", "node"}, {".rb", "ruby"}, {".pl", "perl"}};
  if (auto it = by_extension.find(script.extension().string()); it != by_extension.end()) {
    return std::vector<std::string>{it->second};
  }
  struct stat st {};
  if (::stat(script.c_str(), &st) == 0 && (st.st_mode & S_IXUSR)) {
    return std::vector<std::string>{};
  }
  return std::nullopt;
}

Discovery discover(const fs::path& dir, const std::set<std::string>& reserved) {
  Discovery found;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) return found;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (entry.is_regular_file() && entry.path().filename().string().front() != '.') {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::map<std::string, ScriptQuery> by_name;
  for (const auto& file : files) {
    std::string name = file.stem().string();
    if (!text::is_identifier(name)) continue;
    auto command = interpreter_for(file);
    if (!command) {
      found.warnings.push_back("skipping " + file.string() + ": no interpreter known");
      continue;
    }
    if (reserved.count(name)) {
      found.warnings.push_back("script " + file.filename().string() +
                               " is shadowed by the builtin query '" + name + "'");
      continue;
    }
    if (by_name.count(name)) {
      found.warnings.push_back("script " + file.filename().string() + " ignored: '" + name +
                               "' is already provided by " +
                               by_name[name].path.filename().string());
      continue;
    }
    by_name[name] = ScriptQuery{name, file, *command};
  }
  for (auto& [_, q] : by_name) found.scripts.push_back(std::move(q));
  return found;
}

Json request_document(const ScriptRequest& request) {
  Json doc;
  doc["context"] = request.context ? Json(request.context->str()) : Json(nullptr);
  doc["args"] = request.args;
  doc["input"] = request.input ? encode(*request.input) : Json(nullptr);
  doc["astSummary"] = request.program ? ast_summary(*request.program) : Json::array();
  return doc;
}

ScriptResponse invoke(const ScriptQuery& query, const ScriptRequest& request,
                      std::chrono::milliseconds timeout) {
  ProcessOptions options;
  options.argv = query.command;
  options.argv.push_back(query.path.string());
  options.stdin_data = dump(request_document(request));
  options.stdin_data += '\n';
  options.timeout = timeout;
  ProcessResult result = run_process(options);

  if (result.spawn_error) {
    fail(Errc::ScriptCrash, query.name + ": cannot start " + query.command.front() + ": " +
                                *result.spawn_error);
  }
  if (result.timed_out) {
    fail(Errc::Timeout, query.name + ": no response within " + std::to_string(timeout.count()) +
                            " ms");
  }
  if (result.signaled || result.exit_code != 0) {
    std::string status = result.signaled ? "was killed by a signal"
                                         : "exited with status " + std::to_string(result.exit_code);
    std::string err(text::trim(result.err));
    fail(Errc::ScriptCrash, query.name + " " + status + (err.empty() ? "" : ":\n" + err));
  }

  Json doc;
  try {
    doc = Json::parse(result.out);
  } catch (const Json::parse_error& e) {
    fail(Errc::ProtocolError, query.name + ": response is not JSON (" + e.what() + ")");
  }
  if (!doc.is_object()) fail(Errc::ProtocolError, query.name + ": response must be an object");
  ScriptResponse response;
  if (doc.contains("warnings") && !doc["warnings"].is_null()) {
    if (!doc["warnings"].is_array()) fail(Errc::ProtocolError, query.name + ": bad \"warnings\"");
    for (const auto& w : doc["warnings"]) {
      if (!w.is_string()) fail(Errc::ProtocolError, query.name + ": warnings must be strings");
      response.warnings.push_back(w.get<std::string>());
    }
  }
  if (doc.contains("error") && !doc["error"].is_null()) {
    if (!doc["error"].is_string()) fail(Errc::ProtocolError, query.name + ": bad \"error\"");
    fail(Errc::ScriptError, query.name + ": " + doc["error"].get<std::string>());
  }
  if (!doc.contains("output")) fail(Errc::ProtocolError, query.name + ": missing \"output\"");
  try {
    response.output = decode(doc["output"]);
  } catch (const Error& e) {
    fail(Errc::ProtocolError, query.name + ": " + e.what());
  }
  return response;
}

std::pair<lang::Program, TupleSet> apply_edits(const lang::Program& program,
                                               const TupleSet& output) {
  struct Pending {
    std::int64_t seq;
    std::string args;
  };
  std::map<NodeId, std::vector<Pending>> by_method;
  TupleSet rest;
  for (const auto& t : output) {
    if (t.tag() != "edit") {
      rest.insert(t);
      continue;
    }
    const Value* op = t.find("op");
    const Value* node = t.find("node");
    const Value* seq = t.find("seq");
    if (!op || op->kind() != ValueKind::Text || op->as_text() != "insertPrintFront") {
      fail(Errc::ProtocolError, "unsupported edit: " + std::string(op ? op->display() : "no op"));
    }
    if (!node || node->kind() != ValueKind::NodeRef) {
      fail(Errc::ProtocolError, "edit needs a node element");
    }
    std::vector<std::string> exprs;
    for (std::size_t i = 0;; ++i) {
      const Value* arg = t.find("arg" + std::to_string(i));
      if (!arg) break;
      if (arg->kind() != ValueKind::Text) fail(Errc::ProtocolError, "edit arguments are source text");
      exprs.push_back(arg->as_text());
    }
    std::int64_t order = seq && seq->kind() == ValueKind::Integer ? seq->as_integer() : 0;
    by_method[node->as_node()].push_back({order, text::join(exprs, ", ")});
  }

  lang::Program edited = program;
  for (auto& [method, pending] : by_method) {
    const lang::Node* target = edited.find(method);
    if (!target || target->kind != lang::NodeKind::Method) {
      fail(Errc::NotAMethodNode, "edit target '" + method.str() + "' is not a method");
    }
    std::stable_sort(pending.begin(), pending.end(),
                     [](const Pending& a, const Pending& b) { return a.seq < b.seq; });
    std::vector<lang::NodePtr> statements;
    for (const auto& p : pending) {
      try {
        statements.push_back(lang::parse_statement("print(" + p.args + ");"));
      } catch (const Error& e) {
        fail(Errc::ProtocolError, "edit argument does not parse: " + p.args);
      }
    }
    edited = lang::insert_statements(edited, method, statements);
  }
  return {edited, rest};
}

engine::QueryDef script_query_def(ScriptQuery query, std::chrono::milliseconds timeout) {
  engine::QueryDef def;
  def.name = query.name;
  def.kind = engine::QueryKind::Operator;
  def.required_inputs = 0;
  def.max_inputs = 1;
  def.summary = "script " + query.path.filename().string();
  def.run = [query, timeout](engine::QueryCall& call) {
    ScriptRequest request;
    request.context = call.context.focus();
    request.args = call.args;
    if (const TupleSet* in = call.input()) request.input = *in;
    request.program = &call.context.program();
    auto response = invoke(query, request, timeout);
    for (const auto& w : response.warnings) call.context.warn(query.name + ": " + w);
    auto [edited, rest] = apply_edits(call.context.program(), response.output);
    if (rest.size() != response.output.size()) call.context.workspace().commit(std::move(edited));
    return rest;
  };
  return def;
}

}  // namespace codeq::script
