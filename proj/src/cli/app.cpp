#include "codeq/cli/app.hpp"

#include <algorithm>
#include <iostream>

#include "CLI11.hpp"
#include "codeq/support/error.hpp"
#include "codeq/support/text.hpp"

namespace codeq::cli {

namespace fs = std::filesystem;

namespace {

void report(const std::exception& e, std::string_view prompt_text, std::ostream& err) {
  const auto* positioned = dynamic_cast<const PositionedError*>(&e);
  if (positioned && positioned->file() == "<prompt>") {
    std::string pointer(static_cast<std::size_t>(std::max(positioned->column(), 1) - 1), ' ');
    err << "error: " << to_string(positioned->code()) << ": " << positioned->detail() << "\n"
        << "  " << prompt_text << "\n"
        << "  " << pointer << "^\n";
    return;
  }
  if (const auto* error = dynamic_cast<const Error*>(&e)) {
    err << "error: " << to_string(error->code()) << ": " << error->what() << "\n";
    return;
  }
  err << "error: " << e.what() << "\n";
}

void print_warnings(const std::vector<std::string>& warnings, std::ostream& err) {
  for (const auto& w : warnings) err << "warning: " << w << "\n";
}

const char* kReplHelp =
    "Enter a query pipeline, e.g. `callgraph -nodes | changes -c 5 -nodes`, or a command:\n"
    "  :focus [NODEID|FILE:LINE:COL]  show or set the context node (:focus - clears it)\n"
    "  :alias [NAME = PIPELINE]       list aliases or define one\n"
    "  :queries                       list available queries\n"
    "  :format text|json|dot          change the output format\n"
    "  :reload                        re-read corpus, scripts and aliases\n"
    "  :quit                          leave\n";

void list_queries(const Session& session, std::ostream& out) {
  for (const auto& name : session.registry().names()) {
    const auto& def = session.registry().get(name);
    std::string kind(engine::to_string(def.kind));
    out << name << std::string(name.size() < 18 ? 18 - name.size() : 1, ' ') << kind
        << std::string(kind.size() < 15 ? 15 - kind.size() : 1, ' ') << def.summary << "\n";
  }
}

// One REPL command line (starting with ':').
bool run_command(Session& session, const std::string& line, std::ostream& out,
                 std::ostream& err) {
  std::string_view rest = text::trim(std::string_view(line).substr(1));
  auto space = rest.find_first_of(" \t");
  std::string command(rest.substr(0, space));
  std::string arg(space == std::string_view::npos ? "" : text::trim(rest.substr(space)));

  if (command == "quit" || command == "q" || command == "exit") return false;
  if (command == "help") {
    out << kReplHelp;
  } else if (command == "focus") {
    if (arg.empty()) {
      out << (session.focus() ? session.focus()->str() : "(no focus)") << "\n";
    } else if (arg == "-") {
      session.clear_focus();
    } else {
      session.focus(arg);
      out << "focus: " << session.focus()->str() << "\n";
    }
  } else if (command == "alias") {
    if (arg.empty()) {
      for (const auto& [name, body] : session.aliases().bodies()) {
        out << name << " = " << body << "\n";
      }
    } else {
      auto eq = arg.find('=');
      if (eq == std::string::npos) {
        fail(Errc::InvalidValue, "usage: :alias NAME = PIPELINE");
      }
      session.define_alias(std::string(text::trim(std::string_view(arg).substr(0, eq))),
                           std::string(text::trim(std::string_view(arg).substr(eq + 1))));
    }
  } else if (command == "queries") {
    list_queries(session, out);
  } else if (command == "format") {
    session.set_format(parse_format(arg));
  } else if (command == "reload") {
    print_warnings(session.reload(), err);
  } else {
    fail(Errc::InvalidValue, "unknown command :" + command + " (try :help)");
  }
  return true;
}

}  // namespace

int run_once(Session& session, const std::string& prompt_text, std::ostream& out,
             std::ostream& err) {
  try {
    auto result = session.run(prompt_text);
    out << session.render(result);
    print_warnings(result.warnings, err);
    return kSuccess;
  } catch (const std::exception& e) {
    print_warnings(session.context().warnings(), err);
    report(e, prompt_text, err);
    return kQueryError;
  }
}

int run_repl(Session& session, std::istream& in, std::ostream& out, std::ostream& err,
             bool show_prompt) {
  std::string line;
  while (true) {
    if (show_prompt) out << "codeq> " << std::flush;
    if (!std::getline(in, line)) break;
    std::string_view trimmed = text::trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    if (trimmed.front() == ':') {
      try {
        if (!run_command(session, std::string(trimmed), out, err)) break;
      } catch (const std::exception& e) {
        report(e, trimmed, err);
      }
      continue;
    }
    run_once(session, std::string(trimmed), out, err);
  }
  if (show_prompt) out << "\n";
  return kSuccess;
}

int run_app(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err, bool interactive) {
  CLI::App app{"Query a Mini code base with composable pipelines.", "codeq"};
  app.require_subcommand(1);

  std::string corpus = ".";
  std::string repo, issues, scripts, at, format = "text", config;
  bool no_color = false;
  app.add_option("--corpus", corpus, "directory holding the *.mini sources")
      ->capture_default_str();
  app.add_option("--repo", repo, "history: a git work tree or a snapshot fixture directory");
  app.add_option("--issues", issues, "issues JSON file");
  app.add_option("--scripts", scripts, "script query directory")->envname("CODEQ_SCRIPTS");
  app.add_option("--at", at, "context node: FILE:LINE:COL or a node id");
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"text", "json", "dot"}))
      ->capture_default_str();
  app.add_flag("--no-color", no_color, "never emit color escapes");
  app.add_option("--config", config, "configuration directory (holds `aliases`)")
      ->envname("CODEQ_CONFIG");

  auto* run_cmd = app.add_subcommand("run", "run one query pipeline and print the result");
  std::string prompt_text;
  run_cmd->add_option("prompt", prompt_text, "the pipeline, e.g. \"callgraph | table\"")
      ->required();
  run_cmd->fallthrough();
  auto* repl_cmd = app.add_subcommand("repl", "interactive prompt");
  repl_cmd->fallthrough();
  auto* queries_cmd = app.add_subcommand("queries", "list the available queries");
  queries_cmd->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run `codeq --help` for usage\n";
    return kUsageError;
  }

  SessionOptions options;
  options.corpus = corpus;
  if (!repo.empty()) options.repo = repo;
  if (!issues.empty()) options.issues = issues;
  if (!scripts.empty()) {
    options.scripts = scripts;
  } else if (fs::is_directory("scripts")) {
    options.scripts = "scripts";
  }
  if (!config.empty()) options.aliases = fs::path(config) / "aliases";
  options.format = parse_format(format);
  options.color = interactive && !no_color;

  std::unique_ptr<Session> session;
  try {
    session = std::make_unique<Session>(options);
  } catch (const std::exception& e) {
    report(e, "", err);
    return kQueryError;
  }
  for (const auto& note : session->notices()) err << "note: " << note << "\n";
  if (!at.empty()) {
    try {
      session->focus(at);
    } catch (const std::exception& e) {
      report(e, "", err);
      return kUsageError;
    }
  }

  if (run_cmd->parsed()) return run_once(*session, prompt_text, out, err);
  if (queries_cmd->parsed()) {
    list_queries(*session, out);
    return kSuccess;
  }
  if (interactive) out << "codeq: type :help for commands\n";
  return run_repl(*session, in, out, err, interactive);
}

}  // namespace codeq::cli
