#include "codeq/cli/session.hpp"

#include <charconv>

#include "codeq/builtins/builtins.hpp"
#include "codeq/history/history.hpp"
#include "codeq/prompt/prompt.hpp"
#include "codeq/script/host.hpp"
#include "codeq/support/error.hpp"
#include "codeq/support/process.hpp"
#include "codeq/support/text.hpp"

namespace codeq::cli {

namespace fs = std::filesystem;

std::optional<Position> parse_position(const std::string& text) {
  auto second = text.rfind(':');
  if (second == std::string::npos || second == 0) return std::nullopt;
  auto first = text.rfind(':', second - 1);
  if (first == std::string::npos || first == 0) return std::nullopt;
  auto number = [](std::string_view s, int& out) {
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && end == s.data() + s.size() && out > 0;
  };
  Position p;
  p.file = text.substr(0, first);
  if (!number(std::string_view(text).substr(first + 1, second - first - 1), p.line) ||
      !number(std::string_view(text).substr(second + 1), p.column)) {
    return std::nullopt;
  }
  return p;
}

namespace {

// Directory of the corpus relative to the top of the git work tree holding
// the history, or empty when it is not inside it.
std::string corpus_prefix(const fs::path& corpus, const fs::path& repo) {
  ProcessOptions git;
  git.argv = {"git", "-C", repo.string(), "rev-parse", "--show-toplevel"};
  auto r = run_process(git);
  if (!r.ok()) return {};
  fs::path top = fs::weakly_canonical(std::string(text::trim(r.out)));
  fs::path rel = fs::weakly_canonical(corpus).lexically_relative(top);
  std::string s = rel.generic_string();
  if (s.empty() || s == "." || text::starts_with(s, "..")) return {};
  return s;
}

}  // namespace

Session::Session(SessionOptions options)
    : options_(std::move(options)),
      workspace_(engine::Workspace::open(options_.corpus)),
      context_(workspace_) {
  workspace_.set_write_back(options_.write_back);
  context_.working_dir = fs::current_path();
  if (options_.repo) {
    std::shared_ptr<history::HistoryProvider> h = history::open_history(*options_.repo);
    if (h->backend() == "git") context_.corpus_prefix = corpus_prefix(options_.corpus, *options_.repo);
    context_.history = std::move(h);
  }
  if (options_.issues) {
    context_.issues =
        std::make_shared<history::IssueTracker>(history::IssueTracker::load(*options_.issues));
  }
  if (options_.aliases) aliases_ = prompt::AliasTable::load(*options_.aliases);
  load_scripts();
}

void Session::load_scripts() {
  registry_ = engine::Registry{};
  builtins::register_builtins(registry_);
  if (!options_.scripts) return;
  context_.script_dir = *options_.scripts;
  auto found = script::discover(*options_.scripts, builtins::builtin_names());
  for (auto& w : found.warnings) notices_.push_back(std::move(w));
  for (auto& q : found.scripts) {
    registry_.add(script::script_query_def(std::move(q), options_.script_timeout));
  }
}

void Session::focus(const std::string& where) {
  if (auto pos = parse_position(where)) {
    const lang::Node* n = program().node_at(pos->file, pos->line, pos->column);
    if (!n) {
      fail(Errc::UnknownNodeId, "no node at " + where);
    }
    context_.set_focus(program().id_of(*n));
    return;
  }
  context_.set_focus(NodeId(where));
}

engine::RunResult Session::run(std::string_view prompt_text) {
  auto pipeline = aliases_.expand(prompt::parse_prompt(prompt_text));
  prompt::validate_prompt(pipeline, registry_);
  auto network = prompt::to_network(pipeline);
  context_.output_format = std::string(to_string(options_.format));
  return engine::execute(network, registry_, context_);
}

std::string Session::render(const engine::RunResult& result) const {
  RenderOptions opts;
  opts.format = options_.format;
  opts.color = options_.color;
  fs::path root = workspace_.root();
  opts.source = [root](const std::string& file) -> std::optional<std::string> {
    try {
      return text::read_file(root / file);
    } catch (const Error&) {
      return std::nullopt;
    }
  };
  std::string out;
  for (const auto& plan : result.renders) out += cli::render(plan, program(), opts);
  return out;
}

void Session::define_alias(const std::string& name, const std::string& body) {
  if (registry_.find(name)) {
    fail(Errc::InvalidValue, "'" + name + "' is a query name and cannot be an alias");
  }
  prompt::AliasTable updated = aliases_;
  updated.define(name, body);
  if (options_.aliases) updated.save(*options_.aliases);
  aliases_ = std::move(updated);
}

std::vector<std::string> Session::reload() {
  std::vector<std::string> notes;
  engine::Workspace fresh = engine::Workspace::open(options_.corpus);
  fresh.set_write_back(options_.write_back);
  std::optional<NodeId> focus = context_.focus();
  workspace_ = std::move(fresh);
  if (focus && !program().find(*focus)) {
    notes.push_back("focus " + focus->str() + " no longer exists and was cleared");
    focus.reset();
  }
  context_.set_focus(focus);
  notices_.clear();
  load_scripts();
  notes.insert(notes.end(), notices_.begin(), notices_.end());
  if (options_.aliases) aliases_ = prompt::AliasTable::load(*options_.aliases);
  return notes;
}

}  // namespace codeq::cli
