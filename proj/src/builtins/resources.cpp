// Resource queries: they read the program, its history, issues or files.

#include <charconv>
#include <cmath>
#include <fstream>

#include "codeq/builtins/builtins.hpp"
#include "codeq/history/history.hpp"
#include "codeq/model/codemodel.hpp"
#include "codeq/support/error.hpp"
#include "codeq/support/text.hpp"
#include "common.hpp"

namespace codeq::builtins {
namespace detail {
namespace {

using engine::QueryCall;
using engine::QueryDef;
using engine::QueryKind;
using lang::Node;
using lang::NodeKind;

TupleSet run_ast(QueryCall& call) {
  auto args = Args::parse("ast", call.args,
                          {{"type", 1}, {"topLevel", 0}, {"global", 0}, {"name", 1}});
  const auto& program = call.context.program();

  std::optional<lang::KindFilter> filter;
  if (auto kind = args.value("type")) {
    filter = lang::KindFilter::parse(*kind);
    if (!filter) fail(Errc::UnknownKind, "ast: unknown node kind '" + *kind + "'");
  }
  std::optional<std::regex> name;
  if (auto pattern = args.value("name")) name = compile_regex("ast", *pattern);

  const Node* scope = args.has("global") ? nullptr : focus_node(call.context);
  std::vector<const Node*> candidates;
  if (filter) {
    candidates = lang::nodes_of_kind(program, *filter, scope);
  } else {
    auto entries = scope ? program.subtree(*scope) : std::span(program.entries());
    for (const auto& e : entries) candidates.push_back(e.node);
  }

  TupleSet out;
  for (const Node* n : candidates) {
    if (args.has("topLevel")) {
      const Node* block = program.parent_of(*n);
      const Node* owner = block ? program.parent_of(*block) : nullptr;
      if (!lang::is_statement(n->kind) || !owner || owner->kind != NodeKind::Method) continue;
    }
    if (name && !std::regex_search(n->name, *name)) continue;
    out.insert(node_tuple(program.id_of(*n)));
  }
  return out;
}

TupleSet run_callgraph(QueryCall& call) {
  auto args = Args::parse("callgraph", call.args, {{"global", 0}, {"nodes", 0}});
  const auto& program = call.context.program();

  std::optional<NodeId> root;
  if (!args.has("global")) {
    const Node* method = enclosing_method(call.context);
    if (!method) {
      fail(Errc::NoMethodContext,
           "callgraph: the focus is not inside a method (set one, or use -global)");
    }
    root = program.id_of(*method);
  }
  auto graph = model::build_call_graph(program, root);
  for (const auto& u : graph.unresolved) {
    call.context.warn("callgraph: unresolved call '" + u.name + "' at " + u.span.file + ":" +
                      std::to_string(u.span.start_line));
  }
  if (args.has("nodes")) return node_tuples(graph.nodes);
  return model::call_graph_tuples(graph);
}

std::vector<history::Commit> commits_between(const history::HistoryProvider& history,
                                             const std::string& from, const std::string& to) {
  auto older = history::resolve_ref(history, from);
  auto newer = history::resolve_ref(history, to);
  std::vector<history::Commit> span;
  for (auto c = newer; c.id != older.id;) {
    span.push_back(c);
    if (!c.parent) {
      fail(Errc::InvalidValue, "changes: " + from + " is not an ancestor of " + to);
    }
    c = history.resolve(*c.parent);
  }
  return span;
}

TupleSet run_changes(QueryCall& call) {
  auto args = Args::parse("changes", call.args,
                          {{"c", 1}, {"between", 2}, {"nodes", 0}, {"intermediate", 0}, {"type", 1}});
  args.exclusive("changes", "c", "between");
  args.exclusive("changes", "nodes", "intermediate");
  auto& context = call.context;
  if (!context.history) fail(Errc::NoRepository, "changes: no repository configured");
  const auto& history = *context.history;

  std::vector<history::Commit> commits;
  if (args.has("between")) {
    const auto& refs = args.values("between");
    commits = commits_between(history, refs[0], refs[1]);
  } else {
    std::string count = args.value("c").value_or("5");
    std::size_t n = 0;
    auto [end, ec] = std::from_chars(count.data(), count.data() + count.size(), n);
    if (ec != std::errc() || end != count.data() + count.size() || n == 0) {
      fail(Errc::InvalidValue, "changes: -c expects a positive commit count, got '" + count + "'");
    }
    commits = history::last_commits(history, n);
  }

  const TupleSet* input = call.input();
  std::optional<std::set<NodeId>> wanted;
  if (input) wanted = referenced_nodes(*input);

  // Granularity: -type, else the kinds of the piped nodes, else methods.
  std::vector<lang::KindFilter> granularity;
  if (auto kind = args.value("type")) {
    auto filter = lang::KindFilter::parse(*kind);
    if (!filter) fail(Errc::UnknownKind, "changes: unknown node kind '" + *kind + "'");
    granularity.push_back(*filter);
  } else if (wanted) {
    std::set<NodeKind> kinds;
    for (const auto& id : *wanted) {
      if (const Node* n = context.program().find(id)) kinds.insert(n->kind);
    }
    for (NodeKind k : kinds) granularity.push_back(lang::KindFilter::exactly(k));
  } else {
    granularity.push_back(lang::KindFilter::exactly(NodeKind::Method));
  }

  TupleSet changes;
  std::vector<std::string> warnings;
  for (const auto& filter : granularity) {
    changes = set_union(changes, history::changed_nodes(history, commits, context.program(), filter,
                                                        context.corpus_prefix, &warnings));
  }
  for (auto& w : warnings) context.warn("changes: " + w);

  TupleSet out;
  std::set<NodeId> nodes;
  for (const auto& t : changes) {
    const NodeId& node = t.find("ast")->as_node();
    if (wanted && !wanted->count(node)) continue;
    nodes.insert(node);
    out.insert(t);
  }
  if (args.has("nodes")) return node_tuples(nodes);
  if (args.has("intermediate")) out = set_union(out, history::commit_tuples(commits));
  return out;
}

TupleSet run_issues(QueryCall& call) {
  auto args = Args::parse("issues", call.args, {}, SIZE_MAX);
  if (!call.context.issues) fail(Errc::FileNotFound, "issues: no issue file configured");
  const auto& tracker = *call.context.issues;

  std::vector<const history::Issue*> picked;
  if (args.positional().empty()) {
    for (const auto& [_, issue] : tracker.all()) picked.push_back(&issue);
  }
  for (const auto& word : args.positional()) {
    std::string_view digits = word;
    if (!digits.empty() && digits.front() == '#') digits.remove_prefix(1);
    std::int64_t number = 0;
    auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), number);
    if (ec != std::errc() || end != digits.data() + digits.size()) {
      fail(Errc::InvalidValue, "issues: '" + word + "' is not an issue number");
    }
    picked.push_back(&tracker.lookup(number));
  }
  TupleSet out;
  for (const auto* issue : picked) {
    out.insert(Tuple::make("issue", {{"number", Value::integer(issue->number)},
                                     {"title", Value::text(issue->title)},
                                     {"body", Value::text(issue->body)}}));
  }
  return out;
}

TupleSet run_import_csv(QueryCall& call) {
  auto args = Args::parse("importCSV", call.args, {{"tag", 1}, {"node", 1}}, 1);
  if (args.positional().empty()) fail(Errc::MissingArgument, "importCSV: expects a file path");
  std::filesystem::path file = args.positional().front();
  if (file.is_relative()) file = call.context.working_dir / file;
  auto result = import_csv(file, args.value("tag"), args.value("node"), call.context.program());
  if (result.skipped > 0) {
    call.context.warn("importCSV: skipped " + std::to_string(result.skipped) +
                      (result.skipped == 1 ? " row" : " rows") + " naming unknown methods");
  }
  return result.tuples;
}

Value parse_cell(const std::string& cell) {
  std::int64_t i = 0;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  if (!cell.empty()) {
    if (auto [end, ec] = std::from_chars(first, last, i); ec == std::errc() && end == last) {
      return Value::integer(i);
    }
    double d = 0;
    if (auto [end, ec] = std::from_chars(first, last, d); ec == std::errc() && end == last &&
                                                          std::isfinite(d)) {
      return Value::real(d);
    }
  }
  return Value::text(cell);
}

}  // namespace

void register_resources(engine::Registry& registry) {
  registry.add({"ast", QueryKind::Resource, 0, 0, run_ast,
                "AST nodes in the focus (-type KIND, -topLevel, -global, -name REGEX)"});
  registry.add({"callgraph", QueryKind::Resource, 0, 0, run_callgraph,
                "calls reachable from the focused method (-global, -nodes)"});
  registry.add({"changes", QueryKind::Operator, 0, 1, run_changes,
                "nodes changed in recent commits (-c N, -between R1 R2, -nodes, -intermediate, "
                "-type KIND)"});
  registry.add({"issues", QueryKind::Resource, 0, 0, run_issues,
                "issues from the issue file, all or by number"});
  registry.add({"importCSV", QueryKind::Resource, 0, 0, run_import_csv,
                "rows of a CSV file (PATH, -tag TAG, -node COLUMN)"});
}

}  // namespace detail

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool row_started = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        quoted = true;
        row_started = true;
        break;
      case ',':
        row.push_back(std::move(field));
        field.clear();
        row_started = true;
        break;
      case '\r':
        break;
      case '\n':
        if (row_started || !field.empty()) {
          row.push_back(std::move(field));
          rows.push_back(std::move(row));
        }
        field.clear();
        row.clear();
        row_started = false;
        break;
      default:
        field += c;
        row_started = true;
    }
  }
  if (quoted) fail(Errc::InvalidValue, "CSV: unterminated quoted field");
  if (row_started || !field.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

CsvImport import_csv(const std::filesystem::path& file, const std::optional<std::string>& tag,
                     const std::optional<std::string>& node_column, const lang::Program& program) {
  std::ifstream in(file, std::ios::binary);
  if (!in) fail(Errc::FileNotFound, "importCSV: cannot read " + file.string());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  auto rows = parse_csv(text);
  if (rows.empty()) fail(Errc::EmptyHeader, "importCSV: " + file.string() + " has no header row");

  std::vector<std::string> header;
  for (const auto& cell : rows.front()) header.emplace_back(text::trim(cell));
  std::optional<std::size_t> node_index;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i].empty()) {
      fail(Errc::EmptyHeader, "importCSV: column " + std::to_string(i + 1) + " has no name");
    }
    if (!text::is_identifier(header[i])) {
      fail(Errc::InvalidIdentifier, "importCSV: column name '" + header[i] +
                                        "' is not an identifier");
    }
    if (node_column && header[i] == *node_column) node_index = i;
  }
  if (node_column && !node_index) {
    fail(Errc::InvalidValue, "importCSV: no column named '" + *node_column + "'");
  }

  CsvImport out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != header.size()) {
      fail(Errc::InvalidValue, "importCSV: row " + std::to_string(r + 1) + " has " +
                                   std::to_string(row.size()) + " fields, expected " +
                                   std::to_string(header.size()));
    }
    std::vector<Element> elements;
    bool skip = false;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (node_index && i == *node_index) {
        std::string name(text::trim(row[i]));
        const lang::Node* n = program.find(NodeId(name));
        if (!n || n->kind != lang::NodeKind::Method) {
          skip = true;
          break;
        }
        elements.push_back({header[i], Value::node(NodeId(name))});
      } else {
        elements.push_back({header[i], detail::parse_cell(row[i])});
      }
    }
    if (skip) {
      ++out.skipped;
      continue;
    }
    out.tuples.insert(Tuple::make(tag, std::move(elements)));
  }
  return out;
}

}  // namespace codeq::builtins
