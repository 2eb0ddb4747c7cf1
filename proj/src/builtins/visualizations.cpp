// Visualizations validate their input, queue a render plan and return nothing.

#include <cmath>
#include <map>

#include "codeq/builtins/builtins.hpp"
#include "codeq/support/error.hpp"
#include "codeq/support/text.hpp"
#include "common.hpp"

namespace codeq::builtins {

int heat_bucket(double v, double min, double max) {
  if (!(max > min)) return 0;
  // Dividing first keeps the maximum at exactly 9.
  int b = static_cast<int>(std::floor((v - min) / (max - min) * 9.0));
  return std::clamp(b, 0, 9);
}

std::vector<HeatEntry> heat_entries(const TupleSet& input) {
  std::map<NodeId, double> totals;
  for (const auto& t : input) {
    const Element* node = t.first_node();
    if (!node) fail(Errc::NoNodeElement, "heatmap: tuple without a node reference");
    const Value* number = nullptr;
    for (const auto& e : t.elements()) {
      if (e.value.is_numeric()) {
        number = &e.value;
        break;
      }
    }
    if (!number) fail(Errc::NoNumericElement, "heatmap: tuple without a numeric element");
    totals[node->value.as_node()] += number->as_number();
  }
  if (totals.empty()) return {};
  double lo = totals.begin()->second;
  double hi = lo;
  for (const auto& [_, v] : totals) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  std::vector<HeatEntry> out;
  for (const auto& [node, v] : totals) out.push_back({node, v, heat_bucket(v, lo, hi)});
  return out;
}

namespace detail {
namespace {

using engine::QueryCall;
using engine::QueryKind;
using engine::RenderPlan;

const std::vector<std::string> kColors = {"red", "green", "yellow", "blue", "magenta", "cyan"};

const TupleSet& input_of(const QueryCall& call) {
  static const TupleSet empty;
  return call.input() ? *call.input() : empty;
}

TupleSet show(QueryCall& call, std::string renderer, std::vector<std::string> options = {}) {
  call.context.render(RenderPlan{std::move(renderer), input_of(call), std::move(options), false});
  return {};
}

TupleSet run_table(QueryCall& call) {
  Args::parse("table", call.args, {});
  return show(call, "table");
}

TupleSet run_highlight(QueryCall& call) {
  auto args = Args::parse("highlight", call.args, {{"color", 1}});
  std::string color = args.value("color").value_or("yellow");
  if (std::find(kColors.begin(), kColors.end(), color) == kColors.end()) {
    fail(Errc::InvalidValue, "highlight: unknown color '" + color + "' (use one of " +
                                 text::join(kColors, ", ") + ")");
  }
  for (const auto& t : input_of(call)) {
    if (!t.first_node()) fail(Errc::NoNodeElement, "highlight: tuple without a node reference");
  }
  return show(call, "highlight", {color});
}

TupleSet run_arrows(QueryCall& call) {
  Args::parse("arrows", call.args, {});
  relation_edges(input_of(call));
  return show(call, "arrows");
}

TupleSet run_heatmap(QueryCall& call) {
  Args::parse("heatmap", call.args, {});
  heat_entries(input_of(call));
  return show(call, "heatmap");
}

TupleSet run_messages(QueryCall& call) {
  Args::parse("messages", call.args, {});
  for (const auto& t : input_of(call)) {
    if (!t.has("message")) fail(Errc::InvalidValue, "messages: tuple without a 'message' element");
    const Value* ast = t.find("ast");
    if (!ast || ast->kind() != ValueKind::NodeRef) {
      fail(Errc::NoNodeElement, "messages: tuple without an 'ast' node reference");
    }
  }
  return show(call, "messages");
}

std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

TupleSet run_to_graph_file(QueryCall& call) {
  auto args = Args::parse("toGraphFile", call.args, {}, 1);
  if (args.positional().empty()) fail(Errc::MissingArgument, "toGraphFile: expects an output path");
  auto edges = relation_edges(input_of(call));
  std::filesystem::path path = args.positional().front();
  if (path.is_relative()) path = call.context.working_dir / path;
  std::string dot = "digraph codeq {\n";
  for (const auto& [from, to] : edges) {
    dot += "  " + dot_quote(from.str()) + " -> " + dot_quote(to.str()) + ";\n";
  }
  dot += "}\n";
  try {
    text::write_file(path, dot);
  } catch (const Error& e) {
    fail(Errc::WriteFailure, "toGraphFile: " + std::string(e.what()));
  }
  call.context.warn("toGraphFile: wrote " + std::to_string(edges.size()) + " edges to " +
                    path.string());
  return {};
}

}  // namespace

void register_visualizations(engine::Registry& registry) {
  registry.add({"table", QueryKind::Visualization, 0, 1, run_table, "show tuples as a table"});
  registry.add({"highlight", QueryKind::Visualization, 0, 1, run_highlight,
                "mark node spans in the source (-color NAME)"});
  registry.add({"arrows", QueryKind::Visualization, 0, 1, run_arrows,
                "show a relation as node-to-node arrows"});
  registry.add({"heatmap", QueryKind::Visualization, 0, 1, run_heatmap,
                "color nodes from green to red by a numeric value"});
  registry.add({"messages", QueryKind::Visualization, 0, 1, run_messages,
                "show message tuples next to their ast node"});
  registry.add({"toGraphFile", QueryKind::Visualization, 0, 1, run_to_graph_file,
                "write a relation as a DOT graph file (PATH)"});
}

}  // namespace detail
}  // namespace codeq::builtins
