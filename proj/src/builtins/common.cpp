#include "common.hpp"

#include "codeq/builtins/builtins.hpp"
#include "codeq/support/error.hpp"

namespace codeq::builtins {
namespace detail {

std::regex compile_regex(std::string_view query, const std::string& pattern) {
  try {
    return std::regex(pattern, std::regex::ECMAScript);
  } catch (const std::regex_error& e) {
    fail(Errc::BadRegex, std::string(query) + ": bad regular expression '" + pattern + "': " +
                             e.what());
  }
}

const lang::Node* focus_node(const engine::ExecutionContext& context) {
  if (!context.focus()) return nullptr;
  return context.program().find(*context.focus());
}

const lang::Node* enclosing_method(const engine::ExecutionContext& context) {
  const auto& program = context.program();
  for (const lang::Node* n = focus_node(context); n; n = program.parent_of(*n)) {
    if (n->kind == lang::NodeKind::Method) return n;
  }
  return nullptr;
}

std::set<NodeId> referenced_nodes(const TupleSet& tuples) {
  std::set<NodeId> out;
  for (const auto& t : tuples) {
    if (const Element* e = t.first_node()) out.insert(e->value.as_node());
  }
  return out;
}

TupleSet node_tuples(const std::set<NodeId>& nodes) {
  TupleSet out;
  for (const auto& n : nodes) out.insert(node_tuple(n));
  return out;
}

}  // namespace detail

void register_builtins(engine::Registry& registry) {
  detail::register_resources(registry);
  detail::register_operators(registry);
  detail::register_visualizations(registry);
}

std::set<std::string> builtin_names() {
  engine::Registry registry;
  register_builtins(registry);
  auto names = registry.names();
  return {names.begin(), names.end()};
}

}  // namespace codeq::builtins
