#pragma once

#include <regex>
#include <set>
#include <string>

#include "codeq/builtins/flags.hpp"
#include "codeq/engine/context.hpp"
#include "codeq/engine/registry.hpp"

namespace codeq::builtins::detail {

std::regex compile_regex(std::string_view query, const std::string& pattern);

/// The focus node, or nullptr without a focus.
const lang::Node* focus_node(const engine::ExecutionContext& context);
/// Innermost Method containing the focus (the focus itself included).
const lang::Node* enclosing_method(const engine::ExecutionContext& context);

/// First node reference of every tuple.
std::set<NodeId> referenced_nodes(const TupleSet& tuples);
TupleSet node_tuples(const std::set<NodeId>& nodes);

void register_resources(engine::Registry& registry);
void register_operators(engine::Registry& registry);
void register_visualizations(engine::Registry& registry);

}  // namespace codeq::builtins::detail
