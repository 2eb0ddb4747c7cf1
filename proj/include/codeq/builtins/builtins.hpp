#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "codeq/engine/registry.hpp"
#include "codeq/lang/program.hpp"
#include "codeq/tuple/tuple_set.hpp"

namespace codeq::builtins {

/// Adds every built-in query. Throws DuplicateQueryName if one is already
/// registered.
void register_builtins(engine::Registry& registry);
std::set<std::string> builtin_names();

// The pure cores of the queries, shared with tests and the acceptance suite.

/// `TAG.ELEM` picks an element from tuples of one tag; a bare `ELEM` takes it
/// from whichever joined tuple carries it.
struct JoinSelector {
  std::optional<std::string> tag;
  std::string element;
};

/// Parses comma-separated selectors. Throws InvalidValue.
std::vector<JoinSelector> parse_selectors(const std::vector<std::string>& words);

/// Natural join over the tag groups named by the selectors: one output tuple
/// per combination (one tuple of each group, in selector order) in which
/// every pair agrees on all element names they share. Throws MissingSelector.
TupleSet natural_join(const TupleSet& input, const std::vector<JoinSelector>& selectors,
                      const std::optional<std::string>& as_tag);

/// Edges of a relation set: the first and second node reference of each
/// tuple. Throws NotARelation.
std::vector<std::pair<NodeId, NodeId>> relation_edges(const TupleSet& relation);
/// Nodes that reach themselves through at least one edge.
std::set<NodeId> nodes_on_cycles(const std::vector<std::pair<NodeId, NodeId>>& edges);
/// Nodes reachable from start through at least one edge.
std::set<NodeId> reachable_from(const std::vector<std::pair<NodeId, NodeId>>& edges,
                                const NodeId& start);

/// Heat bucket 0 (coolest) to 9 for v within [min, max].
int heat_bucket(double v, double min, double max);

struct HeatEntry {
  NodeId node;
  double value = 0;
  int bucket = 0;
};
/// One entry per node; values of repeated nodes are summed. Throws
/// NoNodeElement and NoNumericElement.
std::vector<HeatEntry> heat_entries(const TupleSet& input);

/// Prepends `print("name");` and `print("p", p);` per parameter to every
/// listed method. Throws NotAMethodNode.
lang::Program insert_arg_printing(const lang::Program& program, const std::set<NodeId>& methods);

struct CsvImport {
  TupleSet tuples;
  std::size_t skipped = 0;  // rows whose -node column did not resolve
};
/// Throws FileNotFound, EmptyHeader, InvalidIdentifier, InvalidValue.
CsvImport import_csv(const std::filesystem::path& file, const std::optional<std::string>& tag,
                     const std::optional<std::string>& node_column,
                     const lang::Program& program);
/// RFC 4180 style fields: comma separated, double quotes escape. Throws
/// InvalidValue for an unterminated quote.
std::vector<std::vector<std::string>> parse_csv(const std::string& text);

}  // namespace codeq::builtins
