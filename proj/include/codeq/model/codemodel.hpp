#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "codeq/lang/program.hpp"
#include "codeq/tuple/tuple_set.hpp"

namespace codeq::model {

using lang::Node;
using lang::Program;

struct UnresolvedCall {
  NodeId caller;
  NodeId site;  // the CallExpression
  std::string name;
  lang::Span span;
};

struct CallGraph {
  std::set<std::pair<NodeId, NodeId>> edges;
  // Methods taking part in the graph. A rooted graph always contains its root.
  std::set<NodeId> nodes;
  std::vector<UnresolvedCall> unresolved;
};

// Callee lookup order for a plain name: the caller's class, the caller's
// module (any class), then a program-wide unique method of that name. Dotted
// names are tried as absolute, then relative to each enclosing module from the
// innermost out, then through the class's imports.
//
// With a root, the result holds only edges reachable from that method.
CallGraph build_call_graph(const Program& program,
                           const std::optional<NodeId>& root = std::nullopt);

TupleSet call_graph_tuples(const CallGraph& graph);

struct PackageDeps {
  std::map<NodeId, std::string> class_package;
  std::map<NodeId, std::set<std::string>> imports;
};

PackageDeps package_deps(const Program& program);

/// Throws NotADeclaration for anything but modules, classes and methods.
std::string qualified_name(const Program& program, const Node& node);

}  // namespace codeq::model
