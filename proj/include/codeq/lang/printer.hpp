#pragma once

#include <string>
#include <vector>

#include "codeq/lang/program.hpp"

namespace codeq::lang {

/// Canonical source text for one file per root, in root order.
std::vector<SourceText> pretty_print(const Program& program);

/// Canonical text of any subtree, indented by `indent` levels.
std::string print_node(const Node& node, int indent = 0);

}  // namespace codeq::lang
