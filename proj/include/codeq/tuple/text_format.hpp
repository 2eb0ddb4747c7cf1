#pragma once

#include <string>
#include <string_view>

#include "codeq/tuple/tuple_set.hpp"

namespace codeq {

/// One tuple per line in canonical order: `tag: (name: value, ...)`.
std::string serialize(const TupleSet& ts);
std::string serialize(const Tuple& t);

/// Inverse of serialize. Also accepts the brace-delimited listing style,
/// `{ (node: getAge), calls: (caller: rest, callee: sleep) }`, where tuples
/// without an explicit tag take their first element's name. Throws
/// PositionedError(SyntaxError).
TupleSet parse_tuple_set(std::string_view text);

}  // namespace codeq
