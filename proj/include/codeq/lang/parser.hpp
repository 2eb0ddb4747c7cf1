#pragma once

#include <string_view>

#include "codeq/lang/node.hpp"

namespace codeq::lang {

/// Parses one source file into a SourceFile node. Throws
/// PositionedError(ParseError).
NodePtr parse_source(std::string_view path, std::string_view text);

/// Parses a single statement, e.g. `print("x", x);`. Spans refer to `path`.
NodePtr parse_statement(std::string_view text, std::string_view path = "<snippet>");
/// Parses a single expression.
NodePtr parse_expression(std::string_view text, std::string_view path = "<snippet>");

}  // namespace codeq::lang
