#pragma once

#include "codeq/lang/program.hpp"
#include "codeq/tuple/tuple_set.hpp"
#include "json.hpp"

namespace codeq::script {

using Json = nlohmann::ordered_json;

/// `[{"tag": "calls", "elements": [{"name": "caller", "kind": "node",
/// "value": "a.P.rest"}, ...]}, ...]` in canonical tuple order. Kinds are
/// string, int, real and node; node values are NodeId strings.
Json encode(const TupleSet& tuples);
Json encode(const Tuple& tuple);

/// Throws ProtocolError for anything that does not follow the schema or
/// violates tuple rules.
TupleSet decode(const Json& json);

/// Compact serialization. Invalid UTF-8 in strings becomes U+FFFD instead of
/// failing.
std::string dump(const Json& json, int indent = -1);

/// One entry per program node in document order: id, kind, name, text,
/// parent (id or null) and span {file, startLine, startColumn, endLine,
/// endColumn}.
Json ast_summary(const lang::Program& program);

}  // namespace codeq::script
