#include "codeq/script/codec.hpp"

#include <cmath>
#include <cstdint>

#include "codeq/support/error.hpp"

namespace codeq::script {

Json encode(const Tuple& tuple) {
  Json elements = Json::array();
  for (const auto& e : tuple.elements()) {
    Json item;
    item["name"] = e.name;
    item["kind"] = std::string(to_string(e.value.kind()));
    switch (e.value.kind()) {
      case ValueKind::Text: item["value"] = e.value.as_text(); break;
      case ValueKind::Integer: item["value"] = e.value.as_integer(); break;
      case ValueKind::Real: item["value"] = e.value.as_real(); break;
      case ValueKind::NodeRef: item["value"] = e.value.as_node().str(); break;
    }
    elements.push_back(std::move(item));
  }
  Json out;
  out["tag"] = tuple.tag();
  out["elements"] = std::move(elements);
  return out;
}

Json encode(const TupleSet& tuples) {
  Json out = Json::array();
  for (const auto& t : tuples) out.push_back(encode(t));
  return out;
}

namespace {

[[noreturn]] void bad(const std::string& what) { fail(Errc::ProtocolError, what); }

Value decode_value(const Json& item, std::size_t index) {
  std::string where = "element " + std::to_string(index);
  if (!item.contains("kind") || !item["kind"].is_string()) bad(where + ": missing \"kind\"");
  if (!item.contains("value")) bad(where + ": missing \"value\"");
  const std::string kind = item["kind"].get<std::string>();
  const Json& v = item["value"];
  if (kind == "string") {
    if (!v.is_string()) bad(where + ": string value expected");
    return Value::text(v.get<std::string>());
  }
  if (kind == "int") {
    if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
      bad(where + ": integer out of range");
    }
    if (v.is_number_integer()) return Value::integer(v.get<std::int64_t>());
    bad(where + ": integer value expected");
  }
  if (kind == "real") {
    if (!v.is_number()) bad(where + ": number value expected");
    double d = v.get<double>();
    if (!std::isfinite(d)) bad(where + ": real value must be finite");
    return Value::real(d);
  }
  if (kind == "node") {
    if (!v.is_string() || v.get<std::string>().empty()) bad(where + ": node id expected");
    return Value::node(NodeId(v.get<std::string>()));
  }
  bad(where + ": unknown kind '" + kind + "'");
}

}  // namespace

TupleSet decode(const Json& json) {
  if (!json.is_array()) bad("tuple set must be a JSON array");
  TupleSet out;
  for (const auto& item : json) {
    if (!item.is_object()) bad("tuple must be a JSON object");
    if (!item.contains("elements") || !item["elements"].is_array()) {
      bad("tuple needs an \"elements\" array");
    }
    std::optional<std::string> tag;
    if (item.contains("tag") && !item["tag"].is_null()) {
      if (!item["tag"].is_string()) bad("tuple tag must be a string");
      tag = item["tag"].get<std::string>();
    }
    std::vector<Element> elements;
    std::size_t index = 0;
    for (const auto& e : item["elements"]) {
      if (!e.is_object() || !e.contains("name") || !e["name"].is_string()) {
        bad("element " + std::to_string(index) + ": missing \"name\"");
      }
      elements.push_back({e["name"].get<std::string>(), decode_value(e, index)});
      ++index;
    }
    try {
      out.insert(Tuple::make(tag, std::move(elements)));
    } catch (const Error& e) {
      bad(std::string("invalid tuple: ") + e.what());
    }
  }
  return out;
}

std::string dump(const Json& json, int indent) {
  return json.dump(indent, ' ', false, Json::error_handler_t::replace);
}

Json ast_summary(const lang::Program& program) {
  Json out = Json::array();
  for (const auto& e : program.entries()) {
    const lang::Node& n = *e.node;
    Json item;
    item["id"] = e.id.str();
    item["kind"] = std::string(lang::to_string(n.kind));
    item["name"] = n.name;
    item["text"] = n.text;
    item["parent"] = e.parent ? Json(program.entries()[*e.parent].id.str()) : Json(nullptr);
    item["span"] = {{"file", n.span.file},
                    {"startLine", n.span.start_line},
                    {"startColumn", n.span.start_col},
                    {"endLine", n.span.end_line},
                    {"endColumn", n.span.end_col}};
    out.push_back(std::move(item));
  }
  return out;
}

}  // namespace codeq::script
