#include "codeq/tuple/value.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

#include "codeq/support/error.hpp"
#include "codeq/support/text.hpp"

namespace codeq {

std::string_view to_string(ValueKind kind) {
  switch (kind) {
    case ValueKind::Text: return "string";
    case ValueKind::Integer: return "int";
    case ValueKind::Real: return "real";
    case ValueKind::NodeRef: return "node";
  }
  return "?";
}

std::string render_real(double d) {
  char buffer[64];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, d);
  std::string out(buffer, end);
  if (out.find_first_of(".eE") == std::string::npos) out += ".0";
  return out;
}

namespace {

bool bare_node_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '/' ||
         c == '[' || c == ']' || c == '#' || c == '@' || c == '-' || c == '+' || c == '~' ||
         c == '$' || c == '%' || c == '&' || c == '*' || c == '!' || c == '?' || c == '=';
}

}  // namespace

std::string render_node_id(const NodeId& id) {
  const auto& s = id.str();
  bool bare = !s.empty() && !std::isdigit(static_cast<unsigned char>(s.front())) &&
              s.front() != '-' && s.front() != '+' && s.front() != '.' &&
              !text::starts_with(s, "ref\"");
  for (char c : s) {
    if (!bare_node_char(c)) {
      bare = false;
      break;
    }
  }
  return bare ? s : "ref" + text::quote(s);
}

Value Value::text(std::string s) {
  auto rendering = text::quote(s);
  return Value(Data(std::in_place_index<0>, std::move(s)), std::move(rendering));
}

Value Value::integer(std::int64_t i) {
  return Value(Data(std::in_place_index<1>, i), std::to_string(i));
}

Value Value::real(double d) {
  if (!std::isfinite(d)) fail(Errc::InvalidValue, "real values must be finite");
  return Value(Data(std::in_place_index<2>, d), render_real(d));
}

Value Value::node(NodeId id) {
  auto rendering = render_node_id(id);
  return Value(Data(std::in_place_index<3>, std::move(id)), std::move(rendering));
}

double Value::as_number() const {
  if (kind() == ValueKind::Integer) return static_cast<double>(as_integer());
  return as_real();
}

std::string Value::display() const {
  switch (kind()) {
    case ValueKind::Text: return as_text();
    case ValueKind::NodeRef: return as_node().str();
    default: return rendering_;
  }
}

}  // namespace codeq
