#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <variant>

namespace codeq {

/// Stable, program-wide identity of an AST node. Declarations use their
/// qualified name (`a.P.rest`); other nodes extend their parent's id with
/// role steps (`a.P.rest/body[1]/then[0]`).
class NodeId {
 public:
  NodeId() = default;
  explicit NodeId(std::string path) : path_(std::move(path)) {}

  const std::string& str() const noexcept { return path_; }
  bool empty() const noexcept { return path_.empty(); }

  auto operator<=>(const NodeId&) const = default;

 private:
  std::string path_;
};

enum class ValueKind { Text, Integer, Real, NodeRef };

std::string_view to_string(ValueKind kind);

/// One element value: a string, a signed 64-bit integer, a finite double, or a
/// reference to an AST node. Each value caches its canonical rendering, which
/// defines equality and ordering (so reals compare by their shortest exact
/// decimal form).
class Value {
 public:
  static Value text(std::string s);
  static Value integer(std::int64_t i);
  /// Throws InvalidValue for NaN or infinities.
  static Value real(double d);
  static Value node(NodeId id);

  ValueKind kind() const noexcept { return static_cast<ValueKind>(data_.index()); }
  bool is_numeric() const noexcept {
    return kind() == ValueKind::Integer || kind() == ValueKind::Real;
  }

  const std::string& as_text() const { return std::get<std::string>(data_); }
  std::int64_t as_integer() const { return std::get<std::int64_t>(data_); }
  double as_real() const { return std::get<double>(data_); }
  const NodeId& as_node() const { return std::get<NodeId>(data_); }
  /// Integer or real widened to double.
  double as_number() const;

  /// Canonical serialized form: quoted text, decimal integer, real with a
  /// '.' or exponent, or the bare node id.
  const std::string& rendering() const noexcept { return rendering_; }
  /// Human-facing form: raw text, numbers, or node id.
  std::string display() const;

  friend bool operator==(const Value& a, const Value& b) {
    return a.data_.index() == b.data_.index() && a.rendering_ == b.rendering_;
  }
  friend std::strong_ordering operator<=>(const Value& a, const Value& b) {
    if (auto c = a.rendering_ <=> b.rendering_; c != 0) return c;
    return a.data_.index() <=> b.data_.index();
  }

 private:
  using Data = std::variant<std::string, std::int64_t, double, NodeId>;
  Value(Data data, std::string rendering)
      : data_(std::move(data)), rendering_(std::move(rendering)) {}

  Data data_;
  std::string rendering_;
};

/// Shortest round-trip decimal for a finite double, always containing a '.'
/// or an exponent.
std::string render_real(double d);
/// Node ids render bare when they cannot be confused with other tokens,
/// otherwise as ref"...".
std::string render_node_id(const NodeId& id);

}  // namespace codeq

template <>
struct std::hash<codeq::NodeId> {
  std::size_t operator()(const codeq::NodeId& id) const noexcept {
    return std::hash<std::string>{}(id.str());
  }
};
