#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "codeq/tuple/value.hpp"

namespace codeq {

struct Element {
  std::string name;
  Value value;

  bool operator==(const Element&) const = default;
};

/// A tagged, ordered list of uniquely named elements. Immutable once built.
class Tuple {
 public:
  /// Validates names and applies the tag default (the first element's name).
  /// Throws EmptyTuple, DuplicateElementName or InvalidIdentifier.
  static Tuple make(std::optional<std::string> tag, std::vector<Element> elements);
  static Tuple make(std::vector<Element> elements) {
    return make(std::nullopt, std::move(elements));
  }

  const std::string& tag() const noexcept { return tag_; }
  const std::vector<Element>& elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }

  const Value* find(std::string_view name) const;
  bool has(std::string_view name) const { return find(name) != nullptr; }

  /// First element holding a node reference, if any.
  const Element* first_node() const;
  std::size_t count_kind(ValueKind kind) const;

  friend bool operator==(const Tuple& a, const Tuple& b) {
    return a.tag_ == b.tag_ && a.elements_ == b.elements_;
  }
  /// Canonical order: tag, then the element name list, then the value
  /// renderings.
  friend std::strong_ordering operator<=>(const Tuple& a, const Tuple& b);

 private:
  Tuple(std::string tag, std::vector<Element> elements)
      : tag_(std::move(tag)), elements_(std::move(elements)) {}

  std::string tag_;
  std::vector<Element> elements_;
};

/// Shorthand for the single-element `node:(node: id)` tuple.
Tuple node_tuple(const NodeId& id);

}  // namespace codeq
