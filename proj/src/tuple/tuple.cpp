#include "codeq/tuple/tuple.hpp"

#include <algorithm>
#include <unordered_set>

#include "codeq/support/error.hpp"
#include "codeq/support/text.hpp"
#include "codeq/tuple/tuple_set.hpp"

namespace codeq {

Tuple Tuple::make(std::optional<std::string> tag, std::vector<Element> elements) {
  if (elements.empty()) fail(Errc::EmptyTuple, "a tuple needs at least one element");
  std::unordered_set<std::string_view> seen;
  for (const auto& e : elements) {
    if (!text::is_identifier(e.name)) {
      fail(Errc::InvalidIdentifier, "invalid element name '" + e.name + "'");
    }
    if (!seen.insert(e.name).second) {
      fail(Errc::DuplicateElementName, "duplicate element name '" + e.name + "'");
    }
  }
  std::string resolved = tag ? std::move(*tag) : elements.front().name;
  if (!text::is_identifier(resolved)) {
    fail(Errc::InvalidIdentifier, "invalid tag '" + resolved + "'");
  }
  return Tuple(std::move(resolved), std::move(elements));
}

const Value* Tuple::find(std::string_view name) const {
  for (const auto& e : elements_) {
    if (e.name == name) return &e.value;
  }
  return nullptr;
}

const Element* Tuple::first_node() const {
  for (const auto& e : elements_) {
    if (e.value.kind() == ValueKind::NodeRef) return &e;
  }
  return nullptr;
}

std::size_t Tuple::count_kind(ValueKind kind) const {
  return static_cast<std::size_t>(std::count_if(
      elements_.begin(), elements_.end(),
      [kind](const Element& e) { return e.value.kind() == kind; }));
}

std::strong_ordering operator<=>(const Tuple& a, const Tuple& b) {
  if (auto c = a.tag_ <=> b.tag_; c != 0) return c;
  const auto& x = a.elements_;
  const auto& y = b.elements_;
  auto names = std::lexicographical_compare_three_way(
      x.begin(), x.end(), y.begin(), y.end(),
      [](const Element& l, const Element& r) { return l.name <=> r.name; });
  if (names != 0) return names;
  return std::lexicographical_compare_three_way(
      x.begin(), x.end(), y.begin(), y.end(),
      [](const Element& l, const Element& r) { return l.value <=> r.value; });
}

Tuple node_tuple(const NodeId& id) {
  return Tuple::make({Element{"node", Value::node(id)}});
}

std::vector<const Tuple*> TupleSet::tagged(std::string_view tag) const {
  std::vector<const Tuple*> out;
  for (const auto& t : tuples_) {
    if (t.tag() == tag) out.push_back(&t);
  }
  return out;
}

TupleSet set_union(const TupleSet& a, const TupleSet& b) {
  TupleSet out = a;
  for (const auto& t : b) out.insert(t);
  return out;
}

TupleSet set_subtract(const TupleSet& first, std::span<const TupleSet> rest) {
  TupleSet out;
  for (const auto& t : first) {
    bool removed = std::any_of(rest.begin(), rest.end(),
                               [&](const TupleSet& s) { return s.contains(t); });
    if (!removed) out.insert(t);
  }
  return out;
}

}  // namespace codeq
