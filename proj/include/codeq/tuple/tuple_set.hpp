#pragma once

#include <initializer_list>
#include <set>
#include <span>
#include <vector>

#include "codeq/tuple/tuple.hpp"

namespace codeq {

/// Duplicate-free collection of tuples. Iteration follows the canonical tuple
/// order, which makes every rendering of a set deterministic.
class TupleSet {
 public:
  using const_iterator = std::set<Tuple>::const_iterator;

  TupleSet() = default;
  TupleSet(std::initializer_list<Tuple> tuples) : tuples_(tuples) {}
  explicit TupleSet(std::vector<Tuple> tuples)
      : tuples_(std::make_move_iterator(tuples.begin()),
                std::make_move_iterator(tuples.end())) {}

  /// Returns false when the tuple was already present.
  bool insert(Tuple t) { return tuples_.insert(std::move(t)).second; }
  bool contains(const Tuple& t) const { return tuples_.count(t) != 0; }
  std::size_t size() const noexcept { return tuples_.size(); }
  bool empty() const noexcept { return tuples_.empty(); }

  const_iterator begin() const { return tuples_.begin(); }
  const_iterator end() const { return tuples_.end(); }

  /// Tuples carrying the given tag, in canonical order.
  std::vector<const Tuple*> tagged(std::string_view tag) const;

  bool operator==(const TupleSet&) const = default;

 private:
  std::set<Tuple> tuples_;
};

TupleSet set_union(const TupleSet& a, const TupleSet& b);
/// `first` minus every tuple present in any member of `rest`.
TupleSet set_subtract(const TupleSet& first, std::span<const TupleSet> rest);

}  // namespace codeq
