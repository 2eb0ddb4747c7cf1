#pragma once

// Deliberately naive reference implementations. They share no code with the
// library so that agreement means something.

#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "codeq/builtins/builtins.hpp"
#include "codeq/tuple/tuple_set.hpp"

namespace codeq::testing {

// Cartesian product over the tag groups, filtered afterwards.
inline TupleSet brute_force_join(const TupleSet& input,
                                 const std::vector<builtins::JoinSelector>& selectors,
                                 const std::optional<std::string>& as_tag) {
  std::vector<std::string> tags;
  for (const auto& s : selectors) {
    if (!s.tag) continue;
    bool known = false;
    for (const auto& t : tags) known = known || t == *s.tag;
    if (!known) tags.push_back(*s.tag);
  }
  std::vector<std::vector<Tuple>> groups(tags.size());
  for (const auto& t : input) {
    for (std::size_t g = 0; g < tags.size(); ++g) {
      if (t.tag() == tags[g]) groups[g].push_back(t);
    }
  }
  std::string out_tag;
  if (as_tag) {
    out_tag = *as_tag;
  } else {
    for (std::size_t g = 0; g < tags.size(); ++g) out_tag += (g ? "_" : "") + tags[g];
  }

  TupleSet out;
  for (const auto& g : groups) {
    if (g.empty()) return out;
  }
  std::vector<std::size_t> pick(groups.size(), 0);
  while (true) {
    bool agree = true;
    for (std::size_t i = 0; i < pick.size() && agree; ++i) {
      for (std::size_t j = i + 1; j < pick.size() && agree; ++j) {
        for (const auto& e : groups[i][pick[i]].elements()) {
          for (const auto& f : groups[j][pick[j]].elements()) {
            if (e.name == f.name && !(e.value == f.value)) agree = false;
          }
        }
      }
    }
    if (agree) {
      std::vector<Element> elements;
      bool complete = true;
      for (const auto& s : selectors) {
        std::optional<Value> v;
        for (std::size_t g = 0; g < groups.size() && !v; ++g) {
          if (s.tag && tags[g] != *s.tag) continue;
          if (const Value* found = groups[g][pick[g]].find(s.element)) v = *found;
        }
        if (!v) {
          complete = false;
          break;
        }
        bool dup = false;
        for (const auto& e : elements) dup = dup || e.name == s.element;
        if (!dup) elements.push_back({s.element, *v});
      }
      if (complete) out.insert(Tuple::make(out_tag, elements));
    }
    std::size_t k = 0;
    while (k < pick.size() && ++pick[k] == groups[k].size()) pick[k++] = 0;
    if (k == pick.size()) break;
  }
  return out;
}

// Inputs where joins are likely to match: few tags, few names, tiny values.
inline TupleSet random_join_input(std::mt19937& rng, std::size_t max_tuples = 20) {
  static const char* tags[] = {"change", "commit", "extra"};
  static const char* names[] = {"id", "ast", "message", "w"};
  TupleSet out;
  std::size_t n = rng() % (max_tuples + 1);
  while (out.size() < n) {
    std::vector<Element> elements;
    for (const char* name : names) {
      if (rng() % 3 == 0) continue;
      elements.push_back({name, Value::integer(static_cast<std::int64_t>(rng() % 3))});
    }
    if (elements.empty()) elements.push_back({"id", Value::integer(0)});
    out.insert(Tuple::make(std::string(tags[rng() % 3]), elements));
  }
  return out;
}

using Graph = std::vector<std::pair<int, int>>;

inline Graph random_graph(std::mt19937& rng, int max_nodes = 15) {
  int n = 1 + static_cast<int>(rng() % max_nodes);
  Graph g;
  int edges = static_cast<int>(rng() % (2 * n + 1));
  for (int i = 0; i < edges; ++i) g.emplace_back(rng() % n, rng() % n);
  return g;
}

inline NodeId graph_node(int i) { return NodeId("g.N.m" + std::to_string(i)); }

inline TupleSet relation_of(const Graph& g) {
  TupleSet out;
  for (auto [a, b] : g) {
    out.insert(Tuple::make("calls", {{"caller", Value::node(graph_node(a))},
                                     {"callee", Value::node(graph_node(b))}}));
  }
  return out;
}

// Floyd-Warshall closure; returns nodes i with i ->+ i.
inline std::set<NodeId> closure_self(const Graph& g) {
  int n = 0;
  for (auto [a, b] : g) n = std::max({n, a + 1, b + 1});
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (auto [a, b] : g) r[a][b] = true;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (r[i][k] && r[k][j]) r[i][j] = true;
  std::set<NodeId> out;
  for (int i = 0; i < n; ++i)
    if (r[i][i]) out.insert(graph_node(i));
  return out;
}

}  // namespace codeq::testing
