#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "codeq/tuple/tuple_set.hpp"

namespace codeq::testing {

inline std::string random_identifier(std::mt19937& rng, std::size_t max_len = 6) {
  static const std::string head = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_";
  static const std::string tail = head + "0123456789";
  std::uniform_int_distribution<std::size_t> len(1, max_len);
  std::string s(1, head[rng() % head.size()]);
  for (std::size_t i = 1, n = len(rng); i < n; ++i) s += tail[rng() % tail.size()];
  return s;
}

inline std::string random_text(std::mt19937& rng) {
  std::uniform_int_distribution<int> len(0, 12);
  std::string s;
  for (int i = 0, n = len(rng); i < n; ++i) {
    switch (rng() % 6) {
      case 0: s += static_cast<char>(rng() % 32); break;  // control bytes
      case 1: s += "\"\\,():{}"[rng() % 9]; break;
      default: s += static_cast<char>(' ' + rng() % 95);
    }
  }
  return s;
}

inline NodeId random_node_id(std::mt19937& rng) {
  switch (rng() % 4) {
    case 0: return NodeId(random_identifier(rng) + "." + random_identifier(rng));
    case 1:
      return NodeId(random_identifier(rng) + "/body[" + std::to_string(rng() % 9) + "]");
    case 2: return NodeId("@dir/" + random_identifier(rng) + ".mini");
    default: return NodeId(random_text(rng) + "x");  // forces the quoted form at times
  }
}

inline Value random_value(std::mt19937& rng) {
  switch (rng() % 4) {
    case 0: return Value::text(random_text(rng));
    case 1: return Value::integer(static_cast<std::int64_t>(rng()) - (1ll << 31));
    case 2: {
      std::uniform_real_distribution<double> d(-1e6, 1e6);
      double v = d(rng);
      if (rng() % 5 == 0) v = static_cast<double>(rng() % 100);
      if (rng() % 7 == 0) v *= 1e-300;
      return Value::real(v);
    }
    default: return Value::node(random_node_id(rng));
  }
}

inline Tuple random_tuple(std::mt19937& rng) {
  std::vector<Element> elements;
  std::size_t n = 1 + rng() % 4;
  std::vector<std::string> names;
  while (names.size() < n) {
    auto name = random_identifier(rng, 3);
    if (std::find(names.begin(), names.end(), name) == names.end()) names.push_back(name);
  }
  for (auto& name : names) elements.push_back({name, random_value(rng)});
  std::optional<std::string> tag;
  if (rng() % 2) tag = random_identifier(rng, 4);
  return Tuple::make(tag, std::move(elements));
}

inline TupleSet random_set(std::mt19937& rng, std::size_t max_size = 12) {
  TupleSet ts;
  std::size_t n = rng() % (max_size + 1);
  for (std::size_t i = 0; i < n; ++i) ts.insert(random_tuple(rng));
  return ts;
}

}  // namespace codeq::testing
