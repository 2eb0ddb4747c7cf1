#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "codeq/tuple/tuple_set.hpp"

namespace codeq::engine {

class ExecutionContext;

enum class QueryKind { Resource, Operator, Visualization };
std::string_view to_string(QueryKind kind);

/// What one query invocation sees. Inputs are indexed by port; a port with no
/// incoming edge is absent, which is different from an empty set.
struct QueryCall {
  std::string_view name;
  const std::vector<std::string>& args;
  const std::vector<std::optional<TupleSet>>& inputs;
  ExecutionContext& context;

  /// Port 0, or nullptr when absent.
  const TupleSet* input() const {
    return inputs.empty() || !inputs[0] ? nullptr : &*inputs[0];
  }
};

using QueryFn = std::function<TupleSet(QueryCall&)>;

struct QueryDef {
  std::string name;
  QueryKind kind = QueryKind::Operator;
  std::size_t required_inputs = 0;
  std::size_t max_inputs = 1;
  QueryFn run;
  std::string summary;
};

class Registry {
 public:
  /// Throws DuplicateQueryName.
  void add(QueryDef def);
  /// Consulted for names not registered directly; results are cached.
  void set_fallback(std::function<std::optional<QueryDef>(const std::string&)> fallback);

  const QueryDef* find(const std::string& name) const;
  /// Throws UnknownQuery.
  const QueryDef& get(const std::string& name) const;
  /// Directly registered names, sorted.
  std::vector<std::string> names() const;

 private:
  std::map<std::string, QueryDef> defs_;
  mutable std::map<std::string, QueryDef> lazy_;
  std::function<std::optional<QueryDef>(const std::string&)> fallback_;
};

}  // namespace codeq::engine
