#pragma once

#include <optional>
#include <string>
#include <vector>

#include "codeq/engine/context.hpp"
#include "codeq/engine/network.hpp"
#include "codeq/engine/registry.hpp"
#include "codeq/support/error.hpp"

namespace codeq::engine {

/// A query failed; the run stopped there. code() is the underlying failure.
class QueryFailure : public Error {
 public:
  QueryFailure(std::string query, const Error& cause);
  const std::string& query() const { return query_; }

 private:
  std::string query_;
};

struct SinkResult {
  std::size_t vertex = 0;
  TupleSet output;
  std::optional<RenderPlan> plan;
};

struct RunResult {
  std::vector<SinkResult> sinks;
  /// Explicit visualizations in execution order, then automatic ones.
  std::vector<RenderPlan> renders;
  std::vector<std::string> warnings;
};

/// messages, then arrows (every tuple has exactly two node refs), then
/// highlight (every tuple is a single node ref), then table.
RenderPlan auto_select(const TupleSet& tuples);

/// Runs every vertex once in topological order. Throws QueryFailure for
/// errors raised by queries; validation errors propagate unchanged.
RunResult execute(const QueryNetwork& network, const Registry& registry,
                  ExecutionContext& context);

}  // namespace codeq::engine
