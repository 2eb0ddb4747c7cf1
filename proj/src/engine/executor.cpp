#include "codeq/engine/executor.hpp"

#include <cassert>

namespace codeq::engine {

QueryFailure::QueryFailure(std::string query, const Error& cause)
    : Error(cause.code(), query + ": " + cause.what()), query_(std::move(query)) {}

RenderPlan auto_select(const TupleSet& tuples) {
  RenderPlan plan;
  plan.payload = tuples;
  plan.automatic = true;
  bool any_message = false;
  bool all_pairs = !tuples.empty();
  bool all_single = !tuples.empty();
  for (const auto& t : tuples) {
    any_message |= t.tag() == "message";
    std::size_t refs = t.count_kind(ValueKind::NodeRef);
    all_pairs &= refs == 2;
    all_single &= refs == 1 && t.size() == 1;
  }
  if (any_message) {
    plan.renderer = "messages";
  } else if (all_pairs) {
    plan.renderer = "arrows";
  } else if (all_single) {
    plan.renderer = "highlight";
  } else {
    plan.renderer = "table";
  }
  return plan;
}

RunResult execute(const QueryNetwork& network, const Registry& registry,
                  ExecutionContext& context) {
  network.validate(registry);
  context.clear_run_output();
  const auto& vertices = network.vertices();
  std::vector<std::optional<TupleSet>> outputs(vertices.size());
  // Vertices whose output only carries visualizations (nothing left to show).
  std::vector<bool> visual_only(vertices.size(), false);

  for (std::size_t v : network.order()) {
    const Vertex& vertex = vertices[v];
    auto in = network.incoming(v);

    if (vertex.type != Vertex::Type::Query) {
      std::vector<TupleSet> parts;
      bool all_visual = true;
      for (const auto& e : in) {
        assert(outputs[e.from]);
        parts.push_back(*outputs[e.from]);
        all_visual = all_visual && visual_only[e.from];
      }
      visual_only[v] = all_visual;
      if (vertex.type == Vertex::Type::Join) {
        TupleSet merged;
        for (const auto& p : parts) merged = set_union(merged, p);
        outputs[v] = std::move(merged);
      } else {
        outputs[v] = set_subtract(parts.front(), std::span<const TupleSet>(parts).subspan(1));
      }
      continue;
    }

    const QueryDef& def = registry.get(vertex.name);
    std::vector<std::optional<TupleSet>> inputs(def.max_inputs);
    for (const auto& e : in) {
      assert(outputs[e.from]);
      inputs[e.port] = outputs[e.from];
    }
    QueryCall call{vertex.name, vertex.args, inputs, context};
    try {
      outputs[v] = def.run(call);
    } catch (const QueryFailure&) {
      throw;
    } catch (const Error& e) {
      throw QueryFailure(vertex.name, e);
    } catch (const std::exception& e) {
      throw QueryFailure(vertex.name, Error(Errc::QueryError, e.what()));
    }
    visual_only[v] = def.kind == QueryKind::Visualization;
  }

  RunResult result;
  result.renders = context.renders();
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    if (!network.successors(v).empty()) continue;
    SinkResult sink{v, *outputs[v], std::nullopt};
    if (!visual_only[v]) {
      sink.plan = auto_select(sink.output);
      result.renders.push_back(*sink.plan);
    }
    result.sinks.push_back(std::move(sink));
  }
  result.warnings = context.warnings();
  return result;
}

}  // namespace codeq::engine
