#include "codeq/engine/network.hpp"

#include <algorithm>
#include <queue>
#include <set>

#include "codeq/engine/registry.hpp"
#include "codeq/support/error.hpp"

namespace codeq::engine {

std::size_t QueryNetwork::add_query(std::string name, std::vector<std::string> args) {
  vertices_.push_back({Vertex::Type::Query, std::move(name), std::move(args)});
  return vertices_.size() - 1;
}

std::size_t QueryNetwork::add_merge(Vertex::Type type) {
  vertices_.push_back({type, {}, {}});
  return vertices_.size() - 1;
}

void QueryNetwork::connect(std::size_t from, std::size_t to) {
  std::size_t port = 0;
  for (const auto& e : edges_) {
    if (e.to == to) port = std::max(port, e.port + 1);
  }
  connect(from, to, port);
}

void QueryNetwork::connect(std::size_t from, std::size_t to, std::size_t port) {
  if (from >= vertices_.size() || to >= vertices_.size()) {
    fail(Errc::InvalidNetwork, "edge refers to a missing vertex");
  }
  edges_.push_back({from, to, port});
}

std::vector<Edge> QueryNetwork::incoming(std::size_t vertex) const {
  std::vector<Edge> out;
  for (const auto& e : edges_) {
    if (e.to == vertex) out.push_back(e);
  }
  std::sort(out.begin(), out.end(), [](const Edge& a, const Edge& b) { return a.port < b.port; });
  return out;
}

std::vector<std::size_t> QueryNetwork::successors(std::size_t vertex) const {
  std::vector<std::size_t> out;
  for (const auto& e : edges_) {
    if (e.from == vertex) out.push_back(e.to);
  }
  return out;
}

std::size_t QueryNetwork::query_count() const {
  return static_cast<std::size_t>(std::count_if(vertices_.begin(), vertices_.end(), [](const Vertex& v) {
    return v.type == Vertex::Type::Query;
  }));
}

std::size_t QueryNetwork::merge_count() const { return vertices_.size() - query_count(); }

std::vector<std::size_t> QueryNetwork::order() const {
  std::vector<std::size_t> indegree(vertices_.size());
  for (const auto& e : edges_) ++indegree[e.to];
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    if (indegree[v] == 0) ready.push(v);
  }
  std::vector<std::size_t> out;
  while (!ready.empty()) {
    std::size_t v = ready.top();
    ready.pop();
    out.push_back(v);
    for (const auto& e : edges_) {
      if (e.from == v && --indegree[e.to] == 0) ready.push(e.to);
    }
  }
  if (out.size() != vertices_.size()) fail(Errc::CycleError, "query network contains a cycle");
  return out;
}

void QueryNetwork::validate(const Registry& registry) const {
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    const Vertex& vertex = vertices_[v];
    auto in = incoming(v);
    std::set<std::size_t> ports;
    for (const auto& e : in) {
      if (e.from == v) fail(Errc::CycleError, "vertex " + std::to_string(v) + " feeds itself");
      if (!ports.insert(e.port).second) {
        fail(Errc::InvalidNetwork, "two edges into port " + std::to_string(e.port) + " of vertex " +
                                       std::to_string(v));
      }
    }
    if (vertex.type == Vertex::Type::Query) {
      const QueryDef& def = registry.get(vertex.name);
      for (auto port : ports) {
        if (port >= def.max_inputs) {
          fail(Errc::InvalidNetwork, "query '" + vertex.name + "' takes " +
                                         std::to_string(def.max_inputs) + " input(s), port " +
                                         std::to_string(port) + " is connected");
        }
      }
      for (std::size_t port = 0; port < def.required_inputs; ++port) {
        if (!ports.count(port)) {
          fail(Errc::InvalidNetwork, "query '" + vertex.name + "' needs an input");
        }
      }
    } else {
      std::size_t needed = vertex.type == Vertex::Type::Minus ? 2 : 1;
      if (ports.size() < needed) {
        fail(Errc::InvalidNetwork, "merge vertex " + std::to_string(v) + " has too few inputs");
      }
      for (std::size_t port = 0; port < ports.size(); ++port) {
        if (!ports.count(port)) fail(Errc::InvalidNetwork, "merge ports must be contiguous");
      }
    }
  }
  order();
}

}  // namespace codeq::engine
