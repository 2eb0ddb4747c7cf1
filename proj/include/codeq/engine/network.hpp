#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace codeq::engine {

class Registry;

struct Vertex {
  enum class Type { Query, Join, Minus };
  Type type = Type::Query;
  std::string name;  // query name; empty for merges
  std::vector<std::string> args;
};

struct Edge {
  std::size_t from = 0;
  std::size_t to = 0;
  std::size_t port = 0;
};

class QueryNetwork {
 public:
  std::size_t add_query(std::string name, std::vector<std::string> args = {});
  std::size_t add_merge(Vertex::Type type);
  /// Connects to the next free port of `to`.
  void connect(std::size_t from, std::size_t to);
  void connect(std::size_t from, std::size_t to, std::size_t port);

  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }

  std::vector<Edge> incoming(std::size_t vertex) const;
  std::vector<std::size_t> successors(std::size_t vertex) const;
  std::size_t query_count() const;
  std::size_t merge_count() const;

  /// Throws UnknownQuery, InvalidNetwork or CycleError.
  void validate(const Registry& registry) const;
  /// Topological order, lowest index first among ready vertices. Throws
  /// CycleError.
  std::vector<std::size_t> order() const;

 private:
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
};

}  // namespace codeq::engine
