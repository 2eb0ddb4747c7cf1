#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "codeq/lang/node.hpp"
#include "codeq/tuple/value.hpp"

namespace codeq::lang {

struct SourceText {
  std::string path;
  std::string text;
};

/// A parsed set of source files plus an index from NodeId to node. Values are
/// cheap to copy and immutable; edits produce new Programs that share every
/// untouched subtree with the original.
class Program {
 public:
  struct Entry {
    const Node* node = nullptr;
    NodeId id;
    std::optional<std::size_t> parent;
    std::size_t subtree_end = 0;  // one past the last descendant entry
    std::size_t depth = 0;
  };

  Program();
  /// Mints NodeIds and builds the index. Throws ParseError on duplicate
  /// class or method declarations.
  static Program from_roots(std::vector<NodePtr> roots);

  const std::vector<NodePtr>& roots() const;
  /// Every node in document (pre-)order.
  const std::vector<Entry>& entries() const;

  const Node* find(const NodeId& id) const;
  /// Throws UnknownNodeId.
  const Node& resolve(const NodeId& id) const;
  const Entry& entry(const Node& node) const;
  const NodeId& id_of(const Node& node) const { return entry(node).id; }
  const Node* parent_of(const Node& node) const;
  /// Entries of the subtree rooted at node, node first.
  std::span<const Entry> subtree(const Node& node) const;
  /// Path of the file a node was parsed from.
  const std::string& file_of(const Node& node) const;

  /// Innermost node whose span contains the position.
  const Node* node_at(std::string_view file, int line, int column) const;

 private:
  struct Index;
  explicit Program(std::shared_ptr<const Index> index) : index_(std::move(index)) {}

  std::shared_ptr<const Index> index_;
};

/// Reads every `*.mini` file below dir, sorted by relative path. Paths in the
/// result are relative to dir.
std::vector<SourceText> read_corpus(const std::filesystem::path& dir);

/// Throws PositionedError(ParseError).
Program parse_program(const std::vector<SourceText>& sources);

/// All nodes matching the filter inside scope (whole program when absent), in
/// document order. The scope node itself is included when it matches.
std::vector<const Node*> nodes_of_kind(const Program& program, const KindFilter& filter,
                                       const Node* scope = nullptr);

/// Returns a program in which the method's body starts with the given
/// statements. Throws NotAMethod.
Program insert_statements(const Program& program, const NodeId& method,
                          const std::vector<NodePtr>& statements);

}  // namespace codeq::lang
