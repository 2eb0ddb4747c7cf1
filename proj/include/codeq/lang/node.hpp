#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace codeq::lang {

enum class NodeKind {
  SourceFile,
  Module,
  NameImport,
  Class,
  Method,
  Parameter,
  Block,
  DeclarationStatement,
  ExpressionStatement,
  IfStatement,
  LoopStatement,
  ReturnStatement,
  PrintStatement,
  CallExpression,
  ReferenceExpression,
  BinaryExpression,
  IntLiteral,
  StringLiteral,
};

std::string_view to_string(NodeKind kind);
std::optional<NodeKind> kind_from_string(std::string_view name);

bool is_statement(NodeKind kind);
bool is_expression(NodeKind kind);
/// Module, Class and Method: the nodes identified by qualified names.
bool is_declaration(NodeKind kind);

/// A concrete kind or one of the abstract groups `Statement` / `Expression`.
class KindFilter {
 public:
  static std::optional<KindFilter> parse(std::string_view name);
  static KindFilter exactly(NodeKind kind) { return KindFilter(kind, Group::None); }

  bool matches(NodeKind kind) const;
  std::string name() const;

 private:
  enum class Group { None, Statement, Expression };
  KindFilter(NodeKind kind, Group group) : kind_(kind), group_(group) {}

  NodeKind kind_;
  Group group_;
};

/// Position range in a source file; lines and columns are 1-based and the end
/// column is inclusive.
struct Span {
  std::string file;
  int start_line = 0;
  int start_col = 0;
  int end_line = 0;
  int end_col = 0;

  bool contains(int line, int col) const;
  bool overlaps_lines(int first, int last) const {
    return start_line <= last && first <= end_line;
  }
  bool operator==(const Span&) const = default;
};

struct Node;
using NodePtr = std::shared_ptr<const Node>;

/// Immutable AST node. Per-kind child layout:
///   SourceFile/Module: Module | Class declarations
///   Class: NameImport | Method
///   NameImport: [ReferenceExpression]
///   Method: Parameter..., Block
///   DeclarationStatement: [init?]   ExpressionStatement: [expr]
///   IfStatement: [cond, then Block, else Block?]   LoopStatement: [cond, Block]
///   ReturnStatement: [value?]   PrintStatement: args...
///   CallExpression: [callee ReferenceExpression, args...]
///   ReferenceExpression: [prefix ReferenceExpression?]
///   BinaryExpression: [lhs, rhs] with `text` holding the operator
///   IntLiteral/StringLiteral: `text` holds the value
struct Node {
  NodeKind kind;
  std::string name;
  std::string text;
  std::vector<NodePtr> children;
  Span span;

  const Node* body() const;  // Method's block
  std::vector<const Node*> parameters() const;
};

NodePtr make_node(NodeKind kind, std::string name, std::string text,
                  std::vector<NodePtr> children, Span span = {});

/// Structural equality ignoring spans.
bool same_structure(const Node& a, const Node& b);

/// Dotted name of a ReferenceExpression chain (`a.b.C`).
std::string dotted_name(const Node& reference);

}  // namespace codeq::lang
