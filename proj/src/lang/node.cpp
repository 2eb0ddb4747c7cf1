#include "codeq/lang/node.hpp"

#include <array>
#include <utility>

namespace codeq::lang {

namespace {

constexpr std::array<std::pair<NodeKind, std::string_view>, 18> kKindNames{{
    {NodeKind::SourceFile, "SourceFile"},
    {NodeKind::Module, "Module"},
    {NodeKind::NameImport, "NameImport"},
    {NodeKind::Class, "Class"},
    {NodeKind::Method, "Method"},
    {NodeKind::Parameter, "Parameter"},
    {NodeKind::Block, "Block"},
    {NodeKind::DeclarationStatement, "DeclarationStatement"},
    {NodeKind::ExpressionStatement, "ExpressionStatement"},
    {NodeKind::IfStatement, "IfStatement"},
    {NodeKind::LoopStatement, "LoopStatement"},
    {NodeKind::ReturnStatement, "ReturnStatement"},
    {NodeKind::PrintStatement, "PrintStatement"},
    {NodeKind::CallExpression, "CallExpression"},
    {NodeKind::ReferenceExpression, "ReferenceExpression"},
    {NodeKind::BinaryExpression, "BinaryExpression"},
    {NodeKind::IntLiteral, "IntLiteral"},
    {NodeKind::StringLiteral, "StringLiteral"},
}};

}  // namespace

std::string_view to_string(NodeKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "?";
}

std::optional<NodeKind> kind_from_string(std::string_view name) {
  for (const auto& [k, n] : kKindNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

bool is_statement(NodeKind kind) {
  switch (kind) {
    case NodeKind::DeclarationStatement:
    case NodeKind::ExpressionStatement:
    case NodeKind::IfStatement:
    case NodeKind::LoopStatement:
    case NodeKind::ReturnStatement:
    case NodeKind::PrintStatement:
      return true;
    default:
      return false;
  }
}

bool is_expression(NodeKind kind) {
  switch (kind) {
    case NodeKind::CallExpression:
    case NodeKind::ReferenceExpression:
    case NodeKind::BinaryExpression:
    case NodeKind::IntLiteral:
    case NodeKind::StringLiteral:
      return true;
    default:
      return false;
  }
}

bool is_declaration(NodeKind kind) {
  return kind == NodeKind::Module || kind == NodeKind::Class || kind == NodeKind::Method;
}

std::optional<KindFilter> KindFilter::parse(std::string_view name) {
  if (name == "Statement") return KindFilter(NodeKind::Block, Group::Statement);
  if (name == "Expression") return KindFilter(NodeKind::Block, Group::Expression);
  if (auto k = kind_from_string(name)) return KindFilter(*k, Group::None);
  return std::nullopt;
}

bool KindFilter::matches(NodeKind kind) const {
  switch (group_) {
    case Group::Statement: return is_statement(kind);
    case Group::Expression: return is_expression(kind);
    case Group::None: return kind == kind_;
  }
  return false;
}

std::string KindFilter::name() const {
  switch (group_) {
    case Group::Statement: return "Statement";
    case Group::Expression: return "Expression";
    case Group::None: return std::string(to_string(kind_));
  }
  return {};
}

bool Span::contains(int line, int col) const {
  if (line < start_line || line > end_line) return false;
  if (line == start_line && col < start_col) return false;
  if (line == end_line && col > end_col) return false;
  return true;
}

const Node* Node::body() const {
  if (kind != NodeKind::Method || children.empty()) return nullptr;
  return children.back().get();
}

std::vector<const Node*> Node::parameters() const {
  std::vector<const Node*> out;
  for (const auto& c : children) {
    if (c->kind == NodeKind::Parameter) out.push_back(c.get());
  }
  return out;
}

NodePtr make_node(NodeKind kind, std::string name, std::string text,
                  std::vector<NodePtr> children, Span span) {
  return std::make_shared<const Node>(
      Node{kind, std::move(name), std::move(text), std::move(children), std::move(span)});
}

bool same_structure(const Node& a, const Node& b) {
  if (a.kind != b.kind || a.name != b.name || a.text != b.text ||
      a.children.size() != b.children.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.children.size(); ++i) {
    if (!same_structure(*a.children[i], *b.children[i])) return false;
  }
  return true;
}

std::string dotted_name(const Node& reference) {
  std::string out = reference.name;
  const Node* current = &reference;
  while (!current->children.empty() &&
         current->children.front()->kind == NodeKind::ReferenceExpression) {
    current = current->children.front().get();
    out = current->name + "." + out;
  }
  return out;
}

}  // namespace codeq::lang
