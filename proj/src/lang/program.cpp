#include "codeq/lang/program.hpp"

#include <algorithm>
#include <functional>

#include "codeq/lang/parser.hpp"
#include "codeq/support/error.hpp"
#include "codeq/support/text.hpp"

namespace codeq::lang {

struct Program::Index {
  std::vector<NodePtr> roots;
  std::vector<Entry> entries;
  std::unordered_map<NodeId, std::size_t> by_id;
  std::unordered_map<const Node*, std::size_t> by_node;
  std::vector<std::size_t> root_entry;  // entry index of each root
};

namespace {

/// Step appended to the parent's id for non-declaration children.
std::string child_step(const Node& parent, std::size_t index, const std::string& parent_id) {
  const Node& child = *parent.children[index];
  auto ordinal = [&](NodeKind kind) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < index; ++i) {
      if (parent.children[i]->kind == kind) ++n;
    }
    return std::to_string(n);
  };
  switch (parent.kind) {
    case NodeKind::Class:
      return parent_id + "/import[" + ordinal(NodeKind::NameImport) + "]";
    case NodeKind::NameImport: return parent_id + "/name";
    case NodeKind::Method:
      if (child.kind == NodeKind::Parameter) {
        return parent_id + "/param[" + ordinal(NodeKind::Parameter) + "]";
      }
      return parent_id + "/body";
    case NodeKind::Block: return parent_id + "[" + std::to_string(index) + "]";
    case NodeKind::DeclarationStatement: return parent_id + "/init";
    case NodeKind::ExpressionStatement: return parent_id + "/expr";
    case NodeKind::IfStatement:
      return parent_id + (index == 0 ? "/cond" : index == 1 ? "/then" : "/else");
    case NodeKind::LoopStatement: return parent_id + (index == 0 ? "/cond" : "/body");
    case NodeKind::ReturnStatement: return parent_id + "/value";
    case NodeKind::PrintStatement: return parent_id + "/arg[" + std::to_string(index) + "]";
    case NodeKind::CallExpression:
      return parent_id + (index == 0 ? "/callee" : "/arg[" + std::to_string(index - 1) + "]");
    case NodeKind::ReferenceExpression: return parent_id + "/prefix";
    case NodeKind::BinaryExpression: return parent_id + (index == 0 ? "/lhs" : "/rhs");
    default: return parent_id + "/child[" + std::to_string(index) + "]";
  }
}

}  // namespace

Program::Program() : index_(std::make_shared<Index>()) {}

Program Program::from_roots(std::vector<NodePtr> roots) {
  auto index = std::make_shared<Index>();
  index->roots = std::move(roots);

  // qualified: dotted declaration name of the node being visited (empty for
  // SourceFile); modules never include the file in their names.
  std::function<void(const Node&, std::optional<std::size_t>, const std::string&,
                     const std::string&, std::size_t)>
      visit = [&](const Node& node, std::optional<std::size_t> parent, const std::string& id,
                  const std::string& qualified, std::size_t depth) {
        NodeId node_id(id);
        if (index->by_id.count(node_id)) {
          if (node.kind != NodeKind::Module) {
            throw PositionedError(Errc::ParseError, node.span.file, node.span.start_line,
                                  node.span.start_col,
                                  "duplicate declaration '" + qualified + "'");
          }
          for (int n = 2;; ++n) {
            NodeId candidate(id + "#" + std::to_string(n));
            if (!index->by_id.count(candidate)) {
              node_id = std::move(candidate);
              break;
            }
          }
        }
        std::size_t self = index->entries.size();
        index->entries.push_back(Entry{&node, node_id, parent, 0, depth});
        index->by_id.emplace(node_id, self);
        index->by_node.emplace(&node, self);

        const std::string my_id = index->entries[self].id.str();
        for (std::size_t i = 0; i < node.children.size(); ++i) {
          const Node& child = *node.children[i];
          if (is_declaration(child.kind)) {
            std::string q = qualified.empty() ? child.name : qualified + "." + child.name;
            visit(child, self, q, q, depth + 1);
          } else {
            visit(child, self, child_step(node, i, my_id), qualified, depth + 1);
          }
        }
        index->entries[self].subtree_end = index->entries.size();
      };

  for (const auto& root : index->roots) {
    index->root_entry.push_back(index->entries.size());
    visit(*root, std::nullopt, "@" + root->name, "", 0);
  }
  return Program(std::move(index));
}

const std::vector<NodePtr>& Program::roots() const { return index_->roots; }

const std::vector<Program::Entry>& Program::entries() const { return index_->entries; }

const Node* Program::find(const NodeId& id) const {
  auto it = index_->by_id.find(id);
  return it == index_->by_id.end() ? nullptr : index_->entries[it->second].node;
}

const Node& Program::resolve(const NodeId& id) const {
  if (const Node* n = find(id)) return *n;
  fail(Errc::UnknownNodeId, "unknown node id '" + id.str() + "'");
}

const Program::Entry& Program::entry(const Node& node) const {
  auto it = index_->by_node.find(&node);
  if (it == index_->by_node.end()) fail(Errc::UnknownNodeId, "node is not part of this program");
  return index_->entries[it->second];
}

const Node* Program::parent_of(const Node& node) const {
  const auto& e = entry(node);
  return e.parent ? index_->entries[*e.parent].node : nullptr;
}

std::span<const Program::Entry> Program::subtree(const Node& node) const {
  auto begin = index_->by_node.at(&node);
  const auto& entries = index_->entries;
  return std::span<const Entry>(entries.data() + begin, entries[begin].subtree_end - begin);
}

const std::string& Program::file_of(const Node& node) const {
  auto position = index_->by_node.at(&node);
  auto it = std::upper_bound(index_->root_entry.begin(), index_->root_entry.end(), position);
  return index_->roots[static_cast<std::size_t>(it - index_->root_entry.begin()) - 1]->name;
}

const Node* Program::node_at(std::string_view file, int line, int column) const {
  for (std::size_t r = 0; r < index_->roots.size(); ++r) {
    if (index_->roots[r]->name != file) continue;
    const Node* best = nullptr;
    std::size_t begin = index_->root_entry[r];
    for (std::size_t i = begin; i < index_->entries[begin].subtree_end; ++i) {
      const Node* n = index_->entries[i].node;
      // Pre-order: a later containing node is always nested in an earlier one.
      if (n->span.contains(line, column)) best = n;
    }
    return best;
  }
  return nullptr;
}

std::vector<SourceText> read_corpus(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) fail(Errc::FileNotFound, "corpus directory not found: " + dir.string());
  std::vector<SourceText> out;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".mini") continue;
    out.push_back({fs::relative(entry.path(), dir).generic_string(), text::read_file(entry.path())});
  }
  std::sort(out.begin(), out.end(),
            [](const SourceText& a, const SourceText& b) { return a.path < b.path; });
  return out;
}

Program parse_program(const std::vector<SourceText>& sources) {
  std::vector<NodePtr> roots;
  roots.reserve(sources.size());
  for (const auto& s : sources) roots.push_back(parse_source(s.path, s.text));
  return Program::from_roots(std::move(roots));
}

std::vector<const Node*> nodes_of_kind(const Program& program, const KindFilter& filter,
                                       const Node* scope) {
  std::vector<const Node*> out;
  auto take = [&](std::span<const Program::Entry> entries) {
    for (const auto& e : entries) {
      if (filter.matches(e.node->kind)) out.push_back(e.node);
    }
  };
  if (scope) {
    take(program.subtree(*scope));
  } else {
    take(program.entries());
  }
  return out;
}

Program insert_statements(const Program& program, const NodeId& method_id,
                          const std::vector<NodePtr>& statements) {
  const Node& method = program.resolve(method_id);
  if (method.kind != NodeKind::Method) {
    fail(Errc::NotAMethod, "'" + method_id.str() + "' is a " +
                               std::string(to_string(method.kind)) + ", not a Method");
  }
  for (const auto& s : statements) {
    if (!is_statement(s->kind)) {
      fail(Errc::NotAMethod, "only statements can be inserted into a method body");
    }
  }
  const Node& body = *method.body();
  std::vector<NodePtr> body_children = statements;
  body_children.insert(body_children.end(), body.children.begin(), body.children.end());
  NodePtr replacement = make_node(NodeKind::Block, body.name, body.text,
                                  std::move(body_children), body.span);
  const Node* original = &body;

  // Copy the path from the body's parent up to the root.
  for (const Node* current = &method; current; current = program.parent_of(*current)) {
    std::vector<NodePtr> children = current->children;
    for (auto& c : children) {
      if (c.get() == original) c = replacement;
    }
    replacement = make_node(current->kind, current->name, current->text, std::move(children),
                            current->span);
    original = current;
  }

  std::vector<NodePtr> roots = program.roots();
  for (auto& r : roots) {
    if (r.get() == original) r = replacement;
  }
  return Program::from_roots(std::move(roots));
}

}  // namespace codeq::lang
