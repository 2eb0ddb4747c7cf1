#include "codeq/model/codemodel.hpp"

#include <deque>
#include <unordered_map>

#include "codeq/support/error.hpp"

namespace codeq::model {

using lang::NodeKind;

namespace {

struct Scope {
  std::vector<std::string> modules;  // outermost first
  std::string class_name;
  std::vector<std::string> imports;  // dotted names
};

std::string join_dots(const std::vector<std::string>& parts, std::size_t count) {
  std::string out;
  for (std::size_t i = 0; i < count; ++i) {
    if (i) out += '.';
    out += parts[i];
  }
  return out;
}

std::string strip_separators(std::string s) {
  while (!s.empty() && s.back() == '.') s.pop_back();
  while (!s.empty() && s.front() == '.') s.erase(0, 1);
  return s;
}

class Resolver {
 public:
  explicit Resolver(const Program& program) : program_(program) {
    for (const auto& e : program.entries()) {
      if (e.node->kind != NodeKind::Method) continue;
      std::string qualified = qualified_name(program, *e.node);
      methods_.emplace(qualified, e.id);
      by_simple_name_[e.node->name].push_back(e.id);
    }
  }

  std::optional<NodeId> resolve(const std::string& name, const Scope& scope) const {
    if (name.find('.') == std::string::npos) return resolve_simple(name, scope);

    if (auto hit = lookup(name)) return hit;
    for (std::size_t depth = scope.modules.size(); depth > 0; --depth) {
      if (auto hit = lookup(join_dots(scope.modules, depth) + "." + name)) return hit;
    }
    std::string head = name.substr(0, name.find('.'));
    std::string tail = name.substr(name.find('.'));
    for (const auto& imported : scope.imports) {
      auto last_dot = imported.rfind('.');
      std::string last = last_dot == std::string::npos ? imported : imported.substr(last_dot + 1);
      if (last != head) continue;
      if (auto hit = lookup(imported + tail)) return hit;
      for (std::size_t depth = scope.modules.size(); depth > 0; --depth) {
        if (auto hit = lookup(join_dots(scope.modules, depth) + "." + imported + tail)) return hit;
      }
    }
    return std::nullopt;
  }

 private:
  std::optional<NodeId> lookup(const std::string& qualified) const {
    auto it = methods_.find(qualified);
    if (it == methods_.end()) return std::nullopt;
    return it->second;
  }

  std::optional<NodeId> resolve_simple(const std::string& name, const Scope& scope) const {
    std::string module_prefix = join_dots(scope.modules, scope.modules.size());
    std::string class_prefix =
        module_prefix.empty() ? scope.class_name : module_prefix + "." + scope.class_name;
    if (auto hit = lookup(class_prefix + "." + name)) return hit;

    auto it = by_simple_name_.find(name);
    if (it == by_simple_name_.end()) return std::nullopt;
    if (!module_prefix.empty()) {
      std::optional<NodeId> in_module;
      int count = 0;
      for (const auto& id : it->second) {
        const Node& method = program_.resolve(id);
        std::string q = qualified_name(program_, method);
        // module.Class.method with nothing nested further between
        if (q.rfind(module_prefix + ".", 0) == 0 &&
            q.find('.', module_prefix.size() + 1) == q.rfind('.')) {
          in_module = id;
          ++count;
        }
      }
      if (count == 1) return in_module;
      if (count > 1) return std::nullopt;
    }
    if (it->second.size() == 1) return it->second.front();
    return std::nullopt;
  }

  const Program& program_;
  std::unordered_map<std::string, NodeId> methods_;
  std::unordered_map<std::string, std::vector<NodeId>> by_simple_name_;
};

Scope scope_of(const Program& program, const Node& method) {
  Scope scope;
  const Node* cls = program.parent_of(method);
  if (cls && cls->kind == NodeKind::Class) {
    scope.class_name = cls->name;
    for (const auto& child : cls->children) {
      if (child->kind == NodeKind::NameImport && !child->children.empty()) {
        scope.imports.push_back(lang::dotted_name(*child->children.front()));
      }
    }
  }
  for (const Node* p = cls ? program.parent_of(*cls) : nullptr; p; p = program.parent_of(*p)) {
    if (p->kind == NodeKind::Module) scope.modules.insert(scope.modules.begin(), p->name);
  }
  return scope;
}

}  // namespace

std::string qualified_name(const Program& program, const Node& node) {
  if (!lang::is_declaration(node.kind)) {
    fail(Errc::NotADeclaration,
         "'" + program.id_of(node).str() + "' is a " + std::string(lang::to_string(node.kind)) +
             ", not a declaration");
  }
  std::string out = node.name;
  for (const Node* p = program.parent_of(node); p; p = program.parent_of(*p)) {
    if (lang::is_declaration(p->kind)) out = p->name + "." + out;
  }
  return out;
}

CallGraph build_call_graph(const Program& program, const std::optional<NodeId>& root) {
  if (root) {
    const Node& r = program.resolve(*root);
    if (r.kind != NodeKind::Method) {
      fail(Errc::NotAMethod, "'" + root->str() + "' is not a method");
    }
  }

  Resolver resolver(program);
  std::map<NodeId, std::vector<NodeId>> out_edges;
  std::map<NodeId, std::vector<UnresolvedCall>> unresolved_by_caller;

  for (const auto& e : program.entries()) {
    if (e.node->kind != NodeKind::Method) continue;
    Scope scope = scope_of(program, *e.node);
    auto& targets = out_edges[e.id];
    for (const auto& inner : program.subtree(*e.node)) {
      const Node& n = *inner.node;
      if (n.kind != NodeKind::CallExpression || n.children.empty()) continue;
      std::string name = lang::dotted_name(*n.children.front());
      if (auto callee = resolver.resolve(name, scope)) {
        targets.push_back(*callee);
      } else {
        unresolved_by_caller[e.id].push_back({e.id, inner.id, name, n.span});
      }
    }
  }

  CallGraph graph;
  auto take = [&](const NodeId& caller) {
    for (const auto& callee : out_edges[caller]) {
      graph.edges.emplace(caller, callee);
      graph.nodes.insert(caller);
      graph.nodes.insert(callee);
    }
    for (const auto& u : unresolved_by_caller[caller]) graph.unresolved.push_back(u);
  };

  if (!root) {
    for (const auto& [caller, _] : out_edges) take(caller);
    return graph;
  }

  std::set<NodeId> seen{*root};
  std::deque<NodeId> queue{*root};
  graph.nodes.insert(*root);
  while (!queue.empty()) {
    NodeId current = queue.front();
    queue.pop_front();
    take(current);
    for (const auto& callee : out_edges[current]) {
      if (seen.insert(callee).second) queue.push_back(callee);
    }
  }
  return graph;
}

TupleSet call_graph_tuples(const CallGraph& graph) {
  TupleSet out;
  for (const auto& [caller, callee] : graph.edges) {
    out.insert(Tuple::make("calls", {{"caller", Value::node(caller)},
                                     {"callee", Value::node(callee)}}));
  }
  return out;
}

PackageDeps package_deps(const Program& program) {
  PackageDeps deps;
  for (const auto& e : program.entries()) {
    if (e.node->kind != NodeKind::Class) continue;
    std::string package;
    for (const Node* p = program.parent_of(*e.node); p; p = program.parent_of(*p)) {
      if (p->kind == NodeKind::Module) package = p->name + "." + package;
    }
    deps.class_package[e.id] = strip_separators(package);
    auto& imports = deps.imports[e.id];
    for (const auto& child : e.node->children) {
      if (child->kind != NodeKind::NameImport || child->children.empty()) continue;
      std::string imported = lang::dotted_name(*child->children.front());
      auto dot = imported.rfind('.');
      if (dot == std::string::npos) continue;
      std::string prefix = strip_separators(imported.substr(0, dot));
      if (!prefix.empty()) imports.insert(prefix);
    }
  }
  return deps;
}

}  // namespace codeq::model
