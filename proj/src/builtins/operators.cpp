#include <algorithm>
#include <deque>
#include <functional>
#include <map>

#include "codeq/builtins/builtins.hpp"
#include "codeq/lang/parser.hpp"
#include "codeq/support/error.hpp"
#include "codeq/support/text.hpp"
#include "codeq/tuple/text_format.hpp"
#include "common.hpp"

namespace codeq::builtins {

std::vector<JoinSelector> parse_selectors(const std::vector<std::string>& words) {
  std::vector<JoinSelector> out;
  for (const auto& word : words) {
    for (const auto& part : text::split(word, ',')) {
      std::string item(text::trim(part));
      if (item.empty()) continue;
      JoinSelector sel;
      auto dot = item.rfind('.');
      if (dot != std::string::npos) {
        sel.tag = item.substr(0, dot);
        sel.element = item.substr(dot + 1);
      } else {
        sel.element = item;
      }
      if ((sel.tag && !text::is_identifier(*sel.tag)) || !text::is_identifier(sel.element)) {
        fail(Errc::InvalidValue, "join: bad selector '" + item + "'");
      }
      out.push_back(std::move(sel));
    }
  }
  return out;
}

namespace {

bool compatible(const Tuple& a, const Tuple& b) {
  for (const auto& e : a.elements()) {
    const Value* other = b.find(e.name);
    if (other && !(*other == e.value)) return false;
  }
  return true;
}

}  // namespace

TupleSet natural_join(const TupleSet& input, const std::vector<JoinSelector>& selectors,
                      const std::optional<std::string>& as_tag) {
  std::vector<std::string> tags;
  for (const auto& s : selectors) {
    if (s.tag && std::find(tags.begin(), tags.end(), *s.tag) == tags.end()) tags.push_back(*s.tag);
  }
  if (tags.size() < 2) {
    fail(Errc::MissingSelector, "join: selectors must name at least two tags (TAG.ELEMENT)");
  }
  std::vector<std::vector<const Tuple*>> groups;
  for (const auto& tag : tags) groups.push_back(input.tagged(tag));

  auto tag_index = [&](const std::string& tag) {
    return static_cast<std::size_t>(std::find(tags.begin(), tags.end(), tag) - tags.begin());
  };
  for (const auto& s : selectors) {
    bool seen = false;
    bool any_tuples = false;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      if (s.tag && tags[g] != *s.tag) continue;
      any_tuples |= !groups[g].empty();
      for (const Tuple* t : groups[g]) seen |= t->has(s.element);
    }
    if (any_tuples && !seen) {
      fail(Errc::MissingSelector, "join: no " + (s.tag ? *s.tag + " tuple" : std::string("tuple")) +
                                      " has an element '" + s.element + "'");
    }
  }

  std::string out_tag = as_tag.value_or(text::join(tags, "_"));
  TupleSet out;
  std::vector<const Tuple*> chosen;
  // Depth-first over the groups, pruning as soon as two picks disagree.
  std::function<void(std::size_t)> extend = [&](std::size_t g) {
    if (g == groups.size()) {
      std::vector<Element> elements;
      for (const auto& s : selectors) {
        const Value* v = nullptr;
        if (s.tag) {
          v = chosen[tag_index(*s.tag)]->find(s.element);
        } else {
          for (const Tuple* t : chosen) {
            if ((v = t->find(s.element))) break;
          }
        }
        if (!v) return;
        auto same = std::find_if(elements.begin(), elements.end(),
                                 [&](const Element& e) { return e.name == s.element; });
        if (same == elements.end()) {
          elements.push_back({s.element, *v});
        } else if (!(same->value == *v)) {
          fail(Errc::InvalidValue, "join: two selectors produce element '" + s.element +
                                       "' with different values");
        }
      }
      out.insert(Tuple::make(out_tag, std::move(elements)));
      return;
    }
    for (const Tuple* t : groups[g]) {
      bool ok = true;
      for (const Tuple* c : chosen) ok = ok && compatible(*c, *t);
      if (!ok) continue;
      chosen.push_back(t);
      extend(g + 1);
      chosen.pop_back();
    }
  };
  extend(0);
  return out;
}

std::vector<std::pair<NodeId, NodeId>> relation_edges(const TupleSet& relation) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (const auto& t : relation) {
    std::vector<const NodeId*> refs;
    for (const auto& e : t.elements()) {
      if (e.value.kind() == ValueKind::NodeRef) refs.push_back(&e.value.as_node());
    }
    if (refs.size() != 2) {
      fail(Errc::NotARelation, "not a relation tuple (needs two node references): " +
                                   serialize(TupleSet{t}));
    }
    edges.emplace_back(*refs[0], *refs[1]);
  }
  return edges;
}

namespace {

std::map<NodeId, std::vector<NodeId>> adjacency(const std::vector<std::pair<NodeId, NodeId>>& edges) {
  std::map<NodeId, std::vector<NodeId>> out;
  for (const auto& [from, to] : edges) out[from].push_back(to);
  return out;
}

std::set<NodeId> bfs(const std::map<NodeId, std::vector<NodeId>>& adj, const NodeId& start) {
  std::set<NodeId> seen;
  std::deque<NodeId> queue{start};
  while (!queue.empty()) {
    NodeId n = queue.front();
    queue.pop_front();
    auto it = adj.find(n);
    if (it == adj.end()) continue;
    for (const auto& next : it->second) {
      if (seen.insert(next).second) queue.push_back(next);
    }
  }
  return seen;
}

}  // namespace

std::set<NodeId> reachable_from(const std::vector<std::pair<NodeId, NodeId>>& edges,
                                const NodeId& start) {
  return bfs(adjacency(edges), start);
}

std::set<NodeId> nodes_on_cycles(const std::vector<std::pair<NodeId, NodeId>>& edges) {
  auto adj = adjacency(edges);
  std::set<NodeId> out;
  for (const auto& [node, _] : adj) {
    if (bfs(adj, node).count(node)) out.insert(node);
  }
  return out;
}

lang::Program insert_arg_printing(const lang::Program& program, const std::set<NodeId>& methods) {
  lang::Program out = program;
  for (const auto& id : methods) {
    const lang::Node* method = out.find(id);
    if (!method || method->kind != lang::NodeKind::Method) {
      fail(Errc::NotAMethodNode, "insertArgPrinting: " + id.str() + " is not a method");
    }
    std::vector<lang::NodePtr> prints;
    prints.push_back(lang::parse_statement("print(" + text::quote(method->name) + ");"));
    for (const lang::Node* p : method->parameters()) {
      prints.push_back(
          lang::parse_statement("print(" + text::quote(p->name) + ", " + p->name + ");"));
    }
    out = lang::insert_statements(out, id, prints);
  }
  return out;
}

namespace detail {
namespace {

using engine::QueryCall;
using engine::QueryKind;

const TupleSet& input_or_empty(const QueryCall& call) {
  static const TupleSet empty;
  const TupleSet* in = call.input();
  return in ? *in : empty;
}

struct Condition {
  std::string key;
  std::optional<std::string> equals;
  std::optional<std::regex> matches;
};

TupleSet run_select(QueryCall& call) {
  auto args = Args::parse("select", call.args, {{"t", 1}}, SIZE_MAX);
  std::vector<Condition> conditions;
  for (const auto& word : args.positional()) {
    auto at = word.find_first_of("=~");
    if (at == std::string::npos || at == 0 || !text::is_identifier(word.substr(0, at))) {
      fail(Errc::InvalidValue, "select: expected KEY=VALUE or KEY~REGEX, got '" + word + "'");
    }
    Condition c{word.substr(0, at), {}, {}};
    if (word[at] == '=') {
      c.equals = word.substr(at + 1);
    } else {
      c.matches = compile_regex("select", word.substr(at + 1));
    }
    conditions.push_back(std::move(c));
  }
  auto tag = args.value("t");

  TupleSet out;
  for (const auto& t : input_or_empty(call)) {
    if (tag && t.tag() != *tag) continue;
    bool keep = true;
    for (const auto& c : conditions) {
      const Value* v = t.find(c.key);
      if (!v) {
        keep = false;
      } else if (c.equals) {
        keep = v->display() == *c.equals;
      } else {
        keep = std::regex_search(v->display(), *c.matches);
      }
      if (!keep) break;
    }
    if (keep) out.insert(t);
  }
  return out;
}

TupleSet run_join(QueryCall& call) {
  auto args = Args::parse("join", call.args, {{"as", 1}}, SIZE_MAX);
  auto selectors = parse_selectors(args.positional());
  if (selectors.empty()) fail(Errc::MissingArgument, "join: expects selectors TAG.ELEMENT,...");
  auto as = args.value("as");
  if (as && !text::is_identifier(*as)) fail(Errc::InvalidIdentifier, "join: bad tag '" + *as + "'");
  return natural_join(input_or_empty(call), selectors, as);
}

TupleSet run_reachable(QueryCall& call) {
  auto args = Args::parse("reachable", call.args, {{"self", 0}, {"from", 1}});
  args.exclusive("reachable", "self", "from");

  TupleSet relation;
  TupleSet passthrough;
  for (const auto& t : input_or_empty(call)) {
    if (t.size() == 1 && t.count_kind(ValueKind::NodeRef) == 1) {
      passthrough.insert(t);
    } else {
      relation.insert(t);
    }
  }
  auto edges = relation_edges(relation);

  std::set<NodeId> result;
  if (args.has("self")) {
    result = nodes_on_cycles(edges);
  } else {
    std::optional<NodeId> start;
    if (auto from = args.value("from")) {
      start = NodeId(*from);
    } else {
      // Walk outwards from the focus to the first node the relation mentions.
      std::set<NodeId> mentioned;
      for (const auto& [a, b] : edges) {
        mentioned.insert(a);
        mentioned.insert(b);
      }
      const auto& program = call.context.program();
      for (const lang::Node* n = focus_node(call.context); n && !start; n = program.parent_of(*n)) {
        if (mentioned.count(program.id_of(*n))) start = program.id_of(*n);
      }
      if (!start) {
        fail(Errc::MissingStart, "reachable: give -self or -from NODE, or focus a node in the relation");
      }
    }
    result = reachable_from(edges, *start);
  }

  TupleSet out = node_tuples(result);
  for (const auto& t : passthrough) {
    if (result.count(t.first_node()->value.as_node())) out.insert(t);
  }
  return out;
}

TupleSet run_insert_arg_printing(QueryCall& call) {
  Args::parse("insertArgPrinting", call.args, {});
  auto methods = referenced_nodes(input_or_empty(call));
  if (methods.empty()) return {};
  auto& workspace = call.context.workspace();
  workspace.commit(insert_arg_printing(workspace.program(), methods));
  return node_tuples(methods);
}

}  // namespace

void register_operators(engine::Registry& registry) {
  registry.add({"select", QueryKind::Operator, 0, 1, run_select,
                "tuples matching all conditions (-t TAG, KEY=VALUE, KEY~REGEX)"});
  registry.add({"join", QueryKind::Operator, 0, 1, run_join,
                "natural join of tag groups (TAG.ELEMENT,... -as TAG)"});
  registry.add({"reachable", QueryKind::Operator, 0, 1, run_reachable,
                "nodes reachable through a relation (-self, -from NODE)"});
  registry.add({"insertArgPrinting", QueryKind::Operator, 0, 1, run_insert_arg_printing,
                "prepend argument printing to the input methods (rewrites the corpus)"});
}

}  // namespace detail
}  // namespace codeq::builtins
