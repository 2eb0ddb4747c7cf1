// End-to-end acceptance checks. Prints one PASS/FAIL line per check with its
// runtime and limit, and exits non-zero when any check fails or overruns.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "codeq/builtins/builtins.hpp"
#include "codeq/cli/session.hpp"
#include "codeq/engine/executor.hpp"
#include "codeq/history/history.hpp"
#include "codeq/lang/printer.hpp"
#include "codeq/model/codemodel.hpp"
#include "codeq/prompt/prompt.hpp"
#include "codeq/support/error.hpp"
#include "codeq/support/text.hpp"
#include "codeq/tuple/text_format.hpp"
#include "oracles.hpp"
#include "temp_dir.hpp"

using namespace codeq;
namespace fs = std::filesystem;
using codeq::testing::TempDir;

namespace {

const fs::path kFixtures = fs::path(CODEQ_SOURCE_DIR) / "fixtures";

// Collects failed expectations for one check.
struct Verdict {
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

std::string show(const TupleSet& ts) {
  std::string s = serialize(ts);
  return s.empty() ? "{}" : "{ " + text::join(text::split_lines(s), ", ") + " }";
}

std::string show(const std::set<NodeId>& ids) {
  std::vector<std::string> names;
  for (const auto& id : ids) names.push_back(id.str());
  return "{" + text::join(names, ", ") + "}";
}

TupleSet node_set(std::initializer_list<const char*> ids) {
  TupleSet out;
  for (const char* id : ids) out.insert(node_tuple(NodeId(id)));
  return out;
}

std::set<NodeId> ids_of(const TupleSet& ts) {
  std::set<NodeId> out;
  for (const auto& t : ts) {
    if (const Element* e = t.first_node()) out.insert(e->value.as_node());
  }
  return out;
}

std::unique_ptr<cli::Session> fixture_session(const std::string& name, bool history = true) {
  cli::SessionOptions o;
  o.corpus = kFixtures / name / "corpus";
  if (history) o.repo = kFixtures / name;
  o.write_back = false;
  return std::make_unique<cli::Session>(o);
}

TupleSet sink_of(cli::Session& s, const std::string& prompt) {
  auto result = s.run(prompt);
  if (result.sinks.size() != 1) fail(Errc::InvalidValue, "expected exactly one sink");
  return result.sinks.front().output;
}

// ---------------------------------------------------------------------------
// Independent oracles for the history pipelines. They read the fixture
// folders directly and only borrow the parser.

// New-side lines not on a longest common subsequence. A pure removal marks the
// line now at the removal point.
std::set<int> changed_lines(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::size_t n = a.size(), m = b.size();
  std::vector<std::vector<int>> t(n + 1, std::vector<int>(m + 1, 0));
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = m; j-- > 0;) {
      t[i][j] = a[i] == b[j] ? t[i + 1][j + 1] + 1 : std::max(t[i + 1][j], t[i][j + 1]);
    }
  }
  std::set<int> out;
  std::size_t i = 0, j = 0;
  while (i < n || j < m) {
    if (i < n && j < m && a[i] == b[j]) {
      ++i;
      ++j;
    } else if (j < m && (i == n || t[i][j + 1] >= t[i + 1][j])) {
      out.insert(static_cast<int>(++j));
    } else {
      ++i;
      if (m > 0) out.insert(static_cast<int>(std::clamp<std::size_t>(j + 1, 1, m)));
    }
  }
  return out;
}

// Methods whose span overlaps a changed line in any of the newest `count`
// commits, restricted to methods that still exist in `current`.
std::set<NodeId> changed_methods_oracle(const fs::path& fixture, int count,
                                        const lang::Program& current) {
  fs::path history = fixture / "history";
  int commits = static_cast<int>(text::split_lines(text::read_file(history / "log.txt")).size());
  std::set<NodeId> out;
  for (int k = std::max(1, commits - count + 1); k <= commits; ++k) {
    fs::path now = history / std::to_string(k);
    fs::path before = history / std::to_string(k - 1);
    auto snapshot = lang::parse_program(lang::read_corpus(now));
    for (const auto& entry : fs::directory_iterator(now)) {
      if (entry.path().extension() != ".mini") continue;
      std::string file = entry.path().filename().string();
      auto new_lines = text::split_lines(text::read_file(entry.path()));
      std::vector<std::string> old_lines;
      if (k > 1 && fs::exists(before / file)) old_lines = text::split_lines(text::read_file(before / file));
      auto lines = changed_lines(old_lines, new_lines);
      for (const auto& e : snapshot.entries()) {
        if (e.node->kind != lang::NodeKind::Method || e.node->span.file != file) continue;
        for (int l : lines) {
          if (l >= e.node->span.start_line && l <= e.node->span.end_line && current.find(e.id)) {
            out.insert(e.id);
          }
        }
      }
    }
  }
  return out;
}

// Call edges by plain name lookup: a call `f(...)` or `x.y.f(...)` targets
// the method named f in the caller's class when there is one, else the only
// method named f anywhere.
std::vector<std::pair<NodeId, NodeId>> call_edges_oracle(const lang::Program& program) {
  std::multimap<std::string, NodeId> by_name;
  for (const auto& e : program.entries()) {
    if (e.node->kind == lang::NodeKind::Method) by_name.emplace(e.node->name, e.id);
  }
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (const auto& e : program.entries()) {
    if (e.node->kind != lang::NodeKind::Method) continue;
    std::string cls = e.id.str().substr(0, e.id.str().rfind('.'));
    for (const auto& inner : program.subtree(*e.node)) {
      if (inner.node->kind != lang::NodeKind::CallExpression) continue;
      std::string callee = lang::dotted_name(*inner.node->children.front());
      std::string last = callee.substr(callee.rfind('.') + 1);
      auto [lo, hi] = by_name.equal_range(last);
      std::optional<NodeId> target;
      for (auto it = lo; it != hi; ++it) {
        if (it->second.str() == cls + "." + last) target = it->second;
      }
      if (!target && std::distance(lo, hi) == 1) target = lo->second;
      if (target) edges.emplace_back(e.id, *target);
    }
  }
  return edges;
}

std::set<NodeId> callees_dfs(const std::vector<std::pair<NodeId, NodeId>>& edges, const NodeId& root) {
  std::set<NodeId> seen{root};
  std::vector<NodeId> stack{root};
  while (!stack.empty()) {
    NodeId at = stack.back();
    stack.pop_back();
    for (const auto& [from, to] : edges) {
      if (from == at && seen.insert(to).second) stack.push_back(to);
    }
  }
  return seen;
}

// ---------------------------------------------------------------------------

void tuple_listings(Verdict& v) {
  auto ref = [](const char* id) { return Value::node(NodeId(id)); };
  auto calls = [&](const char* a, const char* b) {
    return Tuple::make("calls", {{"caller", ref(a)}, {"callee", ref(b)}});
  };
  Tuple get_age = Tuple::make({{"node", ref("getAge")}});
  Tuple get_address = Tuple::make({{"node", ref("getAddress")}});
  v.expect(get_age.tag() == "node", "untagged (node: getAge) must take the tag 'node'");
  Tuple commit = Tuple::make({{"commit", Value::text("bcdef01")}, {"author", Value::text("John")}});
  v.expect(commit.tag() == "commit", "untagged commit tuple must take the tag 'commit'");

  struct Listing {
    const char* printed;
    TupleSet built;
    std::vector<std::string> canonical;
  };
  TupleSet methods{get_age, get_address};
  TupleSet relation{calls("rest", "watchTV"), calls("rest", "sleep"), calls("sleep", "dream")};
  std::vector<Listing> listings = {
      {"{ (node: getAge), (node: getAddress) }", methods,
       {"node: (node: getAddress)", "node: (node: getAge)"}},
      {"{ node: (node: getAge), node: (node: getAddress) }",
       {Tuple::make("node", {{"node", ref("getAge")}}),
        Tuple::make("node", {{"node", ref("getAddress")}})},
       {"node: (node: getAddress)", "node: (node: getAge)"}},
      {"{ calls: (caller: rest, callee: watchTV),\n  calls: (caller: rest, callee: sleep),\n"
       "  calls: (caller: sleep, callee: dream) }",
       relation,
       {"calls: (caller: rest, callee: sleep)", "calls: (caller: rest, callee: watchTV)",
        "calls: (caller: sleep, callee: dream)"}},
      {"{ (node: getAge), (node: getAddress),\n  calls: (caller: rest, callee: watchTV),\n"
       "  calls: (caller: rest, callee: sleep),\n  calls: (caller: sleep, callee: dream) }",
       set_union(methods, relation),
       {"calls: (caller: rest, callee: sleep)", "calls: (caller: rest, callee: watchTV)",
        "calls: (caller: sleep, callee: dream)", "node: (node: getAddress)",
        "node: (node: getAge)"}},
      {"{ (commit: \"bcdef01\", author: \"John\" ),\n"
       "  changes: (commit: \"bcdef01\", node: sleep),\n"
       "  calls: (caller: rest, callee: watchTV),\n  calls: (caller: rest, callee: sleep),\n"
       "  calls: (caller: sleep, callee: dream) }",
       set_union(TupleSet{commit, Tuple::make("changes", {{"commit", Value::text("bcdef01")},
                                                          {"node", ref("sleep")}})},
                 relation),
       {"calls: (caller: rest, callee: sleep)", "calls: (caller: rest, callee: watchTV)",
        "calls: (caller: sleep, callee: dream)", "changes: (commit: \"bcdef01\", node: sleep)",
        "commit: (commit: \"bcdef01\", author: \"John\")"}},
  };
  for (std::size_t i = 0; i < listings.size(); ++i) {
    const auto& l = listings[i];
    std::string label = "listing " + std::to_string(i + 1);
    TupleSet parsed = parse_tuple_set(l.printed);
    v.expect(parsed == l.built, label + ": parsed " + show(parsed) + " != built " + show(l.built));
    auto lines = text::split_lines(serialize(l.built));
    auto expected = l.canonical;
    std::sort(lines.begin(), lines.end());
    std::sort(expected.begin(), expected.end());
    v.expect(lines == expected, label + ": serialized as " + show(l.built));
    v.expect(parse_tuple_set(serialize(l.built)) == l.built, label + ": does not round trip");
  }
  v.expect(TupleSet{get_age, get_age}.size() == 1, "duplicate tuples must collapse");
}

void regression_pipeline(Verdict& v) {
  auto s = fixture_session("regression");
  s->focus("a.P.rest");
  TupleSet got = sink_of(*s, "callgraph -nodes | changes -c 5 -nodes");

  const auto& program = s->program();
  auto reach = callees_dfs(call_edges_oracle(program), NodeId("a.P.rest"));
  auto changed = changed_methods_oracle(kFixtures / "regression", 5, program);
  std::set<NodeId> oracle;
  for (const auto& id : reach) {
    if (changed.count(id)) oracle.insert(id);
  }
  v.expect(got == node_set({"a.P.sleep"}), "pipeline returned " + show(got));
  v.expect(ids_of(got) == oracle, "oracle says " + show(oracle) + ", pipeline " + show(got));
  v.expect(reach.size() == 4, "oracle call closure of rest is " + show(reach));
}

void recursion_pipeline(Verdict& v) {
  auto s = fixture_session("recursion");
  TupleSet got = sink_of(*s, "callgraph -global | reachable -self | changes -c 5 -nodes");
  v.expect(got == node_set({"calc.M.fact"}), "pipeline returned " + show(got));

  // The fixture must have the intended shape for the result to mean anything.
  auto edges = call_edges_oracle(s->program());
  std::set<NodeId> recursive;
  for (const auto& [a, b] : edges) {
    if (a == b) recursive.insert(a);
  }
  auto changed = changed_methods_oracle(kFixtures / "recursion", 5, s->program());
  v.expect(recursive == std::set<NodeId>{NodeId("calc.M.fact"), NodeId("calc.M.fib")},
           "self-recursive methods are " + show(recursive));
  v.expect(changed.count(NodeId("calc.M.fact")) && !changed.count(NodeId("calc.M.fib")) &&
               changed.count(NodeId("calc.M.helper")),
           "recently changed methods are " + show(changed));

  std::mt19937 rng(42);
  int mismatches = 0;
  for (int i = 0; i < 1000; ++i) {
    auto g = codeq::testing::random_graph(rng, 15);
    auto rel = codeq::testing::relation_of(g);
    if (builtins::nodes_on_cycles(builtins::relation_edges(rel)) != codeq::testing::closure_self(g)) {
      ++mismatches;
    }
  }
  v.expect(mismatches == 0, std::to_string(mismatches) + " of 1000 graphs disagree with the closure");
}

// Instability per package from the class nodes the query returned, using the
// library's package dependencies.
std::map<std::string, std::string> instability_native(cli::Session& s) {
  auto deps = model::package_deps(s.program());
  std::set<std::string> packages;
  std::map<std::string, int> eff, aff;
  for (const auto& id : ids_of(sink_of(s, "ast -type Class -global"))) {
    const std::string& p = deps.class_package.at(id);
    packages.insert(p);
    const auto& imports = deps.imports.at(id);
    if (!imports.empty()) eff[p] += 1;
    for (const auto& dep : imports) aff[dep] += 1;
  }
  std::map<std::string, std::string> out;
  for (const auto& p : packages) {
    int e = eff[p], a = aff[p];
    out[p] = render_real(e + a > 0 ? static_cast<double>(e) / (e + a) : 1.0);
  }
  return out;
}

void instability_metric(Verdict& v) {
  auto s = fixture_session("packages", false);
  auto got = instability_native(*s);
  std::map<std::string, std::string> expected{{"a", "1.0"}, {"b", "0.0"}};
  v.expect(got == expected, "two-package fixture gives a=" + got["a"] + " b=" + got["b"]);

  std::mt19937 rng(7);
  for (int round = 0; round < 5; ++round) {
    int packages = 2 + static_cast<int>(rng() % 3);
    std::vector<int> classes(packages);
    for (auto& c : classes) c = 1 + static_cast<int>(rng() % 3);
    // imports[p][c] = set of (package, class) pairs from other packages
    std::vector<std::vector<std::set<std::pair<int, int>>>> imports(packages);
    for (int p = 0; p < packages; ++p) {
      imports[p].resize(classes[p]);
      for (int c = 0; c < classes[p]; ++c) {
        for (int q = 0; q < packages; ++q) {
          if (q == p) continue;
          for (int d = 0; d < classes[q]; ++d) {
            if (rng() % 3 == 0) imports[p][c].insert({q, d});
          }
        }
      }
    }
    TempDir dir;
    for (int p = 0; p < packages; ++p) {
      std::string src = "module p" + std::to_string(p) + " {\n";
      for (int c = 0; c < classes[p]; ++c) {
        src += "    class C" + std::to_string(c) + " {\n";
        for (auto [q, d] : imports[p][c]) {
          src += "        import p" + std::to_string(q) + ".C" + std::to_string(d) + ";\n";
        }
        src += "        run() {\n        }\n    }\n";
      }
      text::write_file(dir / ("p" + std::to_string(p) + ".mini"), src + "}\n");
    }

    // By hand: Ce counts classes with at least one foreign import, Ca counts
    // (class, imported package) pairs pointing at the package.
    std::map<std::string, std::string> hand;
    for (int p = 0; p < packages; ++p) {
      int ce = 0, ca = 0;
      for (int c = 0; c < classes[p]; ++c) ce += imports[p][c].empty() ? 0 : 1;
      for (int q = 0; q < packages; ++q) {
        for (int c = 0; c < classes[q]; ++c) {
          bool hits = false;
          for (auto [target, d] : imports[q][c]) hits |= target == p;
          ca += hits ? 1 : 0;
        }
      }
      std::ostringstream decimal;
      if (ce + ca == 0) {
        decimal << "1.0";
      } else {
        decimal << render_real(static_cast<double>(ce) / (ce + ca));
      }
      hand["p" + std::to_string(p)] = decimal.str();
    }

    cli::SessionOptions o;
    o.corpus = dir.path();
    o.write_back = false;
    cli::Session session(o);
    auto native = instability_native(session);
    v.expect(native == hand, "random fixture " + std::to_string(round) + " disagrees with hand count");
  }
}

void argument_printing(Verdict& v) {
  const std::string source =
      "module m {\n"
      "    class C {\n"
      "        zero() {\n"
      "            return 0;\n"
      "        }\n"
      "        one(a) {\n"
      "            print(a);\n"
      "        }\n"
      "        three(a, b, c) {\n"
      "            var s = a + b + c;\n"
      "            return s;\n"
      "        }\n"
      "        other(x, y) {\n"
      "            if (x < y) {\n"
      "                return x;\n"
      "            }\n"
      "            return y;\n"
      "        }\n"
      "    }\n"
      "}\n";
  TempDir dir;
  text::write_file(dir / "M.mini", source);
  cli::SessionOptions o;
  o.corpus = dir.path();
  cli::Session s(o);
  auto before = lang::parse_program(lang::read_corpus(dir.path()));

  TupleSet out = sink_of(s, "ast -type Method -global -name \"^(zero|three)$\" | insertArgPrinting");
  v.expect(out == node_set({"m.C.zero", "m.C.three"}), "output was " + show(out));

  lang::Program after;
  try {
    after = lang::parse_program(lang::read_corpus(dir.path()));
  } catch (const Error& e) {
    v.expect(false, std::string("rewritten corpus does not parse: ") + e.what());
    return;
  }
  for (const auto& e : before.entries()) {
    if (e.node->kind != lang::NodeKind::Method) continue;
    const lang::Node& old_method = *e.node;
    const lang::Node& new_method = after.resolve(e.id);
    bool chosen = e.id.str() == "m.C.zero" || e.id.str() == "m.C.three";
    if (!chosen) {
      v.expect(lang::print_node(new_method) == lang::print_node(old_method),
               e.id.str() + " changed although it was not selected");
      continue;
    }
    std::size_t k = old_method.parameters().size();
    const auto& body = new_method.body()->children;
    v.expect(body.size() == old_method.body()->children.size() + k + 1,
             e.id.str() + " gained the wrong number of statements");
    for (std::size_t i = 0; i <= k && i < body.size(); ++i) {
      v.expect(body[i]->kind == lang::NodeKind::PrintStatement,
               e.id.str() + " statement " + std::to_string(i) + " is not a print");
    }
    for (std::size_t i = 0; i < old_method.body()->children.size(); ++i) {
      v.expect(lang::print_node(*body[k + 1 + i]) == lang::print_node(*old_method.body()->children[i]),
               e.id.str() + " lost an original statement");
    }
  }
}

// Stubs that emit a fixed set joined with their input and record what they saw.
void network_topology(Verdict& v) {
  std::map<std::string, std::optional<TupleSet>> seen;
  engine::Registry registry;
  auto stub = [&](const std::string& name, TupleSet emits, bool visual = false) {
    engine::QueryDef def;
    def.name = name;
    def.kind = visual ? engine::QueryKind::Visualization : engine::QueryKind::Operator;
    def.run = [&seen, name, emits, visual](engine::QueryCall& call) {
      seen[name] = call.input() ? std::optional<TupleSet>(*call.input()) : std::nullopt;
      if (visual) {
        call.context.render({name, call.input() ? *call.input() : TupleSet{}, {}, false});
        return TupleSet{};
      }
      return call.input() ? set_union(*call.input(), emits) : emits;
    };
    registry.add(def);
  };
  stub("foo", node_set({"f"}));
  stub("bar", node_set({"b"}));
  stub("baz", node_set({"z"}));
  stub("foobar", node_set({"fb"}));
  stub("queryX", node_set({"x"}));
  stub("vis1", {}, true);
  stub("vis2", {}, true);

  const std::string text = "{ {foo ; bar} | baz ; foobar } | queryX | {vis1 ; vis2}";
  auto pipeline = prompt::parse_prompt(text);
  v.expect(prompt::parse_prompt(prompt::serialize_prompt(pipeline)) == pipeline,
           "does not survive serialization: " + prompt::serialize_prompt(pipeline));
  engine::Workspace workspace;
  engine::ExecutionContext context(workspace);
  auto result = engine::execute(prompt::to_network(pipeline), registry, context);

  TupleSet baz_out = node_set({"f", "b", "z"});
  TupleSet foobar_out = node_set({"fb"});
  v.expect(seen.size() == 7, "not every stub ran");
  v.expect(seen["baz"] && *seen["baz"] == node_set({"f", "b"}), "baz saw the wrong input");
  v.expect(seen["queryX"] && *seen["queryX"] == set_union(baz_out, foobar_out),
           "queryX saw " + (seen["queryX"] ? show(*seen["queryX"]) : std::string("nothing")));
  v.expect(seen["vis1"] && seen["vis2"] && *seen["vis1"] == *seen["vis2"],
           "vis1 and vis2 saw different inputs");
  v.expect(result.renders.size() == 2, "expected two renders");

  // Parse and serialize round trips over generated prompts.
  std::mt19937 rng(99);
  const std::vector<std::string> names{"ast", "callgraph", "changes", "join", "reachable",
                                       "heatmap", "minus", "q2", "_x"};
  const std::vector<std::string> words{"-c", "5", "-nodes", "-as", "data", "a.P.rest", "",
                                       "two words", "\"", "\\", "|", ";", "{", "}", "minus",
                                       "^(a|b)$", "main.mini:4:9", "x=1", "k~re"};
  std::function<prompt::Pipeline(int)> generate = [&](int depth) {
    prompt::Pipeline p;
    for (std::size_t n = 1 + rng() % 3; n > 0; --n) {
      if (depth > 0 && rng() % 4 == 0) {
        std::vector<prompt::Pipeline> branches;
        for (std::size_t b = 2 + rng() % 2; b > 0; --b) branches.push_back(generate(depth - 1));
        auto type = rng() % 2 ? prompt::Stage::Type::Join : prompt::Stage::Type::Minus;
        p.stages.push_back(prompt::Stage::group(type, std::move(branches)));
      } else {
        std::vector<std::string> args;
        for (std::size_t a = rng() % 4; a > 0; --a) args.push_back(words[rng() % words.size()]);
        p.stages.push_back(prompt::Stage::invocation(names[rng() % names.size()], std::move(args)));
      }
    }
    return p;
  };
  int failures = 0;
  for (int i = 0; i < 1000; ++i) {
    auto p = generate(3);
    try {
      auto text_form = prompt::serialize_prompt(p);
      if (!(prompt::parse_prompt(text_form) == p)) ++failures;
    } catch (const Error&) {
      ++failures;
    }
  }
  v.expect(failures == 0, std::to_string(failures) + " of 1000 generated prompts did not round trip");
}

void renderer_choice(Verdict& v) {
  struct Case {
    const char* tuples;
    const char* renderer;
  };
  const std::vector<Case> cases = {
      {"", "table"},
      {"(node: a.P.rest)", "highlight"},
      {"(node: a.P.rest)\n(node: a.P.sleep)", "highlight"},
      {"hit: (at: a.P.rest)", "highlight"},
      {"calls: (caller: a.P.rest, callee: a.P.sleep)", "arrows"},
      {"calls: (caller: a, callee: b)\ncalls: (caller: b, callee: c)", "arrows"},
      {"edge: (from: a, to: b)\ncalls: (caller: b, callee: c)", "arrows"},
      {"calls: (caller: a, callee: b, weight: 3)", "arrows"},
      {"message: (message: \"hi\", ast: a.P.rest)", "messages"},
      {"message: (message: \"hi\", ast: a)\n(node: b)", "messages"},
      {"message: (message: \"hi\", ast: a)\ncalls: (caller: a, callee: b)", "messages"},
      {"message: (text: \"no ast\")", "messages"},
      {"(node: a)\ncalls: (caller: a, callee: b)", "table"},
      {"commit: (id: \"bcdef01\", author: \"John\")", "table"},
      {"change: (id: \"bcdef01\", ast: a.P.sleep)", "table"},
      {"(node: a, label: \"x\")", "table"},
      {"(n: 1)\n(n: 2)", "table"},
      {"triple: (a: x, b: y, c: z)", "table"},
      {"msg: (message: \"not the tag\", ast: a)", "table"},
      {"(name: \"x\")\n(node: a)", "table"},
  };
  v.expect(cases.size() == 20, "the table must have 20 rows");
  for (const auto& c : cases) {
    TupleSet ts = parse_tuple_set(c.tuples);
    std::string first = engine::auto_select(ts).renderer;
    // Same set built in a different insertion order, and a second call.
    TupleSet reversed;
    std::vector<Tuple> items(ts.begin(), ts.end());
    for (auto it = items.rbegin(); it != items.rend(); ++it) reversed.insert(*it);
    std::string again = engine::auto_select(reversed).renderer;
    v.expect(first == c.renderer, std::string("'") + c.tuples + "' chose " + first +
                                      ", expected " + c.renderer);
    v.expect(first == again, std::string("'") + c.tuples + "' is not deterministic");
  }
}

void join_oracle(Verdict& v) {
  std::mt19937 rng(2016);
  auto random_group = [&](const char* tag, std::vector<const char*> names) {
    TupleSet out;
    std::size_t n = rng() % 21;
    for (std::size_t i = 0; i < n * 3 && out.size() < n; ++i) {
      std::vector<Element> elements{{"id", Value::integer(static_cast<std::int64_t>(rng() % 4))}};
      for (const char* name : names) {
        if (rng() % 4) elements.push_back({name, Value::integer(static_cast<std::int64_t>(rng() % 3))});
      }
      out.insert(Tuple::make(std::string(tag), elements));
    }
    return out;
  };
  const std::vector<std::string> selector_texts{"change.id,commit.message,ast", "change.ast,commit.id",
                                                "commit.message,change.w,id"};
  int mismatches = 0, compared = 0;
  for (int i = 0; i < 500; ++i) {
    TupleSet a = random_group("change", {"ast", "w"});
    TupleSet b = random_group("commit", {"message", "w"});
    TupleSet input = set_union(a, b);
    auto selectors = builtins::parse_selectors({selector_texts[i % selector_texts.size()]});
    std::optional<TupleSet> got;
    try {
      got = builtins::natural_join(input, selectors, std::string("data"));
    } catch (const Error& e) {
      // Only allowed when some selected element is absent from its group.
      bool absent = false;
      for (const auto& s : selectors) {
        bool present = false;
        for (const auto& t : input) {
          if ((!s.tag || t.tag() == *s.tag) && t.find(s.element)) present = true;
        }
        absent |= !present;
      }
      if (e.code() != Errc::MissingSelector || !absent) ++mismatches;
      continue;
    }
    ++compared;
    if (*got != codeq::testing::brute_force_join(input, selectors, std::string("data"))) ++mismatches;
  }
  v.expect(mismatches == 0, std::to_string(mismatches) + " of 500 joins disagree with nested loops");
  v.expect(compared > 250, "too few comparable joins (" + std::to_string(compared) + ")");

  auto selectors = builtins::parse_selectors({"change.id,commit.message,ast"});
  v.expect(selectors.size() == 3, "selector string did not parse into three selectors");
  auto s = fixture_session("regression");
  TupleSet data = sink_of(
      *s, "ast -type Statement -topLevel | changes -intermediate | join change.id,commit.message,ast -as data");
  v.expect(!data.empty(), "the join over recent changes produced nothing");
  for (const auto& t : data) {
    v.expect(t.tag() == "data" && t.find("message") && t.find("ast"),
             "join produced " + serialize(t));
  }
}

void backend_equivalence(Verdict& v) {
  for (const char* name : {"regression", "recursion", "packages"}) {
    std::string label = name;
    TempDir repo;
    history::materialize_as_git(kFixtures / name, repo.path());
    auto git = history::open_history(repo.path());
    auto plain = history::open_history(kFixtures / name);
    v.expect(git->backend() == "git" && plain->backend() != "git", label + ": wrong backends");
    auto gc = git->commits();
    auto fc = plain->commits();
    if (gc.size() != fc.size()) {
      v.expect(false, label + ": commit counts differ");
      continue;
    }
    for (std::size_t i = 0; i < gc.size(); ++i) {
      std::string at = label + " commit " + std::to_string(i);
      v.expect(gc[i].message == fc[i].message && gc[i].author == fc[i].author &&
                   gc[i].parent.has_value() == fc[i].parent.has_value(),
               at + ": metadata differs");
      auto gr = history::changes_in(*git, gc[i]);
      auto fr = history::changes_in(*plain, fc[i]);
      bool same = gr.size() == fr.size();
      for (std::size_t k = 0; same && k < gr.size(); ++k) {
        same = gr[k].file == fr[k].file && gr[k].ranges == fr[k].ranges &&
               gr[k].commit_id == gc[i].id && fr[k].commit_id == fc[i].id;
      }
      v.expect(same, at + ": change records differ");
    }
  }
}

void heatmap_buckets(Verdict& v) {
  auto s = fixture_session("regression", false);
  auto csv = (kFixtures / "regression" / "profile.csv").string();
  auto result = s->run("importCSV \"" + csv + "\" -node method | heatmap");
  if (result.renders.size() != 1) {
    v.expect(false, "expected one heatmap render");
    return;
  }
  std::map<std::string, int> buckets;
  for (const auto& e : builtins::heat_entries(result.renders[0].payload)) {
    buckets[e.node.str()] = e.bucket;
  }
  std::map<std::string, int> expected{{"a.P.rest", 0}, {"a.P.sleep", 4}, {"a.P.dream", 9}};
  v.expect(buckets == expected, "profile buckets differ");

  std::mt19937 rng(1);
  std::uniform_real_distribution<double> value(-1000.0, 1000.0);
  int violations = 0;
  for (int round = 0; round < 1000; ++round) {
    TupleSet input;
    std::size_t n = 1 + rng() % 12;
    for (std::size_t i = 0; i < n; ++i) {
      double x = rng() % 5 == 0 ? std::floor(value(rng)) : value(rng);
      input.insert(Tuple::make("p", {{"node", Value::node(NodeId("h.C.m" + std::to_string(i)))},
                                     {"v", Value::real(x)}}));
    }
    auto entries = builtins::heat_entries(input);
    double lo = entries.front().value, hi = entries.front().value;
    for (const auto& e : entries) {
      lo = std::min(lo, e.value);
      hi = std::max(hi, e.value);
    }
    for (const auto& e : entries) {
      if (e.bucket < 0 || e.bucket > 9) ++violations;
      if (hi > lo && e.value == lo && e.bucket != 0) ++violations;
      if (hi > lo && e.value == hi && e.bucket != 9) ++violations;
    }
    for (const auto& a : entries) {
      for (const auto& b : entries) {
        if (a.value < b.value && a.bucket > b.bucket) ++violations;
      }
    }
  }
  v.expect(violations == 0, std::to_string(violations) + " monotonicity violations");
}

struct Check {
  const char* title;
  double limit_seconds;
  std::function<void(Verdict&)> run;
};

}  // namespace

int main() {
  const std::vector<Check> checks = {
      {"tuple listings and tag defaulting", 1, tuple_listings},
      {"recently changed callees of rest", 2, regression_pipeline},
      {"recursive and recently changed methods", 30, recursion_pipeline},
      {"package instability, native twin", 5, instability_metric},
      {"argument printing mutation", 2, argument_printing},
      {"nested group topology and prompt round trip", 10, network_topology},
      {"automatic renderer selection", 1, renderer_choice},
      {"join against nested loops and the data selector", 10, join_oracle},
      {"git and fixture history backends agree", 20, backend_equivalence},
      {"heatmap buckets and monotonicity", 2, heatmap_buckets},
  };
  int failed = 0;
  for (const auto& check : checks) {
    Verdict verdict;
    auto start = std::chrono::steady_clock::now();
    try {
      check.run(verdict);
    } catch (const std::exception& e) {
      verdict.failures.push_back(std::string("threw: ") + e.what());
    }
    double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > check.limit_seconds) {
      verdict.failures.push_back("took longer than " + render_real(check.limit_seconds) + " s");
    }
    bool pass = verdict.failures.empty();
    failed += pass ? 0 : 1;
    std::printf("%s  %-50s %8.3f s  (limit %g s)\n", pass ? "PASS" : "FAIL", check.title, seconds,
                check.limit_seconds);
    for (const auto& f : verdict.failures) std::printf("        %s\n", f.c_str());
  }
  std::printf("%zu passed, %d failed\n", checks.size() - failed, failed);
  return failed == 0 ? 0 : 1;
}
