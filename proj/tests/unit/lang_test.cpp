#include <filesystem>
#include <functional>
#include <random>

#include "doctest.h"

#include "codeq/lang/parser.hpp"
#include "codeq/lang/printer.hpp"
#include "codeq/lang/program.hpp"
#include "codeq/support/error.hpp"
#include "codeq/support/text.hpp"

using namespace codeq;
using namespace codeq::lang;
namespace fs = std::filesystem;

namespace {

const char* kSleepy =
    "module a { class P { rest() { watchTV(); sleep(); } sleep() { dream(); } "
    "watchTV(){} dream(){} } }";

Program sleepy() { return parse_program({{"Main.mini", kSleepy}}); }

std::vector<std::vector<SourceText>> fixture_corpora() {
  std::vector<std::vector<SourceText>> out;
  fs::path root = fs::path(CODEQ_SOURCE_DIR) / "fixtures";
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (!entry.is_directory()) continue;
    auto sources = read_corpus(entry.path());
    bool direct = false;
    for (const auto& s : sources) direct |= s.path.find('/') == std::string::npos;
    if (direct) out.push_back(sources);
  }
  return out;
}

void check_span_invariants(const Program& p) {
  for (const auto& e : p.entries()) {
    const Node& n = *e.node;
    const Span* previous = nullptr;
    for (const auto& c : n.children) {
      const Span& s = c->span;
      bool starts_after = s.start_line > n.span.start_line ||
                          (s.start_line == n.span.start_line && s.start_col >= n.span.start_col);
      bool ends_before = s.end_line < n.span.end_line ||
                         (s.end_line == n.span.end_line && s.end_col <= n.span.end_col);
      CHECK(starts_after);
      CHECK(ends_before);
      if (previous) {
        bool ordered = s.start_line > previous->end_line ||
                       (s.start_line == previous->end_line && s.start_col > previous->end_col);
        CHECK(ordered);
      }
      previous = &s;
    }
  }
}

std::string span_text(const std::string& source, const Span& span) {
  auto lines = text::split_lines(source);
  std::string out;
  for (int l = span.start_line; l <= span.end_line; ++l) {
    const std::string& line = lines[static_cast<std::size_t>(l - 1)];
    int from = l == span.start_line ? span.start_col - 1 : 0;
    int to = l == span.end_line ? span.end_col : static_cast<int>(line.size());
    out += line.substr(static_cast<std::size_t>(from), static_cast<std::size_t>(to - from));
    if (l != span.end_line) out += '\n';
  }
  return out;
}

}  // namespace

TEST_CASE("parse the household example") {
  auto p = sleepy();
  CHECK(p.roots().size() == 1);
  auto methods = nodes_of_kind(p, KindFilter::exactly(NodeKind::Method));
  REQUIRE(methods.size() == 4);
  CHECK(methods[0]->name == "rest");
  CHECK(methods[1]->name == "sleep");
  CHECK(methods[2]->name == "watchTV");
  CHECK(methods[3]->name == "dream");
  CHECK(nodes_of_kind(p, *KindFilter::parse("Module")).size() == 1);
}

TEST_CASE("empty source list gives an empty program") {
  auto p = parse_program({});
  CHECK(p.roots().empty());
  CHECK(p.entries().empty());
  CHECK(pretty_print(p).empty());
}

TEST_CASE("parse errors carry file, line and column") {
  try {
    parse_program({{"bad.mini", "class {"}});
    FAIL("expected a parse error");
  } catch (const PositionedError& e) {
    CHECK(e.code() == Errc::ParseError);
    CHECK(e.file() == "bad.mini");
    CHECK(e.line() == 1);
    CHECK(e.column() == 7);
  }
  CHECK_THROWS_AS(parse_program({{"x.mini", "module m { class C { f() { var = 1; } } }"}}),
                  PositionedError);
  CHECK_THROWS_AS(parse_program({{"x.mini", "class C { f() { print(\"open); } }"}}),
                  PositionedError);
}

TEST_CASE("duplicate methods are rejected, reopened modules are not") {
  CHECK_THROWS_AS(parse_program({{"d.mini", "class C { f() {} f() {} }"}}), PositionedError);
  auto p = parse_program({{"one.mini", "module a { class A { } }"},
                          {"two.mini", "module a { class B { } }"}});
  CHECK(p.find(NodeId("a")) != nullptr);
  CHECK(p.find(NodeId("a#2")) != nullptr);
  CHECK(p.find(NodeId("a.A"))->kind == NodeKind::Class);
  CHECK(p.find(NodeId("a.B"))->kind == NodeKind::Class);
}

TEST_CASE("node ids") {
  auto p = sleepy();
  CHECK(p.resolve(NodeId("a.P.rest")).kind == NodeKind::Method);
  CHECK(p.resolve(NodeId("a")).kind == NodeKind::Module);
  CHECK(p.resolve(NodeId("@Main.mini")).kind == NodeKind::SourceFile);
  CHECK(p.resolve(NodeId("a.P.rest/body[1]")).kind == NodeKind::ExpressionStatement);
  CHECK(p.resolve(NodeId("a.P.rest/body[1]/expr/callee")).name == "sleep");
  try {
    p.resolve(NodeId("zz.Nope"));
    FAIL("expected UnknownNodeId");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::UnknownNodeId);
  }
  // Every minted id resolves back to its node, and reparsing is stable.
  auto again = sleepy();
  REQUIRE(again.entries().size() == p.entries().size());
  for (std::size_t i = 0; i < p.entries().size(); ++i) {
    const auto& e = p.entries()[i];
    CHECK(p.find(e.id) == e.node);
    CHECK(again.entries()[i].id == e.id);
  }
}

TEST_CASE("nested statement ids use role steps") {
  auto p = parse_program({{"n.mini",
                           "module pkg { class A { m(x) { var y = 1; print(y);\n"
                           "if (x) { y = 2; } else { return y; } } } }"}});
  CHECK(p.resolve(NodeId("pkg.A.m/param[0]")).name == "x");
  CHECK(p.resolve(NodeId("pkg.A.m/body[2]")).kind == NodeKind::IfStatement);
  CHECK(p.resolve(NodeId("pkg.A.m/body[2]/then[0]")).kind == NodeKind::ExpressionStatement);
  CHECK(p.resolve(NodeId("pkg.A.m/body[2]/else[0]")).kind == NodeKind::ReturnStatement);
  CHECK(p.resolve(NodeId("pkg.A.m/body[2]/cond")).kind == NodeKind::ReferenceExpression);
  CHECK(p.resolve(NodeId("pkg.A.m/body[0]/init")).text == "1");
}

TEST_CASE("statements in scope") {
  auto p = sleepy();
  const Node& rest = p.resolve(NodeId("a.P.rest"));
  auto statements = nodes_of_kind(p, *KindFilter::parse("Statement"), &rest);
  std::vector<const Node*> top_level;
  for (const Node* s : statements) {
    const Node* block = p.parent_of(*s);
    if (p.parent_of(*block)->kind == NodeKind::Method) top_level.push_back(s);
  }
  CHECK(top_level.size() == 2);
  CHECK(nodes_of_kind(p, *KindFilter::parse("Expression"), &rest).size() == 4);
  CHECK_FALSE(KindFilter::parse("Widget").has_value());
}

TEST_CASE("innermost node at a position") {
  auto p = parse_program({{"Main.mini", "module a {\n  class P {\n    rest() {\n      sleep();\n"
                                        "    }\n    sleep() {\n    }\n  }\n}\n"}});
  const Node* n = p.node_at("Main.mini", 4, 7);
  REQUIRE(n);
  CHECK(n->kind == NodeKind::ReferenceExpression);
  CHECK(p.id_of(*n).str() == "a.P.rest/body[0]/expr/callee");
  const Node* m = p.node_at("Main.mini", 3, 5);
  REQUIRE(m);
  CHECK(p.id_of(*m).str() == "a.P.rest");
  CHECK(p.node_at("Main.mini", 40, 1) == nullptr);
  CHECK(p.node_at("Other.mini", 1, 1) == nullptr);
}

TEST_CASE("fixture corpora: spans, fixpoint, and method round trip") {
  auto corpora = fixture_corpora();
  REQUIRE(corpora.size() >= 10);
  for (const auto& sources : corpora) {
    auto p = parse_program(sources);
    check_span_invariants(p);

    auto printed = pretty_print(p);
    auto reparsed = parse_program(printed);
    REQUIRE(reparsed.roots().size() == p.roots().size());
    for (std::size_t i = 0; i < p.roots().size(); ++i) {
      CHECK(same_structure(*p.roots()[i], *reparsed.roots()[i]));
    }
    auto printed_again = pretty_print(reparsed);
    for (std::size_t i = 0; i < printed.size(); ++i) {
      CHECK(printed[i].text == printed_again[i].text);
    }

    for (std::size_t f = 0; f < sources.size(); ++f) {
      for (const Node* m : nodes_of_kind(p, KindFilter::exactly(NodeKind::Method),
                                         p.roots()[f].get())) {
        auto snippet = span_text(sources[f].text, m->span);
        auto wrapped = parse_program({{"w.mini", "class W { " + snippet + " }"}});
        const Node& copy = *wrapped.roots()[0]->children[0]->children[0];
        CHECK(same_structure(copy, *m));
      }
    }
  }
}

TEST_CASE("expressions keep their structure through printing") {
  for (const char* src : {"a - (b - c)", "(a - b) - c", "a = b = c", "(a = b) + 1",
                          "a * (b + c) % -3", "x.y.z(1, \"q\\\"\\n\", f())",
                          "a || b && c == d < e + f * g", "(a || b) && c"}) {
    auto e = parse_expression(src);
    auto printed = print_node(*e);
    auto back = parse_expression(printed);
    INFO(src << " -> " << printed);
    CHECK(same_structure(*e, *back));
  }
  CHECK(print_node(*parse_expression("(a - b) - c")) == "a - b - c");
  CHECK(print_node(*parse_expression("a - (b - c)")) == "a - (b - c)");
}

TEST_CASE("insert statements at the front of a method") {
  auto p = sleepy();
  auto stmt = parse_statement("print(\"dream\");");
  auto q = insert_statements(p, NodeId("a.P.dream"), {stmt});
  const Node& dream = q.resolve(NodeId("a.P.dream"));
  REQUIRE(dream.body()->children.size() == 1);
  CHECK(dream.body()->children[0]->kind == NodeKind::PrintStatement);
  // Untouched subtrees are shared, ids elsewhere unchanged.
  CHECK(&q.resolve(NodeId("a.P.rest")) == &p.resolve(NodeId("a.P.rest")));
  CHECK(p.resolve(NodeId("a.P.dream")).body()->children.empty());

  try {
    insert_statements(p, NodeId("a.P"), {stmt});
    FAIL("expected NotAMethod");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotAMethod);
  }

  for (std::size_t n = 1; n <= 5; ++n) {
    std::vector<NodePtr> stmts;
    for (std::size_t i = 0; i < n; ++i) {
      stmts.push_back(parse_statement("print(" + std::to_string(i) + ");"));
    }
    auto r = insert_statements(p, NodeId("a.P.rest"), stmts);
    const Node* body = r.resolve(NodeId("a.P.rest")).body();
    REQUIRE(body->children.size() == n + 2);
    for (std::size_t i = 0; i < n; ++i) CHECK(body->children[i] == stmts[i]);
    CHECK(r.resolve(NodeId("a.P.rest/body[" + std::to_string(n) + "]/expr/callee")).name ==
          "watchTV");
    for (const auto& e : p.entries()) {
      if (e.id.str().rfind("a.P.rest/", 0) == 0) continue;
      CHECK(r.find(e.id) != nullptr);
    }
  }
}

TEST_CASE("property: generated programs reach a print/parse fixpoint") {
  std::mt19937 rng(7);
  auto pick = [&](std::initializer_list<const char*> xs) {
    return std::string(*(xs.begin() + rng() % xs.size()));
  };
  std::function<std::string(int)> expr = [&](int depth) -> std::string {
    switch (depth <= 0 ? rng() % 3 : rng() % 6) {
      case 0: return std::to_string(static_cast<int>(rng() % 200) - 100);
      case 1: return "\"s" + std::to_string(rng() % 9) + "\"";
      case 2: return pick({"x", "y", "a.b", "q.r.s"});
      case 3: return "(" + expr(depth - 1) + " " + pick({"+", "-", "*", "<", "==", "&&", "||"}) +
                     " " + expr(depth - 1) + ")";
      case 4: return pick({"f", "g.h"}) + "(" + expr(depth - 1) + ", " + expr(depth - 1) + ")";
      default: return expr(depth - 1) + " " + pick({"/", "%", ">=", "!="}) + " " + expr(depth - 1);
    }
  };
  std::function<std::string(int)> stmt = [&](int depth) -> std::string {
    switch (depth <= 0 ? rng() % 4 : rng() % 7) {
      case 0: return "var v" + std::to_string(rng() % 5) + " = " + expr(2) + ";";
      case 1: return "x = " + expr(2) + ";";
      case 2: return "print(" + expr(1) + ", " + expr(1) + ");";
      case 3: return "return " + expr(2) + ";";
      case 4: return "if (" + expr(2) + ") { " + stmt(depth - 1) + " } else { " + stmt(depth - 1) + " }";
      case 5: return "while (" + expr(1) + ") { " + stmt(depth - 1) + " " + stmt(depth - 1) + " }";
      default: return "if (" + expr(1) + ") { }";
    }
  };
  for (int round = 0; round < 50; ++round) {
    std::string src = "module m" + std::to_string(round) + " { class C { import a.b.C;\n";
    for (int m = 0; m < 3; ++m) {
      src += "m" + std::to_string(m) + "(p, q) {\n";
      for (int s = 0; s < 4; ++s) src += stmt(2) + "\n";
      src += "}\n";
    }
    src += "} }\n";
    auto p = parse_program({{"gen.mini", src}});
    check_span_invariants(p);
    auto printed = pretty_print(p);
    auto back = parse_program(printed);
    CHECK(same_structure(*p.roots()[0], *back.roots()[0]));
    CHECK(pretty_print(back)[0].text == printed[0].text);
  }
}
