#include "codeq/lang/parser.hpp"

#include <cctype>
#include <charconv>
#include <cstdint>

#include "codeq/support/error.hpp"

namespace codeq::lang {
namespace {

enum class TokenType { Identifier, Keyword, Integer, String, Punct, End };

struct Token {
  TokenType type;
  std::string text;  // decoded value for strings
  int line;
  int col;
  int end_line;
  int end_col;
};

bool is_keyword(std::string_view word) {
  for (std::string_view k : {"module", "class", "import", "var", "if", "else", "while",
                             "return", "print"}) {
    if (word == k) return true;
  }
  return false;
}

class Lexer {
 public:
  Lexer(std::string_view path, std::string_view text) : path_(path), text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_trivia();
      if (at_end()) {
        out.push_back({TokenType::End, "", line_, col_, line_, col_});
        return out;
      }
      out.push_back(next());
    }
  }

 private:
  Token next() {
    int line = line_, col = col_;
    char c = peek();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string word;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) {
        word += advance();
      }
      auto type = is_keyword(word) ? TokenType::Keyword : TokenType::Identifier;
      return finish(type, std::move(word), line, col);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string digits;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) digits += advance();
      if (!at_end() && (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_')) {
        error(line_, col_, "malformed number");
      }
      return finish(TokenType::Integer, std::move(digits), line, col);
    }
    if (c == '"') return string_token(line, col);
    for (std::string_view op : {"==", "!=", "<=", ">=", "&&", "||"}) {
      if (text_.substr(pos_, 2) == op) {
        advance();
        advance();
        return finish(TokenType::Punct, std::string(op), line, col);
      }
    }
    if (std::string_view("{}();,.=<>+-*/%").find(c) != std::string_view::npos) {
      advance();
      return finish(TokenType::Punct, std::string(1, c), line, col);
    }
    error(line, col, std::string("unexpected character '") + c + "'");
  }

  Token string_token(int line, int col) {
    advance();
    std::string value;
    for (;;) {
      if (at_end() || peek() == '\n') error(line, col, "unterminated string literal");
      char c = advance();
      if (c == '"') break;
      if (c != '\\') {
        value += c;
        continue;
      }
      if (at_end()) error(line, col, "unterminated string literal");
      char e = advance();
      switch (e) {
        case 'n': value += '\n'; break;
        case 't': value += '\t'; break;
        case 'r': value += '\r'; break;
        case '"': value += '"'; break;
        case '\\': value += '\\'; break;
        case 'x': {
          auto hex = text_.substr(pos_, 2);
          unsigned v = 0;
          auto [end, ec] = std::from_chars(hex.data(), hex.data() + hex.size(), v, 16);
          if (hex.size() != 2 || ec != std::errc() || end != hex.data() + 2) {
            error(line_, col_, "bad \\x escape");
          }
          advance();
          advance();
          value += static_cast<char>(v);
          break;
        }
        default: error(line_, col_ - 1, std::string("unknown escape \\") + e);
      }
    }
    return finish(TokenType::String, std::move(value), line, col);
  }

  Token finish(TokenType type, std::string text, int line, int col) {
    return {type, std::move(text), line, col, last_line_, last_col_};
  }

  void skip_trivia() {
    while (!at_end()) {
      char c = peek();
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '/' && text_.substr(pos_, 2) == "//") {
        while (!at_end() && peek() != '\n') advance();
      } else {
        return;
      }
    }
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  char advance() {
    char c = text_[pos_++];
    last_line_ = line_;
    last_col_ = col_;
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  [[noreturn]] void error(int line, int col, const std::string& message) const {
    throw PositionedError(Errc::ParseError, std::string(path_), line, col, message);
  }

  std::string_view path_;
  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  int last_line_ = 1;
  int last_col_ = 0;
};

int precedence(std::string_view op) {
  if (op == "=") return 1;
  if (op == "||") return 2;
  if (op == "&&") return 3;
  if (op == "==" || op == "!=") return 4;
  if (op == "<" || op == "<=" || op == ">" || op == ">=") return 5;
  if (op == "+" || op == "-") return 6;
  if (op == "*" || op == "/" || op == "%") return 7;
  return 0;
}

class Parser {
 public:
  Parser(std::string_view path, std::vector<Token> tokens)
      : path_(path), tokens_(std::move(tokens)) {}

  NodePtr source_file(std::string_view text) {
    std::vector<NodePtr> decls;
    while (!at(TokenType::End)) {
      if (is_keyword("module")) {
        decls.push_back(module());
      } else if (is_keyword("class")) {
        decls.push_back(class_decl());
      } else {
        error_here("expected 'module' or 'class'");
      }
    }
    Span span{std::string(path_), 1, 1, 1, 0};
    // The file span covers all text up to the last non-whitespace character.
    int line = 1, col = 0;
    for (char c : text) {
      if (c == '\n') {
        ++line;
        col = 0;
      } else {
        ++col;
        if (!std::isspace(static_cast<unsigned char>(c))) {
          span.end_line = line;
          span.end_col = col;
        }
      }
    }
    return make_node(NodeKind::SourceFile, std::string(path_), "", std::move(decls),
                     std::move(span));
  }

  NodePtr statement_only() {
    auto s = statement();
    expect_end();
    return s;
  }

  NodePtr expression_only() {
    auto e = expression();
    expect_end();
    return e;
  }

 private:
  NodePtr module() {
    const Token& start = expect_keyword("module");
    std::string name = expect_identifier().text;
    expect_punct("{");
    std::vector<NodePtr> members;
    while (!is_punct("}")) {
      if (is_keyword("module")) {
        members.push_back(module());
      } else if (is_keyword("class")) {
        members.push_back(class_decl());
      } else {
        error_here("expected 'module', 'class' or '}'");
      }
    }
    const Token& end = expect_punct("}");
    return make_node(NodeKind::Module, std::move(name), "", std::move(members), span(start, end));
  }

  NodePtr class_decl() {
    const Token& start = expect_keyword("class");
    std::string name = expect_identifier().text;
    expect_punct("{");
    std::vector<NodePtr> members;
    while (!is_punct("}")) {
      if (is_keyword("import")) {
        members.push_back(import_decl());
      } else if (at(TokenType::Identifier)) {
        members.push_back(method());
      } else {
        error_here("expected 'import', a method or '}'");
      }
    }
    const Token& end = expect_punct("}");
    return make_node(NodeKind::Class, std::move(name), "", std::move(members), span(start, end));
  }

  NodePtr import_decl() {
    const Token& start = expect_keyword("import");
    auto name = reference_chain();
    const Token& end = expect_punct(";");
    return make_node(NodeKind::NameImport, "", "", {std::move(name)}, span(start, end));
  }

  NodePtr method() {
    const Token& start = expect_identifier();
    expect_punct("(");
    std::vector<NodePtr> children;
    if (!is_punct(")")) {
      for (;;) {
        const Token& p = expect_identifier();
        children.push_back(make_node(NodeKind::Parameter, p.text, "", {}, span(p, p)));
        if (!is_punct(",")) break;
        advance();
      }
    }
    expect_punct(")");
    children.push_back(block());
    const Span body_span = children.back()->span;
    Span s{std::string(path_), start.line, start.col, body_span.end_line, body_span.end_col};
    return make_node(NodeKind::Method, start.text, "", std::move(children), std::move(s));
  }

  NodePtr block() {
    const Token& start = expect_punct("{");
    std::vector<NodePtr> statements;
    while (!is_punct("}")) {
      if (at(TokenType::End)) error_here("expected '}'");
      statements.push_back(statement());
    }
    const Token& end = expect_punct("}");
    return make_node(NodeKind::Block, "", "", std::move(statements), span(start, end));
  }

  NodePtr statement() {
    const Token& start = peek();
    if (is_keyword("var")) {
      advance();
      std::string name = expect_identifier().text;
      std::vector<NodePtr> children;
      if (is_punct("=")) {
        advance();
        children.push_back(expression());
      }
      const Token& end = expect_punct(";");
      return make_node(NodeKind::DeclarationStatement, std::move(name), "", std::move(children),
                       span(start, end));
    }
    if (is_keyword("if")) {
      advance();
      expect_punct("(");
      auto cond = expression();
      expect_punct(")");
      std::vector<NodePtr> children{std::move(cond), block()};
      if (is_keyword("else")) {
        advance();
        children.push_back(block());
      }
      const Span& last = children.back()->span;
      Span s{std::string(path_), start.line, start.col, last.end_line, last.end_col};
      return make_node(NodeKind::IfStatement, "", "", std::move(children), std::move(s));
    }
    if (is_keyword("while")) {
      advance();
      expect_punct("(");
      auto cond = expression();
      expect_punct(")");
      auto body = block();
      Span s{std::string(path_), start.line, start.col, body->span.end_line, body->span.end_col};
      return make_node(NodeKind::LoopStatement, "", "", {std::move(cond), std::move(body)},
                       std::move(s));
    }
    if (is_keyword("return")) {
      advance();
      std::vector<NodePtr> children;
      if (!is_punct(";")) children.push_back(expression());
      const Token& end = expect_punct(";");
      return make_node(NodeKind::ReturnStatement, "", "", std::move(children), span(start, end));
    }
    if (is_keyword("print")) {
      advance();
      expect_punct("(");
      auto args = arguments();
      expect_punct(")");
      const Token& end = expect_punct(";");
      return make_node(NodeKind::PrintStatement, "", "", std::move(args), span(start, end));
    }
    auto expr = expression();
    const Token& end = expect_punct(";");
    return make_node(NodeKind::ExpressionStatement, "", "", {std::move(expr)}, span(start, end));
  }

  std::vector<NodePtr> arguments() {
    std::vector<NodePtr> args;
    if (is_punct(")")) return args;
    for (;;) {
      args.push_back(expression());
      if (!is_punct(",")) return args;
      advance();
    }
  }

  NodePtr expression(int min_precedence = 1) {
    auto lhs = primary();
    for (;;) {
      const Token& op = peek();
      if (op.type != TokenType::Punct) return lhs;
      int prec = precedence(op.text);
      if (prec == 0 || prec < min_precedence) return lhs;
      advance();
      // '=' is right associative, everything else left associative.
      auto rhs = expression(op.text == "=" ? prec : prec + 1);
      Span s{std::string(path_), lhs->span.start_line, lhs->span.start_col, rhs->span.end_line,
             rhs->span.end_col};
      lhs = make_node(NodeKind::BinaryExpression, "", op.text, {std::move(lhs), std::move(rhs)},
                      std::move(s));
    }
  }

  NodePtr primary() {
    const Token& t = peek();
    if (t.type == TokenType::Integer) {
      advance();
      return int_literal(t.text, t, t);
    }
    if (t.type == TokenType::Punct && t.text == "-" && peek(1).type == TokenType::Integer) {
      advance();
      const Token& digits = advance();
      return int_literal("-" + digits.text, t, digits);
    }
    if (t.type == TokenType::String) {
      advance();
      return make_node(NodeKind::StringLiteral, "", t.text, {}, span(t, t));
    }
    if (t.type == TokenType::Punct && t.text == "(") {
      advance();
      auto inner = expression();
      expect_punct(")");
      return inner;
    }
    if (t.type == TokenType::Identifier) {
      auto callee = reference_chain();
      if (!is_punct("(")) return callee;
      advance();
      auto args = arguments();
      const Token& end = expect_punct(")");
      Span s{std::string(path_), callee->span.start_line, callee->span.start_col, end.end_line,
             end.end_col};
      std::vector<NodePtr> children{std::move(callee)};
      for (auto& a : args) children.push_back(std::move(a));
      return make_node(NodeKind::CallExpression, "", "", std::move(children), std::move(s));
    }
    error_here("expected an expression");
  }

  NodePtr int_literal(const std::string& text, const Token& start, const Token& end) {
    std::int64_t value = 0;
    auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc()) error_at(start, "integer literal out of range");
    return make_node(NodeKind::IntLiteral, "", std::to_string(value), {}, span(start, end));
  }

  NodePtr reference_chain() {
    const Token& first = expect_identifier();
    auto ref = make_node(NodeKind::ReferenceExpression, first.text, "", {}, span(first, first));
    while (is_punct(".") && peek(1).type == TokenType::Identifier) {
      advance();
      const Token& next = advance();
      Span s{std::string(path_), first.line, first.col, next.end_line, next.end_col};
      ref = make_node(NodeKind::ReferenceExpression, next.text, "", {std::move(ref)},
                      std::move(s));
    }
    return ref;
  }

  Span span(const Token& start, const Token& end) const {
    return Span{std::string(path_), start.line, start.col, end.end_line, end.end_col};
  }

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = std::min(pos_ + ahead, tokens_.size() - 1);
    return tokens_[i];
  }
  const Token& advance() {
    const Token& t = tokens_[pos_];
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
  }
  bool at(TokenType type) const { return peek().type == type; }
  bool is_punct(std::string_view p) const { return at(TokenType::Punct) && peek().text == p; }
  bool is_keyword(std::string_view k) const { return at(TokenType::Keyword) && peek().text == k; }

  const Token& expect_punct(std::string_view p) {
    if (!is_punct(p)) error_here("expected '" + std::string(p) + "'");
    return advance();
  }
  const Token& expect_keyword(std::string_view k) {
    if (!is_keyword(k)) error_here("expected '" + std::string(k) + "'");
    return advance();
  }
  const Token& expect_identifier() {
    if (!at(TokenType::Identifier)) error_here("expected an identifier");
    return advance();
  }
  void expect_end() {
    if (!at(TokenType::End)) error_here("unexpected trailing input");
  }

  static std::string describe(const Token& t) {
    switch (t.type) {
      case TokenType::End: return "end of input";
      case TokenType::String: return "string literal";
      default: return "'" + t.text + "'";
    }
  }
  [[noreturn]] void error_here(const std::string& message) const {
    error_at(peek(), message + ", found " + describe(peek()));
  }
  [[noreturn]] void error_at(const Token& t, const std::string& message) const {
    throw PositionedError(Errc::ParseError, std::string(path_), t.line, t.col, message);
  }

  std::string_view path_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

NodePtr parse_source(std::string_view path, std::string_view text) {
  Parser parser(path, Lexer(path, text).run());
  return parser.source_file(text);
}

NodePtr parse_statement(std::string_view text, std::string_view path) {
  Parser parser(path, Lexer(path, text).run());
  return parser.statement_only();
}

NodePtr parse_expression(std::string_view text, std::string_view path) {
  Parser parser(path, Lexer(path, text).run());
  return parser.expression_only();
}

}  // namespace codeq::lang
