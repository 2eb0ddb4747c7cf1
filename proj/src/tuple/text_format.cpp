#include "codeq/tuple/text_format.hpp"

#include <cctype>
#include <charconv>

#include "codeq/support/error.hpp"

namespace codeq {

std::string serialize(const Tuple& t) {
  std::string out = t.tag() + ": (";
  bool first = true;
  for (const auto& e : t.elements()) {
    if (!first) out += ", ";
    first = false;
    out += e.name;
    out += ": ";
    out += e.value.rendering();
  }
  out += ")";
  return out;
}

std::string serialize(const TupleSet& ts) {
  std::string out;
  for (const auto& t : ts) {
    out += serialize(t);
    out += '\n';
  }
  return out;
}

namespace {

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  TupleSet document() {
    TupleSet out;
    skip_space();
    bool braced = peek() == '{';
    if (braced) advance();
    for (;;) {
      skip_space();
      if (at_end() || (braced && peek() == '}')) break;
      out.insert(tuple());
      skip_space();
      if (peek() == ',') advance();
    }
    if (braced) {
      expect('}');
      skip_space();
    }
    if (!at_end()) error("unexpected trailing text");
    return out;
  }

 private:
  Tuple tuple() {
    std::optional<std::string> tag;
    if (peek() != '(') {
      tag = identifier("tag");
      skip_space();
      expect(':');
      skip_space();
    }
    expect('(');
    std::vector<Element> elements;
    for (;;) {
      skip_space();
      int line = line_, column = column_;
      std::string name = identifier("element name");
      skip_space();
      expect(':');
      skip_space();
      Value value = this->value();
      for (const auto& e : elements) {
        if (e.name == name) {
          throw PositionedError(Errc::SyntaxError, "", line, column,
                                "duplicate element name '" + name + "'");
        }
      }
      elements.push_back({std::move(name), std::move(value)});
      skip_space();
      if (peek() == ',') {
        advance();
        continue;
      }
      expect(')');
      break;
    }
    return Tuple::make(std::move(tag), std::move(elements));
  }

  Value value() {
    char c = peek();
    if (c == '"') return Value::text(string_literal());
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+') return number();
    if (text_.substr(pos_, 4) == "ref\"") {
      advance(3);
      return Value::node(NodeId(string_literal()));
    }
    std::string token;
    while (!at_end() && bare_char(peek())) {
      token += peek();
      advance();
    }
    if (token.empty()) error("expected a value");
    return Value::node(NodeId(std::move(token)));
  }

  Value number() {
    int line = line_, column = column_;
    std::size_t start = pos_;
    if (peek() == '-' || peek() == '+') advance();
    bool is_real = false;
    while (!at_end()) {
      char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '.' || c == 'e' || c == 'E') {
        is_real = true;
        advance();
      } else if ((c == '-' || c == '+') && is_real &&
                 (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E')) {
        advance();
      } else {
        break;
      }
    }
    std::string_view token = text_.substr(start, pos_ - start);
    if (!token.empty() && token.front() == '+') token.remove_prefix(1);
    const char* first = token.data();
    const char* last = token.data() + token.size();
    if (is_real) {
      double d = 0;
      auto [end, ec] = std::from_chars(first, last, d);
      if (ec != std::errc() || end != last) {
        throw PositionedError(Errc::SyntaxError, "", line, column, "malformed real");
      }
      return Value::real(d);
    }
    std::int64_t i = 0;
    auto [end, ec] = std::from_chars(first, last, i);
    if (ec != std::errc() || end != last) {
      throw PositionedError(Errc::SyntaxError, "", line, column, "malformed integer");
    }
    return Value::integer(i);
  }

  std::string string_literal() {
    expect('"');
    std::string out;
    for (;;) {
      if (at_end()) error("unterminated string");
      char c = peek();
      advance();
      if (c == '"') return out;
      if (c != '\\') {
        out += c;
        continue;
      }
      if (at_end()) error("unterminated escape");
      char e = peek();
      advance();
      switch (e) {
        case 'n': out += '\n'; break;
        case 't': out += '\t'; break;
        case 'r': out += '\r'; break;
        case '"': out += '"'; break;
        case '\\': out += '\\'; break;
        case 'x': {
          if (pos_ + 2 > text_.size()) error("truncated \\x escape");
          unsigned v = 0;
          auto hex = text_.substr(pos_, 2);
          auto [end, ec] = std::from_chars(hex.data(), hex.data() + 2, v, 16);
          if (ec != std::errc() || end != hex.data() + 2) error("bad \\x escape");
          out += static_cast<char>(v);
          advance(2);
          break;
        }
        default: error(std::string("unknown escape \\") + e);
      }
    }
  }

  std::string identifier(const char* what) {
    std::string out;
    if (!at_end() && (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_')) {
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) {
        out += peek();
        advance();
      }
    }
    if (out.empty()) error(std::string("expected ") + what);
    return out;
  }

  static bool bare_char(char c) {
    return !(std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == ')' ||
             c == '(' || c == '"' || c == '}' || c == '{' || c == ':');
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) advance();
  }
  void expect(char c) {
    if (at_end() || peek() != c) error(std::string("expected '") + c + "'");
    advance();
  }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  bool at_end() const { return pos_ >= text_.size(); }
  void advance(std::size_t n = 1) {
    for (std::size_t i = 0; i < n && pos_ < text_.size(); ++i, ++pos_) {
      if (text_[pos_] == '\n') {
        ++line_;
        column_ = 1;
      } else {
        ++column_;
      }
    }
  }
  [[noreturn]] void error(const std::string& message) const {
    throw PositionedError(Errc::SyntaxError, "", line_, column_, message);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

}  // namespace

TupleSet parse_tuple_set(std::string_view text) { return Reader(text).document(); }

}  // namespace codeq
