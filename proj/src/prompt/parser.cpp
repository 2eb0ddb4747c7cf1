#include <optional>

#include "codeq/engine/registry.hpp"
#include "codeq/prompt/prompt.hpp"
#include "codeq/support/error.hpp"
#include "codeq/support/text.hpp"

namespace codeq::prompt {

bool Pipeline::operator==(const Pipeline& other) const { return stages == other.stages; }

bool Stage::operator==(const Stage& other) const {
  return type == other.type && name == other.name && args == other.args &&
         branches == other.branches;
}

Stage Stage::invocation(std::string name, std::vector<std::string> args) {
  Stage s;
  s.name = std::move(name);
  s.args = std::move(args);
  return s;
}

Stage Stage::group(Type type, std::vector<Pipeline> branches) {
  Stage s;
  s.type = type;
  s.branches = std::move(branches);
  return s;
}

namespace {

bool is_special(char c) { return c == '|' || c == ';' || c == '{' || c == '}' || c == '"'; }
bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

struct Token {
  enum class Kind { Word, Quoted, Pipe, Semi, Open, Close, End };
  Kind kind;
  std::string text;
  int column;  // 1-based
};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) { advance(); }

  Pipeline parse() {
    if (current_.kind == Token::Kind::End) error(current_.column, "empty query");
    Pipeline p = pipeline();
    if (current_.kind != Token::Kind::End) error(current_.column, "unexpected " + describe(current_));
    return p;
  }

 private:
  [[noreturn]] void error(int column, const std::string& message) const {
    throw PositionedError(Errc::SyntaxError, "<prompt>", 1, column, message);
  }

  static std::string describe(const Token& t) {
    switch (t.kind) {
      case Token::Kind::Word: return "'" + t.text + "'";
      case Token::Kind::Quoted: return "quoted argument";
      case Token::Kind::Pipe: return "'|'";
      case Token::Kind::Semi: return "';'";
      case Token::Kind::Open: return "'{'";
      case Token::Kind::Close: return "'}'";
      case Token::Kind::End: return "end of query";
    }
    return "token";
  }

  void advance() {
    while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
    int column = static_cast<int>(pos_) + 1;
    if (pos_ >= text_.size()) {
      current_ = {Token::Kind::End, {}, column};
      return;
    }
    char c = text_[pos_];
    switch (c) {
      case '|': ++pos_; current_ = {Token::Kind::Pipe, "|", column}; return;
      case ';': ++pos_; current_ = {Token::Kind::Semi, ";", column}; return;
      case '{': ++pos_; current_ = {Token::Kind::Open, "{", column}; return;
      case '}': ++pos_; current_ = {Token::Kind::Close, "}", column}; return;
      case '"': current_ = {Token::Kind::Quoted, quoted(), column}; return;
      default: break;
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() && !is_space(text_[pos_]) && !is_special(text_[pos_])) ++pos_;
    current_ = {Token::Kind::Word, std::string(text_.substr(start, pos_ - start)), column};
  }

  std::string quoted() {
    int open_column = static_cast<int>(pos_) + 1;
    ++pos_;
    std::string out;
    while (pos_ < text_.size()) {
      char c = text_[pos_++];
      if (c == '"') return out;
      if (c == '\\') {
        if (pos_ >= text_.size()) break;
        char next = text_[pos_++];
        if (next != '"' && next != '\\') {
          error(static_cast<int>(pos_) - 1, std::string("unknown escape '\\") + next + "'");
        }
        out += next;
      } else {
        out += c;
      }
    }
    error(open_column, "unterminated quoted argument");
  }

  Pipeline pipeline() {
    Pipeline p;
    p.stages.push_back(stage());
    while (current_.kind == Token::Kind::Pipe) {
      advance();
      p.stages.push_back(stage());
    }
    return p;
  }

  Stage stage() {
    if (current_.kind == Token::Kind::Open) return group(Stage::Type::Join, current_.column);
    if (current_.kind != Token::Kind::Word) {
      error(current_.column, "expected a query name, found " + describe(current_));
    }
    Token name = current_;
    advance();
    if (name.text == "minus" && current_.kind == Token::Kind::Open) {
      return group(Stage::Type::Minus, name.column);
    }
    if (!text::is_identifier(name.text)) {
      error(name.column, "'" + name.text + "' is not a valid query name");
    }
    Stage s = Stage::invocation(name.text);
    while (current_.kind == Token::Kind::Word || current_.kind == Token::Kind::Quoted) {
      s.args.push_back(current_.text);
      advance();
    }
    if (current_.kind == Token::Kind::Open) {
      error(current_.column, "a group must start a stage; add '|' before '{'");
    }
    return s;
  }

  Stage group(Stage::Type type, int column) {
    advance();  // '{'
    std::vector<Pipeline> branches;
    branches.push_back(pipeline());
    while (current_.kind == Token::Kind::Semi) {
      advance();
      branches.push_back(pipeline());
    }
    if (current_.kind != Token::Kind::Close) {
      error(current_.column, "expected ';' or '}', found " + describe(current_));
    }
    if (branches.size() < 2) {
      error(column, "a group needs at least two branches separated by ';'");
    }
    advance();
    return Stage::group(type, std::move(branches));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  Token current_{Token::Kind::End, {}, 1};
};

bool plain_word(const std::string& arg) {
  if (arg.empty()) return false;
  for (char c : arg) {
    if (is_space(c) || is_special(c) || c == '\\') return false;
  }
  return true;
}

void serialize(const Pipeline& p, std::string& out);

void serialize(const Stage& s, std::string& out) {
  if (s.type == Stage::Type::Invocation) {
    out += s.name;
    for (const auto& arg : s.args) {
      out += ' ';
      if (plain_word(arg)) {
        out += arg;
        continue;
      }
      out += '"';
      for (char c : arg) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
      }
      out += '"';
    }
    return;
  }
  out += s.type == Stage::Type::Minus ? "minus { " : "{ ";
  for (std::size_t i = 0; i < s.branches.size(); ++i) {
    if (i) out += " ; ";
    serialize(s.branches[i], out);
  }
  out += " }";
}

void serialize(const Pipeline& p, std::string& out) {
  for (std::size_t i = 0; i < p.stages.size(); ++i) {
    if (i) out += " | ";
    serialize(p.stages[i], out);
  }
}

void collect_names(const Pipeline& p, std::vector<std::string>& out) {
  for (const auto& s : p.stages) {
    if (s.type == Stage::Type::Invocation) {
      out.push_back(s.name);
    } else {
      for (const auto& b : s.branches) collect_names(b, out);
    }
  }
}

// Returns the vertices whose outputs leave this pipeline.
std::vector<std::size_t> lower(const Pipeline& p, std::optional<std::size_t> upstream, bool at_end,
                               engine::QueryNetwork& net) {
  std::vector<std::size_t> ends;
  if (upstream) ends.push_back(*upstream);
  for (std::size_t i = 0; i < p.stages.size(); ++i) {
    const Stage& s = p.stages[i];
    bool last = at_end && i + 1 == p.stages.size();
    if (s.type == Stage::Type::Invocation) {
      auto v = net.add_query(s.name, s.args);
      for (auto from : ends) net.connect(from, v);
      ends = {v};
      continue;
    }
    std::optional<std::size_t> feed;
    if (!ends.empty()) feed = ends.front();
    bool keep_open = last && s.type == Stage::Type::Join;
    std::vector<std::size_t> branch_ends;
    for (const auto& b : s.branches) {
      auto e = lower(b, feed, keep_open, net);
      branch_ends.insert(branch_ends.end(), e.begin(), e.end());
    }
    if (keep_open) {
      ends = branch_ends;
    } else {
      auto m = net.add_merge(s.type == Stage::Type::Minus ? engine::Vertex::Type::Minus
                                                          : engine::Vertex::Type::Join);
      for (auto from : branch_ends) net.connect(from, m);
      ends = {m};
    }
  }
  return ends;
}

}  // namespace

Pipeline parse_prompt(std::string_view text) { return Parser(text).parse(); }

std::string serialize_prompt(const Pipeline& pipeline) {
  std::string out;
  serialize(pipeline, out);
  return out;
}

std::vector<std::string> invoked_names(const Pipeline& pipeline) {
  std::vector<std::string> out;
  collect_names(pipeline, out);
  return out;
}

void validate_prompt(const Pipeline& pipeline, const engine::Registry& registry) {
  for (const auto& name : invoked_names(pipeline)) registry.get(name);
}

engine::QueryNetwork to_network(const Pipeline& pipeline) {
  engine::QueryNetwork net;
  lower(pipeline, std::nullopt, true, net);
  return net;
}

std::string caret_line(std::string_view text, int column) {
  std::string out(text);
  out += '\n';
  out += std::string(static_cast<std::size_t>(std::max(column, 1) - 1), ' ');
  out += '^';
  return out;
}

}  // namespace codeq::prompt
