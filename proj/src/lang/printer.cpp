#include "codeq/lang/printer.hpp"

#include "codeq/support/text.hpp"

namespace codeq::lang {
namespace {

int precedence(const std::string& op) {
  if (op == "=") return 1;
  if (op == "||") return 2;
  if (op == "&&") return 3;
  if (op == "==" || op == "!=") return 4;
  if (op == "<" || op == "<=" || op == ">" || op == ">=") return 5;
  if (op == "+" || op == "-") return 6;
  return 7;
}

class Printer {
 public:
  std::string take() { return std::move(out_); }

  void declaration(const Node& n, int depth) {
    switch (n.kind) {
      case NodeKind::SourceFile:
        for (const auto& c : n.children) declaration(*c, depth);
        break;
      case NodeKind::Module:
      case NodeKind::Class:
        line(depth, (n.kind == NodeKind::Module ? "module " : "class ") + n.name + " {");
        for (const auto& c : n.children) declaration(*c, depth + 1);
        line(depth, "}");
        break;
      case NodeKind::NameImport:
        line(depth, "import " + expression(*n.children.front()) + ";");
        break;
      case NodeKind::Method: {
        std::vector<std::string> params;
        for (const Node* p : n.parameters()) params.push_back(p->name);
        indent(depth);
        out_ += n.name + "(" + text::join(params, ", ") + ") ";
        block(*n.body(), depth);
        out_ += '\n';
        break;
      }
      default:
        statement(n, depth);
    }
  }

  void statement(const Node& n, int depth) {
    switch (n.kind) {
      case NodeKind::DeclarationStatement:
        line(depth, "var " + n.name +
                        (n.children.empty() ? "" : " = " + expression(*n.children[0])) + ";");
        break;
      case NodeKind::ExpressionStatement:
        line(depth, expression(*n.children[0]) + ";");
        break;
      case NodeKind::ReturnStatement:
        line(depth, n.children.empty() ? "return;" : "return " + expression(*n.children[0]) + ";");
        break;
      case NodeKind::PrintStatement:
        line(depth, "print(" + argument_list(n, 0) + ");");
        break;
      case NodeKind::IfStatement:
        indent(depth);
        out_ += "if (" + expression(*n.children[0]) + ") ";
        block(*n.children[1], depth);
        if (n.children.size() > 2) {
          out_ += " else ";
          block(*n.children[2], depth);
        }
        out_ += '\n';
        break;
      case NodeKind::LoopStatement:
        indent(depth);
        out_ += "while (" + expression(*n.children[0]) + ") ";
        block(*n.children[1], depth);
        out_ += '\n';
        break;
      case NodeKind::Block:
        indent(depth);
        block(n, depth);
        out_ += '\n';
        break;
      default:
        line(depth, expression(n));
    }
  }

  // Emits `{ ... }` starting at the current column; the closing brace is
  // indented to `depth` and not followed by a newline.
  void block(const Node& n, int depth) {
    out_ += "{\n";
    for (const auto& c : n.children) statement(*c, depth + 1);
    indent(depth);
    out_ += "}";
  }

  static std::string argument_list(const Node& n, std::size_t first) {
    std::vector<std::string> args;
    for (std::size_t i = first; i < n.children.size(); ++i) {
      args.push_back(expression(*n.children[i]));
    }
    return text::join(args, ", ");
  }

  static std::string expression(const Node& n) {
    switch (n.kind) {
      case NodeKind::IntLiteral: return n.text;
      case NodeKind::StringLiteral: return text::quote(n.text);
      case NodeKind::ReferenceExpression: return dotted_name(n);
      case NodeKind::CallExpression:
        return expression(*n.children[0]) + "(" + argument_list(n, 1) + ")";
      case NodeKind::BinaryExpression: {
        int prec = precedence(n.text);
        bool right_assoc = n.text == "=";
        auto operand = [&](const Node& child, bool is_left) {
          std::string s = expression(child);
          if (child.kind != NodeKind::BinaryExpression) return s;
          int cp = precedence(child.text);
          bool wrap = cp < prec || (cp == prec && (is_left ? right_assoc : !right_assoc));
          return wrap ? "(" + s + ")" : s;
        };
        return operand(*n.children[0], true) + " " + n.text + " " +
               operand(*n.children[1], false);
      }
      default: return "<" + std::string(to_string(n.kind)) + ">";
    }
  }

 private:
  void indent(int depth) { out_.append(static_cast<std::size_t>(depth) * 4, ' '); }
  void line(int depth, const std::string& s) {
    indent(depth);
    out_ += s;
    out_ += '\n';
  }

  std::string out_;
};

}  // namespace

std::vector<SourceText> pretty_print(const Program& program) {
  std::vector<SourceText> out;
  for (const auto& root : program.roots()) {
    out.push_back({root->name, print_node(*root)});
  }
  return out;
}

std::string print_node(const Node& node, int indent) {
  Printer p;
  if (is_expression(node.kind)) return Printer::expression(node);
  p.declaration(node, indent);
  return p.take();
}

}  // namespace codeq::lang
