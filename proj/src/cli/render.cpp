#include "codeq/cli/render.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "codeq/builtins/builtins.hpp"
#include "codeq/script/codec.hpp"
#include "codeq/support/error.hpp"
#include "codeq/support/text.hpp"

namespace codeq::cli {

Format parse_format(std::string_view name) {
  if (name == "text") return Format::Text;
  if (name == "json") return Format::Json;
  if (name == "dot") return Format::Dot;
  fail(Errc::InvalidValue, "unknown output format '" + std::string(name) +
                               "' (expected text, json or dot)");
}

std::string_view to_string(Format format) {
  switch (format) {
    case Format::Text: return "text";
    case Format::Json: return "json";
    case Format::Dot: return "dot";
  }
  return "?";
}

namespace {

const char* kReset = "\x1b[0m";

std::string ansi_color(const std::string& name) {
  static const std::map<std::string, std::string> codes = {
      {"red", "31"}, {"green", "32"}, {"yellow", "33"},
      {"blue", "34"}, {"magenta", "35"}, {"cyan", "36"}};
  auto it = codes.find(name);
  return "\x1b[" + (it == codes.end() ? std::string("33") : it->second) + "m";
}

// Green through yellow to red.
std::string heat_color(int bucket) {
  static const int codes[10] = {46, 82, 118, 154, 190, 226, 220, 214, 208, 196};
  return "\x1b[38;5;" + std::to_string(codes[std::clamp(bucket, 0, 9)]) + "m";
}

std::string one_line(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '\n') {
      out += "\\n";
    } else if (c == '\t') {
      out += ' ';
    } else {
      out += c;
    }
  }
  return out;
}

std::string rstrip(std::string s) {
  while (!s.empty() && s.back() == ' ') s.pop_back();
  return s;
}

std::string pad_left(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

std::string render_table(const TupleSet& tuples) {
  if (tuples.empty()) return "(empty)\n";
  std::set<std::string> tags;
  for (const auto& t : tuples) tags.insert(t.tag());
  bool tag_column = tags.size() > 1;

  std::vector<std::string> columns;
  if (tag_column) columns.push_back("tag");
  for (const auto& t : tuples) {
    for (const auto& e : t.elements()) {
      if (std::find(columns.begin(), columns.end(), e.name) == columns.end()) {
        columns.push_back(e.name);
      }
    }
  }
  std::vector<std::vector<std::string>> rows;
  for (const auto& t : tuples) {
    std::vector<std::string> row;
    for (const auto& c : columns) {
      if (tag_column && &c == &columns.front()) {
        row.push_back(t.tag());
      } else {
        const Value* v = t.find(c);
        row.push_back(v ? one_line(v->display()) : "");
      }
    }
    rows.push_back(std::move(row));
  }
  std::vector<std::size_t> width(columns.size());
  for (std::size_t i = 0; i < columns.size(); ++i) {
    width[i] = columns[i].size();
    for (const auto& r : rows) width[i] = std::max(width[i], r[i].size());
  }
  auto line = [&](const std::vector<std::string>& cells) {
    std::string s;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) s += "  ";
      s += cells[i] + std::string(width[i] - cells[i].size(), ' ');
    }
    return rstrip(s) + "\n";
  };
  std::string out = line(columns);
  std::vector<std::string> rule;
  for (auto w : width) rule.emplace_back(w, '-');
  out += line(rule);
  for (const auto& r : rows) out += line(r);
  return out;
}

struct Mark {
  int first = 0;
  int last = 0;
  int bucket = 0;  // heatmap only
};

// Source lines of every marked range, grouped by file, with a gutter holding
// the line number and a marker (`>` or the heat bucket).
std::string annotated_listing(const std::map<std::string, std::vector<Mark>>& marks,
                              const RenderOptions& options, bool heat, const std::string& color) {
  std::string out;
  for (const auto& [file, ranges] : marks) {
    out += "== " + file + " ==\n";
    std::optional<std::string> source = options.source ? options.source(file) : std::nullopt;
    if (!source) {
      out += "  (source unavailable)\n";
      continue;
    }
    auto lines = text::split_lines(*source);
    std::map<int, int> marked;  // line -> hottest bucket
    for (const auto& m : ranges) {
      for (int l = std::max(1, m.first); l <= std::min<int>(m.last, lines.size()); ++l) {
        auto [it, fresh] = marked.emplace(l, m.bucket);
        if (!fresh) it->second = std::max(it->second, m.bucket);
      }
    }
    int previous = 0;
    std::size_t gutter = std::to_string(lines.size()).size();
    for (const auto& [l, bucket] : marked) {
      if (previous && l != previous + 1) out += std::string(gutter, ' ') + " ...\n";
      std::string marker = heat ? "[" + std::to_string(bucket) + "]" : ">";
      std::string body = lines[l - 1];
      if (options.color && !body.empty()) {
        body = (heat ? heat_color(bucket) : ansi_color(color)) + body + kReset;
      }
      out += rstrip(pad_left(std::to_string(l), gutter) + " " + marker + " " + body) + "\n";
      previous = l;
    }
  }
  return out;
}

std::string render_highlight(const engine::RenderPlan& plan, const lang::Program& program,
                             const RenderOptions& options) {
  if (plan.payload.empty()) return "(nothing to highlight)\n";
  std::map<std::string, std::vector<Mark>> marks;
  std::string missing;
  for (const auto& t : plan.payload) {
    const Element* e = t.first_node();
    if (!e) fail(Errc::NoNodeElement, "highlight: tuple without a node reference");
    const lang::Node* n = program.find(e->value.as_node());
    if (!n) {
      missing += "  " + e->value.as_node().str() + " (not in the program)\n";
      continue;
    }
    marks[n->span.file].push_back({n->span.start_line, n->span.end_line, 0});
  }
  std::string color = plan.options.empty() ? "yellow" : plan.options.front();
  return annotated_listing(marks, options, false, color) + missing;
}

std::string render_arrows(const TupleSet& payload, Format format) {
  auto edges = builtins::relation_edges(payload);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  if (format == Format::Dot) {
    auto quote = [](const std::string& s) {
      std::string q = "\"";
      for (char c : s) {
        if (c == '"' || c == '\\') q += '\\';
        q += c;
      }
      return q + "\"";
    };
    std::string out = "digraph codeq {\n";
    for (const auto& [from, to] : edges) {
      out += "  " + quote(from.str()) + " -> " + quote(to.str()) + ";\n";
    }
    return out + "}\n";
  }
  if (edges.empty()) return "(no arrows)\n";
  std::string out;
  for (std::size_t i = 0; i < edges.size();) {
    const NodeId& from = edges[i].first;
    out += from.str() + " ->";
    for (bool first = true; i < edges.size() && edges[i].first == from; ++i, first = false) {
      out += (first ? " " : ", ") + edges[i].second.str();
    }
    out += "\n";
  }
  return out;
}

std::string render_heatmap(const TupleSet& payload, const lang::Program& program,
                           const RenderOptions& options) {
  auto entries = builtins::heat_entries(payload);
  if (entries.empty()) return "(no values)\n";
  std::string out;
  std::map<std::string, std::vector<Mark>> marks;
  for (const auto& e : entries) {
    out += "[" + std::to_string(e.bucket) + "] " + render_real(e.value) + " " + e.node.str() + "\n";
    if (const lang::Node* n = program.find(e.node)) {
      marks[n->span.file].push_back({n->span.start_line, n->span.end_line, e.bucket});
    }
  }
  return out + annotated_listing(marks, options, true, "");
}

std::string render_messages(const TupleSet& payload, const lang::Program& program) {
  struct Bubble {
    std::string file;
    int line = 0;
    int column = 0;
    std::string text;
  };
  std::vector<Bubble> bubbles;
  for (const auto& t : payload) {
    const Value* message = t.find("message");
    const Value* ast = t.find("ast");
    if (!message) fail(Errc::InvalidValue, "messages: tuple without a 'message' element");
    if (!ast || ast->kind() != ValueKind::NodeRef) {
      fail(Errc::NoNodeElement, "messages: tuple without an 'ast' node reference");
    }
    const Value* type = t.find("type");
    std::string kind = type ? type->display() : "info";
    Bubble b;
    if (const lang::Node* n = program.find(ast->as_node())) {
      b.file = n->span.file;
      b.line = n->span.start_line;
      b.column = n->span.start_col;
    } else {
      b.file = ast->as_node().str();
    }
    std::string where = b.line ? b.file + ":" + std::to_string(b.line) : b.file;
    b.text = where + ": [" + kind + "] ";
    auto lines = text::split_lines(message->display());
    for (std::size_t i = 0; i < lines.size(); ++i) {
      b.text += (i ? "\n    " : "") + lines[i];
    }
    bubbles.push_back(std::move(b));
  }
  if (bubbles.empty()) return "(no messages)\n";
  std::stable_sort(bubbles.begin(), bubbles.end(), [](const Bubble& a, const Bubble& b) {
    return std::tie(a.file, a.line, a.column) < std::tie(b.file, b.line, b.column);
  });
  std::string out;
  for (const auto& b : bubbles) out += b.text + "\n";
  return out;
}

}  // namespace

std::string render(const engine::RenderPlan& plan, const lang::Program& program,
                   const RenderOptions& options) {
  if (options.format == Format::Json) return script::dump(script::encode(plan.payload)) + "\n";
  if (options.format == Format::Dot && plan.renderer != "arrows") {
    fail(Errc::FormatUnsupported, "dot output is only available for arrows, not " + plan.renderer);
  }
  if (plan.renderer == "table") return render_table(plan.payload);
  if (plan.renderer == "highlight") return render_highlight(plan, program, options);
  if (plan.renderer == "arrows") return render_arrows(plan.payload, options.format);
  if (plan.renderer == "heatmap") return render_heatmap(plan.payload, program, options);
  if (plan.renderer == "messages") return render_messages(plan.payload, program);
  fail(Errc::FormatUnsupported, "no renderer named " + plan.renderer);
}

}  // namespace codeq::cli
