#include "codeq/prompt/alias.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "codeq/support/error.hpp"
#include "codeq/support/text.hpp"

namespace codeq::prompt {

namespace {

// Every name a body invokes, directly or through aliases already defined.
void reachable_aliases(const Pipeline& body, const std::map<std::string, Pipeline>& table,
                       std::set<std::string>& seen) {
  for (const auto& name : invoked_names(body)) {
    if (!seen.insert(name).second) continue;
    if (auto it = table.find(name); it != table.end()) reachable_aliases(it->second, table, seen);
  }
}

std::string quote_body(const std::string& body) {
  std::string out = "\"";
  for (char c : body) {
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

void AliasTable::define(const std::string& name, const std::string& body) {
  if (!text::is_identifier(name)) {
    fail(Errc::InvalidIdentifier, "'" + name + "' is not a valid alias name");
  }
  if (bodies_.count(name)) fail(Errc::DuplicateAlias, "alias '" + name + "' already exists");
  Pipeline parsed = parse_prompt(body);
  std::set<std::string> seen;
  reachable_aliases(parsed, parsed_, seen);
  if (seen.count(name)) fail(Errc::SelfReferentialAlias, "alias '" + name + "' refers to itself");
  bodies_[name] = body;
  parsed_[name] = std::move(parsed);
}

void AliasTable::remove(const std::string& name) {
  bodies_.erase(name);
  parsed_.erase(name);
}

Pipeline AliasTable::expand(const Pipeline& pipeline) const {
  std::vector<std::string> active;
  return expand(pipeline, active);
}

Pipeline AliasTable::expand(const Pipeline& pipeline, std::vector<std::string>& active) const {
  Pipeline out;
  for (const auto& stage : pipeline.stages) {
    if (stage.type != Stage::Type::Invocation) {
      Stage group = stage;
      for (auto& branch : group.branches) branch = expand(branch, active);
      out.stages.push_back(std::move(group));
      continue;
    }
    auto it = parsed_.find(stage.name);
    if (it == parsed_.end()) {
      out.stages.push_back(stage);
      continue;
    }
    if (!stage.args.empty()) {
      fail(Errc::InvalidValue, "alias '" + stage.name + "' takes no arguments");
    }
    if (std::find(active.begin(), active.end(), stage.name) != active.end()) {
      fail(Errc::SelfReferentialAlias, "alias '" + stage.name + "' refers to itself");
    }
    active.push_back(stage.name);
    Pipeline spliced = expand(it->second, active);
    active.pop_back();
    for (auto& s : spliced.stages) out.stages.push_back(std::move(s));
  }
  return out;
}

AliasTable AliasTable::load(const std::filesystem::path& file) {
  AliasTable table;
  if (!std::filesystem::exists(file)) return table;
  int line_number = 0;
  for (const auto& raw : text::split_lines(text::read_file(file))) {
    ++line_number;
    auto line = text::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    auto eq = line.find('=');
    auto where = file.string() + ":" + std::to_string(line_number);
    if (eq == std::string_view::npos) fail(Errc::SyntaxError, where + ": expected name = \"query\"");
    std::string name(text::trim(line.substr(0, eq)));
    auto value = text::trim(line.substr(eq + 1));
    if (value.size() < 2 || value.front() != '"' || value.back() != '"') {
      fail(Errc::SyntaxError, where + ": alias body must be double-quoted");
    }
    std::string body;
    for (std::size_t i = 1; i + 1 < value.size(); ++i) {
      if (value[i] == '\\' && i + 2 < value.size()) {
        ++i;
        body += value[i] == 'n' ? '\n' : value[i];
      } else {
        body += value[i];
      }
    }
    table.define(name, body);
  }
  return table;
}

void AliasTable::save(const std::filesystem::path& file) const {
  std::string out;
  for (const auto& [name, body] : bodies_) out += name + " = " + quote_body(body) + "\n";
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
  text::write_file(file, out);
}

}  // namespace codeq::prompt
