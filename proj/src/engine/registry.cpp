#include "codeq/engine/registry.hpp"

#include "codeq/support/error.hpp"

namespace codeq::engine {

std::string_view to_string(QueryKind kind) {
  switch (kind) {
    case QueryKind::Resource: return "resource";
    case QueryKind::Operator: return "operator";
    case QueryKind::Visualization: return "visualization";
  }
  return "?";
}

void Registry::add(QueryDef def) {
  if (def.name.empty()) fail(Errc::InvalidIdentifier, "query name must not be empty");
  std::string name = def.name;
  if (!defs_.emplace(name, std::move(def)).second) {
    fail(Errc::DuplicateQueryName, "query '" + name + "' is already registered");
  }
}

void Registry::set_fallback(std::function<std::optional<QueryDef>(const std::string&)> fallback) {
  fallback_ = std::move(fallback);
  lazy_.clear();
}

const QueryDef* Registry::find(const std::string& name) const {
  if (auto it = defs_.find(name); it != defs_.end()) return &it->second;
  if (auto it = lazy_.find(name); it != lazy_.end()) return &it->second;
  if (!fallback_) return nullptr;
  auto def = fallback_(name);
  if (!def) return nullptr;
  return &lazy_.emplace(name, std::move(*def)).first->second;
}

const QueryDef& Registry::get(const std::string& name) const {
  const QueryDef* def = find(name);
  if (!def) fail(Errc::UnknownQuery, "unknown query '" + name + "'");
  return *def;
}

std::vector<std::string> Registry::names() const {
  std::vector<std::string> out;
  for (const auto& [name, _] : defs_) out.push_back(name);
  return out;
}

}  // namespace codeq::engine
