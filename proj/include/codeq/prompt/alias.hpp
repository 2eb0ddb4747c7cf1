#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "codeq/prompt/prompt.hpp"

namespace codeq::prompt {

/// Named prompt fragments. An alias used as a stage is replaced by its whole
/// pipeline; aliases may refer to other aliases but never to themselves.
class AliasTable {
 public:
  /// Throws SyntaxError for a body that does not parse, DuplicateAlias,
  /// SelfReferentialAlias and InvalidIdentifier.
  void define(const std::string& name, const std::string& body);
  void remove(const std::string& name);
  bool contains(const std::string& name) const { return bodies_.count(name) != 0; }
  const std::map<std::string, std::string>& bodies() const { return bodies_; }

  /// Splices alias pipelines into place until no alias names remain. Aliases
  /// take no arguments (InvalidValue otherwise).
  Pipeline expand(const Pipeline& pipeline) const;

  /// Lines of `name = "prompt text"` with \" \\ and \n escapes; blank lines and `#` comments are
  /// skipped. A missing file is an empty table.
  static AliasTable load(const std::filesystem::path& file);
  void save(const std::filesystem::path& file) const;

 private:
  Pipeline expand(const Pipeline& pipeline, std::vector<std::string>& active) const;

  std::map<std::string, std::string> bodies_;
  std::map<std::string, Pipeline> parsed_;
};

}  // namespace codeq::prompt
