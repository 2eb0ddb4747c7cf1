#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "codeq/engine/network.hpp"

namespace codeq::engine {
class Registry;
}

namespace codeq::prompt {

struct Stage;

struct Pipeline {
  std::vector<Stage> stages;
  bool operator==(const Pipeline& other) const;
};

/// One query invocation, or a group of parallel pipelines whose outputs are
/// joined (union) or subtracted (first branch minus the rest).
struct Stage {
  enum class Type { Invocation, Join, Minus };
  Type type = Type::Invocation;
  std::string name;
  std::vector<std::string> args;
  std::vector<Pipeline> branches;

  static Stage invocation(std::string name, std::vector<std::string> args = {});
  static Stage group(Type type, std::vector<Pipeline> branches);
  bool operator==(const Stage& other) const;
};

/// Grammar:
///   pipeline := stage ('|' stage)*
///   stage    := NAME arg* | group
///   group    := 'minus'? '{' pipeline (';' pipeline)+ '}'
///   arg      := WORD | '"' (char | '\"' | '\\')* '"'
/// Throws PositionedError(SyntaxError) with the column of the offending
/// character.
Pipeline parse_prompt(std::string_view text);

/// Canonical text: single spaces, ` | ` between stages, `{ a ; b }` groups.
std::string serialize_prompt(const Pipeline& pipeline);

/// Every invocation name in the pipeline, depth first.
std::vector<std::string> invoked_names(const Pipeline& pipeline);

/// Throws UnknownQuery for names the registry does not know.
void validate_prompt(const Pipeline& pipeline, const engine::Registry& registry);

/// Lowers a validated pipeline. Each branch of a group receives the upstream
/// output; a group whose branches run to the very end of the prompt keeps its
/// branch ends as separate sinks when joining.
engine::QueryNetwork to_network(const Pipeline& pipeline);

/// The prompt text with a caret under the error column, for display.
std::string caret_line(std::string_view text, int column);

}  // namespace codeq::prompt
