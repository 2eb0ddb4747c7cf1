#pragma once

#include <functional>
#include <optional>
#include <string>

#include "codeq/engine/context.hpp"

namespace codeq::cli {

enum class Format { Text, Json, Dot };
/// Throws InvalidValue for anything but text, json and dot.
Format parse_format(std::string_view name);
std::string_view to_string(Format format);

struct RenderOptions {
  Format format = Format::Text;
  bool color = false;
  /// Current text of a corpus file, by corpus-relative path.
  std::function<std::optional<std::string>(const std::string&)> source;
};

/// Deterministic rendering of one plan. Throws FormatUnsupported (dot is only
/// defined for arrows) and whatever the plan's preconditions raise.
std::string render(const engine::RenderPlan& plan, const lang::Program& program,
                   const RenderOptions& options);

}  // namespace codeq::cli
