#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "codeq/cli/session.hpp"

namespace codeq::cli {

enum ExitCode { kSuccess = 0, kQueryError = 1, kUsageError = 2 };

/// The whole command line tool, with injectable streams. `args` excludes the
/// program name. `interactive` turns on the REPL prompt and, together with
/// the absence of --no-color, colored output.
int run_app(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err, bool interactive = false);

/// Executes one prompt and prints its renders to out and warnings to err.
int run_once(Session& session, const std::string& prompt_text, std::ostream& out,
             std::ostream& err);

/// Reads lines until `:quit` or end of input. Errors are reported and the
/// loop continues. Returns kSuccess.
int run_repl(Session& session, std::istream& in, std::ostream& out, std::ostream& err,
             bool show_prompt);

}  // namespace codeq::cli
