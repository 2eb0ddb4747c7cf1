#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace codeq {

enum class Errc {
  // tuples
  DuplicateElementName,
  EmptyTuple,
  InvalidIdentifier,
  InvalidValue,
  SyntaxError,
  // fixture language
  ParseError,
  UnknownNodeId,
  NotAMethod,
  NotADeclaration,
  // history
  NoRepository,
  UnknownRef,
  AmbiguousPrefix,
  UnknownIssue,
  // engine / prompt
  QueryError,
  CycleError,
  InvalidNetwork,
  DuplicateQueryName,
  UnknownQuery,
  SelfReferentialAlias,
  DuplicateAlias,
  // builtins
  UnknownFlag,
  FlagConflict,
  MissingArgument,
  UnknownKind,
  BadRegex,
  NoMethodContext,
  MissingSelector,
  NotARelation,
  MissingStart,
  FileNotFound,
  EmptyHeader,
  NoNumericElement,
  NoNodeElement,
  NotAMethodNode,
  WriteFailure,
  // scripts
  ScriptCrash,
  ProtocolError,
  Timeout,
  ScriptError,
  // rendering
  FormatUnsupported,
  Io,
};

std::string_view to_string(Errc code);

/// Base of every error raised by the library. Carries a stable code so callers
/// and tests can branch on the failure kind rather than the message text.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// An error anchored at a position in some text (a source file, a prompt line,
/// a serialized tuple set). Lines and columns are 1-based.
class PositionedError : public Error {
 public:
  PositionedError(Errc code, std::string file, int line, int column,
                  const std::string& message);

  const std::string& file() const noexcept { return file_; }
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string file_;
  int line_;
  int column_;
  std::string detail_;
};

[[noreturn]] void fail(Errc code, const std::string& message);

}  // namespace codeq
