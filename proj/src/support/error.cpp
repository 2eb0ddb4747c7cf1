#include "codeq/support/error.hpp"

namespace codeq {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::DuplicateElementName: return "DuplicateElementName";
    case Errc::EmptyTuple: return "EmptyTuple";
    case Errc::InvalidIdentifier: return "InvalidIdentifier";
    case Errc::InvalidValue: return "InvalidValue";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::ParseError: return "ParseError";
    case Errc::UnknownNodeId: return "UnknownNodeId";
    case Errc::NotAMethod: return "NotAMethod";
    case Errc::NotADeclaration: return "NotADeclaration";
    case Errc::NoRepository: return "NoRepository";
    case Errc::UnknownRef: return "UnknownRef";
    case Errc::AmbiguousPrefix: return "AmbiguousPrefix";
    case Errc::UnknownIssue: return "UnknownIssue";
    case Errc::QueryError: return "QueryError";
    case Errc::CycleError: return "CycleError";
    case Errc::InvalidNetwork: return "InvalidNetwork";
    case Errc::DuplicateQueryName: return "DuplicateQueryName";
    case Errc::UnknownQuery: return "UnknownQuery";
    case Errc::SelfReferentialAlias: return "SelfReferentialAlias";
    case Errc::DuplicateAlias: return "DuplicateAlias";
    case Errc::UnknownFlag: return "UnknownFlag";
    case Errc::FlagConflict: return "FlagConflict";
    case Errc::MissingArgument: return "MissingArgument";
    case Errc::UnknownKind: return "UnknownKind";
    case Errc::BadRegex: return "BadRegex";
    case Errc::NoMethodContext: return "NoMethodContext";
    case Errc::MissingSelector: return "MissingSelector";
    case Errc::NotARelation: return "NotARelation";
    case Errc::MissingStart: return "MissingStart";
    case Errc::FileNotFound: return "FileNotFound";
    case Errc::EmptyHeader: return "EmptyHeader";
    case Errc::NoNumericElement: return "NoNumericElement";
    case Errc::NoNodeElement: return "NoNodeElement";
    case Errc::NotAMethodNode: return "NotAMethodNode";
    case Errc::WriteFailure: return "WriteFailure";
    case Errc::ScriptCrash: return "ScriptCrash";
    case Errc::ProtocolError: return "ProtocolError";
    case Errc::Timeout: return "Timeout";
    case Errc::ScriptError: return "ScriptError";
    case Errc::FormatUnsupported: return "FormatUnsupported";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

namespace {

std::string format_position(const std::string& file, int line, int column,
                             const std::string& message) {
  std::string out;
  if (!file.empty()) out += file + ":";
  out += std::to_string(line) + ":" + std::to_string(column) + ": " + message;
  return out;
}

}  // namespace

PositionedError::PositionedError(Errc code, std::string file, int line,
                                 int column, const std::string& message)
    : Error(code, format_position(file, line, column, message)),
      file_(std::move(file)),
      line_(line),
      column_(column),
      detail_(message) {}

void fail(Errc code, const std::string& message) { throw Error(code, message); }

}  // namespace codeq
