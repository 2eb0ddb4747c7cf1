#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace codeq::builtins {

struct FlagSpec {
  std::string name;  // without the leading dash
  int values = 0;    // number of values that follow the flag
};

/// Query arguments split into flags and positional words. A word is a flag
/// when it starts with '-' followed by a letter; everything else (including
/// negative numbers) is positional.
class Args {
 public:
  /// Throws UnknownFlag, MissingArgument (too few values after a flag),
  /// FlagConflict (a flag given twice) and InvalidValue (more positional
  /// words than max_positional).
  static Args parse(std::string_view query, const std::vector<std::string>& args,
                    const std::vector<FlagSpec>& flags, std::size_t max_positional = 0);

  bool has(const std::string& flag) const { return flags_.count(flag) != 0; }
  /// Values given with a flag, empty when absent.
  const std::vector<std::string>& values(const std::string& flag) const;
  std::optional<std::string> value(const std::string& flag) const;
  const std::vector<std::string>& positional() const { return positional_; }

  /// Throws FlagConflict when both flags are present.
  void exclusive(std::string_view query, const std::string& a, const std::string& b) const;

 private:
  std::map<std::string, std::vector<std::string>> flags_;
  std::vector<std::string> positional_;
};

}  // namespace codeq::builtins
