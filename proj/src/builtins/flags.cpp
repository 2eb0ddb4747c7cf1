#include "codeq/builtins/flags.hpp"

#include <cctype>

#include "codeq/support/error.hpp"

namespace codeq::builtins {
namespace {

bool looks_like_flag(const std::string& word) {
  return word.size() >= 2 && word[0] == '-' && std::isalpha(static_cast<unsigned char>(word[1]));
}

}  // namespace

Args Args::parse(std::string_view query, const std::vector<std::string>& args,
                 const std::vector<FlagSpec>& flags, std::size_t max_positional) {
  const std::string q(query);
  Args out;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& word = args[i];
    if (!looks_like_flag(word)) {
      if (out.positional_.size() == max_positional) {
        fail(Errc::InvalidValue, q + ": unexpected argument '" + word + "'");
      }
      out.positional_.push_back(word);
      continue;
    }
    std::string name = word.substr(1);
    const FlagSpec* spec = nullptr;
    for (const auto& f : flags) {
      if (f.name == name) spec = &f;
    }
    if (!spec) fail(Errc::UnknownFlag, q + ": unknown flag " + word);
    if (out.has(name)) fail(Errc::FlagConflict, q + ": " + word + " given twice");
    std::vector<std::string> values;
    for (int k = 0; k < spec->values; ++k) {
      if (i + 1 >= args.size()) {
        fail(Errc::MissingArgument, q + ": " + word + " expects " + std::to_string(spec->values) +
                                        (spec->values == 1 ? " value" : " values"));
      }
      values.push_back(args[++i]);
    }
    out.flags_.emplace(std::move(name), std::move(values));
  }
  return out;
}

const std::vector<std::string>& Args::values(const std::string& flag) const {
  static const std::vector<std::string> none;
  auto it = flags_.find(flag);
  return it == flags_.end() ? none : it->second;
}

std::optional<std::string> Args::value(const std::string& flag) const {
  const auto& v = values(flag);
  if (v.empty()) return std::nullopt;
  return v.front();
}

void Args::exclusive(std::string_view query, const std::string& a, const std::string& b) const {
  if (has(a) && has(b)) {
    fail(Errc::FlagConflict, std::string(query) + ": -" + a + " and -" + b + " cannot be combined");
  }
}

}  // namespace codeq::builtins
