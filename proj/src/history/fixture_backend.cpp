#include <algorithm>
#include <charconv>
#include <unordered_map>

#include "codeq/history/history.hpp"
#include "codeq/support/error.hpp"
#include "codeq/support/text.hpp"

namespace codeq::history {

namespace fs = std::filesystem;

namespace {

std::string unescape(std::string_view s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\\' && i + 1 < s.size()) {
      char c = s[++i];
      out += c == 'n' ? '\n' : c;
    } else {
      out += s[i];
    }
  }
  return out;
}

class FixtureHistory final : public HistoryProvider {
 public:
  explicit FixtureHistory(fs::path dir) : dir_(std::move(dir)) {
    auto lines = text::split_lines(text::read_file(dir_ / "log.txt"));
    std::size_t number = 0;
    for (const auto& raw : lines) {
      if (text::trim(raw).empty()) continue;
      // The message is everything between the second and the last bar, so it
      // may itself contain bars.
      std::vector<std::string> fields;
      std::size_t bar1 = raw.find('|');
      std::size_t bar2 = bar1 == std::string::npos ? bar1 : raw.find('|', bar1 + 1);
      std::size_t bar3 = raw.rfind('|');
      if (bar2 != std::string::npos && bar3 > bar2) {
        fields = {raw.substr(0, bar1), raw.substr(bar1 + 1, bar2 - bar1 - 1),
                  raw.substr(bar2 + 1, bar3 - bar2 - 1), raw.substr(bar3 + 1)};
      }
      if (fields.size() != 4 || fields[0].empty()) {
        fail(Errc::NoRepository, (dir_ / "log.txt").string() + ": malformed log line '" + raw + "'");
      }
      Commit c{fields[0], unescape(fields[1]), unescape(fields[2]), std::nullopt};
      if (!fields[3].empty()) c.parent = fields[3];
      if (!index_.emplace(c.id, ++number).second) {
        fail(Errc::NoRepository, "duplicate commit id " + c.id + " in fixture log");
      }
      oldest_first_.push_back(std::move(c));
    }
    if (fs::exists(dir_ / "refs.txt")) {
      for (const auto& raw : text::split_lines(text::read_file(dir_ / "refs.txt"))) {
        auto fields = text::split(raw, '|');
        if (fields.size() == 2) branches_[fields[0]] = fields[1];
      }
    }
  }

  std::string backend() const override { return "fixture"; }

  std::vector<Commit> commits() const override {
    std::vector<Commit> out;
    if (oldest_first_.empty()) return out;
    // First-parent walk from the newest line, like the git backend.
    std::optional<std::string> current = oldest_first_.back().id;
    while (current) {
      auto it = index_.find(*current);
      if (it == index_.end()) break;
      const Commit& c = oldest_first_[it->second - 1];
      out.push_back(c);
      current = c.parent;
    }
    return out;
  }

  Commit resolve(const std::string& ref) const override {
    std::string base = ref;
    std::size_t suffix = ref.find_first_of("~^");
    if (suffix != std::string::npos) base = ref.substr(0, suffix);
    Commit c = resolve_base(base, ref);
    while (suffix != std::string::npos && suffix < ref.size()) {
      char op = ref[suffix++];
      std::size_t end = ref.find_first_of("~^", suffix);
      std::string digits = ref.substr(suffix, end == std::string::npos ? std::string::npos : end - suffix);
      long steps = 1;
      if (!digits.empty()) {
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), steps);
        if (ec != std::errc() || ptr != digits.data() + digits.size() || steps < 0 ||
            (op == '^' && steps > 1)) {
          fail(Errc::UnknownRef, "unknown revision '" + ref + "'");
        }
      }
      for (long i = 0; i < steps; ++i) {
        if (!c.parent) fail(Errc::UnknownRef, "unknown revision '" + ref + "'");
        c = by_id(*c.parent, ref);
      }
      suffix = end;
    }
    return c;
  }

  std::map<std::string, std::string> tree(const Commit& commit) const override {
    return read_all(snapshot_dir(commit));
  }

  std::map<std::string, std::string> read(const Commit& commit,
                                          const std::vector<std::string>& paths) const override {
    std::map<std::string, std::string> out;
    fs::path root = snapshot_dir(commit);
    for (const auto& p : paths) out[p] = text::read_file(root / p);
    return out;
  }

 private:
  fs::path snapshot_dir(const Commit& commit) const {
    auto it = index_.find(commit.id);
    if (it == index_.end()) fail(Errc::UnknownRef, "unknown commit " + commit.id);
    return dir_ / std::to_string(it->second);
  }

  static std::map<std::string, std::string> read_all(const fs::path& root) {
    std::map<std::string, std::string> out;
    if (!fs::exists(root)) return out;
    for (const auto& e : fs::recursive_directory_iterator(root)) {
      if (!e.is_regular_file()) continue;
      out[fs::relative(e.path(), root).generic_string()] = text::read_file(e.path());
    }
    return out;
  }

  Commit by_id(const std::string& id, const std::string& ref) const {
    auto it = index_.find(id);
    if (it == index_.end()) fail(Errc::UnknownRef, "unknown revision '" + ref + "'");
    return oldest_first_[it->second - 1];
  }

  Commit resolve_base(const std::string& base, const std::string& ref) const {
    if (oldest_first_.empty()) fail(Errc::NoRepository, "history has no commits");
    if (base == "HEAD" || base.empty()) return oldest_first_.back();
    if (auto it = branches_.find(base); it != branches_.end()) return by_id(it->second, ref);
    if (index_.count(base)) return by_id(base, ref);
    if (base.size() >= 4) {
      const Commit* match = nullptr;
      for (const auto& c : oldest_first_) {
        if (c.id.compare(0, base.size(), base) != 0) continue;
        if (match) fail(Errc::AmbiguousPrefix, "short commit id " + base + " is ambiguous");
        match = &c;
      }
      if (match) return *match;
    }
    fail(Errc::UnknownRef, "unknown revision '" + ref + "'");
  }

  fs::path dir_;
  std::vector<Commit> oldest_first_;
  std::unordered_map<std::string, std::size_t> index_;  // id -> 1-based position
  std::map<std::string, std::string> branches_;
};

}  // namespace

std::unique_ptr<HistoryProvider> open_fixture_history(const fs::path& dir) {
  if (fs::exists(dir / "log.txt")) return std::make_unique<FixtureHistory>(dir);
  if (fs::exists(dir / "history" / "log.txt")) {
    return std::make_unique<FixtureHistory>(dir / "history");
  }
  fail(Errc::NoRepository, "no fixture history (log.txt) in " + dir.string());
}

}  // namespace codeq::history
