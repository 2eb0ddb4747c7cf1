#include <mutex>

#include "codeq/history/history.hpp"
#include "codeq/support/error.hpp"
#include "codeq/support/process.hpp"
#include "codeq/support/text.hpp"

namespace codeq::history {

namespace fs = std::filesystem;

namespace {

constexpr char kField = '\x1f';
constexpr char kRecord = '\x1e';
const char* const kLogFormat = "--format=%H%x1f%an%x1f%P%x1f%B%x1e";

class GitHistory final : public HistoryProvider {
 public:
  explicit GitHistory(fs::path dir) : dir_(std::move(dir)) {
    auto r = git({"rev-parse", "--show-toplevel"});
    if (!r.ok()) fail(Errc::NoRepository, "not a git repository: " + dir_.string());
    root_ = std::string(text::trim(r.out));
  }

  std::string backend() const override { return "git"; }

  std::vector<Commit> commits() const override {
    auto head = git({"rev-parse", "--verify", "--quiet", "HEAD^{commit}"});
    if (!head.ok()) return {};
    auto r = checked({"log", "--first-parent", kLogFormat, "HEAD"});
    return parse_log(r.out);
  }

  Commit resolve(const std::string& ref) const override {
    if (ref.empty() || ref.front() == '-' || ref.find('\n') != std::string::npos) {
      fail(Errc::UnknownRef, "unknown revision '" + ref + "'");
    }
    auto r = git({"rev-parse", "--verify", ref + "^{commit}"});
    if (!r.ok()) {
      if (r.err.find("ambiguous") != std::string::npos) {
        fail(Errc::AmbiguousPrefix, "short commit id " + ref + " is ambiguous");
      }
      if (!git({"rev-parse", "--verify", "--quiet", "HEAD^{commit}"}).ok()) {
        fail(Errc::NoRepository, "repository has no commits");
      }
      fail(Errc::UnknownRef, "unknown revision '" + ref + "'");
    }
    std::string id(text::trim(r.out));
    auto log = checked({"log", "-1", kLogFormat, id});
    auto parsed = parse_log(log.out);
    if (parsed.empty()) fail(Errc::UnknownRef, "unknown revision '" + ref + "'");
    return parsed.front();
  }

  std::map<std::string, std::string> tree(const Commit& commit) const override {
    auto r = checked({"ls-tree", "-r", "-z", "--full-tree", commit.id});
    std::map<std::string, std::string> out;
    for (const auto& entry : text::split(r.out, '\0')) {
      // <mode> SP <type> SP <object> TAB <path>
      auto tab = entry.find('\t');
      if (tab == std::string::npos) continue;
      auto fields = text::split(entry.substr(0, tab), ' ');
      if (fields.size() != 3 || fields[1] != "blob") continue;
      out[entry.substr(tab + 1)] = fields[2];
    }
    return out;
  }

  std::map<std::string, std::string> read(const Commit& commit,
                                          const std::vector<std::string>& paths) const override {
    std::map<std::string, std::string> out;
    if (paths.empty()) return out;
    auto blobs = tree(commit);
    std::string request;
    std::vector<std::string> order;
    for (const auto& p : paths) {
      auto it = blobs.find(p);
      if (it == blobs.end()) fail(Errc::FileNotFound, p + " does not exist in " + commit.id);
      request += it->second + "\n";
      order.push_back(p);
    }
    auto r = checked({"cat-file", "--batch"}, request);
    // Each answer: "<object> blob <size>\n<contents>\n".
    std::size_t pos = 0;
    for (const auto& p : order) {
      auto eol = r.out.find('\n', pos);
      if (eol == std::string::npos) fail(Errc::Io, "truncated git cat-file output");
      auto header = text::split(r.out.substr(pos, eol - pos), ' ');
      if (header.size() != 3) fail(Errc::Io, "unexpected git cat-file output");
      std::size_t size = std::stoull(header[2]);
      out[p] = r.out.substr(eol + 1, size);
      pos = eol + 1 + size + 1;
    }
    return out;
  }

 private:
  ProcessResult git(std::vector<std::string> args, std::string input = {}) const {
    std::lock_guard lock(mutex_);
    ProcessOptions options;
    options.argv = {"git", "-C", dir_.string(), "-c", "core.quotepath=off"};
    options.argv.insert(options.argv.end(), args.begin(), args.end());
    options.stdin_data = std::move(input);
    options.env = {{"GIT_TERMINAL_PROMPT", "0"}, {"LC_ALL", "C"}};
    auto r = run_process(options);
    if (r.spawn_error) fail(Errc::NoRepository, "cannot run git: " + *r.spawn_error);
    return r;
  }

  ProcessResult checked(std::vector<std::string> args, std::string input = {}) const {
    auto r = git(args, std::move(input));
    if (!r.ok()) {
      fail(Errc::Io, "git " + args.front() + " failed: " + std::string(text::trim(r.err)));
    }
    return r;
  }

  static std::vector<Commit> parse_log(const std::string& out) {
    std::vector<Commit> commits;
    for (auto record : text::split(out, kRecord)) {
      auto start = record.find_first_not_of('\n');
      if (start == std::string::npos) continue;
      record.erase(0, start);
      auto fields = text::split(record, kField);
      if (fields.size() != 4) continue;
      Commit c{fields[0], fields[1], fields[3], std::nullopt};
      while (!c.message.empty() && c.message.back() == '\n') c.message.pop_back();
      auto parents = text::split(fields[2], ' ');
      if (!parents.empty() && !parents.front().empty()) c.parent = parents.front();
      commits.push_back(std::move(c));
    }
    return commits;
  }

  fs::path dir_;
  std::string root_;
  mutable std::mutex mutex_;
};

}  // namespace

std::unique_ptr<HistoryProvider> open_git_history(const fs::path& dir) {
  if (!fs::is_directory(dir)) fail(Errc::NoRepository, "no such directory: " + dir.string());
  return std::make_unique<GitHistory>(dir);
}

}  // namespace codeq::history
