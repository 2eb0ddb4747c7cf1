#include "codeq/engine/context.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include "codeq/lang/parser.hpp"
#include "codeq/lang/printer.hpp"
#include "codeq/support/error.hpp"
#include "codeq/support/text.hpp"

namespace codeq::engine {

namespace fs = std::filesystem;

namespace {

class DirectoryLock {
 public:
  explicit DirectoryLock(const fs::path& dir) {
    fd_ = ::open(dir.c_str(), O_RDONLY | O_DIRECTORY | O_CLOEXEC);
    if (fd_ < 0 || ::flock(fd_, LOCK_EX) != 0) {
      if (fd_ >= 0) ::close(fd_);
      fail(Errc::WriteFailure, "cannot lock " + dir.string());
    }
  }
  ~DirectoryLock() {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
  DirectoryLock(const DirectoryLock&) = delete;
  DirectoryLock& operator=(const DirectoryLock&) = delete;

 private:
  int fd_ = -1;
};

}  // namespace

Workspace::Workspace(fs::path root, lang::Program program)
    : root_(std::move(root)), program_(std::move(program)) {}

Workspace Workspace::open(const fs::path& root) {
  return Workspace(root, lang::parse_program(lang::read_corpus(root)));
}

void Workspace::commit(lang::Program updated) {
  written_.clear();
  if (!write_back_ || root_.empty()) {
    program_ = std::move(updated);
    return;
  }

  const auto& before = program_.roots();
  const auto& after = updated.roots();
  auto printed = lang::pretty_print(updated);
  std::vector<std::size_t> changed;
  for (std::size_t i = 0; i < after.size(); ++i) {
    if (i >= before.size() || before[i] != after[i]) changed.push_back(i);
  }
  if (changed.empty()) {
    program_ = std::move(updated);
    return;
  }

  DirectoryLock lock(root_);
  std::vector<std::pair<fs::path, fs::path>> staged;  // temp, final
  auto discard = [&] {
    std::error_code ec;
    for (const auto& [temp, _] : staged) fs::remove(temp, ec);
  };
  std::string suffix = ".codeq-" + std::to_string(::getpid()) + ".tmp";
  for (std::size_t i : changed) {
    fs::path target = root_ / printed[i].path;
    fs::path temp = target;
    temp += suffix;
    try {
      text::write_file(temp, printed[i].text);
    } catch (const Error&) {
      discard();
      throw;
    }
    staged.emplace_back(temp, target);
  }
  for (const auto& [temp, target] : staged) {
    std::error_code ec;
    fs::rename(temp, target, ec);
    if (ec) {
      discard();
      fail(Errc::WriteFailure, "cannot replace " + target.string() + ": " + ec.message());
    }
  }
  // Rewritten files are re-parsed so spans describe the text now on disk.
  std::vector<lang::NodePtr> roots = after;
  for (std::size_t i : changed) {
    written_.push_back(printed[i].path);
    roots[i] = lang::parse_source(printed[i].path, printed[i].text);
  }
  program_ = lang::Program::from_roots(std::move(roots));
}

void ExecutionContext::set_focus(std::optional<NodeId> node) {
  if (node) program().resolve(*node);
  focus_ = std::move(node);
}

}  // namespace codeq::engine
