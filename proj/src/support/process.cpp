#include "codeq/support/process.hpp"

#include <cerrno>
#include <csignal>
#include <cstring>
#include <fcntl.h>
#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <mutex>

namespace codeq {
namespace {

struct Pipe {
  int read = -1;
  int write = -1;
};

Pipe make_pipe() {
  int fds[2];
  if (::pipe2(fds, O_CLOEXEC) != 0) return {};
  return {fds[0], fds[1]};
}

void close_fd(int& fd) {
  if (fd >= 0) {
    ::close(fd);
    fd = -1;
  }
}

void set_nonblocking(int fd) {
  int flags = ::fcntl(fd, F_GETFL);
  ::fcntl(fd, F_SETFL, flags | O_NONBLOCK);
}

void ignore_sigpipe_once() {
  static std::once_flag flag;
  std::call_once(flag, [] { std::signal(SIGPIPE, SIG_IGN); });
}

}  // namespace

ProcessResult run_process(const ProcessOptions& options) {
  ProcessResult result;
  if (options.argv.empty()) {
    result.spawn_error = "empty command line";
    return result;
  }
  ignore_sigpipe_once();

  Pipe in = make_pipe();
  Pipe out = make_pipe();
  Pipe err = make_pipe();
  Pipe status = make_pipe();
  if (in.read < 0 || out.read < 0 || err.read < 0 || status.read < 0) {
    result.spawn_error = std::string("pipe: ") + std::strerror(errno);
    for (Pipe* p : {&in, &out, &err, &status}) {
      close_fd(p->read);
      close_fd(p->write);
    }
    return result;
  }

  std::vector<char*> argv;
  for (const auto& arg : options.argv) argv.push_back(const_cast<char*>(arg.c_str()));
  argv.push_back(nullptr);

  pid_t pid = ::fork();
  if (pid < 0) {
    result.spawn_error = std::string("fork: ") + std::strerror(errno);
    for (Pipe* p : {&in, &out, &err, &status}) {
      close_fd(p->read);
      close_fd(p->write);
    }
    return result;
  }

  if (pid == 0) {
    std::signal(SIGPIPE, SIG_DFL);
    ::dup2(in.read, STDIN_FILENO);
    ::dup2(out.write, STDOUT_FILENO);
    ::dup2(err.write, STDERR_FILENO);
    if (options.cwd && ::chdir(options.cwd->c_str()) != 0) {
      int code = errno;
      [[maybe_unused]] auto n = ::write(status.write, &code, sizeof code);
      ::_exit(127);
    }
    for (const auto& [key, value] : options.env) ::setenv(key.c_str(), value.c_str(), 1);
    ::execvp(argv[0], argv.data());
    int code = errno;
    [[maybe_unused]] auto n = ::write(status.write, &code, sizeof code);
    ::_exit(127);
  }

  close_fd(in.read);
  close_fd(out.write);
  close_fd(err.write);
  close_fd(status.write);

  int exec_errno = 0;
  if (::read(status.read, &exec_errno, sizeof exec_errno) == sizeof exec_errno) {
    result.spawn_error = options.argv[0] + ": " + std::strerror(exec_errno);
  }
  close_fd(status.read);

  if (options.stdin_data.empty()) close_fd(in.write);
  for (int fd : {in.write, out.read, err.read}) {
    if (fd >= 0) set_nonblocking(fd);
  }

  const auto deadline = std::chrono::steady_clock::now() + options.timeout;
  std::size_t written = 0;
  std::array<char, 65536> buffer{};

  while (out.read >= 0 || err.read >= 0) {
    std::array<pollfd, 3> fds{};
    nfds_t count = 0;
    if (in.write >= 0) fds[count++] = {in.write, POLLOUT, 0};
    if (out.read >= 0) fds[count++] = {out.read, POLLIN, 0};
    if (err.read >= 0) fds[count++] = {err.read, POLLIN, 0};

    auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - std::chrono::steady_clock::now());
    if (remaining.count() <= 0) {
      result.timed_out = true;
      ::kill(pid, SIGKILL);
      break;
    }
    int ready = ::poll(fds.data(), count, static_cast<int>(remaining.count()));
    if (ready < 0) {
      if (errno == EINTR) continue;
      break;
    }

    for (nfds_t i = 0; i < count; ++i) {
      const pollfd& p = fds[i];
      if (p.revents == 0) continue;
      if (p.fd == in.write) {
        if (p.revents & (POLLERR | POLLHUP)) {
          close_fd(in.write);
          continue;
        }
        ssize_t n = ::write(in.write, options.stdin_data.data() + written,
                            options.stdin_data.size() - written);
        if (n > 0) {
          written += static_cast<std::size_t>(n);
          if (written == options.stdin_data.size()) close_fd(in.write);
        } else if (n < 0 && errno != EAGAIN && errno != EINTR) {
          close_fd(in.write);
        }
      } else {
        int& fd = p.fd == out.read ? out.read : err.read;
        std::string& sink = p.fd == out.read ? result.out : result.err;
        ssize_t n = ::read(fd, buffer.data(), buffer.size());
        if (n > 0) {
          sink.append(buffer.data(), static_cast<std::size_t>(n));
        } else if (n == 0 || (errno != EAGAIN && errno != EINTR)) {
          close_fd(fd);
        }
      }
    }
  }

  close_fd(in.write);
  close_fd(out.read);
  close_fd(err.read);

  int wstatus = 0;
  for (;;) {
    pid_t done = ::waitpid(pid, &wstatus, WNOHANG);
    if (done == pid) break;
    if (done < 0 && errno != EINTR) break;
    if (!result.timed_out && std::chrono::steady_clock::now() >= deadline) {
      result.timed_out = true;
      ::kill(pid, SIGKILL);
    }
    ::usleep(2000);
  }
  if (WIFEXITED(wstatus)) {
    result.exit_code = WEXITSTATUS(wstatus);
  } else if (WIFSIGNALED(wstatus)) {
    result.signaled = !result.timed_out;
    result.exit_code = 128 + WTERMSIG(wstatus);
  }
  return result;
}

}  // namespace codeq
