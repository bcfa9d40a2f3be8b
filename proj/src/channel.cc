// src/channel.cc

// Copyright 2026 The halscope Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.


#include "halscope/channel.h"

#include <arpa/inet.h>
#include <cerrno>
#include <csignal>
#include <cstring>
#include <mutex>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <spawn.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <thread>
#include <unistd.h>
#include <vector>

#include "halscope/errors.h"

extern char **environ;

namespace halscope {

namespace {

void IgnoreSigpipeOnce() {
  static std::once_flag flag;
  std::call_once(flag, [] { std::signal(SIGPIPE, SIG_IGN); });
}

std::string ErrnoText() { return std::strerror(errno); }

std::pair<std::string, std::string> SplitHostPort(const std::string &address) {
  auto colon = address.rfind(':');
  if (colon == std::string::npos || colon + 1 == address.size())
    throw Error(Errc::kInvalidConfig, "expected host:port, got " + address);
  std::string host = address.substr(0, colon);
  if (host.empty()) host = "127.0.0.1";
  return {host, address.substr(colon + 1)};
}

}  // namespace

FdLineChannel::FdLineChannel(int read_fd, int write_fd,
                             std::string description, bool is_socket,
                             bool owns_fds)
    : read_fd_(read_fd),
      write_fd_(write_fd),
      description_(std::move(description)),
      is_socket_(is_socket),
      owns_fds_(owns_fds) {
  IgnoreSigpipeOnce();
}

FdLineChannel::~FdLineChannel() { CloseFds(); }

void FdLineChannel::CloseWrite() {
  if (write_fd_ < 0) return;
  if (owns_fds_) {
    if (is_socket_)
      ::shutdown(write_fd_, SHUT_WR);
    else
      ::close(write_fd_);
  }
  if (!is_socket_) write_fd_ = -1;
}

void FdLineChannel::CloseFds() {
  if (owns_fds_) {
    if (read_fd_ >= 0) ::close(read_fd_);
    if (write_fd_ >= 0 && write_fd_ != read_fd_) ::close(write_fd_);
  }
  read_fd_ = write_fd_ = -1;
}

bool FdLineChannel::WriteLine(std::string_view line) {
  if (write_fd_ < 0) return false;
  std::string data(line);
  data.push_back('\n');
  std::size_t off = 0;
  while (off < data.size()) {
    ssize_t n = is_socket_
                    ? ::send(write_fd_, data.data() + off, data.size() - off,
                             MSG_NOSIGNAL)
                    : ::write(write_fd_, data.data() + off, data.size() - off);
    if (n < 0) {
      if (errno == EINTR) continue;
      return false;
    }
    off += static_cast<std::size_t>(n);
  }
  return true;
}

ReadResult FdLineChannel::ReadLine(std::chrono::milliseconds timeout) {
  using Clock = std::chrono::steady_clock;
  const auto deadline = Clock::now() + timeout;
  char chunk[65536];
  for (;;) {
    auto nl = buffer_.find('\n');
    if (nl != std::string::npos) {
      ReadResult r{ReadResult::Status::kLine, buffer_.substr(0, nl)};
      buffer_.erase(0, nl + 1);
      if (!r.line.empty() && r.line.back() == '\r') r.line.pop_back();
      return r;
    }
    if (read_fd_ < 0) return {ReadResult::Status::kEof, {}};
    int wait_ms = -1;
    if (timeout.count() >= 0) {
      auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
          deadline - Clock::now());
      if (left.count() <= 0) return {ReadResult::Status::kTimeout, {}};
      wait_ms = static_cast<int>(left.count());
    }
    pollfd pfd{read_fd_, POLLIN, 0};
    int rc = ::poll(&pfd, 1, wait_ms);
    if (rc < 0) {
      if (errno == EINTR) continue;
      return {ReadResult::Status::kEof, {}};
    }
    if (rc == 0) return {ReadResult::Status::kTimeout, {}};
    ssize_t n = ::read(read_fd_, chunk, sizeof(chunk));
    if (n < 0) {
      if (errno == EINTR || errno == EAGAIN) continue;
      return {ReadResult::Status::kEof, {}};
    }
    if (n == 0) {
      // A trailing unterminated line is dropped with the connection.
      buffer_.clear();
      return {ReadResult::Status::kEof, {}};
    }
    buffer_.append(chunk, static_cast<std::size_t>(n));
  }
}

ChildProcessChannel::Spawned ChildProcessChannel::Spawn(
    const std::string &command) {
  IgnoreSigpipeOnce();
  int to_child[2], from_child[2];
  if (::pipe(to_child) != 0)
    throw Error(Errc::kBackendUnreachable, "pipe: " + ErrnoText());
  if (::pipe(from_child) != 0) {
    ::close(to_child[0]);
    ::close(to_child[1]);
    throw Error(Errc::kBackendUnreachable, "pipe: " + ErrnoText());
  }
  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_adddup2(&actions, to_child[0], STDIN_FILENO);
  posix_spawn_file_actions_adddup2(&actions, from_child[1], STDOUT_FILENO);
  posix_spawn_file_actions_addclose(&actions, to_child[1]);
  posix_spawn_file_actions_addclose(&actions, from_child[0]);
  posix_spawn_file_actions_addclose(&actions, to_child[0]);
  posix_spawn_file_actions_addclose(&actions, from_child[1]);

  // The child must not inherit our ignored SIGPIPE disposition.
  posix_spawnattr_t attr;
  posix_spawnattr_init(&attr);
  sigset_t defaults;
  sigemptyset(&defaults);
  sigaddset(&defaults, SIGPIPE);
  posix_spawnattr_setsigdefault(&attr, &defaults);
  posix_spawnattr_setflags(&attr, POSIX_SPAWN_SETSIGDEF);

  std::string sh = "/bin/sh", dash_c = "-c", cmd = command;
  char *argv[] = {sh.data(), dash_c.data(), cmd.data(), nullptr};
  pid_t pid = 0;
  int rc = posix_spawn(&pid, "/bin/sh", &actions, &attr, argv, environ);
  posix_spawn_file_actions_destroy(&actions);
  posix_spawnattr_destroy(&attr);
  ::close(to_child[0]);
  ::close(from_child[1]);
  if (rc != 0) {
    ::close(to_child[1]);
    ::close(from_child[0]);
    throw Error(Errc::kBackendUnreachable,
                "cannot start '" + command + "': " + std::strerror(rc));
  }
  return {from_child[0], to_child[1], pid};
}

ChildProcessChannel::ChildProcessChannel(const std::string &command)
    : ChildProcessChannel(Spawn(command), command) {}

ChildProcessChannel::ChildProcessChannel(const Spawned &s,
                                         const std::string &command)
    : FdLineChannel(s.read_fd, s.write_fd, "exec:" + command), pid_(s.pid) {}

ChildProcessChannel::~ChildProcessChannel() {
  // Closing stdin asks a well-behaved server to exit; give it a moment.
  CloseWrite();
  int status = 0;
  bool reaped = false;
  for (int i = 0; i < 50 && !reaped; ++i) {
    if (::waitpid(pid_, &status, WNOHANG) == pid_) reaped = true;
    else std::this_thread::sleep_for(std::chrono::milliseconds(10));
  }
  if (!reaped) {
    ::kill(pid_, SIGKILL);
    ::waitpid(pid_, &status, 0);
  }
  CloseFds();
}

std::unique_ptr<LineChannel> SpawnProcessChannel(const std::string &command) {
  return std::make_unique<ChildProcessChannel>(command);
}

std::unique_ptr<LineChannel> ConnectTcpChannel(const std::string &address) {
  auto [host, port] = SplitHostPort(address);
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo *res = nullptr;
  int rc = ::getaddrinfo(host.c_str(), port.c_str(), &hints, &res);
  if (rc != 0)
    throw Error(Errc::kBackendUnreachable,
                "resolve " + address + ": " + gai_strerror(rc));
  int fd = -1;
  std::string last_error = "no addresses";
  for (addrinfo *ai = res; ai; ai = ai->ai_next) {
    fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
    if (fd < 0) {
      last_error = ErrnoText();
      continue;
    }
    if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) break;
    last_error = ErrnoText();
    ::close(fd);
    fd = -1;
  }
  ::freeaddrinfo(res);
  if (fd < 0)
    throw Error(Errc::kBackendUnreachable,
                "connect " + address + ": " + last_error);
  int one = 1;
  ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
  return std::make_unique<FdLineChannel>(fd, fd, "tcp:" + address, true);
}

TcpListener::TcpListener(const std::string &host, int port) {
  IgnoreSigpipeOnce();
  fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd_ < 0) throw Error(Errc::kIoError, "socket: " + ErrnoText());
  int one = 1;
  ::setsockopt(fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(static_cast<uint16_t>(port));
  if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
    ::close(fd_);
    throw Error(Errc::kInvalidConfig, "bad IPv4 listen address: " + host);
  }
  if (::bind(fd_, reinterpret_cast<sockaddr *>(&addr), sizeof(addr)) != 0 ||
      ::listen(fd_, 16) != 0) {
    std::string why = ErrnoText();
    ::close(fd_);
    throw Error(Errc::kIoError, "listen on " + host + ":" +
                                    std::to_string(port) + ": " + why);
  }
  socklen_t len = sizeof(addr);
  ::getsockname(fd_, reinterpret_cast<sockaddr *>(&addr), &len);
  port_ = ntohs(addr.sin_port);
}

TcpListener::~TcpListener() {
  if (fd_ >= 0) ::close(fd_);
}

void TcpListener::Stop() {
  stopping_ = true;
  if (fd_ >= 0) ::shutdown(fd_, SHUT_RDWR);
}

void TcpListener::Serve(
    const std::function<void(LineChannel &)> &on_connection) {
  std::vector<std::thread> workers;
  while (!stopping_) {
    pollfd pfd{fd_, POLLIN, 0};
    int rc = ::poll(&pfd, 1, 200);
    if (rc <= 0) continue;
    int client = ::accept(fd_, nullptr, nullptr);
    if (client < 0) continue;
    int one = 1;
    ::setsockopt(client, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
    workers.emplace_back([client, &on_connection] {
      FdLineChannel channel(client, client, "tcp-client", true);
      try {
        on_connection(channel);
      } catch (const std::exception &) {
        // A broken client must not take the listener down.
      }
    });
  }
  for (auto &t : workers) t.join();
}

}  // namespace halscope
