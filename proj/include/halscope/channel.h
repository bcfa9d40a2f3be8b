// include/halscope/channel.h

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

// Newline-delimited byte streams over POSIX file descriptors: a child
// process's stdin/stdout, or a TCP connection.

#ifndef HALSCOPE_CHANNEL_H_
#define HALSCOPE_CHANNEL_H_

#include <atomic>
#include <chrono>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <sys/types.h>

namespace halscope {

struct ReadResult {
  enum class Status { kLine, kEof, kTimeout };
  Status status = Status::kEof;
  std::string line;
};

class LineChannel {
 public:
  virtual ~LineChannel() = default;
  /// Appends '\n'. Returns false if the peer is gone.
  virtual bool WriteLine(std::string_view line) = 0;
  /// A negative timeout blocks indefinitely.
  virtual ReadResult ReadLine(std::chrono::milliseconds timeout) = 0;
  virtual std::string Describe() const = 0;
};

/// Channel over a pair of descriptors. Owns (closes) them unless told not to.
class FdLineChannel : public LineChannel {
 public:
  FdLineChannel(int read_fd, int write_fd, std::string description,
                bool is_socket = false, bool owns_fds = true);
  ~FdLineChannel() override;
  FdLineChannel(const FdLineChannel &) = delete;
  FdLineChannel &operator=(const FdLineChannel &) = delete;

  bool WriteLine(std::string_view line) override;
  ReadResult ReadLine(std::chrono::milliseconds timeout) override;
  std::string Describe() const override { return description_; }

 protected:
  void CloseFds();
  void CloseWrite();

 private:
  int read_fd_;
  int write_fd_;
  std::string description_;
  bool is_socket_;
  bool owns_fds_;
  std::string buffer_;
};

/// Runs |command| through /bin/sh -c with piped stdin/stdout; stderr is
/// inherited. Throws BackendUnreachable if the process cannot be started.
/// Destruction closes the pipes and reaps the child.
class ChildProcessChannel : public FdLineChannel {
 public:
  explicit ChildProcessChannel(const std::string &command);
  ~ChildProcessChannel() override;

  pid_t pid() const { return pid_; }

 private:
  struct Spawned {
    int read_fd;
    int write_fd;
    pid_t pid;
  };
  ChildProcessChannel(const Spawned &s, const std::string &command);
  static Spawned Spawn(const std::string &command);

  pid_t pid_;
};

std::unique_ptr<LineChannel> SpawnProcessChannel(const std::string &command);

/// |address| is "host:port". Throws BackendUnreachable on failure.
std::unique_ptr<LineChannel> ConnectTcpChannel(const std::string &address);

using ChannelFactory = std::function<std::unique_ptr<LineChannel>()>;

/// Minimal accept loop: each connection is served on its own thread.
class TcpListener {
 public:
  /// Port 0 picks a free port; see port().
  TcpListener(const std::string &host, int port);
  ~TcpListener();
  TcpListener(const TcpListener &) = delete;
  TcpListener &operator=(const TcpListener &) = delete;

  int port() const { return port_; }
  /// Blocks until Stop() is called.
  void Serve(const std::function<void(LineChannel &)> &on_connection);
  void Stop();

 private:
  int fd_ = -1;
  int port_ = 0;
  std::atomic<bool> stopping_{false};
};

}  // namespace halscope

#endif  // HALSCOPE_CHANNEL_H_
