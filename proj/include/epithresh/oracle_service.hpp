#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "epithresh/graph.hpp"
#include "epithresh/walker.hpp"

namespace epithresh {

/// Text line protocol, one LF-terminated request per line:
///   "N"         -> "<n>"
///   "DEG <v>"   -> "<d>"
///   "NBR <v> <k>" -> "<u>"
/// Failures answer "ERR <reason>" and keep the connection open.
std::string handle_oracle_request(const Graph& g, std::string_view line);

struct Address {
  std::string host = "127.0.0.1";
  std::uint16_t port = 0;
};

/// "host:port" or ":port" or "port".
Address parse_address(std::string_view text);

/// TCP server for the oracle protocol. Each client connection is served on its
/// own thread; the graph must outlive the server.
class OracleServer {
 public:
  OracleServer(const Graph& g, Address addr);
  ~OracleServer();
  OracleServer(const OracleServer&) = delete;
  OracleServer& operator=(const OracleServer&) = delete;

  /// Port actually bound (resolves port 0).
  std::uint16_t port() const { return port_; }
  void stop();
  /// Block until stop() is called from another thread.
  void wait();

 private:
  void accept_loop();
  void serve_client(int fd);

  const Graph* graph_;
  int listen_fd_ = -1;
  std::uint16_t port_ = 0;
  std::atomic<bool> running_{true};
  std::thread acceptor_;
  std::mutex clients_mu_;
  std::vector<int> client_fds_;
  std::vector<std::thread> client_threads_;
};

/// Client side of the protocol, one connection per oracle.
class RemoteOracle final : public GraphOracle {
 public:
  explicit RemoteOracle(const Address& addr,
                        std::chrono::milliseconds timeout = std::chrono::milliseconds(5000));
  ~RemoteOracle() override;
  RemoteOracle(const RemoteOracle&) = delete;
  RemoteOracle& operator=(const RemoteOracle&) = delete;

  std::size_t node_count() override;

 protected:
  std::uint64_t query_degree(NodeId v) override;
  NodeId query_neighbor(NodeId v, std::uint64_t k) override;

 private:
  std::string request(const std::string& line);
  std::uint64_t request_number(const std::string& line);

  int fd_ = -1;
  std::string buffer_;
  std::size_t n_ = 0;
  bool have_n_ = false;
  std::mutex mu_;
};

std::unique_ptr<GraphOracle> remote_oracle(const Address& addr);

}  // namespace epithresh
