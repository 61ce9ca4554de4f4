#include "epithresh/oracle_service.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <charconv>
#include <cstring>

namespace epithresh {

namespace {

bool parse_u64(std::string_view tok, std::uint64_t& out) {
  if (tok.empty()) return false;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && ptr == tok.data() + tok.size();
}

std::vector<std::string_view> tokens(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

bool send_all(int fd, std::string_view data) {
  while (!data.empty()) {
    const ssize_t w = ::send(fd, data.data(), data.size(), MSG_NOSIGNAL);
    if (w < 0) {
      if (errno == EINTR) continue;
      return false;
    }
    data.remove_prefix(static_cast<std::size_t>(w));
  }
  return true;
}

}  // namespace

std::string handle_oracle_request(const Graph& g, std::string_view line) {
  const auto tok = tokens(line);
  if (tok.empty()) return "ERR empty-request";
  const std::size_t n = g.node_count();
  if (tok[0] == "N") {
    if (tok.size() != 1) return "ERR bad-request";
    return std::to_string(n);
  }
  if (tok[0] == "DEG") {
    std::uint64_t v = 0;
    if (tok.size() != 2 || !parse_u64(tok[1], v)) return "ERR bad-request";
    if (v >= n) return "ERR unknown-node";
    return std::to_string(g.degree(static_cast<NodeId>(v)));
  }
  if (tok[0] == "NBR") {
    std::uint64_t v = 0;
    std::uint64_t k = 0;
    if (tok.size() != 3 || !parse_u64(tok[1], v) || !parse_u64(tok[2], k)) {
      return "ERR bad-request";
    }
    if (v >= n) return "ERR unknown-node";
    const auto nb = g.neighbors(static_cast<NodeId>(v));
    if (k >= nb.size()) return "ERR out-of-range";
    return std::to_string(nb[k]);
  }
  return "ERR unknown-command";
}

Address parse_address(std::string_view text) {
  Address a;
  std::string_view port_part = text;
  if (const auto colon = text.rfind(':'); colon != std::string_view::npos) {
    if (colon > 0) a.host = std::string(text.substr(0, colon));
    port_part = text.substr(colon + 1);
  }
  std::uint64_t p = 0;
  if (!parse_u64(port_part, p) || p > 65535) {
    throw OracleError("bad address \"" + std::string(text) + "\" (expected host:port)");
  }
  a.port = static_cast<std::uint16_t>(p);
  return a;
}

namespace {

sockaddr_in resolve(const Address& addr) {
  sockaddr_in sa{};
  sa.sin_family = AF_INET;
  sa.sin_port = htons(addr.port);
  if (::inet_pton(AF_INET, addr.host.c_str(), &sa.sin_addr) == 1) return sa;
  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  if (::getaddrinfo(addr.host.c_str(), nullptr, &hints, &res) != 0 || !res) {
    throw OracleError("cannot resolve host " + addr.host);
  }
  sa.sin_addr = reinterpret_cast<sockaddr_in*>(res->ai_addr)->sin_addr;
  ::freeaddrinfo(res);
  return sa;
}

}  // namespace

OracleServer::OracleServer(const Graph& g, Address addr) : graph_(&g) {
  listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (listen_fd_ < 0) throw OracleError(std::string("socket: ") + std::strerror(errno));
  int one = 1;
  ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  sockaddr_in sa = resolve(addr);
  if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&sa), sizeof(sa)) < 0 ||
      ::listen(listen_fd_, 64) < 0) {
    const std::string err = std::strerror(errno);
    ::close(listen_fd_);
    throw OracleError("bind " + addr.host + ":" + std::to_string(addr.port) + ": " + err);
  }
  socklen_t len = sizeof(sa);
  ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&sa), &len);
  port_ = ntohs(sa.sin_port);
  acceptor_ = std::thread([this] { accept_loop(); });
}

OracleServer::~OracleServer() { stop(); }

void OracleServer::stop() {
  if (running_.exchange(false)) {
    ::shutdown(listen_fd_, SHUT_RDWR);
    ::close(listen_fd_);
    {
      std::lock_guard lock(clients_mu_);
      for (int fd : client_fds_) ::shutdown(fd, SHUT_RDWR);
    }
  }
  if (acceptor_.joinable()) acceptor_.join();
  std::vector<std::thread> threads;
  {
    std::lock_guard lock(clients_mu_);
    threads.swap(client_threads_);
  }
  for (auto& t : threads) {
    if (t.joinable()) t.join();
  }
}

void OracleServer::wait() {
  if (acceptor_.joinable()) acceptor_.join();
}

void OracleServer::accept_loop() {
  while (running_.load()) {
    const int fd = ::accept(listen_fd_, nullptr, nullptr);
    if (fd < 0) {
      if (errno == EINTR) continue;
      break;
    }
    int one = 1;
    ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
    std::lock_guard lock(clients_mu_);
    if (!running_.load()) {
      ::close(fd);
      break;
    }
    client_fds_.push_back(fd);
    client_threads_.emplace_back([this, fd] { serve_client(fd); });
  }
}

void OracleServer::serve_client(int fd) {
  std::string buf;
  char chunk[4096];
  bool open = true;
  while (open) {
    const ssize_t got = ::recv(fd, chunk, sizeof(chunk), 0);
    if (got <= 0) {
      if (got < 0 && errno == EINTR) continue;
      break;
    }
    buf.append(chunk, static_cast<std::size_t>(got));
    std::string replies;
    std::size_t start = 0;
    for (std::size_t nl; (nl = buf.find('\n', start)) != std::string::npos; start = nl + 1) {
      replies += handle_oracle_request(*graph_, std::string_view(buf).substr(start, nl - start));
      replies += '\n';
    }
    buf.erase(0, start);
    if (buf.size() > (1u << 16)) {
      replies += "ERR line-too-long\n";
      open = false;
    }
    if (!replies.empty() && !send_all(fd, replies)) break;
  }
  std::lock_guard lock(clients_mu_);
  std::erase(client_fds_, fd);
  ::close(fd);
}

RemoteOracle::RemoteOracle(const Address& addr, std::chrono::milliseconds timeout) {
  fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd_ < 0) throw OracleError(std::string("socket: ") + std::strerror(errno));
  timeval tv{};
  tv.tv_sec = static_cast<time_t>(timeout.count() / 1000);
  tv.tv_usec = static_cast<suseconds_t>((timeout.count() % 1000) * 1000);
  ::setsockopt(fd_, SOL_SOCKET, SO_RCVTIMEO, &tv, sizeof(tv));
  ::setsockopt(fd_, SOL_SOCKET, SO_SNDTIMEO, &tv, sizeof(tv));
  int one = 1;
  ::setsockopt(fd_, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
  sockaddr_in sa = resolve(addr);
  if (::connect(fd_, reinterpret_cast<sockaddr*>(&sa), sizeof(sa)) < 0) {
    const std::string err = std::strerror(errno);
    ::close(fd_);
    throw OracleError("connect " + addr.host + ":" + std::to_string(addr.port) + ": " + err);
  }
}

RemoteOracle::~RemoteOracle() {
  if (fd_ >= 0) ::close(fd_);
}

std::string RemoteOracle::request(const std::string& line) {
  std::lock_guard lock(mu_);
  if (!send_all(fd_, line + "\n")) throw OracleError("send failed: " + std::string(std::strerror(errno)));
  char chunk[4096];
  for (;;) {
    if (const auto nl = buffer_.find('\n'); nl != std::string::npos) {
      std::string reply = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      return reply;
    }
    const ssize_t got = ::recv(fd_, chunk, sizeof(chunk), 0);
    if (got == 0) throw OracleError("oracle connection closed");
    if (got < 0) {
      if (errno == EINTR) continue;
      if (errno == EAGAIN || errno == EWOULDBLOCK) throw OracleError("oracle request timed out");
      throw OracleError(std::string("recv failed: ") + std::strerror(errno));
    }
    buffer_.append(chunk, static_cast<std::size_t>(got));
  }
}

std::uint64_t RemoteOracle::request_number(const std::string& line) {
  const std::string reply = request(line);
  if (reply.rfind("ERR", 0) == 0) throw OracleError("oracle error for \"" + line + "\": " + reply);
  std::uint64_t v = 0;
  if (!parse_u64(reply, v)) throw OracleError("malformed oracle response \"" + reply + "\"");
  return v;
}

std::size_t RemoteOracle::node_count() {
  if (!have_n_) {
    n_ = static_cast<std::size_t>(request_number("N"));
    have_n_ = true;
  }
  return n_;
}

std::uint64_t RemoteOracle::query_degree(NodeId v) {
  return request_number("DEG " + std::to_string(v));
}

NodeId RemoteOracle::query_neighbor(NodeId v, std::uint64_t k) {
  return static_cast<NodeId>(request_number("NBR " + std::to_string(v) + " " + std::to_string(k)));
}

std::unique_ptr<GraphOracle> remote_oracle(const Address& addr) {
  return std::make_unique<RemoteOracle>(addr);
}

}  // namespace epithresh
