#ifndef UGV_SERVER_HPP_
#define UGV_SERVER_HPP_

// Live station service: advances a Session in real time and speaks the
// newline-delimited JSON protocol with any number of TCP clients. Every
// client receives every delivered telemetry frame; commands from any client
// go straight to the session.

#include <arpa/inet.h>
#include <fcntl.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <atomic>
#include <cerrno>
#include <chrono>
#include <cstring>
#include <functional>
#include <list>
#include <string>
#include <vector>

#include "ugv/errors.hpp"
#include "ugv/station.hpp"
#include "ugv/wire.hpp"

namespace ugv {

class StationServer {
public:
    using Logger = std::function<void(const std::string&)>;

    // Port 0 picks an ephemeral port; see port().
    StationServer(Session& session, std::uint16_t port, Logger log = {}, bool loopback_only = false)
        : session_(session), log_(std::move(log)) {
        listener_ = ::socket(AF_INET, SOCK_STREAM, 0);
        if (listener_ < 0) throw EnvironmentError(std::string("socket: ") + std::strerror(errno));
        int yes = 1;
        ::setsockopt(listener_, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof yes);
        sockaddr_in addr{};
        addr.sin_family = AF_INET;
        addr.sin_addr.s_addr = htonl(loopback_only ? INADDR_LOOPBACK : INADDR_ANY);
        addr.sin_port = htons(port);
        if (::bind(listener_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0 ||
            ::listen(listener_, 16) != 0) {
            const std::string err = std::strerror(errno);
            ::close(listener_);
            throw EnvironmentError("cannot listen on port " + std::to_string(port) + ": " + err);
        }
        set_nonblocking(listener_);
        socklen_t len = sizeof addr;
        ::getsockname(listener_, reinterpret_cast<sockaddr*>(&addr), &len);
        port_ = ntohs(addr.sin_port);
    }

    StationServer(const StationServer&) = delete;
    StationServer& operator=(const StationServer&) = delete;

    ~StationServer() {
        for (auto& c : clients_) ::close(c.fd);
        if (listener_ >= 0) ::close(listener_);
    }

    std::uint16_t port() const noexcept { return port_; }
    std::size_t client_count() const noexcept { return clients_.size(); }

    // Serves until stop becomes true.
    void run(const std::atomic<bool>& stop) {
        using clock = std::chrono::steady_clock;
        const auto tick = std::chrono::duration_cast<clock::duration>(
            std::chrono::duration<double>(session_.config().tick));
        auto next_tick = clock::now() + tick;

        while (!stop.load()) {
            const auto wait = std::chrono::duration_cast<std::chrono::milliseconds>(next_tick - clock::now());
            poll_once(static_cast<int>(std::clamp<std::int64_t>(wait.count(), 0, 50)));

            const auto now = clock::now();
            if (now >= next_tick) {
                if (auto frame = session_.tick()) broadcast(wire::telemetry_json(*frame).dump() + "\n");
                next_tick += tick;
                if (now - next_tick > 100 * tick) next_tick = now + tick;
            }
        }
        for (auto& c : clients_) flush(c);
    }

private:
    struct Client {
        int fd;
        std::uint64_t id;
        std::string inbox;
        std::string outbox;
        bool closed = false;
    };

    static constexpr std::size_t kMaxBacklog = 1 << 20;

    static void set_nonblocking(int fd) { ::fcntl(fd, F_SETFL, ::fcntl(fd, F_GETFL, 0) | O_NONBLOCK); }

    void log(const std::string& line) const {
        if (log_) log_(line);
    }

    void poll_once(int timeout_ms) {
        std::vector<pollfd> fds;
        fds.push_back({listener_, POLLIN, 0});
        for (const auto& c : clients_) {
            fds.push_back({c.fd, static_cast<short>(POLLIN | (c.outbox.empty() ? 0 : POLLOUT)), 0});
        }
        if (::poll(fds.data(), fds.size(), timeout_ms) <= 0) return;

        if (fds[0].revents & POLLIN) accept_clients();
        std::size_t i = 1;
        for (auto& c : clients_) {
            if (i >= fds.size()) break;
            const auto ev = fds[i++].revents;
            if (ev & (POLLIN | POLLHUP | POLLERR)) read_client(c);
            if (!c.closed && (ev & POLLOUT)) flush(c);
        }
        reap();
    }

    void accept_clients() {
        for (;;) {
            const int fd = ::accept(listener_, nullptr, nullptr);
            if (fd < 0) return;
            set_nonblocking(fd);
            int yes = 1;
            ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &yes, sizeof yes);
            clients_.push_back({fd, ++client_ids_, {}, {}});
            log("client " + std::to_string(client_ids_) + " connected");
        }
    }

    void read_client(Client& c) {
        char buf[4096];
        for (;;) {
            const auto n = ::recv(c.fd, buf, sizeof buf, 0);
            if (n > 0) {
                c.inbox.append(buf, static_cast<std::size_t>(n));
                continue;
            }
            if (n == 0 || (errno != EAGAIN && errno != EWOULDBLOCK)) c.closed = true;
            break;
        }
        std::size_t nl;
        while ((nl = c.inbox.find('\n')) != std::string::npos) {
            handle_line(c, c.inbox.substr(0, nl));
            c.inbox.erase(0, nl + 1);
        }
        if (c.inbox.size() > kMaxBacklog) c.closed = true;
    }

    void handle_line(Client& c, const std::string& line) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) return;
        const auto msg = wire::parse_client_line(line);
        if (const auto* cmd = std::get_if<wire::CommandRequest>(&msg)) {
            try {
                const auto seq = session_.submit_command(cmd->command);
                c.outbox += wire::ack_json(seq).dump() + "\n";
            } catch (const SessionError& e) {
                c.outbox += wire::error_json(e.what()).dump() + "\n";
            }
        } else if (std::holds_alternative<wire::ConfigRequest>(msg)) {
            c.outbox += wire::config_json(session_.config()).dump() + "\n";
        } else if (const auto* bad = std::get_if<wire::Malformed>(&msg)) {
            c.outbox += wire::error_json(bad->reason).dump() + "\n";
        }
        flush(c);
    }

    void flush(Client& c) {
        while (!c.outbox.empty() && !c.closed) {
            const auto n = ::send(c.fd, c.outbox.data(), c.outbox.size(), MSG_NOSIGNAL);
            if (n > 0) {
                c.outbox.erase(0, static_cast<std::size_t>(n));
            } else {
                if (n < 0 && (errno == EAGAIN || errno == EWOULDBLOCK)) break;
                c.closed = true;
            }
        }
        if (c.outbox.size() > kMaxBacklog) c.closed = true;
    }

    void broadcast(const std::string& line) {
        for (auto& c : clients_) {
            c.outbox += line;
            flush(c);
        }
        reap();
    }

    void reap() {
        for (auto it = clients_.begin(); it != clients_.end();) {
            if (it->closed) {
                ::close(it->fd);
                log("client " + std::to_string(it->id) + " disconnected");
                it = clients_.erase(it);
            } else {
                ++it;
            }
        }
    }

    Session& session_;
    Logger log_;
    int listener_ = -1;
    std::uint16_t port_ = 0;
    std::list<Client> clients_;
    std::uint64_t client_ids_ = 0;
};

} // namespace ugv

#endif
