#pragma once

#include <atomic>
#include <cstdint>
#include <functional>

#include "bots/service.hpp"

namespace bots::net {

/// Serves line-delimited JSON on 127.0.0.1:`port`, one thread per connection,
/// until `stop` becomes true. Port 0 picks a free port; `on_listening`
/// receives the bound port once the socket accepts connections.
void serve_tcp(RouteService& service, std::uint16_t port, const std::atomic<bool>& stop,
               const std::function<void(std::uint16_t)>& on_listening = {});

/// Sends one request line to 127.0.0.1:`port` and returns the response line.
std::string request_tcp(std::uint16_t port, const std::string& line);

}  // namespace bots::net
