#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "bwm/pcs.hpp"

namespace httplib {
class Server;
}

namespace bwm::service {

struct Options {
  /// Sensitivity requests above this many candidates get 413.
  std::uint64_t max_candidates = 1'000'000;
  int default_scale_max = kSaatyScaleMax;
  /// Directory served at "/" when set.
  std::optional<std::string> static_dir;
};

struct Response {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

// Handlers are pure: the same request always yields the same response.

Response handle_solve(std::string_view body, const Options& opt = {});
Response handle_sensitivity(std::string_view body, const Options& opt = {});
Response handle_aggregate(std::string_view body, const Options& opt = {});
Response handle_ci(const std::optional<std::string>& n, const std::optional<std::string>& abw);
Response handle_health();

void install_routes(httplib::Server& server, const Options& opt);

/// Blocks until the server stops. Returns false if the port cannot be bound.
bool serve(const std::string& host, int port, const Options& opt, std::ostream& log);

}  // namespace bwm::service
