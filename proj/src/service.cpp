#include "bwm/service.hpp"

#include <functional>

#include "bwm/consistency.hpp"
#include "bwm/io.hpp"

// after Eigen: <resolv.h> defines _res
#include <httplib.h>

namespace bwm::service {

namespace {

using io::Json;

Response envelope(int status, Json payload, bool ok) {
  Json j;
  j["ok"] = ok;
  j[ok ? "result" : "error"] = std::move(payload);
  return {status, j.dump(), "application/json"};
}

Response success(Json result) { return envelope(200, std::move(result), true); }

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedJson: return 400;
    case ErrorCode::SearchSpaceTooLarge: return 413;
    default: return 422;
  }
}

Response failure(const Error& e) { return envelope(status_for(e.code()), io::error_to_json(e), false); }

Response guarded(const std::function<Response()>& f) {
  try {
    return f();
  } catch (const Error& e) {
    return failure(e);
  } catch (const std::exception& e) {
    return envelope(500, {{"code", "Internal"}, {"message", e.what()}}, false);
  }
}

Json warnings_json(const std::vector<Warning>& ws) {
  Json a = Json::array();
  for (const auto& w : ws) a.push_back({{"field", w.field}, {"message", w.message}});
  return a;
}

Response bad_query(const std::string& field, const std::string& message) {
  return envelope(400, {{"code", "SchemaViolation"}, {"message", message}, {"field", field}}, false);
}

std::optional<double> number(const std::string& s) {
  std::size_t used = 0;
  try {
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  return std::nullopt;
}

}  // namespace

Response handle_solve(std::string_view body, const Options& opt) {
  return guarded([&] {
    const auto v = io::pcs_from_json(io::parse_json(body), opt.default_scale_max);
    const auto table = compute_epsilons(v.pcs);
    const auto sol = solve_analytical(v.pcs, table);
    Json r = io::pcs_to_json(v.pcs);
    r["solution"] = io::solution_to_json(v.pcs, sol);
    r["epsilon_table"] = io::epsilon_table_to_json(v.pcs, table);
    r["warnings"] = warnings_json(v.warnings);
    return success(std::move(r));
  });
}

Response handle_sensitivity(std::string_view body, const Options& opt) {
  return guarded([&] {
    const Json doc = io::parse_json(body);
    const auto v = io::pcs_from_json(doc, opt.default_scale_max);
    const auto it = doc.find("mode");
    if (it == doc.end() || !it->is_string())
      throw Error(ErrorCode::SchemaViolation, "mode: required, one of worst, best, both", {"mode"});
    const auto mode = parse_vary_mode(it->get<std::string>());
    if (!mode) throw Error(ErrorCode::SchemaViolation, "mode: must be worst, best or both", {"mode"});
    EnumerationOptions eo;
    eo.max_candidates = opt.max_candidates;
    if (const auto d = doc.find("diagnose"); d != doc.end() && d->is_boolean()) eo.diagnose = d->get<bool>();
    const auto cls = enumerate_equivalent({v.pcs, *mode, v.pcs.scale_max()}, eo);
    return success(io::equivalence_to_json(cls, eo.diagnose));
  });
}

Response handle_aggregate(std::string_view body, const Options& opt) {
  return guarded([&] {
    const auto doc = io::parse_study(body, opt.default_scale_max);
    Json r = io::aggregation_to_json(solve_study(doc.study));
    r["warnings"] = warnings_json(doc.warnings);
    return success(std::move(r));
  });
}

Response handle_ci(const std::optional<std::string>& n, const std::optional<std::string>& abw) {
  if (!n) return bad_query("n", "query parameter n is required");
  if (!abw) return bad_query("abw", "query parameter abw is required");
  const auto nv = number(*n), av = number(*abw);
  if (!nv || *nv != static_cast<double>(static_cast<long>(*nv)))
    return bad_query("n", "n must be an integer");
  if (!av || *av < 1) return bad_query("abw", "abw must be a number >= 1");
  return guarded([&] { return success(consistency_index<double>(static_cast<Index>(*nv), *av)); });
}

Response handle_health() { return {200, "ok", "text/plain"}; }

void install_routes(httplib::Server& server, const Options& opt) {
  const auto reply = [](httplib::Response& res, const Response& r) {
    res.status = r.status;
    res.set_content(r.body, r.content_type.c_str());
  };
  server.Post("/api/solve", [=](const httplib::Request& req, httplib::Response& res) {
    reply(res, handle_solve(req.body, opt));
  });
  server.Post("/api/sensitivity", [=](const httplib::Request& req, httplib::Response& res) {
    reply(res, handle_sensitivity(req.body, opt));
  });
  server.Post("/api/aggregate", [=](const httplib::Request& req, httplib::Response& res) {
    reply(res, handle_aggregate(req.body, opt));
  });
  server.Get("/api/ci", [=](const httplib::Request& req, httplib::Response& res) {
    const auto param = [&](const char* key) -> std::optional<std::string> {
      if (!req.has_param(key)) return std::nullopt;
      return req.get_param_value(key);
    };
    reply(res, handle_ci(param("n"), param("abw")));
  });
  server.Get("/healthz", [=](const httplib::Request&, httplib::Response& res) { reply(res, handle_health()); });
  if (opt.static_dir) server.set_mount_point("/", *opt.static_dir);
}

bool serve(const std::string& host, int port, const Options& opt, std::ostream& log) {
  httplib::Server server;
  install_routes(server, opt);
  if (!server.bind_to_port(host, port)) return false;
  log << "listening on http://" << host << ":" << port << std::endl;
  return server.listen_after_bind();
}

}  // namespace bwm::service
