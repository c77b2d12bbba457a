#pragma once

#include <cstdint>
#include <istream>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "bots/delay.hpp"
#include "bots/error.hpp"
#include "bots/graph.hpp"
#include "bots/partition.hpp"
#include "bots/search.hpp"
#include "bots/top_path.hpp"

namespace bots {

enum class RouteMode { Staged, Exhaustive };

inline std::string to_string(RouteMode m) { return m == RouteMode::Staged ? "staged" : "exhaustive"; }

inline RouteMode parse_mode(std::string_view s) {
  if (s == "staged") return RouteMode::Staged;
  if (s == "exhaustive") return RouteMode::Exhaustive;
  throw InvalidArgument("mode must be staged or exhaustive, got '" + std::string(s) + "'");
}

struct RouteQuery {
  NodeId source;
  NodeId target;
  Seconds depart = 0;
  RouteMode mode = RouteMode::Exhaustive;
};

enum class RouteStatus { Ok, NoRoute, Error };

inline std::string to_string(RouteStatus s) {
  switch (s) {
    case RouteStatus::Ok: return "OK";
    case RouteStatus::NoRoute: return "NO_ROUTE";
    case RouteStatus::Error: return "ERROR";
  }
  return "ERROR";
}

struct RouteResponse {
  RouteStatus status = RouteStatus::Error;
  std::vector<NodeId> path;
  std::vector<Seconds> marks;
  Seconds total = 0;
  std::optional<RouteMode> engine;
  std::string reason;
};

/// Top path for one query. Failures become NO_ROUTE (unreachable target,
/// everything blocked) or ERROR responses; nothing is thrown.
inline RouteResponse compute_route(const Graph& g, const DelayProfile& prof, const RouteQuery& q,
                                   const SearchOptions& opt = {}) {
  RouteResponse r;
  r.engine = q.mode;
  try {
    if (!g.contains(q.source)) throw UnknownNode("unknown source " + to_string(q.source));
    if (!g.contains(q.target)) throw UnknownNode("unknown target " + to_string(q.target));
    const RegionPartition p = partition_reachable(g, q.source);
    if (!p.contains(q.target)) {
      throw Unreachable("target " + to_string(q.target) + " is unreachable from " + to_string(q.source));
    }
    RouteTiming t;
    if (q.mode == RouteMode::Exhaustive) {
      t = top_path_exhaustive(g, p, prof, q.target, q.depart, opt);
    } else {
      const auto blocks = decompose_blocks(p, choose_borders(p, p.region_of(q.target)));
      t = top_path_staged(g, p, blocks, prof, q.target, q.depart, opt).timing;
    }
    r.status = RouteStatus::Ok;
    r.path = t.path.nodes;
    r.marks = t.marks;
    r.total = t.total;
  } catch (const Unreachable& e) {
    r.status = RouteStatus::NoRoute;
    r.reason = e.what();
  } catch (const NoRoute& e) {
    r.status = RouteStatus::NoRoute;
    r.reason = e.what();
  } catch (const std::exception& e) {
    r.status = RouteStatus::Error;
    r.reason = e.what();
  }
  return r;
}

// ---------------------------------------------------------------------------
// Wire format: one JSON object per line.

using Json = nlohmann::ordered_json;

inline std::string encode_response(const RouteResponse& r) {
  Json j;
  j["status"] = to_string(r.status);
  Json path = Json::array();
  for (NodeId v : r.path) path.push_back(v.value);
  j["path"] = std::move(path);
  j["marks"] = r.marks;
  if (r.status == RouteStatus::Ok) {
    j["total"] = r.total;
  } else {
    j["total"] = nullptr;
  }
  if (r.engine) {
    j["engine"] = to_string(*r.engine);
  } else {
    j["engine"] = nullptr;
  }
  if (r.status != RouteStatus::Ok) j["reason"] = r.reason;
  return j.dump();
}

struct IngestRequest {
  std::vector<Observation> observations;
};

using Request = std::variant<RouteQuery, IngestRequest>;

namespace detail {

inline NodeId json_node(const Json& j, const char* field) {
  if (!j.contains(field)) throw ParseError(std::string("missing field '") + field + "'");
  const Json& v = j.at(field);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 1 || v.get<std::int64_t>() > 0xffffffffLL) {
    throw ParseError(std::string("field '") + field + "' must be a positive node id");
  }
  return NodeId{static_cast<std::uint32_t>(v.get<std::int64_t>())};
}

inline Seconds json_seconds(const Json& j, const char* field) {
  const Json& v = j.at(field);
  if (!v.is_number()) throw ParseError(std::string("field '") + field + "' must be a number");
  return v.get<double>();
}

}  // namespace detail

/// Route queries carry source/target[/depart/mode]; ingestion requests carry
/// an "observations" array. Unknown fields are ignored.
inline Request decode_request(std::string_view line) {
  Json j;
  try {
    j = Json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("request must be a JSON object");
  if (j.contains("observations")) {
    const Json& arr = j.at("observations");
    if (!arr.is_array()) throw ParseError("'observations' must be an array");
    IngestRequest req;
    for (const Json& o : arr) {
      if (!o.is_object()) throw ParseError("observation must be an object");
      Observation obs;
      if (!o.contains("t")) throw ParseError("observation missing 't'");
      obs.at = detail::json_seconds(o, "t");
      obs.arc = Arc{detail::json_node(o, "u"), detail::json_node(o, "v")};
      const bool blocked = o.contains("blocked") && o.at("blocked").is_boolean() && o.at("blocked").get<bool>();
      if (blocked) {
        obs.payload = Delay::closed();
      } else {
        if (!o.contains("delay")) throw ParseError("observation needs 'delay' or 'blocked'");
        const Seconds d = detail::json_seconds(o, "delay");
        if (d < 0) throw ParseError("observation delay must be nonnegative");
        obs.payload = Delay::of(d);
      }
      req.observations.push_back(obs);
    }
    return req;
  }
  RouteQuery q;
  q.source = detail::json_node(j, "source");
  q.target = detail::json_node(j, "target");
  if (j.contains("depart")) q.depart = detail::json_seconds(j, "depart");
  if (j.contains("mode")) {
    if (!j.at("mode").is_string()) throw ParseError("field 'mode' must be a string");
    q.mode = parse_mode(j.at("mode").get<std::string>());
  }
  return q;
}

/// One hosted graph and its current delay profile. Queries take a snapshot of
/// the profile pointer; ingestion builds the next profile off to the side and
/// swaps it in, so a query never mixes two versions.
class RouteService {
 public:
  RouteService(Graph g, DelayProfile prof, SearchOptions opt = {})
      : graph_(std::move(g)), opt_(opt), profile_(std::make_shared<const DelayProfile>(std::move(prof))) {}

  const Graph& graph() const { return graph_; }

  std::shared_ptr<const DelayProfile> profile() const {
    std::lock_guard lock(swap_mu_);
    return profile_;
  }

  std::uint64_t version() const {
    std::lock_guard lock(swap_mu_);
    return version_;
  }

  RouteResponse route(const RouteQuery& q) const { return compute_route(graph_, *profile(), q, opt_); }

  void ingest(const std::vector<Observation>& obs) {
    std::lock_guard serial(ingest_mu_);
    auto next = std::make_shared<const DelayProfile>(bots::ingest(*profile(), obs));
    std::lock_guard lock(swap_mu_);
    profile_ = std::move(next);
    ++version_;
  }

  /// Answers one request line with one response line (no newline).
  std::string handle(std::string_view line) {
    Request req;
    try {
      req = decode_request(line);
    } catch (const std::exception& e) {
      RouteResponse r;
      r.reason = e.what();
      return encode_response(r);
    }
    if (auto* q = std::get_if<RouteQuery>(&req)) return encode_response(route(*q));
    const auto& obs = std::get<IngestRequest>(req).observations;
    try {
      ingest(obs);
    } catch (const std::exception& e) {
      RouteResponse r;
      r.reason = e.what();
      return encode_response(r);
    }
    Json j;
    j["status"] = "OK";
    j["ingested"] = obs.size();
    return j.dump();
  }

 private:
  Graph graph_;
  SearchOptions opt_;
  mutable std::mutex swap_mu_;
  std::mutex ingest_mu_;
  std::shared_ptr<const DelayProfile> profile_;
  std::uint64_t version_ = 0;
};

/// Line-delimited request/response loop; blank lines are skipped.
inline void serve_stream(RouteService& service, std::istream& in, std::ostream& out) {
  for (std::string line; std::getline(in, line);) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out << service.handle(line) << '\n';
    out.flush();
  }
}

}  // namespace bots
