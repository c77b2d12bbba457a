#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "bots/error.hpp"
#include "bots/graph.hpp"
#include "bots/instance_io.hpp"
#include "bots/search.hpp"

namespace bots {

using Seconds = double;

/// Pass time of one street, or blocked (an infinite delay).
struct Delay {
  Seconds seconds = 0;
  bool blocked = false;

  static constexpr Delay of(Seconds s) { return Delay{s, false}; }
  static constexpr Delay closed() { return Delay{0, true}; }

  friend constexpr bool operator==(const Delay&, const Delay&) = default;
};

inline std::string format_seconds(Seconds s) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, s);
  return std::string(buf, res.ptr);
}

inline std::string to_string(const Delay& d) { return d.blocked ? "blocked" : format_seconds(d.seconds); }

/// Periodic, frame-keyed delay table. A timestamp t falls in frame
/// floor((t mod period) / frame_width); lookups fall back from a per-frame
/// entry to a per-arc wildcard to the profile default.
class DelayProfile {
 public:
  DelayProfile() = default;

  DelayProfile(Seconds frame_width, Seconds period, Delay default_delay = Delay::of(60)) {
    if (!(frame_width > 0) || !(period > 0) || !std::isfinite(period)) {
      throw InvalidArgument("frame width and period must be positive");
    }
    const double frames = period / frame_width;
    if (std::abs(frames - std::round(frames)) > 1e-9 * frames || std::round(frames) < 1) {
      throw InvalidArgument("period must be a positive multiple of the frame width");
    }
    frame_width_ = frame_width;
    period_ = period;
    frames_ = static_cast<std::size_t>(std::llround(frames));
    set_default(default_delay);
  }

  static DelayProfile constant(Seconds delay, Seconds frame_width = 900, Seconds period = 86400) {
    return DelayProfile(frame_width, period, Delay::of(delay));
  }

  Seconds frame_width() const { return frame_width_; }
  Seconds period() const { return period_; }
  std::size_t frame_count() const { return frames_; }
  Delay default_delay() const { return default_; }

  std::size_t frame_of(Seconds t) const {
    double in_period = std::fmod(t, period_);
    if (in_period < 0) in_period += period_;
    auto f = static_cast<std::size_t>(std::floor(in_period / frame_width_));
    return f >= frames_ ? frames_ - 1 : f;
  }

  Delay lookup_frame(Arc arc, std::size_t frame) const {
    if (auto it = entries_.find({arc, frame}); it != entries_.end()) return it->second;
    if (auto it = arc_default_.find(arc); it != arc_default_.end()) return it->second;
    return default_;
  }

  Delay lookup(Arc arc, Seconds t) const { return lookup_frame(arc, frame_of(t)); }

  void set_default(Delay d) {
    validate(d);
    default_ = d;
  }
  /// Wildcard for every frame of `arc`; clears that arc's per-frame entries.
  void set_arc_delay(Arc arc, Delay d) {
    validate(d);
    arc_default_[arc] = d;
    std::erase_if(entries_, [&](const auto& kv) { return kv.first.first == arc; });
  }
  void set_entry(Arc arc, std::size_t frame, Delay d) {
    validate(d);
    if (frame >= frames_) {
      throw InvalidArgument("frame " + std::to_string(frame) + " outside 0.." + std::to_string(frames_ - 1));
    }
    entries_[{arc, frame}] = d;
  }

  const std::map<Arc, Delay>& arc_delays() const { return arc_default_; }
  const std::map<std::pair<Arc, std::size_t>, Delay>& entries() const { return entries_; }

  friend bool operator==(const DelayProfile&, const DelayProfile&) = default;

 private:
  static void validate(Delay d) {
    if (!d.blocked && !(d.seconds >= 0 && std::isfinite(d.seconds))) {
      throw InvalidArgument("delays must be finite and nonnegative");
    }
  }

  Seconds frame_width_ = 900;
  Seconds period_ = 86400;
  std::size_t frames_ = 96;
  Delay default_ = Delay::of(60);
  std::map<Arc, Delay> arc_default_;
  std::map<std::pair<Arc, std::size_t>, Delay> entries_;
};

inline Delay segment_delay(const DelayProfile& prof, Arc arc, Seconds t) { return prof.lookup(arc, t); }

/// Timestamps along a path: marks[i] is the arrival at node i+1, so
/// marks.size() equals the path length.
struct RouteTiming {
  Path path;
  Seconds depart = 0;
  std::vector<Seconds> marks;
  Seconds total = 0;

  Seconds arrival() const { return marks.empty() ? depart : marks.back(); }
};

namespace detail {

// Marks by T_i = T_(i-1) + delay(arc_i, T_(i-1)); the blocked arc on failure.
inline std::optional<Arc> accumulate(const DelayProfile& prof, const std::vector<NodeId>& nodes,
                                     Seconds depart, std::vector<Seconds>& marks) {
  marks.clear();
  Seconds now = depart;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const Arc arc{nodes[i], nodes[i + 1]};
    const Delay d = prof.lookup(arc, now);
    if (d.blocked) return arc;
    now += d.seconds;
    marks.push_back(now);
  }
  return std::nullopt;
}

}  // namespace detail

/// Evaluates each segment at its own departure timestamp. Throws
/// PathInfeasible naming the first arc that is blocked when entered.
inline RouteTiming accumulate_time(const DelayProfile& prof, const Path& path, Seconds depart) {
  RouteTiming r;
  r.path = path;
  r.depart = depart;
  if (auto blocked = detail::accumulate(prof, path.nodes, depart, r.marks)) {
    const Seconds at = r.marks.empty() ? depart : r.marks.back();
    throw PathInfeasible("arc " + to_string(*blocked) + " is blocked at t=" + format_seconds(at));
  }
  r.total = r.arrival() - depart;
  return r;
}

struct Observation {
  Seconds at = 0;
  Arc arc;
  Delay payload;
};

/// New profile with each observation written into the frame containing its
/// timestamp; later observations win.
inline DelayProfile ingest(const DelayProfile& prof, const std::vector<Observation>& obs) {
  DelayProfile next = prof;
  for (const Observation& o : obs) next.set_entry(o.arc, prof.frame_of(o.at), o.payload);
  return next;
}

struct FifoViolation {
  Arc arc;
  Seconds boundary = 0;  // start of the later frame
  Delay before;
  Delay after;

  friend bool operator==(const FifoViolation&, const FifoViolation&) = default;
};

namespace detail {

// Departing just before the boundary arrives later than departing at it.
inline bool overtakes(Delay before, Delay after) {
  if (after.blocked) return false;
  return before.blocked || before.seconds > after.seconds;
}

inline std::set<std::size_t> changing_frames(const DelayProfile& prof, Arc arc) {
  std::set<std::size_t> frames;
  const std::size_t n = prof.frame_count();
  auto lo = prof.entries().lower_bound({arc, 0});
  for (auto it = lo; it != prof.entries().end() && it->first.first == arc; ++it) {
    const std::size_t f = it->first.second;
    frames.insert(f);                  // boundary entering f
    frames.insert((f + 1) % n);        // boundary leaving f
  }
  return frames;
}

}  // namespace detail

/// Frame boundaries where departing later would arrive earlier. Without a
/// window every boundary of the period is checked, the wrap from the last
/// frame back to frame 0 included (reported at t = period). With a window
/// only boundaries in (from, to] are checked, reported as absolute times.
inline std::vector<FifoViolation> check_fifo(const DelayProfile& prof, const std::vector<Arc>& arcs,
                                             std::optional<std::pair<Seconds, Seconds>> window = {}) {
  std::vector<FifoViolation> out;
  const std::size_t n = prof.frame_count();
  const Seconds w = prof.frame_width();
  for (const Arc& arc : arcs) {
    const auto frames = detail::changing_frames(prof, arc);
    if (frames.empty()) continue;
    if (!window) {
      for (std::size_t f : frames) {
        const Delay before = prof.lookup_frame(arc, (f + n - 1) % n);
        const Delay after = prof.lookup_frame(arc, f);
        if (detail::overtakes(before, after)) {
          out.push_back({arc, f == 0 ? prof.period() : static_cast<Seconds>(f) * w, before, after});
        }
      }
      continue;
    }
    const auto [from, to] = *window;
    for (auto j = static_cast<long long>(std::floor(from / w)) + 1; static_cast<Seconds>(j) * w <= to; ++j) {
      const Seconds boundary = static_cast<Seconds>(j) * w;
      const std::size_t f = prof.frame_of(boundary);
      if (!frames.contains(f)) continue;
      const Delay before = prof.lookup_frame(arc, (f + n - 1) % n);
      const Delay after = prof.lookup_frame(arc, f);
      if (detail::overtakes(before, after)) out.push_back({arc, boundary, before, after});
    }
  }
  return out;
}

/// Checks every arc of `g`.
inline std::vector<FifoViolation> check_fifo(const DelayProfile& prof, const Graph& g,
                                             std::optional<std::pair<Seconds, Seconds>> window = {}) {
  return check_fifo(prof, std::vector<Arc>(g.relations().begin(), g.relations().end()), window);
}

// ---------------------------------------------------------------------------
// Text formats

namespace detail {

inline Seconds parse_seconds(const std::string& word, std::size_t line_no) {
  double v = 0;
  auto res = std::from_chars(word.data(), word.data() + word.size(), v);
  if (res.ec != std::errc{} || res.ptr != word.data() + word.size() || !std::isfinite(v)) {
    throw ParseError("line " + std::to_string(line_no) + ": expected seconds, got '" + word + "'");
  }
  return v;
}

inline Delay parse_delay(const std::string& word, std::size_t line_no) {
  if (word == "blocked") return Delay::closed();
  const Seconds s = parse_seconds(word, line_no);
  if (s < 0) throw ParseError("line " + std::to_string(line_no) + ": negative delay");
  return Delay::of(s);
}

}  // namespace detail

/// Profile text:
///
///     frame_width <s>
///     period <s>
///     default <delay>
///     <u> <v> <frame> <delay>      delay is seconds or "blocked"
///     <u> <v> * <delay>            every frame of the arc
///
/// Missing headers keep 900 s frames, a 86400 s period and a 60 s default.
inline DelayProfile parse_profile(std::string_view text) {
  std::istringstream in{std::string(text)};
  Seconds frame_width = 900, period = 86400;
  Delay def = Delay::of(60);
  struct Line {
    Arc arc;
    std::optional<long long> frame;
    Delay delay;
    std::size_t line_no;
  };
  std::vector<Line> lines;
  std::size_t line_no = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    const auto w = detail::split_words(detail::strip_comment(raw));
    if (w.empty()) continue;
    if (w[0] == "frame_width" && w.size() == 2) {
      frame_width = detail::parse_seconds(w[1], line_no);
    } else if (w[0] == "period" && w.size() == 2) {
      period = detail::parse_seconds(w[1], line_no);
    } else if (w[0] == "default" && w.size() == 2) {
      def = detail::parse_delay(w[1], line_no);
    } else if (w.size() == 4) {
      Line l{Arc{detail::parse_node(w[0], line_no), detail::parse_node(w[1], line_no)}, std::nullopt,
             detail::parse_delay(w[3], line_no), line_no};
      if (w[2] != "*") {
        const long long f = detail::parse_int(w[2], line_no);
        if (f < 0) throw ParseError("line " + std::to_string(line_no) + ": negative frame index");
        l.frame = f;
      }
      lines.push_back(l);
    } else {
      throw ParseError("line " + std::to_string(line_no) + ": malformed line '" + raw + "'");
    }
  }
  DelayProfile prof(frame_width, period, def);
  // wildcards first so explicit frames refine them regardless of line order
  for (const Line& l : lines) {
    if (!l.frame) prof.set_arc_delay(l.arc, l.delay);
  }
  for (const Line& l : lines) {
    if (!l.frame) continue;
    if (static_cast<std::size_t>(*l.frame) >= prof.frame_count()) {
      throw ParseError("line " + std::to_string(l.line_no) + ": frame index beyond the period");
    }
    prof.set_entry(l.arc, static_cast<std::size_t>(*l.frame), l.delay);
  }
  return prof;
}

inline std::string format_profile(const DelayProfile& prof) {
  std::ostringstream out;
  out << "frame_width " << format_seconds(prof.frame_width()) << '\n'
      << "period " << format_seconds(prof.period()) << '\n'
      << "default " << to_string(prof.default_delay()) << '\n';
  for (const auto& [arc, d] : prof.arc_delays()) {
    out << arc.from.value << ' ' << arc.to.value << " * " << to_string(d) << '\n';
  }
  for (const auto& [key, d] : prof.entries()) {
    out << key.first.from.value << ' ' << key.first.to.value << ' ' << key.second << ' ' << to_string(d)
        << '\n';
  }
  return out.str();
}

/// Observation text: one `<t> <u> <v> <delay|blocked>` per line.
inline std::vector<Observation> parse_observations(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<Observation> obs;
  std::size_t line_no = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    const auto w = detail::split_words(detail::strip_comment(raw));
    if (w.empty()) continue;
    if (w.size() != 4) throw ParseError("line " + std::to_string(line_no) + ": expected 't u v delay'");
    obs.push_back({detail::parse_seconds(w[0], line_no),
                   Arc{detail::parse_node(w[1], line_no), detail::parse_node(w[2], line_no)},
                   detail::parse_delay(w[3], line_no)});
  }
  return obs;
}

inline DelayProfile load_profile(const std::filesystem::path& path) {
  try {
    return parse_profile(detail::read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

inline void save_profile(const DelayProfile& prof, const std::filesystem::path& path) {
  detail::write_file(path, format_profile(prof));
}

inline std::vector<Observation> load_observations(const std::filesystem::path& path) {
  try {
    return parse_observations(detail::read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

}  // namespace bots
