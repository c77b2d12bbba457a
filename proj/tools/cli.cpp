#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bots/bots.hpp"
#include "tcp_server.hpp"

#ifndef BOTS_DATA_DIR
#define BOTS_DATA_DIR "data"
#endif

namespace bots::cli {

namespace {

struct Options {
  std::size_t k = 0, m = 0, depth = 3;
  std::string out_path, instance, profiles, observations, spec, preset, csv, data_dir = BOTS_DATA_DIR, mode = "exhaustive";
  std::uint32_t source = 1, target = 0;
  double depart = 0;
  bool relax = false, paths = false, stdio = false, chain = false;
  std::uint64_t max_prefixes = 10'000'000;
  std::string table = "all";
  std::optional<std::uint16_t> port;
};

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    detail::write_file(path, text);
  }
}

NodeId target_or_last(const Options& o, const Graph& g) {
  return NodeId{o.target ? o.target : static_cast<std::uint32_t>(g.node_count())};
}

int cmd_gen(const Options& o, std::ostream& out) {
  emit(format_instance(generate_grid({o.k, o.m})), o.out_path, out);
  return 0;
}

int cmd_compose(const Options& o, std::ostream& out) {
  CompositeSpec spec;
  if (!o.spec.empty()) {
    spec = load_composite_spec(o.spec);
  } else if (o.preset == "fig3_left") {
    spec = fig3_left_spec();
  } else if (o.preset == "fig3_right") {
    spec = fig3_right_spec();
  } else if (o.preset == "fig4") {
    spec = fig4_spec();
  } else if (o.preset == "chain") {
    spec = chain_spec(o.depth);
  } else {
    throw InvalidArgument("compose needs --spec or --preset fig3_left|fig3_right|fig4|chain");
  }
  emit(format_instance(compose(spec)), o.out_path, out);
  return 0;
}

int cmd_partition(const Options& o, std::ostream& out) {
  const Graph g = load_instance(o.instance);
  const auto p = partition(g, NodeId{o.source});
  for (std::size_t i = 1; i <= p.region_count(); ++i) {
    out << "sigma " << i << ' ' << p.region(i).size();
    for (NodeId v : p.region(i)) out << ' ' << v.value;
    out << '\n';
  }
  out << "bridges";
  for (auto b : find_bridge_regions(p)) out << ' ' << b;
  out << "\nborders";
  for (auto b : choose_borders(p)) out << ' ' << b;
  out << '\n';
  return 0;
}

int cmd_enum(const Options& o, std::ostream& out) {
  const Graph g = load_instance(o.instance);
  const auto p = partition_reachable(g, NodeId{o.source});
  SearchOptions opt;
  opt.relax_same_region = o.relax;
  opt.max_prefixes = o.max_prefixes;
  const auto found = enumerate_shortest_paths(g, p, target_or_last(o, g), opt);
  out << "L " << found.stats.length << "\nB " << found.stats.breadth << "\nLT " << found.stats.loop_times
      << "\nratio " << format_ratio(found.stats.ratio) << '\n';
  if (o.relax) out << "relaxed_probes " << found.stats.relaxed_probes << '\n';
  if (o.paths) {
    for (const Path& path : found.paths) out << to_string(path) << '\n';
  }
  return 0;
}

int cmd_count(const Options& o, std::ostream& out) {
  const Count b = closed_form_breadth(o.k, o.m), lt = closed_form_loop_times(o.k, o.m);
  out << "L " << o.k + o.m - 2 << "\nB " << b.str() << "\nLT " << lt.str() << "\nratio "
      << format_ratio(static_cast<double>(lt) / static_cast<double>(b)) << '\n';
  return 0;
}

DelayProfile profile_or_default(const Options& o) {
  return o.profiles.empty() ? DelayProfile() : load_profile(o.profiles);
}

int cmd_route(const Options& o, std::ostream& out, std::ostream& err) {
  const Graph g = load_instance(o.instance);
  SearchOptions opt;
  opt.max_prefixes = o.max_prefixes;
  const RouteQuery q{NodeId{o.source}, target_or_last(o, g), o.depart, parse_mode(o.mode)};
  const RouteResponse r = compute_route(g, profile_or_default(o), q, opt);
  out << encode_response(r) << '\n';
  if (r.status != RouteStatus::Ok) {
    err << "route: " << r.reason << '\n';
    return 2;
  }
  return 0;
}

int cmd_ingest(const Options& o, std::ostream& out) {
  const auto obs = load_observations(o.observations);
  const DelayProfile next = ingest(profile_or_default(o), obs);
  emit(format_profile(next), o.out_path, out);
  return 0;
}

int cmd_bench(const Options& o, std::ostream& out) {
  std::vector<int> ids;
  if (o.table == "all") {
    ids = {1, 2, 3, 4, 5};
  } else {
    ids.push_back(static_cast<int>(detail::parse_int(o.table, 0)));
  }
  bool ok = true;
  std::ostringstream csv;
  for (int id : ids) {
    const TableReport rep = reproduce_table(id, o.data_dir);
    write_table_text(rep, out);
    std::ostringstream one;
    write_table_csv(rep, one);
    std::string text = one.str();
    if (!csv.str().empty()) text.erase(0, text.find('\n') + 1);  // single header
    csv << text;
    ok = ok && rep.passed();
  }
  if (o.chain) {
    const auto rep = chain_growth_check(2, 6);
    out << "chain growth\n";
    for (const auto& row : rep.rows) {
      out << "N=" << row.depth << " n=" << row.nodes << " stages";
      for (auto e : row.stage_evaluations) out << ' ' << e;
      out << " sum=" << row.staged_sum << " expected=" << chain_expected_sum(row.depth)
          << " B=" << row.breadth.str() << (row.ok ? " MATCH" : " MISMATCH") << '\n';
    }
    out << "linear " << (rep.linear ? "yes" : "no") << '\n';
    ok = ok && rep.passed();
  }
  if (!o.csv.empty()) detail::write_file(o.csv, csv.str());
  return ok ? 0 : 3;
}

int cmd_serve(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
  RouteService service(load_instance(o.instance), profile_or_default(o));
  if (o.stdio) {
    serve_stream(service, in, out);
    return 0;
  }
  if (!o.port) throw InvalidArgument("serve needs --port or --stdio");
  std::atomic<bool> stop{false};
  net::serve_tcp(service, *o.port, stop, [&](std::uint16_t bound) {
    err << "listening on 127.0.0.1:" << bound << std::endl;
  });
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"bots: shortest-path enumeration and time-dependent routing on grid composites"};
  app.require_subcommand(1);
  Options o;

  auto* gen = app.add_subcommand("gen", "write a k x m grid instance");
  gen->add_option("--k", o.k, "columns")->required();
  gen->add_option("--m", o.m, "rows")->required();
  gen->add_option("--out", o.out_path, "output file (stdout if absent)");

  auto* comp = app.add_subcommand("compose", "build a composite instance");
  auto* spec_opt = comp->add_option("--spec", o.spec, "composite spec file");
  comp->add_option("--preset", o.preset, "fig3_left | fig3_right | fig4 | chain")->excludes(spec_opt);
  comp->add_option("--depth", o.depth, "chain depth");
  comp->add_option("--out", o.out_path, "output file (stdout if absent)");

  auto* part = app.add_subcommand("partition", "print the region partition");
  part->add_option("--instance", o.instance)->required();
  part->add_option("--source", o.source);

  auto* en = app.add_subcommand("enum", "enumerate shortest paths");
  en->add_option("--instance", o.instance)->required();
  en->add_option("--source", o.source);
  en->add_option("--target", o.target, "defaults to the highest node id");
  en->add_flag("--relax-same-region", o.relax);
  en->add_flag("--paths", o.paths);
  en->add_option("--max-prefixes", o.max_prefixes);

  auto* cnt = app.add_subcommand("count", "closed-form breadth and loop times");
  cnt->add_option("--k", o.k)->required();
  cnt->add_option("--m", o.m)->required();

  auto* route = app.add_subcommand("route", "top path for one query");
  route->add_option("--instance", o.instance)->required();
  route->add_option("--profiles", o.profiles);
  route->add_option("--source", o.source);
  route->add_option("--target", o.target, "defaults to the highest node id");
  route->add_option("--depart", o.depart);
  route->add_option("--mode", o.mode)->check(CLI::IsMember({"staged", "exhaustive"}));
  route->add_option("--max-prefixes", o.max_prefixes);

  auto* ing = app.add_subcommand("ingest", "apply observations to a profile");
  ing->add_option("--profiles", o.profiles);
  ing->add_option("--observations", o.observations)->required();
  ing->add_option("--out", o.out_path, "output file (stdout if absent)");

  auto* bench = app.add_subcommand("bench", "reproduce the published tables");
  bench->add_option("--table", o.table, "1..5 or all");
  bench->add_option("--csv", o.csv);
  bench->add_option("--data-dir", o.data_dir);
  bench->add_flag("--chain", o.chain, "also run the chain growth check");

  auto* serve = app.add_subcommand("serve", "answer JSON route queries");
  serve->add_option("--instance", o.instance)->required();
  serve->add_option("--profiles", o.profiles);
  auto* port_opt = serve->add_option("--port", o.port);
  serve->add_flag("--stdio", o.stdio)->excludes(port_opt);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*gen) return cmd_gen(o, out);
    if (*comp) return cmd_compose(o, out);
    if (*part) return cmd_partition(o, out);
    if (*en) return cmd_enum(o, out);
    if (*cnt) return cmd_count(o, out);
    if (*route) return cmd_route(o, out, err);
    if (*ing) return cmd_ingest(o, out);
    if (*bench) return cmd_bench(o, out);
    if (*serve) return cmd_serve(o, in, out, err);
  } catch (const std::exception& e) {
    err << app.get_subcommands().front()->get_name() << ": " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace bots::cli
