#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "harness.hpp"
#include "sizeramsey/bounds.hpp"
#include "sizeramsey/error.hpp"

using namespace sizeramsey;
using namespace sizeramsey::cli;

namespace {

struct Common {
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "json";
  unsigned threads = 0;
  bool timing = false;

  Format fmt() const { return format == "csv" ? Format::csv : Format::json; }
  unsigned worker_count() const {
    if (threads != 0) return threads;
    return std::max(1u, std::thread::hardware_concurrency());
  }
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw PreconditionError("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot read graph file '" + path + "'");
  return read_edge_list(in);
}

// --graph FILE, or one of the named families.
struct GraphSource {
  std::string file;
  std::size_t complete = 0;
  std::size_t cycle = 0;
  std::size_t path = 0;
  bool petersen = false;

  void add(CLI::App* app) {
    app->add_option("--graph", file, "edge-list file");
    app->add_option("--complete", complete, "use K_k");
    app->add_option("--cycle", cycle, "use C_k");
    app->add_option("--path", path, "use P_k");
    app->add_flag("--petersen", petersen, "use the Petersen graph");
  }

  Graph load() const {
    int chosen = !file.empty() + (complete > 0) + (cycle > 0) + (path > 0) + petersen;
    require(chosen == 1,
            "give exactly one of --graph, --complete, --cycle, --path, --petersen");
    if (!file.empty()) return load_graph(file);
    if (complete > 0) return Graph::complete(complete);
    if (cycle > 0) return Graph::cycle(cycle);
    if (path > 0) return Graph::path(path);
    return Graph::petersen();
  }

  Json describe() const {
    if (!file.empty()) return {{"file", file}};
    if (complete > 0) return {{"complete", complete}};
    if (cycle > 0) return {{"cycle", cycle}};
    if (path > 0) return {{"path", path}};
    return {{"petersen", true}};
  }
};

Json result_json(const std::string& command, const Json& config) {
  Json rec = header_json(command, config);
  rec["type"] = "result";
  return rec;
}

Json edge_list_json(const Graph& g) {
  Json edges = Json::array();
  for (const auto& e : g.edges()) edges.push_back({e.u, e.v});
  return {{"n", g.vertex_count()}, {"edges", edges}};
}

ArrowQuery make_query(std::size_t cap, const std::string& target, std::size_t order,
                      bool exact_cycle) {
  require(cap >= 3, "cycle length must be at least 3");
  require(order >= 1, "target order must be at least 1");
  require(target == "path" || target == "clique", "target must be path or clique");
  ArrowQuery q;
  q.red = exact_cycle ? RedFamily::cycle_exact : RedFamily::cycles_at_most;
  q.cycle_length = cap;
  q.blue = target == "path" ? BlueTarget::path : BlueTarget::clique;
  q.target_order = order;
  return q;
}

using Clock = std::chrono::steady_clock;

void add_timing(Json& rec, const Common& common, Clock::time_point start) {
  if (!common.timing) return;
  rec["elapsed_ms"] =
      std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  rec["timestamp"] = static_cast<std::int64_t>(std::time(nullptr));
}

// Single-record commands print one JSON object; CSV flattens scalar fields.
void emit_record(std::ostream& out, const Json& rec, Format format) {
  if (format == Format::json) {
    out << rec.dump() << '\n';
    return;
  }
  std::vector<std::string> keys;
  std::vector<std::string> values;
  for (const auto& [key, value] : rec.items()) {
    if (key == "config") {
      out << "# config=" << value.dump() << '\n';
      continue;
    }
    if (value.is_structured()) continue;
    keys.push_back(key);
    values.push_back(value.is_string() ? value.get<std::string>() : value.dump());
  }
  for (std::size_t i = 0; i < keys.size(); ++i) out << (i ? "," : "") << keys[i];
  out << '\n';
  for (std::size_t i = 0; i < values.size(); ++i) out << (i ? "," : "") << values[i];
  out << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Size-Ramsey laboratory: cycles of bounded length versus paths"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  Common common;
  auto add_common = [&](CLI::App* sub, bool seeded) {
    if (seeded) sub->add_option("--seed", common.seed, "64-bit seed");
    sub->add_option("--out", common.out, "output path (default stdout)");
    sub->add_option("--format", common.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_flag("--timing", common.timing, "add elapsed_ms and timestamp fields");
  };

  // gen
  auto* gen = app.add_subcommand("gen", "emit a random graph as an edge list");
  std::string gen_model = "gnp";
  std::size_t gen_n = 20;
  std::size_t gen_n2 = 0;
  double gen_p = 0.5;
  std::size_t gen_d = 3;
  std::size_t gen_attempts = kDefaultRegularAttempts;
  gen->add_option("--model", gen_model, "gnp | bipartite | regular")
      ->check(CLI::IsMember({"gnp", "bipartite", "regular"}));
  gen->add_option("--n", gen_n, "vertices (first side for bipartite)");
  gen->add_option("--n2", gen_n2, "second side for bipartite (default n)");
  gen->add_option("--p", gen_p, "edge probability");
  gen->add_option("--d", gen_d, "degree for regular");
  gen->add_option("--budget", gen_attempts, "rejection attempts for regular");
  add_common(gen, true);

  // arrow-exact
  auto* arrow = app.add_subcommand("arrow-exact", "decide G -> (C_<=L, P_k or K_k) exhaustively");
  GraphSource arrow_graph;
  arrow_graph.add(arrow);
  std::size_t cap = 3;
  std::size_t order = 2;
  std::string target = "path";
  bool exact_cycle = false;
  std::size_t edge_budget = kDefaultArrowEdgeBudget;
  arrow->add_option("--cap", cap, "cycle length L");
  arrow->add_flag("--exact-cycle", exact_cycle, "red family C_L instead of C_<=L");
  arrow->add_option("--target", target, "path | clique");
  arrow->add_option("--order", order, "vertices of the blue target");
  arrow->add_option("--budget", edge_budget, "maximum edge count");
  arrow->add_option("--threads", common.threads, "workers (0 = all cores)");
  add_common(arrow, false);

  // arrow-expansion
  auto* expand = app.add_subcommand("arrow-expansion", "exhaustive e(S,T) >= cn check");
  GraphSource expand_graph;
  expand_graph.add(expand);
  std::size_t expand_n = 4;
  double expand_c = 1.0;
  std::uint64_t expand_budget = kDefaultExpansionBudget;
  expand->add_option("--n", expand_n, "path order n");
  expand->add_option("--c", expand_c, "expansion constant c");
  expand->add_option("--budget", expand_budget, "maximum (S,T) pairs");
  add_common(expand, false);

  // grow-path
  auto* grow = app.add_subcommand("grow-path", "run the blue path grower");
  GraphSource grow_graph;
  grow_graph.add(grow);
  std::string coloring_hex;
  double blue_p = 0.5;
  GrowerRequest request;
  grow->add_option("--coloring", coloring_hex, "coloring as hex (default: random)");
  grow->add_option("--blue-p", blue_p, "blue probability of the random coloring");
  grow->add_option("--length", request.path_vertices, "target path vertices");
  grow->add_option("--s-min", request.s_min, "certificate size of S");
  grow->add_option("--t-min", request.t_min, "certificate size of T");
  add_common(grow, true);

  // experiments
  ExperimentConfig mc;
  mc.command = "mc-expansion";
  auto* mcx = app.add_subcommand("mc-expansion", "sampled expansion failure frequency");
  mcx->add_option("--model", mc.model, "gnp | pairing");
  mcx->add_option("--c", mc.c, "set fraction c");
  mcx->add_option("--n", mc.n, "path order n");
  mcx->add_option("--d", mc.d, "average degree d (p = d/n) or regular degree");
  mcx->add_option("--pairs", mc.pairs, "(S,T) samples per graph");
  mcx->add_option("--threshold", mc.threshold, "failure when e(S,T) <= threshold");
  mcx->add_option("--z", mc.z, "confidence half-width in standard errors");
  mcx->add_option("--trials", mc.trials, "sampled graphs");
  mcx->add_option("--threads", common.threads, "workers (0 = all cores)");
  add_common(mcx, true);

  ExperimentConfig cc;
  cc.command = "close-cycle";
  cc.n = 16;
  cc.c = 2.21;
  auto* close = app.add_subcommand("close-cycle", "two-round construction of C_n");
  close->add_option("--n", cc.n, "cycle length (divisible by 4)");
  close->add_option("--c", cc.c, "each side has round(c n) vertices");
  close->add_option("--p1", cc.p1, "first-round edge probability");
  close->add_option("--p2", cc.p2, "second-round edge probability");
  close->add_option("--trials", cc.trials, "independent instances");
  close->add_option("--threads", common.threads, "workers (0 = all cores)");
  add_common(close, true);

  // bounds
  auto* bounds = app.add_subcommand("bounds", "d(c), U1, U2, d2(c), U3 over a grid of c");
  double c_min = 0.1;
  double c_max = 3.0;
  double c_step = 0.1;
  bounds->add_option("--c-min", c_min, "first c");
  bounds->add_option("--c-max", c_max, "last c");
  bounds->add_option("--step", c_step, "grid step");
  add_common(bounds, false);

  // table1
  auto* table1 = app.add_subcommand("table1", "reproduce the d(c), U1, U2 table");
  add_common(table1, false);

  // verify-constants
  auto* verify = app.add_subcommand("verify-constants", "check the fixed constants");
  VerifyConstantsConfig vc;
  verify->add_option("--g-a", vc.g_a, "a in g(a, d)");
  verify->add_option("--g-d", vc.g_d, "d in g(a, d)");
  verify->add_option("--lb-a", vc.lb_a, "a of the two-case lower bound");
  verify->add_option("--lb-b", vc.lb_b, "b of the two-case lower bound");
  verify->add_option("--lb-d", vc.lb_d, "d of the two-case lower bound");
  verify->add_option("--c", vc.c, "c of the cycle construction");
  verify->add_option("--d1", vc.d1, "first-round degree");
  verify->add_option("--d2", vc.d2, "second-round degree");
  add_common(verify, false);

  // search-min
  auto* search = app.add_subcommand("search-min", "smallest arrowing graph on few vertices");
  std::size_t max_vertices = 4;
  search->add_option("--cap", cap, "cycle length L");
  search->add_flag("--exact-cycle", exact_cycle, "red family C_L instead of C_<=L");
  search->add_option("--target", target, "path | clique");
  search->add_option("--order", order, "vertices of the blue target");
  search->add_option("--max-vertices", max_vertices, "candidate order cap (<= 8)");
  search->add_option("--budget", edge_budget, "maximum edge count per candidate");
  add_common(search, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const auto start = Clock::now();
  try {
    Output output(common.out);
    std::ostream& out = output.stream();
    const Format format = common.fmt();

    if (*gen) {
      RandomSource rng(common.seed);
      Json config = {{"model", gen_model}, {"n", gen_n}, {"seed", common.seed}};
      Graph g;
      if (gen_model == "gnp") {
        require(gen_p >= 0.0 && gen_p <= 1.0, "p must lie in [0, 1]");
        config["p"] = gen_p;
        g = gnp(gen_n, gen_p, rng);
      } else if (gen_model == "bipartite") {
        require(gen_p >= 0.0 && gen_p <= 1.0, "p must lie in [0, 1]");
        const std::size_t n2 = gen_n2 == 0 ? gen_n : gen_n2;
        config["n2"] = n2;
        config["p"] = gen_p;
        g = bipartite_gnp(gen_n, n2, gen_p, rng).graph;
      } else {
        require(gen_n * gen_d % 2 == 0, "regular graphs need d n even");
        config["d"] = gen_d;
        config["attempts"] = gen_attempts;
        g = random_regular(gen_n, gen_d, rng, gen_attempts);
      }
      if (format == Format::csv) {
        write_edge_list(out, g);
      } else {
        Json rec = header_json("gen", config);
        rec["graph"] = edge_list_json(g);
        add_timing(rec, common, start);
        out << rec.dump() << '\n';
      }
      // The edge-list format has no room for metadata, so files get a sidecar.
      if (!common.out.empty() && format == Format::csv) {
        std::ofstream meta(common.out + ".meta.json", std::ios::binary);
        meta << header_json("gen", config).dump() << '\n';
      }
      return kExitOk;
    }

    if (*arrow) {
      const Graph g = arrow_graph.load();
      const ArrowQuery q = make_query(cap, target, order, exact_cycle);
      const auto verdict = arrows_exact(g, q, edge_budget, common.worker_count());
      Json rec = result_json("arrow-exact",
                             {{"graph", arrow_graph.describe()}, {"budget", edge_budget}});
      rec["query"] = q.describe();
      rec["vertices"] = g.vertex_count();
      rec["edges"] = g.edge_count();
      rec["verdict"] = verdict.arrows;
      rec["witness"] = verdict.counterexample ? verdict.counterexample->to_hex() : "";
      rec["colorings_checked"] = verdict.colorings_checked;
      add_timing(rec, common, start);
      emit_record(out, rec, format);
      return kExitOk;
    }

    if (*expand) {
      const Graph g = expand_graph.load();
      const auto v = arrows_by_expansion(g, expand_n, expand_c, expand_budget);
      Json rec = result_json("arrow-expansion", {{"graph", expand_graph.describe()},
                                                 {"n", expand_n},
                                                 {"c", expand_c},
                                                 {"budget", expand_budget}});
      rec["verdict"] = v.holds;
      rec["set_size"] = v.set_size;
      rec["threshold"] = v.threshold;
      rec["pairs_checked"] = v.pairs_checked;
      if (v.witness) {
        rec["witness_s"] = v.witness->first.members();
        rec["witness_t"] = v.witness->second.members();
        rec["witness_edges"] = v.witness_edges;
      }
      add_timing(rec, common, start);
      emit_record(out, rec, format);
      return kExitOk;
    }

    if (*grow) {
      const Graph g = grow_graph.load();
      RandomSource rng(common.seed);
      const EdgeColoring col = coloring_hex.empty() ? random_coloring(g, blue_p, rng)
                                                    : EdgeColoring::from_hex(g, coloring_hex);
      // Without explicit sizes the grower runs until every vertex is dead.
      if (grow->count("--s-min") + grow->count("--t-min") == 0) request.t_min = g.vertex_count();
      const auto outcome = grow_blue_path(g, col, request);
      Json rec = result_json("grow-path", {{"graph", grow_graph.describe()},
                                           {"seed", common.seed},
                                           {"length", request.path_vertices},
                                           {"s_min", request.s_min},
                                           {"t_min", request.t_min}});
      rec["coloring"] = col.to_hex();
      rec["steps"] = outcome.steps;
      rec["found_path"] = outcome.found_path();
      if (outcome.found_path()) {
        rec["path"] = outcome.path();
      } else {
        const auto& cert = outcome.certificate();
        rec["s"] = cert.s.members();
        rec["t"] = cert.t.members();
        rec["blue_path"] = cert.blue_path;
        rec["certificate_holds"] = certificate_holds(col, cert);
      }
      add_timing(rec, common, start);
      emit_record(out, rec, format);
      return kExitOk;
    }

    if (*mcx || *close) {
      ExperimentConfig cfg = *mcx ? mc : cc;
      cfg.seed = common.seed;
      cfg.threads = common.worker_count();
      cfg.format = format;
      cfg.timing = common.timing;
      auto stream = run_experiment(cfg);
      if (stream.summary) add_timing(*stream.summary, common, start);
      write_stream(out, stream, format);
      return kExitOk;
    }

    if (*bounds) {
      const auto rows = bounds_grid(c_min, c_max, c_step);
      const Json config = {{"c_min", c_min}, {"c_max", c_max}, {"step", c_step}};
      if (format == Format::csv) {
        write_bounds_csv(out, rows, config);
        return kExitOk;
      }
      Json rec = header_json("bounds", config);
      Json list = Json::array();
      for (const auto& r : rows) {
        Json row = {{"c", r.c}};
        row["d_first"] = r.d_first ? Json(*r.d_first) : Json();
        row["u1"] = r.u1 ? Json(*r.u1) : Json();
        row["u2"] = r.u2 ? Json(*r.u2) : Json();
        row["d_second"] = r.d_second ? Json(*r.d_second) : Json();
        row["u3"] = r.u3 ? Json(*r.u3) : Json();
        list.push_back(row);
      }
      rec["rows"] = list;
      const VerifyConstantsConfig defaults;
      const auto report = verify_constants(defaults);
      rec["verification"] = to_json(report, defaults);
      add_timing(rec, common, start);
      out << rec.dump() << '\n';
      return report.all_pass() ? kExitOk : kExitCheckFailed;
    }

    if (*table1) {
      const auto rows = table1_rows();
      const auto bad = table1_mismatches(rows);
      if (format == Format::csv) {
        write_table1_csv(out, rows);
      } else {
        Json rec = table1_json(rows);
        add_timing(rec, common, start);
        out << rec.dump() << '\n';
      }
      for (const auto& line : bad) std::cerr << "mismatch " << line << '\n';
      return bad.empty() ? kExitOk : kExitCheckFailed;
    }

    if (*verify) {
      const auto report = verify_constants(vc);
      Json rec = to_json(report, vc);
      add_timing(rec, common, start);
      out << rec.dump(2) << '\n';
      for (const auto& c : report.checks)
        if (!c.pass) std::cerr << "check failed: " << c.name << '\n';
      return report.all_pass() ? kExitOk : kExitCheckFailed;
    }

    if (*search) {
      const ArrowQuery q = make_query(cap, target, order, exact_cycle);
      const auto result = min_size_ramsey_exact(q, max_vertices, edge_budget);
      Json rec = result_json("search-min", {{"max_vertices", max_vertices},
                                            {"budget", edge_budget}});
      rec["query"] = q.describe();
      rec["found"] = result.found;
      rec["edges"] = result.edges;
      rec["vertex_cap"] = result.vertex_cap;
      rec["candidates_checked"] = result.candidates_checked;
      if (result.found) rec["witness"] = edge_list_json(result.witness);
      add_timing(rec, common, start);
      emit_record(out, rec, format);
      return kExitOk;
    }
  } catch (const PreconditionError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCheckFailed;
  }
  return kExitUsage;
}
