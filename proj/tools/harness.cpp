#include "harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include "sizeramsey/bounds.hpp"
#include "sizeramsey/error.hpp"

namespace sizeramsey::cli {

std::string format_fixed(double value, int decimals) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed,
                                 decimals);
  if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
  return std::string(buf, end);
}

Json header_json(const std::string& command, const Json& config) {
  Json h;
  h["type"] = "header";
  h["tool"] = "sizeramsey";
  h["version"] = kVersion;
  h["command"] = command;
  h["config"] = config;
  return h;
}

// ------------------------------------------------------------------ table 1

Table1Row table1_row(double c) {
  Table1Row row;
  row.c = c;
  row.d_root = solve_d_first(c);
  // Published values round the root up at the second decimal.
  row.d_printed = std::ceil(row.d_root * 100.0 - 1e-7) / 100.0;
  row.u1 = u1(c);
  row.u2 = u2(c);
  return row;
}

std::vector<Table1Row> table1_rows() {
  std::vector<Table1Row> rows;
  for (const auto& e : kTable1Expected) rows.push_back(table1_row(e.c));
  return rows;
}

std::vector<std::string> table1_mismatches(const std::vector<Table1Row>& rows) {
  std::vector<std::string> out;
  if (rows.size() != kTable1Expected.size())
    out.push_back("expected " + std::to_string(kTable1Expected.size()) + " rows, got " +
                  std::to_string(rows.size()));
  for (std::size_t i = 0; i < std::min(rows.size(), kTable1Expected.size()); ++i) {
    const auto& got = rows[i];
    const auto& want = kTable1Expected[i];
    const std::string at = "c=" + format_fixed(want.c, 1) + ": ";
    if (std::abs(got.c - want.c) > 1e-12) out.push_back(at + "row order differs");
    if (std::abs(got.d_printed - want.d) > kTable1Tolerance + 1e-12)
      out.push_back(at + "d(c) " + format_fixed(got.d_printed, 2) + " != " +
                    format_fixed(want.d, 2));
    if (got.u1 != want.u1)
      out.push_back(at + "U1 " + std::to_string(got.u1) + " != " + std::to_string(want.u1));
    if (got.u2 != want.u2)
      out.push_back(at + "U2 " + std::to_string(got.u2) + " != " + std::to_string(want.u2));
  }
  return out;
}

void write_table1_csv(std::ostream& out, const std::vector<Table1Row>& rows) {
  out << "# sizeramsey " << kVersion << " table1\n";
  out << "c,d,u1,u2,d_root\n";
  for (const auto& r : rows)
    out << format_fixed(r.c, 1) << ',' << format_fixed(r.d_printed, 2) << ',' << r.u1 << ','
        << r.u2 << ',' << format_fixed(r.d_root, 6) << '\n';
}

namespace {

double parse_double(const std::string& s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw PreconditionError("not a number: '" + s + "'");
  return v;
}

long parse_long(const std::string& s) {
  long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw PreconditionError("not an integer: '" + s + "'");
  return v;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

std::vector<Table1Row> read_table1_csv(std::istream& in) {
  std::vector<Table1Row> rows;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != "c,d,u1,u2,d_root") throw PreconditionError("unexpected table1 header");
      header_seen = true;
      continue;
    }
    auto cells = split_csv(line);
    if (cells.size() != 5) throw PreconditionError("table1 row needs 5 cells: " + line);
    rows.push_back({parse_double(cells[0]), parse_double(cells[4]), parse_double(cells[1]),
                    parse_long(cells[2]), parse_long(cells[3])});
  }
  return rows;
}

Json table1_json(const std::vector<Table1Row>& rows) {
  Json out = header_json("table1", Json::object());
  out["type"] = "report";
  Json list = Json::array();
  for (const auto& r : rows)
    list.push_back({{"c", r.c}, {"d", r.d_printed}, {"d_root", r.d_root}, {"u1", r.u1},
                    {"u2", r.u2}});
  out["rows"] = list;
  auto bad = table1_mismatches(rows);
  out["pass"] = bad.empty();
  out["mismatches"] = bad;
  return out;
}

// ------------------------------------------------------- verify-constants

bool VerifyReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

Check check_regular_profile(const VerifyConstantsConfig& cfg) {
  Check check{"regular_pairing_profile", false, Json::object()};
  const double g_end = g_ad(cfg.g_a, cfg.g_d);
  std::vector<double> grid;
  const auto steps = static_cast<long>(std::llround(cfg.g_a / cfg.g_grid_step));
  for (long k = 1; k <= steps; ++k) grid.push_back(static_cast<double>(k) * cfg.g_grid_step);
  const bool increasing =
      nondecreasing_on(grid, [&](double a) { return g_ad(a, cfg.g_d); });
  const double b = b0(cfg.g_a, cfg.g_d);
  const double h = cfg.fd_step;
  const double slope =
      (f_abd(cfg.g_a, b + h, cfg.g_d) - f_abd(cfg.g_a, b - h, cfg.g_d)) / (2.0 * h);
  check.pass = g_end < cfg.g_margin && increasing && std::abs(slope) < cfg.fd_tolerance;
  check.details = {{"a", cfg.g_a},
                   {"d", cfg.g_d},
                   {"b0", b},
                   {"g", g_end},
                   {"g_margin", cfg.g_margin},
                   {"g_nondecreasing_on_grid", increasing},
                   {"grid_points", grid.size()},
                   {"df_db_central_difference", slope},
                   {"df_db_tolerance", cfg.fd_tolerance}};
  return check;
}

Check check_lower_bound_constants(const VerifyConstantsConfig& cfg) {
  Check check{"lower_bound_constants", false, Json::object()};
  const auto coef = thm53_coefficients(cfg.lb_a, cfg.lb_b, cfg.lb_d);
  check.pass = coef.case1 > cfg.case1_target && coef.case2 > cfg.case2_target;
  check.details = {{"a", cfg.lb_a},         {"b", cfg.lb_b},
                   {"d", cfg.lb_d},         {"case1", coef.case1},
                   {"case1_target", cfg.case1_target}, {"case2", coef.case2},
                   {"case2_target", cfg.case2_target}};
  return check;
}

Check check_cycle_closing(const VerifyConstantsConfig& cfg) {
  Check check{"cycle_closing_feasibility", false, Json::object()};
  const auto rep = sec6_feasibility(cfg.c, cfg.d1, cfg.d2);
  check.pass = rep.feasible() && rep.objective < cfg.objective_max;
  check.details = {{"c", cfg.c},
                   {"d1", cfg.d1},
                   {"d2", cfg.d2},
                   {"constraint1", rep.constraint1},
                   {"constraint2", rep.constraint2},
                   {"objective", rep.objective},
                   {"objective_max", cfg.objective_max}};
  return check;
}

VerifyReport verify_constants(const VerifyConstantsConfig& cfg) {
  VerifyReport report;
  for (auto* fn : {&check_regular_profile, &check_lower_bound_constants, &check_cycle_closing}) {
    try {
      report.checks.push_back(fn(cfg));
    } catch (const std::exception& e) {
      report.checks.push_back({"error", false, {{"message", e.what()}}});
    }
  }
  return report;
}

Json to_json(const VerifyReport& report, const VerifyConstantsConfig& cfg) {
  Json config = {{"g_a", cfg.g_a},   {"g_d", cfg.g_d}, {"lb_a", cfg.lb_a}, {"lb_b", cfg.lb_b},
                 {"lb_d", cfg.lb_d}, {"c", cfg.c},     {"d1", cfg.d1},     {"d2", cfg.d2}};
  Json out = header_json("verify-constants", config);
  out["type"] = "report";
  Json checks = Json::array();
  for (const auto& c : report.checks)
    checks.push_back({{"name", c.name}, {"pass", c.pass}, {"details", c.details}});
  out["checks"] = checks;
  out["pass"] = report.all_pass();
  return out;
}

// ------------------------------------------------------------ bounds grid

std::vector<BoundsRow> bounds_grid(double c_min, double c_max, double step) {
  require(c_min > 0.0 && c_max >= c_min && step > 0.0,
          "bounds grid needs 0 < c_min <= c_max and step > 0");
  std::vector<BoundsRow> rows;
  const auto count = static_cast<long>(std::floor((c_max - c_min) / step + 1e-9));
  for (long k = 0; k <= count; ++k) {
    // Snap to the step's decimal grid so printed c values are exact.
    double c = std::round((c_min + static_cast<double>(k) * step) * 1e9) / 1e9;
    BoundsRow row;
    row.c = c;
    row.d_first = solve_d_first(c);
    row.u1 = u1(c);
    if (c <= 1.0 + 1e-12) row.u2 = u2(std::min(c, 1.0));
    if (c > 1.0 + 1e-12) {
      row.d_second = d_second(c);
      row.u3 = u3(c);
    }
    rows.push_back(row);
  }
  return rows;
}

void write_bounds_csv(std::ostream& out, const std::vector<BoundsRow>& rows,
                      const Json& config) {
  out << "# sizeramsey " << kVersion << " bounds config=" << config.dump() << '\n';
  out << "c,d_first,u1,u2,d_second,u3\n";
  auto opt = [](const auto& v, int decimals) -> std::string {
    if (!v) return "";
    if constexpr (std::is_same_v<std::decay_t<decltype(*v)>, long>)
      return std::to_string(*v);
    else
      return format_fixed(*v, decimals);
  };
  for (const auto& r : rows)
    out << format_fixed(r.c, 4) << ',' << opt(r.d_first, 6) << ',' << opt(r.u1, 0) << ','
        << opt(r.u2, 0) << ',' << opt(r.d_second, 6) << ',' << opt(r.u3, 6) << '\n';
}

// ------------------------------------------------------------ experiments

void ExperimentConfig::validate() const {
  require(command == "mc-expansion" || command == "close-cycle",
          "unknown experiment '" + command + "'");
  require(threads >= 1, "threads must be at least 1");
  if (command == "mc-expansion") {
    require(c > 0.0, "mc-expansion needs c > 0");
    require(n >= 1, "mc-expansion needs n >= 1");
    require(model == "gnp" || model == "pairing", "model must be gnp or pairing");
    require(pairs >= 1, "pairs per graph must be at least 1");
    if (model == "gnp") {
      require(d >= 0.0 && d <= static_cast<double>(n), "gnp needs 0 <= d <= n (p = d/n)");
    } else {
      require(d >= 1.0 && std::abs(d - std::round(d)) < 1e-12,
              "pairing model needs an integral degree d >= 1");
      const auto vertices = static_cast<std::size_t>(std::llround((c + 1.0) * static_cast<double>(n)));
      require((static_cast<std::size_t>(std::llround(d)) * vertices) % 2 == 0,
              "pairing model needs d (c+1)n even");
    }
    require(std::llround(c * static_cast<double>(n) / 2.0) >= 1, "cn/2 must be at least 1");
  } else {
    require(n >= 4 && n % 4 == 0, "close-cycle needs n divisible by 4");
    require(p1 >= 0.0 && p1 <= 1.0 && p2 >= 0.0 && p2 <= 1.0,
            "close-cycle probabilities must lie in [0, 1]");
    require(std::llround(c * static_cast<double>(n)) * 2 >= static_cast<long long>(3 * n),
            "close-cycle needs sides of at least 3n/2 vertices (c >= 3/2)");
  }
}

Json ExperimentConfig::to_json() const {
  Json j = {{"command", command}, {"seed", seed}, {"trials", trials}};
  if (command == "mc-expansion") {
    j["model"] = model;
    j["c"] = c;
    j["n"] = n;
    j["d"] = d;
    j["pairs"] = pairs;
    j["threshold"] = threshold ? *threshold : c * static_cast<double>(n);
    j["z"] = z;
  } else {
    j["n"] = n;
    j["c"] = c;
    j["p1"] = p1;
    j["p2"] = p2;
  }
  return j;
}

namespace {

template <typename Fn>
std::vector<Json> run_trials(std::size_t trials, unsigned threads, Fn&& one) {
  std::vector<Json> out(trials);
  auto work = [&](unsigned worker) {
    for (std::size_t k = worker; k < trials; k += threads) out[k] = one(k);
  };
  if (threads <= 1 || trials <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  return out;
}

ResultStream run_mc_expansion(const ExperimentConfig& cfg) {
  const double n = static_cast<double>(cfg.n);
  ExpansionMcConfig mc;
  mc.model = cfg.model == "gnp" ? RandomModel::binomial : RandomModel::regular_pairing;
  mc.vertices = static_cast<std::size_t>(std::llround((cfg.c + 1.0) * n));
  mc.p = cfg.d / n;
  mc.degree = static_cast<std::size_t>(std::llround(cfg.d));
  mc.s_size = mc.t_size = static_cast<std::size_t>(std::llround(cfg.c * n / 2.0));
  mc.threshold = cfg.threshold ? *cfg.threshold : cfg.c * n;
  mc.trials = cfg.trials;
  mc.pairs_per_graph = cfg.pairs;
  mc.z = cfg.z;

  ResultStream stream;
  stream.header = header_json(cfg.command, cfg.to_json());
  const RandomSource base(cfg.seed);
  std::vector<ExpansionTrial> trials(cfg.trials);
  stream.records = run_trials(cfg.trials, cfg.threads, [&](std::size_t k) {
    trials[k] = expansion_trial(mc, k, base.substream(k));
    const auto& t = trials[k];
    return Json{{"type", "trial"},
                {"trial", k},
                {"failures", t.failures},
                {"min_crossing", t.min_crossing},
                {"mean_crossing", t.crossing_sum / static_cast<double>(mc.pairs_per_graph)}};
  });
  if (cfg.trials == 0) return stream;

  const auto est = summarize(mc, trials);
  const double k = static_cast<double>(mc.s_size);
  double expected_mean = 0.0;
  if (mc.model == RandomModel::binomial) {
    expected_mean = k * k * mc.p;
  } else {
    const double d = static_cast<double>(mc.degree);
    expected_mean = (k * d) * (k * d) / (d * static_cast<double>(mc.vertices) - 1.0);
  }
  Json summary = {{"type", "summary"},
                  {"vertices", mc.vertices},
                  {"set_size", mc.s_size},
                  {"threshold", mc.threshold},
                  {"samples", est.samples},
                  {"failures", est.failures},
                  {"frequency", est.frequency},
                  {"ci_low", est.ci_low},
                  {"ci_high", est.ci_high},
                  {"z", mc.z},
                  {"mean_crossing", est.mean_crossing},
                  {"mean_crossing_stderr", est.mean_crossing_stderr},
                  {"expected_mean_crossing", expected_mean}};
  if (mc.model == RandomModel::binomial && cfg.c * cfg.d / 4.0 > 1.0) {
    summary["pair_failure_bound"] =
        std::exp((cfg.c * std::log(cfg.c * cfg.d / 4.0) - cfg.c * cfg.c * cfg.d / 4.0 + cfg.c) * n);
  }
  summary["caveat"] = ExpansionEstimate::kCaveat;
  stream.summary = summary;
  return stream;
}

ResultStream run_close_cycle(const ExperimentConfig& cfg) {
  ResultStream stream;
  stream.header = header_json(cfg.command, cfg.to_json());
  const RandomSource base(cfg.seed);
  const std::size_t side = static_cast<std::size_t>(std::llround(cfg.c * static_cast<double>(cfg.n)));
  const std::size_t n = cfg.n;

  stream.records = run_trials(cfg.trials, cfg.threads, [&](std::size_t k) {
    RandomSource rng = base.substream(k);
    BipartiteGraph round1 = bipartite_gnp(side, side, cfg.p1, rng);
    BipartiteGraph round2 = bipartite_gnp(side, side, cfg.p2, rng);
    UnionGraph merged = two_round_union(round1, round2);
    std::size_t counts[4] = {0, 0, 0, 0};
    for (Round r : merged.provenance) ++counts[static_cast<int>(r)];

    Json rec = {{"type", "trial"},
                {"trial", k},
                {"union_edges", merged.graph.edge_count()},
                {"first_only", counts[1]},
                {"second_only", counts[2]},
                {"both", counts[3]}};
    // Long path in round 1 via the grower on an all-blue coloring.
    const Graph& g1 = round1.graph;
    EdgeColoring all_blue(g1, Color::blue);
    GrowerOutcome grown =
        grow_blue_path(g1, all_blue, {3 * n, 0, g1.vertex_count()});
    rec["path_found"] = grown.found_path();
    rec["cycle_found"] = false;
    if (!grown.found_path()) return rec;
    auto [path1, path2] = split_path_for_closing(grown.path(), n, round1.side);
    auto witness = close_cycle(path1, path2, round2.graph, n);
    if (!witness) return rec;
    rec["cycle_found"] = true;
    rec["i"] = witness->left_length;
    rec["l"] = witness->left.first_pos;
    rec["L"] = witness->left.second_pos;
    rec["r"] = witness->right.first_pos;
    rec["R"] = witness->right.second_pos;
    rec["cycle_length"] = witness->cycle.size();
    rec["witness_valid"] = witness_valid(*witness, path1, path2, round2.graph, n);
    return rec;
  });
  if (cfg.trials == 0) return stream;

  std::size_t paths = 0;
  std::size_t cycles = 0;
  bool all_valid = true;
  for (const auto& r : stream.records) {
    paths += r["path_found"].get<bool>() ? 1 : 0;
    if (r["cycle_found"].get<bool>()) {
      ++cycles;
      all_valid = all_valid && r["witness_valid"].get<bool>();
    }
  }
  stream.summary = Json{{"type", "summary"},
                        {"trials", cfg.trials},
                        {"paths_found", paths},
                        {"cycles_found", cycles},
                        {"all_witnesses_valid", all_valid}};
  return stream;
}

}  // namespace

ResultStream run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  return cfg.command == "mc-expansion" ? run_mc_expansion(cfg) : run_close_cycle(cfg);
}

void write_stream(std::ostream& out, const ResultStream& stream, Format format) {
  if (format == Format::json) {
    out << stream.header.dump() << '\n';
    for (const auto& r : stream.records) out << r.dump() << '\n';
    if (stream.summary) out << stream.summary->dump() << '\n';
    return;
  }
  out << "# " << stream.header.dump() << '\n';
  std::vector<std::string> columns;
  for (const auto& r : stream.records)
    for (const auto& [key, value] : r.items())
      if (key != "type" && std::find(columns.begin(), columns.end(), key) == columns.end())
        columns.push_back(key);
  if (columns.empty()) columns.push_back("trial");
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
  out << '\n';
  for (const auto& r : stream.records) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (i) out << ',';
      if (r.contains(columns[i])) {
        const auto& v = r[columns[i]];
        out << (v.is_string() ? v.get<std::string>() : v.dump());
      }
    }
    out << '\n';
  }
  if (stream.summary) out << "# " << stream.summary->dump() << '\n';
}

bool witness_valid(const CycleWitness& w, const std::vector<Vertex>& path1,
                   const std::vector<Vertex>& path2, const Graph& chords,
                   std::size_t n) {
  const std::size_t mid = 3 * n / 4;
  if (w.cycle.size() != n) return false;
  std::vector<Vertex> sorted = w.cycle;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  auto on_path = [](const std::vector<Vertex>& p, Vertex a, Vertex b) {
    for (std::size_t i = 0; i + 1 < p.size(); ++i)
      if ((p[i] == a && p[i + 1] == b) || (p[i] == b && p[i + 1] == a)) return true;
    return false;
  };
  std::size_t chord_steps = 0;
  for (std::size_t i = 0; i < n; ++i) {
    Vertex a = w.cycle[i];
    Vertex b = w.cycle[(i + 1) % n];
    if (on_path(path1, a, b) || on_path(path2, a, b)) continue;
    if (!chords.adjacent(a, b)) return false;
    ++chord_steps;
  }
  if (chord_steps != 2) return false;
  if (!chords.adjacent(w.chords.first.u, w.chords.first.v) ||
      !chords.adjacent(w.chords.second.u, w.chords.second.v))
    return false;
  const auto [l, big_l] = std::pair{w.left.first_pos, w.left.second_pos};
  const auto [r, big_r] = std::pair{w.right.first_pos, w.right.second_pos};
  return l < mid && big_l < mid && r > mid && big_r > mid &&
         (mid - l + 1) + (mid - big_l) == w.left_length &&
         (r - mid + 1) + (big_r - mid) == w.right_length && w.left_length + w.right_length == n;
}

}  // namespace sizeramsey::cli
