#pragma once

// Experiment orchestration behind the command-line tool: the reference
// table of d(c), U1, U2; the fixed-constant verification report; and the
// seeded experiment streams. Every output carries the tool version and the
// configuration (including the seed) that produced it.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sizeramsey/arrowing.hpp"
#include "sizeramsey/version.hpp"

namespace sizeramsey::cli {

using Json = nlohmann::ordered_json;

enum class Format { csv, json };

// Exit status contract.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

// ------------------------------------------------------------------ table 1

struct Table1Row {
  double c = 0.0;
  double d_root = 0.0;     // bisection root
  double d_printed = 0.0;  // root rounded up to two decimals
  long u1 = 0;
  long u2 = 0;
};

struct Table1Expected {
  double c;
  double d;
  long u1;
  long u2;
};

// Reference values, two decimals as published.
inline constexpr std::array<Table1Expected, 10> kTable1Expected{{
    {1.0, 18.43, 37, 80},    {0.9, 20.90, 38, 99},    {0.8, 24.05, 39, 123},
    {0.7, 28.20, 41, 156},   {0.6, 33.89, 44, 202},   {0.5, 42.11, 48, 271},
    {0.4, 54.91, 54, 384},   {0.3, 77.21, 66, 588},   {0.2, 124.51, 90, 1044},
    {0.1, 279.54, 170, 2643},
}};

inline constexpr double kTable1Tolerance = 0.005;

Table1Row table1_row(double c);
std::vector<Table1Row> table1_rows();

// One line per mismatching cell; empty when the table matches.
std::vector<std::string> table1_mismatches(const std::vector<Table1Row>& rows);

void write_table1_csv(std::ostream& out, const std::vector<Table1Row>& rows);
// Skips '#' comment lines; throws PreconditionError on malformed input.
std::vector<Table1Row> read_table1_csv(std::istream& in);
Json table1_json(const std::vector<Table1Row>& rows);

// ------------------------------------------------------- verify-constants

struct VerifyConstantsConfig {
  // Regular-graph exponent profile.
  double g_a = 1.0;
  double g_d = 31.0;
  double g_margin = -0.02;      // g(g_a, g_d) must be below this
  double g_grid_step = 0.01;    // a-grid (0, g_a]
  double fd_step = 1e-4;
  double fd_tolerance = 1e-6;
  // Two-case lower bound.
  double lb_a = 2.0037;
  double lb_b = 0.5;
  double lb_d = 9.0;
  double case1_target = 2.00366;
  double case2_target = 2.00365;
  // Cycle closing.
  double c = 2.21;
  double d1 = 60.34;
  double d2 = 93.26;
  double objective_max = 2257.0;
};

struct Check {
  std::string name;
  bool pass = false;
  Json details;
};

struct VerifyReport {
  std::vector<Check> checks;
  bool all_pass() const;
};

Check check_regular_profile(const VerifyConstantsConfig& cfg);
Check check_lower_bound_constants(const VerifyConstantsConfig& cfg);
Check check_cycle_closing(const VerifyConstantsConfig& cfg);
VerifyReport verify_constants(const VerifyConstantsConfig& cfg);
Json to_json(const VerifyReport& report, const VerifyConstantsConfig& cfg);

// ------------------------------------------------------------ bounds grid

struct BoundsRow {
  double c = 0.0;
  std::optional<double> d_first;
  std::optional<long> u1;
  std::optional<long> u2;  // c <= 1 only
  std::optional<double> d_second;  // c > 1 only
  std::optional<double> u3;
};

std::vector<BoundsRow> bounds_grid(double c_min, double c_max, double step);
// Columns c,d_first,u1,u2,d_second,u3; cells outside a formula's domain are empty.
void write_bounds_csv(std::ostream& out, const std::vector<BoundsRow>& rows,
                      const Json& config);

// ------------------------------------------------------------ experiments

struct ExperimentConfig {
  std::string command;  // mc-expansion | close-cycle
  // Shared.
  std::uint64_t seed = 1;
  std::size_t trials = 1;
  unsigned threads = 1;
  Format format = Format::json;
  bool timing = false;
  // mc-expansion.
  std::string model = "gnp";  // gnp | pairing
  double c = 1.0;
  std::size_t n = 200;
  double d = 18.43;
  std::size_t pairs = 1;
  std::optional<double> threshold;  // default c n
  double z = 3.0;
  // close-cycle (n shared; c sizes the bipartite sides as round(c n)).
  double p1 = 0.5;
  double p2 = 0.5;

  // Throws PreconditionError naming the violated condition.
  void validate() const;
  Json to_json() const;
};

struct ResultStream {
  Json header;                // version, config
  std::vector<Json> records;  // ordered by trial index
  std::optional<Json> summary;
};

ResultStream run_experiment(const ExperimentConfig& cfg);

void write_stream(std::ostream& out, const ResultStream& stream, Format format);

// Independent re-check of a closed cycle against its inputs.
bool witness_valid(const CycleWitness& w, const std::vector<Vertex>& path1,
                   const std::vector<Vertex>& path2, const Graph& chords,
                   std::size_t n);

// Shared by single-decision commands.
Json header_json(const std::string& command, const Json& config);
std::string format_fixed(double value, int decimals);

}  // namespace sizeramsey::cli
