// Command-line front end: point generation, compilation and queries.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cfgraph/cgraph.h"
#include "cfgraph/compilers.h"
#include "cfgraph/generators.h"
#include "cfgraph/geometry.h"
#include "cfgraph/oracle.h"
#include "cfgraph/states.h"

namespace {

using namespace cfgraph;
using json = nlohmann::ordered_json;

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string family;
  std::string points;
  std::optional<std::uint64_t> seed;
  std::uint64_t k = 1;
  std::optional<std::uint64_t> limit;
  std::string objective = "area";
  std::string sense = "min";
  std::string format = "text";
  std::string out;
  // gen
  std::string kind;
  int n = 0;
  // selftest / bench
  int max_n = 6;
  int min_n = 4;
  int bench_max_n = 10;
  std::string shape = "circle";
  bool relax_order = false;
};

Family RequireFamily(const Config& cfg) {
  if (cfg.family.empty()) throw UsageError("--family is required");
  return *ParseFamily(cfg.family);
}

PointSet RequirePoints(const Config& cfg) {
  if (cfg.points.empty()) throw UsageError("--points is required");
  return ReadPointFile(cfg.points);
}

// Writes to --out when given, else stdout.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::string Halved(std::int64_t twice) {
  // Exact: twice/2 has at most one decimal digit.
  std::string sign = twice < 0 ? "-" : "";
  const std::uint64_t mag = twice < 0 ? -static_cast<std::uint64_t>(twice)
                                      : static_cast<std::uint64_t>(twice);
  return sign + std::to_string(mag / 2) + (mag % 2 ? ".5" : ".0");
}

std::string FixedPointDecimal(std::int64_t value) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(9)
      << static_cast<long double>(value) / 4294967296.0L;
  return out.str();
}

int RunGen(const Config& cfg) {
  if (!cfg.seed) throw UsageError("--seed is required for gen");
  PointSetKind kind;
  if (cfg.kind == "convex") {
    kind = PointSetKind::kConvex;
  } else if (cfg.kind == "random") {
    kind = PointSetKind::kRandom;
  } else {
    throw UsageError("kind must be convex or random");
  }
  const PointSet points = Generate(kind, cfg.n, *cfg.seed);
  Output out(cfg.out);
  out.stream() << "# " << cfg.kind << " n=" << cfg.n << " seed=" << *cfg.seed
               << '\n';
  WritePointFile(out.stream(), points);
  return 0;
}

json StatsJson(const PointSet& points, Family family,
               const CompileResult& result) {
  const GraphStats s = Stats(result.graph);
  json j;
  j["n"] = points.size();
  j["family"] = std::string(FamilyName(family));
  j["nodes"] = s.nodes;
  j["edges"] = s.edges;
  j["height"] = s.height;
  j["count"] = s.count.get_str();
  j["build_ms"] = static_cast<std::int64_t>(result.stats.build_ms + 0.5);
  j["peak_states"] = result.stats.peak_layer;
  j["states"] = result.stats.states;
  return j;
}

void PrintStats(std::ostream& out, const json& j, const std::string& format) {
  if (format == "json") {
    out << j.dump() << '\n';
    return;
  }
  for (const auto& [key, value] : j.items()) {
    out << key << ' ' << (value.is_string() ? value.get<std::string>()
                                            : value.dump())
        << '\n';
  }
}

int RunCompile(const Config& cfg) {
  const Family family = RequireFamily(cfg);
  const PointSet points = RequirePoints(cfg);
  const CompileResult result = CompileDetailed(points, family);
  if (!cfg.out.empty()) {
    Output dot(cfg.out);
    WriteDot(dot.stream(), result.graph);
  }
  PrintStats(std::cout, StatsJson(points, family, result), cfg.format);
  return 0;
}

int RunStats(const Config& cfg) {
  const Family family = RequireFamily(cfg);
  const PointSet points = RequirePoints(cfg);
  Output out(cfg.out);
  PrintStats(out.stream(),
             StatsJson(points, family, CompileDetailed(points, family)),
             cfg.format);
  return 0;
}

int RunCount(const Config& cfg) {
  const Family family = RequireFamily(cfg);
  const CombinationGraph g = Compile(RequirePoints(cfg), family);
  Output out(cfg.out);
  if (cfg.format == "json") {
    json j;
    j["family"] = std::string(FamilyName(family));
    j["count"] = g.Count().get_str();
    out.stream() << j.dump() << '\n';
  } else {
    out.stream() << g.Count().get_str() << '\n';
  }
  return 0;
}

int RunEnumerate(const Config& cfg) {
  const Family family = RequireFamily(cfg);
  const CombinationGraph g = Compile(RequirePoints(cfg), family);
  Output out(cfg.out);
  SolutionEnumerator it(g, cfg.limit);
  Solution s;
  while (it.Next(&s)) {
    out.stream() << FormatSolution(s, g.label_kind()) << '\n';
  }
  return 0;
}

int RunSample(const Config& cfg) {
  const Family family = RequireFamily(cfg);
  if (!cfg.seed) throw UsageError("--seed is required for sample");
  const CombinationGraph g = Compile(RequirePoints(cfg), family);
  std::mt19937_64 rng(*cfg.seed);
  Output out(cfg.out);
  for (const Solution& s : Sample(g, rng, cfg.k)) {
    out.stream() << FormatSolution(s, g.label_kind()) << '\n';
  }
  return 0;
}

int RunOptimize(const Config& cfg) {
  const PointSet points = RequirePoints(cfg);
  const bool area = cfg.objective == "area";
  const Family family = area ? Family::kDirectedCycle : Family::kSpanningCycle;
  if (!cfg.family.empty() && *ParseFamily(cfg.family) != family) {
    throw UsageError(std::string("objective ") + cfg.objective +
                     " runs on family " + std::string(FamilyName(family)));
  }
  const Sense sense = cfg.sense == "max" ? Sense::kMax : Sense::kMin;
  const CombinationGraph g = Compile(points, family);
  WeightFunction weight;
  if (area) {
    weight = [&](Label l) { return TwiceTrapezoidWeight(points, l.directed()); };
  } else {
    weight = [&](Label l) { return FixedPointLength(points, l.segment()); };
  }
  const OptimizationResult r = Optimize(g, weight, sense);
  const std::string solution = FormatSolution(r.solution, g.label_kind());

  Output out(cfg.out);
  json j;
  j["objective"] = cfg.objective;
  j["sense"] = cfg.sense;
  j["family"] = std::string(FamilyName(family));
  if (area) {
    j["twice_area"] = r.value;
    j["area"] = Halved(r.value);
  } else {
    j["length_fixed"] = r.value;
    j["length_scale"] = "2^-32";
    j["length"] = FixedPointDecimal(r.value);
  }
  j["solution"] = solution;
  if (cfg.format == "json") {
    out.stream() << j.dump() << '\n';
  } else if (area) {
    out.stream() << "twice_area " << r.value << "\narea " << Halved(r.value)
                 << '\n'
                 << solution << '\n';
  } else {
    out.stream() << "length_fixed " << r.value << "\nlength_scale 2^-32\n"
                 << "length " << FixedPointDecimal(r.value) << '\n'
                 << solution << '\n';
  }
  return 0;
}

// One line per case; returns false on any mismatch.
class SelfTest {
 public:
  SelfTest(int max_n, bool relax_order)
      : max_n_(max_n) {
    options_.strict_order = !relax_order;
    options_.check_invariants = true;
  }

  bool Run() {
    constexpr int kRandomPerN = 5;
    for (int n = 3; n <= max_n_; ++n) {
      for (int i = 0; i < kRandomPerN; ++i) {
        const std::uint64_t seed = 1000 * n + i;
        Case("random", n, seed, GenerateRandom(n, seed));
      }
      Case("convex", n, n, GenerateConvex(n, n));
    }
    std::cout << (failures_ == 0 ? "PASS" : "FAIL") << " selftest: "
              << cases_ - failures_ << "/" << cases_ << " cases passed\n";
    return failures_ == 0;
  }

 private:
  struct Diff {
    std::size_t missing = 0;
    std::size_t extra = 0;
    std::size_t duplicates = 0;
    bool ok() const { return missing == 0 && extra == 0 && duplicates == 0; }
  };

  static Diff Compare(const CombinationGraph& g,
                      const std::set<LabelSet>& expected) {
    Diff d;
    std::set<LabelSet> seen;
    SolutionEnumerator it(g);
    Solution s;
    while (it.Next(&s)) {
      if (!seen.insert(s).second) ++d.duplicates;
    }
    for (const LabelSet& e : expected) d.missing += seen.count(e) == 0;
    for (const LabelSet& e : seen) d.extra += expected.count(e) == 0;
    return d;
  }

  static std::string Describe(const char* what, const Diff& d) {
    std::ostringstream out;
    out << ' ' << what << ": " << d.missing << " missing, " << d.extra
        << " extra, " << d.duplicates << " duplicate";
    return out.str();
  }

  void Case(const char* kind, int n, std::uint64_t seed, const PointSet& p) {
    ++cases_;
    std::string problems;
    try {
      const Diff st = Compare(
          CompileDetailed(p, Family::kSpanningTree, options_).graph,
          BruteSpanningTrees(p).solutions);
      if (!st.ok()) problems += Describe("st", st);

      const OracleResult cycles = BruteSpanningCycles(p);
      const CombinationGraph sc =
          CompileDetailed(p, Family::kSpanningCycle, options_).graph;
      const Diff sc_diff = Compare(sc, cycles.solutions);
      if (!sc_diff.ok()) problems += Describe("sc", sc_diff);

      const CombinationGraph dsc =
          CompileDetailed(p, Family::kDirectedCycle, options_).graph;
      if (dsc.Count() != cycles.count) {
        problems += " dsc: count " + dsc.Count().get_str() + " vs " +
                    std::to_string(cycles.count);
      }
      if (n <= kOracleMaxCrossingFreePoints) {
        const BigCount cf =
            CompileDetailed(p, Family::kCrossingFree, options_).graph.Count();
        const BigCount expected = BruteCrossingFreeCount(p);
        if (cf != expected) {
          problems += " cf: count " + cf.get_str() + " vs " +
                      expected.get_str();
        }
      }
      if (cycles.count > 0 && dsc.Count() > 0 && sc.Count() > 0) {
        const auto area = [&](Label l) {
          return TwiceTrapezoidWeight(p, l.directed());
        };
        const auto length = [&](Label l) {
          return FixedPointLength(p, l.segment());
        };
        for (Sense sense : {Sense::kMin, Sense::kMax}) {
          const char* tag = sense == Sense::kMin ? "min" : "max";
          const auto a = Optimize(dsc, area, sense).value;
          const auto a_ref = BruteOptimize(p, Objective::kArea, sense)->value;
          if (a != a_ref) {
            problems += std::string(" area ") + tag + ": " +
                        std::to_string(a) + " vs " + std::to_string(a_ref);
          }
          const auto l = Optimize(sc, length, sense).value;
          const auto l_ref = BruteOptimize(p, Objective::kLength, sense)->value;
          if (l != l_ref) {
            problems += std::string(" length ") + tag + ": " +
                        std::to_string(l) + " vs " + std::to_string(l_ref);
          }
        }
      }
    } catch (const std::exception& e) {
      problems += std::string(" error: ") + e.what();
    }
    if (!problems.empty()) ++failures_;
    std::cout << (problems.empty() ? "PASS" : "FAIL") << ' ' << kind
              << " n=" << n << " seed=" << seed << problems << '\n';
  }

  int max_n_;
  CompileOptions options_;
  int cases_ = 0;
  int failures_ = 0;
};

int RunSelfTest(const Config& cfg) {
  if (cfg.max_n < 3 || cfg.max_n > kOracleMaxPoints) {
    throw UsageError("selftest needs 3 <= max_n <= 9");
  }
  return SelfTest(cfg.max_n, cfg.relax_order).Run() ? 0 : kExitFailure;
}

int RunBench(const Config& cfg) {
  const Family family = RequireFamily(cfg);
  if (cfg.min_n < MinimumPoints(family) || cfg.bench_max_n < cfg.min_n) {
    throw UsageError("need min_n >= family minimum and max_n >= min_n");
  }
  const std::uint64_t seed = cfg.seed.value_or(1);
  json rows = json::array();
  std::uint64_t previous = 0;
  for (int n = cfg.min_n; n <= cfg.bench_max_n; ++n) {
    const PointSet p =
        cfg.shape == "circle"
            ? GenerateConvex(n, seed)
            : ConvexChains(n, cfg.shape == "upper"
                                  ? (std::uint64_t{1} << (n - 2)) - 1
                                  : 0);
    const CompileResult r = CompileDetailed(p, family);
    json row = StatsJson(p, family, r);
    if (previous > 0) {
      row["growth"] = static_cast<double>(r.stats.states) / previous;
    }
    previous = r.stats.states;
    rows.push_back(row);
    if (cfg.format != "json") {
      std::cout << "n " << n << " states " << r.stats.states << " nodes "
                << r.graph.node_count() << " edges " << r.graph.edge_count()
                << " count " << r.graph.Count().get_str() << " build_ms "
                << row["build_ms"].dump();
      if (row.contains("growth")) {
        std::cout << " growth " << std::fixed << std::setprecision(3)
                  << row["growth"].get<double>();
        std::cout.unsetf(std::ios::fixed);
      }
      std::cout << '\n' << std::flush;
    }
  }
  if (cfg.format == "json") std::cout << rows.dump() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compile crossing-free geometric graph families into a "
               "combination DAG and query it."};
  app.require_subcommand(1);
  Config cfg;

  const std::vector<std::string> families{"cf", "st", "sc", "dsc"};
  auto add_family = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--family", cfg.family,
                                "cf: all crossing-free graphs (the empty one "
                                "included), st: spanning trees, sc: spanning "
                                "cycles, dsc: counter-clockwise cycles")
                    ->check(CLI::IsMember(families));
    if (required) opt->required();
  };
  auto add_points = [&](CLI::App* sub) {
    sub->add_option("--points", cfg.points,
                    "point file: one \"x y\" per line, '#' comments")
        ->required()
        ->check(CLI::ExistingFile);
  };
  auto add_out = [&](CLI::App* sub, const char* what) {
    sub->add_option("--out", cfg.out, what);
  };
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
  };

  auto* gen = app.add_subcommand("gen", "write a point set in general position");
  gen->add_option("kind", cfg.kind, "convex or random")
      ->required()
      ->check(CLI::IsMember({"convex", "random"}));
  gen->add_option("n", cfg.n, "number of points")->required()->check(
      CLI::Range(1, kMaxPoints));
  gen->add_option("--seed", cfg.seed, "64-bit seed")->required();
  add_out(gen, "point file to write (default stdout)");

  auto* compile = app.add_subcommand(
      "compile", "compile and print graph statistics");
  add_family(compile, true);
  add_points(compile);
  add_format(compile);
  add_out(compile, "write the graph in Graphviz DOT format");

  auto* count = app.add_subcommand("count", "number of solutions");
  add_family(count, true);
  add_points(count);
  add_format(count);
  add_out(count, "output file");

  auto* enumerate = app.add_subcommand(
      "enumerate", "stream solutions, one per line, labels 1-based");
  add_family(enumerate, true);
  add_points(enumerate);
  enumerate->add_option("--limit", cfg.limit, "stop after N solutions");
  add_out(enumerate, "output file");

  auto* sample = app.add_subcommand("sample", "uniform random solutions");
  add_family(sample, true);
  add_points(sample);
  sample->add_option("--seed", cfg.seed, "64-bit seed")->required();
  sample->add_option("--k", cfg.k, "number of samples");
  add_out(sample, "output file");

  auto* optimize = app.add_subcommand(
      "optimize",
      "extremal spanning cycle. area: exact doubled area over dsc, also "
      "printed halved. length: sum of per-segment lengths in fixed point, "
      "each floor(|s| * 2^32), over sc");
  add_family(optimize, false);
  add_points(optimize);
  optimize->add_option("--objective", cfg.objective, "area or length")
      ->check(CLI::IsMember({"area", "length"}));
  optimize->add_option("--sense", cfg.sense, "min or max")
      ->check(CLI::IsMember({"min", "max"}));
  add_format(optimize);
  add_out(optimize, "output file");

  auto* stats = app.add_subcommand(
      "stats", "graph statistics: n, family, nodes, edges, height, count, "
               "build_ms, peak_states (largest search layer), states");
  add_family(stats, true);
  add_points(stats);
  add_format(stats);
  add_out(stats, "output file");

  auto* selftest = app.add_subcommand(
      "selftest", "compare compiled families against brute force");
  selftest->add_option("max_n", cfg.max_n, "largest point count, 3..9");
  selftest
      ->add_flag("--relax-order", cfg.relax_order,
                 "compile with the non-strict order check (must fail)")
      ->group("");

  auto* bench = app.add_subcommand(
      "bench", "state growth on convex sets of increasing size");
  add_family(bench, true);
  bench->add_option("--min-n", cfg.min_n, "smallest point count");
  bench->add_option("--max-n", cfg.bench_max_n, "largest point count");
  bench->add_option("--seed", cfg.seed, "generator seed (default 1)");
  bench
      ->add_option("--shape", cfg.shape,
                   "circle: seeded sets near a circle, whose chain pattern "
                   "changes with n. upper/lower: every interior point on "
                   "the upper/lower chain")
      ->check(CLI::IsMember({"circle", "upper", "lower"}));
  add_format(bench);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*gen) return RunGen(cfg);
    if (*compile) return RunCompile(cfg);
    if (*count) return RunCount(cfg);
    if (*enumerate) return RunEnumerate(cfg);
    if (*sample) return RunSample(cfg);
    if (*optimize) return RunOptimize(cfg);
    if (*stats) return RunStats(cfg);
    if (*selftest) return RunSelfTest(cfg);
    if (*bench) return RunBench(cfg);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}
