// Acceptance runner: one PASS/FAIL line per criterion.
//
//   acceptance [--criterion N] --probe <ids_cov_probe> --coverage-dir <dir>
//              --golden <ids golden dir> --config <headline.yaml>
//
// Exit status is 0 only when every selected criterion passes.

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/core.h>
#include <json.hpp>

#include "cosec/batch.hpp"
#include "cosec/engine.hpp"
#include "cosec/outlier.hpp"
#include "cosec/trace.hpp"
#include "support/properties.hpp"

namespace fs = std::filesystem;
using namespace cosec;

namespace {

struct Options {
  std::string probe;
  std::string coverage_dir;
  std::string golden;
  std::string config;
};

struct Outcome {
  bool pass = false;
  std::string detail;
};

// -- 1: worked IQR example ----------------------------------------------------

struct Column {
  const char* name;
  std::vector<std::uint32_t> counts;
  double median, q1, q3, iqr, upper;
  bool attacker;
};

// Values as printed, including the normal 20-minute median.
const std::vector<Column> kTable = {
    {"normal 5 min", {9, 1, 3, 6, 5, 1}, 4, 1, 6, 5, 11, false},
    {"normal 10 min", {10, 1, 7, 8, 7, 1, 2}, 7, 1, 8, 7, 15, false},
    {"normal 15 min", {10, 1, 9, 9, 7, 1, 3, 1}, 5, 1, 9, 8, 17, false},
    {"normal 20 min", {12, 1, 9, 10, 8, 2, 3, 1}, 5, 1.5, 9.5, 8, 17.5, false},
    {"normal 25 min", {13, 1, 11, 10, 9, 2, 4, 1}, 6.5, 1.5, 10.5, 9, 19.5, false},
    {"normal 30 min", {13, 1, 12, 10, 9, 3, 5, 1}, 7, 2, 11, 9, 20, false},
    {"attack 5 min", {7, 8, 6, 1, 4, 2, 166}, 6, 2, 8, 6, 14, true},
    {"attack 10 min", {7, 9, 9, 1, 4, 2, 398}, 7, 2, 9, 7, 16, true},
    {"attack 15 min", {9, 6, 2, 9, 7, 711, 3, 1}, 6.5, 2.5, 9, 6.5, 15.5, true},
    {"attack 20 min", {10, 7, 2, 9, 8, 980, 4, 1}, 7.5, 3, 9.5, 6.5, 16, true},
    {"attack 25 min", {12, 12, 3, 11, 9, 1246, 4, 2}, 10, 3.5, 12, 8.5, 20.5, true},
    {"attack 30 min", {12, 13, 3, 11, 9, 1520, 5, 2}, 10, 4, 12.5, 8.5, 21, true},
};

Outcome table_oracle() {
  int cells = 0;
  std::vector<std::string> wrong;
  for (const Column& col : kTable) {
    const QuartileSummary s = compute_quartiles(std::span(col.counts), 1.0);
    std::vector<std::pair<int, std::uint32_t>> entries;
    for (std::size_t i = 0; i < col.counts.size(); ++i) entries.emplace_back(static_cast<int>(i), col.counts[i]);
    const bool flagged = !find_outliers(entries, 1.0).empty();
    const std::array<std::tuple<const char*, double, double>, 5> values{{{"median", col.median, s.median},
                                                                         {"Q1", col.q1, s.q1},
                                                                         {"Q3", col.q3, s.q3},
                                                                         {"IQR", col.iqr, s.iqr},
                                                                         {"upper limit", col.upper, s.upper_limit}}};
    for (const auto& [label, want, got] : values) {
      ++cells;
      if (want != got) wrong.push_back(fmt::format("{} {}: expected {:g}, got {:g}", col.name, label, want, got));
    }
    ++cells;
    if (flagged != col.attacker) wrong.push_back(fmt::format("{} verdict: expected {}, got {}", col.name, col.attacker, flagged));
  }
  std::string detail = fmt::format("{}/{} cells exact", cells - static_cast<int>(wrong.size()), cells);
  for (const auto& w : wrong) detail += "; " + w;
  return {wrong.empty(), detail};
}

// -- 2: detector branch coverage ---------------------------------------------

std::optional<std::string> capture(const std::string& command, int& status) {
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(command.c_str(), "r"), pclose);
  if (!pipe) return std::nullopt;
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe.get())) out.append(buf.data(), n);
  status = pclose(pipe.release());
  return out;
}

Outcome ids_coverage(const Options& o) {
  const std::set<std::string> module{"src/ids.cpp", "src/outlier.cpp", "include/cosec/ids.hpp", "include/cosec/outlier.hpp"};
  for (const auto& e : fs::recursive_directory_iterator(o.coverage_dir)) {
    if (e.path().extension() == ".gcda") fs::remove(e.path());
  }
  int status = 0;
  const auto probe = capture(fmt::format("'{}' '{}' 2>&1", o.probe, o.golden), status);
  if (!probe || status != 0) return {false, "golden snapshot mismatch: " + probe.value_or("probe did not start")};

  std::vector<std::string> names;
  fs::path dir;
  for (const auto& e : fs::recursive_directory_iterator(o.coverage_dir)) {
    const std::string file = e.path().filename().string();
    if (file == "ids.cpp.gcda" || file == "outlier.cpp.gcda") {
      dir = e.path().parent_path();
      names.push_back(file);
    }
  }
  if (names.size() != 2) return {false, "coverage data for ids.cpp and outlier.cpp not found"};
  const auto json = capture(fmt::format("cd '{}' && gcov -j -t -b {} {} 2>/dev/null", dir.string(), names[0], names[1]), status);
  if (!json || status != 0) return {false, "gcov failed"};

  std::map<std::string, std::pair<int, int>> per_file;  // taken, total
  std::istringstream lines(*json);
  for (std::string line; std::getline(lines, line);) {
    if (line.empty()) continue;
    const auto doc = nlohmann::json::parse(line);
    for (const auto& f : doc["files"]) {
      const std::string path = f["file"];
      const auto owner = std::find_if(module.begin(), module.end(), [&](const std::string& m) { return path.ends_with(m); });
      if (owner == module.end()) continue;
      for (const auto& l : f["lines"]) {
        for (const auto& b : l["branches"]) {
          if (b["throw"].get<bool>()) continue;
          auto& [taken, total] = per_file[*owner];
          ++total;
          taken += b["count"].get<long>() > 0;
        }
      }
    }
  }
  bool pass = !per_file.empty();
  std::string detail = "golden snapshots match";
  for (const auto& [file, tt] : per_file) {
    if (tt.second == 0) continue;
    detail += fmt::format("; {} {}/{} branches", file, tt.first, tt.second);
    pass = pass && tt.first == tt.second;
  }
  return {pass, detail};
}

// -- 3 to 6: headline experiment ---------------------------------------------

class Headline {
 public:
  explicit Headline(const std::string& config) {
    const ExperimentConfig e = load_experiment(config);
    result_ = run_batch(e, {});
  }

  std::optional<double> mean(const std::string& key, const std::function<std::optional<double>(const RunMetrics&)>& f) const {
    std::vector<std::optional<double>> v;
    for (const RunMetrics* m : runs(key)) v.push_back(f(*m));
    return estimate(v).mean;
  }

  std::vector<const RunMetrics*> runs(const std::string& key) const {
    std::vector<const RunMetrics*> out;
    for (const RunRecord& r : result_.runs) {
      if (result_.variants[r.variant].key() == key) out.push_back(&r.metrics);
    }
    return out;
  }

  std::size_t seeds() const { return result_.seeds.size(); }

 private:
  BatchResult result_;
};

std::string num(std::optional<double> v) { return v ? fmt::format("{:.4f}", *v) : "NA"; }

const auto kPdr = [](const RunMetrics& m) { return m.pdr; };
const auto kAe2ed = [](const RunMetrics& m) { return m.ae2ed_s; };
const auto kAda = [](const RunMetrics& m) { return m.ada; };
const auto kFrt = [](const RunMetrics& m) { return m.mean_frt_s(); };

Outcome attack_impact(const Headline& h) {
  const auto base = h.mean("baseline/static", kPdr);
  const auto attack = h.mean("attack/static/1s", kPdr);
  const bool pass = h.seeds() >= 10 && base && attack && *base - *attack >= 0.20;
  return {pass, fmt::format("static PDR baseline {} vs attack {} over {} seeds (need a drop of at least 0.20)", num(base),
                            num(attack), h.seeds())};
}

Outcome defense_recovery(const Headline& h) {
  const auto base = h.mean("baseline/static", kPdr);
  const auto attack = h.mean("attack/static/1s", kPdr);
  const auto cosec = h.mean("cosec/static/1s", kPdr);
  const auto d_attack = h.mean("attack/mobile/1s", kAe2ed);
  const auto d_cosec = h.mean("cosec/mobile/1s", kAe2ed);
  if (!base || !attack || !cosec || !d_attack || !d_cosec || *base <= *attack) {
    return {false, "missing data or no PDR gap to recover"};
  }
  const double recovered = (*cosec - *attack) / (*base - *attack);
  const bool pass = recovered >= 0.5 && *d_cosec < *d_attack;
  return {pass, fmt::format("static PDR gap recovered {:.1f}% (cosec {}); mobile AE2ED cosec {} s vs attack {} s",
                            100.0 * recovered, num(cosec), num(d_cosec), num(d_attack))};
}

Outcome accuracy(const Headline& h) {
  const auto s = h.mean("cosec/static/1s", kAda);
  const auto m = h.mean("cosec/mobile/1s", kAda);
  const bool pass = h.seeds() >= 10 && s && m && *s >= 0.8 && *m >= 0.5;
  return {pass, fmt::format("ADA static {} (need 0.8), mobile {} (need 0.5)", num(s), num(m))};
}

Outcome response_time(const Headline& h) {
  bool pass = true;
  std::string detail;
  for (const char* mob : {"static", "mobile"}) {
    std::vector<std::optional<double>> frt;
    for (int i = 4; i >= 1; --i) frt.push_back(h.mean(fmt::format("cosec/{}/{}s", mob, i), kFrt));
    detail += fmt::format("{}{} FRT 4s..1s:", detail.empty() ? "" : "; ", mob);
    for (const auto& f : frt) detail += " " + num(f);
    for (std::size_t i = 0; i < frt.size(); ++i) {
      if (!frt[i] || (i > 0 && *frt[i] > *frt[i - 1])) pass = false;
    }
    std::size_t missed = 0;
    for (const RunMetrics* m : h.runs(fmt::format("cosec/{}/1s", mob))) missed += m->undetected();
    detail += fmt::format(", undetected at 1s: {}", missed);
    pass = pass && missed == 0;
  }
  return {pass, detail};
}

// -- 7: false positives without attackers ----------------------------------------

Outcome false_positives(const Options& o) {
  ExperimentConfig e = load_experiment(o.config);
  e.modes = {Mode::kIdsOnly};
  e.mobilities = {MobilityModel::kStatic};
  const BatchResult r = run_batch(e, {});
  std::uint64_t blocks = 0;
  std::string per_run;
  for (const RunRecord& run : r.runs) {
    blocks += run.metrics.permanent_blocks_legit;
    per_run += fmt::format("{}{}", per_run.empty() ? "" : ",", run.metrics.false_suspicions);
  }
  const bool pass = r.seeds.size() >= 10 && blocks == 0;
  return {pass, fmt::format("{} static attack-free runs, legitimate blocks {}, false suspicions per run [{}]",
                            r.runs.size(), blocks, per_run)};
}

// -- 8: determinism ---------------------------------------------------------------

std::string trace_text(const ScenarioConfig& c, std::uint64_t seed) {
  std::ostringstream os;
  write_trace(os, run(c, seed).trace);
  return os.str();
}

std::map<std::string, std::string> files_in(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    std::ifstream in(e.path(), std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    out[e.path().filename().string()] = s.str();
  }
  return out;
}

Outcome determinism(const Options& o) {
  ExperimentConfig e = load_experiment(o.config);
  e.seeds = {1, 2, 3};
  int traces = 0;
  for (const Variant& v : expand(e)) {
    for (std::uint64_t seed : e.seeds) {
      if (trace_text(v.scenario, seed) != trace_text(v.scenario, seed)) {
        return {false, fmt::format("trace differs for {} seed {}", v.key(), seed)};
      }
      ++traces;
    }
  }
  const fs::path root = fs::temp_directory_path() / "cosec_acceptance_determinism";
  fs::remove_all(root);
  BatchOptions opt;
  opt.traces = true;
  write_results(run_batch(e, opt), root / "a");
  opt.workers = 1;
  write_results(run_batch(e, opt), root / "b");
  const auto a = files_in(root / "a");
  const auto b = files_in(root / "b");
  fs::remove_all(root);
  if (a != b) return {false, "batch output files differ between runs"};
  return {true, fmt::format("{} traces repeated byte-identically; {} output files identical across two batch runs", traces,
                            a.size())};
}

// -- 9: property suites ------------------------------------------------------------

Outcome properties() {
  std::vector<std::string> failures;
  auto add = [&](const char* suite, const std::vector<std::string>& f) {
    for (const auto& x : f) failures.push_back(fmt::format("{}: {}", suite, x));
  };
  add("outlier", cosec::testing::outlier_properties(1000, 2024));
  add("loop freedom", cosec::testing::loop_freedom(10, 20, 7));
  add("trickle", cosec::testing::trickle_bounds(1000, 99));
  int lossless = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto pdr = cosec::testing::lossless_pdr(seed);
    if (pdr && *pdr == 1.0) {
      ++lossless;
    } else {
      failures.push_back(fmt::format("lossless seed {}: PDR {}", seed, num(pdr)));
    }
  }
  std::string detail = fmt::format(
      "1000 outlier cases, 10 random 20-node topologies, 1000 trickle timers, lossless PDR = 1 on {}/10 seeds", lossless);
  for (std::size_t i = 0; i < failures.size() && i < 5; ++i) detail += "; " + failures[i];
  return {failures.empty(), detail};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  int only = 0;
  Options o;
  app.add_option("--criterion", only, "Run a single criterion (1-9)")->check(CLI::Range(1, 9));
  app.add_option("--probe", o.probe, "Instrumented detector probe")->required();
  app.add_option("--coverage-dir", o.coverage_dir, "Object directory of the probe")->required();
  app.add_option("--golden", o.golden, "Detector golden snapshots")->required();
  app.add_option("--config", o.config, "Headline experiment")->required();
  CLI11_PARSE(app, argc, argv);

  std::optional<Headline> headline;
  auto shared = [&]() -> const Headline& {
    if (!headline) headline.emplace(o.config);
    return *headline;
  };

  const std::vector<std::function<Outcome()>> criteria{
      [] { return table_oracle(); },
      [&] { return ids_coverage(o); },
      [&] { return attack_impact(shared()); },
      [&] { return defense_recovery(shared()); },
      [&] { return accuracy(shared()); },
      [&] { return response_time(shared()); },
      [&] { return false_positives(o); },
      [&] { return determinism(o); },
      [] { return properties(); },
  };

  bool all = true;
  for (int i = 1; i <= 9; ++i) {
    if (only != 0 && only != i) continue;
    Outcome r;
    try {
      r = criteria[i - 1]();
    } catch (const std::exception& e) {
      r = {false, std::string("error: ") + e.what()};
    }
    fmt::print("criterion {}: {} {}\n", i, r.pass ? "PASS" : "FAIL", r.detail);
    std::fflush(stdout);
    all = all && r.pass;
  }
  return all ? 0 : 1;
}
