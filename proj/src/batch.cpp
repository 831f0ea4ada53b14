#include "cosec/batch.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "cosec/engine.hpp"

namespace cosec {
namespace {

std::string num(const std::optional<double>& v) { return v ? fmt::format("{:.6f}", *v) : "NA"; }

std::string interval_label(const Variant& v) {
  return v.replay_interval ? fmt::format("{:g}", to_seconds(*v.replay_interval)) : "NA";
}

bool attack_free(Mode m) { return m == Mode::kBaseline || m == Mode::kIdsOnly; }

template <typename F>
std::vector<std::optional<double>> collect(const BatchResult& r, std::size_t variant, F&& field) {
  std::vector<std::optional<double>> out;
  for (const RunRecord& run : r.runs) {
    if (run.variant == variant) out.push_back(field(run.metrics));
  }
  return out;
}

template <typename F>
Estimate summarize(const BatchResult& r, std::size_t variant, F&& field) {
  const auto samples = collect(r, variant, field);
  return estimate(samples);
}

std::string est(const Estimate& e) { return num(e.mean) + "," + num(e.half_width); }
std::string est_dat(const Estimate& e) { return num(e.mean) + " " + num(e.half_width); }

// Attack-free variants are repeated for every interval so they plot as a
// reference line.
std::string interval_plot(const BatchResult& r, const char* metric,
                          std::optional<double> (*field)(const RunMetrics&)) {
  std::vector<TimeMs> intervals;
  for (const Variant& v : r.variants) {
    if (v.replay_interval && std::find(intervals.begin(), intervals.end(), *v.replay_interval) == intervals.end()) {
      intervals.push_back(*v.replay_interval);
    }
  }
  std::sort(intervals.begin(), intervals.end());

  std::string out = fmt::format("# mobility mode replay_interval_s {0}_mean {0}_ci95 runs\n", metric);
  for (std::size_t i = 0; i < r.variants.size(); ++i) {
    const Variant& v = r.variants[i];
    const Estimate e = summarize(r, i, field);
    auto line = [&](TimeMs interval) {
      out += fmt::format("{} {} {:g} {} {}\n", mobility_name(v.mobility), mode_name(v.mode), to_seconds(interval),
                         est_dat(e), e.n);
    };
    if (v.replay_interval) {
      line(*v.replay_interval);
    } else {
      for (TimeMs t : intervals) line(t);
    }
  }
  return out;
}

std::optional<double> pdr_of(const RunMetrics& m) { return m.pdr; }
std::optional<double> ae2ed_of(const RunMetrics& m) { return m.ae2ed_s; }

}  // namespace

std::string Variant::key() const {
  std::string k = fmt::format("{}/{}", mode_name(mode), mobility_name(mobility));
  if (replay_interval) k += fmt::format("/{:g}s", to_seconds(*replay_interval));
  return k;
}

std::vector<Variant> expand(const ExperimentConfig& experiment) {
  std::vector<Variant> out;
  for (MobilityModel mob : experiment.mobilities) {
    for (Mode mode : experiment.modes) {
      ScenarioConfig base = experiment.base.with_mode(mode);
      base.mobility.model = mob;
      if (attack_free(mode)) {
        out.push_back({mode, mob, std::nullopt, base});
        continue;
      }
      for (TimeMs interval : experiment.replay_intervals) {
        ScenarioConfig s = base;
        s.attacker.replay_interval = interval;
        out.push_back({mode, mob, interval, s});
      }
    }
  }
  return out;
}

BatchResult run_batch(const ExperimentConfig& experiment, const BatchOptions& options) {
  experiment.validate();
  BatchResult result;
  result.scenario = experiment.base.name;
  for (Variant& v : expand(experiment)) {
    if (!options.mode || v.mode == *options.mode) result.variants.push_back(std::move(v));
  }
  if (result.variants.empty()) throw std::invalid_argument("mode: not part of experiment.modes");
  result.seeds = options.seeds.empty() ? experiment.run_seeds() : options.seeds;

  const std::size_t jobs = result.variants.size() * result.seeds.size();
  result.runs.resize(jobs);
  std::vector<std::string> traces(options.traces ? jobs : 0);
  std::vector<std::exception_ptr> errors(jobs);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t job = next++; job < jobs; job = next++) {
      const std::size_t vi = job / result.seeds.size();
      const std::uint64_t seed = result.seeds[job % result.seeds.size()];
      try {
        RunResult r = run(result.variants[vi].scenario, seed);
        spdlog::debug("{} seed {} pdr {}", result.variants[vi].key(), seed, num(r.metrics.pdr));
        result.runs[job] = {vi, seed, std::move(r.metrics)};
        if (options.traces) {
          std::ostringstream os;
          write_trace(os, r.trace);
          traces[job] = os.str();
        }
      } catch (...) {
        errors[job] = std::current_exception();
      }
    }
  };

  unsigned n = options.workers != 0 ? options.workers : std::max(1u, std::thread::hardware_concurrency());
  n = static_cast<unsigned>(std::min<std::size_t>(n, jobs));
  {
    std::vector<std::jthread> pool;
    for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
    worker();
  }
  for (std::size_t job = 0; job < jobs; ++job) {
    if (errors[job]) std::rethrow_exception(errors[job]);
  }

  if (options.traces) {
    for (std::size_t job = 0; job < jobs; ++job) {
      const Variant& v = result.variants[job / result.seeds.size()];
      std::string name = v.key();
      std::replace(name.begin(), name.end(), '/', '_');
      result.traces.emplace_back(fmt::format("trace_{}_seed{}.txt", name, result.runs[job].seed),
                                 std::move(traces[job]));
    }
  }
  return result;
}

std::string runs_csv_header() {
  return "schema_version,scenario,mode,mobility,replay_interval_s,seed,pdr,ae2ed_s,ada,ada_block,"
         "mean_frt_s,undetected_attackers,data_generated,data_sent,data_received,retransmissions,"
         "dio_sent,dis_sent,dao_sent,replays_sent,probes_sent,loops,parent_switches,true_detections,"
         "false_suspicions,permanent_blocks_legit,permanent_blocks_attacker,frt_per_attacker\n";
}

std::string runs_csv(const BatchResult& r) {
  std::string out = runs_csv_header();
  for (const RunRecord& run : r.runs) {
    const Variant& v = r.variants[run.variant];
    const RunMetrics& m = run.metrics;
    std::string frt;
    for (const AttackerResult& a : m.attackers) {
      if (!frt.empty()) frt += ';';
      frt += fmt::format("{}:{}", raw(a.id), num(a.frt_s));
    }
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
                       kSchemaVersion, r.scenario, mode_name(v.mode), mobility_name(v.mobility), interval_label(v),
                       run.seed, num(m.pdr), num(m.ae2ed_s), num(m.ada), num(m.ada_block), num(m.mean_frt_s()),
                       m.undetected(), m.data_generated, m.data_sent, m.data_received, m.retransmissions,
                       m.dio_sent, m.dis_sent, m.dao_sent, m.replays_sent, m.probes_sent, m.loops,
                       m.parent_switches, m.true_detections, m.false_suspicions, m.permanent_blocks_legit,
                       m.permanent_blocks_attacker, frt.empty() ? "NA" : frt);
  }
  return out;
}

std::string aggregate_csv_header() {
  return "schema_version,scenario,mode,mobility,replay_interval_s,runs,pdr_mean,pdr_ci95,ae2ed_mean,"
         "ae2ed_ci95,ada_mean,ada_ci95,ada_block_mean,ada_block_ci95,frt_mean,frt_ci95,"
         "false_suspicions_mean,permanent_blocks_legit_total,undetected_attackers_total\n";
}

std::string aggregate_csv(const BatchResult& r) {
  std::string out = aggregate_csv_header();
  for (std::size_t i = 0; i < r.variants.size(); ++i) {
    const Variant& v = r.variants[i];
    std::size_t runs = 0;
    std::uint64_t blocks_legit = 0;
    std::uint64_t undetected = 0;
    for (const RunRecord& run : r.runs) {
      if (run.variant != i) continue;
      ++runs;
      blocks_legit += run.metrics.permanent_blocks_legit;
      undetected += run.metrics.undetected();
    }
    const Estimate fs = summarize(r, i, [](const RunMetrics& m) -> std::optional<double> {
      return static_cast<double>(m.false_suspicions);
    });
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", kSchemaVersion, r.scenario, mode_name(v.mode),
                       mobility_name(v.mobility), interval_label(v), runs,
                       est(summarize(r, i, [](const RunMetrics& m) { return m.pdr; })),
                       est(summarize(r, i, [](const RunMetrics& m) { return m.ae2ed_s; })),
                       est(summarize(r, i, [](const RunMetrics& m) { return m.ada; })),
                       est(summarize(r, i, [](const RunMetrics& m) { return m.ada_block; })),
                       est(summarize(r, i, [](const RunMetrics& m) { return m.mean_frt_s(); })), num(fs.mean),
                       blocks_legit, undetected);
  }
  return out;
}

std::string pdr_plot(const BatchResult& r) { return interval_plot(r, "pdr", pdr_of); }

std::string ae2ed_plot(const BatchResult& r) { return interval_plot(r, "ae2ed_s", ae2ed_of); }

std::string ada_plot(const BatchResult& r) {
  std::string out = "# mobility replay_interval_s ada_mean ada_ci95 ada_block_mean ada_block_ci95 runs\n";
  for (std::size_t i = 0; i < r.variants.size(); ++i) {
    const Variant& v = r.variants[i];
    if (v.mode != Mode::kCosec) continue;
    const Estimate a = summarize(r, i, [](const RunMetrics& m) { return m.ada; });
    const Estimate b = summarize(r, i, [](const RunMetrics& m) { return m.ada_block; });
    out += fmt::format("{} {} {} {} {}\n", mobility_name(v.mobility), interval_label(v), est_dat(a), est_dat(b), a.n);
  }
  return out;
}

std::string frt_plot(const BatchResult& r) {
  std::string out = "# mobility replay_interval_s attacker frt_mean_s frt_ci95_s detected runs\n";
  for (std::size_t i = 0; i < r.variants.size(); ++i) {
    const Variant& v = r.variants[i];
    if (v.mode != Mode::kCosec) continue;
    std::map<std::uint32_t, std::vector<std::optional<double>>> per_attacker;
    std::size_t runs = 0;
    for (const RunRecord& run : r.runs) {
      if (run.variant != i) continue;
      ++runs;
      for (const AttackerResult& a : run.metrics.attackers) per_attacker[raw(a.id)].push_back(a.frt_s);
    }
    for (const auto& [id, samples] : per_attacker) {
      const Estimate e = estimate(samples);
      out += fmt::format("{} {} {} {} {} {}\n", mobility_name(v.mobility), interval_label(v), id, est_dat(e), e.n,
                         runs);
    }
  }
  return out;
}

void write_results(const BatchResult& result, const std::filesystem::path& out_dir) {
  namespace fs = std::filesystem;
  std::vector<std::pair<std::string, std::string>> files{
      {"runs.csv", runs_csv(result)},
      {"aggregate.csv", aggregate_csv(result)},
      {"pdr_vs_interval.dat", pdr_plot(result)},
      {"ae2ed_vs_interval.dat", ae2ed_plot(result)},
      {"ada.dat", ada_plot(result)},
      {"frt.dat", frt_plot(result)},
  };
  files.insert(files.end(), result.traces.begin(), result.traces.end());

  const fs::path target = fs::absolute(out_dir).lexically_normal();
  const fs::path staging = target.parent_path() / (target.filename().string() + ".partial");
  fs::remove_all(staging);
  fs::create_directories(staging);
  try {
    for (const auto& [name, text] : files) {
      std::ofstream os(staging / name, std::ios::binary);
      os << text;
      if (!os) throw std::runtime_error("cannot write " + (staging / name).string());
    }
    fs::create_directories(target);
    for (const auto& [name, text] : files) fs::rename(staging / name, target / name);
  } catch (...) {
    fs::remove_all(staging);
    throw;
  }
  fs::remove_all(staging);
}

}  // namespace cosec
