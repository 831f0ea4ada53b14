#include "cosec/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include <boost/math/distributions/students_t.hpp>

namespace cosec {
namespace {

bool is_detection(TraceKind k) { return k == TraceKind::kIdsSuspect || k == TraceKind::kIdsBlock; }

NodeId subject(const TraceRecord& r) { return node_id(static_cast<std::uint32_t>(r.a)); }

}  // namespace

std::optional<double> RunMetrics::mean_frt_s() const {
  double sum = 0.0;
  std::size_t n = 0;
  for (const AttackerResult& a : attackers) {
    if (a.frt_s) {
      sum += *a.frt_s;
      ++n;
    }
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

std::size_t RunMetrics::undetected() const {
  return static_cast<std::size_t>(
      std::count_if(attackers.begin(), attackers.end(), [](const AttackerResult& a) { return !a.frt_s; }));
}

std::optional<double> compute_pdr(const Trace& trace) {
  std::uint64_t sent = 0;
  std::uint64_t received = 0;
  for (const TraceRecord& r : trace.records) {
    if (r.kind == TraceKind::kDataGen) ++sent;
    if (r.kind == TraceKind::kDataTx && r.c >= 2) ++sent;
    if (r.kind == TraceKind::kDataRecv) ++received;
  }
  if (sent == 0) return std::nullopt;
  return static_cast<double>(received) / static_cast<double>(sent);
}

std::optional<double> compute_ae2ed(const Trace& trace) {
  double total_ms = 0.0;
  std::uint64_t n = 0;
  for (const TraceRecord& r : trace.records) {
    if (r.kind != TraceKind::kDataRecv) continue;
    total_ms += static_cast<double>(r.c);
    ++n;
  }
  if (n == 0) return std::nullopt;
  return total_ms / static_cast<double>(n) / 1000.0;
}

std::optional<double> compute_ada(const Trace& trace, bool blocks_only) {
  std::uint64_t hits = 0;
  std::uint64_t misses = 0;
  for (const TraceRecord& r : trace.records) {
    const bool counted = blocks_only ? r.kind == TraceKind::kIdsBlock : is_detection(r.kind);
    if (!counted) continue;
    (trace.is_attacker(subject(r)) ? hits : misses) += 1;
  }
  if (hits + misses == 0) return std::nullopt;
  return static_cast<double>(hits) / static_cast<double>(hits + misses);
}

std::vector<AttackerResult> compute_frt(const Trace& trace) {
  std::map<NodeId, TimeMs> launch;
  std::map<NodeId, TimeMs> first_detect;
  std::map<NodeId, TimeMs> first_block;
  for (const TraceRecord& r : trace.records) {
    if (r.kind == TraceKind::kAttackLaunch) launch.try_emplace(r.node, r.t);
    if (is_detection(r.kind)) first_detect.try_emplace(subject(r), r.t);
    if (r.kind == TraceKind::kIdsBlock) first_block.try_emplace(subject(r), r.t);
  }

  std::vector<AttackerResult> out;
  for (const AttackTruth& a : trace.attackers) {
    AttackerResult res;
    res.id = a.id;
    auto l = launch.find(a.id);
    if (l != launch.end()) {
      auto since_launch = [&](const std::map<NodeId, TimeMs>& m) -> std::optional<double> {
        auto it = m.find(a.id);
        if (it == m.end() || it->second < l->second) return std::nullopt;
        return to_seconds(it->second - l->second);
      };
      res.frt_s = since_launch(first_detect);
      res.block_s = since_launch(first_block);
    }
    out.push_back(res);
  }
  std::sort(out.begin(), out.end(), [](const AttackerResult& x, const AttackerResult& y) { return raw(x.id) < raw(y.id); });
  return out;
}

RunMetrics compute_metrics(const Trace& trace) {
  RunMetrics m;
  m.pdr = compute_pdr(trace);
  m.ae2ed_s = compute_ae2ed(trace);
  m.ada = compute_ada(trace, false);
  m.ada_block = compute_ada(trace, true);
  m.attackers = compute_frt(trace);

  for (const TraceRecord& r : trace.records) {
    switch (r.kind) {
      case TraceKind::kDataGen: ++m.data_generated; break;
      case TraceKind::kDataTx:
        if (r.c >= 2) ++m.retransmissions;
        break;
      case TraceKind::kDataRecv: ++m.data_received; break;
      case TraceKind::kDataDrop:
        if (r.c == static_cast<std::int64_t>(DropReason::kLoop)) ++m.loops;
        break;
      case TraceKind::kDioTx: ++m.dio_sent; break;
      case TraceKind::kDisTx: ++m.dis_sent; break;
      case TraceKind::kDaoTx: ++m.dao_sent; break;
      case TraceKind::kReplayTx: ++m.replays_sent; break;
      case TraceKind::kProbeTx: ++m.probes_sent; break;
      case TraceKind::kParentSwitch: ++m.parent_switches; break;
      case TraceKind::kIdsSuspect:
      case TraceKind::kIdsBlock: {
        const bool attacker = trace.is_attacker(subject(r));
        (attacker ? m.true_detections : m.false_suspicions) += 1;
        if (r.kind == TraceKind::kIdsBlock) (attacker ? m.permanent_blocks_attacker : m.permanent_blocks_legit) += 1;
        break;
      }
      default: break;
    }
  }
  m.data_sent = m.data_generated + m.retransmissions;
  return m;
}

std::optional<double> Estimate::low() const {
  if (!mean || !half_width) return std::nullopt;
  return *mean - *half_width;
}

std::optional<double> Estimate::high() const {
  if (!mean || !half_width) return std::nullopt;
  return *mean + *half_width;
}

Estimate estimate(std::span<const std::optional<double>> samples, double confidence) {
  std::vector<double> v;
  for (const auto& s : samples) {
    if (s) v.push_back(*s);
  }
  Estimate e;
  e.n = v.size();
  if (v.empty()) return e;
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  e.mean = mean;
  if (v.size() < 2) return e;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / static_cast<double>(v.size() - 1));
  const boost::math::students_t dist(static_cast<double>(v.size() - 1));
  const double t = boost::math::quantile(boost::math::complement(dist, (1.0 - confidence) / 2.0));
  e.half_width = t * sd / std::sqrt(static_cast<double>(v.size()));
  return e;
}

}  // namespace cosec
