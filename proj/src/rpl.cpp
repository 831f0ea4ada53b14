#include "cosec/rpl.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cosec {

void RplConfig::validate() const {
  if (min_rank == 0 || min_rank >= kInfiniteRank) throw std::invalid_argument("rpl.min_rank: out of range");
  if (mrhof_rank_factor == 0) throw std::invalid_argument("rpl.mrhof_rank_factor: must be > 0");
  if (of0_rank_increase == 0) throw std::invalid_argument("rpl.of0_rank_increase: must be > 0");
  if (!(etx_alpha >= 0.0 && etx_alpha < 1.0)) throw std::invalid_argument("rpl.etx_alpha: must be in [0, 1)");
  if (!(etx_noack_penalty >= 1.0)) throw std::invalid_argument("rpl.etx_noack_penalty: must be >= 1");
  if (max_link_failures < 1) throw std::invalid_argument("rpl.max_link_failures: must be >= 1");
  if (dio_processing < 0) throw std::invalid_argument("rpl.dio_processing_ms: must be >= 0");
  if (dis_delay < 0 || dis_interval <= 0 || dis_jitter < 0)
    throw std::invalid_argument("rpl.dis_interval_ms: timings must be positive");
  trickle.validate();
}

Rank rank_increase(const RplConfig& config, double etx) {
  if (config.objective == ObjectiveFunction::kOf0) return config.of0_rank_increase;
  return static_cast<Rank>(std::lround(config.mrhof_rank_factor * std::max(1.0, etx)));
}

Rank path_cost(const RplConfig& config, const ParentCandidate& candidate) {
  if (candidate.rank >= kInfiniteRank) return kInfiniteRank;
  const std::uint64_t cost =
      static_cast<std::uint64_t>(candidate.rank) + rank_increase(config, candidate.etx);
  return static_cast<Rank>(std::min<std::uint64_t>(cost, kInfiniteRank));
}

ParentChoice objective_function(std::span<const ParentCandidate> candidates, const RplConfig& config) {
  ParentChoice best;
  for (const ParentCandidate& c : candidates) {
    const Rank cost = path_cost(config, c);
    if (cost >= kInfiniteRank) continue;
    if (best.preferred == kNullNode || cost < best.rank ||
        (cost == best.rank && raw(c.id) < raw(best.preferred))) {
      best = {c.id, cost};
    }
  }
  return best;
}

ParentChoice select_parent(NodeId current, std::span<const ParentCandidate> candidates,
                           const RplConfig& config) {
  const ParentChoice best = objective_function(candidates, config);
  if (best.preferred == kNullNode || current == kNullNode || best.preferred == current) return best;
  if (config.objective != ObjectiveFunction::kMrhofEtx) return best;

  auto it = std::find_if(candidates.begin(), candidates.end(),
                         [current](const ParentCandidate& c) { return c.id == current; });
  if (it == candidates.end()) return best;
  const Rank current_cost = path_cost(config, *it);
  if (current_cost >= kInfiniteRank) return best;
  if (static_cast<std::uint64_t>(best.rank) + config.hysteresis < current_cost) return best;
  return {current, current_cost};
}

RplNode::RplNode(NodeId id_, Role role_, const RplConfig& config_, std::optional<IdsConfig> ids_config)
    : id(id_), role(role_), config(config_), trickle(config_.trickle) {
  config.validate();
  if (ids_config && role != Role::kAttacker) ids.emplace(*ids_config);
}

const ParentCandidate* RplNode::candidate(NodeId n) const {
  auto it = std::find_if(parent_set.begin(), parent_set.end(),
                         [n](const ParentCandidate& c) { return c.id == n; });
  return it == parent_set.end() ? nullptr : &*it;
}

DioMessage RplNode::make_dio() const { return {id, dodag_id, version, rank, instance_id}; }

void start_root(RplNode& root, std::uint32_t dodag_id) {
  root.dodag_id = dodag_id;
  root.version = 0;
  root.rank = root.config.min_rank;
  root.preferred_parent = kNullNode;
  root.parent_set.clear();
  root.ever_joined = true;
}

namespace {

void reselect(RplNode& node, std::vector<RplAction>& out) {
  const ParentChoice choice = select_parent(node.preferred_parent, node.parent_set, node.config);
  if (choice.preferred == kNullNode) {
    if (node.preferred_parent != kNullNode) {
      node.preferred_parent = kNullNode;
      node.rank = kInfiniteRank;
      out.emplace_back(action::Detached{});
      out.emplace_back(action::TrickleReset{});
      out.emplace_back(action::SendDis{});
    }
    return;
  }
  if (choice.preferred != node.preferred_parent) {
    out.emplace_back(action::ParentSwitch{node.preferred_parent, choice.preferred, choice.rank});
    out.emplace_back(action::TrickleReset{});
    out.emplace_back(action::SendDao{choice.preferred});
    node.preferred_parent = choice.preferred;
    node.ever_joined = true;
  }
  node.rank = choice.rank;
  // max_depth rule: nothing at or below our own rank stays a candidate.
  std::erase_if(node.parent_set, [&node](const ParentCandidate& c) {
    return c.id != node.preferred_parent && c.rank >= node.rank;
  });
}

bool has_reset(const std::vector<RplAction>& out, std::size_t from) {
  for (std::size_t i = from; i < out.size(); ++i) {
    if (std::holds_alternative<action::TrickleReset>(out[i])) return true;
  }
  return false;
}

void apply_candidate(RplNode& node, const DioMessage& dio, std::vector<RplAction>& out) {
  const std::size_t mark = out.size();
  auto it = std::find_if(node.parent_set.begin(), node.parent_set.end(),
                         [&dio](const ParentCandidate& c) { return c.id == dio.src; });
  bool touched = false;
  if (it != node.parent_set.end()) {
    if (dio.rank >= kInfiniteRank || dio.rank >= node.rank) {
      node.parent_set.erase(it);
    } else {
      it->rank = dio.rank;
    }
    touched = true;
  } else if (dio.rank < kInfiniteRank && dio.rank < node.rank) {
    node.parent_set.push_back({dio.src, dio.rank, 1.0, 0});
    touched = true;
  }
  if (touched) reselect(node, out);
  if (!has_reset(out, mark)) node.trickle.hear_consistent();
}

void process_routing(RplNode& node, const DioMessage& dio, std::vector<RplAction>& out) {
  if (node.ever_joined && dio.dodag_id != node.dodag_id) return;
  if (dio.version < node.version) return;
  if (dio.version > node.version || !node.ever_joined) {
    if (dio.version > node.version) {
      node.parent_set.clear();
      node.preferred_parent = kNullNode;
      node.rank = kInfiniteRank;
    }
    node.version = dio.version;
    node.dodag_id = dio.dodag_id;
    node.instance_id = dio.instance_id;
  }
  if (node.config.probes_neighbors() && !node.verified.contains(dio.src)) {
    out.emplace_back(action::Probe{dio.src, dio});
    return;
  }
  apply_candidate(node, dio, out);
}

}  // namespace

std::vector<RplAction> handle_dio(RplNode& node, const DioMessage& dio, TimeMs now) {
  std::vector<RplAction> out;
  if (dio.src == node.id || node.role == Role::kAttacker) return out;

  if (node.ids) {
    DioVerdict verdict = node.ids->process_dio(dio.src, now);
    const bool discard = verdict.action == DioAction::kDiscardBlocked;
    if (verdict.checked || verdict.table_overflow) out.emplace_back(action::IdsReport{std::move(verdict)});
    if (discard) {
      out.emplace_back(action::Discarded{});
      return out;
    }
  }

  if (node.role == Role::kRoot) {
    if (dio.dodag_id == node.dodag_id && dio.version == node.version) node.trickle.hear_consistent();
    return out;
  }
  process_routing(node, dio, out);
  return out;
}

std::vector<RplAction> on_probe_result(RplNode& node, const DioMessage& dio, bool success, TimeMs) {
  std::vector<RplAction> out;
  if (!success || node.role != Role::kSensor) return out;
  node.verified.insert(dio.src);
  process_routing(node, dio, out);
  return out;
}

std::vector<RplAction> handle_dis(RplNode& node) {
  std::vector<RplAction> out;
  if (node.role != Role::kAttacker && node.joined()) out.emplace_back(action::TrickleReset{});
  return out;
}

std::vector<RplAction> on_tx_outcome(RplNode& node, NodeId neighbor, int attempts, bool delivered) {
  std::vector<RplAction> out;
  auto it = std::find_if(node.parent_set.begin(), node.parent_set.end(),
                         [neighbor](const ParentCandidate& c) { return c.id == neighbor; });
  if (it == node.parent_set.end()) return out;

  const double sample = delivered ? static_cast<double>(attempts) : node.config.etx_noack_penalty;
  it->etx = std::max(1.0, node.config.etx_alpha * it->etx + (1.0 - node.config.etx_alpha) * sample);
  it->failures = delivered ? 0 : it->failures + 1;
  if (it->failures >= node.config.max_link_failures) {
    node.parent_set.erase(it);
    node.verified.erase(neighbor);
  }
  reselect(node, out);
  return out;
}

std::vector<RplAction> forget_neighbor(RplNode& node, NodeId neighbor) {
  std::vector<RplAction> out;
  node.verified.erase(neighbor);
  const auto removed = std::erase_if(node.parent_set, [neighbor](const ParentCandidate& c) { return c.id == neighbor; });
  if (removed > 0) reselect(node, out);
  return out;
}

std::vector<RplAction> global_repair(RplNode& root) {
  if (root.role != Role::kRoot) throw std::logic_error("global repair is a root operation");
  ++root.version;
  return {action::TrickleReset{}};
}

ForwardDecision forward_data(const RplNode& node, DataPacket& packet) {
  if (std::find(packet.path.begin(), packet.path.end(), node.id) != packet.path.end()) {
    return {ForwardKind::kLoop};
  }
  packet.path.push_back(node.id);
  if (node.role == Role::kRoot) return {ForwardKind::kDeliver};
  if (node.preferred_parent == kNullNode) return {ForwardKind::kNoParent};
  return {ForwardKind::kForward, node.preferred_parent};
}

}  // namespace cosec
