#pragma once

// Minimal RPL routing behavior: DODAG join, rank and preferred-parent
// selection (MRHOF over ETX, or OF0), trickle-driven DIO emission, DIS
// solicitation, upward data forwarding and global repair.
//
// The functions here mutate routing state and return the protocol actions the
// caller has to carry out (transmissions, timer resets). They never touch the
// radio or the clock themselves.

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <variant>
#include <vector>

#include "cosec/ids.hpp"
#include "cosec/trickle.hpp"
#include "cosec/types.hpp"

namespace cosec {

enum class Role { kRoot, kSensor, kAttacker };
enum class ObjectiveFunction { kMrhofEtx, kOf0 };

struct DioMessage {
  NodeId src = kNullNode;
  std::uint32_t dodag_id = 0;
  std::uint32_t version = 0;
  Rank rank = kInfiniteRank;
  std::uint32_t instance_id = 0;

  /// Everything but the source address.
  bool same_payload(const DioMessage& o) const {
    return dodag_id == o.dodag_id && version == o.version && rank == o.rank &&
           instance_id == o.instance_id;
  }
  friend bool operator==(const DioMessage&, const DioMessage&) = default;
};

struct RplConfig {
  ObjectiveFunction objective = ObjectiveFunction::kMrhofEtx;
  Rank min_rank = 128;
  Rank mrhof_rank_factor = 128;  // rank increase per unit of ETX
  Rank of0_rank_increase = 256;
  Rank hysteresis = 192;
  double etx_alpha = 0.9;        // weight of the previous ETX estimate
  double etx_noack_penalty = 4.0;
  int max_link_failures = 2;     // consecutive undelivered packets before a parent is dropped
  TimeMs dio_processing = 10;    // node busy time per accepted DIO
  TimeMs dis_delay = 10'000;     // first DIS from a node that has not joined
  TimeMs dis_interval = 60'000;
  TimeMs dis_jitter = 1'000;
  TrickleConfig trickle;

  /// MRHOF admits a neighbor only after a successful link probe; OF0 does not
  /// check reachability.
  bool probes_neighbors() const { return objective == ObjectiveFunction::kMrhofEtx; }
  void validate() const;
  friend bool operator==(const RplConfig&, const RplConfig&) = default;
};

struct ParentCandidate {
  NodeId id = kNullNode;
  Rank rank = kInfiniteRank;  // advertised by the candidate
  double etx = 1.0;
  int failures = 0;
};

struct ParentChoice {
  NodeId preferred = kNullNode;
  Rank rank = kInfiniteRank;  // resulting own rank
};

Rank rank_increase(const RplConfig& config, double etx);
Rank path_cost(const RplConfig& config, const ParentCandidate& candidate);

/// Lowest path cost wins, ties go to the lowest address. Empty input yields
/// no parent and infinite rank.
ParentChoice objective_function(std::span<const ParentCandidate> candidates, const RplConfig& config);

/// objective_function plus MRHOF hysteresis: the current parent is kept
/// unless the best alternative is cheaper by more than the hysteresis.
ParentChoice select_parent(NodeId current, std::span<const ParentCandidate> candidates,
                           const RplConfig& config);

namespace action {
struct Discarded {};
struct Probe {
  NodeId target;
  DioMessage dio;
};
struct TrickleReset {};
struct ParentSwitch {
  NodeId from;
  NodeId to;
  Rank rank;
};
struct SendDao {
  NodeId parent;
};
struct SendDis {};
struct Detached {};
struct IdsReport {
  DioVerdict verdict;
};
}  // namespace action

using RplAction = std::variant<action::Discarded, action::Probe, action::TrickleReset,
                               action::ParentSwitch, action::SendDao, action::SendDis,
                               action::Detached, action::IdsReport>;

struct RplNode {
  RplNode(NodeId id, Role role, const RplConfig& config, std::optional<IdsConfig> ids = std::nullopt);

  NodeId id;
  Role role;
  RplConfig config;
  Rank rank = kInfiniteRank;
  NodeId preferred_parent = kNullNode;
  std::vector<ParentCandidate> parent_set;
  std::set<NodeId> verified;  // neighbors with a completed bidirectional exchange
  std::uint32_t dodag_id = 0;
  std::uint32_t version = 0;
  std::uint32_t instance_id = 0;
  bool ever_joined = false;
  TrickleTimer trickle;
  std::optional<IdsState> ids;

  bool joined() const { return role == Role::kRoot || preferred_parent != kNullNode; }
  const ParentCandidate* candidate(NodeId n) const;
  DioMessage make_dio() const;
};

/// Gateway bootstrap: fixed minimum rank, version 0. The caller starts the
/// trickle timer.
void start_root(RplNode& root, std::uint32_t dodag_id);

std::vector<RplAction> handle_dio(RplNode& node, const DioMessage& dio, TimeMs now);

/// Completes DIO processing for a neighbor whose link probe came back.
std::vector<RplAction> on_probe_result(RplNode& node, const DioMessage& dio, bool success, TimeMs now);

/// A multicast DIS from a neighbor resets the trickle timer of joined nodes.
std::vector<RplAction> handle_dis(RplNode& node);

/// Link-layer outcome of one data packet towards `neighbor` after `attempts`
/// transmissions.
std::vector<RplAction> on_tx_outcome(RplNode& node, NodeId neighbor, int attempts, bool delivered);

/// Drops a neighbor from the candidate set, e.g. once the IDS blocked it.
std::vector<RplAction> forget_neighbor(RplNode& node, NodeId neighbor);

/// Root only: bump the DODAG version so every node rebuilds its routes.
std::vector<RplAction> global_repair(RplNode& root);

struct DataPacket {
  NodeId origin = kNullNode;
  std::uint32_t seq = 0;
  TimeMs created = 0;
  std::uint32_t size = 30;
  std::vector<NodeId> path;  // nodes that have handled the packet, origin first
};

enum class ForwardKind { kDeliver, kForward, kNoParent, kLoop };

struct ForwardDecision {
  ForwardKind kind;
  NodeId next_hop = kNullNode;
};

/// Called when `node` takes ownership of a packet (origin or relay). Records
/// the node on the packet path.
ForwardDecision forward_data(const RplNode& node, DataPacket& packet);

}  // namespace cosec
