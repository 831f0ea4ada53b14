#pragma once

// Event trace of one run. Metrics are computed from the trace alone, so a
// stored trace reproduces the live numbers.
//
// Text form, one record per line:
//   # cosecsim-trace v1
//   # attacker id=17 start_ms=90000 interval_ms=1000
//   <t_ms> <node> <KIND> [name=value ...]

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "cosec/types.hpp"

namespace cosec {

enum class TraceKind : std::uint8_t {
  kDioTx,         // rank, version
  kDioRx,         // from, rank
  kDioDiscard,    // from (blocked sender)
  kReplayTx,      //
  kDisTx,         //
  kDaoTx,         // parent
  kProbeTx,       // target, ok
  kDataGen,       // seq
  kDataTx,        // origin, seq, attempt
  kDataRecv,      // origin, seq, delay_ms
  kDataDrop,      // origin, seq, reason
  kParentSwitch,  // old, new, rank
  kTrickleReset,  //
  kDetach,        //
  kIdsSuspect,    // subject, count
  kIdsBlock,      // subject, count
  kIdsOverflow,   // subject
  kAttackLaunch,  // interval
  kGlobalRepair,  // version
};

inline constexpr std::size_t kTraceKindCount = 19;

enum class DropReason : std::int64_t { kNoParent = 0, kLink = 1, kLoop = 2, kQueue = 3 };

struct TraceRecord {
  TimeMs t = 0;
  NodeId node = kNullNode;
  TraceKind kind = TraceKind::kDioTx;
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::int64_t c = 0;
  friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

struct AttackTruth {
  NodeId id = kNullNode;
  TimeMs start = 0;
  TimeMs interval = 0;
  friend bool operator==(const AttackTruth&, const AttackTruth&) = default;
};

struct Trace {
  std::vector<AttackTruth> attackers;
  std::vector<TraceRecord> records;

  void add(TimeMs t, NodeId node, TraceKind kind, std::int64_t a = 0, std::int64_t b = 0,
           std::int64_t c = 0) {
    records.push_back({t, node, kind, a, b, c});
  }
  bool is_attacker(NodeId id) const;
  friend bool operator==(const Trace&, const Trace&) = default;
};

std::string_view kind_name(TraceKind kind);
/// Names of the payload fields used by `kind`, in a/b/c order.
std::array<std::string_view, 3> field_names(TraceKind kind);

void write_trace(std::ostream& os, const Trace& trace);
/// Throws std::runtime_error with the line number on malformed input.
Trace read_trace(std::istream& is);

}  // namespace cosec
