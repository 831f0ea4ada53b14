#include "cosec/trace.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace cosec {
namespace {

struct KindInfo {
  TraceKind kind;
  std::string_view name;
  std::array<std::string_view, 3> fields;
};

constexpr std::array<KindInfo, kTraceKindCount> kKinds{{
    {TraceKind::kDioTx, "DIO_TX", {"rank", "version", ""}},
    {TraceKind::kDioRx, "DIO_RX", {"from", "rank", ""}},
    {TraceKind::kDioDiscard, "DIO_DISCARD", {"from", "", ""}},
    {TraceKind::kReplayTx, "REPLAY_TX", {"", "", ""}},
    {TraceKind::kDisTx, "DIS_TX", {"", "", ""}},
    {TraceKind::kDaoTx, "DAO_TX", {"parent", "", ""}},
    {TraceKind::kProbeTx, "PROBE_TX", {"target", "ok", ""}},
    {TraceKind::kDataGen, "DATA_GEN", {"seq", "", ""}},
    {TraceKind::kDataTx, "DATA_TX", {"origin", "seq", "attempt"}},
    {TraceKind::kDataRecv, "DATA_RECV", {"origin", "seq", "delay_ms"}},
    {TraceKind::kDataDrop, "DATA_DROP", {"origin", "seq", "reason"}},
    {TraceKind::kParentSwitch, "PARENT_SWITCH", {"old", "new", "rank"}},
    {TraceKind::kTrickleReset, "TRICKLE_RESET", {"", "", ""}},
    {TraceKind::kDetach, "DETACH", {"", "", ""}},
    {TraceKind::kIdsSuspect, "IDS_SUSPECT", {"subject", "count", ""}},
    {TraceKind::kIdsBlock, "IDS_BLOCK", {"subject", "count", ""}},
    {TraceKind::kIdsOverflow, "IDS_OVERFLOW", {"subject", "", ""}},
    {TraceKind::kAttackLaunch, "ATTACK_LAUNCH", {"interval", "", ""}},
    {TraceKind::kGlobalRepair, "GLOBAL_REPAIR", {"version", "", ""}},
}};

const KindInfo& info(TraceKind kind) { return kKinds.at(static_cast<std::size_t>(kind)); }

constexpr std::string_view kHeader = "# cosecsim-trace v1";
constexpr std::string_view kAttackerPrefix = "# attacker ";

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw std::runtime_error("trace line " + std::to_string(line) + ": " + what);
}

std::int64_t parse_int(std::string_view text, std::size_t line) {
  try {
    std::size_t used = 0;
    const std::string s(text);
    const long long v = std::stoll(s, &used);
    if (used != s.size()) fail(line, "bad number '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    fail(line, "bad number '" + std::string(text) + "'");
  }
}

// "name=value" -> value, checking the name.
std::int64_t parse_field(const std::string& token, std::string_view name, std::size_t line) {
  const auto eq = token.find('=');
  if (eq == std::string::npos || std::string_view(token).substr(0, eq) != name) {
    fail(line, "expected field '" + std::string(name) + "', got '" + token + "'");
  }
  return parse_int(std::string_view(token).substr(eq + 1), line);
}

NodeId parse_node(std::string_view text, std::size_t line) {
  if (text == "null") return kNullNode;
  const std::int64_t v = parse_int(text, line);
  if (v < 0 || v >= static_cast<std::int64_t>(raw(kNullNode))) fail(line, "bad node id");
  return node_id(static_cast<std::uint32_t>(v));
}

}  // namespace

bool Trace::is_attacker(NodeId id) const {
  return std::any_of(attackers.begin(), attackers.end(), [id](const AttackTruth& a) { return a.id == id; });
}

std::string_view kind_name(TraceKind kind) { return info(kind).name; }

std::array<std::string_view, 3> field_names(TraceKind kind) { return info(kind).fields; }

void write_trace(std::ostream& os, const Trace& trace) {
  os << kHeader << '\n';
  for (const AttackTruth& a : trace.attackers) {
    os << kAttackerPrefix << "id=" << raw(a.id) << " start_ms=" << a.start << " interval_ms=" << a.interval
       << '\n';
  }
  for (const TraceRecord& r : trace.records) {
    const KindInfo& k = info(r.kind);
    os << r.t << ' ' << r.node << ' ' << k.name;
    const std::int64_t values[3] = {r.a, r.b, r.c};
    for (std::size_t i = 0; i < 3 && !k.fields[i].empty(); ++i) os << ' ' << k.fields[i] << '=' << values[i];
    os << '\n';
  }
}

Trace read_trace(std::istream& is) {
  Trace trace;
  std::string line;
  std::size_t n = 0;
  bool header = false;
  while (std::getline(is, line)) {
    ++n;
    if (line.empty()) continue;
    if (!header) {
      if (line != kHeader) fail(n, "missing trace header");
      header = true;
      continue;
    }
    std::istringstream in(line);
    if (line.starts_with(kAttackerPrefix)) {
      std::string hash, word, id, start, interval;
      in >> hash >> word >> id >> start >> interval;
      const std::int64_t raw_id = parse_field(id, "id", n);
      trace.attackers.push_back({parse_node(std::to_string(raw_id), n), parse_field(start, "start_ms", n),
                                 parse_field(interval, "interval_ms", n)});
      continue;
    }
    if (line.front() == '#') continue;

    std::string t, node, kind;
    if (!(in >> t >> node >> kind)) fail(n, "truncated record");
    auto it = std::find_if(kKinds.begin(), kKinds.end(), [&kind](const KindInfo& k) { return k.name == kind; });
    if (it == kKinds.end()) fail(n, "unknown kind '" + kind + "'");

    TraceRecord r{parse_int(t, n), parse_node(node, n), it->kind};
    std::int64_t* slots[3] = {&r.a, &r.b, &r.c};
    for (std::size_t i = 0; i < 3 && !it->fields[i].empty(); ++i) {
      std::string token;
      if (!(in >> token)) fail(n, "missing field '" + std::string(it->fields[i]) + "'");
      *slots[i] = parse_field(token, it->fields[i], n);
    }
    std::string extra;
    if (in >> extra) fail(n, "unexpected '" + extra + "'");
    trace.records.push_back(r);
  }
  if (!header) fail(n, "missing trace header");
  return trace;
}

}  // namespace cosec
