#include "cosec/engine.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <queue>
#include <stdexcept>

#include "cosec/attacker.hpp"
#include "cosec/mobility.hpp"
#include "cosec/radio.hpp"
#include "cosec/rng.hpp"

namespace cosec {

bool connected(std::span<const Vec2> positions, double range) {
  if (positions.empty()) return true;
  std::vector<bool> seen(positions.size(), false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    for (std::size_t j = 0; j < positions.size(); ++j) {
      if (!seen[j] && distance(positions[i], positions[j]) <= range) {
        seen[j] = true;
        ++reached;
        stack.push_back(j);
      }
    }
  }
  return reached == positions.size();
}

std::vector<Vec2> place_nodes(const ScenarioConfig& config, std::uint64_t seed) {
  const std::size_t legit = 1 + config.n_sensors;
  const std::size_t attackers = config.attack_enabled ? config.n_attackers : 0;
  if (config.topology.kind == TopologyKind::kExplicit) {
    const auto& p = config.topology.positions;
    std::vector<Vec2> out(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(legit));
    out.insert(out.end(), p.begin() + static_cast<std::ptrdiff_t>(legit),
               p.begin() + static_cast<std::ptrdiff_t>(legit + attackers));
    return out;
  }

  const double w = config.mobility.width;
  const double h = config.mobility.height;
  const double range = config.radio.tx_range;
  Rng topo(seed, "topology");
  std::vector<Vec2> out;
  for (int attempt = 0;; ++attempt) {
    if (attempt == config.topology.max_attempts) {
      throw std::runtime_error("topology: no connected layout found in " +
                               std::to_string(config.topology.max_attempts) + " attempts");
    }
    out.assign(1, Vec2{w / 2.0, h / 2.0});
    for (std::size_t i = 1; i < legit; ++i) out.push_back({topo.uniform(0.0, w), topo.uniform(0.0, h)});
    if (connected(out, range)) break;
  }

  Rng place(seed, "attackers");
  for (std::size_t a = 0; a < attackers; ++a) {
    for (int attempt = 0;; ++attempt) {
      if (attempt == config.topology.max_attempts) {
        throw std::runtime_error("topology: could not place an attacker near the network");
      }
      const Vec2 p{place.uniform(0.0, w), place.uniform(0.0, h)};
      const bool heard = std::any_of(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(legit),
                                     [&](const Vec2& q) { return distance(p, q) <= range; });
      if (heard) {
        out.push_back(p);
        break;
      }
    }
  }
  return out;
}

namespace {

enum class EventKind : std::uint8_t {
  kMsgDelivery,
  kMacService,
  kTrickleFire,
  kDataGen,
  kMobilityStep,
  kAttackStep,
  kIdsTick,
  kScript,
  kDisTimer,
  kProbeDone,
};

enum class FrameType : std::uint8_t { kDio, kDis, kDao, kData, kProbe };

struct Frame {
  explicit Frame(FrameType t, NodeId d = kNullNode) : type(t), dest(d) {}

  FrameType type;
  NodeId dest;
  DioMessage dio;
  DataPacket data;
  int attempt = 1;
};

struct Event {
  TimeMs t = 0;
  std::uint64_t seq = 0;
  EventKind kind = EventKind::kScript;
  NodeId node = kNullNode;
  std::int64_t aux = 0;
  std::uint64_t gen = 0;
  std::shared_ptr<const Frame> frame;
};

struct Later {
  bool operator()(const Event& a, const Event& b) const { return a.t != b.t ? a.t > b.t : a.seq > b.seq; }
};

struct SimNode {
  SimNode(NodeId id, Role role, const RplConfig& rpl_config, std::optional<IdsConfig> ids)
      : rpl(id, role, rpl_config, ids) {}

  RplNode rpl;
  std::optional<Attacker> attacker;
  TimeMs busy_until = 0;
  std::deque<Frame> txq;
  bool mac_pending = false;
  std::map<NodeId, DioMessage> pending_probes;  // latest DIO from each probed neighbor
  std::uint32_t next_seq = 0;
  std::uint64_t dis_gen = 0;
  bool poison_pending = false;  // a detached node still owes one infinite-rank DIO
};

std::int64_t node_field(NodeId id) { return id == kNullNode ? -1 : static_cast<std::int64_t>(raw(id)); }

}  // namespace

struct Simulation::Impl {
  Impl(const ScenarioConfig& c, std::uint64_t s)
      : config(c),
        seed(s),
        radio(c.radio),
        radio_rng(s, "radio"),
        mobility_rng(s, "mobility"),
        trickle_rng(s, "trickle"),
        jitter_rng(s, "jitter"),
        mac_rng(s, "mac") {
    config.validate();
    const std::vector<Vec2> positions = place_nodes(config, seed);
    const std::optional<IdsConfig> ids = config.ids_enabled ? std::optional(config.ids) : std::nullopt;

    const std::uint32_t legit = 1 + config.n_sensors;
    nodes.reserve(positions.size());
    for (std::uint32_t i = 0; i < positions.size(); ++i) {
      const Role role = i == 0 ? Role::kRoot : (i < legit ? Role::kSensor : Role::kAttacker);
      nodes.emplace_back(node_id(i), role, config.rpl, role == Role::kAttacker ? std::nullopt : ids);
      MobileState m;
      m.position = positions[i];
      m.mobile = role != Role::kRoot && config.mobility.model == MobilityModel::kRandomWaypoint;
      if (m.mobile) start_waypoint(m, config.mobility, mobility_rng);
      mobility.push_back(m);
      if (role == Role::kAttacker) {
        nodes.back().attacker.emplace(node_id(i), config.attacker);
        trace.attackers.push_back({node_id(i), config.attacker.attack_start, config.attacker.replay_interval});
      }
    }

    SimNode& root = nodes[0];
    start_root(root.rpl, 1);
    root.rpl.trickle.start(0, trickle_rng);
    arm_trickle(root);

    for (SimNode& n : nodes) {
      const NodeId id = n.rpl.id;
      switch (n.rpl.role) {
        case Role::kRoot: break;
        case Role::kSensor:
          schedule_dis(n, config.rpl.dis_delay + jitter_rng.uniform_int(0, config.rpl.dis_jitter));
          schedule(config.traffic.data_start + jitter_rng.uniform_int(0, config.traffic.data_interval - 1),
                   EventKind::kDataGen, id);
          break;
        case Role::kAttacker: schedule(config.attacker.attack_start, EventKind::kAttackStep, id); break;
      }
    }
    if (config.mobility.model == MobilityModel::kRandomWaypoint) {
      schedule(config.mobility.step, EventKind::kMobilityStep, kNullNode);
    }
    if (config.ids_enabled) schedule(config.ids.activation_delay, EventKind::kIdsTick, kNullNode);
    for (TimeMs t : config.global_repairs) schedule(t, EventKind::kScript, node_id(0));
  }

  // -- scheduling -----------------------------------------------------------

  void schedule(TimeMs t, EventKind kind, NodeId node, std::int64_t aux = 0, std::uint64_t gen = 0,
                std::shared_ptr<const Frame> frame = nullptr) {
    queue.push({std::max(t, now), next_seq++, kind, node, aux, gen, std::move(frame)});
  }

  void arm_trickle(SimNode& n) {
    if (!n.rpl.trickle.running()) return;
    schedule(n.rpl.trickle.next_deadline(), EventKind::kTrickleFire, n.rpl.id, 0, n.rpl.trickle.generation());
  }

  void reset_trickle(SimNode& n) {
    if (n.rpl.trickle.reset(now, trickle_rng)) {
      trace.add(now, n.rpl.id, TraceKind::kTrickleReset);
      arm_trickle(n);
    }
  }

  void schedule_dis(SimNode& n, TimeMs at) { schedule(at, EventKind::kDisTimer, n.rpl.id, 0, ++n.dis_gen); }

  SimNode& at(NodeId id) { return nodes.at(raw(id)); }
  Vec2 pos(NodeId id) const { return mobility.at(raw(id)).position; }
  bool busy(const SimNode& n) const { return n.busy_until > now; }
  // Half-duplex contention belongs to the airtime congestion model; without it
  // an in-range frame always gets through.
  bool deaf(const SimNode& n) const { return config.radio.congestion == CongestionModel::kAirtime && busy(n); }

  // -- MAC ------------------------------------------------------------------

  void kick(SimNode& n) {
    if (n.mac_pending || n.txq.empty()) return;
    n.mac_pending = true;
    schedule(std::max(now, n.busy_until), EventKind::kMacService, n.rpl.id);
  }

  void enqueue(SimNode& n, Frame f) {
    if (n.txq.size() >= config.traffic.queue_capacity) {
      if (f.type == FrameType::kData) {
        trace.add(now, n.rpl.id, TraceKind::kDataDrop, node_field(f.data.origin), f.data.seq,
                  static_cast<std::int64_t>(DropReason::kQueue));
      }
      if (f.type == FrameType::kProbe) n.pending_probes.erase(f.dest);
      return;
    }
    n.txq.push_back(std::move(f));
    kick(n);
  }

  void broadcast(SimNode& sender, const Frame& f) {
    const bool from_attacker = sender.rpl.role == Role::kAttacker;
    if (!from_attacker) sender.busy_until = now + config.radio.airtime_per_msg;
    std::vector<Receiver> receivers;
    for (const SimNode& n : nodes) {
      if (n.rpl.id == sender.rpl.id) continue;
      if (from_attacker && n.rpl.role == Role::kAttacker) continue;
      receivers.push_back({n.rpl.id, pos(n.rpl.id)});
    }
    const Vec2 origin = pos(sender.rpl.id);
    const std::vector<Delivery> outcome = radio.deliver(origin, receivers, now, radio_rng);
    auto shared = std::make_shared<const Frame>(f);
    for (std::size_t i = 0; i < receivers.size(); ++i) {
      if (!radio.in_range(origin, receivers[i].position)) continue;
      ++stats.receptions;
      if (outcome[i] == Delivery::kLost) {
        ++stats.lost_channel;
        continue;
      }
      schedule(now + config.radio.airtime_per_msg, EventKind::kMsgDelivery, receivers[i].id, 0, 0, shared);
    }
  }

  struct Exchange {
    bool ok = false;
    TimeMs airtime = 0;
  };

  // One acknowledged unicast. The duty-cycled sender strobes until the
  // receiver wakes up; without an acknowledgement it strobes a full cycle.
  Exchange unicast(SimNode& sender, NodeId dest) {
    SimNode& receiver = at(dest);
    const Receiver r{dest, pos(dest)};
    const bool in_range = radio.in_range(pos(sender.rpl.id), r.position);
    const Delivery d = radio.deliver(pos(sender.rpl.id), std::span(&r, 1), now, radio_rng).front();
    Exchange ex;
    if (in_range) {
      ++stats.receptions;
      if (d == Delivery::kLost) {
        ++stats.lost_channel;
      } else if (deaf(receiver)) {
        ++stats.lost_busy;
      } else {
        ex.ok = receiver.rpl.role != Role::kAttacker;
      }
    }
    ex.airtime = ex.ok ? mac_rng.uniform_int(config.radio.unicast_airtime_min, config.radio.airtime_per_msg)
                       : config.radio.airtime_per_msg;
    sender.busy_until = now + ex.airtime;
    return ex;
  }

  void service(SimNode& n) {
    n.mac_pending = false;
    if (busy(n)) {
      kick(n);
      return;
    }
    Frame f = std::move(n.txq.front());
    n.txq.pop_front();
    transmit(n, std::move(f));
    kick(n);
  }

  void transmit(SimNode& n, Frame f) {
    const NodeId id = n.rpl.id;
    switch (f.type) {
      case FrameType::kDio:
        f.dio = n.rpl.make_dio();
        trace.add(now, id, TraceKind::kDioTx, f.dio.rank, f.dio.version);
        broadcast(n, f);
        break;
      case FrameType::kDis:
        if (n.rpl.joined()) break;
        trace.add(now, id, TraceKind::kDisTx);
        broadcast(n, f);
        break;
      case FrameType::kDao: {
        const NodeId parent = n.rpl.preferred_parent;
        if (parent == kNullNode) break;
        trace.add(now, id, TraceKind::kDaoTx, node_field(parent));
        unicast(n, parent);
        break;
      }
      case FrameType::kData: transmit_data(n, std::move(f)); break;
      case FrameType::kProbe: transmit_probe(n, f.dest); break;
    }
  }

  void transmit_data(SimNode& n, Frame f) {
    const NodeId id = n.rpl.id;
    const NodeId parent = n.rpl.preferred_parent;
    if (parent == kNullNode) {
      trace.add(now, id, TraceKind::kDataDrop, node_field(f.data.origin), f.data.seq,
                static_cast<std::int64_t>(DropReason::kNoParent));
      return;
    }
    trace.add(now, id, TraceKind::kDataTx, node_field(f.data.origin), f.data.seq, f.attempt);
    const Exchange ex = unicast(n, parent);
    if (ex.ok) {
      schedule(now + ex.airtime, EventKind::kMsgDelivery, parent, 0, 0, std::make_shared<const Frame>(f));
      apply(n, on_tx_outcome(n.rpl, parent, f.attempt, true), kNullNode);
      return;
    }
    if (f.attempt < 2) {
      ++f.attempt;
      n.busy_until += mac_rng.uniform_int(config.radio.retry_backoff_min, config.radio.retry_backoff_max);
      n.txq.push_front(std::move(f));
      return;
    }
    trace.add(now, id, TraceKind::kDataDrop, node_field(f.data.origin), f.data.seq,
              static_cast<std::int64_t>(DropReason::kLink));
    apply(n, on_tx_outcome(n.rpl, parent, f.attempt, false), kNullNode);
  }

  void transmit_probe(SimNode& n, NodeId target) {
    if (!n.pending_probes.contains(target)) return;
    if (n.rpl.ids && n.rpl.ids->is_blocked(target)) {
      n.pending_probes.erase(target);
      return;
    }
    const Exchange ex = unicast(n, target);
    trace.add(now, n.rpl.id, TraceKind::kProbeTx, node_field(target), ex.ok ? 1 : 0);
    // Request and response on success; an unanswered probe holds the node for
    // the full timeout.
    const TimeMs hold = ex.ok ? 2 * ex.airtime : std::max(ex.airtime, config.radio.probe_timeout);
    n.busy_until = now + hold;
    if (!ex.ok) {
      // The sender keeps strobing for the whole timeout.
      for (TimeMs t = ex.airtime; t < hold; t += config.radio.airtime_per_msg) radio.occupy(pos(n.rpl.id), now + t);
    }
    schedule(now + hold, EventKind::kProbeDone, n.rpl.id, node_field(target), ex.ok ? 1 : 0);
  }

  // -- protocol -------------------------------------------------------------

  void apply(SimNode& n, const std::vector<RplAction>& actions, NodeId sender) {
    for (const RplAction& a : actions) {
      std::visit([&](const auto& act) { apply_one(n, act, sender); }, a);
    }
  }

  void apply_one(SimNode& n, const action::Discarded&, NodeId sender) {
    trace.add(now, n.rpl.id, TraceKind::kDioDiscard, node_field(sender));
  }

  void apply_one(SimNode& n, const action::Probe& p, NodeId) {
    const bool fresh = !n.pending_probes.contains(p.target);
    n.pending_probes.insert_or_assign(p.target, p.dio);
    if (fresh) enqueue(n, Frame{FrameType::kProbe, p.target});
  }

  void apply_one(SimNode& n, const action::TrickleReset&, NodeId) { reset_trickle(n); }

  void apply_one(SimNode& n, const action::ParentSwitch& s, NodeId) {
    trace.add(now, n.rpl.id, TraceKind::kParentSwitch, node_field(s.from), node_field(s.to), s.rank);
    n.poison_pending = false;
  }

  void apply_one(SimNode& n, const action::SendDao& d, NodeId) { enqueue(n, Frame{FrameType::kDao, d.parent}); }

  void apply_one(SimNode& n, const action::SendDis&, NodeId) {
    schedule_dis(n, now + jitter_rng.uniform_int(0, config.rpl.dis_jitter));
  }

  void apply_one(SimNode& n, const action::Detached&, NodeId) {
    trace.add(now, n.rpl.id, TraceKind::kDetach);
    n.poison_pending = true;
  }

  void apply_one(SimNode& n, const action::IdsReport& r, NodeId sender) {
    const IdsState& ids = *n.rpl.ids;
    auto count_of = [&ids](NodeId s) -> std::int64_t {
      const BlacklistEntry* e = ids.find_blacklisted(s);
      return e ? e->detection_count : 0;
    };
    for (NodeId s : r.verdict.newly_suspected) {
      trace.add(now, n.rpl.id, TraceKind::kIdsSuspect, node_field(s), count_of(s));
    }
    for (NodeId s : r.verdict.newly_blocked) {
      trace.add(now, n.rpl.id, TraceKind::kIdsBlock, node_field(s), count_of(s));
      n.pending_probes.erase(s);
      apply(n, forget_neighbor(n.rpl, s), s);
    }
    if (r.verdict.table_overflow) trace.add(now, n.rpl.id, TraceKind::kIdsOverflow, node_field(sender));
  }

  void receive_dio(SimNode& n, const DioMessage& dio) {
    trace.add(now, n.rpl.id, TraceKind::kDioRx, node_field(dio.src), dio.rank);
    const std::vector<RplAction> actions = handle_dio(n.rpl, dio, now);
    apply(n, actions, dio.src);
    const bool discarded = std::any_of(actions.begin(), actions.end(), [](const RplAction& a) {
      return std::holds_alternative<action::Discarded>(a);
    });
    if (!discarded) n.busy_until = std::max(n.busy_until, now) + config.rpl.dio_processing;
  }

  void route(SimNode& n, DataPacket packet) {
    const NodeId id = n.rpl.id;
    const ForwardDecision d = forward_data(n.rpl, packet);
    switch (d.kind) {
      case ForwardKind::kDeliver:
        trace.add(now, id, TraceKind::kDataRecv, node_field(packet.origin), packet.seq, now - packet.created);
        break;
      case ForwardKind::kLoop:
        trace.add(now, id, TraceKind::kDataDrop, node_field(packet.origin), packet.seq,
                  static_cast<std::int64_t>(DropReason::kLoop));
        break;
      case ForwardKind::kNoParent:
        trace.add(now, id, TraceKind::kDataDrop, node_field(packet.origin), packet.seq,
                  static_cast<std::int64_t>(DropReason::kNoParent));
        break;
      case ForwardKind::kForward: {
        Frame f{FrameType::kData, d.next_hop};
        f.data = std::move(packet);
        enqueue(n, std::move(f));
        break;
      }
    }
  }

  // -- event handlers -------------------------------------------------------

  void on_delivery(SimNode& n, const Frame& f) {
    if (f.type == FrameType::kData) {
      route(n, f.data);
      return;
    }
    if (n.rpl.role == Role::kAttacker) {
      if (f.type == FrameType::kDio) n.attacker->on_overhear(f.dio, distance(pos(n.rpl.id), pos(f.dio.src)));
      return;
    }
    if (deaf(n)) {
      ++stats.lost_busy;
      return;
    }
    if (f.type == FrameType::kDio) {
      receive_dio(n, f.dio);
    } else if (f.type == FrameType::kDis) {
      apply(n, handle_dis(n.rpl), kNullNode);
    }
  }

  void on_trickle(SimNode& n, std::uint64_t gen) {
    TrickleTimer& t = n.rpl.trickle;
    if (!t.running() || gen != t.generation()) return;
    if (t.on_timer(now, trickle_rng)) {
      if (n.rpl.joined()) {
        enqueue(n, Frame{FrameType::kDio});
      } else if (n.poison_pending) {
        n.poison_pending = false;
        enqueue(n, Frame{FrameType::kDio});
      }
    }
    arm_trickle(n);
  }

  void on_data_gen(SimNode& n) {
    schedule(now + config.traffic.data_interval, EventKind::kDataGen, n.rpl.id);
    DataPacket p;
    p.origin = n.rpl.id;
    p.seq = n.next_seq++;
    p.created = now;
    p.size = config.traffic.data_size;
    trace.add(now, n.rpl.id, TraceKind::kDataGen, p.seq);
    route(n, std::move(p));
  }

  void on_attack_step(SimNode& n) {
    Attacker& a = *n.attacker;
    const bool first = !a.launched();
    if (std::optional<DioMessage> replay = a.step(now)) {
      if (first) trace.add(now, n.rpl.id, TraceKind::kAttackLaunch, a.config().replay_interval);
      trace.add(now, n.rpl.id, TraceKind::kReplayTx);
      Frame f{FrameType::kDio};
      f.dio = *replay;
      broadcast(n, f);
    }
    schedule(now + a.config().replay_interval, EventKind::kAttackStep, n.rpl.id);
  }

  void on_dis_timer(SimNode& n, std::uint64_t gen) {
    if (gen != n.dis_gen || n.rpl.joined()) return;
    enqueue(n, Frame{FrameType::kDis});
    schedule(now + config.rpl.dis_interval, EventKind::kDisTimer, n.rpl.id, 0, gen);
  }

  void on_probe_done(SimNode& n, NodeId target, bool ok) {
    auto it = n.pending_probes.find(target);
    if (it == n.pending_probes.end()) return;
    const DioMessage dio = it->second;
    n.pending_probes.erase(it);
    apply(n, on_probe_result(n.rpl, dio, ok, now), target);
  }

  void on_script(SimNode& root) {
    std::vector<RplAction> actions = global_repair(root.rpl);
    trace.add(now, root.rpl.id, TraceKind::kGlobalRepair, root.rpl.version);
    apply(root, actions, kNullNode);
  }

  void dispatch(const Event& e) {
    switch (e.kind) {
      case EventKind::kMsgDelivery: on_delivery(at(e.node), *e.frame); break;
      case EventKind::kMacService: service(at(e.node)); break;
      case EventKind::kTrickleFire: on_trickle(at(e.node), e.gen); break;
      case EventKind::kDataGen: on_data_gen(at(e.node)); break;
      case EventKind::kMobilityStep:
        move(mobility, config.mobility.step, config.mobility, mobility_rng);
        schedule(now + config.mobility.step, EventKind::kMobilityStep, kNullNode);
        break;
      case EventKind::kAttackStep: on_attack_step(at(e.node)); break;
      case EventKind::kIdsTick:
        for (SimNode& n : nodes) {
          if (n.rpl.ids) n.rpl.ids->tick(now);
        }
        schedule(now + config.ids.check_period, EventKind::kIdsTick, kNullNode);
        break;
      case EventKind::kScript: on_script(at(e.node)); break;
      case EventKind::kDisTimer: on_dis_timer(at(e.node), e.gen); break;
      case EventKind::kProbeDone:
        on_probe_done(at(e.node), node_id(static_cast<std::uint32_t>(e.aux)), e.gen == 1);
        break;
    }
  }

  void run_until(TimeMs limit) {
    limit = std::min(limit, config.duration);
    while (!queue.empty() && queue.top().t <= limit) {
      Event e = queue.top();
      queue.pop();
      now = e.t;
      ++events;
      dispatch(e);
    }
    now = std::max(now, limit);
  }

  ScenarioConfig config;
  std::uint64_t seed;
  RadioMedium radio;
  Rng radio_rng;
  Rng mobility_rng;
  Rng trickle_rng;
  Rng jitter_rng;
  Rng mac_rng;
  std::vector<SimNode> nodes;
  std::vector<MobileState> mobility;
  std::priority_queue<Event, std::vector<Event>, Later> queue;
  std::uint64_t next_seq = 0;
  TimeMs now = 0;
  Trace trace;
  RadioStats stats;
  std::uint64_t events = 0;
};

Simulation::Simulation(const ScenarioConfig& config, std::uint64_t seed)
    : impl_(std::make_unique<Impl>(config, seed)) {}
Simulation::~Simulation() = default;
Simulation::Simulation(Simulation&&) noexcept = default;
Simulation& Simulation::operator=(Simulation&&) noexcept = default;

void Simulation::run_until(TimeMs t) { impl_->run_until(t); }

RunResult Simulation::finish() {
  impl_->run_until(impl_->config.duration);
  RunResult out;
  out.metrics = compute_metrics(impl_->trace);
  out.trace = std::move(impl_->trace);
  out.radio = impl_->stats;
  out.events = impl_->events;
  impl_->trace = Trace{};
  return out;
}

TimeMs Simulation::now() const { return impl_->now; }
std::size_t Simulation::node_count() const { return impl_->nodes.size(); }
const RplNode& Simulation::node(NodeId id) const { return impl_->nodes.at(raw(id)).rpl; }
Vec2 Simulation::position(NodeId id) const { return impl_->pos(id); }
const Trace& Simulation::trace() const { return impl_->trace; }
const RadioStats& Simulation::radio_stats() const { return impl_->stats; }

RunResult run(const ScenarioConfig& config, std::uint64_t seed) { return Simulation(config, seed).finish(); }

}  // namespace cosec
