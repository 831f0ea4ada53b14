#include "cosec/scenario.hpp"

#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include <yaml-cpp/yaml.h>

namespace cosec {

std::string_view mode_name(Mode mode) {
  switch (mode) {
    case Mode::kBaseline: return "baseline";
    case Mode::kAttack: return "attack";
    case Mode::kCosec: return "cosec";
    case Mode::kIdsOnly: return "ids-only";
  }
  return "?";
}

Mode parse_mode(std::string_view text) {
  for (Mode m : {Mode::kBaseline, Mode::kAttack, Mode::kCosec, Mode::kIdsOnly}) {
    if (mode_name(m) == text) return m;
  }
  throw std::invalid_argument("mode: unknown value '" + std::string(text) + "'");
}

std::string_view mobility_name(MobilityModel model) {
  return model == MobilityModel::kStatic ? "static" : "mobile";
}

ScenarioConfig ScenarioConfig::with_mode(Mode mode) const {
  ScenarioConfig out = *this;
  out.attack_enabled = mode == Mode::kAttack || mode == Mode::kCosec;
  out.ids_enabled = mode == Mode::kCosec || mode == Mode::kIdsOnly;
  return out;
}

void ScenarioConfig::validate() const {
  if (duration <= 0) throw std::invalid_argument("duration_s: must be > 0");
  if (n_attackers > n_sensors) throw std::invalid_argument("nodes.attackers: must not exceed nodes.sensors");
  if (topology.kind == TopologyKind::kExplicit) {
    const std::size_t want = 1 + n_sensors + n_attackers;
    if (topology.positions.size() != want) {
      throw std::invalid_argument("topology.positions: expected " + std::to_string(want) +
                                  " entries (gateway, sensors, attackers)");
    }
  }
  if (topology.max_attempts < 1) throw std::invalid_argument("topology.max_attempts: must be >= 1");
  if (traffic.data_interval <= 0) throw std::invalid_argument("traffic.data_interval_s: must be > 0");
  if (traffic.data_start < 0) throw std::invalid_argument("traffic.data_start_s: must be >= 0");
  if (traffic.queue_capacity < 1) throw std::invalid_argument("traffic.queue_capacity: must be >= 1");
  for (TimeMs t : global_repairs) {
    if (t < 0) throw std::invalid_argument("script.global_repair_s: times must be >= 0");
  }
  mobility.validate();
  radio.validate();
  attacker.validate();
  ids.validate();
  rpl.validate();
}

std::vector<std::uint64_t> ExperimentConfig::run_seeds() const {
  if (!seeds.empty()) return seeds;
  std::vector<std::uint64_t> out(replications);
  std::iota(out.begin(), out.end(), std::uint64_t{1});
  return out;
}

void ExperimentConfig::validate() const {
  base.validate();
  if (replications < 1) throw std::invalid_argument("experiment.replications: must be >= 1");
  if (modes.empty()) throw std::invalid_argument("experiment.modes: must not be empty");
  if (mobilities.empty()) throw std::invalid_argument("experiment.mobility: must not be empty");
  if (replay_intervals.empty()) throw std::invalid_argument("experiment.replay_intervals_s: must not be empty");
  for (TimeMs r : replay_intervals) {
    if (r <= 0) throw std::invalid_argument("experiment.replay_intervals_s: must be > 0");
  }
  std::set<std::uint64_t> unique(seeds.begin(), seeds.end());
  if (unique.size() != seeds.size()) throw std::invalid_argument("experiment.seeds: duplicate seed");
}

namespace {

// One YAML mapping with its dotted path; rejects keys nobody asked for.
class Section {
 public:
  Section(YAML::Node node, std::string path) : node_(std::move(node)), path_(std::move(path)) {
    if (node_ && !node_.IsNull() && !node_.IsMap()) throw std::invalid_argument(where() + ": expected a mapping");
  }

  std::string field(std::string_view key) const {
    return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
  }

  YAML::Node take(std::string_view key) {
    used_.emplace(key);
    if (!node_ || node_.IsNull()) return YAML::Node();
    return node_[std::string(key)];
  }

  std::optional<Section> child(std::string_view key) {
    YAML::Node n = take(key);
    if (!n) return std::nullopt;
    return Section(n, field(key));
  }

  template <typename T>
  bool get(std::string_view key, T& out) {
    YAML::Node n = take(key);
    if (!n) return false;
    try {
      out = n.as<T>();
    } catch (const YAML::Exception&) {
      throw std::invalid_argument(field(key) + ": bad value '" + dump(n) + "'");
    }
    return true;
  }

  void seconds_field(std::string_view key, TimeMs& out) {
    double s = 0.0;
    if (get(key, s)) out = seconds(s);
  }

  void millis_field(std::string_view key, TimeMs& out) { get(key, out); }

  void finish() const {
    if (!node_ || node_.IsNull()) return;
    for (const auto& kv : node_) {
      const std::string key = kv.first.as<std::string>();
      if (!used_.contains(key)) throw std::invalid_argument(field(key) + ": unknown key");
    }
  }

 private:
  std::string where() const { return path_.empty() ? "config" : path_; }
  static std::string dump(const YAML::Node& n) {
    std::ostringstream os;
    os << n;
    return os.str();
  }

  YAML::Node node_;
  std::string path_;
  std::set<std::string, std::less<>> used_;
};

template <typename Enum>
Enum parse_enum(const std::string& field, const std::string& text,
                std::initializer_list<std::pair<std::string_view, Enum>> choices) {
  for (const auto& [name, value] : choices) {
    if (name == text) return value;
  }
  std::string allowed;
  for (const auto& [name, value] : choices) allowed += (allowed.empty() ? "" : "|") + std::string(name);
  throw std::invalid_argument(field + ": unknown value '" + text + "' (expected " + allowed + ")");
}

void read_topology(Section s, ScenarioConfig& c) {
  std::string kind;
  if (s.get("kind", kind)) {
    c.topology.kind = parse_enum<TopologyKind>(s.field("kind"), kind,
                                               {{"random", TopologyKind::kRandom}, {"explicit", TopologyKind::kExplicit}});
  }
  s.get("max_attempts", c.topology.max_attempts);
  std::vector<std::vector<double>> positions;
  if (s.get("positions", positions)) {
    c.topology.positions.clear();
    for (const auto& p : positions) {
      if (p.size() != 2) throw std::invalid_argument(s.field("positions") + ": each entry must be [x, y]");
      c.topology.positions.push_back({p[0], p[1]});
    }
  }
  s.finish();
}

void read_radio(Section s, RadioConfig& r) {
  s.get("tx_range_m", r.tx_range);
  s.get("base_loss", r.base_loss);
  std::string congestion;
  if (s.get("congestion", congestion)) {
    r.congestion = parse_enum<CongestionModel>(s.field("congestion"), congestion,
                                               {{"none", CongestionModel::kNone}, {"airtime", CongestionModel::kAirtime}});
  }
  s.millis_field("congestion_window_ms", r.congestion_window);
  s.get("capacity_per_window", r.capacity_per_window);
  s.millis_field("airtime_ms", r.airtime_per_msg);
  s.millis_field("unicast_airtime_min_ms", r.unicast_airtime_min);
  s.millis_field("retry_backoff_min_ms", r.retry_backoff_min);
  s.millis_field("retry_backoff_max_ms", r.retry_backoff_max);
  s.millis_field("probe_timeout_ms", r.probe_timeout);
  s.finish();
}

void read_mobility(Section s, MobilityConfig& m) {
  std::string model;
  if (s.get("model", model)) {
    m.model = parse_enum<MobilityModel>(s.field("model"), model,
                                        {{"static", MobilityModel::kStatic},
                                         {"random_waypoint", MobilityModel::kRandomWaypoint}});
  }
  s.get("speed_min_mps", m.speed_min);
  s.get("speed_max_mps", m.speed_max);
  s.seconds_field("pause_s", m.pause);
  s.millis_field("step_ms", m.step);
  s.finish();
}

void read_attacker(Section s, AttackerConfig& a) {
  s.seconds_field("replay_interval_s", a.replay_interval);
  s.seconds_field("attack_start_s", a.attack_start);
  std::string capture;
  if (s.get("capture", capture)) {
    a.capture = parse_enum<CapturePolicy>(s.field("capture"), capture,
                                          {{"first_heard", CapturePolicy::kFirstHeard},
                                           {"strongest", CapturePolicy::kStrongest}});
  }
  s.finish();
}

void read_ids(Section s, ScenarioConfig& c, bool& node_max_auto) {
  IdsConfig& i = c.ids;
  s.get("enabled", c.ids_enabled);
  s.millis_field("safe_interval_ms", i.safe_interval);
  s.millis_field("replay_margin_ms", i.replay_margin);
  s.get("block_threshold", i.block_threshold);
  s.get("tuning", i.tuning);
  std::size_t node_max = 0;
  if (s.get("node_max", node_max)) {
    node_max_auto = node_max == 0;
    if (!node_max_auto) i.node_max = node_max;
  }
  s.seconds_field("activation_s", i.activation_delay);
  s.seconds_field("check_period_s", i.check_period);
  std::string rule;
  if (s.get("gap_rule", rule)) {
    i.gap_rule = parse_enum<GapRule>(s.field("gap_rule"), rule,
                                     {{"last_gap", GapRule::kLastGap}, {"min_gap_in_window", GapRule::kMinGapInWindow}});
  }
  s.finish();
}

void read_rpl(Section s, RplConfig& r) {
  std::string objective;
  if (s.get("objective", objective)) {
    r.objective = parse_enum<ObjectiveFunction>(s.field("objective"), objective,
                                                {{"mrhof", ObjectiveFunction::kMrhofEtx}, {"of0", ObjectiveFunction::kOf0}});
  }
  s.get("min_rank", r.min_rank);
  s.get("mrhof_rank_factor", r.mrhof_rank_factor);
  s.get("of0_rank_increase", r.of0_rank_increase);
  s.get("hysteresis", r.hysteresis);
  s.get("etx_alpha", r.etx_alpha);
  s.get("etx_noack_penalty", r.etx_noack_penalty);
  s.get("max_link_failures", r.max_link_failures);
  s.millis_field("dio_processing_ms", r.dio_processing);
  s.millis_field("dis_delay_ms", r.dis_delay);
  s.millis_field("dis_interval_ms", r.dis_interval);
  s.millis_field("dis_jitter_ms", r.dis_jitter);
  s.millis_field("dio_min_interval_ms", r.trickle.i_min);
  s.get("dio_doublings", r.trickle.max_doublings);
  s.get("dio_redundancy", r.trickle.redundancy_k);
  s.finish();
}

void read_traffic(Section s, TrafficConfig& t) {
  s.seconds_field("data_interval_s", t.data_interval);
  s.get("data_size_bytes", t.data_size);
  s.seconds_field("data_start_s", t.data_start);
  s.get("queue_capacity", t.queue_capacity);
  s.finish();
}

// Lists the experiment does not set fall back to the base scenario's values.
void read_experiment(Section s, ExperimentConfig& e, bool& has_intervals, bool& has_mobility) {
  std::vector<std::string> modes;
  if (s.get("modes", modes)) {
    e.modes.clear();
    for (const auto& m : modes) {
      try {
        e.modes.push_back(parse_mode(m));
      } catch (const std::invalid_argument&) {
        throw std::invalid_argument(s.field("modes") + ": unknown value '" + m + "'");
      }
    }
  }
  std::vector<std::string> mobilities;
  if (s.get("mobility", mobilities)) {
    has_mobility = true;
    e.mobilities.clear();
    for (const auto& m : mobilities) {
      e.mobilities.push_back(parse_enum<MobilityModel>(
          s.field("mobility"), m, {{"static", MobilityModel::kStatic}, {"random_waypoint", MobilityModel::kRandomWaypoint}}));
    }
  }
  std::vector<double> intervals;
  if (s.get("replay_intervals_s", intervals)) {
    has_intervals = true;
    e.replay_intervals.clear();
    for (double v : intervals) e.replay_intervals.push_back(seconds(v));
  }
  s.get("replications", e.replications);
  s.get("seeds", e.seeds);
  s.finish();
}

}  // namespace

ExperimentConfig parse_experiment(std::string_view yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml_text));
  } catch (const YAML::Exception& e) {
    throw std::invalid_argument("config: YAML syntax error at line " + std::to_string(e.mark.line + 1));
  }

  ExperimentConfig e;
  ScenarioConfig& c = e.base;
  Section top(root, "");
  top.get("name", c.name);
  top.seconds_field("duration_s", c.duration);
  bool node_max_auto = true;
  if (auto s = top.child("nodes")) {
    s->get("sensors", c.n_sensors);
    s->get("attackers", c.n_attackers);
    s->finish();
  }
  if (auto s = top.child("area")) {
    s->get("width_m", c.mobility.width);
    s->get("height_m", c.mobility.height);
    s->finish();
  }
  if (auto s = top.child("topology")) read_topology(*s, c);
  if (auto s = top.child("radio")) read_radio(*s, c.radio);
  if (auto s = top.child("mobility")) read_mobility(*s, c.mobility);
  if (auto s = top.child("attacker")) read_attacker(*s, c.attacker);
  if (auto s = top.child("ids")) read_ids(*s, c, node_max_auto);
  if (auto s = top.child("rpl")) read_rpl(*s, c.rpl);
  if (auto s = top.child("traffic")) read_traffic(*s, c.traffic);
  if (auto s = top.child("script")) {
    std::vector<double> repairs;
    if (s->get("global_repair_s", repairs)) {
      for (double v : repairs) c.global_repairs.push_back(seconds(v));
    }
    s->finish();
  }
  bool has_intervals = false;
  bool has_mobility = false;
  if (auto s = top.child("experiment")) read_experiment(*s, e, has_intervals, has_mobility);
  top.finish();

  if (node_max_auto) c.ids.node_max = 1 + static_cast<std::size_t>(c.n_sensors) + c.n_attackers;
  if (!has_intervals) e.replay_intervals = {c.attacker.replay_interval};
  if (!has_mobility) e.mobilities = {c.mobility.model};
  e.validate();
  return e;
}

ExperimentConfig load_experiment(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot read " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_experiment(text.str());
}

}  // namespace cosec
