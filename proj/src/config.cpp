#include "entry/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "entry/error.hpp"

namespace entry {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorKind::invalid_config, msg); }

// Reads one object section and rejects keys it was not asked about.
class Section {
 public:
  Section(const json& doc, std::string name) : name_(std::move(name)) {
    if (!doc.contains(name_)) {
      obj_ = json::object();
      return;
    }
    obj_ = doc.at(name_);
    if (!obj_.is_object()) bad("'" + name_ + "' must be an object");
  }

  template <class T>
  void get(const char* key, T& out) {
    seen_.insert(key);
    if (!obj_.contains(key)) return;
    try {
      out = obj_.at(key).get<T>();
    } catch (const json::exception&) {
      bad("'" + name_ + "." + key + "' has the wrong type");
    }
  }

  void get_optional(const char* key, std::optional<double>& out) {
    seen_.insert(key);
    if (!obj_.contains(key) || obj_.at(key).is_null()) return;
    double v = 0.0;
    get(key, v);
    out = v;
  }

  const json& raw(const char* key) {
    seen_.insert(key);
    static const json null_value;
    return obj_.contains(key) ? obj_.at(key) : null_value;
  }

  void finish() const {
    for (const auto& item : obj_.items()) {
      if (!seen_.count(item.key())) bad("unknown key '" + name_ + "." + item.key() + "'");
    }
  }

 private:
  std::string name_;
  json obj_;
  std::set<std::string> seen_;
};

BankSchedule parse_schedule(const json& j) {
  if (j.is_null()) return {};
  if (j.is_number()) return BankSchedule::constant(deg2rad(j.get<double>()));
  if (!j.is_array() || j.empty()) bad("'reference.bank_schedule_deg' must be a number or [[v, deg], ...]");
  std::vector<std::pair<double, double>> knots;
  for (const auto& k : j) {
    if (!k.is_array() || k.size() != 2 || !k[0].is_number() || !k[1].is_number()) {
      bad("bank schedule knots must be [velocity m/s, bank deg] pairs");
    }
    knots.emplace_back(k[0].get<double>(), deg2rad(k[1].get<double>()));
  }
  try {
    return BankSchedule(std::move(knots));
  } catch (const Error& e) {
    bad(e.what());
  }
}

json schedule_json(const BankSchedule& b) {
  json out = json::array();
  for (const auto& [v, s] : b.knots()) out.push_back({v, rad2deg(s)});
  return out;
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::vector<std::string> split_path(const std::string& key) {
  std::vector<std::string> parts;
  std::stringstream ss(key);
  std::string part;
  while (std::getline(ss, part, '.')) parts.push_back(part);
  return parts;
}

}  // namespace

void AppConfig::validate() const {
  scenario.validate();
  guidance.validate();
  observer.validate();
  monte_carlo.ranges.validate();
  monitor.validate();
  if (!(reference.dt > 0.0)) bad("reference.dt must be positive");
  if (!(monte_carlo.observer_eps > 0.0)) bad("monte_carlo.observer_eps must be positive");
  if (monte_carlo.runs < 1) bad("monte_carlo.runs must be at least 1");
  for (double d : {dispersion.d_m, dispersion.d_rho, dispersion.d_cl, dispersion.d_cd}) {
    if (!(d > -1.0)) throw Error(ErrorKind::invalid_dispersion, "dispersion fractions must exceed -1");
  }
  for (double eps : {observer.eps, monte_carlo.observer_eps}) {
    const double bound = std::min({eps, guidance.eps0, guidance.tau}) / 10.0;
    if (!(dt > 0.0) || dt > bound * (1.0 + 1e-12)) {
      bad("sim.dt = " + std::to_string(dt) + " must be positive and at most min(eps, eps0, tau)/10 = " +
          std::to_string(bound));
    }
  }
}

json to_json(const AppConfig& c) {
  const auto& p = c.scenario.planet;
  const auto& v = c.scenario.vehicle;
  const auto& e = c.scenario.entry;
  const auto& t = c.scenario.terminal;
  const auto& g = c.guidance;
  const auto& mc = c.monte_carlo;
  return {
      {"planet", {{"mu", p.mu}, {"r0", p.r0}, {"rho0", p.rho0}, {"hs", p.hs}}},
      {"vehicle", {{"mass", v.mass}, {"area", v.area}, {"cl0", v.cl0}, {"cd0", v.cd0}}},
      {"entry",
       {{"altitude_km", e.altitude_km},
        {"velocity_km_s", e.velocity_km_s},
        {"flight_path_deg", e.flight_path_deg},
        {"longitude_deg", e.longitude_deg},
        {"latitude_deg", e.latitude_deg},
        {"heading_deg", e.heading_deg}}},
      {"terminal", {{"velocity", t.velocity}, {"altitude_floor", t.altitude_floor}, {"max_time", t.max_time}}},
      {"reference", {{"bank_schedule_deg", schedule_json(c.reference.bank)}, {"dt", c.reference.dt}}},
      {"guidance",
       {{"law", to_string(g.law)},
        {"alpha1", g.alpha1},
        {"alpha2", g.alpha2},
        {"alpha3", g.alpha3},
        {"eps0", g.eps0},
        {"tau", g.tau},
        {"gamma_x", g.gamma_x},
        {"k", g.k},
        {"delta_damping", g.delta_damping}}},
      {"observer", {{"h1", c.observer.h1}, {"h2", c.observer.h2}, {"eps", c.observer.eps}}},
      {"sim", {{"dt", c.dt}}},
      {"dispersion",
       {{"d_m", c.dispersion.d_m},
        {"d_rho", c.dispersion.d_rho},
        {"d_cl", c.dispersion.d_cl},
        {"d_cd", c.dispersion.d_cd}}},
      {"targets",
       {{"downrange_km", optional_json(c.target_downrange_km)},
        {"altitude_km", optional_json(c.target_altitude_km)}}},
      {"monte_carlo",
       {{"runs", mc.runs},
        {"seed", mc.seed},
        {"observer_eps", mc.observer_eps},
        {"ranges",
         {{"d_m", mc.ranges.d_m}, {"d_rho", mc.ranges.d_rho}, {"d_cl", mc.ranges.d_cl}, {"d_cd", mc.ranges.d_cd}}}}},
      {"monitor",
       {{"lambda", c.monitor.lambda},
        {"rho_min", c.monitor.rho_min},
        {"rho_max", c.monitor.rho_max},
        {"ceiling", c.monitor.ceiling}}},
  };
}

json default_config_json() { return to_json(AppConfig{}); }

AppConfig config_from_json(const json& doc) {
  if (!doc.is_object()) bad("configuration must be a JSON object");
  static const std::set<std::string> sections{"planet", "vehicle", "entry", "terminal", "reference", "guidance",
                                              "observer", "sim", "dispersion", "targets", "monte_carlo", "monitor"};
  for (const auto& item : doc.items()) {
    if (!sections.count(item.key())) bad("unknown section '" + item.key() + "'");
  }

  AppConfig c;
  {
    Section s(doc, "planet");
    s.get("mu", c.scenario.planet.mu);
    s.get("r0", c.scenario.planet.r0);
    s.get("rho0", c.scenario.planet.rho0);
    s.get("hs", c.scenario.planet.hs);
    s.finish();
  }
  {
    Section s(doc, "vehicle");
    s.get("mass", c.scenario.vehicle.mass);
    s.get("area", c.scenario.vehicle.area);
    s.get("cl0", c.scenario.vehicle.cl0);
    s.get("cd0", c.scenario.vehicle.cd0);
    s.finish();
  }
  {
    Section s(doc, "entry");
    auto& e = c.scenario.entry;
    s.get("altitude_km", e.altitude_km);
    s.get("velocity_km_s", e.velocity_km_s);
    s.get("flight_path_deg", e.flight_path_deg);
    s.get("longitude_deg", e.longitude_deg);
    s.get("latitude_deg", e.latitude_deg);
    s.get("heading_deg", e.heading_deg);
    s.finish();
  }
  {
    Section s(doc, "terminal");
    auto& t = c.scenario.terminal;
    s.get("velocity", t.velocity);
    s.get("altitude_floor", t.altitude_floor);
    s.get("max_time", t.max_time);
    s.finish();
  }
  {
    Section s(doc, "reference");
    c.reference.bank = parse_schedule(s.raw("bank_schedule_deg"));
    s.get("dt", c.reference.dt);
    s.finish();
  }
  {
    Section s(doc, "guidance");
    auto& g = c.guidance;
    std::string law = to_string(g.law);
    s.get("law", law);
    g.law = parse_law(law);
    s.get("alpha1", g.alpha1);
    s.get("alpha2", g.alpha2);
    s.get("alpha3", g.alpha3);
    s.get("eps0", g.eps0);
    s.get("tau", g.tau);
    s.get("gamma_x", g.gamma_x);
    s.get("k", g.k);
    s.get("delta_damping", g.delta_damping);
    s.finish();
  }
  {
    Section s(doc, "observer");
    s.get("h1", c.observer.h1);
    s.get("h2", c.observer.h2);
    s.get("eps", c.observer.eps);
    s.finish();
  }
  {
    Section s(doc, "sim");
    s.get("dt", c.dt);
    s.finish();
  }
  {
    Section s(doc, "dispersion");
    s.get("d_m", c.dispersion.d_m);
    s.get("d_rho", c.dispersion.d_rho);
    s.get("d_cl", c.dispersion.d_cl);
    s.get("d_cd", c.dispersion.d_cd);
    s.finish();
  }
  {
    Section s(doc, "targets");
    s.get_optional("downrange_km", c.target_downrange_km);
    s.get_optional("altitude_km", c.target_altitude_km);
    s.finish();
  }
  {
    Section s(doc, "monte_carlo");
    s.get("runs", c.monte_carlo.runs);
    s.get("seed", c.monte_carlo.seed);
    s.get("observer_eps", c.monte_carlo.observer_eps);
    json ranges = {{"ranges", s.raw("ranges")}};
    if (ranges["ranges"].is_null()) ranges = json::object();
    Section r(ranges, "ranges");
    r.get("d_m", c.monte_carlo.ranges.d_m);
    r.get("d_rho", c.monte_carlo.ranges.d_rho);
    r.get("d_cl", c.monte_carlo.ranges.d_cl);
    r.get("d_cd", c.monte_carlo.ranges.d_cd);
    r.finish();
    s.finish();
  }
  {
    Section s(doc, "monitor");
    s.get("lambda", c.monitor.lambda);
    s.get("rho_min", c.monitor.rho_min);
    s.get("rho_max", c.monitor.rho_max);
    s.get("ceiling", c.monitor.ceiling);
    s.finish();
  }
  return c;
}

void apply_override(json& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) bad("override '" + assignment + "' is not key=value");
  const std::string key = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);

  json value;
  try {
    value = json::parse(text);
  } catch (const json::parse_error&) {
    value = text;
  }

  const json defaults = default_config_json();
  const json* schema = &defaults;
  json* node = &doc;
  const auto parts = split_path(key);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto& part = parts[i];
    if (part.empty() || !schema->is_object() || !schema->contains(part)) bad("unknown config key '" + key + "'");
    schema = &schema->at(part);
    if (!node->is_object()) *node = json::object();
    node = &(*node)[part];
  }
  *node = std::move(value);
}

AppConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
  json doc = json::object();
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) bad("cannot open config file '" + path + "'");
    try {
      doc = json::parse(in, nullptr, true, true);
    } catch (const json::parse_error& e) {
      bad("config file '" + path + "': " + e.what());
    }
  }
  for (const auto& o : overrides) apply_override(doc, o);
  AppConfig cfg = config_from_json(doc);
  cfg.validate();
  return cfg;
}

SimConfig make_sim_config(const AppConfig& cfg, std::shared_ptr<const ReferenceProfile> reference, bool campaign) {
  SimConfig sim;
  sim.scenario = cfg.scenario;
  sim.guidance = cfg.guidance;
  sim.observer = cfg.observer;
  if (campaign) sim.observer.eps = cfg.monte_carlo.observer_eps;
  sim.dispersion = cfg.dispersion;
  sim.reference = std::move(reference);
  sim.dt = cfg.dt;
  return sim;
}

Targets resolve_targets(const AppConfig& cfg, const Targets& fallback) {
  return {cfg.target_downrange_km.value_or(fallback.downrange_km),
          cfg.target_altitude_km.value_or(fallback.altitude_km)};
}

}  // namespace entry
