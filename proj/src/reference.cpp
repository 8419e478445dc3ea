#include "entry/reference.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "entry/drag_model.hpp"
#include "entry/error.hpp"
#include "integrate.hpp"

namespace entry {

ReferenceProfile::ReferenceProfile(std::vector<ReferenceSample> samples)
    : samples_(std::move(samples)) {
  if (samples_.empty()) {
    throw Error(ErrorKind::invalid_argument, "reference profile needs at least one sample");
  }
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    if (!(samples_[i].d_star > 0.0)) {
      throw Error(ErrorKind::invalid_argument,
                  "reference drag must be positive at sample " + std::to_string(i));
    }
    if (i > 0 && !(samples_[i].t > samples_[i - 1].t)) {
      throw Error(ErrorKind::invalid_argument,
                  "reference times must strictly increase at sample " + std::to_string(i));
    }
  }
  // Uniform spacing (the last interval may be shorter after event refinement)
  // allows O(1) interval lookup.
  if (samples_.size() >= 3) {
    const double dt = samples_[1].t - samples_[0].t;
    bool uniform = true;
    for (std::size_t i = 1; i + 1 < samples_.size() && uniform; ++i) {
      const double expect = samples_[0].t + static_cast<double>(i) * dt;
      uniform = std::abs(samples_[i].t - expect) <= 1e-9 * std::max(1.0, std::abs(expect));
    }
    if (uniform) uniform_dt_ = dt;
  }
}

double ReferenceProfile::t_begin() const { return samples_.empty() ? 0.0 : samples_.front().t; }
double ReferenceProfile::t_end() const { return samples_.empty() ? 0.0 : samples_.back().t; }

double ReferenceProfile::peak_drag() const {
  double peak = 0.0;
  for (const auto& s : samples_) peak = std::max(peak, s.d_star);
  return peak;
}

std::size_t ReferenceProfile::interval(double t) const {
  const std::size_t last = samples_.size() - 2;
  if (uniform_dt_ > 0.0) {
    auto i = static_cast<std::size_t>((t - samples_.front().t) / uniform_dt_);
    i = std::min(i, last);
    while (i < last && samples_[i + 1].t <= t) ++i;
    while (i > 0 && samples_[i].t > t) --i;
    return i;
  }
  auto it = std::upper_bound(samples_.begin(), samples_.end(), t,
                             [](double value, const ReferenceSample& s) { return value < s.t; });
  const auto i = static_cast<std::size_t>(std::distance(samples_.begin(), it));
  return std::min(i == 0 ? 0 : i - 1, last);
}

ReferenceTriple ReferenceProfile::lookup(double t) const {
  if (samples_.empty()) {
    throw Error(ErrorKind::invalid_argument, "lookup on an empty reference profile");
  }
  const auto hold = [](const ReferenceSample& s) {
    return ReferenceTriple{s.d_star, s.d_star_dot, s.d_star_ddot};
  };
  if (samples_.size() == 1 || t <= samples_.front().t) return hold(samples_.front());
  if (t >= samples_.back().t) return hold(samples_.back());

  const std::size_t i = interval(t);
  const ReferenceSample& a = samples_[i];
  const ReferenceSample& b = samples_[i + 1];
  const double h = b.t - a.t;
  const double s = (t - a.t) / h;
  const double s2 = s * s;
  const double s3 = s2 * s;

  ReferenceTriple out;
  out.d_star = (2.0 * s3 - 3.0 * s2 + 1.0) * a.d_star + (s3 - 2.0 * s2 + s) * h * a.d_star_dot +
               (-2.0 * s3 + 3.0 * s2) * b.d_star + (s3 - s2) * h * b.d_star_dot;
  out.d_star_dot = a.d_star_dot + s * (b.d_star_dot - a.d_star_dot);
  out.d_star_ddot = a.d_star_ddot + s * (b.d_star_ddot - a.d_star_ddot);
  return out;
}

BankSchedule::BankSchedule(std::vector<std::pair<double, double>> knots) : knots_(std::move(knots)) {
  if (knots_.empty()) {
    throw Error(ErrorKind::invalid_argument, "bank schedule needs at least one knot");
  }
  std::sort(knots_.begin(), knots_.end());
  for (const auto& [v, sigma] : knots_) {
    if (!(sigma >= 0.0 && sigma <= kPi)) {
      throw Error(ErrorKind::invalid_argument, "bank schedule angles must lie in [0, 180] deg");
    }
  }
}

double BankSchedule::at(double v) const {
  if (knots_.size() == 1 || v <= knots_.front().first) return knots_.front().second;
  if (v >= knots_.back().first) return knots_.back().second;
  auto it = std::upper_bound(knots_.begin(), knots_.end(), v,
                             [](double value, const auto& k) { return value < k.first; });
  const auto& [v1, s1] = *it;
  const auto& [v0, s0] = *(it - 1);
  return s0 + (s1 - s0) * (v - v0) / (v1 - v0);
}

const char* to_string(TerminationReason reason) {
  switch (reason) {
    case TerminationReason::velocity: return "velocity";
    case TerminationReason::altitude: return "altitude";
    case TerminationReason::timeout: return "timeout";
  }
  return "unknown";
}

ReferenceRun generate_reference(const Scenario& scenario, const BankSchedule& bank, double dt) {
  scenario.validate();
  if (!(dt > 0.0)) {
    throw Error(ErrorKind::invalid_argument, "reference step must be positive");
  }
  const PlanetModel& planet = scenario.planet;
  const VehicleParams& vehicle = scenario.vehicle;

  auto aero_at = [&](const VehicleState& x) {
    return aero_accel(x, vehicle, density(planet, x.r - planet.r0));
  };
  auto deriv = [&](double, const StateVector<7>& y) {
    const VehicleState x = detail::unpack_vehicle(y);
    const VehicleState d =
        state_derivative(x, aero_at(x), gravity(planet, x.r), bank.at(x.v), planet.r0);
    StateVector<7> out;
    detail::pack_vehicle(d, out);
    return out;
  };

  std::vector<ReferenceSample> samples;
  std::vector<VehicleState> states;
  auto record = [&](double t, const StateVector<7>& y) {
    const VehicleState x = detail::unpack_vehicle(y);
    const AeroAccel a = aero_at(x);
    const DragKinematics k{a.drag, x.v, x.gamma, gravity(planet, x.r), x.r, a.lift};
    const DragAccelTerms fg = f_g0_terms(k, planet.hs);
    samples.push_back({t, a.drag, p_term(k, planet.hs), fg.f + fg.g0 * std::cos(bank.at(x.v))});
    states.push_back(x);
  };

  StateVector<7> y0;
  detail::pack_vehicle(scenario.entry.to_state(planet), y0);
  const auto hit = detail::integrate_to_terminal(y0, dt, scenario.terminal, planet.r0, deriv, record);
  if (hit.reason == TerminationReason::timeout) {
    throw Error(ErrorKind::nominal_run_failed,
                "reference run met no terminal condition within " +
                    std::to_string(scenario.terminal.max_time) + " s");
  }

  ReferenceRun run;
  run.profile = ReferenceProfile(std::move(samples));
  run.terminal = detail::unpack_vehicle(hit.y);
  run.t_final = hit.t;
  run.reason = hit.reason;
  run.states = std::move(states);
  return run;
}

void write_reference_csv(std::ostream& out, const ReferenceProfile& profile) {
  out << "t,d_star,d_star_dot,d_star_ddot\n";
  out.precision(17);
  for (const auto& s : profile.samples()) {
    out << s.t << ',' << s.d_star << ',' << s.d_star_dot << ',' << s.d_star_ddot << '\n';
  }
}

ReferenceProfile read_reference_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("t,d_star,d_star_dot,d_star_ddot", 0) != 0) {
    throw Error(ErrorKind::invalid_argument, "reference CSV must start with the header "
                                             "t,d_star,d_star_dot,d_star_ddot");
  }
  std::vector<ReferenceSample> samples;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream row(line);
    ReferenceSample s;
    char c1 = 0, c2 = 0, c3 = 0;
    if (!(row >> s.t >> c1 >> s.d_star >> c2 >> s.d_star_dot >> c3 >> s.d_star_ddot) || c1 != ',' ||
        c2 != ',' || c3 != ',') {
      throw Error(ErrorKind::invalid_argument, "malformed reference CSV row " + std::to_string(lineno));
    }
    samples.push_back(s);
  }
  return ReferenceProfile(std::move(samples));
}

}  // namespace entry
