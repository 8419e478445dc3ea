#include "entry/sim.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "entry/error.hpp"
#include "integrate.hpp"

namespace entry {

namespace {

constexpr std::size_t kStateSize = 12;
using Combined = StateVector<kStateSize>;

// Slots after the seven plant states.
constexpr std::size_t kU = 7;
constexpr std::size_t kChi = 8;
constexpr std::size_t kX0 = 9;
constexpr std::size_t kXhat1 = 10;
constexpr std::size_t kXhat2 = 11;

GuidanceState unpack_guidance(const Combined& y) {
  GuidanceState s;
  s.u = y[kU];
  s.chi_n = y[kChi];
  s.x0 = y[kX0];
  s.obs = {y[kXhat1], y[kXhat2]};
  return s;
}

struct OpenLoop {
  double u = 0.0;
  PlantInput input = PlantInput::saturated;
};

// Right-hand side of the combined plant + observer + guidance system.
class CombinedDynamics {
 public:
  CombinedDynamics(const SimConfig& cfg, std::optional<OpenLoop> open_loop)
      : cfg_(cfg),
        vehicle_(cfg.scenario.vehicle.dispersed(cfg.dispersion)),
        rho_disp_{cfg.dispersion.d_rho},
        law_(cfg.scenario.planet, cfg.guidance, cfg.observer, cfg.reference),
        open_loop_(open_loop) {}

  Combined operator()(double t, const Combined& y, GuidanceDiagnostics* diag = nullptr,
                      AeroAccel* aero_out = nullptr) const {
    const PlanetModel& planet = cfg_.scenario.planet;
    const VehicleState x = detail::unpack_vehicle(y);
    const GuidanceState gs = unpack_guidance(y);

    const double plant_cos = plant_control(gs.u);
    const AeroAccel aero = aero_accel(x, vehicle_, density(planet, x.r - planet.r0, rho_disp_));
    const double g = gravity(planet, x.r);
    const VehicleState dx = state_derivative(x, aero, g, Bank::from_cos(plant_cos), planet.r0);
    if (aero_out != nullptr) *aero_out = aero;

    Combined out;
    detail::pack_vehicle(dx, out);

    const Measurements m{t, aero.drag, aero.lift, x.v, x.gamma, x.r, dx.r, dx.v, dx.gamma};
    if (!open_loop_) {
      const GuidanceRates r = law_.rates(gs, m, diag);
      out[kU] = r.u_dot;
      out[kChi] = r.chi_n_dot;
      out[kX0] = r.x0_dot;
      out[kXhat1] = r.obs.xhat1_dot;
      out[kXhat2] = r.obs.xhat2_dot;
      return out;
    }

    // Open loop: u and chi are held; observer and integral still run.
    const ReferenceTriple ref = cfg_.reference->lookup(t);
    const DragKinematics k{aero.drag, x.v, x.gamma, g, x.r, aero.lift};
    const DragAccelTerms fg = f_g0_terms(k, planet.hs);
    const double x1 = aero.drag - ref.d_star;
    const double g_u = std::tanh(gs.u);
    const ObserverRates r =
        observer_derivative(gs.obs, cfg_.observer, x1, fg.f, fg.g0, g_u, ref.d_star_ddot);
    out[kU] = 0.0;
    out[kChi] = 0.0;
    out[kX0] = x1;
    out[kXhat1] = r.xhat1_dot;
    out[kXhat2] = r.xhat2_dot;
    if (diag != nullptr) {
      *diag = GuidanceDiagnostics{};
      diag->ref = ref;
      diag->x1 = x1;
      diag->p = p_term(k, planet.hs);
      diag->f = fg.f;
      diag->g0 = fg.g0;
      diag->g_u = g_u;
      diag->nussbaum = nussbaum(gs.chi_n);
      diag->sigma = std::acos(plant_cos);
    }
    return out;
  }

  double plant_control(double u) const {
    if (open_loop_ && open_loop_->input == PlantInput::smooth) return std::tanh(u);
    return hard_sat(u);
  }

 private:
  const SimConfig& cfg_;
  VehicleParams vehicle_;
  DensityDispersion rho_disp_;
  GuidanceLaw law_;
  std::optional<OpenLoop> open_loop_;
};

TrajectoryLog integrate(const SimConfig& config, std::optional<OpenLoop> open_loop) {
  config.validate();
  const CombinedDynamics dyn(config, open_loop);
  const PlanetModel& planet = config.scenario.planet;

  Combined y0{};
  const VehicleState x0 = config.scenario.entry.to_state(planet);
  detail::pack_vehicle(x0, y0);
  y0[kU] = open_loop ? open_loop->u : 0.0;
  {
    // Observer starts on the measured drag error with zero rate estimate.
    const AeroAccel a0 =
        aero_accel(x0, config.scenario.vehicle.dispersed(config.dispersion),
                   density(planet, x0.r - planet.r0, {config.dispersion.d_rho}));
    y0[kXhat1] = a0.drag - config.reference->lookup(0.0).d_star;
  }

  TrajectoryLog log;
  log.stats.sigma_min = std::numeric_limits<double>::infinity();
  log.stats.sigma_max = -std::numeric_limits<double>::infinity();

  auto deriv = [&dyn](double t, const Combined& y) { return dyn(t, y); };
  auto record = [&](double t, const Combined& y) {
    GuidanceDiagnostics diag;
    AeroAccel aero;
    dyn(t, y, &diag, &aero);
    const double sigma = std::acos(dyn.plant_control(y[kU]));
    log.stats.sigma_min = std::min(log.stats.sigma_min, sigma);
    log.stats.sigma_max = std::max(log.stats.sigma_max, sigma);
    log.stats.max_abs_chi = std::max(log.stats.max_abs_chi, std::abs(y[kChi]));
    ++log.stats.steps;
    if (!config.keep_log) return;

    LogRecord rec;
    rec.t = t;
    rec.state = detail::unpack_vehicle(y);
    rec.drag = aero.drag;
    rec.lift = aero.lift;
    rec.ref = diag.ref;
    rec.x0 = y[kX0];
    rec.x1 = diag.x1;
    rec.x2 = diag.p - diag.ref.d_star_dot;
    rec.xhat1 = y[kXhat1];
    rec.xhat2 = y[kXhat2];
    rec.u = y[kU];
    rec.chi_n = y[kChi];
    rec.chi_n_dot = diag.chi_n_dot;
    rec.nussbaum = diag.nussbaum;
    rec.sigma = sigma;
    rec.gstar = diag.gstar;
    rec.gstar_unclamped = diag.gstar_unclamped;
    rec.clamped = diag.clamped;
    rec.G = diag.G;
    rec.ubar = diag.ubar;
    rec.f = diag.f;
    rec.g0 = diag.g0;
    rec.p = diag.p;
    rec.plant_control = dyn.plant_control(y[kU]);
    log.records.push_back(rec);
  };

  if (config.keep_log) {
    const auto expected = static_cast<std::size_t>(config.scenario.terminal.max_time / config.dt);
    log.records.reserve(std::min<std::size_t>(expected + 2, 400000));
  }

  const auto hit =
      detail::integrate_to_terminal(y0, config.dt, config.scenario.terminal, planet.r0, deriv, record);
  if (hit.reason == TerminationReason::timeout) {
    throw Error(ErrorKind::timeout, "no terminal condition within " +
                                        std::to_string(config.scenario.terminal.max_time) + " s");
  }

  log.terminal.reason = hit.reason;
  log.terminal.t = hit.t;
  log.terminal.state = detail::unpack_vehicle(hit.y);
  log.terminal.downrange_km = std::abs(log.terminal.state.s) / 1e3;
  log.terminal.altitude_km = (log.terminal.state.r - planet.r0) / 1e3;
  return log;
}

}  // namespace

void SimConfig::validate() const {
  scenario.validate();
  guidance.validate();
  observer.validate();
  if (!reference || reference->empty()) {
    throw Error(ErrorKind::invalid_config, "simulation needs a reference profile");
  }
  if (!(dt > 0.0)) {
    throw Error(ErrorKind::invalid_config, "dt must be positive");
  }
  const double bound = std::min({observer.eps, guidance.eps0, guidance.tau}) / 10.0;
  if (dt > bound * (1.0 + 1e-12)) {
    throw Error(ErrorKind::invalid_config, "dt = " + std::to_string(dt) +
                                               " exceeds min(eps, eps0, tau)/10 = " +
                                               std::to_string(bound));
  }
  if (!(dispersion.d_rho > -1.0) || !(dispersion.d_m > -1.0) || !(dispersion.d_cd > -1.0)) {
    throw Error(ErrorKind::invalid_dispersion, "dispersion fractions must exceed -1");
  }
}

TrajectoryLog run_trajectory(const SimConfig& config) { return integrate(config, std::nullopt); }

TrajectoryLog run_open_loop(const SimConfig& config, double u_hold, PlantInput input) {
  return integrate(config, OpenLoop{u_hold, input});
}

ErrorMetrics error_metrics(const TerminalSummary& terminal, const Targets& targets) {
  return {terminal.downrange_km - targets.downrange_km, terminal.altitude_km - targets.altitude_km};
}

std::vector<MonitorSample> residual_samples(const TrajectoryLog& log) {
  const auto& rec = log.records;
  std::vector<MonitorSample> out;
  if (rec.size() < 5) return out;

  // The refined terminal record breaks the uniform spacing the stencil needs.
  const double h = rec[1].t - rec[0].t;
  std::size_t n = 1;
  while (n < rec.size() &&
         std::abs(rec[n].t - rec[0].t - static_cast<double>(n) * h) <= 1e-9 * std::max(1.0, rec[n].t)) {
    ++n;
  }
  if (n < 5) return out;

  out.reserve(n - 4);
  for (std::size_t i = 2; i + 2 < n; ++i) {
    const double dd = (-rec[i - 2].drag + 16.0 * rec[i - 1].drag - 30.0 * rec[i].drag +
                       16.0 * rec[i + 1].drag - rec[i + 2].drag) /
                      (12.0 * h * h);
    MonitorSample s;
    s.t = rec[i].t;
    s.delta_s_resid = dd - (rec[i].f + rec[i].g0 * std::tanh(rec[i].u));
    s.x0_abs = std::abs(rec[i].x0);
    s.x1_abs = std::abs(rec[i].x1);
    out.push_back(s);
  }
  return out;
}

ResidualFit fit_residual_envelope(const std::vector<MonitorSample>& samples) {
  if (samples.size() < 3) {
    throw Error(ErrorKind::insufficient_samples,
                "residual fit needs at least 3 samples, got " + std::to_string(samples.size()));
  }
  const auto n = static_cast<Eigen::Index>(samples.size());
  Eigen::MatrixXd a(n, 3);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& s = samples[static_cast<std::size_t>(i)];
    a(i, 0) = s.x0_abs;
    a(i, 1) = s.x1_abs;
    a(i, 2) = 1.0;
    b(i) = std::abs(s.delta_s_resid);
  }
  Eigen::Vector3d scale;
  for (int j = 0; j < 3; ++j) {
    const double m = a.col(j).cwiseAbs().maxCoeff();
    scale(j) = m > 0.0 ? m : 1.0;
    a.col(j) /= scale(j);
  }

  // Three unknowns: enumerate the active sets and keep the best non-negative solution.
  Eigen::Vector3d best = Eigen::Vector3d::Zero();
  double best_ssr = b.squaredNorm();
  for (unsigned mask = 1; mask < 8; ++mask) {
    std::vector<int> cols;
    for (int j = 0; j < 3; ++j) {
      if ((mask >> j) & 1U) cols.push_back(j);
    }
    Eigen::MatrixXd sub(n, static_cast<Eigen::Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) sub.col(static_cast<Eigen::Index>(c)) = a.col(cols[c]);
    const Eigen::VectorXd x = sub.colPivHouseholderQr().solve(b);
    if ((x.array() < 0.0).any() || !x.allFinite()) continue;
    const double ssr = (sub * x - b).squaredNorm();
    if (ssr < best_ssr) {
      best_ssr = ssr;
      best.setZero();
      for (std::size_t c = 0; c < cols.size(); ++c) best(cols[c]) = x(static_cast<Eigen::Index>(c));
    }
  }

  ResidualFit fit;
  fit.l0 = best(0) / scale(0);
  fit.l1 = best(1) / scale(1);
  fit.d = best(2) / scale(2);
  fit.samples = samples.size();
  std::size_t violations = 0;
  for (const auto& s : samples) {
    const double envelope = fit.l0 * s.x0_abs + fit.l1 * s.x1_abs + fit.d;
    if (std::abs(s.delta_s_resid) > kEnvelopeSafety * envelope) ++violations;
  }
  fit.violation_fraction = static_cast<double>(violations) / static_cast<double>(samples.size());
  return fit;
}

}  // namespace entry
