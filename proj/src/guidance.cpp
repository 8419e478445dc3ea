#include "entry/guidance.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "entry/error.hpp"
#include "entry/rk4.hpp"

namespace entry {

const char* to_string(GuidanceLawKind law) {
  return law == GuidanceLawKind::proposed ? "proposed" : "no-integral";
}

GuidanceLawKind parse_law(std::string_view name) {
  if (name == "proposed") return GuidanceLawKind::proposed;
  if (name == "no-integral" || name == "baseline") return GuidanceLawKind::no_integral;
  throw Error(ErrorKind::invalid_config, "unknown guidance law '" + std::string(name) + "'");
}

void GuidanceGains::validate() const {
  if (!(alpha1 > 0.0) || !(alpha2 > 0.0)) {
    throw Error(ErrorKind::invalid_config, "alpha1 and alpha2 must be positive");
  }
  if (law == GuidanceLawKind::proposed) {
    if (!(alpha3 > 0.0)) {
      throw Error(ErrorKind::invalid_config, "alpha3 must be positive");
    }
    if (!(alpha1 * alpha2 > alpha3)) {
      throw Error(ErrorKind::invalid_config,
                  "Routh condition alpha1*alpha2 > alpha3 violated: s^3 + a1 s^2 + a2 s + a3 "
                  "is not Hurwitz");
    }
  }
  if (!(eps0 > 0.0) || !(tau > 0.0) || !(gamma_x > 0.0) || !(k > 0.0)) {
    throw Error(ErrorKind::invalid_config, "eps0, tau, gamma_x and k must be positive");
  }
  if (!(delta_damping >= 0.0)) {
    throw Error(ErrorKind::invalid_config, "delta_damping must be non-negative");
  }
}

SmoothSat smooth_sat(double u) {
  const double g = std::tanh(u);
  // 4 / (e^u + e^-u)^2 == 1 / cosh(u)^2, written to stay finite for large |u|.
  const double c = std::cosh(u);
  return {g, std::isfinite(c) ? 1.0 / (c * c) : 0.0};
}

double nussbaum(double chi) {
  static const double max_exponent = std::log(std::numeric_limits<double>::max());
  const double e = chi * chi;
  if (!(e < max_exponent)) {
    throw Error(ErrorKind::overflow, "Nussbaum argument " + std::to_string(chi) +
                                         " leaves double range; chi is unbounded");
  }
  return std::exp(e) * std::cos(0.5 * kPi * chi);
}

VirtualControl virtual_control(double x0, double x1, double xhat2, double f, double g0,
                               double d_star_ddot, const GuidanceGains& gains, double g0_floor) {
  const double e0 = gains.eps0;
  const double num = -f + d_star_ddot - gains.effective_alpha3() / (e0 * e0 * e0) * x0 -
                     gains.alpha2 / (e0 * e0) * x1 - gains.alpha1 / e0 * xhat2;
  VirtualControl out;
  if (std::isfinite(g0) && std::abs(g0) >= g0_floor) {
    out.unclamped = num / g0;
  } else {
    if (!std::isfinite(g0) || num == 0.0 || !std::isfinite(num)) {
      throw Error(ErrorKind::g0_singular, "|g0| below floor and the clamp cannot resolve g*");
    }
    const double sign = (num > 0.0) == (g0 > 0.0) ? 1.0 : -1.0;
    out.unclamped = g0 != 0.0 ? num / g0 : sign * std::numeric_limits<double>::infinity();
    // Below the floor the target is only trusted for its sign.
    out.value = sign;
    out.clamped = true;
    return out;
  }
  out.value = std::clamp(out.unclamped, -1.0, 1.0);
  out.clamped = out.value != out.unclamped;
  return out;
}

double g_term(const GTermInputs& in) {
  const GstarPartials& d = in.partials;
  const double robust = in.g_tilde * d.dx1 * in.d;
  return 0.5 * in.g0 * in.g0 * in.g_tilde - d.dt - d.dx0 * in.x1 - d.dx1 * in.p +
         in.delta_weight * 0.5 * robust * robust - d.dxhat2 * in.xhat2_dot;
}

GuidanceLaw::GuidanceLaw(PlanetModel planet, GuidanceGains gains, ObserverGains observer,
                         std::shared_ptr<const ReferenceProfile> reference)
    : planet_(planet), gains_(gains), observer_(observer), reference_(std::move(reference)) {
  if (!reference_ || reference_->empty()) {
    throw Error(ErrorKind::invalid_argument, "guidance needs a non-empty reference profile");
  }
  gains_.validate();
  observer_.validate();
}

VirtualControl GuidanceLaw::gstar_at(double t, double x0, double d, double xhat2,
                                     const Kinematic& kin, double lift_to_drag) const {
  const ReferenceTriple ref = reference_->lookup(t);
  const DragKinematics k{d, kin.v, kin.gamma, gravity(planet_, kin.r), kin.r, lift_to_drag * d};
  const DragAccelTerms fg = f_g0_terms(k, planet_.hs);
  return virtual_control(x0, d - ref.d_star, xhat2, fg.f, fg.g0, ref.d_star_ddot, gains_);
}

GstarPartials GuidanceLaw::gstar_partials(const GuidanceState& state, const Measurements& m) const {
  const double ld = m.lift / m.drag;
  const Kinematic now{m.v, m.gamma, m.r};
  const VirtualControl center = gstar_at(m.t, state.x0, m.drag, state.obs.xhat2, now, ld);
  GstarPartials out;
  if (center.clamped) return out;

  const double g0 =
      f_g0_terms({m.drag, m.v, m.gamma, gravity(planet_, m.r), m.r, m.lift}, planet_.hs).g0;
  const double e0 = gains_.eps0;
  out.dx0 = -gains_.effective_alpha3() / (e0 * e0 * e0 * g0);
  out.dxhat2 = -gains_.alpha1 / (e0 * g0);

  // Central differences on the unclamped target. D = x1 + D*, so perturbing x1 at
  // fixed t perturbs the measured drag.
  try {
    const double hd = kFdRelStep * std::max(std::abs(m.drag), 1e-9);
    const VirtualControl up = gstar_at(m.t, state.x0, m.drag + hd, state.obs.xhat2, now, ld);
    const VirtualControl dn = gstar_at(m.t, state.x0, m.drag - hd, state.obs.xhat2, now, ld);
    out.dx1 = (up.unclamped - dn.unclamped) / (2.0 * hd);

    // Time partial at fixed measured drag: the reference and the kinematics move.
    const double ht = kFdRelStep * kTimeScale;
    const Kinematic fwd{m.v + m.v_dot * ht, m.gamma + m.gamma_dot * ht, m.r + m.r_dot * ht};
    const Kinematic bwd{m.v - m.v_dot * ht, m.gamma - m.gamma_dot * ht, m.r - m.r_dot * ht};
    const VirtualControl tf = gstar_at(m.t + ht, state.x0, m.drag, state.obs.xhat2, fwd, ld);
    const VirtualControl tb = gstar_at(m.t - ht, state.x0, m.drag, state.obs.xhat2, bwd, ld);
    out.dt = (tf.unclamped - tb.unclamped) / (2.0 * ht);
  } catch (const Error& e) {
    // A stencil point fell below the g0 floor: the target is on the clamp boundary.
    if (e.kind() != ErrorKind::g0_singular) throw;
    out.dx1 = 0.0;
    out.dt = 0.0;
  }
  if (!std::isfinite(out.dx1) || !std::isfinite(out.dt)) {
    out.dx1 = 0.0;
    out.dt = 0.0;
  }
  return out;
}

GuidanceRates GuidanceLaw::rates(const GuidanceState& state, const Measurements& m,
                                 GuidanceDiagnostics* diag) const {
  const ReferenceTriple ref = reference_->lookup(m.t);
  const double x1 = m.drag - ref.d_star;
  const DragKinematics kin{m.drag, m.v, m.gamma, gravity(planet_, m.r), m.r, m.lift};
  const double p = p_term(kin, planet_.hs);
  const DragAccelTerms fg = f_g0_terms(kin, planet_.hs);
  const SmoothSat sm = smooth_sat(state.u);
  const bool integral = gains_.law == GuidanceLawKind::proposed;
  const double x0 = integral ? state.x0 : 0.0;

  GuidanceRates out;
  out.obs = observer_derivative(state.obs, observer_, x1, fg.f, fg.g0, sm.value, ref.d_star_ddot);

  const VirtualControl vc =
      virtual_control(x0, x1, state.obs.xhat2, fg.f, fg.g0, ref.d_star_ddot, gains_);
  GuidanceState eff = state;
  eff.x0 = x0;
  const GstarPartials partials = vc.clamped ? GstarPartials{} : gstar_partials(eff, m);

  const double g_tilde = sm.value - vc.value;
  const double G = g_term({fg.g0, g_tilde, x1, m.drag, p, out.obs.xhat2_dot, partials,
                           gains_.delta_damping});
  const double ubar = sm.slope * state.u / gains_.tau - G - gains_.k * g_tilde;
  const double N = nussbaum(state.chi_n);
  const double u_c = gains_.tau * N * ubar;

  out.chi_n_dot = gains_.gamma_x * ubar * g_tilde;
  out.u_dot = (-state.u + u_c) / gains_.tau;
  out.x0_dot = integral ? x1 : 0.0;

  const std::array<double, 6> checks{G, ubar, out.u_dot, out.chi_n_dot, out.obs.xhat1_dot,
                                     out.obs.xhat2_dot};
  for (double c : checks) {
    if (!std::isfinite(c)) {
      throw Error(ErrorKind::nonfinite_control,
                  "non-finite guidance intermediate at t=" + std::to_string(m.t));
    }
  }

  if (diag != nullptr) {
    diag->ref = ref;
    diag->x1 = x1;
    diag->p = p;
    diag->f = fg.f;
    diag->g0 = fg.g0;
    diag->g_u = sm.value;
    diag->gstar = vc.value;
    diag->gstar_unclamped = vc.unclamped;
    diag->clamped = vc.clamped;
    diag->partials = partials;
    diag->G = G;
    diag->ubar = ubar;
    diag->nussbaum = N;
    diag->u_c = u_c;
    diag->chi_n_dot = out.chi_n_dot;
    diag->sigma = bank_command(state.u);
  }
  return out;
}

GuidanceStep GuidanceLaw::step(const GuidanceState& state, const Measurements& m, double dt) const {
  if (!(dt > 0.0)) {
    throw Error(ErrorKind::invalid_argument, "guidance step must be positive");
  }
  GuidanceStep out;
  out.sigma_cmd = bank_command(state.u);
  rates(state, m, &out.diagnostics);

  auto pack = [](const GuidanceState& s) {
    return StateVector<5>{s.u, s.chi_n, s.x0, s.obs.xhat1, s.obs.xhat2};
  };
  auto unpack = [](const StateVector<5>& y) {
    GuidanceState s;
    s.u = y[0];
    s.chi_n = y[1];
    s.x0 = y[2];
    s.obs = {y[3], y[4]};
    return s;
  };
  auto deriv = [&](double t, const StateVector<5>& y) {
    Measurements held = m;
    held.t = t;
    const GuidanceRates r = rates(unpack(y), held);
    return StateVector<5>{r.u_dot, r.chi_n_dot, r.x0_dot, r.obs.xhat1_dot, r.obs.xhat2_dot};
  };
  try {
    out.state = unpack(rk4_step(pack(state), m.t, dt, deriv));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::nonfinite_state) {
      throw Error(ErrorKind::nonfinite_control, e.what());
    }
    throw;
  }
  return out;
}

}  // namespace entry
