#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <string_view>

#include "entry/drag_model.hpp"
#include "entry/observer.hpp"
#include "entry/planet.hpp"
#include "entry/reference.hpp"

namespace entry {

/// `no_integral` is the ablated comparison law: identical structure with the
/// integral channel removed (alpha3 = 0, x0 frozen at zero).
enum class GuidanceLawKind { proposed, no_integral };

const char* to_string(GuidanceLawKind law);
GuidanceLawKind parse_law(std::string_view name);

struct GuidanceGains {
  double alpha1 = 3.0;
  double alpha2 = 3.0;
  double alpha3 = 1.0;
  double eps0 = 6.5;       // s
  double tau = 1.0;        // s
  double gamma_x = 5e-4;
  double k = 1.0;
  // Weight on the 1/2 |g~ (dg*/dx1) D|^2 robustness term of G. Zero by default:
  // the term only dominates the density/drag-coefficient rate uncertainty, which is
  // identically zero for constant multiplicative dispersions, and at weight 1 it is
  // stiff enough to destabilise the loop while g0 is small.
  double delta_damping = 0.0;
  GuidanceLawKind law = GuidanceLawKind::proposed;

  double effective_alpha3() const { return law == GuidanceLawKind::proposed ? alpha3 : 0.0; }
  void validate() const;
};

/// Controller memory. u is the auxiliary filter state, chi_n the Nussbaum argument
/// and x0 the running integral of the drag error.
struct GuidanceState {
  double u = 0.0;
  double chi_n = 0.0;
  double x0 = 0.0;
  ObserverState obs;
};

struct SmoothSat {
  double value = 0.0;  // tanh(u)
  double slope = 1.0;  // d tanh / du = 4 / (e^u + e^-u)^2
};

SmoothSat smooth_sat(double u);

inline double hard_sat(double u) { return std::clamp(u, -1.0, 1.0); }

/// Physical bank magnitude for filter state u: arccos(sat(u)) in [0, pi].
inline double bank_command(double u) { return std::acos(hard_sat(u)); }

/// N(chi) = exp(chi^2) cos(pi chi / 2). Throws overflow once exp(chi^2) leaves double range.
double nussbaum(double chi);

struct VirtualControl {
  double value = 0.0;      // clamped into [-1, 1]
  double unclamped = 0.0;  // pre-clamp target (may be +-inf below the g0 floor)
  bool clamped = false;
};

/// g* = g0^-1 (-f + D*'' - a3/e0^3 x0 - a2/e0^2 x1 - a1/e0 xhat2), clamped into [-1, 1].
/// Below the g0 floor the clamp saturates toward the sign of the unclamped target;
/// a zero numerator there cannot be resolved and raises g0-singular.
VirtualControl virtual_control(double x0, double x1, double xhat2, double f, double g0,
                               double d_star_ddot, const GuidanceGains& gains,
                               double g0_floor = kG0Floor);

struct GstarPartials {
  double dt = 0.0;
  double dx0 = 0.0;
  double dx1 = 0.0;
  double dxhat2 = 0.0;
};

struct GTermInputs {
  double g0 = 0.0;
  double g_tilde = 0.0;  // tanh(u) - g*
  double x1 = 0.0;
  double d = 0.0;
  double p = 0.0;
  double xhat2_dot = 0.0;
  GstarPartials partials;
  double delta_weight = 1.0;
};

/// G(D, t) = 1/2 g0^2 g~ - dg*/dt - dg*/dx0 x1 - dg*/dx1 p
///           + w * 1/2 |g~ dg*/dx1 D|^2 - dg*/dxhat2 xhat2_dot
double g_term(const GTermInputs& in);

/// Sensed quantities available to the guidance computer.
struct Measurements {
  double t = 0.0;
  double drag = 0.0;
  double lift = 0.0;
  double v = 0.0;
  double gamma = 0.0;
  double r = 0.0;
  // Kinematic rates, used to advance the trajectory in the dg*/dt estimate.
  double r_dot = 0.0;
  double v_dot = 0.0;
  double gamma_dot = 0.0;
};

struct GuidanceRates {
  double u_dot = 0.0;
  double chi_n_dot = 0.0;
  double x0_dot = 0.0;
  ObserverRates obs;
};

struct GuidanceDiagnostics {
  ReferenceTriple ref;
  double x1 = 0.0;
  double p = 0.0;
  double f = 0.0;
  double g0 = 0.0;
  double g_u = 0.0;
  double gstar = 0.0;
  double gstar_unclamped = 0.0;
  bool clamped = false;
  GstarPartials partials;
  double G = 0.0;
  double ubar = 0.0;
  double nussbaum = 1.0;
  double u_c = 0.0;
  double chi_n_dot = 0.0;
  double sigma = 0.0;
};

struct GuidanceStep {
  double sigma_cmd = 0.0;
  GuidanceState state;
  GuidanceDiagnostics diagnostics;
};

/// The saturated, observer-based drag-tracking law. Stateless apart from its
/// configuration; all memory lives in GuidanceState.
class GuidanceLaw {
 public:
  GuidanceLaw(PlanetModel planet, GuidanceGains gains, ObserverGains observer,
              std::shared_ptr<const ReferenceProfile> reference);

  /// Time derivatives of every controller state, for integration alongside the plant.
  /// Throws nonfinite-control if any intermediate is NaN/Inf.
  GuidanceRates rates(const GuidanceState& state, const Measurements& m,
                      GuidanceDiagnostics* diag = nullptr) const;

  /// Partials of the (unclamped) virtual control; all zero while the clamp is active.
  GstarPartials gstar_partials(const GuidanceState& state, const Measurements& m) const;

  /// Standalone step: commands the bank for the current state and advances the
  /// controller by dt with measurements held (reference time still advances).
  GuidanceStep step(const GuidanceState& state, const Measurements& m, double dt) const;

  const GuidanceGains& gains() const { return gains_; }
  const ObserverGains& observer_gains() const { return observer_; }
  const ReferenceProfile& reference() const { return *reference_; }

  static constexpr double kFdRelStep = 1e-4;
  static constexpr double kTimeScale = 1.0;  // s

 private:
  struct Kinematic {
    double v, gamma, r;
  };
  VirtualControl gstar_at(double t, double x0, double d, double xhat2, const Kinematic& kin,
                          double lift_to_drag) const;

  PlanetModel planet_;
  GuidanceGains gains_;
  ObserverGains observer_;
  std::shared_ptr<const ReferenceProfile> reference_;
};

}  // namespace entry
