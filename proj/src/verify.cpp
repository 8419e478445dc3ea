#include "entry/verify.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <cstdio>
#include <nlohmann/json.hpp>

#include "entry/error.hpp"

namespace entry {

namespace {

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

HurwitzReport hurwitz_check(const ObserverGains& observer, const GuidanceGains& guidance) {
  HurwitzReport r;
  r.observer_ok = observer.h1 > 0.0 && observer.h2 > 0.0;
  if (!r.observer_ok) {
    r.reasons.push_back("observer matrix needs h1 > 0 and h2 > 0 (h1=" + num(observer.h1) +
                        ", h2=" + num(observer.h2) + ")");
  }
  const double a1 = guidance.alpha1;
  const double a2 = guidance.alpha2;
  if (guidance.law == GuidanceLawKind::no_integral) {
    r.guidance_ok = a1 > 0.0 && a2 > 0.0;
    if (!r.guidance_ok) r.reasons.push_back("s^2 + a1 s + a2 needs a1 > 0 and a2 > 0");
    return r;
  }
  const double a3 = guidance.alpha3;
  r.guidance_ok = routh_cubic(a1, a2, a3);
  if (!(a1 > 0.0 && a2 > 0.0 && a3 > 0.0)) {
    r.reasons.push_back("alpha1, alpha2, alpha3 must all be positive");
  } else if (!(a1 * a2 > a3)) {
    r.reasons.push_back("Routh condition alpha1*alpha2 > alpha3 violated (" + num(a1 * a2) +
                        " <= " + num(a3) + ")");
  }
  return r;
}

std::vector<NussbaumPoint> nussbaum_property_scan(std::span<const double> s_points, double rel_tol) {
  using boost::math::quadrature::gauss_kronrod;
  std::vector<NussbaumPoint> out;
  double prev = 0.0;
  for (double s : s_points) {
    if (!(s > prev) || !(s <= kNussbaumScanMax)) {
      throw Error(ErrorKind::invalid_argument,
                  "scan points must be positive, increasing and <= " + num(kNussbaumScanMax));
    }
    prev = s;
    const double s2 = s * s;
    auto scaled = [s2](double z) { return std::exp(z * z - s2) * std::cos(0.5 * kPi * z); };
    double err = 0.0;
    double l1 = 0.0;
    const double i_scaled = gauss_kronrod<double, 61>::integrate(scaled, 0.0, s, 30, rel_tol, &err, &l1);
    if (!std::isfinite(i_scaled) || err > 10.0 * rel_tol * std::max(std::abs(i_scaled), 1e-300)) {
      throw Error(ErrorKind::quadrature_failure,
                  "mean integral at s=" + num(s) + " did not converge (error " + num(err) + ")");
    }
    const double scale = std::exp(s2) / s;
    out.push_back({s, i_scaled * scale, err * scale});
  }
  return out;
}

void VxMonitorConfig::validate() const {
  if (!(lambda > 0.0)) throw Error(ErrorKind::invalid_config, "vx monitor lambda must be positive");
  if (!(rho_min > 0.0) || !(rho_max >= rho_min)) {
    throw Error(ErrorKind::invalid_config, "vx monitor needs 0 < rho_min <= rho_max");
  }
  if (!(ceiling > 0.0)) throw Error(ErrorKind::invalid_config, "vx monitor ceiling must be positive");
}

VxMonitorResult vx_monitor(std::span<const double> t, std::span<const double> chi,
                           std::span<const double> rho, const VxMonitorConfig& cfg) {
  cfg.validate();
  if (t.size() != chi.size() || t.size() != rho.size() || t.empty()) {
    throw Error(ErrorKind::misaligned_histories, "time, chi and rho histories differ in length");
  }
  VxMonitorResult r;
  r.v.assign(t.size(), 0.0);
  r.rho_min_observed = *std::min_element(rho.begin(), rho.end());
  r.rho_max_observed = *std::max_element(rho.begin(), rho.end());

  auto integrand = [&](std::size_t j) { return rho[j] * nussbaum(chi[j]) - 1.0; };
  double a_prev = integrand(0);
  for (std::size_t j = 1; j < t.size(); ++j) {
    const double dt = t[j] - t[j - 1];
    if (!(dt > 0.0)) throw Error(ErrorKind::misaligned_histories, "time must strictly increase");
    const double decay = std::exp(-cfg.lambda * dt);
    const double a = integrand(j);
    r.v[j] = decay * r.v[j - 1] + 0.5 * (a_prev * decay + a) * (chi[j] - chi[j - 1]);
    a_prev = a;
    r.max_abs = std::max(r.max_abs, std::abs(r.v[j]));
  }
  r.bounded = std::isfinite(r.max_abs) && r.max_abs < cfg.ceiling;
  r.rho_within_bounds = r.rho_min_observed >= cfg.rho_min && r.rho_max_observed <= cfg.rho_max;
  return r;
}

VxMonitorResult vx_monitor(const TrajectoryLog& log, const VxMonitorConfig& cfg) {
  std::vector<double> t;
  std::vector<double> chi;
  std::vector<double> rho;
  t.reserve(log.records.size());
  chi.reserve(log.records.size());
  rho.reserve(log.records.size());
  for (const auto& rec : log.records) {
    // The refined terminal record can sit within roundoff of the last full step.
    if (!t.empty() && !(rec.t > t.back())) continue;
    t.push_back(rec.t);
    chi.push_back(rec.chi_n);
    rho.push_back(smooth_sat(rec.u).slope);
  }
  return vx_monitor(t, chi, rho, cfg);
}

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const VerifyCheck& c) { return c.passed; });
}

std::string VerifyReport::to_json() const {
  nlohmann::json doc;
  doc["passed"] = passed();
  doc["checks"] = nlohmann::json::array();
  for (const auto& c : checks) {
    doc["checks"].push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }
  return doc.dump(2) + "\n";
}

VerifyReport run_verify_suite(const SimConfig& nominal, const VxMonitorConfig& vx) {
  VerifyReport report;
  auto add = [&report](std::string name, bool ok, std::string detail) {
    report.checks.push_back({std::move(name), ok, std::move(detail)});
  };

  const HurwitzReport h = hurwitz_check(nominal.observer, nominal.guidance);
  std::string reasons;
  for (const auto& r : h.reasons) reasons += (reasons.empty() ? "" : "; ") + r;
  add("observer_hurwitz", h.observer_ok,
      "h1=" + num(nominal.observer.h1) + ", h2=" + num(nominal.observer.h2) +
          (h.observer_ok ? "" : ": " + reasons));
  add("guidance_hurwitz", h.guidance_ok,
      "alpha=(" + num(nominal.guidance.alpha1) + ", " + num(nominal.guidance.alpha2) + ", " +
          num(nominal.guidance.alpha3) + ")" + (h.guidance_ok ? "" : ": " + reasons));

  const bool exact = nussbaum(0.0) == 1.0 && std::abs(nussbaum(1.0)) < 1e-12 &&
                     std::abs(nussbaum(2.0) + std::exp(4.0)) <= 1e-12 * std::exp(4.0);
  add("nussbaum_values", exact, "N(0)=1, N(1)=0, N(2)=-e^4");

  bool even = true;
  for (double x = 0.0; x <= 5.0; x += 0.125) even = even && nussbaum(x) == nussbaum(-x);
  add("nussbaum_even", even, "N(-x) = N(x) on [0, 5]");

  try {
    const std::vector<double> up_s{5.0, 9.0, 13.0};
    const std::vector<double> down_s{7.0, 11.0, 15.0};
    const auto up = nussbaum_property_scan(up_s);
    const auto down = nussbaum_property_scan(down_s);
    bool inc = up[0].mean_integral > 0.0;
    bool dec = down[0].mean_integral < 0.0;
    for (std::size_t i = 1; i < 3; ++i) {
      inc = inc && up[i].mean_integral > up[i - 1].mean_integral;
      dec = dec && down[i].mean_integral < down[i - 1].mean_integral;
    }
    add("nussbaum_sup_trend", inc,
        "mean integral at s=5,9,13: " + num(up[0].mean_integral) + ", " + num(up[1].mean_integral) +
            ", " + num(up[2].mean_integral));
    add("nussbaum_inf_trend", dec,
        "mean integral at s=7,11,15: " + num(down[0].mean_integral) + ", " +
            num(down[1].mean_integral) + ", " + num(down[2].mean_integral));
  } catch (const Error& e) {
    add("nussbaum_scan", false, e.what());
  }

  if (nominal.reference && !nominal.reference->empty() && h.ok()) {
    try {
      const TrajectoryLog log = run_trajectory(nominal);
      const VxMonitorResult m = vx_monitor(log, vx);
      add("chi_bounded", log.stats.max_abs_chi < 10.0,
          "max |chi| = " + num(log.stats.max_abs_chi) + " (limit 10)");
      add("vx_bounded", m.bounded,
          "max |V| = " + num(m.max_abs) + " (ceiling " + num(vx.ceiling) +
              "), observed rho in [" + num(m.rho_min_observed) + ", " + num(m.rho_max_observed) + "]");
    } catch (const std::exception& e) {
      add("nominal_run", false, e.what());
    }
  }
  return report;
}

}  // namespace entry
