#pragma once

namespace entry {

/// Per-run multiplicative deviations (fractions, 0.05 == 5%).
struct DispersionSet {
  double d_m = 0.0;
  double d_rho = 0.0;
  double d_cl = 0.0;
  double d_cd = 0.0;

  friend bool operator==(const DispersionSet&, const DispersionSet&) = default;
};

}  // namespace entry
