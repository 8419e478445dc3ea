#include "entry/observer.hpp"

#include "entry/error.hpp"

namespace entry {

void ObserverGains::validate() const {
  if (!hurwitz()) {
    throw Error(ErrorKind::invalid_config,
                "observer gains must satisfy h1 > 0 and h2 > 0 for a Hurwitz error matrix");
  }
  if (!(eps > 0.0)) {
    throw Error(ErrorKind::invalid_config, "observer eps must be positive");
  }
}

ObserverRates observer_derivative(const ObserverState& obs, const ObserverGains& gains,
                                  double x1_measured, double f, double g0, double g_u,
                                  double d_star_ddot) {
  const double innovation = x1_measured - obs.xhat1;
  return {obs.xhat2 + gains.h1 / gains.eps * innovation,
          f - d_star_ddot + g0 * g_u + gains.h2 / (gains.eps * gains.eps) * innovation};
}

}  // namespace entry
