#include "entry/drag_model.hpp"

#include <cmath>
#include <sstream>

#include "entry/error.hpp"

namespace entry {

namespace {

// Ddot / D for the nominal model.
double relative_rate(const DragKinematics& k, double hs, double sg) {
  return -k.v * sg / hs - 2.0 * k.d / k.v - 2.0 * k.g * sg / k.v + k.c;
}

}  // namespace

double p_term(const DragKinematics& k, double hs) {
  return relative_rate(k, hs, std::sin(k.gamma)) * k.d;
}

DragAccelTerms f_g0_terms(const DragKinematics& k, double hs) {
  const double sg = std::sin(k.gamma);
  const double cg = std::cos(k.gamma);
  const double v2 = k.v * k.v;

  const double p = relative_rate(k, hs, sg) * k.d;
  const double lead = -k.v * sg / hs - 4.0 * k.d / k.v - 2.0 * k.g * sg / k.v + k.c;

  // The centrifugal part of the flight-path rate enters with a minus sign:
  // d/dt(-v sin(gamma)/hs) contains -(v cos(gamma)/hs) * (v/r) cos(gamma).
  const double bracket = (k.d * sg + k.g) / hs + (4.0 * k.g * sg * sg - 2.0 * k.g * cg * cg) / k.r -
                         (2.0 * k.d * k.d + 4.0 * k.d * k.g * sg + 2.0 * k.g * k.g * sg * sg -
                          2.0 * k.g * k.g * cg * cg) /
                             v2 -
                         v2 * cg * cg / (k.r * hs) + k.c_dot;

  DragAccelTerms out;
  out.f = lead * p + k.d * bracket;
  out.g0 = -(k.v / hs + 2.0 * k.g / k.v) * k.l * k.d * cg / k.v;
  return out;
}

void require_invertible(double g0, double floor) {
  if (!std::isfinite(g0) || std::abs(g0) < floor) {
    std::ostringstream msg;
    msg << "|g0| = " << std::abs(g0) << " below floor " << floor;
    throw Error(ErrorKind::g0_singular, msg.str());
  }
}

}  // namespace entry
