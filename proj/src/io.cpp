#include "entry/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "entry/error.hpp"

namespace entry {

namespace {

std::string g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Tick step of 1, 2 or 5 times a power of ten giving about `target` intervals.
double nice_step(double span, int target) {
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double norm = raw / mag;
  const double step = norm < 1.5 ? 1.0 : norm < 3.5 ? 2.0 : norm < 7.5 ? 5.0 : 10.0;
  return step * mag;
}

std::string tick_label(double v, double step) {
  char buf[32];
  const int decimals = std::max(0, -static_cast<int>(std::floor(std::log10(step) + 1e-9)));
  if (std::abs(v) < 0.5 * step) v = 0.0;
  if (std::abs(v) >= 1e6 || (std::abs(v) > 0.0 && std::abs(v) < 1e-4)) {
    std::snprintf(buf, sizeof buf, "%.3g", v);
  } else {
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  }
  return buf;
}

struct Range {
  double lo = 0.0;
  double hi = 1.0;
};

Range padded(double lo, double hi) {
  if (!(hi > lo)) {
    const double pad = lo == 0.0 ? 1.0 : 0.05 * std::abs(lo);
    return {lo - pad, hi + pad};
  }
  return {lo, hi};
}

}  // namespace

void write_trajectory_csv(std::ostream& out, const TrajectoryLog& log,
                          const std::vector<MonitorSample>& residuals) {
  std::unordered_map<std::size_t, double> resid_at;
  {
    // Residual samples line up with records by index offset; match on time.
    std::size_t j = 0;
    for (std::size_t i = 0; i < log.records.size() && j < residuals.size(); ++i) {
      if (log.records[i].t == residuals[j].t) resid_at[i] = residuals[j++].delta_s_resid;
    }
  }
  out << "t,altitude_km,longitude_deg,latitude_deg,velocity,flight_path_deg,heading_deg,downrange_km,"
         "drag,lift,d_star,d_star_dot,d_star_ddot,drag_error,x0,x2,xhat1,xhat2,sigma_deg,u,chi_n,"
         "nussbaum,gstar,clamped,G,ubar,f,g0,p,plant_control,delta_s_resid\n";
  for (std::size_t i = 0; i < log.records.size(); ++i) {
    const auto& r = log.records[i];
    const auto& s = r.state;
    const double h_km = (s.r - log.terminal.state.r + log.terminal.altitude_km * 1e3) / 1e3;
    const double fields[] = {r.t,          h_km,        rad2deg(s.phi),   rad2deg(s.theta),
                             s.v,          rad2deg(s.gamma), rad2deg(s.chi), std::abs(s.s) / 1e3,
                             r.drag,       r.lift,      r.ref.d_star,     r.ref.d_star_dot,
                             r.ref.d_star_ddot, r.x1,   r.x0,             r.x2,
                             r.xhat1,      r.xhat2,     rad2deg(r.sigma), r.u,
                             r.chi_n,      r.nussbaum,  r.gstar,          r.clamped ? 1.0 : 0.0,
                             r.G,          r.ubar,      r.f,              r.g0,
                             r.p,          r.plant_control};
    for (double f : fields) out << g17(f) << ',';
    const auto it = resid_at.find(i);
    if (it != resid_at.end()) out << g17(it->second);
    out << '\n';
  }
}

std::string terminal_json(const TrajectoryLog& log, const Targets& targets) {
  const auto& t = log.terminal;
  const ErrorMetrics err = error_metrics(t, targets);
  nlohmann::json doc = {
      {"reason", to_string(t.reason)},
      {"t_final", t.t},
      {"velocity", t.state.v},
      {"altitude_km", t.altitude_km},
      {"downrange_km", t.downrange_km},
      {"flight_path_deg", rad2deg(t.state.gamma)},
      {"targets", {{"downrange_km", targets.downrange_km}, {"altitude_km", targets.altitude_km}}},
      {"downrange_error_km", err.downrange_km},
      {"altitude_error_km", err.altitude_km},
      {"stats",
       {{"sigma_min_deg", rad2deg(log.stats.sigma_min)},
        {"sigma_max_deg", rad2deg(log.stats.sigma_max)},
        {"max_abs_chi", log.stats.max_abs_chi},
        {"steps", log.stats.steps}}},
  };
  return doc.dump(2) + "\n";
}

std::string render_svg(const Plot& plot) {
  const double left = 78.0;
  const double right = 20.0;
  const double top = 36.0;
  const double bottom = 52.0;
  const double w = plot.width - left - right;
  const double h = plot.height - top - bottom;

  double xlo = INFINITY, xhi = -INFINITY, ylo = INFINITY, yhi = -INFINITY;
  for (const auto& s : plot.series) {
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      xlo = std::min(xlo, s.x[i]);
      xhi = std::max(xhi, s.x[i]);
      ylo = std::min(ylo, s.y[i]);
      yhi = std::max(yhi, s.y[i]);
    }
  }
  if (!std::isfinite(xlo)) xlo = 0.0, xhi = 1.0, ylo = 0.0, yhi = 1.0;
  const Range xr = padded(xlo, xhi);
  Range yr = padded(ylo, yhi);
  const double ystep = nice_step(yr.hi - yr.lo, 6);
  yr = {std::floor(yr.lo / ystep) * ystep, std::ceil(yr.hi / ystep) * ystep};
  const double xstep = nice_step(xr.hi - xr.lo, 8);

  auto sx = [&](double x) { return left + (x - xr.lo) / (xr.hi - xr.lo) * w; };
  auto sy = [&](double y) { return top + (1.0 - (y - yr.lo) / (yr.hi - yr.lo)) * h; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << plot.width << "\" height=\"" << plot.height
     << "\" viewBox=\"0 0 " << plot.width << ' ' << plot.height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << px(left + w / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
     << escape(plot.title) << "</text>\n";

  for (double y = yr.lo; y <= yr.hi + 0.5 * ystep; y += ystep) {
    os << "<line x1=\"" << px(left) << "\" x2=\"" << px(left + w) << "\" y1=\"" << px(sy(y)) << "\" y2=\""
       << px(sy(y)) << "\" stroke=\"#e0e0e0\"/>\n";
    os << "<text x=\"" << px(left - 6) << "\" y=\"" << px(sy(y) + 4) << "\" text-anchor=\"end\">"
       << tick_label(y, ystep) << "</text>\n";
  }
  for (double x = std::ceil(xr.lo / xstep) * xstep; x <= xr.hi + 1e-9 * xstep; x += xstep) {
    os << "<line x1=\"" << px(sx(x)) << "\" x2=\"" << px(sx(x)) << "\" y1=\"" << px(top) << "\" y2=\""
       << px(top + h) << "\" stroke=\"#e0e0e0\"/>\n";
    os << "<text x=\"" << px(sx(x)) << "\" y=\"" << px(top + h + 16) << "\" text-anchor=\"middle\">"
       << tick_label(x, xstep) << "</text>\n";
  }
  os << "<rect x=\"" << px(left) << "\" y=\"" << px(top) << "\" width=\"" << px(w) << "\" height=\"" << px(h)
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  os << "<text x=\"" << px(left + w / 2) << "\" y=\"" << px(plot.height - 12.0) << "\" text-anchor=\"middle\">"
     << escape(plot.x_label) << "</text>\n";
  os << "<text transform=\"translate(18," << px(top + h / 2) << ") rotate(-90)\" text-anchor=\"middle\">"
     << escape(plot.y_label) << "</text>\n";

  // Long histories are thinned to at most ~2000 vertices per series.
  for (const auto& s : plot.series) {
    const std::size_t n = std::min(s.x.size(), s.y.size());
    const std::size_t stride = std::max<std::size_t>(1, n / 2000);
    if (s.markers) {
      for (std::size_t i = 0; i < n; i += stride) {
        if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
        os << "<circle cx=\"" << px(sx(s.x[i])) << "\" cy=\"" << px(sy(s.y[i])) << "\" r=\"2\" fill=\"" << s.color
           << "\" fill-opacity=\"0.6\"/>\n";
      }
      continue;
    }
    os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\""
       << (s.dashed ? " stroke-dasharray=\"6 4\"" : "") << " points=\"";
    for (std::size_t i = 0; i < n; i += stride) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      os << px(sx(s.x[i])) << ',' << px(sy(s.y[i])) << ' ';
    }
    if (n > 0 && (n - 1) % stride != 0) os << px(sx(s.x[n - 1])) << ',' << px(sy(s.y[n - 1]));
    os << "\"/>\n";
  }

  double ly = top + 14.0;
  for (const auto& s : plot.series) {
    if (s.label.empty()) continue;
    const double lx = left + w - 150.0;
    os << "<line x1=\"" << px(lx) << "\" x2=\"" << px(lx + 24) << "\" y1=\"" << px(ly - 4) << "\" y2=\""
       << px(ly - 4) << "\" stroke=\"" << s.color << "\" stroke-width=\"2\""
       << (s.dashed ? " stroke-dasharray=\"6 4\"" : "") << "/>\n";
    os << "<text x=\"" << px(lx + 30) << "\" y=\"" << px(ly) << "\">" << escape(s.label) << "</text>\n";
    ly += 16.0;
  }
  os << "</svg>\n";
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::invalid_argument, "cannot write '" + path + "'");
  out << text;
}

}  // namespace entry
