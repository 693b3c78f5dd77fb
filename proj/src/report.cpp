#include "gradelast/report.hpp"

#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <tuple>

namespace gradelast {

SlopeFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
  SlopeFit fit;
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) return fit;
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  const auto n = lx.size();
  if (n < 2) return fit;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= double(n);
  my /= double(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx == 0.0) return fit;
  const double b = sxy / sxx;
  fit.slope = b;
  if (n > 2) {
    double sse = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = ly[i] - (my + b * (lx[i] - mx));
      sse += r * r;
    }
    const double se = std::sqrt(sse / double(n - 2) / sxx);
    boost::math::students_t dist(double(n - 2));
    fit.half_width95 = boost::math::quantile(boost::math::complement(dist, 0.025)) * se;
  }
  return fit;
}

SlopeFit ConvergenceReport::fit(int t, std::optional<double> target) const {
  std::vector<std::pair<double, double>> pts;
  for (const auto& r : rows)
    if (r.t == t) pts.emplace_back(r.g, r.error);
  std::sort(pts.begin(), pts.end());
  std::vector<double> x, y;
  for (const auto& p : pts) {
    x.push_back(p.first);
    y.push_back(p.second);
  }
  SlopeFit f = fit_loglog(x, y);
  f.t = t;
  f.target = target;
  for (std::size_t i = 1; i < y.size(); ++i)
    if (y[i] < y[i - 1]) f.monotone = false;
  f.pass = f.slope.has_value() && (!target || *f.slope >= *target);
  return f;
}

void ConvergenceReport::sort_rows() {
  std::stable_sort(rows.begin(), rows.end(), [](const ReportRow& a, const ReportRow& b) {
    return std::tie(a.case_id, a.t, a.g, a.h_or_ny) < std::tie(b.case_id, b.t, b.g, b.h_or_ny);
  });
}

std::string ConvergenceReport::csv() const {
  std::ostringstream os;
  os << "case_id,domain,method,g,h_or_ny,t,error,runtime_ms\n";
  char buf[64];
  for (const auto& r : rows) {
    os << r.case_id << ',' << r.domain << ',' << r.method << ',';
    std::snprintf(buf, sizeof buf, "%.17g", r.g);
    os << buf << ',' << r.h_or_ny << ',' << r.t << ',';
    std::snprintf(buf, sizeof buf, "%.17g", r.error);
    os << buf << ',';
    std::snprintf(buf, sizeof buf, "%.3f", r.runtime_ms);
    os << buf << '\n';
  }
  return os.str();
}

}  // namespace gradelast
