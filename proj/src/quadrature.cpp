#include "casimir/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace casimir {

void QuadratureConfig::validate() const {
  if (!(rel_tol > 0.0) || !std::isfinite(rel_tol))
    throw ConfigError("quadrature: rel_tol must be > 0");
  if (!(abs_tol >= 0.0) || !std::isfinite(abs_tol))
    throw ConfigError("quadrature: abs_tol must be >= 0");
  if (max_subdivisions < 1)
    throw ConfigError("quadrature: max_subdivisions must be >= 1");
  if (!(tail_cutoff_scale > 0.0) || !std::isfinite(tail_cutoff_scale))
    throw ConfigError("quadrature: tail_cutoff_scale must be > 0");
}

namespace {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1] (QUADPACK dqk15).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  double value;
  double error;
};

// One G7/K15 evaluation on [a, b].  Error estimate follows QUADPACK:
// the |K-G| difference sharpened by the scaled-difference heuristic,
// bounded by the rescaled integral of |f - mean|.
Panel evaluate_panel(const Integrand& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  double fv[15];
  const double fc = f(center);
  double result_gauss = kWg[3] * fc;
  double result_kronrod = kWgk[7] * fc;
  double resabs = kWgk[7] * std::fabs(fc);
  fv[14] = fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    fv[2 * j] = f1;
    fv[2 * j + 1] = f2;
    result_kronrod += kWgk[j] * (f1 + f2);
    resabs += kWgk[j] * (std::fabs(f1) + std::fabs(f2));
    if (j % 2 == 1) result_gauss += kWg[j / 2] * (f1 + f2);
  }

  const double mean = 0.5 * result_kronrod;
  double resasc = kWgk[7] * std::fabs(fc - mean);
  for (int j = 0; j < 7; ++j)
    resasc += kWgk[j] *
              (std::fabs(fv[2 * j] - mean) + std::fabs(fv[2 * j + 1] - mean));

  Panel p;
  p.a = a;
  p.b = b;
  p.value = result_kronrod * half;
  resabs *= std::fabs(half);
  resasc *= std::fabs(half);
  double err = std::fabs((result_kronrod - result_gauss) * half);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double eps50 = 50.0 * std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / eps50)
    err = std::max(err, eps50 * resabs);
  p.error = err;
  return p;
}

// Left-to-right sums over the final panel set; deterministic ordering.
QuadratureResult sum_panels(std::vector<Panel>& panels, long evaluations) {
  std::sort(panels.begin(), panels.end(),
            [](const Panel& x, const Panel& y) { return x.a < y.a; });
  QuadratureResult r;
  for (const Panel& p : panels) {
    r.value += p.value;
    r.error_estimate += p.error;
  }
  r.evaluations = evaluations;
  return r;
}

QuadratureResult integrate_panels(const Integrand& f,
                                  const std::vector<double>& edges,
                                  const QuadratureConfig& cfg) {
  std::vector<Panel> panels;
  panels.reserve(64);
  long evaluations = 0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    panels.push_back(evaluate_panel(f, edges[i], edges[i + 1]));
    evaluations += 15;
  }

  int splits = 0;
  for (;;) {
    double total = 0.0, total_err = 0.0;
    for (const Panel& p : panels) {
      total += p.value;
      total_err += p.error;
    }
    if (total_err <= std::max(cfg.rel_tol * std::fabs(total), cfg.abs_tol))
      break;
    if (splits >= cfg.max_subdivisions) {
      QuadratureResult best = sum_panels(panels, evaluations);
      throw ConvergenceError(
          "quadrature: subdivision budget exhausted (error estimate " +
              std::to_string(best.error_estimate) + ")",
          best);
    }
    // Worst panel first; ties resolve to the lowest index.
    std::size_t worst = 0;
    for (std::size_t i = 1; i < panels.size(); ++i)
      if (panels[i].error > panels[worst].error) worst = i;
    const Panel old = panels[worst];
    const double mid = 0.5 * (old.a + old.b);
    if (mid <= old.a || mid >= old.b) {
      QuadratureResult best = sum_panels(panels, evaluations);
      throw ConvergenceError("quadrature: interval too small to subdivide",
                             best);
    }
    panels[worst] = evaluate_panel(f, old.a, mid);
    panels.push_back(evaluate_panel(f, mid, old.b));
    evaluations += 30;
    ++splits;
  }
  return sum_panels(panels, evaluations);
}

}  // namespace

QuadratureResult integrate_finite(const Integrand& f, double a, double b,
                                  const QuadratureConfig& cfg) {
  cfg.validate();
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
    throw DomainError("integrate_finite: requires finite a < b");
  return integrate_panels(f, {a, b}, cfg);
}

QuadratureResult integrate_semi_infinite(const Integrand& f, double a,
                                         double scale,
                                         const QuadratureConfig& cfg,
                                         SemiInfiniteMap map) {
  cfg.validate();
  if (!std::isfinite(a))
    throw DomainError("integrate_semi_infinite: lower limit must be finite");
  if (!(scale > 0.0) || !std::isfinite(scale))
    throw DomainError("integrate_semi_infinite: scale must be > 0");

  if (map == SemiInfiniteMap::ExponentialTruncation) {
    const double b = a + cfg.tail_cutoff_scale * scale;
    // Seed panels geometrically so a narrow feature near the origin cannot
    // slip between the nodes of one wide panel.
    std::vector<double> edges{a};
    for (double step : {1.0, 4.0, 16.0}) {
      const double e = a + step * scale;
      if (e < b) edges.push_back(e);
    }
    edges.push_back(b);
    return integrate_panels(f, edges, cfg);
  }

  // x = a + scale*t/(1-t);  dx = scale/(1-t)^2 dt.  Nodes stay strictly
  // inside (0,1), so f is never called at x = a or at infinity.
  auto g = [&f, a, scale](double t) {
    const double om = 1.0 - t;
    const double x = a + scale * t / om;
    return f(x) * scale / (om * om);
  };
  return integrate_panels(g, {0.0, 0.5, 0.875, 1.0}, cfg);
}

}  // namespace casimir
