#include "lcgeom/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace lcg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Level at which every preset function has dropped below 1e-18.
constexpr double kNegligibleLevel = 42.0;

double weight_of_one(const QuadratureSpec& spec) {
  return integrate_exp_weighted([](double) { return 1.0; }, spec);
}

QuadratureSpec tighter(const QuadratureSpec& spec, double factor) {
  return spec.with_tolerance(spec.rel_tol * factor, spec.abs_tol * factor);
}

double min_integral_1d(const LogConcaveFunction& f, double x, const QuadratureSpec& spec) {
  const double r = level_radius(f, std::min(spec.exp_truncation, kNegligibleLevel));
  const Body& B = f.base();
  const double lo = std::min(0.0, x) - r * support_value(B, Vec(-1.0));
  const double hi = std::max(0.0, x) + r * support_value(B, Vec(1.0));
  std::vector<double> breaks{0.0, x, 0.5 * x};
  if (f.kind() == FunctionKind::indicator)
    for (double s : {-support_value(B, Vec(-1.0)), support_value(B, Vec(1.0))}) {
      breaks.push_back(s);
      breaks.push_back(s + x);
    }
  auto h = [&](double y) { return std::min(eval(f, Vec(y)), eval(f, Vec(y - x))); };
  return integrate_interval(h, lo, hi, spec, breaks);
}

double min_integral_2d(const LogConcaveFunction& f, const Vec& x, const QuadratureSpec& spec) {
  const double r = level_radius(f, std::min(spec.exp_truncation, kNegligibleLevel));
  const Body& B = f.base();
  double lo[2], hi[2];
  for (int k = 0; k < 2; ++k) {
    lo[k] = std::min(0.0, x[k]) - r * support_value(B, -axis(k));
    hi[k] = std::max(0.0, x[k]) + r * support_value(B, axis(k));
  }
  std::vector<Vec> rays;
  if (B.is_polytope()) rays.assign(B.vertices().begin(), B.vertices().end());

  std::vector<double> outer{0.0, x[0], 0.5 * x[0]};
  if (f.kind() == FunctionKind::indicator)
    for (const Vec& v : B.vertices()) {
      outer.push_back(v[0]);
      outer.push_back(v[0] + x[0]);
    }
  const QuadratureSpec inner_spec = tighter(spec, 0.1);
  auto slice = [&](double y1) {
    std::vector<double> br{0.0, x[1]};
    if (f.kind() == FunctionKind::indicator) {
      for (const Vec& shift : {Vec(), x})
        if (auto iv = line_interval(B, Vec(y1 - shift[0], -shift[1]), axis(1))) {
          br.push_back(iv->first);
          br.push_back(iv->second);
        }
    } else if (f.kind() == FunctionKind::expnorm) {
      for (const Vec& shift : {Vec(), x})
        for (const Vec& v : rays) {
          if (v[0] == 0.0) continue;
          const double s = (y1 - shift[0]) / v[0];
          if (s > 0.0) br.push_back(shift[1] + s * v[1]);
        }
    } else if (x[1] != 0.0) {
      br.push_back((0.5 * dot(x, x) - y1 * x[0]) / x[1]);
    }
    auto h = [&](double y2) {
      const Vec y(y1, y2);
      return std::min(eval(f, y), eval(f, y - x));
    };
    return integrate_interval(h, lo[1], hi[1], inner_spec, br);
  };
  return integrate_interval(slice, lo[0], hi[0], spec, outer);
}

}  // namespace

double star_volume(const StarBody& S) {
  const int n = S.dim();
  double v = 0.0;
  for (std::size_t i = 0; i < S.radii.size(); ++i) v += S.grid.weights[i] * std::pow(S.radii[i], n);
  return v / n;
}

CovariogramFn::CovariogramFn(LogConcaveFunction f, CovariogramMethod method,
                             const QuadratureSpec& spec)
    : f_(std::move(f)), method_(method), spec_(spec), diff_(difference_body(f_.base())) {
  if (method_ == CovariogramMethod::min_integral && f_.dim() == 3)
    throw std::invalid_argument("the min-integral covariogram supports dimensions 1 and 2");
  g0_ = (*this)(Vec());
}

double CovariogramFn::onset(const Vec& x) const {
  if (dot(x, x) == 0.0) return 0.0;
  const double gauge = minkowski_functional(diff_, x);
  switch (f_.kind()) {
    case FunctionKind::indicator: return gauge < 1.0 ? 0.0 : kInf;
    case FunctionKind::expnorm: return gauge;
    case FunctionKind::gaussian: return 0.5 * gauge * gauge;  // 2 sqrt(2t) > |x|
  }
  return 0.0;
}

double CovariogramFn::operator()(const Vec& x) const {
  if (method_ == CovariogramMethod::min_integral)
    return f_.dim() == 1 ? min_integral_1d(f_, x[0], spec_) : min_integral_2d(f_, x, spec_);

  const double t0 = onset(x);
  if (!std::isfinite(t0) || t0 >= spec_.exp_truncation) return 0.0;
  const Body& B = f_.base();
  const int n = f_.dim();
  if (f_.kind() == FunctionKind::indicator) return covariogram_body(B, x) * weight_of_one(spec_);
  // |rB cap (x + rB)| = r^n g_B(x / r).
  auto level = [&](double t) {
    const double r = level_radius(f_, t);
    if (r == 0.0) return 0.0;
    return std::pow(r, n) * covariogram_body(B, x / r);
  };
  return integrate_exp_weighted(level, spec_, t0);
}

double covariogram_fn(const LogConcaveFunction& f, const Vec& x, CovariogramMethod method,
                      const QuadratureSpec& spec) {
  return CovariogramFn(f, method, spec)(x);
}

double RadialSource::operator()(const Vec& x) const {
  if (const auto* f = std::get_if<const LogConcaveFunction*>(&ref_)) return eval(**f, x);
  return (*std::get<const CovariogramFn*>(ref_))(x);
}

double RadialSource::at_zero(const QuadratureSpec&) const {
  if (const auto* f = std::get_if<const LogConcaveFunction*>(&ref_)) return eval(**f, Vec());
  return std::get<const CovariogramFn*>(ref_)->at_zero();
}

double RadialSource::support_radius(const Vec& u) const {
  if (const auto* fp = std::get_if<const LogConcaveFunction*>(&ref_)) {
    const LogConcaveFunction& f = **fp;
    if (f.kind() != FunctionKind::indicator) return kInf;
    const auto iv = line_interval(f.base(), Vec(), u);
    return iv ? std::max(0.0, iv->second) : 0.0;
  }
  const CovariogramFn& g = *std::get<const CovariogramFn*>(ref_);
  if (g.function().kind() != FunctionKind::indicator) return kInf;
  const auto iv = line_interval(g.difference(), Vec(), u);
  return iv ? std::max(0.0, iv->second) : 0.0;
}

bool RadialSource::even() const {
  if (std::holds_alternative<const CovariogramFn*>(ref_)) return true;
  const LogConcaveFunction& f = *std::get<const LogConcaveFunction*>(ref_);
  return f.kind() == FunctionKind::gaussian || centrally_symmetric(f.base());
}

int RadialSource::dim() const {
  if (const auto* f = std::get_if<const LogConcaveFunction*>(&ref_)) return (*f)->dim();
  return std::get<const CovariogramFn*>(ref_)->function().dim();
}

double ball_body_radial(const RadialSource& g, double p, const Vec& u, const QuadratureSpec& spec) {
  if (!(p > 0.0)) throw std::domain_error("Ball bodies need p > 0");
  const double g0 = g.at_zero(spec);
  if (!(g0 > 0.0)) throw std::invalid_argument("Ball bodies need g(0) > 0");
  const Vec w = normalized(u);
  auto along = [&](double r) { return g(r * w); };
  auto integrand = [&](double r) { return std::pow(r, p - 1.0) * along(r); };

  double R = g.support_radius(w);
  double scale;
  if (std::isfinite(R)) {
    if (!(R > 0.0)) throw std::invalid_argument("g vanishes along the direction");
    scale = R;
  } else {
    // e-folding length, then the radius beyond which the p-moment is negligible.
    scale = 1.0 / 1024.0;
    int guard = 0;
    while (along(scale) > g0 / std::exp(1.0)) {
      scale *= 2.0;
      if (++guard > 80) throw DivergenceError("g does not decay along the direction");
    }
    R = scale;
    guard = 0;
    while (along(R) * std::max(1.0, std::pow(R / scale, p)) > 1e-17 * g0) {
      R *= 1.5;
      if (++guard > 200) throw DivergenceError("g does not decay along the direction");
    }
  }
  const double head = scale / 16.0;
  double total = integrate_singular_ends(integrand, 0.0, head, spec, EndCaps::left, 1e-6);
  std::vector<double> breaks;
  for (double k = 0.125; k * scale < R; k *= 2.0) breaks.push_back(k * scale);
  total += integrate_interval(integrand, head, R, spec, breaks);
  const double rho_p = p * total / g0;
  if (!std::isfinite(rho_p) || rho_p > 1e300) throw DivergenceError("radial integral diverges");
  return std::pow(rho_p, 1.0 / p);
}

StarBody ball_body(const RadialSource& g, double p, const DirectionGrid& grid,
                   const QuadratureSpec& spec) {
  StarBody S{grid, std::vector<double>(grid.size(), 0.0)};
  const bool even = g.even();
  std::vector<bool> done(grid.size(), false);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (done[i]) continue;
    S.radii[i] = ball_body_radial(g, p, grid.directions[i], spec);
    done[i] = true;
    if (even) {
      const int j = grid.antipode(i);
      if (j >= 0 && !done[j]) {
        S.radii[j] = S.radii[i];
        done[j] = true;
      }
    }
  }
  return S;
}

StarBody polar_projection_body(const Body& K, const DirectionGrid& grid) {
  if (K.dim() < 2) throw std::invalid_argument("polar projection bodies need dim >= 2");
  if (grid.dim != K.dim()) throw std::invalid_argument("grid and body dimensions differ");
  StarBody S{grid, {}};
  for (const Vec& u : grid.directions) {
    const double shadow = project_volume(K, u);
    if (!(shadow > 0.0)) throw std::invalid_argument("degenerate projection");
    S.radii.push_back(1.0 / shadow);
  }
  return S;
}

double polar_projection_fn_norm(const LogConcaveFunction& f, const Vec& u,
                                const QuadratureSpec& spec) {
  const int n = f.dim();
  if (n < 2) throw std::invalid_argument("polar projection bodies need dim >= 2");
  const double base = project_volume(f.base(), u);
  // |P(rB)| = r^{n-1} |P B|.
  auto shadow = [&](double t) { return base * std::pow(level_radius(f, t), n - 1); };
  return 2.0 * integrate_exp_weighted(shadow, spec);
}

StarBody polar_projection_fn(const LogConcaveFunction& f, const DirectionGrid& grid,
                             const QuadratureSpec& spec) {
  if (grid.dim != f.dim()) throw std::invalid_argument("grid and function dimensions differ");
  StarBody S{grid, {}};
  for (const Vec& u : grid.directions) {
    const double nrm = polar_projection_fn_norm(f, u, spec);
    if (!(nrm > 0.0)) throw std::invalid_argument("degenerate projection");
    S.radii.push_back(1.0 / nrm);
  }
  return S;
}

namespace {

// int over P_{u-perp} K of chord(K, y, u)^q dy.
double shadow_chord_moment(const Body& K, const Vec& u, double q, const QuadratureSpec& spec) {
  return shadow_integral(K, u, [&](double c) { return std::pow(c, q); }, spec);
}

}  // namespace

double chord_power_integral(const LogConcaveFunction& f, const Vec& u, double p,
                            const QuadratureSpec& spec) {
  if (!(p > -1.0)) throw std::domain_error("chord powers need p > -1");
  const double l1 = l1_norm(f, spec);
  const QuadratureSpec inner = tighter(spec, 0.1);
  double outer;
  if (f.kind() == FunctionKind::indicator) {
    outer = shadow_chord_moment(f.base(), u, p + 1.0, inner) * weight_of_one(spec);
  } else {
    auto level = [&](double t) {
      if (level_radius(f, t) == 0.0) return 0.0;
      return shadow_chord_moment(level_set(f, t), u, p + 1.0, inner);
    };
    outer = integrate_exp_weighted(level, spec);
  }
  return outer / ((p + 1.0) * l1);
}

std::vector<ChordLimitRow> chord_power_limit_rows(const LogConcaveFunction& f, const Vec& u,
                                            const std::vector<double>& p_sequence,
                                            const QuadratureSpec& spec) {
  const double target = polar_projection_fn_norm(f, u, spec) / (2.0 * l1_norm(f, spec));
  std::vector<ChordLimitRow> rows;
  for (double p : p_sequence) {
    if (!(p > -1.0 && p < 0.0)) throw std::domain_error("the p -> -1 check needs p in (-1, 0)");
    const double lhs = chord_power_integral(f, u, p, spec) / gamma_fn(1.0 + p);
    rows.push_back(ChordLimitRow{p, lhs, target, std::abs(lhs - target)});
  }
  return rows;
}

double covariogram_integral(const CovariogramFn& g, const QuadratureSpec& spec) {
  const LogConcaveFunction& f = g.function();
  const int n = f.dim();
  if (n == 3) throw std::invalid_argument("covariogram integrals support dimensions 1 and 2");
  // The support of g at level T is r(T) (K - K).
  const double r = level_radius(f, std::min(spec.exp_truncation, kNegligibleLevel));
  const Body& D = g.difference();
  const QuadratureSpec inner = tighter(spec, 0.1);
  auto geometric = [](double a, double lo, double hi) {
    std::vector<double> b{0.0};
    for (double k = 1.0 / 8.0; k <= 64.0; k *= 2.0) {
      if (k * a > lo && k * a < hi) b.push_back(k * a);
      if (-k * a > lo && -k * a < hi) b.push_back(-k * a);
    }
    return b;
  };
  // g is even: integrate x1 >= 0 and double.
  const double hi1 = r * support_value(D, axis(0));
  std::vector<double> outer = geometric(support_value(D, axis(0)), 0.0, hi1);
  for (const Vec& v : D.vertices())
    if (v[0] > 0.0) outer.push_back(v[0]);
  if (n == 1) return 2.0 * integrate_interval([&](double s) { return g(Vec(s)); }, 0.0, hi1, spec, outer);
  const double lo2 = -r * support_value(D, -axis(1)), hi2 = r * support_value(D, axis(1));
  const std::vector<double> inner_breaks = geometric(support_value(D, axis(1)), lo2, hi2);
  auto slice = [&](double x1) {
    std::vector<double> br = inner_breaks;
    if (const auto iv = line_interval(D, Vec(x1, 0.0), axis(1))) {
      br.push_back(iv->first);
      br.push_back(iv->second);
    }
    for (const Vec& v : D.vertices()) br.push_back(v[1]);
    return integrate_interval([&](double x2) { return g(Vec(x1, x2)); }, lo2, hi2, inner, br);
  };
  return 2.0 * integrate_interval(slice, 0.0, hi1, spec, outer);
}

void write_star_csv(std::ostream& out, const StarBody& S) {
  const int n = S.dim();
  out << "theta_or_index,u1";
  if (n >= 2) out << ",u2";
  if (n >= 3) out << ",u3";
  out << ",rho\n";
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::string(buf);
  };
  for (std::size_t i = 0; i < S.radii.size(); ++i) {
    const Vec& u = S.grid.directions[i];
    if (n == 2) {
      double theta = std::atan2(u[1], u[0]);
      if (theta < 0.0) theta += 2.0 * kPi;
      out << num(theta);
    } else {
      out << i;
    }
    for (int k = 0; k < n; ++k) out << ',' << num(u[k]);
    out << ',' << num(S.radii[i]) << '\n';
  }
}

}  // namespace lcg
