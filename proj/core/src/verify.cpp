#include "lcgeom/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <stdexcept>

#include "lcgeom/presets.hpp"

namespace lcg {

namespace {

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string join_p(const std::vector<double>& ps) {
  std::string s;
  for (std::size_t i = 0; i < ps.size(); ++i) s += (i ? "," : "") + num(ps[i]);
  return s;
}

double factorial(int n) { return gamma_fn(n + 1.0); }

// Runs body(report) with timing and maps escaping exceptions to statuses.
template <class Fn>
CheckReport run_check(const std::string& name, double tolerance, const VerifyOptions& opts, Fn&& body) {
  CheckReport r;
  r.name = name;
  r.tolerance = tolerance;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const DivergenceError& e) {
    r.status = CheckStatus::skipped_diverged;
    r.details = std::string("diverged: ") + e.what();
  } catch (const QuadratureError& e) {
    r.status = CheckStatus::fail;
    r.details = std::string("quadrature failure: ") + e.what() + " (estimate " + num(e.estimate()) + ")";
  } catch (const std::exception& e) {
    r.status = CheckStatus::fail;
    r.details = std::string("error: ") + e.what();
  }
  if (opts.timing)
    r.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

void set_pass(CheckReport& r, bool ok) { r.status = ok ? CheckStatus::pass : CheckStatus::fail; }

// Minimum relative step min_i (v_i - v_{i+1}) / |v_i|; negative when rising.
double min_relative_drop(const std::vector<double>& v) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < v.size(); ++i)
    m = std::min(m, (v[i] - v[i + 1]) / std::max(std::abs(v[i]), 1e-300));
  return v.size() < 2 ? 0.0 : m;
}

// Integral of g_f by the layer-cake identity int e^{-t} |K_t|^2 dt.
double covariogram_mass(const LogConcaveFunction& f, const QuadratureSpec& spec) {
  const double vb = volume(f.base());
  const int n = f.dim();
  return integrate_exp_weighted(
      [&](double t) { return std::pow(level_radius(f, t), 2 * n) * vb * vb; }, spec);
}

double interval_integrand(const std::string& name, double x) {
  if (name == "x") return x;
  if (name == "1-x") return 1.0 - x;
  if (name == "sqrt") return std::sqrt(std::max(0.0, x));
  throw std::invalid_argument("unknown integrand '" + name + "'");
}

Body random_triangle(std::mt19937_64& engine) {
  for (;;) {
    std::vector<Vec> v;
    for (int i = 0; i < 3; ++i)
      v.emplace_back(-2.0 + 4.0 * unit_uniform(engine()), -2.0 + 4.0 * unit_uniform(engine()));
    const double area = 0.5 * std::abs(cross(v[1] - v[0], v[2] - v[0])[2]);
    if (area > 0.25) return Body::simplex(2, v);
  }
}

}  // namespace

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skipped_diverged: return "skipped-diverged";
  }
  return "unknown";
}

DirectionGrid VerifyOptions::volume_grid(int dim) const {
  if (dim == 1) return direction_grid(1, 2);
  return direction_grid(dim, dim == 2 ? grid_2d : grid_3d);
}

double projection_product(const Body& K, const VerifyOptions& opts) {
  const int n = K.dim();
  if (n < 2) throw std::invalid_argument("projection products need dimension 2 or 3");
  return std::pow(volume(K), n - 1) * star_volume(polar_projection_body(K, opts.volume_grid(n)));
}

std::pair<double, double> projection_product_bounds(int n) {
  if (n < 2 || n > 3) throw std::invalid_argument("projection product bounds need dimension 2 or 3");
  const double lower = factorial(2 * n) / (factorial(n) * factorial(n)) / std::pow(n, n);
  const double upper = std::pow(unit_ball_volume(n) / unit_ball_volume(n - 1), n);
  return {lower, upper};
}

CheckReport check_profile_monotone(const MomentProfile& gamma, const std::string& label,
                                   const std::vector<double>& p_grid, const VerifyOptions& opts) {
  const double tol = opts.slack(1e-6);
  return run_check("profile_monotone[" + label + "]", tol, opts, [&](CheckReport& r) {
    std::vector<double> ps, vals;
    std::string skipped;
    for (double p : p_grid) {
      const Evaluation e = guarded([&] { return phi_gamma(gamma, p, opts.spec); });
      if (e.status == EvalStatus::diverged) {
        skipped += (skipped.empty() ? "" : ",") + num(p);
        continue;
      }
      if (e.status == EvalStatus::quadrature_failed) throw QuadratureError(e.detail, e.value, 0.0);
      ps.push_back(p);
      vals.push_back(e.value);
    }
    if (vals.empty()) throw DivergenceError("every grid point diverged");
    r.lhs = vals.front();
    r.rhs = vals.back();
    r.margin = min_relative_drop(vals);
    bool ok = r.margin >= -tol;
    std::string extra;
    if (std::holds_alternative<LinearProfile>(gamma.variant())) {
      const double c = std::get<LinearProfile>(gamma.variant()).c;
      double dev = 0.0;
      for (double v : vals) dev = std::max(dev, std::abs(v - c) / c);
      ok = ok && dev <= tol;
      extra = dev <= tol ? "; numerically constant (max deviation " + num(dev) + ")"
                         : "; not constant (max deviation " + num(dev) + ")";
    }
    set_pass(r, ok);
    r.details = "margin = min relative drop over p = " + join_p(ps) + extra +
                (skipped.empty() ? "" : "; diverged at p = " + skipped);
  });
}

CheckReport check_profile_closed_form(const std::vector<double>& p_grid, const VerifyOptions& opts) {
  const double tol = opts.slack(1e-8);
  return run_check("profile_closed_form[power:0.5]", tol, opts, [&](CheckReport& r) {
    const MomentProfile gamma = MomentProfile::power(0.5);
    const QuadratureSpec spec = opts.spec.with_tolerance(std::min(opts.spec.rel_tol, 1e-11), 1e-14);
    double worst = -1.0;
    std::string values;
    for (double p : p_grid) {
      const double got = phi_gamma(gamma, p, spec);
      const double want = p == 0.0 ? std::exp(0.5 * kEulerMascheroni)
                                   : std::pow(gamma_fn(1.0 + 0.5 * p) / gamma_fn(1.0 + p), 1.0 / p);
      const double dev = std::abs(got - want) / want;
      values += (values.empty() ? "" : ", ") + num(p) + ": " + num(got);
      if (dev > worst) {
        worst = dev;
        r.lhs = got;
        r.rhs = want;
      }
    }
    r.margin = worst;
    set_pass(r, worst <= tol);
    r.details = "margin = max relative deviation from the Gamma closed form; values " + values;
  });
}

CheckReport check_epigraph_monotone(const LogConcaveFunction& f, const ConcaveWitness& h,
                                    const std::string& witness_label, const std::vector<double>& p_grid,
                                    const VerifyOptions& opts) {
  const double tol = opts.slack(1e-4);
  return run_check("epigraph_monotone[" + f.label() + "|" + witness_label + "]", tol, opts,
                   [&](CheckReport& r) {
                     const Epigraph L(f, opts.spec);
                     validate_witness(L, h);
                     std::vector<double> ps, vals;
                     std::string skipped;
                     for (double p : p_grid) {
                       const Evaluation e = guarded([&] { return berwald_epigraph(L, h, p, opts.spec); });
                       if (e.status == EvalStatus::diverged) {
                         skipped += (skipped.empty() ? "" : ",") + num(p);
                         continue;
                       }
                       if (e.status == EvalStatus::quadrature_failed)
                         throw QuadratureError(e.detail, e.value, 0.0);
                       ps.push_back(p);
                       vals.push_back(e.value);
                     }
                     if (vals.empty()) throw DivergenceError("every grid point diverged");
                     r.lhs = vals.front();
                     r.rhs = vals.back();
                     r.margin = min_relative_drop(vals);
                     set_pass(r, r.margin >= -tol);
                     r.details = "margin = min relative drop over p = " + join_p(ps) +
                                 (skipped.empty() ? "" : "; diverged at p = " + skipped);
                   });
}

CheckReport check_epigraph_closed_form(const std::vector<double>& p_grid, const VerifyOptions& opts) {
  const double tol = opts.slack(1e-6);
  return run_check("epigraph_closed_form[indicator:interval01|affine:x]", tol, opts, [&](CheckReport& r) {
    const Epigraph L(LogConcaveFunction::indicator(preset_body("interval01"), "indicator:interval01"),
                     opts.spec);
    const ConcaveWitness h = CoordinateAffine{axis(0), 0.0, 0.0};
    validate_witness(L, h);
    double worst = -1.0;
    std::string values;
    for (double p : p_grid) {
      const double got = berwald_epigraph(L, h, p, opts.spec);
      const double want = p == 0.0 ? std::exp(kEulerMascheroni - 1.0) : std::pow(1.0 / gamma_fn(2.0 + p), 1.0 / p);
      const double dev = std::abs(got - want) / want;
      values += (values.empty() ? "" : ", ") + num(p) + ": " + num(got);
      if (dev > worst) {
        worst = dev;
        r.lhs = got;
        r.rhs = want;
      }
    }
    r.margin = worst;
    set_pass(r, worst <= tol);
    r.details = "margin = max relative deviation from (1/Gamma(2+p))^(1/p); values " + values;
  });
}

CheckReport check_rearrangement(const LogConcaveFunction& f, const ConcaveWitness& h,
                                const std::string& witness_label, const std::vector<double>& p_grid,
                                const VerifyOptions& opts) {
  const double tol = opts.slack(1e-3);
  return run_check("rearrangement[" + f.label() + "|" + witness_label + "]", tol, opts, [&](CheckReport& r) {
    const Epigraph L(f, opts.spec);
    validate_witness(L, h);
    const Rearrangement R = rearranged_gamma(L, h, {}, opts.spec);
    double worst = -1.0;
    for (double p : p_grid) {
      const double via_profile = phi_gamma(R.gamma1, p, opts.spec);
      const double direct = berwald_epigraph(L, h, p, opts.spec);
      const double dev = std::abs(via_profile - direct) / std::abs(direct);
      if (dev > worst) {
        worst = dev;
        r.lhs = via_profile;
        r.rhs = direct;
      }
    }
    r.margin = worst;
    set_pass(r, worst <= tol);
    r.details = "lhs = Phi of the rearranged profile, rhs = epigraph functional; margin = max relative "
                "deviation over p = " + join_p(p_grid);
  });
}

CheckReport check_classical_berwald(const std::string& integrand, const std::vector<double>& p_grid,
                                    const VerifyOptions& opts) {
  const double tol = opts.slack(1e-6);
  return run_check("classical_berwald[interval01|" + integrand + "]", tol, opts, [&](CheckReport& r) {
    const Body K = preset_body("interval01");
    auto phi = [&](const Vec& x) { return interval_integrand(integrand, x[0]); };
    std::vector<double> vals;
    for (double p : p_grid) vals.push_back(berwald_classical(K, phi, p, opts.spec));
    r.lhs = vals.front();
    r.rhs = vals.back();
    r.margin = min_relative_drop(vals);
    set_pass(r, r.margin >= -tol);
    r.details = "margin = min relative drop over p = " + join_p(p_grid);
  });
}

CheckReport check_holder_mean(const std::string& integrand, const std::vector<double>& p_grid,
                              const VerifyOptions& opts) {
  const double tol = opts.slack(1e-6);
  return run_check("holder_mean[interval01|" + integrand + "]", tol, opts, [&](CheckReport& r) {
    const Body K = preset_body("interval01");
    auto phi = [&](const Vec& x) { return interval_integrand(integrand, x[0]); };
    std::vector<double> vals;
    for (double p : p_grid) vals.push_back(-holder_mean(K, phi, p, opts.spec));
    r.lhs = -vals.front();
    r.rhs = -vals.back();
    r.margin = min_relative_drop(vals);
    set_pass(r, r.margin >= -tol);
    r.details = "margin = min relative rise over p = " + join_p(p_grid);
  });
}

CheckReport check_body_projection_product(const Body& K, const std::string& label,
                                          std::optional<double> expected, bool strict,
                                          const VerifyOptions& opts) {
  const double tol = opts.slack(1e-3);
  return run_check("body_projection_product[" + label + "]", tol, opts, [&](CheckReport& r) {
    const auto [lower, upper] = projection_product_bounds(K.dim());
    const double P = projection_product(K, opts);
    r.lhs = P;
    bool ok = P >= lower - tol && P <= upper + tol;
    std::string d = "lhs = |K|^(n-1) |Pi* K|; bounds [" + num(lower) + ", " + num(upper) + "]";
    if (expected) {
      r.rhs = *expected;
      r.margin = std::abs(P - *expected);
      ok = ok && r.margin <= tol;
      d += "; margin = |lhs - rhs| against the expected value";
    } else {
      r.rhs = upper;
      r.margin = std::min(P - lower, upper - P);
      d += "; margin = distance to the nearer bound";
    }
    if (strict) {
      const bool inside = P - lower > tol && upper - P > tol;
      ok = ok && inside;
      d += inside ? "; strictly inside" : "; not strictly inside";
    }
    set_pass(r, ok);
    r.details = d;
  });
}

CheckReport check_functional_zhang(const LogConcaveFunction& f, std::optional<double> expected_ratio,
                                   double ratio_tolerance, std::optional<double> ratio_below,
                                   const VerifyOptions& opts) {
  const double tol = opts.slack(1e-3);
  const double eq_tol = opts.slack(ratio_tolerance);
  return run_check("functional_zhang[" + f.label() + "]", expected_ratio ? eq_tol : tol, opts,
                   [&](CheckReport& r) {
    const int n = f.dim();
    if (n < 2) throw std::invalid_argument("the functional inequality is checked in dimensions 2 and 3");
    std::string route;
    if (n == 2) {
      r.lhs = covariogram_integral(CovariogramFn(f, CovariogramMethod::level_set, opts.spec), opts.spec);
      route = "covariogram quadrature";
    } else {
      r.lhs = covariogram_mass(f, opts.spec);
      route = "layer-cake integral";
    }
    const double l1 = l1_norm(f, opts.spec);
    const double polar = star_volume(polar_projection_fn(f, opts.volume_grid(n), opts.spec));
    r.rhs = std::pow(2.0, n) * factorial(n) * std::pow(l1, n + 1) * polar;
    const double ratio = r.lhs / r.rhs;
    r.margin = 1.0 - ratio;
    bool ok = ratio <= 1.0 + tol;
    std::string d = "lhs = int int min{f(x), f(y)} by " + route + ", rhs = 2^n n! ||f||_1^(n+1) |Pi* f|; "
                    "margin = 1 - ratio; ratio " + num(ratio);
    if (expected_ratio) {
      const bool hit = std::abs(ratio - *expected_ratio) <= eq_tol;
      ok = ok && hit;
      d += "; expected ratio " + num(*expected_ratio) + (hit ? " matched" : " missed");
    }
    if (ratio_below) {
      const bool below = ratio < *ratio_below;
      ok = ok && below;
      d += std::string("; ratio ") + (below ? "below " : "not below ") + num(*ratio_below);
    }
    set_pass(r, ok);
    r.details = d;
  });
}

CheckReport check_zhang_consistency(const std::string& label, int dim, const CheckReport& functional,
                                    const CheckReport& body, const VerifyOptions& opts) {
  const double tol = opts.slack(2e-2);
  return run_check("zhang_consistency[" + label + "]", tol, opts, [&](CheckReport& r) {
    if (!(functional.lhs > 0.0) || !(functional.rhs > 0.0) || !(body.lhs > 0.0))
      throw std::runtime_error("missing input values");
    r.lhs = functional.lhs / functional.rhs;
    r.rhs = projection_product_bounds(dim).first / body.lhs;
    r.margin = std::abs(r.lhs - r.rhs);
    set_pass(r, r.margin <= tol);
    r.details = "lhs = functional ratio for exp(-||x||_K), rhs = lower bound / |K|^(n-1)|Pi* K|; "
                "margin = |lhs - rhs|";
  });
}

CheckReport check_covariogram_crosspath(const LogConcaveFunction& f, const VerifyOptions& opts) {
  return run_check("covariogram_crosspath[" + f.label() + "]", 3.0, opts, [&](CheckReport& r) {
    const int n = f.dim();
    if (n > 2) throw std::invalid_argument("the covariogram quadrature runs in dimensions 1 and 2");
    r.lhs = covariogram_integral(CovariogramFn(f, CovariogramMethod::level_set, opts.spec), opts.spec);

    // Mean-value Monte Carlo of min{f(x), f(y)} over a box around K_18 x K_18;
    // the mass outside is below 1e-5 relative for every preset function.
    const double R = level_radius(f, 18.0);
    const Body& B = f.base();
    double lo[3] = {0, 0, 0}, hi[3] = {0, 0, 0};
    double box = 1.0;
    for (int k = 0; k < n; ++k) {
      lo[k] = -R * support_value(B, -axis(k));
      hi[k] = R * support_value(B, axis(k));
      box *= (hi[k] - lo[k]) * (hi[k] - lo[k]);
    }
    std::mt19937_64 engine(opts.seed.seed);
    double sum = 0.0, sum2 = 0.0;
    for (std::int64_t i = 0; i < opts.mc_samples; ++i) {
      Vec x, y;
      for (int k = 0; k < n; ++k) x[k] = lo[k] + (hi[k] - lo[k]) * unit_uniform(engine());
      for (int k = 0; k < n; ++k) y[k] = lo[k] + (hi[k] - lo[k]) * unit_uniform(engine());
      const double m = std::min(eval(f, x), eval(f, y));
      sum += m;
      sum2 += m * m;
    }
    const double N = static_cast<double>(opts.mc_samples);
    const double mean = sum / N;
    const double var = std::max(0.0, sum2 / N - mean * mean);
    r.rhs = box * mean;
    const double se = box * std::sqrt(var / N);
    r.margin = se > 0.0 ? std::abs(r.lhs - r.rhs) / se : (std::abs(r.lhs - r.rhs) <= 1e-9 * r.lhs ? 0.0 : 1e300);
    set_pass(r, r.margin <= 3.0);
    r.details = "lhs = covariogram quadrature, rhs = " + std::to_string(opts.mc_samples) +
                "-sample Monte Carlo (standard error " + num(se) + "); margin = |lhs - rhs| in standard errors";
  });
}

CheckReport check_ball_body_volume(const LogConcaveFunction& g, const VerifyOptions& opts) {
  const double tol = opts.slack(1e-2);
  return run_check("ball_body_volume[" + g.label() + "]", tol, opts, [&](CheckReport& r) {
    const int n = g.dim();
    r.lhs = star_volume(ball_body(g, n, opts.volume_grid(n), opts.spec));
    r.rhs = l1_norm(g, opts.spec) / sup_norm(g);
    r.margin = std::abs(r.lhs - r.rhs) / r.rhs;
    set_pass(r, r.margin <= tol);
    r.details = "lhs = |K~_n(g)|, rhs = int g / g(0); margin = relative deviation";
  });
}

CheckReport check_ball_body_volume(const CovariogramFn& g, const VerifyOptions& opts) {
  const double tol = opts.slack(1e-2);
  return run_check("ball_body_volume[covariogram:" + g.function().label() + "]", tol, opts, [&](CheckReport& r) {
    const int n = g.function().dim();
    r.lhs = star_volume(ball_body(g, n, opts.volume_grid(n), opts.spec));
    r.rhs = covariogram_mass(g.function(), opts.spec) / g.at_zero();
    r.margin = std::abs(r.lhs - r.rhs) / r.rhs;
    set_pass(r, r.margin <= tol);
    r.details = "lhs = |K~_n(g_f)|, rhs = int g_f / g_f(0) with int g_f from level-set volumes; "
                "margin = relative deviation";
  });
}

CheckReport check_chord_power_identity(const LogConcaveFunction& f, const std::vector<Vec>& directions,
                                       double p, std::optional<double> expected, const VerifyOptions& opts) {
  const double tol = opts.slack(1e-3);
  return run_check("chord_power_identity[" + f.label() + "|p=" + num(p) + "]", tol, opts, [&](CheckReport& r) {
    const CovariogramFn g(f, CovariogramMethod::level_set, opts.spec);
    double worst = -1.0;
    for (const Vec& u : directions) {
      const double lhs = std::pow(ball_body_radial(g, p, u, opts.spec), p);
      const double rhs = chord_power_integral(f, u, p, opts.spec);
      double dev = std::abs(lhs - rhs) / std::abs(rhs);
      if (expected) dev = std::max({dev, std::abs(lhs - *expected) / *expected, std::abs(rhs - *expected) / *expected});
      if (dev > worst) {
        worst = dev;
        r.lhs = lhs;
        r.rhs = rhs;
      }
    }
    r.margin = worst;
    set_pass(r, worst <= tol);
    r.details = "lhs = rho^p of K~_p(g_f), rhs = chord-power integral; margin = max relative deviation over " +
                std::to_string(directions.size()) + " directions" +
                (expected ? "; expected value " + num(*expected) : "");
  });
}

CheckReport check_ball_body_sandwich(const RadialSource& g, const std::string& label, double p, double q,
                                     const VerifyOptions& opts) {
  const double tol = opts.slack(1e-6);
  return run_check("ball_body_sandwich[" + label + "|p=" + num(p) + ",q=" + num(q) + "]", tol, opts,
                   [&](CheckReport& r) {
    if (!(p > 0.0 && p <= q)) throw std::invalid_argument("the sandwich needs 0 < p <= q");
    const DirectionGrid grid = direction_grid(g.dim(), g.dim() == 1 ? 2 : opts.inclusion_grid);
    const StarBody Kp = ball_body(g, p, grid, opts.spec);
    const StarBody Kq = ball_body(g, q, grid, opts.spec);
    const double c = std::pow(gamma_fn(1.0 + p), 1.0 / p) / std::pow(gamma_fn(1.0 + q), 1.0 / q);
    double margin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double inner = c * Kq.radii[i] / Kp.radii[i];
      const double outer = Kp.radii[i] / Kq.radii[i];
      const double m = std::min(1.0 - inner, 1.0 - outer);
      if (m < margin) {
        margin = m;
        r.lhs = Kp.radii[i];
        r.rhs = Kq.radii[i];
      }
    }
    r.margin = margin;
    set_pass(r, margin >= -tol);
    r.details = "lhs = rho_p, rhs = rho_q at the tightest direction; margin = min over " +
                std::to_string(grid.size()) + " directions of 1 - (constant rho_q / rho_p) and 1 - rho_p / rho_q";
  });
}

CheckReport check_chord_power_limit(const LogConcaveFunction& f, const Vec& u,
                                    const std::vector<double>& p_sequence, double final_gap,
                                    const VerifyOptions& opts) {
  const double tol = opts.slack(final_gap);
  return run_check("chord_power_limit[" + f.label() + "]", tol, opts, [&](CheckReport& r) {
    const auto rows = chord_power_limit_rows(f, u, p_sequence, opts.spec);
    bool decreasing = true;
    std::string gaps;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      gaps += (i ? ", " : "") + num(rows[i].p) + ": " + num(rows[i].gap);
      if (i > 0 && !(rows[i].gap < rows[i - 1].gap)) decreasing = false;
    }
    r.lhs = rows.back().lhs;
    r.rhs = rows.back().target;
    r.margin = rows.back().gap;
    set_pass(r, decreasing && r.margin < tol);
    r.details = "lhs = chord-power integral / Gamma(1+p) at the last p, rhs = ||u||_{Pi* f} / (2 ||f||_1); "
                "margin = final gap; gaps " + gaps + (decreasing ? "" : "; not decreasing");
  });
}

CheckReport check_polar_inclusion(const LogConcaveFunction& f, std::optional<double> tight_within,
                                  const VerifyOptions& opts) {
  const double tol = opts.slack(1e-4);
  return run_check("polar_inclusion[" + f.label() + "]", tol, opts, [&](CheckReport& r) {
    const int n = f.dim();
    if (n < 2) throw std::invalid_argument("the inclusion is checked in dimensions 2 and 3");
    const DirectionGrid grid = direction_grid(n, opts.inclusion_grid);
    const CovariogramFn g(f, CovariogramMethod::level_set, opts.spec);
    const StarBody ball = ball_body(g, n, grid, opts.spec);
    const StarBody polar = polar_projection_fn(f, grid, opts.spec);
    const double scale = 2.0 * std::pow(factorial(n), 1.0 / n) * l1_norm(f, opts.spec);
    double worst = -1.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double ratio = ball.radii[i] / (scale * polar.radii[i]);
      if (ratio > worst) {
        worst = ratio;
        r.lhs = ball.radii[i];
        r.rhs = scale * polar.radii[i];
      }
    }
    r.margin = 1.0 - worst;
    bool ok = worst <= 1.0 + tol;
    std::string d = "lhs = rho of K~_n(g_f), rhs = 2 (n!)^(1/n) ||f||_1 rho_{Pi* f} at the tightest of " +
                    std::to_string(grid.size()) + " directions; margin = 1 - max ratio";
    if (tight_within) {
      const double t = opts.slack(*tight_within);
      const bool tight = r.margin <= t;
      ok = ok && tight;
      d += tight ? "; tight within " + num(t) : "; not tight within " + num(t);
    }
    set_pass(r, ok);
    r.details = d;
  });
}

CheckReport check_affine_invariance(const Body& K, const std::string& label, const Mat3& M, const Vec& v,
                                    const VerifyOptions& opts) {
  const double tol = opts.slack(1e-3);
  return run_check("affine_invariance[" + label + "]", tol, opts, [&](CheckReport& r) {
    r.lhs = projection_product(affine_map(K, M, v), opts);
    r.rhs = projection_product(K, opts);
    r.margin = std::abs(r.lhs - r.rhs) / r.rhs;
    set_pass(r, r.margin <= tol);
    r.details = "lhs = product for M K + v, rhs = product for K; margin = relative deviation";
  });
}

std::vector<std::string> suite_names() {
  return {"all", "zhang", "affine", "berwald", "ball", "inclusion"};
}

namespace {

const std::vector<double> kMonotoneGrid{-0.9, -0.5, -0.1, 0.0, 0.5, 1.0, 2.0, 4.0};
const std::vector<double> kProfileGrid{-0.9, -0.5, -0.1, 0.0, 0.5, 1.0, 2.0, 4.0, 8.0};
const std::vector<double> kPositiveGrid{0.5, 1.0, 2.0, 4.0};
const std::vector<double> kRearrangementGrid{0.5, 1.0, 2.0};

LogConcaveFunction fn(const char* descriptor) { return parse_function(descriptor); }

Mat3 shear2() {
  Mat3 m;
  m(0, 1) = 1.0;
  return m;
}

Mat3 shear3() {
  Mat3 m;
  m(0, 1) = 0.5;
  m(1, 2) = -1.0;
  m(2, 0) = 0.25;
  return m;
}

void zhang_group_2d(const SuiteConfig& c, std::vector<CheckReport>& out) {
  const VerifyOptions& o = c.options;
  std::mt19937_64 engine(o.seed.seed);
  out.push_back(check_body_projection_product(preset_body("triangle"), "triangle", 1.5, false, o));
  for (int i = 1; i <= 2; ++i)
    out.push_back(check_body_projection_product(random_triangle(engine), "random_triangle_" + std::to_string(i),
                                                1.5, false, o));
  const CheckReport simplex = check_body_projection_product(preset_body("simplex2"), "simplex2", 1.5, false, o);
  const CheckReport disk = check_body_projection_product(preset_body("disk"), "disk", kPi * kPi / 4.0, false, o);
  const CheckReport square = check_body_projection_product(preset_body("square"), "square", 2.0, true, o);
  out.push_back(simplex);
  out.push_back(disk);
  out.push_back(square);

  out.push_back(check_functional_zhang(fn("indicator:square"), 0.25, 1e-2, std::nullopt, o));
  const CheckReport f_square = check_functional_zhang(fn("expnorm:square"), std::nullopt, 1e-2, std::nullopt, o);
  const CheckReport f_disk = check_functional_zhang(fn("expnorm:disk"), std::nullopt, 1e-2, 0.97, o);
  const CheckReport f_simplex = check_functional_zhang(fn("expnorm:simplex2"), 1.0, 2e-2, std::nullopt, o);
  out.push_back(f_square);
  out.push_back(f_disk);
  out.push_back(check_functional_zhang(fn("gaussian:2"), std::nullopt, 1e-2, std::nullopt, o));
  out.push_back(f_simplex);

  out.push_back(check_zhang_consistency("square", 2, f_square, square, o));
  out.push_back(check_zhang_consistency("simplex2", 2, f_simplex, simplex, o));
  out.push_back(check_zhang_consistency("disk", 2, f_disk, disk, o));

  for (const char* d : {"indicator:square", "expnorm:square", "expnorm:simplex2", "gaussian:2"})
    out.push_back(check_covariogram_crosspath(fn(d), o));
}

void zhang_group_3d(const SuiteConfig& c, std::vector<CheckReport>& out) {
  const VerifyOptions& o = c.options;
  const auto [lower, upper] = projection_product_bounds(3);
  const CheckReport simplex = check_body_projection_product(preset_body("simplex3"), "simplex3", lower, false, o);
  const CheckReport cube = check_body_projection_product(preset_body("cube"), "cube", 4.0 / 3.0, true, o);
  out.push_back(simplex);
  out.push_back(check_body_projection_product(preset_body("ball3"), "ball3", upper, false, o));
  out.push_back(cube);
  const CheckReport f_cube = check_functional_zhang(fn("expnorm:cube"), std::nullopt, 1e-2, std::nullopt, o);
  const CheckReport f_simplex = check_functional_zhang(fn("expnorm:simplex3"), 1.0, 2e-2, std::nullopt, o);
  out.push_back(check_functional_zhang(fn("indicator:cube"), 0.125, 1e-2,
                                       std::nullopt, o));
  out.push_back(f_cube);
  out.push_back(check_functional_zhang(fn("gaussian:3"), std::nullopt, 1e-2, std::nullopt, o));
  out.push_back(f_simplex);
  out.push_back(check_zhang_consistency("cube", 3, f_cube, cube, o));
  out.push_back(check_zhang_consistency("simplex3", 3, f_simplex, simplex, o));
}

void affine_group(const SuiteConfig& c, std::vector<CheckReport>& out) {
  const VerifyOptions& o = c.options;
  if (c.dim == 2) {
    out.push_back(check_affine_invariance(preset_body("triangle"), "triangle", Mat3::scaling(2.0, 2), Vec(), o));
    out.push_back(check_affine_invariance(preset_body("square"), "square", shear2(), Vec(0.5, -0.25), o));
    out.push_back(check_affine_invariance(preset_body("disk"), "disk", Mat3::diagonal(1.0, 3.0), Vec(), o));
  } else {
    out.push_back(check_affine_invariance(preset_body("simplex3"), "simplex3", Mat3::scaling(2.0, 3), Vec(), o));
    out.push_back(check_affine_invariance(preset_body("cube"), "cube", shear3(), Vec(0.5, 0.0, -1.0), o));
    out.push_back(check_affine_invariance(preset_body("ball3"), "ball3", Mat3::diagonal(1.0, 2.0, 3.0), Vec(), o));
  }
}

void berwald_group(const SuiteConfig& c, std::vector<CheckReport>& out) {
  const VerifyOptions& o = c.options;
  out.push_back(check_profile_closed_form({-0.5, 0.0, 1.0, 2.0}, o));
  out.push_back(check_profile_monotone(MomentProfile::power(0.5), "power:0.5", kProfileGrid, o));
  out.push_back(check_profile_monotone(MomentProfile::linear(3.0), "linear:3", kProfileGrid, o));
  out.push_back(check_profile_monotone(MomentProfile::piecewise_linear({0, 1, 3}, {0, 1, 2}), "pwl:0,0;1,1;3,2",
                                       kProfileGrid, o));
  out.push_back(check_profile_monotone(MomentProfile::constant(2.0), "constant:2", kProfileGrid, o));
  out.push_back(check_epigraph_closed_form({-0.5, 1.0, 2.0}, o));
  if (c.dim == 2) {
    out.push_back(check_epigraph_monotone(fn("indicator:square"), CoordinateAffine{axis(0), 0.0, 1.0},
                                          "affine:1,0,0,1", kMonotoneGrid, o));
    for (const char* d : {"expnorm:square", "expnorm:simplex2", "gaussian:2"})
      out.push_back(check_epigraph_monotone(fn(d), OneSidedChord{axis(0)}, "chord:e1", kMonotoneGrid, o));
    out.push_back(check_rearrangement(fn("expnorm:square"), OneSidedChord{axis(0)}, "chord:e1",
                                      kRearrangementGrid, o));
    out.push_back(check_rearrangement(fn("gaussian:2"), OneSidedChord{axis(0)}, "chord:e1", kRearrangementGrid, o));
    out.push_back(check_rearrangement(fn("indicator:square"), CoordinateAffine{axis(0), 0.0, 1.0},
                                      "affine:1,0,0,1", kRearrangementGrid, o));
  } else {
    out.push_back(check_epigraph_monotone(fn("indicator:cube"), CoordinateAffine{axis(0), 0.0, 2.0},
                                          "affine:1,0,0,0,2", kMonotoneGrid, o));
    out.push_back(check_epigraph_monotone(fn("expnorm:cube"), OneSidedChord{axis(0)}, "chord:e1", kMonotoneGrid, o));
    out.push_back(check_epigraph_monotone(fn("gaussian:3"), OneSidedChord{axis(0)}, "chord:e1", kMonotoneGrid, o));
  }
  for (const char* integrand : {"x", "1-x", "sqrt"}) {
    out.push_back(check_classical_berwald(integrand, kPositiveGrid, o));
    out.push_back(check_holder_mean(integrand, kPositiveGrid, o));
  }
}

void ball_group(const SuiteConfig& c, std::vector<CheckReport>& out) {
  const VerifyOptions& o = c.options;
  if (c.dim == 2) {
    out.push_back(check_ball_body_volume(fn("expnorm:interval"), o));
    for (const char* d : {"expnorm:square", "expnorm:simplex2", "gaussian:2"})
      out.push_back(check_ball_body_volume(fn(d), o));
    out.push_back(check_ball_body_volume(CovariogramFn(fn("expnorm:square"), CovariogramMethod::level_set, o.spec), o));

    out.push_back(check_chord_power_identity(fn("expnorm:interval"), {Vec(1.0)}, 1.0, 2.0, o));
    const std::vector<Vec> dirs = direction_grid(2, 8).directions;
    for (const char* d : {"expnorm:square", "indicator:disk", "gaussian:2"})
      for (double p : {0.5, 1.0, 2.0}) out.push_back(check_chord_power_identity(fn(d), dirs, p, std::nullopt, o));

    const LogConcaveFunction es = fn("expnorm:square"), g2 = fn("gaussian:2");
    for (const auto& [p, q] : {std::pair{1.0, 2.0}, std::pair{0.5, 3.0}}) {
      out.push_back(check_ball_body_sandwich(es, es.label(), p, q, o));
      out.push_back(check_ball_body_sandwich(g2, g2.label(), p, q, o));
    }
    out.push_back(check_chord_power_limit(es, axis(0), {-0.5, -0.9, -0.99}, 1e-2, o));
  } else {
    for (const char* d : {"expnorm:cube", "gaussian:3"}) out.push_back(check_ball_body_volume(fn(d), o));
    const std::vector<Vec> dirs{normalized(Vec(1, 0, 0)), normalized(Vec(1, 2, 3))};
    for (const char* d : {"gaussian:3", "indicator:ball3"})
      out.push_back(check_chord_power_identity(fn(d), dirs, 1.0, std::nullopt, o));
    const LogConcaveFunction ec = fn("expnorm:cube"), g3 = fn("gaussian:3");
    for (const auto& [p, q] : {std::pair{1.0, 2.0}, std::pair{0.5, 3.0}}) {
      out.push_back(check_ball_body_sandwich(ec, ec.label(), p, q, o));
      out.push_back(check_ball_body_sandwich(g3, g3.label(), p, q, o));
    }
  }
}

void inclusion_group(const SuiteConfig& c, std::vector<CheckReport>& out) {
  const VerifyOptions& o = c.options;
  if (c.dim != 2) return;
  out.push_back(check_polar_inclusion(fn("expnorm:simplex2"), 2e-2, o));
  out.push_back(check_polar_inclusion(fn("indicator:square"), std::nullopt, o));
  out.push_back(check_polar_inclusion(fn("gaussian:2"), std::nullopt, o));
}

void listed_bodies(const SuiteConfig& c, bool affine, std::vector<CheckReport>& out) {
  for (const auto& [name, K] : c.bodies) {
    if (K.dim() != c.dim) continue;
    if (affine) {
      out.push_back(check_affine_invariance(K, name, c.dim == 2 ? shear2() : shear3(), Vec(), c.options));
    } else {
      out.push_back(check_body_projection_product(K, name, std::nullopt, false, c.options));
    }
  }
}

}  // namespace

std::vector<CheckReport> run_suite(const SuiteConfig& config) {
  const auto names = suite_names();
  if (std::find(names.begin(), names.end(), config.suite) == names.end())
    throw std::invalid_argument("unknown suite '" + config.suite + "'");
  if (config.dim != 2 && config.dim != 3) throw std::invalid_argument("the suite runs in dimension 2 or 3");
  config.options.spec.validate();

  std::vector<CheckReport> out;
  const bool all = config.suite == "all";
  if (all || config.suite == "zhang") {
    if (!config.only_listed) (config.dim == 2 ? zhang_group_2d : zhang_group_3d)(config, out);
    listed_bodies(config, false, out);
  }
  if (all || config.suite == "affine") {
    if (!config.only_listed) affine_group(config, out);
    listed_bodies(config, true, out);
  }
  if (config.only_listed) return out;
  if (all || config.suite == "berwald") berwald_group(config, out);
  if (all || config.suite == "ball") ball_group(config, out);
  if (all || config.suite == "inclusion") inclusion_group(config, out);
  return out;
}

bool aggregate_pass(const std::vector<CheckReport>& reports) {
  return std::none_of(reports.begin(), reports.end(),
                      [](const CheckReport& r) { return r.status == CheckStatus::fail; });
}

}  // namespace lcg
