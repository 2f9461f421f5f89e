#include "lcgeom/berwald.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace lcg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDivergent = 1e12;

std::vector<double> split_numbers(const std::string& text, char sep) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string tok;
  while (std::getline(in, tok, sep)) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad number '" + tok + "'");
    }
    while (used < tok.size() && std::isspace(static_cast<unsigned char>(tok[used]))) ++used;
    if (used != tok.size()) throw std::invalid_argument("bad number '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

void check_table(const std::vector<double>& r, const std::vector<double>& v, const char* what) {
  if (r.size() != v.size() || r.size() < 2)
    throw std::invalid_argument(std::string(what) + " needs at least two (r, value) knots");
  if (r.front() != 0.0) throw std::invalid_argument(std::string(what) + " must start at r = 0");
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!std::isfinite(r[i]) || !std::isfinite(v[i]))
      throw std::invalid_argument(std::string(what) + " knots must be finite");
    if (v[i] < 0.0) throw std::invalid_argument(std::string(what) + " values must be nonnegative");
    if (i > 0 && !(r[i] > r[i - 1]))
      throw std::invalid_argument(std::string(what) + " knots must be increasing");
    if (i > 0 && v[i] < v[i - 1])
      throw std::invalid_argument(std::string(what) + " must be non-decreasing");
  }
}

// Fritsch-Carlson derivatives for a monotone table.
std::vector<double> pchip_slopes(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  std::vector<double> h(n - 1), delta(n - 1), d(n, 0.0);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    h[k] = x[k + 1] - x[k];
    delta[k] = (y[k + 1] - y[k]) / h[k];
  }
  if (n == 2) {
    d[0] = d[1] = delta[0];
    return d;
  }
  for (std::size_t k = 1; k + 1 < n; ++k) {
    if (delta[k - 1] * delta[k] <= 0.0) continue;
    const double w1 = 2.0 * h[k] + h[k - 1], w2 = h[k] + 2.0 * h[k - 1];
    d[k] = (w1 + w2) / (w1 / delta[k - 1] + w2 / delta[k]);
  }
  auto end_slope = [](double h0, double h1, double d0, double d1) {
    double s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if ((s > 0.0) != (d0 > 0.0) || d0 == 0.0) return 0.0;
    if ((d0 > 0.0) != (d1 > 0.0) && std::abs(s) > 3.0 * std::abs(d0)) s = 3.0 * d0;
    return s;
  };
  d[0] = end_slope(h[0], h[1], delta[0], delta[1]);
  d[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
  return d;
}

double pchip_eval(const std::vector<double>& x, const std::vector<double>& y,
                  const std::vector<double>& d, double r) {
  const std::size_t n = x.size();
  if (r <= x.front()) return y.front();
  if (r >= x.back()) return y.back() + (r - x.back()) * (y[n - 1] - y[n - 2]) / (x[n - 1] - x[n - 2]);
  const std::size_t k = static_cast<std::size_t>(std::upper_bound(x.begin(), x.end(), r) - x.begin()) - 1;
  const double h = x[k + 1] - x[k];
  const double s = (r - x[k]) / h;
  const double s2 = s * s, s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * y[k] + (s3 - 2 * s2 + s) * h * d[k] +
         (-2 * s3 + 3 * s2) * y[k + 1] + (s3 - s2) * h * d[k + 1];
}

double pwl_eval(const PiecewiseLinearProfile& p, double r) {
  const auto& x = p.r;
  const auto& y = p.values;
  const std::size_t n = x.size();
  if (r <= 0.0) return y.front();
  std::size_t k = static_cast<std::size_t>(std::upper_bound(x.begin(), x.end(), r) - x.begin());
  k = std::min(std::max<std::size_t>(k, 1), n - 1);
  return y[k - 1] + (r - x[k - 1]) * (y[k] - y[k - 1]) / (x[k] - x[k - 1]);
}

// Points of L drawn uniformly from level-set boxes with t uniform.
class EpigraphSampler {
 public:
  EpigraphSampler(const Epigraph& L, RngSeed seed, double t_max = 12.0)
      : L_(L), engine_(seed.seed), t_max_(t_max) {}

  std::pair<Vec, double> next() {
    const LogConcaveFunction& f = L_.function();
    const Body& B = f.base();
    const int n = f.dim();
    for (;;) {
      const double t = 1e-6 + (t_max_ - 1e-6) * unit_uniform(engine_());
      const double r = level_radius(f, t);
      Vec x;
      for (int k = 0; k < n; ++k) {
        const double lo = -r * support_value(B, -axis(k)), hi = r * support_value(B, axis(k));
        x[k] = lo + (hi - lo) * unit_uniform(engine_());
      }
      if (epigraph_contains(L_, x, t)) return {x, t};
    }
  }

 private:
  const Epigraph& L_;
  std::mt19937_64 engine_;
  double t_max_;
};

// I_h(s) with the slice volumes computed exactly from the level-set geometry.
class SuperlevelEvaluator {
 public:
  SuperlevelEvaluator(const Epigraph& L, const ConcaveWitness& h, const QuadratureSpec& spec)
      : L_(L), h_(h), spec_(spec.with_tolerance(spec.rel_tol, 1e-300)) {
    if (const auto* c = std::get_if<OneSidedChord>(&h_)) {
      u_ = normalized(c->u);
      const Body D = difference_body(L_.function().base());
      const auto iv = line_interval(D, Vec(), u_);
      width_ = iv ? iv->second : 0.0;
    }
    one_ = integrate_exp_weighted([](double) { return 1.0; }, spec_);
  }

  double operator()(double s) const {
    if (s <= 0.0) return 1.0;
    const LogConcaveFunction& f = L_.function();
    const Body& B = f.base();
    const int n = f.dim();
    double value = 0.0;
    if (std::holds_alternative<OneSidedChord>(h_)) {
      // {x in rB : x + s u in rB} has volume r^n g_B(s u / r).
      auto slice = [&](double t) {
        const double r = level_radius(f, t);
        if (r == 0.0) return 0.0;
        return std::pow(r, n) * covariogram_body(B, (s / r) * u_);
      };
      if (f.kind() == FunctionKind::indicator) {
        value = slice(1.0) * one_;
      } else {
        const double r0 = s / width_;
        const double t0 = f.kind() == FunctionKind::expnorm ? r0 : 0.5 * r0 * r0;
        value = integrate_exp_weighted(slice, spec_, t0);
      }
    } else {
      const auto& a = std::get<CoordinateAffine>(h_);
      auto slice = [&](double t) {
        const double r = level_radius(f, t);
        if (r == 0.0) return 0.0;
        const double m = s - a.b * t - a.c;
        return std::pow(r, n) * halfspace_slice_volume(B, a.a, m / r);
      };
      if (f.kind() == FunctionKind::indicator && a.b == 0.0) {
        value = slice(1.0) * one_;
      } else {
        std::vector<double> breaks;
        for (double k : {0.5, 1.0, 2.0, 4.0, 8.0}) breaks.push_back(k * std::max(1.0, s));
        value = integrate_exp_weighted(slice, spec_, 0.0, breaks);
      }
    }
    return std::clamp(value / L_.weight(), 0.0, 1.0);
  }

 private:
  const Epigraph& L_;
  const ConcaveWitness& h_;
  QuadratureSpec spec_;
  Vec u_;
  double width_ = 0.0;
  double one_ = 1.0;
};

double binomial_real(double p, int n) {
  return std::exp(std::lgamma(p + n + 1.0) - std::lgamma(p + 1.0) - std::lgamma(n + 1.0));
}

}  // namespace

MomentProfile::MomentProfile(Variant v) : v_(std::move(v)) {
  if (const auto* l = std::get_if<LinearProfile>(&v_)) {
    if (!(l->c > 0.0) || !std::isfinite(l->c)) throw std::invalid_argument("linear profile needs c > 0");
  } else if (const auto* p = std::get_if<PowerProfile>(&v_)) {
    if (!(p->alpha > 0.0 && p->alpha <= 1.0))
      throw std::invalid_argument("power profile needs alpha in (0, 1]");
  } else if (const auto* c = std::get_if<ConstantProfile>(&v_)) {
    if (!(c->c > 0.0) || !std::isfinite(c->c)) throw std::invalid_argument("constant profile needs c > 0");
  } else if (const auto* w = std::get_if<PiecewiseLinearProfile>(&v_)) {
    check_table(w->r, w->values, "piecewise-linear profile");
    double prev = kInf;
    for (std::size_t i = 0; i + 1 < w->r.size(); ++i) {
      const double slope = (w->values[i + 1] - w->values[i]) / (w->r[i + 1] - w->r[i]);
      if (slope > prev * (1.0 + 1e-12) + 1e-15)
        throw std::invalid_argument("piecewise-linear profile must be concave");
      prev = slope;
    }
  } else {
    const auto& s = std::get<SampledProfile>(v_);
    check_table(s.r, s.values, "sampled profile");
    slopes_ = pchip_slopes(s.r, s.values);
  }
}

MomentProfile MomentProfile::linear(double c) { return MomentProfile(LinearProfile{c}); }
MomentProfile MomentProfile::power(double alpha) { return MomentProfile(PowerProfile{alpha}); }
MomentProfile MomentProfile::constant(double c) { return MomentProfile(ConstantProfile{c}); }
MomentProfile MomentProfile::piecewise_linear(std::vector<double> r, std::vector<double> values) {
  return MomentProfile(PiecewiseLinearProfile{std::move(r), std::move(values)});
}
MomentProfile MomentProfile::sampled(std::vector<double> r, std::vector<double> values) {
  return MomentProfile(SampledProfile{std::move(r), std::move(values)});
}

double MomentProfile::operator()(double r) const {
  if (r < 0.0) r = 0.0;
  switch (v_.index()) {
    case 0: return std::get<LinearProfile>(v_).c * r;
    case 1: return std::pow(r, std::get<PowerProfile>(v_).alpha);
    case 2: return std::get<ConstantProfile>(v_).c;
    case 3: return pwl_eval(std::get<PiecewiseLinearProfile>(v_), r);
    default: {
      const auto& s = std::get<SampledProfile>(v_);
      return std::max(0.0, pchip_eval(s.r, s.values, slopes_, r));
    }
  }
}

std::vector<double> MomentProfile::knots() const {
  if (const auto* w = std::get_if<PiecewiseLinearProfile>(&v_)) return {w->r.begin() + 1, w->r.end()};
  if (const auto* s = std::get_if<SampledProfile>(&v_)) {
    std::vector<double> k;
    for (double x : {0.25, 1.0, 3.0, 8.0, 16.0, 30.0})
      if (x < s->r.back()) k.push_back(x);
    return k;
  }
  return {};
}

MomentProfile parse_profile(const std::string& descriptor) {
  const auto colon = descriptor.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("profile descriptor must look like kind:value");
  const std::string kind = descriptor.substr(0, colon);
  const std::string arg = descriptor.substr(colon + 1);
  if (kind == "pwl") {
    std::vector<double> r, v;
    std::stringstream in(arg);
    std::string pair;
    while (std::getline(in, pair, ';')) {
      const std::vector<double> xy = split_numbers(pair, ',');
      if (xy.size() != 2) throw std::invalid_argument("pwl knots are r,value pairs separated by ';'");
      r.push_back(xy[0]);
      v.push_back(xy[1]);
    }
    return MomentProfile::piecewise_linear(std::move(r), std::move(v));
  }
  const std::vector<double> xs = split_numbers(arg, ',');
  if (xs.size() != 1) throw std::invalid_argument("profile '" + kind + "' takes one number");
  if (kind == "linear") return MomentProfile::linear(xs[0]);
  if (kind == "power") return MomentProfile::power(xs[0]);
  if (kind == "constant") return MomentProfile::constant(xs[0]);
  throw std::invalid_argument("unknown profile kind '" + kind + "'");
}

double phi_gamma(const MomentProfile& gamma, double p, const QuadratureSpec& spec) {
  if (!(p > -1.0)) throw std::domain_error("moment functionals need p > -1");
  const std::vector<double> knots = gamma.knots();
  if (p == 0.0) {
    auto logg = [&](double r) {
      const double g = gamma(r);
      return g > 0.0 ? std::log(g) : -kInf;
    };
    return std::exp(kEulerMascheroni + integrate_exp_weighted(logg, spec, 0.0, knots));
  }
  auto powg = [&](double r) {
    const double g = gamma(r);
    if (g == 0.0) return p > 0.0 ? 0.0 : kInf;
    return std::pow(g, p);
  };
  const double I = integrate_exp_weighted(powg, spec, 0.0, knots);
  if (!(I > 0.0) || I > kDivergent) throw DivergenceError("moment integral diverges");
  return std::pow(I / gamma_fn(1.0 + p), 1.0 / p);
}

double eval_witness(const Epigraph& L, const ConcaveWitness& h, const Vec& x, double t) {
  if (const auto* a = std::get_if<CoordinateAffine>(&h)) return dot(a->a, x) + a->b * t + a->c;
  const LogConcaveFunction& f = L.function();
  const double r = level_radius(f, t);
  if (r == 0.0) return 0.0;
  const Body& B = f.base();
  // Chords scale with the level set: rB from x along u is r times B from x/r.
  return r * one_sided_chord(B, x / r, std::get<OneSidedChord>(h).u);
}

void validate_witness(const Epigraph& L, const ConcaveWitness& h, int samples, RngSeed seed) {
  const LogConcaveFunction& f = L.function();
  const int n = f.dim();
  if (const auto* c = std::get_if<OneSidedChord>(&h)) {
    if (norm(c->u) == 0.0) throw std::invalid_argument("chord witness needs a nonzero direction");
    for (int k = n; k < 3; ++k)
      if (c->u[k] != 0.0) throw std::invalid_argument("chord direction exceeds the dimension");
  } else {
    const auto& a = std::get<CoordinateAffine>(h);
    for (int k = n; k < 3; ++k)
      if (a.a[k] != 0.0) throw std::invalid_argument("affine witness exceeds the dimension");
    if (norm(a.a) == 0.0 && a.b == 0.0 && a.c == 0.0)
      throw std::invalid_argument("witness is identically zero");
    // min over K_t of h is b t + c - r(t) h_B(-a); check it on a wide t grid.
    const double hb = support_value(f.base(), -a.a);
    for (int i = 0; i <= 480; ++i) {
      const double t = i == 0 ? 0.0 : std::pow(10.0, -6.0 + 12.0 * (i - 1) / 479.0);
      const double m = a.b * t + a.c - level_radius(f, t) * hb;
      if (m < -1e-12 * std::max(1.0, std::abs(a.b * t) + std::abs(a.c)))
        throw std::invalid_argument("affine witness is negative on the epigraph");
    }
  }
  EpigraphSampler sampler(L, seed);
  bool nonzero = false;
  for (int i = 0; i < samples; ++i) {
    const auto [x, t] = sampler.next();
    const auto [y, s] = sampler.next();
    const double hx = eval_witness(L, h, x, t);
    const double hy = eval_witness(L, h, y, s);
    const double hm = eval_witness(L, h, 0.5 * (x + y), 0.5 * (t + s));
    const double tol = 1e-9 * std::max({1.0, std::abs(hx), std::abs(hy)});
    if (hx < -tol || hy < -tol) throw std::invalid_argument("witness is negative on the epigraph");
    if (hm < 0.5 * (hx + hy) - tol) throw std::invalid_argument("witness fails midpoint concavity");
    nonzero = nonzero || hx > 0.0 || hy > 0.0;
  }
  if (!nonzero) throw std::invalid_argument("witness vanishes on every sampled point");
}

ConcaveWitness parse_witness(const std::string& descriptor, int dim) {
  const auto colon = descriptor.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("witness descriptor must look like kind:value");
  const std::string kind = descriptor.substr(0, colon);
  const std::string arg = descriptor.substr(colon + 1);
  if (kind == "affine") {
    CoordinateAffine a;
    if (arg == "x" || arg == "y" || arg == "z") {
      const int k = arg == "x" ? 0 : arg == "y" ? 1 : 2;
      if (k >= dim) throw std::invalid_argument("affine coordinate exceeds the dimension");
      a.a = axis(k);
      return a;
    }
    if (arg == "t") {
      a.b = 1.0;
      return a;
    }
    const std::vector<double> xs = split_numbers(arg, ',');
    if (static_cast<int>(xs.size()) != dim + 2)
      throw std::invalid_argument("affine witness takes dim + 2 numbers a..., b, c");
    for (int k = 0; k < dim; ++k) a.a[k] = xs[k];
    a.b = xs[dim];
    a.c = xs[dim + 1];
    return a;
  }
  if (kind == "chord") {
    OneSidedChord c;
    if (arg.size() == 2 && arg[0] == 'e' && arg[1] >= '1' && arg[1] <= '3') {
      const int k = arg[1] - '1';
      if (k >= dim) throw std::invalid_argument("chord axis exceeds the dimension");
      c.u = axis(k);
      return c;
    }
    const std::vector<double> xs = split_numbers(arg, ',');
    if (static_cast<int>(xs.size()) != dim) throw std::invalid_argument("chord direction needs dim numbers");
    for (int k = 0; k < dim; ++k) c.u[k] = xs[k];
    if (norm(c.u) == 0.0) throw std::invalid_argument("chord direction is zero");
    c.u = normalized(c.u);
    return c;
  }
  throw std::invalid_argument("unknown witness kind '" + kind + "'");
}

double superlevel_measure(const Epigraph& L, const ConcaveWitness& h, double s,
                          const QuadratureSpec& spec) {
  return SuperlevelEvaluator(L, h, spec)(s);
}

Rearrangement rearranged_gamma(const Epigraph& L, const ConcaveWitness& h, std::vector<double> r_grid,
                               const QuadratureSpec& spec, int gamma1_nodes) {
  const int n = L.function().dim();
  if (gamma1_nodes < 4) throw std::invalid_argument("gamma_1 needs at least 4 nodes");
  if (r_grid.empty())
    for (int k = 1; k <= 24; ++k) r_grid.push_back(k / 24.0);
  for (double r : r_grid)
    if (!(r > 0.0 && r <= 1.0)) throw std::invalid_argument("rearrangement grid must lie in (0, 1]");

  const SuperlevelEvaluator I(L, h, spec);
  auto gamma_at = [&](double rho) {
    const double level = std::pow(rho, n);
    if (level >= 1.0) return 0.0;
    double lo = 0.0, hi = 1.0;
    int guard = 0;
    while (I(hi) > level) {
      lo = hi;
      hi *= 2.0;
      if (++guard > 200) throw QuadratureError("superlevel measure does not decay", hi, 0.0);
    }
    for (guard = 0; hi - lo > 1e-9 * std::max(1.0, hi); ++guard) {
      if (guard > 400) throw QuadratureError("bisection did not converge", 0.5 * (lo + hi), hi - lo);
      const double mid = 0.5 * (lo + hi);
      (I(mid) > level ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };

  Rearrangement out{r_grid, {}, MomentProfile::linear(1.0)};
  for (double r : r_grid) out.gamma.push_back(gamma_at(r));

  std::vector<double> rs, vs;
  const double span = 40.0;
  for (int j = 0; j < gamma1_nodes; ++j) {
    const double q = static_cast<double>(j) / (gamma1_nodes - 1);
    const double r = span * q * q;
    rs.push_back(r);
    const double v = gamma_at(std::exp(-r / n));
    vs.push_back(vs.empty() ? v : std::max(v, vs.back()));
  }
  out.gamma1 = MomentProfile::sampled(std::move(rs), std::move(vs));
  return out;
}

double epigraph_moment(const Epigraph& L, const ConcaveWitness& h, double p, const QuadratureSpec& spec) {
  if (!(p > -1.0)) throw std::domain_error("moment functionals need p > -1");
  const LogConcaveFunction& f = L.function();
  const int n = f.dim();
  const QuadratureSpec inner = spec.with_tolerance(spec.rel_tol * 0.1, spec.abs_tol * 0.1);
  auto power = [&](double v) {
    if (p == 0.0) return v > 0.0 ? std::log(v) : -kInf;
    if (v <= 0.0) return p > 0.0 ? 0.0 : kInf;
    return std::pow(v, p);
  };

  const Body& B = f.base();
  if (const auto* c = std::get_if<OneSidedChord>(&h)) {
    // Along each chord of length c, h runs linearly from c down to 0, and
    // K_t = r B turns the x-integral into r^{n+p} times the one on B.
    double base, base_volume = 0.0;
    if (p == 0.0) {
      base = shadow_integral(B, c->u, [](double len) { return len * (std::log(len) - 1.0); }, inner);
      base_volume = volume(B);
    } else {
      base = shadow_integral(B, c->u, [&](double len) { return std::pow(len, p + 1.0); }, inner) /
             (p + 1.0);
    }
    auto level = [&](double t) {
      const double r = level_radius(f, t);
      if (r == 0.0) return 0.0;
      if (p == 0.0) return std::pow(r, n) * (base + base_volume * std::log(r));
      return std::pow(r, n + p) * base;
    };
    const double total = integrate_exp_weighted(level, spec);
    if (!std::isfinite(total) || total > kDivergent * L.weight())
      throw DivergenceError("epigraph moment diverges");
    return total / L.weight();
  }

  const auto& aff = std::get<CoordinateAffine>(h);
  std::optional<Vec> chord_dir;
  if (n < 3 && norm(aff.a) > 0.0) chord_dir = normalized(aff.a);

  auto slice = [&](double t) {
    if (level_radius(f, t) == 0.0) return 0.0;
    const Body Kt = level_set(f, t);
    return integrate_over_body(Kt, [&](const Vec& x) { return power(eval_witness(L, h, x, t)); },
                               inner, chord_dir);
  };

  const bool t_free = f.kind() == FunctionKind::indicator && aff.b == 0.0;
  double total;
  if (t_free) {
    total = slice(1.0) * integrate_exp_weighted([](double) { return 1.0; }, spec);
  } else {
    total = integrate_exp_weighted(slice, spec);
  }
  if (!std::isfinite(total) || total > kDivergent * L.weight())
    throw DivergenceError("epigraph moment diverges");
  return total / L.weight();
}

double berwald_epigraph(const Epigraph& L, const ConcaveWitness& h, double p, const QuadratureSpec& spec) {
  const double m = epigraph_moment(L, h, p, spec);
  if (p == 0.0) return std::exp(kEulerMascheroni + m);
  if (!(m > 0.0)) throw DivergenceError("epigraph moment is not positive");
  return std::pow(m / gamma_fn(1.0 + p), 1.0 / p);
}

void validate_concave_on(const Body& K, BodyFunction phi, int samples, RngSeed seed) {
  std::mt19937_64 engine(seed.seed);
  const int n = K.dim();
  auto draw = [&]() {
    for (;;) {
      Vec x;
      for (int k = 0; k < n; ++k) {
        const double lo = -support_value(K, -axis(k)), hi = support_value(K, axis(k));
        x[k] = lo + (hi - lo) * unit_uniform(engine());
      }
      if (contains(K, x)) return x;
    }
  };
  for (int i = 0; i < samples; ++i) {
    const Vec x = draw(), y = draw();
    const double fx = phi(x), fy = phi(y), fm = phi(0.5 * (x + y));
    const double tol = 1e-10 * std::max({1.0, std::abs(fx), std::abs(fy)});
    if (fx < -tol || fy < -tol) throw std::invalid_argument("function is negative on the body");
    if (fm < 0.5 * (fx + fy) - tol) throw std::invalid_argument("function fails midpoint concavity");
  }
}

double holder_mean(const Body& K, BodyFunction phi, double p, const QuadratureSpec& spec) {
  if (!(p > 0.0)) throw std::domain_error("Hoelder means need p > 0");
  const double I = integrate_over_body(
      K, [&](const Vec& x) { return std::pow(std::max(0.0, phi(x)), p); }, spec);
  return std::pow(I / volume(K), 1.0 / p);
}

double berwald_classical(const Body& K, BodyFunction phi, double p, const QuadratureSpec& spec) {
  if (!(p > 0.0)) throw std::domain_error("the classical Berwald mean needs p > 0");
  validate_concave_on(K, phi);
  const double I = integrate_over_body(
      K, [&](const Vec& x) { return std::pow(std::max(0.0, phi(x)), p); }, spec);
  return std::pow(binomial_real(p, K.dim()) * I / volume(K), 1.0 / p);
}

std::string to_string(EvalStatus s) {
  switch (s) {
    case EvalStatus::ok: return "ok";
    case EvalStatus::diverged: return "diverged";
    case EvalStatus::quadrature_failed: return "quadrature_failed";
  }
  return "unknown";
}

Evaluation guarded(FunctionRef<double()> fn) {
  Evaluation e;
  try {
    e.value = fn();
    if (!std::isfinite(e.value) || std::abs(e.value) > kDivergent) {
      e.status = EvalStatus::diverged;
      e.detail = "estimate exceeds 1e12";
    }
  } catch (const DivergenceError& ex) {
    e.status = EvalStatus::diverged;
    e.detail = ex.what();
  } catch (const QuadratureError& ex) {
    e.value = ex.estimate();
    e.status = EvalStatus::quadrature_failed;
    e.detail = ex.what();
  }
  return e;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "p,value,status\n";
  char buf[64];
  for (const SweepRow& row : rows) {
    std::snprintf(buf, sizeof buf, "%.12g", row.p);
    out << buf << ',';
    if (row.result.status == EvalStatus::ok) {
      std::snprintf(buf, sizeof buf, "%.12g", row.result.value);
      out << buf;
    } else {
      out << "nan";
    }
    out << ',' << to_string(row.result.status) << '\n';
  }
}

std::vector<double> parse_p_grid(const std::string& text) {
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    const std::vector<double> xs = split_numbers(text, ':');
    if (xs.size() != 3) throw std::invalid_argument("p grid ranges look like min:max:steps");
    const double steps = xs[2];
    if (steps != std::floor(steps) || steps < 2) throw std::invalid_argument("p grid needs steps >= 2");
    if (!(xs[1] >= xs[0])) throw std::invalid_argument("p grid needs min <= max");
    const int m = static_cast<int>(steps);
    for (int i = 0; i < m; ++i) out.push_back(xs[0] + (xs[1] - xs[0]) * i / (m - 1));
  } else {
    out = split_numbers(text, ',');
  }
  if (out.empty()) throw std::invalid_argument("empty p grid");
  for (double p : out)
    if (!(p > -1.0) || !std::isfinite(p)) throw std::invalid_argument("p values must exceed -1");
  return out;
}

}  // namespace lcg
