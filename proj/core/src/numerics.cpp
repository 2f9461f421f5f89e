#include "lcgeom/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace lcg {

namespace {

// Gauss-Kronrod 7/15 abscissae and weights (QUADPACK qk15).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(ScalarFn f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double resk = fc * kWgk[7];
  double resg = fc * kWg[3];
  double resabs = std::abs(resk);
  double fv1[7], fv2[7];
  for (int j = 0; j < 3; ++j) {
    const int jj = 2 * j + 1;
    const double dx = half * kXgk[jj];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    fv1[jj] = f1;
    fv2[jj] = f2;
    resg += kWg[j] * (f1 + f2);
    resk += kWgk[jj] * (f1 + f2);
    resabs += kWgk[jj] * (std::abs(f1) + std::abs(f2));
  }
  for (int j = 0; j < 4; ++j) {
    const int jj = 2 * j;
    const double dx = half * kXgk[jj];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    fv1[jj] = f1;
    fv2[jj] = f2;
    resk += kWgk[jj] * (f1 + f2);
    resabs += kWgk[jj] * (std::abs(f1) + std::abs(f2));
  }
  const double mean = resk * 0.5;
  double resasc = kWgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j)
    resasc += kWgk[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));

  const double result = resk * half;
  resasc *= std::abs(half);
  resabs *= std::abs(half);
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps))
    err = std::max(err, 50.0 * kEps * resabs);
  return Panel{a, b, result, err};
}

bool finite(double x) { return std::isfinite(x); }

double tolerance_for(const QuadratureSpec& spec, double value) {
  return std::max(spec.abs_tol, spec.rel_tol * std::abs(value));
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
    throw std::invalid_argument("quadrature tolerances must be positive");
  if (max_subdivisions < 1)
    throw std::invalid_argument("max_subdivisions must be positive");
  if (!(exp_truncation >= 30.0))
    throw std::invalid_argument("exp_truncation must be at least 30");
}

QuadratureEstimate gauss_kronrod_adaptive(ScalarFn f, double a, double b,
                                          const QuadratureSpec& spec,
                                          std::span<const double> breaks) {
  QuadratureEstimate out;
  if (a == b) {
    out.converged = true;
    return out;
  }
  double sign = 1.0;
  if (b < a) {
    std::swap(a, b);
    sign = -1.0;
  }
  std::vector<double> cuts{a};
  for (double x : breaks)
    if (x > a && x < b) cuts.push_back(x);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<Panel> heap;
  heap.reserve(static_cast<std::size_t>(spec.max_subdivisions) + cuts.size());
  double total = 0.0, total_err = 0.0;
  // Panels too narrow to split further; their error can no longer shrink.
  double frozen_value = 0.0, frozen_err = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    Panel p = gk15(f, cuts[i], cuts[i + 1]);
    out.evaluations += 15;
    total += p.value;
    total_err += p.error;
    heap.push_back(p);
  }
  std::make_heap(heap.begin(), heap.end());

  const double min_width = 64.0 * std::numeric_limits<double>::epsilon() *
                           std::max({std::abs(a), std::abs(b), 1e-300});
  int subdivisions = 0;
  while (!heap.empty()) {
    const double current = total + frozen_value;
    if (total_err + frozen_err <= tolerance_for(spec, current)) break;
    if (subdivisions >= spec.max_subdivisions) break;
    if (!finite(current)) break;
    std::pop_heap(heap.begin(), heap.end());
    Panel worst = heap.back();
    heap.pop_back();
    total -= worst.value;
    total_err -= worst.error;
    const double mid = 0.5 * (worst.a + worst.b);
    if (worst.b - worst.a <= min_width || mid <= worst.a || mid >= worst.b) {
      frozen_value += worst.value;
      frozen_err += worst.error;
      continue;
    }
    Panel left = gk15(f, worst.a, mid);
    Panel right = gk15(f, mid, worst.b);
    out.evaluations += 30;
    ++subdivisions;
    for (const Panel& p : {left, right}) {
      total += p.value;
      total_err += p.error;
      heap.push_back(p);
      std::push_heap(heap.begin(), heap.end());
    }
  }
  // Re-sum to shed accumulated cancellation in the running totals.
  double value = frozen_value, err = frozen_err;
  for (const Panel& p : heap) {
    value += p.value;
    err += p.error;
  }
  out.value = sign * value;
  out.error = err;
  out.converged = finite(value) && err <= tolerance_for(spec, value);
  return out;
}

QuadratureEstimate tanh_sinh(ScalarFn f, double a, double b,
                             const QuadratureSpec& spec, int max_level) {
  QuadratureEstimate out;
  if (a == b) {
    out.converged = true;
    return out;
  }
  const double half = 0.5 * (b - a);
  constexpr double kTauMax = 3.5;
  constexpr double kHalfPi = 0.5 * kPi;

  // Contribution of the symmetric node pair at +-tau (tau > 0) or the
  // center (tau == 0), evaluated through the distance to each endpoint.
  auto pair_sum = [&](double tau) -> double {
    const double u = kHalfPi * std::sinh(tau);
    const double ch = std::cosh(u);
    const double w = kHalfPi * std::cosh(tau) / (ch * ch);
    if (tau == 0.0) {
      ++out.evaluations;
      return w * f(a + half);
    }
    // 1 - tanh(u) = 2 / (e^{2u} + 1)
    const double delta = 2.0 / (std::exp(2.0 * u) + 1.0);
    const double offset = half * delta;
    double s = 0.0;
    const double xl = a + offset;
    const double xr = b - offset;
    if (xl > a && xl < b) {
      s += f(xl);
      ++out.evaluations;
    }
    if (xr < b && xr > a) {
      s += f(xr);
      ++out.evaluations;
    }
    return w * s;
  };

  double h = 1.0;
  double sum = pair_sum(0.0);
  for (double tau = h; tau <= kTauMax; tau += h) sum += pair_sum(tau);
  double estimate = half * h * sum;
  double previous = estimate;
  for (int level = 1; level <= max_level; ++level) {
    h *= 0.5;
    double added = 0.0;
    for (double tau = h; tau <= kTauMax; tau += 2.0 * h) added += pair_sum(tau);
    sum += added;
    estimate = half * h * sum;
    if (!finite(estimate)) break;
    const double diff = std::abs(estimate - previous);
    previous = estimate;
    if (level >= 3 && diff <= tolerance_for(spec, estimate)) {
      out.value = estimate;
      out.error = diff;
      out.converged = true;
      return out;
    }
  }
  out.value = estimate;
  out.error = std::abs(estimate - previous);
  out.converged = false;
  return out;
}

double integrate_interval(ScalarFn f, double a, double b,
                          const QuadratureSpec& spec,
                          std::span<const double> breaks) {
  const QuadratureEstimate q = gauss_kronrod_adaptive(f, a, b, spec, breaks);
  if (!finite(q.value)) throw DivergenceError("integral is not finite");
  if (!q.converged) {
    std::ostringstream os;
    os << "adaptive quadrature did not converge on [" << a << ", " << b
       << "]: estimate " << q.value << ", error bound " << q.error;
    throw QuadratureError(os.str(), q.value, q.error);
  }
  return q.value;
}

namespace {

// Integral over [0, eps] of a power law through (eps, f1) and (2 eps, f2).
double power_cap(double f1, double f2, double eps) {
  if (!finite(f1) || !finite(f2))
    throw DivergenceError("non-finite integrand near an endpoint");
  if (f1 == 0.0) return 0.0;
  if ((f1 > 0.0) != (f2 > 0.0) || f2 == 0.0) return f1 * eps;
  const double beta = std::log(f2 / f1) / std::log(2.0);
  if (beta <= -1.0 + 1e-9)
    throw DivergenceError("integrand behaves like a non-integrable power near an endpoint");
  return f1 * eps / (beta + 1.0);
}

}  // namespace

double integrate_singular_ends(ScalarFn f, double a, double b,
                               const QuadratureSpec& spec, EndCaps caps,
                               double eps_rel) {
  if (a == b) return 0.0;
  if (b < a) return -integrate_singular_ends(f, b, a, spec, caps, eps_rel);
  const double eps = eps_rel * (b - a);
  double lo = a, hi = b, capped = 0.0;
  if (caps == EndCaps::left || caps == EndCaps::both) {
    capped += power_cap(f(a + eps), f(a + 2.0 * eps), eps);
    lo = a + eps;
  }
  if (caps == EndCaps::right || caps == EndCaps::both) {
    capped += power_cap(f(b - eps), f(b - 2.0 * eps), eps);
    hi = b - eps;
  }
  QuadratureEstimate q = tanh_sinh(f, lo, hi, spec);
  if (!q.converged) q = gauss_kronrod_adaptive(f, lo, hi, spec);
  const double total = q.value + capped;
  if (!finite(total)) throw DivergenceError("integral is not finite");
  if (!q.converged) {
    std::ostringstream os;
    os << "quadrature did not converge on [" << a << ", " << b << "]: estimate "
       << total << ", error bound " << q.error;
    throw QuadratureError(os.str(), total, q.error);
  }
  return total;
}

double integrate_exp_weighted(ScalarFn f, const QuadratureSpec& spec,
                              double lower, std::span<const double> breaks) {
  const double upper = spec.exp_truncation;
  if (!(lower >= 0.0)) throw std::invalid_argument("lower limit must be nonnegative");
  if (lower >= upper) return 0.0;
  auto weighted = [&](double t) { return f(t) * std::exp(-t); };

  // Head: panels bounded by user breakpoints up to lower + 1, each possibly
  // singular at its ends. Tail: adaptive Gauss-Kronrod.
  const double head_end = std::min(lower + 1.0, upper);
  std::vector<double> head{lower};
  std::vector<double> tail_breaks;
  for (double x : breaks) {
    if (x <= lower || x >= upper) continue;
    if (x < head_end) head.push_back(x);
    else tail_breaks.push_back(x);
  }
  head.push_back(head_end);
  std::sort(head.begin(), head.end());
  head.erase(std::unique(head.begin(), head.end()), head.end());

  double total = 0.0;
  for (std::size_t i = 0; i + 1 < head.size(); ++i)
    total += integrate_singular_ends(weighted, head[i], head[i + 1], spec,
                                     EndCaps::both, 1e-10);
  if (head_end < upper) {
    for (double x : {2.0, 5.0, 10.0, 20.0, 35.0})
      if (lower + x < upper) tail_breaks.push_back(lower + x);
    total += integrate_interval(weighted, head_end, upper, spec, tail_breaks);
  }
  if (!finite(total)) throw DivergenceError("weighted integral is not finite");
  return total;
}

double gamma_fn(double x) {
  if (!(x > 0.0)) throw std::domain_error("gamma_fn requires x > 0");
  return std::tgamma(x);
}

double unit_ball_volume(int n) {
  if (n < 0) throw std::domain_error("dimension must be nonnegative");
  return std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

int DirectionGrid::antipode(std::size_t i) const {
  const std::size_t n = directions.size();
  if (dim == 1) return static_cast<int>(1 - i);
  if (dim == 2 && n % 2 == 0) return static_cast<int>((i + n / 2) % n);
  return -1;
}

DirectionGrid direction_grid(int dim, int count) {
  DirectionGrid g;
  g.dim = dim;
  switch (dim) {
    case 1:
      g.directions = {Vec(1.0), Vec(-1.0)};
      g.weights = {1.0, 1.0};
      return g;
    case 2: {
      if (count < 2) throw std::invalid_argument("direction grid needs count >= 2");
      const double step = 2.0 * kPi / count;
      for (int k = 0; k < count; ++k) {
        const double theta = step * k;
        g.directions.emplace_back(std::cos(theta), std::sin(theta));
      }
      // Exact axis directions where the angle is a multiple of pi/2.
      if (count % 4 == 0) {
        const int q = count / 4;
        g.directions[0] = Vec(1, 0);
        g.directions[q] = Vec(0, 1);
        g.directions[2 * q] = Vec(-1, 0);
        g.directions[3 * q] = Vec(0, -1);
      }
      g.weights.assign(count, step);
      return g;
    }
    case 3: {
      if (count < 2) throw std::invalid_argument("direction grid needs count >= 2");
      const double golden = kPi * (3.0 - std::sqrt(5.0));
      for (int k = 0; k < count; ++k) {
        const double z = 1.0 - (2.0 * k + 1.0) / count;
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double phi = golden * k;
        g.directions.emplace_back(r * std::cos(phi), r * std::sin(phi), z);
      }
      g.weights.assign(count, 4.0 * kPi / count);
      return g;
    }
    default:
      throw std::invalid_argument("direction grids exist for dimensions 1-3 only");
  }
}

double Box::volume() const {
  double v = 1.0;
  for (std::size_t i = 0; i < lo.size(); ++i) v *= hi[i] - lo[i];
  return v;
}

McEstimate mc_volume(FunctionRef<bool(std::span<const double>)> member,
                     const Box& box, std::int64_t samples, RngSeed seed) {
  if (samples < 1000) throw std::invalid_argument("mc_volume needs at least 1000 samples");
  if (box.lo.size() != box.hi.size() || box.lo.empty())
    throw std::invalid_argument("malformed sampling box");
  for (std::size_t i = 0; i < box.dim(); ++i)
    if (!(box.hi[i] > box.lo[i])) throw std::invalid_argument("degenerate sampling box");

  std::mt19937_64 engine(seed.seed);
  std::vector<double> point(box.dim());
  std::int64_t hits = 0;
  for (std::int64_t s = 0; s < samples; ++s) {
    for (std::size_t i = 0; i < point.size(); ++i)
      point[i] = box.lo[i] + (box.hi[i] - box.lo[i]) * unit_uniform(engine());
    if (member(point)) ++hits;
  }
  const double n = static_cast<double>(samples);
  const double p = static_cast<double>(hits) / n;
  const double vol = box.volume();
  return McEstimate{vol * p, vol * std::sqrt(p * (1.0 - p) / n)};
}

}  // namespace lcg
