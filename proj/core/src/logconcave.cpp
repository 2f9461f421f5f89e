#include "lcgeom/logconcave.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "lcgeom/presets.hpp"

namespace lcg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Body base_of(const LogConcaveFunction::Variant& v) {
  if (const auto* i = std::get_if<Indicator>(&v)) return i->body;
  if (const auto* e = std::get_if<ExpNorm>(&v)) {
    if (!origin_interior(e->body))
      throw std::invalid_argument("expnorm needs the origin in the interior of its body");
    return e->body;
  }
  const int dim = std::get<Gaussian>(v).dim;
  if (dim < 1 || dim > 3) throw std::invalid_argument("gaussian dimension must be 1, 2 or 3");
  return Body::ball(dim, Vec(), 1.0);
}

std::string default_label(const LogConcaveFunction::Variant& v) {
  if (std::holds_alternative<Indicator>(v)) return "indicator";
  if (std::holds_alternative<ExpNorm>(v)) return "expnorm";
  return "gaussian:" + std::to_string(std::get<Gaussian>(v).dim);
}

}  // namespace

LogConcaveFunction::LogConcaveFunction(Variant v, std::string label)
    : variant_(std::move(v)), base_(base_of(variant_)), label_(std::move(label)) {
  if (label_.empty()) label_ = default_label(variant_);
}

LogConcaveFunction LogConcaveFunction::indicator(Body K, std::string label) {
  return LogConcaveFunction(Indicator{std::move(K)}, std::move(label));
}
LogConcaveFunction LogConcaveFunction::expnorm(Body K, std::string label) {
  return LogConcaveFunction(ExpNorm{std::move(K)}, std::move(label));
}
LogConcaveFunction LogConcaveFunction::gaussian(int dim) {
  return LogConcaveFunction(Gaussian{dim});
}

double eval(const LogConcaveFunction& f, const Vec& x) {
  switch (f.kind()) {
    case FunctionKind::indicator: return contains(f.base(), x) ? 1.0 : 0.0;
    case FunctionKind::expnorm: return std::exp(-minkowski_functional(f.base(), x));
    case FunctionKind::gaussian: return std::exp(-0.5 * dot(x, x));
  }
  return 0.0;
}

double sup_norm(const LogConcaveFunction&) { return 1.0; }

double level_radius(const LogConcaveFunction& f, double t) {
  if (!(t >= 0.0)) throw std::domain_error("level sets need t >= 0");
  switch (f.kind()) {
    case FunctionKind::indicator: return 1.0;
    case FunctionKind::expnorm: return t;
    case FunctionKind::gaussian: return std::sqrt(2.0 * t);
  }
  return 0.0;
}

Body level_set(const LogConcaveFunction& f, double t) {
  const double r = level_radius(f, t);
  if (r == 0.0) throw std::domain_error("the t = 0 level set is the single point {0}");
  if (r == 1.0) return f.base();
  return scaled(f.base(), r);
}

double level_set_volume(const LogConcaveFunction& f, double t) {
  const double r = level_radius(f, t);
  if (r == 0.0) return 0.0;
  return std::pow(r, f.dim()) * volume(f.base());
}

double l1_norm(const LogConcaveFunction& f, const QuadratureSpec& spec) {
  return integrate_exp_weighted([&](double t) { return level_set_volume(f, t); }, spec);
}

double difference_onset(const LogConcaveFunction& f, const Vec& x) {
  if (dot(x, x) == 0.0) return 0.0;
  switch (f.kind()) {
    case FunctionKind::indicator: return covariogram_body(f.base(), x) > 0.0 ? 0.0 : kInf;
    // tK meets x + tK in volume exactly when ||x||_{K-K} < t.
    case FunctionKind::expnorm: return minkowski_functional(difference_body(f.base()), x);
    case FunctionKind::gaussian: return dot(x, x) / 8.0;
  }
  return 0.0;
}

Epigraph::Epigraph(LogConcaveFunction f, const QuadratureSpec& spec)
    : f_(std::move(f)), weight_(l1_norm(f_, spec)) {}

double epigraph_weight(const Epigraph& L) { return L.weight(); }

bool epigraph_contains(const Epigraph& L, const Vec& x, double t) {
  if (!(t >= 0.0)) throw std::domain_error("epigraph points need t >= 0");
  return eval(L.function(), x) >= std::exp(-t);
}

bool centrally_symmetric(const Body& K) {
  const double tol = 1e-9 * std::max(1.0, K.scale());
  if (!K.is_polytope()) return norm(K.center()) <= tol;
  for (const Vec& v : K.vertices()) {
    bool found = false;
    for (const Vec& w : K.vertices())
      if (norm(v + w) <= tol) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

LogConcaveFunction parse_function(std::string_view descriptor,
                                  const std::map<std::string, Body>& bodies) {
  const auto colon = descriptor.find(':');
  if (colon == std::string_view::npos)
    throw std::invalid_argument("function descriptor must look like kind:argument");
  const std::string kind(descriptor.substr(0, colon));
  const std::string arg(descriptor.substr(colon + 1));
  if (kind == "gaussian") {
    if (arg != "1" && arg != "2" && arg != "3")
      throw std::invalid_argument("gaussian dimension must be 1, 2 or 3");
    return LogConcaveFunction::gaussian(std::stoi(arg));
  }
  if (kind != "indicator" && kind != "expnorm")
    throw std::invalid_argument("unknown function kind '" + kind + "'");
  const auto it = bodies.find(arg);
  Body K = it != bodies.end() ? it->second : preset_body(arg);
  const std::string label(descriptor);
  return kind == "indicator" ? LogConcaveFunction::indicator(std::move(K), label)
                             : LogConcaveFunction::expnorm(std::move(K), label);
}

}  // namespace lcg
