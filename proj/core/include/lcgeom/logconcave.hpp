#pragma once

// Log-concave functions normalized to sup f = f(0) = 1: indicators of
// bodies, exp(-gauge) and the standard Gaussian. Every level set is a
// dilate r(t) * B of one base body B, which the other modules exploit.

#include <map>
#include <string>
#include <string_view>
#include <variant>

#include "lcgeom/geometry.hpp"
#include "lcgeom/numerics.hpp"

namespace lcg {

struct Indicator {
  Body body;
};
/// f(x) = exp(-||x||_K); K must contain the origin in its interior.
struct ExpNorm {
  Body body;
};
/// f(x) = exp(-|x|^2 / 2).
struct Gaussian {
  int dim = 2;
};

enum class FunctionKind { indicator, expnorm, gaussian };

class LogConcaveFunction {
 public:
  using Variant = std::variant<Indicator, ExpNorm, Gaussian>;

  /// Throws std::invalid_argument when an ExpNorm body misses the origin.
  explicit LogConcaveFunction(Variant v, std::string label = {});

  static LogConcaveFunction indicator(Body K, std::string label = {});
  static LogConcaveFunction expnorm(Body K, std::string label = {});
  static LogConcaveFunction gaussian(int dim);

  [[nodiscard]] int dim() const noexcept { return base_.dim(); }
  [[nodiscard]] FunctionKind kind() const noexcept {
    return static_cast<FunctionKind>(variant_.index());
  }
  [[nodiscard]] const Variant& variant() const noexcept { return variant_; }
  /// K for indicator and expnorm, the unit ball for the Gaussian.
  [[nodiscard]] const Body& base() const noexcept { return base_; }
  [[nodiscard]] const std::string& label() const noexcept { return label_; }

 private:
  Variant variant_;
  Body base_;
  std::string label_;
};

double eval(const LogConcaveFunction& f, const Vec& x);
/// Always 1, attained at the origin.
double sup_norm(const LogConcaveFunction& f);

/// K_t(f) = level_radius(f, t) * base(f).
double level_radius(const LogConcaveFunction& f, double t);
/// Throws std::domain_error for t < 0, and for t = 0 when the level set is
/// the single point {0}.
Body level_set(const LogConcaveFunction& f, double t);
/// |K_t(f)|; 0 for the degenerate t = 0 level of expnorm and Gaussian.
double level_set_volume(const LogConcaveFunction& f, double t);

/// Integral of f as the layer-cake integral of the level-set volumes.
double l1_norm(const LogConcaveFunction& f, const QuadratureSpec& spec = {});

/// inf{t : K_t(f) and x + K_t(f) overlap in a set of positive volume};
/// +infinity when they never do.
double difference_onset(const LogConcaveFunction& f, const Vec& x);

/// L = {(x, t) : f(x) >= e^{-t}} with the weight of the measure e^{-t} dt dx.
class Epigraph {
 public:
  explicit Epigraph(LogConcaveFunction f, const QuadratureSpec& spec = {});
  [[nodiscard]] const LogConcaveFunction& function() const noexcept { return f_; }
  [[nodiscard]] double weight() const noexcept { return weight_; }

 private:
  LogConcaveFunction f_;
  double weight_;
};

double epigraph_weight(const Epigraph& L);
bool epigraph_contains(const Epigraph& L, const Vec& x, double t);

/// True when K = -K up to 1e-9 relative.
bool centrally_symmetric(const Body& K);

/// "indicator:<body>", "expnorm:<body>" or "gaussian:<dim>". Body names
/// resolve first in `bodies`, then among the presets.
LogConcaveFunction parse_function(std::string_view descriptor,
                                  const std::map<std::string, Body>& bodies = {});

}  // namespace lcg
