#pragma once

// Objects built from a log-concave function: the covariogram functional
// g_f, Ball's star bodies, polar projection bodies of bodies and functions,
// and the chord-power integral over level sets.

#include <iosfwd>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "lcgeom/geometry.hpp"
#include "lcgeom/logconcave.hpp"
#include "lcgeom/numerics.hpp"

namespace lcg {

/// Star body known through its radii on a direction grid.
struct StarBody {
  DirectionGrid grid;
  std::vector<double> radii;
  [[nodiscard]] int dim() const noexcept { return grid.dim; }
};

/// (1/n) sum of w_i rho_i^n.
double star_volume(const StarBody& S);

enum class CovariogramMethod { level_set, min_integral };

/// g_f(x) = int_0^inf e^{-t} |K_t cap (x + K_t)| dt, with g_f(0) cached.
class CovariogramFn {
 public:
  explicit CovariogramFn(LogConcaveFunction f,
                         CovariogramMethod method = CovariogramMethod::level_set,
                         const QuadratureSpec& spec = {});

  double operator()(const Vec& x) const;
  [[nodiscard]] double at_zero() const noexcept { return g0_; }
  [[nodiscard]] const LogConcaveFunction& function() const noexcept { return f_; }
  [[nodiscard]] CovariogramMethod method() const noexcept { return method_; }
  /// K - K of the base body (the unit-level support of g_f).
  [[nodiscard]] const Body& difference() const noexcept { return diff_; }
  /// t from which K_t and x + K_t overlap.
  [[nodiscard]] double onset(const Vec& x) const;

 private:
  LogConcaveFunction f_;
  CovariogramMethod method_;
  QuadratureSpec spec_;
  Body diff_;
  double g0_ = 0.0;
};

double covariogram_fn(const LogConcaveFunction& f, const Vec& x,
                      CovariogramMethod method = CovariogramMethod::level_set,
                      const QuadratureSpec& spec = {});

/// The function g feeding a Ball body: either a log-concave function or a
/// covariogram functional. Holds a reference; the referent must outlive it.
class RadialSource {
 public:
  RadialSource(const LogConcaveFunction& f) : ref_(&f) {}  // NOLINT
  RadialSource(const CovariogramFn& g) : ref_(&g) {}       // NOLINT

  double operator()(const Vec& x) const;
  [[nodiscard]] double at_zero(const QuadratureSpec& spec) const;
  /// sup{r : g(r u) > 0}, +infinity for unbounded support.
  [[nodiscard]] double support_radius(const Vec& u) const;
  [[nodiscard]] bool even() const;
  [[nodiscard]] int dim() const;

 private:
  std::variant<const LogConcaveFunction*, const CovariogramFn*> ref_;
};

/// [(p / g(0)) int_0^inf r^{p-1} g(r u) dr]^{1/p}. Throws std::domain_error
/// for p <= 0 and DivergenceError when g does not decay along u.
double ball_body_radial(const RadialSource& g, double p, const Vec& u,
                        const QuadratureSpec& spec = {});

/// Radii of K~_p(g) on the grid; even sources evaluate half the grid.
StarBody ball_body(const RadialSource& g, double p, const DirectionGrid& grid,
                   const QuadratureSpec& spec = {});

/// Radii 1 / |P_{u-perp} K|. Requires dim >= 2.
StarBody polar_projection_body(const Body& K, const DirectionGrid& grid);

/// ||u||_{Pi* f} = 2 int_0^inf |P_{u-perp} K_t(f)| e^{-t} dt.
double polar_projection_fn_norm(const LogConcaveFunction& f, const Vec& u,
                                const QuadratureSpec& spec = {});
/// Radii 1 / ||u||_{Pi* f}. Requires dim >= 2.
StarBody polar_projection_fn(const LogConcaveFunction& f, const DirectionGrid& grid,
                             const QuadratureSpec& spec = {});

/// (1 / ((p + 1) ||f||_1)) int_0^inf e^{-t} int_{P_{u-perp} K_t}
/// chord(K_t, y, u)^{p + 1} dy dt, for p > -1. Dimension 1 uses the
/// counting measure on the projection.
double chord_power_integral(const LogConcaveFunction& f, const Vec& u, double p,
                            const QuadratureSpec& spec = {});

/// int g_f(x) dx over R^n by nested adaptive quadrature (dims 1 and 2).
double covariogram_integral(const CovariogramFn& g, const QuadratureSpec& spec = {});

struct ChordLimitRow {
  double p = 0.0;
  double lhs = 0.0;
  double target = 0.0;
  double gap = 0.0;
};

/// chord_power_integral / Gamma(1 + p) against ||u||_{Pi* f} / (2 ||f||_1)
/// for p in (-1, 0).
std::vector<ChordLimitRow> chord_power_limit_rows(const LogConcaveFunction& f, const Vec& u,
                                            const std::vector<double>& p_sequence,
                                            const QuadratureSpec& spec = {});

/// CSV with header theta_or_index,u1,u2[,u3],rho and 12 significant digits.
void write_star_csv(std::ostream& out, const StarBody& S);

}  // namespace lcg
