#pragma once

// Deterministic numerical primitives: adaptive and double-exponential
// quadrature, e^{-t}-weighted integrals on [0, inf), direction grids on the
// unit sphere, hit-or-miss Monte Carlo volumes and the Gamma function.

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "lcgeom/vec.hpp"

namespace lcg {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kEulerMascheroni = 0.577215664901533;

/// Non-owning reference to a callable. Only valid for the duration of the
/// call it is passed to.
template <class Signature>
class FunctionRef;

template <class R, class... Args>
class FunctionRef<R(Args...)> {
 public:
  template <class F>
    requires(!std::is_same_v<std::remove_cvref_t<F>, FunctionRef> &&
             std::is_invocable_r_v<R, F&, Args...>)
  FunctionRef(F&& f) noexcept  // NOLINT(google-explicit-constructor)
      : obj_(const_cast<void*>(static_cast<const void*>(std::addressof(f)))),
        call_([](void* obj, Args... args) -> R {
          return std::invoke(*static_cast<std::add_pointer_t<F>>(obj),
                             std::forward<Args>(args)...);
        }) {}

  R operator()(Args... args) const {
    return call_(obj_, std::forward<Args>(args)...);
  }

 private:
  void* obj_;
  R (*call_)(void*, Args...);
};

using ScalarFn = FunctionRef<double(double)>;

struct QuadratureSpec {
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  int max_subdivisions = 200;
  /// Upper limit T replacing infinity in e^{-t}-weighted integrals.
  double exp_truncation = 50.0;

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;

  [[nodiscard]] QuadratureSpec with_tolerance(double rel, double abs) const {
    QuadratureSpec s = *this;
    s.rel_tol = rel;
    s.abs_tol = abs;
    return s;
  }
};

/// Raised when an adaptive rule cannot reach the requested tolerance.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double estimate, double error_bound)
      : std::runtime_error(what), estimate_(estimate), error_bound_(error_bound) {}
  [[nodiscard]] double estimate() const noexcept { return estimate_; }
  [[nodiscard]] double error_bound() const noexcept { return error_bound_; }

 private:
  double estimate_;
  double error_bound_;
};

/// Raised when an integrand is not integrable (non-integrable endpoint
/// power law, non-finite values, or an estimate beyond any sane magnitude).
class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct QuadratureEstimate {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;
  bool converged = false;
};

/// Globally adaptive 7/15-point Gauss-Kronrod over [a, b], pre-split at the
/// given breakpoints. Never throws on non-convergence; inspect `converged`.
QuadratureEstimate gauss_kronrod_adaptive(ScalarFn f, double a, double b,
                                          const QuadratureSpec& spec,
                                          std::span<const double> breaks = {});

/// Tanh-sinh rule over [a, b] without evaluating the endpoints.
QuadratureEstimate tanh_sinh(ScalarFn f, double a, double b,
                             const QuadratureSpec& spec, int max_level = 7);

/// Adaptive integral over [a, b]; throws QuadratureError on failure.
double integrate_interval(ScalarFn f, double a, double b,
                          const QuadratureSpec& spec,
                          std::span<const double> breaks = {});

enum class EndCaps { none, left, right, both };

/// Integral over [a, b] of a function that is smooth inside but may behave
/// like a power |s - end|^beta (beta > -1) at either end. The outer
/// eps_rel * (b - a) piece of each capped end is integrated analytically
/// from a power law fitted at eps and 2 eps; the interior uses tanh-sinh
/// with a Gauss-Kronrod fallback. Throws DivergenceError when the fitted
/// exponent is <= -1.
double integrate_singular_ends(ScalarFn f, double a, double b,
                               const QuadratureSpec& spec,
                               EndCaps caps = EndCaps::both,
                               double eps_rel = 1e-7);

/// Integral of f(t) e^{-t} over [lower, spec.exp_truncation].
/// `breaks` marks known kinks or onsets. The leading unit panel is treated as
/// possibly singular at `lower`.
double integrate_exp_weighted(ScalarFn f, const QuadratureSpec& spec,
                              double lower = 0.0,
                              std::span<const double> breaks = {});

/// Gamma function; throws std::domain_error for x <= 0.
double gamma_fn(double x);

/// Volume of the Euclidean unit ball in dimension n >= 0.
double unit_ball_volume(int n);

struct DirectionGrid {
  int dim = 0;
  std::vector<Vec> directions;
  std::vector<double> weights;

  [[nodiscard]] std::size_t size() const noexcept { return directions.size(); }
  /// Index of -u in the grid, or -1 when the grid is not antipodally closed.
  [[nodiscard]] int antipode(std::size_t i) const;
};

/// dim 1: {+1, -1}. dim 2: equally spaced angles starting at 0. dim 3:
/// Fibonacci sphere. All weights are equal and sum to the sphere's area.
DirectionGrid direction_grid(int dim, int count);

struct RngSeed {
  std::uint64_t seed = 0;
};

struct Box {
  std::vector<double> lo;
  std::vector<double> hi;
  [[nodiscard]] std::size_t dim() const noexcept { return lo.size(); }
  [[nodiscard]] double volume() const;
};

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
};

/// Hit-or-miss estimate of the volume of {x in box : member(x)}.
McEstimate mc_volume(FunctionRef<bool(std::span<const double>)> member,
                     const Box& box, std::int64_t samples, RngSeed seed);

/// Uniform [0, 1) double from a 64-bit engine draw; identical on every
/// platform for identical draws.
inline double unit_uniform(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace lcg
