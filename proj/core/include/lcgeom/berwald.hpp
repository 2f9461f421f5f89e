#pragma once

// Moment functionals: the Gamma-normalized p-means of a concave profile,
// the epigraph Berwald functional of a log-concave function, the classical
// Berwald and Hoelder means over a body, and the equimeasurable
// rearrangement that reduces the epigraph functional to a profile.

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "lcgeom/geometry.hpp"
#include "lcgeom/logconcave.hpp"
#include "lcgeom/numerics.hpp"

namespace lcg {

struct LinearProfile {
  double c = 1.0;
};
struct PowerProfile {
  double alpha = 0.5;
};
struct ConstantProfile {
  double c = 1.0;
};
/// Knots start at r = 0; extended past the last knot with the last slope.
struct PiecewiseLinearProfile {
  std::vector<double> r;
  std::vector<double> values;
};
/// Monotone cubic (PCHIP) interpolation of a table, extended linearly with
/// the last secant past the end.
struct SampledProfile {
  std::vector<double> r;
  std::vector<double> values;
};

/// A non-decreasing concave gamma : [0, inf) -> [0, inf).
class MomentProfile {
 public:
  using Variant =
      std::variant<LinearProfile, PowerProfile, ConstantProfile, PiecewiseLinearProfile, SampledProfile>;

  /// Validates; throws std::invalid_argument for inadmissible parameters,
  /// decreasing values or (piecewise linear) increasing slopes.
  explicit MomentProfile(Variant v);

  static MomentProfile linear(double c);
  static MomentProfile power(double alpha);
  static MomentProfile constant(double c);
  static MomentProfile piecewise_linear(std::vector<double> r, std::vector<double> values);
  static MomentProfile sampled(std::vector<double> r, std::vector<double> values);

  double operator()(double r) const;
  [[nodiscard]] const Variant& variant() const noexcept { return v_; }
  /// Interior kinks worth splitting quadrature at.
  [[nodiscard]] std::vector<double> knots() const;

 private:
  Variant v_;
  std::vector<double> slopes_;  // PCHIP derivatives for sampled tables
};

/// Parses linear:c, power:alpha, constant:c or pwl:r0,v0;r1,v1;...
MomentProfile parse_profile(const std::string& descriptor);

/// Phi_gamma(p) = ((1/Gamma(1+p)) int_0^inf gamma^p e^{-r} dr)^{1/p}, and
/// e^A exp(int log gamma e^{-r} dr) at p = 0. Throws DivergenceError when
/// the integral is infinite.
double phi_gamma(const MomentProfile& gamma, double p, const QuadratureSpec& spec = {});

/// h(x, t) = |{lambda >= 0 : x + lambda u in K_t}|.
struct OneSidedChord {
  Vec u;
};
/// h(x, t) = a . x + b t + c.
struct CoordinateAffine {
  Vec a;
  double b = 0.0;
  double c = 0.0;
};

using ConcaveWitness = std::variant<OneSidedChord, CoordinateAffine>;

double eval_witness(const Epigraph& L, const ConcaveWitness& h, const Vec& x, double t);

/// Rejects witnesses that are negative somewhere on L, fail sampled
/// midpoint concavity, or vanish identically. Throws std::invalid_argument.
void validate_witness(const Epigraph& L, const ConcaveWitness& h, int samples = 500,
                      RngSeed seed = {7});

/// Parses affine:x|y|z|t, affine:a1,..,an,b,c, chord:e1|e2|e3 or chord:u1,u2[,u3].
ConcaveWitness parse_witness(const std::string& descriptor, int dim);

/// mu({h >= s}) for the probability measure proportional to e^{-t} on L.
double superlevel_measure(const Epigraph& L, const ConcaveWitness& h, double s,
                          const QuadratureSpec& spec = {});

struct Rearrangement {
  /// gamma(r) = sup{s : I_h(s) > r^n} on r_grid.
  std::vector<double> r_grid;
  std::vector<double> gamma;
  /// gamma_1(r) = gamma(exp(-r/n)) as a sampled profile on [0, 40].
  MomentProfile gamma1;
};

/// Bisection on s -> I_h(s) to 1e-9 per point. `r_grid` defaults to 24
/// points in (0, 1].
Rearrangement rearranged_gamma(const Epigraph& L, const ConcaveWitness& h,
                               std::vector<double> r_grid = {},
                               const QuadratureSpec& spec = {}, int gamma1_nodes = 64);

/// int_L h^p dmu.
double epigraph_moment(const Epigraph& L, const ConcaveWitness& h, double p,
                       const QuadratureSpec& spec = {});

/// ((1/Gamma(1+p)) int_L h^p dmu)^{1/p}; the log-mean limit at p = 0.
double berwald_epigraph(const Epigraph& L, const ConcaveWitness& h, double p,
                        const QuadratureSpec& spec = {});

using BodyFunction = FunctionRef<double(const Vec&)>;

/// Sampled check that phi >= 0 and midpoint-concave on K.
void validate_concave_on(const Body& K, BodyFunction phi, int samples = 500, RngSeed seed = {11});

/// (binom(p+n, n) / |K| int_K phi^p)^{1/p} for p > 0.
double berwald_classical(const Body& K, BodyFunction phi, double p, const QuadratureSpec& spec = {});

/// ((1/|K|) int_K phi^p)^{1/p} for p > 0.
double holder_mean(const Body& K, BodyFunction phi, double p, const QuadratureSpec& spec = {});

enum class EvalStatus { ok, diverged, quadrature_failed };
std::string to_string(EvalStatus s);

struct Evaluation {
  double value = 0.0;
  EvalStatus status = EvalStatus::ok;
  std::string detail;
};

/// Runs fn and maps DivergenceError, QuadratureError and estimates beyond
/// 1e12 to a typed status.
Evaluation guarded(FunctionRef<double()> fn);

struct SweepRow {
  double p = 0.0;
  Evaluation result;
};

/// CSV with header p,value,status and 12 significant digits.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

/// min:max:steps (inclusive, steps >= 2) or a comma list; all values > -1.
std::vector<double> parse_p_grid(const std::string& text);

}  // namespace lcg
