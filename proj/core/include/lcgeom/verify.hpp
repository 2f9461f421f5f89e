#pragma once

// Machine-checkable verifications of the projection, covariogram and
// moment-functional inequalities, each producing a CheckReport.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lcgeom/berwald.hpp"
#include "lcgeom/functionals.hpp"
#include "lcgeom/geometry.hpp"
#include "lcgeom/logconcave.hpp"
#include "lcgeom/numerics.hpp"

namespace lcg {

enum class CheckStatus { pass, fail, skipped_diverged };
/// "pass", "fail" or "skipped-diverged".
std::string to_string(CheckStatus s);

struct CheckReport {
  std::string name;
  CheckStatus status = CheckStatus::pass;
  double lhs = 0.0;
  double rhs = 0.0;
  /// rhs - lhs, 1 - ratio or a relative deviation; `details` says which.
  double margin = 0.0;
  double tolerance = 0.0;
  double runtime_ms = 0.0;
  std::string details;
};

struct VerifyOptions {
  QuadratureSpec spec;
  /// dim-2 grid for star-body volumes.
  int grid_2d = 720;
  /// dim-3 Fibonacci grid for star-body volumes.
  int grid_3d = 20000;
  /// Directions compared pointwise by inclusion checks.
  int inclusion_grid = 72;
  std::int64_t mc_samples = 4'000'000;
  RngSeed seed{42};
  /// Replaces every check's slack when set.
  std::optional<double> tolerance;
  /// Record wall-clock runtime; otherwise runtime_ms is 0 so reports are
  /// reproducible byte for byte.
  bool timing = false;

  [[nodiscard]] double slack(double fallback) const { return tolerance.value_or(fallback); }
  [[nodiscard]] DirectionGrid volume_grid(int dim) const;
};

/// |K|^{n-1} |Pi* K| on the options' grid.
double projection_product(const Body& K, const VerifyOptions& opts = {});
/// Lower and upper bounds of the projection product in dimension n = 2, 3.
std::pair<double, double> projection_product_bounds(int n);

/// Monotone decrease of Phi_gamma over p_grid (relative slack 1e-6); a
/// linear profile must also be constant within 1e-6.
CheckReport check_profile_monotone(const MomentProfile& gamma, const std::string& label,
                                   const std::vector<double>& p_grid, const VerifyOptions& opts = {});

/// Phi_gamma for gamma(r) = sqrt(r) against (Gamma(1+p/2)/Gamma(1+p))^{1/p}
/// (e^{A/2} at p = 0), within 1e-8 relative.
CheckReport check_profile_closed_form(const std::vector<double>& p_grid, const VerifyOptions& opts = {});

/// Monotone decrease of the epigraph functional over p_grid, relative slack
/// 1e-4; diverged points are skipped and listed.
CheckReport check_epigraph_monotone(const LogConcaveFunction& f, const ConcaveWitness& h,
                                    const std::string& witness_label, const std::vector<double>& p_grid,
                                    const VerifyOptions& opts = {});

/// f = indicator of [0, 1], h = x against (1/Gamma(2+p))^{1/p}, within 1e-6.
CheckReport check_epigraph_closed_form(const std::vector<double>& p_grid, const VerifyOptions& opts = {});

/// phi_gamma(gamma_1, p) against the epigraph functional, within 1e-3.
CheckReport check_rearrangement(const LogConcaveFunction& f, const ConcaveWitness& h,
                                const std::string& witness_label, const std::vector<double>& p_grid,
                                const VerifyOptions& opts = {});

/// On K = [0, 1] with phi(x) = x or 1 - x: the classical Berwald mean
/// decreases and the Hoelder mean increases over p_grid.
CheckReport check_classical_berwald(const std::string& integrand, const std::vector<double>& p_grid,
                                    const VerifyOptions& opts = {});
CheckReport check_holder_mean(const std::string& integrand, const std::vector<double>& p_grid,
                              const VerifyOptions& opts = {});

/// Projection product inside its bounds (slack 1e-3). With `expected`, it
/// must also match that value within 1e-3; `strict` demands it stays
/// strictly inside the bounds.
CheckReport check_body_projection_product(const Body& K, const std::string& label,
                                          std::optional<double> expected = std::nullopt,
                                          bool strict = false, const VerifyOptions& opts = {});

/// int int min{f(x), f(y)} <= 2^n n! ||f||_1^{n+1} |Pi* f|; lhs and rhs are
/// the two sides, margin 1 - ratio. `expected_ratio` adds an equality test
/// within `ratio_tolerance`; `ratio_below` demands ratio < that threshold.
CheckReport check_functional_zhang(const LogConcaveFunction& f,
                                   std::optional<double> expected_ratio = std::nullopt,
                                   double ratio_tolerance = 1e-2,
                                   std::optional<double> ratio_below = std::nullopt,
                                   const VerifyOptions& opts = {});

/// For f = exp(-||.||_K), the functional ratio (from a functional report)
/// against lower bound / projection product (from a body report), within 2e-2.
CheckReport check_zhang_consistency(const std::string& label, int dim, const CheckReport& functional,
                                    const CheckReport& body, const VerifyOptions& opts = {});

/// Covariogram integral of f against a 2n-dimensional Monte Carlo estimate
/// of int int min{f(x), f(y)}; agreement within 3 standard errors.
CheckReport check_covariogram_crosspath(const LogConcaveFunction& f, const VerifyOptions& opts = {});

/// |K~_n(g)| = (1/g(0)) int g within 1%.
CheckReport check_ball_body_volume(const LogConcaveFunction& g, const VerifyOptions& opts = {});
CheckReport check_ball_body_volume(const CovariogramFn& g, const VerifyOptions& opts = {});

/// Ball radius of the covariogram to the p against the chord-power integral
/// in every direction of `directions`, within 1e-3 relative.
/// With `expected`, both sides must also match it within 1e-3.
CheckReport check_chord_power_identity(const LogConcaveFunction& f, const std::vector<Vec>& directions,
                                       double p, std::optional<double> expected = std::nullopt,
                                       const VerifyOptions& opts = {});

/// Gamma(1+p)^{1/p}/Gamma(1+q)^{1/q} K~_q <= K~_p <= K~_q radially, slack 1e-6.
CheckReport check_ball_body_sandwich(const RadialSource& g, const std::string& label, double p, double q,
                                     const VerifyOptions& opts = {});

/// Gaps |chord_power_integral / Gamma(1+p) - ||u||_{Pi* f} / (2 ||f||_1)|
/// strictly decrease along p_sequence and the last is below `final_gap`.
CheckReport check_chord_power_limit(const LogConcaveFunction& f, const Vec& u,
                                    const std::vector<double>& p_sequence, double final_gap = 1e-2,
                                    const VerifyOptions& opts = {});

/// rho_{K~_n(g_f)} <= 2 (n!)^{1/n} ||f||_1 rho_{Pi* f} on the inclusion grid,
/// slack 1e-4. `tight_within` requires max ratio >= 1 - tight_within.
CheckReport check_polar_inclusion(const LogConcaveFunction& f, std::optional<double> tight_within = std::nullopt,
                                  const VerifyOptions& opts = {});

/// Projection product of M K + v against that of K, within 1e-3 relative.
CheckReport check_affine_invariance(const Body& K, const std::string& label, const Mat3& M, const Vec& v,
                                    const VerifyOptions& opts = {});

struct SuiteConfig {
  /// all, zhang, affine, berwald, ball or inclusion.
  std::string suite = "all";
  int dim = 2;
  /// Extra bodies checked for the projection product bounds and affine
  /// invariance.
  std::vector<std::pair<std::string, Body>> bodies;
  /// Replace the built-in preset lists with `bodies` only.
  bool only_listed = false;
  VerifyOptions options;
};

/// Suite names accepted by run_suite.
std::vector<std::string> suite_names();

/// Runs the configured checks in a fixed order. Throws std::invalid_argument
/// for an unknown suite or dimension.
std::vector<CheckReport> run_suite(const SuiteConfig& config);

/// True when every report passed or was skipped for divergence.
bool aggregate_pass(const std::vector<CheckReport>& reports);

}  // namespace lcg
