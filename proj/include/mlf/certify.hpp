#pragma once

#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mlf/specfun.hpp"

namespace mlf::certify {

/// Lattice minimum Gamma_p = min_{n >= p} Gamma(alpha n + beta).
struct GammaMin {
  int p;
  double value;
  long argmin_n;
};

/// Unique positive minimizer t0 of Gamma (~1.46163), located once by
/// golden-section search on (1, 2) to 1e-12.
double gamma_minimizer_t0();

/// Gamma_p for p in {0, 1, 2}. Gamma(alpha n + beta) is convex in n, so the
/// lattice minimum sits at a rounding of the continuous minimizer
/// (t0 - beta)/alpha clamped to n >= p; only those candidates are evaluated.
GammaMin gamma_min(double alpha, double beta, int p);

/// Turanian difference
///   Delta_T(t) = [E^{gamma+1}_{alpha,alpha+beta}(t^alpha)]^2
///              - E^gamma_{alpha,beta}(t^alpha) E^{gamma+2}_{alpha,2alpha+beta}(t^alpha)
/// from three independently summed series.
double turan_difference(const MLParams& p, double t, const EvalConfig& cfg = {});

/// Laguerreian difference of the characteristic-function derivatives,
/// rewritten through the t-derivatives of E = E^gamma_{alpha,beta}:
///   Delta_L(t) = -t^2 (E')^2 + E (t E' + t^2 E'').
double laguerre_difference(const MLParams& p, double t, const EvalConfig& cfg = {});

/// A signed margin (>= 0 means the claim holds at the point) together with
/// the natural scale used for relative comparison.
struct Margin {
  double value;
  double scale;
  double relative() const { return scale > 0.0 ? value / scale : value; }
};

/// Moment inequality: E(E1 + t^alpha E2) - gamma t^alpha Delta_T >= 0,
/// margin = LHS - RHS, scale = |LHS|.
Margin check_moment_ineq_n9(const MLParams& p, double t, const EvalConfig& cfg = {});

enum class Lemma1Bound { N10, N11 };

/// Prabhakar upper bounds: N10 is (1/Gamma_0)(1-t^alpha)^{-gamma} on
/// t in (0,1); N11 is 1F1(gamma; beta; t^alpha)/Gamma(beta) under
/// alpha >= 1, beta >= t0. margin = bound - E, scale = |bound|. Hypothesis
/// violations throw std::domain_error naming the failed precondition.
Margin check_lemma1_bounds(const MLParams& p, double t, Lemma1Bound which,
                           const EvalConfig& cfg = {});

enum class BoundBranch { TIn01, Kummer };

/// Upper bounds on Delta_T: the Gamma_p branch on t in (0,1) and the Kummer
/// branch under alpha >= 1, beta >= t0. margin = bound - Delta_T.
Margin check_turan_bound_thm3(const MLParams& p, double t, BoundBranch branch,
                              const EvalConfig& cfg = {});

/// First-order Laguerre inequality Delta_L(t) >= 0; scale is the sum of the
/// magnitudes of the constituent products.
Margin check_laguerre_positivity(const MLParams& p, double t,
                                 const EvalConfig& cfg = {});

/// Upper bounds on Delta_L: gamma/(Gamma_0 Gamma_1 t (1-t)^{2 gamma+1}) on
/// t in (0,1), and the Kummer-product branch under alpha >= 1, beta >= t0.
Margin check_laguerre_bound_thm4(const MLParams& p, double t,
                                 BoundBranch branch, const EvalConfig& cfg = {});

/// Residuals of the two parameter recurrences of the Prabhakar function:
///   alpha gamma t E^{gamma+1}_{alpha,alpha+beta+1}(t)
///     - E^gamma_{alpha,beta}(t) + beta E^gamma_{alpha,beta+1}(t) = 0
///   alpha^2 gamma (gamma+1) t^2 E^{gamma+2}_{alpha,2alpha+beta+2}(t)
///     - E^gamma_{alpha,beta}(t) + (alpha+2beta+1) E^gamma_{alpha,beta+1}(t)
///     - (alpha+beta+1)(beta+1) E^gamma_{alpha,beta+2}(t) = 0
/// scales are the sums of the absolute constituent terms.
struct RecurrenceResiduals {
  double residual1;
  double scale1;
  double residual2;
  double scale2;
};
RecurrenceResiduals check_recurrences_prop2(const MLParams& p, double t,
                                            const EvalConfig& cfg = {});

/// Summation identity for s >= 1:
///   Phi^{(1,alpha)}_{gamma+1; alpha+beta}(t^alpha, 1-s, 1)
///     = Gamma(alpha+beta)/(gamma t^alpha)
///       sum_{j=0}^{s} (gamma)_j {s brace j} t^{alpha j} E^{gamma+j}_{alpha,alpha j+beta}(t^alpha).
/// margin = -|LHS - RHS|, scale = |LHS|.
Margin check_corollary1(const MLParams& p, double t, int s,
                        const EvalConfig& cfg = {});

/// Evaluation-level equivalence of the moment inequality and the Laguerre
/// form: gamma * (N9 margin at the t^{1/alpha}-substituted point) equals the
/// X2 margin E(E' + tE'') - t(E')^2 identically. margin = -|difference|,
/// scale = |X2 margin|.
Margin check_remark3(const MLParams& p, double t, const EvalConfig& cfg = {});

enum class Claim {
  N9,
  N10,
  N11,
  Thm3A,
  Thm3B,
  Laguerre,
  O6A,
  O6B,
  Prop2,
  Cor1,
  Remark3,
};

std::string_view claim_name(Claim c);
std::optional<Claim> claim_from_name(std::string_view name);
const std::vector<Claim>& all_claims();

struct Range {
  double lo;
  double hi;
  int steps;
};

enum class ConstraintFilter { None, TIn01, AlphaGe1BetaGeT0 };

/// Rectangular sweep grid over (alpha, beta, gamma, t). Each Range must
/// have lo > 0, steps >= 1, and lo < hi whenever steps > 1 (steps == 1
/// takes lo as a single value). constraint_filter is applied on top of
/// each claim's own hypothesis filter.
struct GridSpec {
  Range alpha;
  Range beta;
  Range gamma;
  Range t;
  ConstraintFilter constraint_filter = ConstraintFilter::None;

  void validate() const;
};

/// 7 x 7 x 7 points over [0.3, 3]^3 with 12 time points in [0.05, 1.9];
/// sized so every claim keeps >= 500 points after hypothesis filtering.
GridSpec default_grid();

struct GridPoint {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double t = 0.0;
};

/// Cartesian product of the grid ranges in deterministic order (t fastest),
/// pre-filtered by grid.constraint_filter.
std::vector<GridPoint> grid_points(const GridSpec& grid);

/// Hypothesis filter a claim imposes on grid points. TIn01 also excludes
/// t > 1 - 1e-3 where the (1-t)-type bounds blow up.
ConstraintFilter claim_filter(Claim c);
bool point_satisfies(ConstraintFilter f, const GridPoint& q);

/// Relative margin of one claim at one grid point (Prop2 maps to the
/// negated worst relative residual; Cor1 to the worst order s in {1,2,3}).
double relative_margin(Claim c, const GridPoint& q, const EvalConfig& cfg = {});

/// Serial reference sweep: margins in grid order.
std::vector<double> sweep_margins_serial(Claim c,
                                         const std::vector<GridPoint>& pts,
                                         const EvalConfig& cfg = {});

/// OpenMP sweep over independent points; results are written by grid index
/// and therefore bit-identical to the serial sweep. threads <= 0 uses the
/// OpenMP default. Falls back to the serial sweep when built without OpenMP.
std::vector<double> sweep_margins_parallel(Claim c,
                                           const std::vector<GridPoint>& pts,
                                           const EvalConfig& cfg = {},
                                           int threads = 0);

struct CertificateReport {
  std::string name;
  long points_checked = 0;
  long points_passed = 0;
  double worst_margin = std::numeric_limits<double>::infinity();
  GridPoint worst_point{};
  double tolerance = 0.0;

  bool pass() const {
    return points_checked > 0 && worst_margin >= -tolerance;
  }
};

/// One report per claim, in the order given. A claim fails only if some
/// in-hypothesis point has relative margin < -tol. Throws std::domain_error
/// if a claim's filtered grid is empty and NonConvergenceError if any point
/// evaluation fails. threads == 1 selects the serial reference sweep.
std::vector<CertificateReport> run_certification(const GridSpec& grid,
                                                 const std::vector<Claim>& claims,
                                                 double tol, int threads = 0,
                                                 const EvalConfig& cfg = {});

}  // namespace mlf::certify
