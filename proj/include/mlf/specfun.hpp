#pragma once

#include <stdexcept>

namespace mlf {

/// Thrown when a result depends on a series that exhausted its term budget
/// before meeting the requested tolerance. Plain series evaluators report
/// this in-band through SeriesResult::converged; compound quantities
/// (moments, certification margins) throw instead of returning garbage.
class NonConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Tolerance and term budget shared by every series evaluator.
/// rel_tol must lie in (0,1); max_terms >= 1.
struct EvalConfig {
  double rel_tol = 1e-13;
  int max_terms = 10000;

  void validate() const;
};

/// Result of a truncated series summation. tail_bound is a geometric
/// estimate of the discarded mass; converged guarantees
/// tail_bound <= rel_tol * max(1, |value|).
struct SeriesResult {
  double value = 0.0;
  int terms_used = 0;
  double tail_bound = 0.0;
  bool converged = false;
};

/// Parameters of the three-parameter (Prabhakar) Mittag-Leffler function
///
///   E^gamma_{alpha,beta}(z) = sum_{k>=0} (gamma)_k z^k / (Gamma(alpha k + beta) k!)
///
/// with alpha, beta, gamma all strictly positive. The constructor throws
/// std::domain_error on non-positive or non-finite input.
struct MLParams {
  double alpha;
  double beta;
  double gamma;

  MLParams(double alpha_, double beta_, double gamma_);
};

enum class HlzRegion { AllZ, Disk, Boundary, Divergent };

/// Parameters of the extended Hurwitz-Lerch Zeta function
///
///   Phi^{(rho,sigma,kappa)}_{lambda,mu;nu}(z, s, a)
///     = sum_{n>=0} (lambda)_{rho n} (mu)_{sigma n} z^n / (n! (nu)_{kappa n} (n+a)^s)
///
/// where the generalized Pochhammer symbols are Gamma ratios. mu plays no
/// role when sigma == 0 (the (mu)_{sigma n} factor is identically 1).
struct HLZParams {
  double lambda;
  double mu;
  double nu;
  double rho;
  double sigma;
  double kappa;
  double a;

  /// Requires nu, rho, kappa, a > 0 and sigma >= 0; throws std::domain_error.
  HLZParams(double lambda_, double mu_, double nu_, double rho_, double sigma_,
            double kappa_, double a_);

  /// Radius delta = rho^-rho sigma^-sigma kappa^kappa of the convergence
  /// disk in the critical case kappa - rho - sigma = -1. The factor x^-x is
  /// read as 1 at x = 0 (its analytic limit).
  double disk_radius() const;

  /// Convergence region of the series at argument z with exponent s:
  ///   AllZ      when kappa - rho - sigma + 1 > 0 (entire in z),
  ///   Disk      when kappa - rho - sigma = -1 and |z| < delta,
  ///   Boundary  when kappa - rho - sigma = -1, |z| = delta and
  ///             s + nu - lambda - mu > 1 (mu read as 0 when sigma = 0),
  ///   Divergent otherwise.
  /// The equality tests use a 1e-12 absolute/relative tolerance.
  HlzRegion classify(double z, double s) const;
};

/// ln Gamma(x) for x > 0. Throws std::domain_error for x <= 0.
double log_gamma(double x);

/// Pochhammer symbol (lambda)_mu = Gamma(lambda + mu) / Gamma(lambda), with
/// the conventions (lambda)_0 = 1 (including (0)_0 = 1) and, for
/// mu = n a non-negative integer, the product lambda (lambda+1) ... (lambda+n-1)
/// which is valid for every real lambda. The Gamma-ratio branch throws
/// std::domain_error when either Gamma argument is a non-positive integer.
double pochhammer(double lambda, double mu);

/// Prabhakar function E^gamma_{alpha,beta}(z). Terms are formed in log
/// space (exp of a sum of log-gammas), so individual Gamma factors may
/// exceed the double range as long as the term itself is representable.
/// Negative z is summed with signs and compensated accumulation.
/// Summation stops once the current term falls below rel_tol * |sum|, the
/// term ratio r is < 1 and the geometric tail term*r/(1-r) meets the
/// tolerance; hitting max_terms first yields converged = false.
SeriesResult prabhakar_e(const MLParams& p, double z, const EvalConfig& cfg = {});

/// Two-parameter Mittag-Leffler function E_{alpha,beta}(z) = E^1_{alpha,beta}(z).
SeriesResult two_param_ml(double alpha, double beta, double z,
                          const EvalConfig& cfg = {});

/// Classical Mittag-Leffler function E_alpha(z) = E^1_{alpha,1}(z).
SeriesResult one_param_ml(double alpha, double z, const EvalConfig& cfg = {});

/// Kummer confluent hypergeometric function
/// 1F1(a; b; z) = sum_k (a)_k z^k / ((b)_k k!), b > 0, under the same
/// truncation policy. Terminating cases (a a non-positive integer) are
/// summed exactly.
SeriesResult kummer_1f1(double a, double b, double z, const EvalConfig& cfg = {});

/// Extended Hurwitz-Lerch Zeta series of HLZParams at argument z and
/// exponent s. Requires lambda > 0 (and mu > 0 when sigma > 0) so that the
/// Gamma-ratio Pochhammer factors are pole-free; requires classify(z, s)
/// != Divergent. Violations throw std::domain_error naming the constraint.
SeriesResult hlz_phi(const HLZParams& h, double z, double s,
                     const EvalConfig& cfg = {});

/// Derivatives of the Prabhakar function via its parameter-shift identities
///   (E^gamma_{alpha,beta})'(z)  = gamma (gamma+1 shift)          -> gamma * E^{gamma+1}_{alpha,alpha+beta}(z)
///   (E^gamma_{alpha,beta})''(z) = gamma(gamma+1) * E^{gamma+2}_{alpha,2alpha+beta}(z)
/// order must be 1 or 2; no numerical differentiation is involved.
SeriesResult prabhakar_derivative(const MLParams& p, double z, int order,
                                  const EvalConfig& cfg = {});

namespace detail {

/// ln|Gamma(x)| together with the sign of Gamma(x); x must not be a
/// non-positive integer.
struct SignedLogGamma {
  double log_abs;
  int sign;
};
SignedLogGamma signed_log_gamma(double x);

/// Compensated (Kahan) accumulator.
struct KahanSum {
  double sum = 0.0;
  double c = 0.0;
  void add(double x) {
    const double y = x - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
  double value() const { return sum; }
};

}  // namespace detail

}  // namespace mlf
