#include "mlf/specfun.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

namespace mlf {

namespace {

[[noreturn]] void throw_domain(const std::string& msg) {
  throw std::domain_error(msg);
}

bool is_nonpositive_integer(double x) {
  return x <= 0.0 && x == std::floor(x);
}

// Core truncated summation shared by every series here. log_term(k) returns
// the log-magnitude of term k; alternating flips the sign of odd terms.
// Stopping rule: |t_k| <= rel_tol*|S_k|, observed ratio r = |t_{k+1}|/|t_k| < 1,
// and geometric tail |t_k|*r/(1-r) within rel_tol*max(1,|S_k|).
template <typename LogTerm>
SeriesResult sum_log_series(LogTerm&& log_term, bool alternating,
                            const EvalConfig& cfg) {
  detail::KahanSum acc;
  double mag = std::exp(log_term(0.0));
  double tail = mag;
  bool converged = false;
  int k = 0;
  while (k < cfg.max_terms) {
    acc.add((alternating && (k & 1)) ? -mag : mag);
    ++k;
    const double next = std::exp(log_term(static_cast<double>(k)));
    if (next == 0.0) {
      tail = 0.0;
      converged = true;
      break;
    }
    const double ratio = next / mag;
    if (ratio < 1.0) {
      tail = mag * ratio / (1.0 - ratio);
      if (mag <= cfg.rel_tol * std::fabs(acc.value()) &&
          tail <= cfg.rel_tol * std::max(1.0, std::fabs(acc.value()))) {
        converged = true;
        break;
      }
    } else {
      tail = next;  // still before the peak; no valid geometric bound yet
    }
    mag = next;
  }
  return SeriesResult{acc.value(), k, tail, converged};
}

}  // namespace

void EvalConfig::validate() const {
  if (!(rel_tol > 0.0) || !(rel_tol < 1.0)) {
    std::ostringstream os;
    os << "EvalConfig: rel_tol must lie in (0,1), got " << rel_tol;
    throw_domain(os.str());
  }
  if (max_terms < 1) {
    std::ostringstream os;
    os << "EvalConfig: max_terms must be >= 1, got " << max_terms;
    throw_domain(os.str());
  }
}

MLParams::MLParams(double alpha_, double beta_, double gamma_)
    : alpha(alpha_), beta(beta_), gamma(gamma_) {
  if (!(alpha > 0.0) || !(beta > 0.0) || !(gamma > 0.0) ||
      !std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(gamma)) {
    std::ostringstream os;
    os << "MLParams: require min{alpha, beta, gamma} > 0 and finite, got ("
       << alpha_ << ", " << beta_ << ", " << gamma_ << ")";
    throw_domain(os.str());
  }
}

HLZParams::HLZParams(double lambda_, double mu_, double nu_, double rho_,
                     double sigma_, double kappa_, double a_)
    : lambda(lambda_), mu(mu_), nu(nu_), rho(rho_), sigma(sigma_),
      kappa(kappa_), a(a_) {
  if (!(nu > 0.0)) throw_domain("HLZParams: nu must be positive");
  if (!(rho > 0.0)) throw_domain("HLZParams: rho must be positive");
  if (!(sigma >= 0.0)) throw_domain("HLZParams: sigma must be non-negative");
  if (!(kappa > 0.0)) throw_domain("HLZParams: kappa must be positive");
  if (!(a > 0.0)) throw_domain("HLZParams: a must be positive");
}

double HLZParams::disk_radius() const {
  auto self_neg_pow = [](double x) {  // x^-x with the limit value 1 at x = 0
    return x > 0.0 ? std::pow(x, -x) : 1.0;
  };
  return self_neg_pow(rho) * self_neg_pow(sigma) * std::pow(kappa, kappa);
}

HlzRegion HLZParams::classify(double z, double s) const {
  constexpr double eps = 1e-12;
  const double excess = kappa - rho - sigma + 1.0;
  if (excess > eps) return HlzRegion::AllZ;
  if (excess < -eps) return HlzRegion::Divergent;
  // critical case kappa - rho - sigma = -1
  const double delta = disk_radius();
  const double az = std::fabs(z);
  if (az < delta * (1.0 - eps)) return HlzRegion::Disk;
  if (az <= delta * (1.0 + eps)) {
    const double mu_eff = sigma == 0.0 ? 0.0 : mu;
    if (s + nu - lambda - mu_eff > 1.0) return HlzRegion::Boundary;
  }
  return HlzRegion::Divergent;
}

double log_gamma(double x) {
  if (!(x > 0.0)) {
    std::ostringstream os;
    os << "log_gamma: argument must be positive, got " << x;
    throw_domain(os.str());
  }
  return std::lgamma(x);
}

namespace detail {

SignedLogGamma signed_log_gamma(double x) {
  if (is_nonpositive_integer(x)) {
    std::ostringstream os;
    os << "signed_log_gamma: pole at non-positive integer " << x;
    throw_domain(os.str());
  }
  int sign = 1;
  if (x < 0.0) {
    // Gamma alternates sign between consecutive negative integers.
    const long long f = static_cast<long long>(std::floor(x));
    sign = (f % 2 == 0) ? 1 : -1;
  }
  return SignedLogGamma{std::lgamma(x), sign};
}

}  // namespace detail

double pochhammer(double lambda, double mu) {
  if (mu == 0.0) return 1.0;  // includes the convention (0)_0 = 1
  if (mu > 0.0 && mu == std::floor(mu) && mu <= 1e6) {
    const long n = std::lround(mu);
    double prod = 1.0;
    for (long i = 0; i < n; ++i) prod *= lambda + static_cast<double>(i);
    return prod;
  }
  if (is_nonpositive_integer(lambda) || is_nonpositive_integer(lambda + mu)) {
    std::ostringstream os;
    os << "pochhammer(" << lambda << ", " << mu
       << "): Gamma-ratio branch hits a pole at a non-positive integer";
    throw_domain(os.str());
  }
  const auto num = detail::signed_log_gamma(lambda + mu);
  const auto den = detail::signed_log_gamma(lambda);
  return static_cast<double>(num.sign * den.sign) *
         std::exp(num.log_abs - den.log_abs);
}

SeriesResult prabhakar_e(const MLParams& p, double z, const EvalConfig& cfg) {
  cfg.validate();
  if (z == 0.0) {
    // only the k = 0 term survives
    return SeriesResult{std::exp(-log_gamma(p.beta)), 1, 0.0, true};
  }
  const double log_abs_z = std::log(std::fabs(z));
  const double lg_gamma = log_gamma(p.gamma);
  auto log_term = [&](double k) {
    return std::lgamma(p.gamma + k) - lg_gamma + k * log_abs_z -
           std::lgamma(p.alpha * k + p.beta) - std::lgamma(k + 1.0);
  };
  return sum_log_series(log_term, z < 0.0, cfg);
}

SeriesResult two_param_ml(double alpha, double beta, double z,
                          const EvalConfig& cfg) {
  return prabhakar_e(MLParams(alpha, beta, 1.0), z, cfg);
}

SeriesResult one_param_ml(double alpha, double z, const EvalConfig& cfg) {
  return two_param_ml(alpha, 1.0, z, cfg);
}

SeriesResult kummer_1f1(double a, double b, double z, const EvalConfig& cfg) {
  cfg.validate();
  if (!(b > 0.0)) {
    std::ostringstream os;
    os << "kummer_1f1: b must be positive, got " << b;
    throw_domain(os.str());
  }
  if (z == 0.0) return SeriesResult{1.0, 1, 0.0, true};
  // terms via the exact multiplicative recurrence; handles sign changes and
  // terminating (polynomial) cases for non-positive integer a
  detail::KahanSum acc;
  double term = 1.0;
  double tail = 1.0;
  bool converged = false;
  int k = 0;
  while (k < cfg.max_terms) {
    acc.add(term);
    const double next =
        term * (a + k) * z / ((b + k) * (static_cast<double>(k) + 1.0));
    ++k;
    if (next == 0.0) {
      tail = 0.0;
      converged = true;
      break;
    }
    const double ratio = std::fabs(next) / std::fabs(term);
    if (ratio < 1.0) {
      tail = std::fabs(term) * ratio / (1.0 - ratio);
      if (std::fabs(term) <= cfg.rel_tol * std::fabs(acc.value()) &&
          tail <= cfg.rel_tol * std::max(1.0, std::fabs(acc.value()))) {
        converged = true;
        break;
      }
    } else {
      tail = std::fabs(next);
    }
    term = next;
  }
  return SeriesResult{acc.value(), k, tail, converged};
}

SeriesResult hlz_phi(const HLZParams& h, double z, double s,
                     const EvalConfig& cfg) {
  cfg.validate();
  if (!(h.lambda > 0.0)) {
    std::ostringstream os;
    os << "hlz_phi: lambda must be positive for Gamma-ratio Pochhammer "
          "evaluation, got "
       << h.lambda;
    throw_domain(os.str());
  }
  if (h.sigma > 0.0 && !(h.mu > 0.0)) {
    std::ostringstream os;
    os << "hlz_phi: mu must be positive when sigma > 0, got mu = " << h.mu;
    throw_domain(os.str());
  }
  if (h.classify(z, s) == HlzRegion::Divergent) {
    std::ostringstream os;
    const double excess = h.kappa - h.rho - h.sigma + 1.0;
    os << "hlz_phi: series diverges at z = " << z << ": ";
    if (excess < -1e-12) {
      os << "kappa - rho - sigma + 1 = " << excess << " < 0";
    } else {
      os << "kappa - rho - sigma = -1 and |z| = " << std::fabs(z)
         << " is not inside the disk of radius " << h.disk_radius()
         << " (boundary requires s + nu - lambda - mu > 1)";
    }
    throw_domain(os.str());
  }
  if (z == 0.0) return SeriesResult{std::pow(h.a, -s), 1, 0.0, true};
  const double log_abs_z = std::log(std::fabs(z));
  const double lg_lambda = log_gamma(h.lambda);
  const double lg_nu = log_gamma(h.nu);
  const double lg_mu = h.sigma > 0.0 ? log_gamma(h.mu) : 0.0;
  auto log_term = [&](double n) {
    double lt = std::lgamma(h.lambda + h.rho * n) - lg_lambda -
                std::lgamma(h.nu + h.kappa * n) + lg_nu -
                std::lgamma(n + 1.0) + n * log_abs_z -
                s * std::log(n + h.a);
    if (h.sigma > 0.0) lt += std::lgamma(h.mu + h.sigma * n) - lg_mu;
    return lt;
  };
  return sum_log_series(log_term, z < 0.0, cfg);
}

SeriesResult prabhakar_derivative(const MLParams& p, double z, int order,
                                  const EvalConfig& cfg) {
  if (order != 1 && order != 2) {
    std::ostringstream os;
    os << "prabhakar_derivative: order must be 1 or 2, got " << order;
    throw_domain(os.str());
  }
  if (order == 1) {
    SeriesResult r =
        prabhakar_e(MLParams(p.alpha, p.alpha + p.beta, p.gamma + 1.0), z, cfg);
    r.value *= p.gamma;
    r.tail_bound *= p.gamma;
    return r;
  }
  SeriesResult r = prabhakar_e(
      MLParams(p.alpha, 2.0 * p.alpha + p.beta, p.gamma + 2.0), z, cfg);
  const double factor = p.gamma * (p.gamma + 1.0);
  r.value *= factor;
  r.tail_bound *= factor;
  return r;
}

}  // namespace mlf
