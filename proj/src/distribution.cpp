#include "mlf/distribution.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "mlf/combinatorics.hpp"

namespace mlf {

namespace {

constexpr double kBruteRelFloor = 1e-16;  // brute-force truncation threshold
constexpr int kBruteMinTerms = 50;
constexpr double kSampleTailMass = 1e-12;

double uniform01(std::mt19937_64& rng) {
  // 53-bit mantissa draw; independent of library distribution internals
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

MLDistribution::MLDistribution(MLParams params, double t, EvalConfig cfg)
    : params_(params), t_(t), cfg_(cfg) {
  cfg_.validate();
  if (!(t > 0.0) || !std::isfinite(t)) {
    std::ostringstream os;
    os << "MLDistribution: t must be positive and finite, got " << t;
    throw std::domain_error(os.str());
  }
  z_ = std::pow(t_, params_.alpha);
  log_z_ = params_.alpha * std::log(t_);
  lg_gamma_ = log_gamma(params_.gamma);

  const SeriesResult norm = prabhakar_e(params_, z_, cfg_);
  if (!norm.converged) {
    std::ostringstream os;
    os << "MLDistribution: normalizing series did not converge within "
       << cfg_.max_terms << " terms at t^alpha = " << z_;
    throw NonConvergenceError(os.str());
  }
  norm_ = norm.value;
  norm_tail_ = norm.tail_bound;
  log_norm_ = std::log(norm_);
  if (!(norm_tail_ / norm_ < 1e-10)) {
    throw NonConvergenceError(
        "MLDistribution: residual tail mass of the normalizer exceeds 1e-10");
  }

  // Poisson-reweighting denominator: sum_n (gamma)_n/Gamma(alpha n + beta)
  // * Pois(t^alpha; n), summed on its own (not via prabhakar_e).
  {
    auto log_w = [&](int n) {
      return std::lgamma(params_.gamma + n) - lg_gamma_ -
             std::lgamma(params_.alpha * n + params_.beta) + n * log_z_ - z_ -
             std::lgamma(static_cast<double>(n) + 1.0);
    };
    detail::KahanSum den;
    double prev = std::exp(log_w(0));
    den.add(prev);
    for (int n = 1; n < 100000; ++n) {
      const double w = std::exp(log_w(n));
      den.add(w);
      if (n >= kBruteMinTerms && w < prev &&
          w < kBruteRelFloor * den.value()) {
        break;
      }
      prev = w;
    }
    reweight_log_den_ = std::log(den.value());
  }

  // sampling cap: smallest k with residual tail mass < 1e-12
  {
    detail::KahanSum cum;
    double p = std::exp(log_pmf(0));
    cum.add(p);
    int k = 0;
    while (1.0 - cum.value() >= kSampleTailMass) {
      p *= mass_ratio(k);
      ++k;
      cum.add(p);
      if (k > 1000000) {
        throw NonConvergenceError(
            "MLDistribution: could not locate the 1e-12 tail cutoff");
      }
    }
    sample_cap_ = k;
  }
}

double MLDistribution::log_pmf(int k) const {
  return std::lgamma(params_.gamma + k) - lg_gamma_ + k * log_z_ -
         std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(params_.alpha * k + params_.beta) - log_norm_;
}

double MLDistribution::mass_ratio(int k) const {
  return (params_.gamma + k) / (static_cast<double>(k) + 1.0) * z_ *
         std::exp(std::lgamma(params_.alpha * k + params_.beta) -
                  std::lgamma(params_.alpha * (k + 1) + params_.beta));
}

double MLDistribution::pmf(int k) const {
  if (k < 0) return 0.0;
  return std::exp(log_pmf(k));
}

double MLDistribution::cdf(int k) const {
  if (k < 0) return 0.0;
  detail::KahanSum acc;
  double p = std::exp(log_pmf(0));
  acc.add(p);
  for (int j = 0; j < k; ++j) {
    p *= mass_ratio(j);
    acc.add(p);
  }
  return std::min(acc.value(), 1.0);
}

std::vector<int> MLDistribution::sample(std::size_t n, std::uint64_t seed) const {
  std::vector<int> out;
  out.reserve(n);
  std::mt19937_64 rng(seed);
  const double p0 = std::exp(log_pmf(0));
  for (std::size_t i = 0; i < n; ++i) {
    const double u = uniform01(rng);
    int k = 0;
    double p = p0;
    double cum = p;
    while (cum < u) {
      if (k >= sample_cap_) {
        std::ostringstream os;
        os << "MLDistribution::sample: draw walked past the tail cap k = "
           << sample_cap_ << " (residual mass < 1e-12)";
        throw std::runtime_error(os.str());
      }
      p *= mass_ratio(k);
      ++k;
      cum += p;
    }
    out.push_back(k);
  }
  return out;
}

MomentResult MLDistribution::moment_raw(int s) const {
  if (s < 0 || s > comb::kMaxOrder) {
    std::ostringstream os;
    os << "moment_raw: order must lie in [0, " << comb::kMaxOrder << "], got "
       << s;
    throw std::domain_error(os.str());
  }
  detail::KahanSum acc;
  double err = 0.0;
  for (int j = 0; j <= s; ++j) {
    const double stirling = static_cast<double>(comb::stirling2(s, j));
    if (stirling == 0.0) continue;
    const double coef =
        pochhammer(params_.gamma, j) * stirling * std::pow(z_, j);
    const SeriesResult e = prabhakar_e(
        MLParams(params_.alpha, params_.alpha * j + params_.beta,
                 params_.gamma + j),
        z_, cfg_);
    if (!e.converged) {
      throw NonConvergenceError("moment_raw: shifted Prabhakar series failed");
    }
    acc.add(coef * e.value);
    err += std::fabs(coef) * e.tail_bound;
  }
  const double value = acc.value() / norm_;
  err = err / norm_ + std::fabs(value) * (norm_tail_ / norm_);
  return MomentResult{static_cast<double>(s), value,
                      MomentMethod::ClosedFormN3, err};
}

MomentResult MLDistribution::moment_factorial(int s) const {
  if (s < 1 || s > comb::kMaxOrder) {
    std::ostringstream os;
    os << "moment_factorial: order must lie in [1, " << comb::kMaxOrder
       << "], got " << s;
    throw std::domain_error(os.str());
  }
  const std::vector<std::int64_t> c = comb::falling_factorial_expansion(s);
  detail::KahanSum acc;
  double err = 0.0;
  for (int r = 1; r <= s; ++r) {
    const double coef = static_cast<double>(c[static_cast<std::size_t>(r - 1)]);
    const MomentResult m = moment_raw(r);
    acc.add(coef * m.value);
    err += std::fabs(coef) * m.est_error;
  }
  return MomentResult{static_cast<double>(s), acc.value(),
                      MomentMethod::ClosedFormN3, err};
}

MomentResult MLDistribution::moment_fractional(double s) const {
  if (!(s > 0.0)) {
    std::ostringstream os;
    os << "moment_fractional: order must be positive (the representation "
          "fails at s = 0), got "
       << s;
    throw std::domain_error(os.str());
  }
  const HLZParams h(params_.gamma + 1.0, 0.0, params_.alpha + params_.beta,
                    1.0, 0.0, params_.alpha, 1.0);
  const SeriesResult phi = hlz_phi(h, z_, 1.0 - s, cfg_);
  if (!phi.converged) {
    throw NonConvergenceError("moment_fractional: HLZ series failed");
  }
  const double front =
      params_.gamma * z_ /
      (norm_ * std::tgamma(params_.alpha + params_.beta));
  const double value = front * phi.value;
  const double err =
      front * phi.tail_bound + std::fabs(value) * (norm_tail_ / norm_);
  return MomentResult{s, value, MomentMethod::HlzN7, err};
}

MomentResult MLDistribution::moment_brute(double s) const {
  if (!(s >= 0.0)) {
    throw std::domain_error("moment_brute: order must be non-negative");
  }
  detail::KahanSum acc;
  double p = std::exp(log_pmf(0));
  double term = s == 0.0 ? p : 0.0;  // 0^s
  acc.add(term);
  double prev_term = term;
  double est = p;
  for (int k = 1; k < 200000; ++k) {
    p *= mass_ratio(k - 1);
    term = std::pow(static_cast<double>(k), s) * p;
    acc.add(term);
    if (k >= kBruteMinTerms && term < prev_term &&
        term < kBruteRelFloor * acc.value()) {
      const double r = prev_term > 0.0 ? term / prev_term : 0.0;
      est = r < 1.0 ? term * r / (1.0 - r) : term;
      return MomentResult{s, acc.value(), MomentMethod::BruteForce, est};
    }
    prev_term = term;
  }
  throw NonConvergenceError("moment_brute: summation did not settle");
}

MomentResult MLDistribution::moment_factorial_brute(int s) const {
  if (s < 1) {
    throw std::domain_error("moment_factorial_brute: order must be >= 1");
  }
  detail::KahanSum acc;
  double p = std::exp(log_pmf(0));
  double prev_term = 0.0;
  for (int k = 1; k < 200000; ++k) {
    p *= mass_ratio(k - 1);
    double ff = 1.0;  // k(k-1)...(k-s+1); zero below k = s
    for (int i = 0; i < s; ++i) ff *= static_cast<double>(k - i);
    if (k < s) ff = 0.0;
    const double term = ff * p;
    acc.add(term);
    if (k >= kBruteMinTerms && term < prev_term &&
        term < kBruteRelFloor * std::max(acc.value(), 1e-300)) {
      const double r = prev_term > 0.0 ? term / prev_term : 0.0;
      const double est = r < 1.0 ? term * r / (1.0 - r) : term;
      return MomentResult{static_cast<double>(s), acc.value(),
                          MomentMethod::BruteForce, est};
    }
    prev_term = term;
  }
  throw NonConvergenceError("moment_factorial_brute: summation did not settle");
}

std::complex<double> MLDistribution::chf(double x) const {
  // one pass accumulates both E(t e^{ix}) and the normalizer E(t); the
  // magnitude sequence is the real-argument term sequence, which dominates
  // the complex terms, so the real-z truncation rule applies unchanged
  const double log_t = std::log(t_);
  auto log_mag = [&](double k) {
    return std::lgamma(params_.gamma + k) - lg_gamma_ + k * log_t -
           std::lgamma(k + 1.0) -
           std::lgamma(params_.alpha * k + params_.beta);
  };
  std::complex<double> num(0.0, 0.0);
  detail::KahanSum den;
  double mag = std::exp(log_mag(0.0));
  for (int k = 0; k < cfg_.max_terms; ++k) {
    num += mag * std::polar(1.0, k * x);
    den.add(mag);
    const double next = std::exp(log_mag(static_cast<double>(k) + 1.0));
    if (next == 0.0) return num / den.value();
    const double ratio = next / mag;
    if (ratio < 1.0 && mag <= cfg_.rel_tol * den.value() &&
        mag * ratio / (1.0 - ratio) <=
            cfg_.rel_tol * std::max(1.0, den.value())) {
      return num / den.value();
    }
    mag = next;
  }
  throw NonConvergenceError("chf: Prabhakar series did not converge");
}

double MLDistribution::poisson_reweight_pmf(int k) const {
  if (k < 0) return 0.0;
  const double log_w = std::lgamma(params_.gamma + k) - lg_gamma_ -
                       std::lgamma(params_.alpha * k + params_.beta) +
                       k * log_z_ - z_ -
                       std::lgamma(static_cast<double>(k) + 1.0);
  return std::exp(log_w - reweight_log_den_);
}

}  // namespace mlf
