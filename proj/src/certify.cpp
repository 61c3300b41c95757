#include "mlf/certify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mlf/combinatorics.hpp"

#ifdef MLF_HAVE_OPENMP
#include <omp.h>
#endif

namespace mlf::certify {

namespace {

double eval_prabhakar(const MLParams& p, double z, const EvalConfig& cfg) {
  const SeriesResult r = prabhakar_e(p, z, cfg);
  if (!r.converged) {
    std::ostringstream os;
    os << "certify: Prabhakar series (alpha=" << p.alpha << ", beta=" << p.beta
       << ", gamma=" << p.gamma << ") failed to converge at z = " << z;
    throw NonConvergenceError(os.str());
  }
  return r.value;
}

double eval_kummer(double a, double b, double z, const EvalConfig& cfg) {
  const SeriesResult r = kummer_1f1(a, b, z, cfg);
  if (!r.converged) {
    std::ostringstream os;
    os << "certify: 1F1(" << a << "; " << b << "; " << z
       << ") failed to converge";
    throw NonConvergenceError(os.str());
  }
  return r.value;
}

[[noreturn]] void hypothesis_error(const char* what, const std::string& cond) {
  std::ostringstream os;
  os << what << ": hypothesis violated: " << cond;
  throw std::domain_error(os.str());
}

}  // namespace

double gamma_minimizer_t0() {
  static const double t0 = [] {
    // golden-section minimization of lgamma on (1, 2)
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = 1.0, hi = 2.0;
    double x1 = hi - gr * (hi - lo);
    double x2 = lo + gr * (hi - lo);
    double f1 = std::lgamma(x1), f2 = std::lgamma(x2);
    while (hi - lo > 1e-12) {
      if (f1 < f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - gr * (hi - lo);
        f1 = std::lgamma(x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + gr * (hi - lo);
        f2 = std::lgamma(x2);
      }
    }
    return (lo + hi) / 2.0;
  }();
  return t0;
}

GammaMin gamma_min(double alpha, double beta, int p) {
  if (p < 0 || p > 2) {
    std::ostringstream os;
    os << "gamma_min: p must be 0, 1 or 2, got " << p;
    throw std::domain_error(os.str());
  }
  if (!(alpha > 0.0) || !(beta > 0.0)) {
    throw std::domain_error("gamma_min: alpha and beta must be positive");
  }
  const double x_star = (gamma_minimizer_t0() - beta) / alpha;
  long cands[4] = {static_cast<long>(std::floor(x_star)) - 1,
                   static_cast<long>(std::floor(x_star)),
                   static_cast<long>(std::floor(x_star)) + 1, p};
  GammaMin best{p, std::numeric_limits<double>::infinity(), -1};
  for (long n : cands) {
    n = std::max<long>(n, p);
    const double v = std::exp(std::lgamma(alpha * static_cast<double>(n) + beta));
    if (v < best.value || (v == best.value && (best.argmin_n < 0 || n < best.argmin_n))) {
      best.value = v;
      best.argmin_n = n;
    }
  }
  return best;
}

double turan_difference(const MLParams& p, double t, const EvalConfig& cfg) {
  if (!(t > 0.0)) throw std::domain_error("turan_difference: t must be positive");
  const double za = std::pow(t, p.alpha);
  const double e1 =
      eval_prabhakar(MLParams(p.alpha, p.alpha + p.beta, p.gamma + 1.0), za, cfg);
  const double e0 = eval_prabhakar(p, za, cfg);
  const double e2 = eval_prabhakar(
      MLParams(p.alpha, 2.0 * p.alpha + p.beta, p.gamma + 2.0), za, cfg);
  return e1 * e1 - e0 * e2;
}

double laguerre_difference(const MLParams& p, double t, const EvalConfig& cfg) {
  if (!(t > 0.0)) throw std::domain_error("laguerre_difference: t must be positive");
  const double e = eval_prabhakar(p, t, cfg);
  const SeriesResult r1 = prabhakar_derivative(p, t, 1, cfg);
  const SeriesResult r2 = prabhakar_derivative(p, t, 2, cfg);
  if (!r1.converged || !r2.converged) {
    throw NonConvergenceError("laguerre_difference: derivative series failed");
  }
  return -t * t * r1.value * r1.value +
         e * (t * r1.value + t * t * r2.value);
}

Margin check_moment_ineq_n9(const MLParams& p, double t, const EvalConfig& cfg) {
  const double za = std::pow(t, p.alpha);
  const double e0 = eval_prabhakar(p, za, cfg);
  const double e1 =
      eval_prabhakar(MLParams(p.alpha, p.alpha + p.beta, p.gamma + 1.0), za, cfg);
  const double e2 = eval_prabhakar(
      MLParams(p.alpha, 2.0 * p.alpha + p.beta, p.gamma + 2.0), za, cfg);
  const double lhs = e0 * (e1 + za * e2);
  const double rhs = p.gamma * za * (e1 * e1 - e0 * e2);
  return Margin{lhs - rhs, std::fabs(lhs)};
}

Margin check_lemma1_bounds(const MLParams& p, double t, Lemma1Bound which,
                           const EvalConfig& cfg) {
  const double za = std::pow(t, p.alpha);
  if (which == Lemma1Bound::N10) {
    if (!(t > 0.0 && t < 1.0)) {
      std::ostringstream os;
      os << "N10 requires t in (0,1), got t = " << t;
      hypothesis_error("check_lemma1_bounds", os.str());
    }
    const double g0 = gamma_min(p.alpha, p.beta, 0).value;
    const double bound = 1.0 / (g0 * std::pow(1.0 - za, p.gamma));
    return Margin{bound - eval_prabhakar(p, za, cfg), std::fabs(bound)};
  }
  if (!(p.alpha >= 1.0)) {
    std::ostringstream os;
    os << "N11 requires alpha >= 1, got alpha = " << p.alpha;
    hypothesis_error("check_lemma1_bounds", os.str());
  }
  if (!(p.beta >= gamma_minimizer_t0())) {
    std::ostringstream os;
    os << "N11 requires beta >= t0 ~ " << gamma_minimizer_t0()
       << ", got beta = " << p.beta;
    hypothesis_error("check_lemma1_bounds", os.str());
  }
  const double bound =
      eval_kummer(p.gamma, p.beta, za, cfg) / std::tgamma(p.beta);
  return Margin{bound - eval_prabhakar(p, za, cfg), std::fabs(bound)};
}

Margin check_turan_bound_thm3(const MLParams& p, double t, BoundBranch branch,
                              const EvalConfig& cfg) {
  const double za = std::pow(t, p.alpha);
  double bound;
  if (branch == BoundBranch::TIn01) {
    if (!(t > 0.0 && t < 1.0)) {
      std::ostringstream os;
      os << "Theorem 3 first branch requires t in (0,1), got t = " << t;
      hypothesis_error("check_turan_bound_thm3", os.str());
    }
    const double g0 = gamma_min(p.alpha, p.beta, 0).value;
    const double g1 = gamma_min(p.alpha, p.beta, 1).value;
    const double g2 = gamma_min(p.alpha, p.beta, 2).value;
    bound = 1.0 / (p.gamma * g0 * za * std::pow(1.0 - za, 2.0 * p.gamma + 1.0)) *
            (1.0 / g1 + za / (g2 * (1.0 - za)));
  } else {
    if (!(p.alpha >= 1.0)) {
      hypothesis_error("check_turan_bound_thm3",
                       "Kummer branch requires alpha >= 1");
    }
    if (!(p.beta >= gamma_minimizer_t0())) {
      hypothesis_error("check_turan_bound_thm3",
                       "Kummer branch requires beta >= t0 ~ 1.46163");
    }
    const double f0 = eval_kummer(p.gamma, p.beta, za, cfg);
    const double f1 = eval_kummer(p.gamma + 1.0, p.alpha + p.beta, za, cfg);
    const double f2 =
        eval_kummer(p.gamma + 2.0, 2.0 * p.alpha + p.beta, za, cfg);
    bound = f0 / (p.gamma * std::tgamma(p.beta) * za) *
            (f1 / std::tgamma(p.alpha + p.beta) +
             za * f2 / std::tgamma(2.0 * p.alpha + p.beta));
  }
  return Margin{bound - turan_difference(p, t, cfg), std::fabs(bound)};
}

Margin check_laguerre_positivity(const MLParams& p, double t,
                                 const EvalConfig& cfg) {
  const double e = eval_prabhakar(p, t, cfg);
  const SeriesResult r1 = prabhakar_derivative(p, t, 1, cfg);
  const SeriesResult r2 = prabhakar_derivative(p, t, 2, cfg);
  if (!r1.converged || !r2.converged) {
    throw NonConvergenceError("check_laguerre_positivity: derivative failed");
  }
  const double d1 = r1.value, d2 = r2.value;
  const double value = -t * t * d1 * d1 + e * (t * d1 + t * t * d2);
  const double scale = t * t * d1 * d1 +
                       std::fabs(e) * (t * std::fabs(d1) + t * t * std::fabs(d2));
  return Margin{value, scale};
}

Margin check_laguerre_bound_thm4(const MLParams& p, double t,
                                 BoundBranch branch, const EvalConfig& cfg) {
  double bound;
  if (branch == BoundBranch::TIn01) {
    if (!(t > 0.0 && t < 1.0)) {
      std::ostringstream os;
      os << "O6 first branch requires t in (0,1), got t = " << t;
      hypothesis_error("check_laguerre_bound_thm4", os.str());
    }
    const double g0 = gamma_min(p.alpha, p.beta, 0).value;
    const double g1 = gamma_min(p.alpha, p.beta, 1).value;
    bound = p.gamma /
            (g0 * g1 * t * std::pow(1.0 - t, 2.0 * p.gamma + 1.0));
  } else {
    if (!(p.alpha >= 1.0)) {
      hypothesis_error("check_laguerre_bound_thm4",
                       "Kummer branch requires alpha >= 1");
    }
    if (!(p.beta >= gamma_minimizer_t0())) {
      hypothesis_error("check_laguerre_bound_thm4",
                       "Kummer branch requires beta >= t0 ~ 1.46163");
    }
    bound = p.gamma * eval_kummer(p.gamma, p.beta, t, cfg) *
            eval_kummer(p.gamma + 1.0, p.alpha + p.beta, t, cfg) /
            (t * std::tgamma(p.beta) * std::tgamma(p.alpha + p.beta));
  }
  return Margin{bound - laguerre_difference(p, t, cfg), std::fabs(bound)};
}

RecurrenceResiduals check_recurrences_prop2(const MLParams& p, double t,
                                            const EvalConfig& cfg) {
  if (!(t > 0.0)) {
    throw std::domain_error("check_recurrences_prop2: t must be positive");
  }
  const double a = p.alpha, b = p.beta, g = p.gamma;
  const double e_b = eval_prabhakar(p, t, cfg);
  const double e_b1 = eval_prabhakar(MLParams(a, b + 1.0, g), t, cfg);
  const double e_b2 = eval_prabhakar(MLParams(a, b + 2.0, g), t, cfg);
  const double e_s1 = eval_prabhakar(MLParams(a, a + b + 1.0, g + 1.0), t, cfg);
  const double e_s2 =
      eval_prabhakar(MLParams(a, 2.0 * a + b + 2.0, g + 2.0), t, cfg);

  const double term1 = a * g * t * e_s1;
  const double term2 = b * e_b1;
  const double residual1 = term1 - e_b + term2;
  const double scale1 = std::fabs(term1) + std::fabs(e_b) + std::fabs(term2);

  const double term3 = a * a * g * (g + 1.0) * t * t * e_s2;
  const double term4 = (a + 2.0 * b + 1.0) * e_b1;
  const double term5 = (a + b + 1.0) * (b + 1.0) * e_b2;
  const double residual2 = term3 - e_b + term4 - term5;
  const double scale2 =
      std::fabs(term3) + std::fabs(e_b) + std::fabs(term4) + std::fabs(term5);
  return RecurrenceResiduals{residual1, scale1, residual2, scale2};
}

Margin check_corollary1(const MLParams& p, double t, int s,
                        const EvalConfig& cfg) {
  if (s < 1 || s > comb::kMaxOrder) {
    std::ostringstream os;
    os << "check_corollary1: s must lie in [1, " << comb::kMaxOrder
       << "] (the identity fails at s = 0), got " << s;
    throw std::domain_error(os.str());
  }
  if (!(t > 0.0)) {
    throw std::domain_error("check_corollary1: t must be positive");
  }
  const double za = std::pow(t, p.alpha);
  const HLZParams h(p.gamma + 1.0, 0.0, p.alpha + p.beta, 1.0, 0.0, p.alpha,
                    1.0);
  const SeriesResult phi = hlz_phi(h, za, 1.0 - static_cast<double>(s), cfg);
  if (!phi.converged) {
    throw NonConvergenceError("check_corollary1: HLZ series failed");
  }
  detail::KahanSum rhs_sum;
  for (int j = 0; j <= s; ++j) {
    const double stirling = static_cast<double>(comb::stirling2(s, j));
    if (stirling == 0.0) continue;
    const double coef = pochhammer(p.gamma, j) * stirling * std::pow(za, j);
    rhs_sum.add(coef * eval_prabhakar(
                           MLParams(p.alpha, p.alpha * j + p.beta, p.gamma + j),
                           za, cfg));
  }
  const double rhs = std::tgamma(p.alpha + p.beta) / (p.gamma * za) *
                     rhs_sum.value();
  return Margin{-std::fabs(phi.value - rhs), std::fabs(phi.value)};
}

Margin check_remark3(const MLParams& p, double t, const EvalConfig& cfg) {
  if (!(t > 0.0)) {
    throw std::domain_error("check_remark3: t must be positive");
  }
  const double tau = std::pow(t, 1.0 / p.alpha);  // so that tau^alpha = t
  const double m9 = check_moment_ineq_n9(p, tau, cfg).value;
  const double e = eval_prabhakar(p, t, cfg);
  const SeriesResult r1 = prabhakar_derivative(p, t, 1, cfg);
  const SeriesResult r2 = prabhakar_derivative(p, t, 2, cfg);
  if (!r1.converged || !r2.converged) {
    throw NonConvergenceError("check_remark3: derivative series failed");
  }
  const double m_x2 =
      e * (r1.value + t * r2.value) - t * r1.value * r1.value;
  return Margin{-std::fabs(m_x2 - p.gamma * m9), std::fabs(m_x2)};
}

std::string_view claim_name(Claim c) {
  switch (c) {
    case Claim::N9: return "n9";
    case Claim::N10: return "n10";
    case Claim::N11: return "n11";
    case Claim::Thm3A: return "thm3a";
    case Claim::Thm3B: return "thm3b";
    case Claim::Laguerre: return "laguerre";
    case Claim::O6A: return "o6a";
    case Claim::O6B: return "o6b";
    case Claim::Prop2: return "prop2";
    case Claim::Cor1: return "cor1";
    case Claim::Remark3: return "remark3";
  }
  return "?";
}

std::optional<Claim> claim_from_name(std::string_view name) {
  for (Claim c : all_claims()) {
    if (claim_name(c) == name) return c;
  }
  return std::nullopt;
}

const std::vector<Claim>& all_claims() {
  static const std::vector<Claim> claims{
      Claim::N9,   Claim::N10,      Claim::N11,  Claim::Thm3A,
      Claim::Thm3B, Claim::Laguerre, Claim::O6A, Claim::O6B,
      Claim::Prop2, Claim::Cor1,     Claim::Remark3};
  return claims;
}

void GridSpec::validate() const {
  auto check = [](const Range& r, const char* name) {
    if (r.steps < 1) {
      std::ostringstream os;
      os << "GridSpec: " << name << ".steps must be >= 1, got " << r.steps;
      throw std::domain_error(os.str());
    }
    if (!(r.lo > 0.0)) {
      std::ostringstream os;
      os << "GridSpec: " << name << ".lo must be positive, got " << r.lo;
      throw std::domain_error(os.str());
    }
    if (r.steps > 1 && !(r.lo < r.hi)) {
      std::ostringstream os;
      os << "GridSpec: " << name << " needs lo < hi for steps > 1, got ["
         << r.lo << ", " << r.hi << "]";
      throw std::domain_error(os.str());
    }
  };
  check(alpha, "alpha");
  check(beta, "beta");
  check(gamma, "gamma");
  check(t, "t");
}

GridSpec default_grid() {
  return GridSpec{{0.3, 3.0, 7}, {0.3, 3.0, 7}, {0.3, 3.0, 7},
                  {0.05, 1.9, 12}, ConstraintFilter::None};
}

namespace {

std::vector<double> linspace(const Range& r) {
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(r.steps));
  if (r.steps == 1) {
    v.push_back(r.lo);
    return v;
  }
  const double step = (r.hi - r.lo) / static_cast<double>(r.steps - 1);
  for (int i = 0; i < r.steps; ++i) {
    v.push_back(r.lo + step * static_cast<double>(i));
  }
  return v;
}

}  // namespace

std::vector<GridPoint> grid_points(const GridSpec& grid) {
  grid.validate();
  const auto as = linspace(grid.alpha);
  const auto bs = linspace(grid.beta);
  const auto gs = linspace(grid.gamma);
  const auto ts = linspace(grid.t);
  std::vector<GridPoint> pts;
  pts.reserve(as.size() * bs.size() * gs.size() * ts.size());
  for (double a : as)
    for (double b : bs)
      for (double g : gs)
        for (double t : ts) {
          const GridPoint q{a, b, g, t};
          if (point_satisfies(grid.constraint_filter, q)) pts.push_back(q);
        }
  return pts;
}

ConstraintFilter claim_filter(Claim c) {
  switch (c) {
    case Claim::N10:
    case Claim::Thm3A:
    case Claim::O6A:
      return ConstraintFilter::TIn01;
    case Claim::N11:
    case Claim::Thm3B:
    case Claim::O6B:
      return ConstraintFilter::AlphaGe1BetaGeT0;
    default:
      return ConstraintFilter::None;
  }
}

bool point_satisfies(ConstraintFilter f, const GridPoint& q) {
  switch (f) {
    case ConstraintFilter::None:
      return true;
    case ConstraintFilter::TIn01:
      return q.t > 0.0 && q.t <= 1.0 - 1e-3;
    case ConstraintFilter::AlphaGe1BetaGeT0:
      return q.alpha >= 1.0 && q.beta >= gamma_minimizer_t0();
  }
  return false;
}

double relative_margin(Claim c, const GridPoint& q, const EvalConfig& cfg) {
  const MLParams p(q.alpha, q.beta, q.gamma);
  switch (c) {
    case Claim::N9:
      return check_moment_ineq_n9(p, q.t, cfg).relative();
    case Claim::N10:
      return check_lemma1_bounds(p, q.t, Lemma1Bound::N10, cfg).relative();
    case Claim::N11:
      return check_lemma1_bounds(p, q.t, Lemma1Bound::N11, cfg).relative();
    case Claim::Thm3A:
      return check_turan_bound_thm3(p, q.t, BoundBranch::TIn01, cfg).relative();
    case Claim::Thm3B:
      return check_turan_bound_thm3(p, q.t, BoundBranch::Kummer, cfg).relative();
    case Claim::Laguerre:
      return check_laguerre_positivity(p, q.t, cfg).relative();
    case Claim::O6A:
      return check_laguerre_bound_thm4(p, q.t, BoundBranch::TIn01, cfg).relative();
    case Claim::O6B:
      return check_laguerre_bound_thm4(p, q.t, BoundBranch::Kummer, cfg).relative();
    case Claim::Prop2: {
      const RecurrenceResiduals r = check_recurrences_prop2(p, q.t, cfg);
      return -std::max(std::fabs(r.residual1) / r.scale1,
                       std::fabs(r.residual2) / r.scale2);
    }
    case Claim::Cor1: {
      double worst = std::numeric_limits<double>::infinity();
      for (int s = 1; s <= 3; ++s) {
        worst = std::min(worst, check_corollary1(p, q.t, s, cfg).relative());
      }
      return worst;
    }
    case Claim::Remark3:
      return check_remark3(p, q.t, cfg).relative();
  }
  return std::numeric_limits<double>::quiet_NaN();
}

namespace {

double guarded_margin(Claim c, const GridPoint& q, const EvalConfig& cfg) {
  try {
    return relative_margin(c, q, cfg);
  } catch (const std::exception&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

}  // namespace

std::vector<double> sweep_margins_serial(Claim c,
                                         const std::vector<GridPoint>& pts,
                                         const EvalConfig& cfg) {
  std::vector<double> out(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    out[i] = guarded_margin(c, pts[i], cfg);
  }
  return out;
}

std::vector<double> sweep_margins_parallel(Claim c,
                                           const std::vector<GridPoint>& pts,
                                           const EvalConfig& cfg, int threads) {
#ifdef MLF_HAVE_OPENMP
  std::vector<double> out(pts.size());
  const long n = static_cast<long>(pts.size());
  if (threads > 0) {
#pragma omp parallel for schedule(dynamic, 8) num_threads(threads)
    for (long i = 0; i < n; ++i) {
      out[static_cast<std::size_t>(i)] =
          guarded_margin(c, pts[static_cast<std::size_t>(i)], cfg);
    }
  } else {
#pragma omp parallel for schedule(dynamic, 8)
    for (long i = 0; i < n; ++i) {
      out[static_cast<std::size_t>(i)] =
          guarded_margin(c, pts[static_cast<std::size_t>(i)], cfg);
    }
  }
  return out;
#else
  (void)threads;
  return sweep_margins_serial(c, pts, cfg);
#endif
}

std::vector<CertificateReport> run_certification(
    const GridSpec& grid, const std::vector<Claim>& claims, double tol,
    int threads, const EvalConfig& cfg) {
  grid.validate();
  if (!(tol > 0.0)) {
    throw std::domain_error("run_certification: tol must be positive");
  }
  const std::vector<GridPoint> base = grid_points(grid);
  std::vector<CertificateReport> reports;
  reports.reserve(claims.size());
  for (Claim c : claims) {
    std::vector<GridPoint> pts;
    pts.reserve(base.size());
    const ConstraintFilter f = claim_filter(c);
    for (const GridPoint& q : base) {
      if (point_satisfies(f, q)) pts.push_back(q);
    }
    if (pts.empty()) {
      std::ostringstream os;
      os << "run_certification: grid is empty after applying the hypothesis "
            "filter of claim '"
         << claim_name(c) << "'";
      throw std::domain_error(os.str());
    }
    const std::vector<double> margins =
        threads == 1 ? sweep_margins_serial(c, pts, cfg)
                     : sweep_margins_parallel(c, pts, cfg, threads);
    CertificateReport rep;
    rep.name = std::string(claim_name(c));
    rep.points_checked = static_cast<long>(pts.size());
    rep.tolerance = tol;
    for (std::size_t i = 0; i < margins.size(); ++i) {
      const double m = margins[i];
      if (std::isnan(m)) {
        std::ostringstream os;
        os << "run_certification: evaluation of claim '" << claim_name(c)
           << "' failed at (alpha=" << pts[i].alpha << ", beta=" << pts[i].beta
           << ", gamma=" << pts[i].gamma << ", t=" << pts[i].t << ")";
        throw NonConvergenceError(os.str());
      }
      if (m >= -tol) ++rep.points_passed;
      if (m < rep.worst_margin) {
        rep.worst_margin = m;
        rep.worst_point = pts[i];
      }
    }
    reports.push_back(std::move(rep));
  }
  return reports;
}

}  // namespace mlf::certify
