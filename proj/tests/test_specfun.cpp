#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mlf/specfun.hpp"
#include "testutil.hpp"

using namespace mlf;
using testutil::rel_err;

namespace {

// lnGamma reference values, 40-digit mpmath, rounded to 20 digits
struct LgRef {
  double x;
  double lg;
};
constexpr LgRef kLogGammaRefs[] = {
    {1e-3, 6.9071788853838536617},
    {5e-3, 5.2954517999821278603},
    {0.02, 3.9008045160983759511},
    {0.1, 2.252712651734205902},
    {0.25, 1.2880225246980774574},
    {0.5, 0.57236494292470008707},
    {0.75, 0.20328095143129537148},
    {1.0, 0.0},
    {1.2, -0.085374090003315836884},
    {1.46163, -0.12148629053362353021},
    {2.0, 0.0},
    {3.5, 1.2009736023470742248},
    {5.0, 3.1780538303479456196},
    {8.0, 8.5251613610654143002},
    {12.0, 17.502307845873885839},
    {20.0, 39.339884187199494036},
    {35.0, 88.580827542197678804},
    {50.0, 144.56574394634488601},
    {77.7, 259.26043689759798506},
    {100.0, 359.13420536957539878},
    {123.456, 469.6055471299294835},
    {150.0, 600.00947055532742811},
    {170.0, 701.43726380873708535},
};

}  // namespace

TEST_CASE("log_gamma matches high-precision references") {
  // |log_gamma(x) - lnGamma(x)| is the relative error of exp(log_gamma)
  // vs Gamma; 2 eps |lnGamma| is the double-representation floor for
  // large arguments.
  for (const auto& r : kLogGammaRefs) {
    const double got = log_gamma(r.x);
    const double tol =
        std::max(1e-14, 2.0 * 2.220446049250313e-16 * std::fabs(r.lg));
    CHECK_MESSAGE(std::fabs(got - r.lg) <= tol, "x = ", r.x, " got ", got);
  }
  CHECK(log_gamma(1.0) == 0.0);
  CHECK(rel_err(log_gamma(5.0), std::log(24.0)) < 1e-15);
  // the Gamma minimum reported in the source material
  CHECK(std::fabs(std::exp(log_gamma(1.46163)) - 0.885603) < 1e-6);
}

TEST_CASE("log_gamma rejects non-positive arguments") {
  CHECK_THROWS_AS(log_gamma(0.0), std::domain_error);
  CHECK_THROWS_AS(log_gamma(-3.0), std::domain_error);
}

TEST_CASE("pochhammer conventions and branches") {
  CHECK(pochhammer(0.0, 0.0) == 1.0);
  CHECK(pochhammer(3.0, 2.0) == 12.0);
  CHECK(rel_err(pochhammer(0.5, 0.5), 1.0 / std::sqrt(std::numbers::pi)) <
        1e-14);
  // integer product branch works for any real lambda
  CHECK(pochhammer(-2.0, 3.0) == 0.0);
  CHECK(pochhammer(-2.5, 2.0) == doctest::Approx(3.75).epsilon(1e-15));
  CHECK(pochhammer(7.3, 0.0) == 1.0);
  // Gamma-ratio branch against tgamma, including a negative non-integer base
  CHECK(rel_err(pochhammer(-1.5, 3.2),
                std::tgamma(1.7) / std::tgamma(-1.5)) < 1e-13);
  CHECK(rel_err(pochhammer(2.5, -1.25),
                std::tgamma(1.25) / std::tgamma(2.5)) < 1e-13);
  // a negative non-integer target is still a well-defined Gamma ratio
  CHECK(rel_err(pochhammer(1.0, -3.5), std::tgamma(-2.5)) < 1e-13);
  // poles of the Gamma ratio
  CHECK_THROWS_AS(pochhammer(-1.0, 0.5), std::domain_error);
  CHECK_THROWS_AS(pochhammer(0.5, -0.5), std::domain_error);
  CHECK_THROWS_AS(pochhammer(1.0, -3.0), std::domain_error);
}

TEST_CASE("prabhakar_e special-case reductions") {
  const MLParams exp_case(1.0, 1.0, 1.0);
  auto r = prabhakar_e(exp_case, 1.0);
  CHECK(r.converged);
  CHECK(rel_err(r.value, std::exp(1.0)) < 1e-13);
  CHECK(r.terms_used <= 30);

  // z = 0 keeps only the k = 0 term, 1/Gamma(beta)
  for (double beta : {0.4, 1.0, 2.7}) {
    auto r0 = prabhakar_e(MLParams(0.9, beta, 1.7), 0.0);
    CHECK(r0.converged);
    CHECK(rel_err(r0.value, 1.0 / std::tgamma(beta)) < 1e-14);
    CHECK(r0.tail_bound == 0.0);
  }

  // E_{2,1}(z) = cosh(sqrt z)
  CHECK(rel_err(prabhakar_e(MLParams(2.0, 1.0, 1.0), 1.0).value,
                std::cosh(1.0)) < 1e-13);
  // E_{1/2,1}(z) = exp(z^2) erfc(-z)
  CHECK(rel_err(prabhakar_e(MLParams(0.5, 1.0, 1.0), 1.0).value,
                std::exp(1.0) * std::erfc(-1.0)) < 1e-12);
}

TEST_CASE("prabhakar_e negative argument (alternating series)") {
  // E_{1,1}(-2) = exp(-2); relaxed target for cancellation
  CHECK(rel_err(prabhakar_e(MLParams(1.0, 1.0, 1.0), -2.0).value,
                std::exp(-2.0)) < 1e-10);
  // E_{2,1}(-1) = cos(1)
  CHECK(rel_err(prabhakar_e(MLParams(2.0, 1.0, 1.0), -1.0).value,
                std::cos(1.0)) < 1e-10);
}

TEST_CASE("prabhakar_e reports non-convergence instead of lying") {
  EvalConfig tiny;
  tiny.max_terms = 5;
  const auto r = prabhakar_e(MLParams(0.4, 1.0, 1.0), 30.0, tiny);
  CHECK_FALSE(r.converged);
  CHECK(r.terms_used == 5);
}

TEST_CASE("prabhakar_e tail bound covers the discarded mass") {
  const struct {
    double alpha, beta, gamma, z;
  } cases[] = {
      {1.0, 1.0, 1.0, 1.0},
      {0.5, 1.3, 2.2, 2.0},
      {2.4, 0.7, 0.4, 5.0},
      {0.8, 1.2, 2.0, 1.0},
  };
  for (const auto& c : cases) {
    const auto r = prabhakar_e(MLParams(c.alpha, c.beta, c.gamma), c.z);
    REQUIRE(r.converged);
    // discarded mass from a much longer independent summation
    const long double full = testutil::prabhakar_direct(
        c.alpha, c.beta, c.gamma, c.z, 4 * r.terms_used + 64);
    const long double head = testutil::prabhakar_direct(
        c.alpha, c.beta, c.gamma, c.z, r.terms_used);
    const double discarded = static_cast<double>(full - head);
    CHECK(discarded >= 0.0);
    CHECK(discarded <= r.tail_bound * (1.0 + 1e-9) + 1e-300);
    CHECK(r.tail_bound <= 1e-13 * std::max(1.0, std::fabs(r.value)));
  }
}

TEST_CASE("reduction chain: gamma = 1 and beta = gamma = 1") {
  for (double alpha : {0.4, 1.0, 2.3}) {
    for (double beta : {0.5, 1.0, 2.0}) {
      for (double z : {0.3, 1.7}) {
        const auto full = prabhakar_e(MLParams(alpha, beta, 1.0), z);
        const auto two = two_param_ml(alpha, beta, z);
        CHECK(full.value == two.value);  // delegation must be exact
        const long double direct =
            testutil::two_param_ml_direct(alpha, beta, z, 200);
        CHECK(rel_err(two.value, static_cast<double>(direct)) < 1e-12);
      }
    }
    const auto one = one_param_ml(alpha, 0.9);
    CHECK(rel_err(one.value,
                  static_cast<double>(testutil::classical_ml_direct(
                      alpha, 0.9L, 200))) < 1e-12);
  }
}

TEST_CASE("two_param_ml examples") {
  CHECK(rel_err(two_param_ml(1.0, 2.0, 1.0).value, std::exp(1.0) - 1.0) <
        1e-13);
  CHECK(two_param_ml(1.0, 1.0, 0.0).value == 1.0);
  CHECK(rel_err(two_param_ml(2.0, 2.0, 1.0).value, std::sinh(1.0)) < 1e-13);
}

TEST_CASE("series terms positive and partial sums monotone for z > 0") {
  const MLParams p(0.7, 1.1, 1.8);
  const double z = 2.5;
  long double prev_sum = 0.0L;
  for (int terms = 1; terms <= 60; ++terms) {
    const long double s = testutil::prabhakar_direct(0.7L, 1.1L, 1.8L, z, terms);
    CHECK(s >= prev_sum);  // non-decreasing; ties once terms drop below eps
    if (terms <= 30) CHECK(s > prev_sum);
    prev_sum = s;
  }
  CHECK(rel_err(prabhakar_e(p, z).value, static_cast<double>(prev_sum)) <
        1e-10);
}

TEST_CASE("kummer_1f1 basics") {
  CHECK(kummer_1f1(2.3, 1.7, 0.0).value == 1.0);
  CHECK(rel_err(kummer_1f1(1.0, 1.0, 1.0).value, std::exp(1.0)) < 1e-13);
  // 30-term direct partial sum; the tail beyond 30 terms is ~1e-40 here
  const long double direct = testutil::kummer_direct(2.0L, 3.0L, 0.5L, 30);
  CHECK(rel_err(kummer_1f1(2.0, 3.0, 0.5).value,
                static_cast<double>(direct)) < 1e-13);
  // terminating polynomial case, a a non-positive integer
  const auto poly = kummer_1f1(-3.0, 2.0, 1.7);
  CHECK(poly.converged);
  CHECK(poly.tail_bound == 0.0);
  CHECK(rel_err(poly.value,
                static_cast<double>(testutil::kummer_direct(-3.0L, 2.0L,
                                                            1.7L, 8))) <
        1e-14);
  // negative argument
  CHECK(rel_err(kummer_1f1(1.0, 1.0, -2.0).value, std::exp(-2.0)) < 1e-11);
  CHECK_THROWS_AS(kummer_1f1(1.0, 0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(kummer_1f1(1.0, -2.0, 1.0), std::domain_error);
}

TEST_CASE("hlz_phi: z = 0 and closed forms") {
  const HLZParams h(1.5, 0.0, 2.0, 1.0, 0.0, 1.0, 2.0);
  const auto r0 = hlz_phi(h, 0.0, 1.5);
  CHECK(rel_err(r0.value, std::pow(2.0, -1.5)) < 1e-14);

  // sigma = 0 keeps the 1/n!; with lambda = nu = 1, rho = kappa = 1 the
  // Pochhammers cancel and sum z^n/(n!(n+1)) = (e^z - 1)/z at s = 1
  const HLZParams hs0(1.0, 0.0, 1.0, 1.0, 0.0, 1.0, 1.0);
  CHECK(rel_err(hlz_phi(hs0, 0.5, 1.0).value,
                (std::exp(0.5) - 1.0) / 0.5) < 1e-13);

  // the classic Lerch transcendent needs sigma = mu = 1 so that (1)_n
  // cancels the n!: Phi(z, 1, 1) = -ln(1-z)/z, Phi(z, 0, 1) = 1/(1-z)
  const HLZParams lerch(1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0);
  CHECK(rel_err(hlz_phi(lerch, 0.5, 1.0).value, 2.0 * std::log(2.0)) < 1e-12);
  CHECK(rel_err(hlz_phi(lerch, 0.25, 0.0).value, 4.0 / 3.0) < 1e-12);
}

TEST_CASE("hlz_phi convergence-region classification") {
  // kappa - rho - sigma + 1 = alpha > 0: entire
  const HLZParams entire(2.0, 0.0, 1.3, 1.0, 0.0, 0.8, 1.0);
  CHECK(entire.classify(100.0, 1.0) == HlzRegion::AllZ);

  // rho = 2, sigma = 0, kappa = 1: critical, delta = 2^-2 * 1 * 1 = 1/4
  const HLZParams crit(1.0, 0.0, 1.0, 2.0, 0.0, 1.0, 1.0);
  CHECK(crit.disk_radius() == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(crit.classify(0.2, 1.0) == HlzRegion::Disk);
  CHECK(crit.classify(0.3, 1.0) == HlzRegion::Divergent);
  CHECK_THROWS_AS(hlz_phi(crit, 0.3, 1.0), std::domain_error);
  // the Disk value: sum C(2n,n) z^n / (n+1)^s converges for |z| < 1/4
  const auto disk = hlz_phi(crit, 0.2, 0.0);
  CHECK(disk.converged);
  // sum C(2n,n) z^n = 1/sqrt(1-4z)
  CHECK(rel_err(disk.value, 1.0 / std::sqrt(1.0 - 0.8)) < 1e-11);

  // boundary: rho = sigma = kappa = 1, delta = 1, |z| = 1 needs
  // s + nu - lambda - mu > 1; terms reduce to 1/(n+1)^s -> zeta(3) at s = 3
  const HLZParams bnd(1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0);
  CHECK(bnd.classify(1.0, 3.0) == HlzRegion::Boundary);
  CHECK(bnd.classify(1.0, 0.5) == HlzRegion::Divergent);
  EvalConfig loose;
  loose.rel_tol = 1e-4;
  const auto zeta3 = hlz_phi(bnd, 1.0, 3.0, loose);
  CHECK(zeta3.converged);
  CHECK(rel_err(zeta3.value, 1.2020569031595943) < 1e-3);

  // divergent exponent deficit
  const HLZParams div(1.0, 0.0, 1.0, 3.0, 0.0, 1.0, 1.0);
  CHECK(div.classify(0.1, 1.0) == HlzRegion::Divergent);
}

TEST_CASE("hlz_phi domain errors name the constraint") {
  CHECK_THROWS_WITH_AS(
      hlz_phi(HLZParams(-1.0, 0.0, 1.0, 1.0, 0.0, 1.0, 1.0), 0.5, 1.0),
      doctest::Contains("lambda"), std::domain_error);
  CHECK_THROWS_AS(HLZParams(1.0, 0.0, -1.0, 1.0, 0.0, 1.0, 1.0),
                  std::domain_error);
  CHECK_THROWS_AS(HLZParams(1.0, 0.0, 1.0, 0.0, 0.0, 1.0, 1.0),
                  std::domain_error);
}

TEST_CASE("prabhakar_derivative identities") {
  const MLParams p(1.0, 1.0, 1.0);
  CHECK(rel_err(prabhakar_derivative(p, 1.0, 1).value, std::exp(1.0)) < 1e-13);
  CHECK(rel_err(prabhakar_derivative(p, 1.0, 2).value, std::exp(1.0)) < 1e-13);
  CHECK_THROWS_AS(prabhakar_derivative(p, 1.0, 3), std::domain_error);
  CHECK_THROWS_AS(prabhakar_derivative(p, 1.0, 0), std::domain_error);

  // finite-difference cross-check at the spec's spot point
  const MLParams q(0.7, 1.3, 2.1);
  auto f = [&](double z) { return prabhakar_e(q, z).value; };
  const double fd = testutil::central_diff5(f, 0.8, 0.02);
  CHECK(rel_err(prabhakar_derivative(q, 0.8, 1).value, fd) < 1e-6);
}

TEST_CASE("derivative matches finite differences across the parameter box") {
  for (double alpha : {0.3, 1.2, 3.0}) {
    for (double beta : {0.3, 1.5, 3.0}) {
      for (double gamma : {0.3, 1.1, 3.0}) {
        const MLParams p(alpha, beta, gamma);
        for (double z : {0.1, 1.0, 5.0}) {
          auto f = [&](double x) { return prabhakar_e(p, x).value; };
          // step sized against the local log-derivative so the O(h^4 L^4)
          // truncation term stays below target even when E ~ exp(z^{1/a})
          const double d = 0.005 * z;
          const double log_slope = std::fabs(
              (std::log(f(z + d)) - std::log(f(z - d))) / (2.0 * d));
          const double h =
              std::min(z / 4.0, 0.03 / std::max(1.0, log_slope));
          const double fd = testutil::central_diff5(f, z, h);
          const double an = prabhakar_derivative(p, z, 1).value;
          CHECK_MESSAGE(rel_err(an, fd) < 1e-6, "alpha=", alpha,
                        " beta=", beta, " gamma=", gamma, " z=", z);
        }
      }
    }
  }
}

TEST_CASE("EvalConfig validation") {
  EvalConfig bad;
  bad.rel_tol = 0.0;
  CHECK_THROWS_AS(prabhakar_e(MLParams(1, 1, 1), 1.0, bad), std::domain_error);
  bad.rel_tol = 1.5;
  CHECK_THROWS_AS(prabhakar_e(MLParams(1, 1, 1), 1.0, bad), std::domain_error);
  bad.rel_tol = 1e-13;
  bad.max_terms = 0;
  CHECK_THROWS_AS(prabhakar_e(MLParams(1, 1, 1), 1.0, bad), std::domain_error);
}

TEST_CASE("MLParams validation") {
  CHECK_THROWS_AS(MLParams(0.0, 1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(MLParams(1.0, -1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(MLParams(1.0, 1.0, 0.0), std::domain_error);
}
