#include "catch_amalgamated.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "entire/estimators.hpp"

using Catch::Approx;
using namespace entire;

namespace {

const SpaceSpec kHardy = SpaceSpec::hardy(2);
const SpaceSpec kBergman = SpaceSpec::bergman(2);

double root_at(const EntiretyResult& r, Index n) {
  for (auto [k, v] : r.roots) {
    if (k == n) return v;
  }
  FAIL("no root at n");
  return 0.0;
}

}  // namespace

TEST_CASE("entirety_indicator", "[estimators][entirety]") {
  SECTION("exp_scale(1) in Hardy(2)") {
    const auto r = entirety_indicator(approx_profile(kHardy, exp_scale(1), 500));
    // (E_500)^(1/500) ~ (1/500!)^(1/500) ~ e / 500.
    REQUIRE(root_at(r, 500) == Approx(0.0054).margin(2e-4));
    REQUIRE(r.verdict == Verdict::entire);
  }
  SECTION("geometric(0.9) in Hardy(2)") {
    const auto r = entirety_indicator(approx_profile(kHardy, geometric(0.9), 500));
    const double expected = 0.9 * std::pow(1 - 0.81, -0.5 / 500);
    REQUIRE(root_at(r, 500) == Approx(expected).epsilon(1e-9));
    REQUIRE(r.verdict == Verdict::not_entire);
  }
  SECTION("polynomial") {
    const auto r = entirety_indicator(approx_profile(kBergman, polynomial({1.0, 2.0, 3.0}), 40));
    REQUIRE(r.verdict == Verdict::entire);
    for (auto [n, v] : r.roots) {
      if (n >= 3) REQUIRE(v == 0.0);
    }
  }
  SECTION("geometric(0.99) is decided by the slope rule") {
    const auto r = entirety_indicator(approx_profile(SpaceSpec::dirichlet(2, DirichletWeights::power(-1)),
                                                     geometric(0.99), 500));
    REQUIRE(r.verdict == Verdict::not_entire);
  }
  SECTION("empty profile") {
    ApproxProfile empty{kHardy, "x", 0, std::nullopt, true, {}};
    REQUIRE_THROWS_AS(entirety_indicator(empty), DomainError);
  }
}

TEST_CASE("order_estimate", "[estimators][order]") {
  SECTION("synthetic(1,1) in Hardy(2)") {
    const auto est = order_estimate(approx_profile(kHardy, synthetic(1, 1), 2000));
    REQUIRE(*est.extrapolated >= 0.95);
    REQUIRE(*est.extrapolated <= 1.05);
    REQUIRE(est.window_lo == 1000);
    REQUIRE(est.window_hi == 2000);
  }
  SECTION("power_order(2) in Hardy(2)") {
    const auto est = order_estimate(approx_profile(kHardy, power_order(2), 2000));
    REQUIRE(*est.extrapolated >= 1.9);
    REQUIRE(*est.extrapolated <= 2.1);
  }
  SECTION("cos_sqrt in Bergman(2)") {
    const auto est = order_estimate(approx_profile(kBergman, cos_sqrt(), 2000));
    REQUIRE(*est.extrapolated >= 0.475);
    REQUIRE(*est.extrapolated <= 0.525);
  }
  SECTION("raw sequence definition") {
    const auto p = approx_profile(kHardy, exp_scale(1), 100);
    const auto est = order_estimate(p);
    for (auto [n, rho_n] : est.sequence) {
      const auto& e = p.entries[static_cast<std::size_t>(n)];
      const double expected = n * std::log(static_cast<double>(n)) / (e.monomial_norm.log() - e.exact->log());
      REQUIRE(rho_n == Approx(expected).epsilon(1e-14));
    }
  }
  SECTION("too few usable entries") {
    REQUIRE_THROWS_AS(order_estimate(approx_profile(kHardy, exp_scale(1), 20)), InsufficientDataError);
    REQUIRE_THROWS_AS(order_estimate(approx_profile(kHardy, polynomial({1.0, 1.0}), 200)), InsufficientDataError);
  }
  SECTION("invariant under f -> lambda f") {
    for (const auto& f : {exp_scale(1), synthetic(2, 1), cos_sqrt()}) {
      const double base = *order_estimate(approx_profile(kHardy, f, 2000)).extrapolated;
      for (double log_lambda : {-10.0, -3.0, 4.0, 10.0}) {
        const auto g = scaled(f, std::polar(std::exp(log_lambda), 0.3));
        const double moved = *order_estimate(approx_profile(kHardy, g, 2000)).extrapolated;
        INFO(f.name() << " log lambda " << log_lambda);
        REQUIRE(std::abs(moved - base) < 1e-3);
      }
    }
  }
}

TEST_CASE("type_estimate", "[estimators][type]") {
  SECTION("synthetic(1,1) in Hardy(2), rho = 1") {
    const double s = type_estimate(approx_profile(kHardy, synthetic(1, 1), 2000), 1.0).sigma_hat;
    REQUIRE(s >= 0.98);
    REQUIRE(s <= 1.05);
  }
  SECTION("exp_scale(2) in Hardy(2), rho = 1") {
    const double s = type_estimate(approx_profile(kHardy, exp_scale(2), 2000), 1.0).sigma_hat;
    REQUIRE(s >= 1.9);
    REQUIRE(s <= 2.1);
  }
  SECTION("power_order(1) in Hardy(2), rho = 1") {
    const double s = type_estimate(approx_profile(kHardy, power_order(1), 2000), 1.0).sigma_hat;
    REQUIRE(s >= 0.33);
    REQUIRE(s <= 0.41);
  }
  SECTION("rho must be positive") {
    const auto p = approx_profile(kHardy, exp_scale(1), 100);
    REQUIRE_THROWS_AS(type_estimate(p, 0.0), DomainError);
    REQUIRE_THROWS_AS(type_estimate(p, -1.0), DomainError);
  }
}

TEST_CASE("coefficient formulas", "[estimators][coefficients]") {
  SECTION("coefficient_order") {
    REQUIRE(coefficient_order(exp_scale(1), 2000) == Approx(1.0).margin(0.05));
    REQUIRE(coefficient_order(cos_sqrt(), 2000) == Approx(0.5).margin(0.025));
    REQUIRE(coefficient_order(synthetic(2, 0.5), 2000) == Approx(2.0).margin(0.1));
    REQUIRE_THROWS_AS(coefficient_order(exp_scale(1), 63), DomainError);
  }
  SECTION("coefficient_type") {
    // (n/e)|c_n|^(1/n) = 1 for every n, so the final-half max is 1.
    REQUIRE(coefficient_type(synthetic(1, 1), 1.0, 2000) == Approx(1.0).epsilon(1e-12));
    REQUIRE(coefficient_type(exp_scale(3), 1.0, 2000) == Approx(3.0).epsilon(0.01));
    REQUIRE(coefficient_type(power_order(2), 2.0, 2000) == Approx(1.0 / (2.0 * std::numbers::e)).epsilon(1e-12));
    REQUIRE_THROWS_AS(coefficient_type(exp_scale(1), 0.0, 100), DomainError);
  }
}

TEST_CASE("cross_check", "[estimators][crosscheck]") {
  SECTION("synthetic(1,1), Hardy(2)") {
    const auto r = estimate(kHardy, synthetic(1, 1));
    const auto c = cross_check(r, 0.05);
    REQUIRE(c.pass);
    REQUIRE(c.reason.empty());
  }
  SECTION("exp_scale(1), Bergman(2)") {
    REQUIRE(cross_check(estimate(kBergman, exp_scale(1)), 0.05).pass);
  }
  SECTION("missing rho_hat") {
    EstimateReport r;
    r.rho_coeff = 1.0;
    const auto c = cross_check(r, 0.05);
    REQUIRE_FALSE(c.pass);
    REQUIRE(c.reason == "rho_hat absent");
  }
}

TEST_CASE("estimate report", "[estimators][report]") {
  SECTION("declared rho is recorded") {
    EstimateOptions opt;
    opt.n_max = 600;
    opt.rho = 1.0;
    const auto r = estimate(kHardy, exp_scale(1), opt);
    REQUIRE(r.rho_source == "declared");
    REQUIRE(*r.rho_used == 1.0);
    REQUIRE(r.source == "exact");
    REQUIRE_FALSE(r.mu_flag);
  }
  SECTION("non-entire functions skip order and type") {
    EstimateOptions opt;
    opt.n_max = 300;
    const auto r = estimate(kHardy, geometric(0.5), opt);
    REQUIRE(r.verdict == Verdict::not_entire);
    REQUIRE_FALSE(r.rho_hat);
    REQUIRE_FALSE(r.notes.empty());
  }
  SECTION("non-separable spaces fall back to the upper bound") {
    EstimateOptions opt;
    opt.n_max = 400;
    const auto r = estimate(SpaceSpec::bloch(1), exp_scale(1), opt);
    REQUIRE(r.source == "upper");
    REQUIRE(r.verdict == Verdict::entire);
  }
  SECTION("upper bounds are a sound surrogate in Hardy(2)") {
    const std::vector<CoefficientOracle> fs = {exp_scale(1), exp_scale(2), cos_sqrt(), synthetic(1, 1),
                                               synthetic(2, 1), power_order(0.5), power_order(2)};
    for (const auto& f : fs) {
      const auto p = approx_profile(kHardy, f, 2000);
      EstimateOptions exact_opt, upper_opt;
      exact_opt.rho = upper_opt.rho = *f.metadata().order;
      upper_opt.use_exact = false;
      const auto a = estimate(p, f, exact_opt);
      const auto b = estimate(p, f, upper_opt);
      INFO(f.name());
      REQUIRE(std::abs(*a.rho_hat - *b.rho_hat) <= 0.02 * *a.rho_hat);
      REQUIRE(std::abs(*a.sigma_hat - *b.sigma_hat) <= 0.03 * *a.sigma_hat);
    }
  }
}
