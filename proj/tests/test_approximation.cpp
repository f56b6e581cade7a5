#include "catch_amalgamated.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "entire/approximation.hpp"
#include "support/oracles.hpp"

using Catch::Approx;
using namespace entire;

namespace {

const SpaceSpec kHardy = SpaceSpec::hardy(2);
const SpaceSpec kBergman = SpaceSpec::bergman(2);

}  // namespace

TEST_CASE("lower_bound", "[approximation]") {
  SECTION("Hardy(2), exp_scale(1), 4") {
    REQUIRE(lower_bound(kHardy, exp_scale(1), 4).log() == Approx(std::log(1.0 / 24.0)).epsilon(1e-14));
  }
  SECTION("polynomial of lower degree") {
    REQUIRE(lower_bound(kBergman, polynomial({1.0, 2.0}), 5).is_zero());
  }
  SECTION("Bergman(2), geometric(1/2), 2") {
    REQUIRE(lower_bound(kBergman, geometric(0.5), 2).linear() == Approx(0.25 / std::sqrt(3.0)).epsilon(1e-14));
  }
  SECTION("BMOA uses the bracket's lower end") {
    const auto v = monomial_norm(SpaceSpec::bmoa(), 3);
    REQUIRE(lower_bound(SpaceSpec::bmoa(), exp_scale(1), 3) == exp_scale(1).magnitude(3) * v.lower);
  }
}

TEST_CASE("upper_bound", "[approximation]") {
  SECTION("Hardy(2), geometric(1/2), 1") {
    REQUIRE(upper_bound(kHardy, geometric(0.5), 1).log() == Approx(0.0).margin(1e-14));
  }
  SECTION("polynomial past its degree") {
    REQUIRE(upper_bound(kBergman, polynomial({1.0, 2.0, 3.0}), 3).is_zero());
  }
  SECTION("Hardy(2), exp_scale(1), 3, budget 50") {
    REQUIRE(upper_bound(kHardy, exp_scale(1), 3, 50).linear() == Approx(0.218281828459045235).epsilon(1e-13));
  }
  SECTION("a slowly decaying tail is closed by the geometric remainder") {
    // geometric(0.99) in Hardy(2) with a 200-term budget: sum_{k>=0} 0.99^k = 100.
    REQUIRE(upper_bound(kHardy, geometric(0.99), 0, 200).linear() == Approx(100.0).epsilon(1e-10));
  }
  SECTION("a tail without a certified remainder reports the partial sum") {
    // Bergman ratios 0.99 sqrt((k+1)/(k+2)) increase toward 0.99.
    try {
      upper_bound(kBergman, geometric(0.99), 0, 200);
      FAIL("expected AccuracyError");
    } catch (const AccuracyError& e) {
      const double partial = static_cast<double>(oracle::series(
          [](int k) { return std::pow(0.99L, k) / std::sqrt(static_cast<long double>(k) + 1.0L); }, 0, 201));
      REQUIRE(e.best_estimate() == Approx(std::log(partial)).epsilon(1e-12));
    }
  }
}

TEST_CASE("exact_error", "[approximation]") {
  SECTION("Hardy(2), geometric(1/2), 1") {
    REQUIRE(exact_error(kHardy, geometric(0.5), 1).log() == Approx(std::log(1.0 / std::sqrt(3.0))).epsilon(1e-14));
  }
  SECTION("Hardy(2), exp_scale(1), 3, budget 60 against a 200-term sum") {
    const long double tail2 = oracle::series(
        [](int k) { return 1.0L / (oracle::factorial(k) * oracle::factorial(k)); }, 3, 200);
    const double ref = std::sqrt(static_cast<double>(tail2));
    REQUIRE(ref == Approx(0.172003785818996633).epsilon(1e-15));
    REQUIRE(exact_error(kHardy, exp_scale(1), 3, 60).linear() == Approx(ref).epsilon(1e-12));
  }
  SECTION("polynomial of lower degree") {
    REQUIRE(exact_error(kBergman, polynomial({1.0, 2.0}), 2).is_zero());
  }
  SECTION("geometric closed form r^n (1 - r^2)^(-1/2)") {
    for (double r : {0.3, 0.5, 0.9}) {
      for (Index n : {0, 1, 10, 150}) {
        const double expected = n * std::log(r) - 0.5 * std::log1p(-r * r);
        REQUIRE(exact_error(kHardy, geometric(r), n).log() == Approx(expected).epsilon(1e-9).margin(1e-12));
      }
    }
  }
  SECTION("Dirichlet(p = 1) tail") {
    const auto s = SpaceSpec::dirichlet(1, DirichletWeights::power(0));
    REQUIRE(exact_error(s, geometric(0.5), 2).linear() == Approx(0.5).epsilon(1e-13));
  }
  SECTION("non-separable space") {
    REQUIRE_THROWS_AS(exact_error(SpaceSpec::bloch(1), exp_scale(1), 2), UnsupportedOperation);
  }
}

TEST_CASE("approx_profile", "[approximation]") {
  SECTION("Hardy(2), exp_scale(1)") {
    const auto p = approx_profile(kHardy, exp_scale(1), 10, 100);
    REQUIRE(p.entries.size() == 11);
    for (const auto& e : p.entries) {
      REQUIRE(e.exact.has_value());
      REQUIRE(e.lower <= *e.exact);
      REQUIRE(*e.exact <= *e.upper);
    }
  }
  SECTION("BMOA gives bounds only") {
    const auto p = approx_profile(SpaceSpec::bmoa(), exp_scale(1), 10, 100);
    for (const auto& e : p.entries) {
      REQUIRE_FALSE(e.exact.has_value());
      REQUIRE(e.lower <= *e.upper);
    }
  }
  SECTION("integer polynomial") {
    const auto p = approx_profile(kHardy, polynomial({1.0, 1.0, 1.0}), 10);
    for (const auto& e : p.entries) {
      if (e.n >= 3) REQUIRE(e.exact->is_zero());
      else REQUIRE_FALSE(e.exact->is_zero());
    }
  }
  SECTION("failures mark entries instead of aborting") {
    const auto p = approx_profile(kBergman, geometric(0.99), 20, 50);
    REQUIRE(p.entries.size() == 21);
    REQUIRE(p.entries[0].status == EntryStatus::accuracy_failed);
    REQUIRE_FALSE(p.entries[0].upper.has_value());
    REQUIRE_FALSE(p.entries[0].note.empty());
    REQUIRE(p.entries[0].lower.is_finite());
  }
  SECTION("deterministic") {
    const auto a = approx_profile(kBergman, cos_sqrt(), 60);
    const auto b = approx_profile(kBergman, cos_sqrt(), 60);
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
      REQUIRE(a.entries[i].exact == b.entries[i].exact);
      REQUIRE(a.entries[i].upper == b.entries[i].upper);
    }
  }
}

TEST_CASE("sandwich, monotonicity and homogeneity", "[approximation][invariant]") {
  const std::vector<SpaceSpec> spaces = {kHardy, kBergman, SpaceSpec::bloch(1), SpaceSpec::bmoa(),
                                         SpaceSpec::dirichlet(2, DirichletWeights::power(-1))};
  const std::vector<CoefficientOracle> fs = {exp_scale(1), cos_sqrt(), synthetic(1, 1), power_order(2),
                                             geometric(0.5)};
  for (const auto& s : spaces) {
    for (const auto& f : fs) {
      INFO(s.to_string() << " " << f.name());
      const auto p = approx_profile(s, f, 200);
      const auto q = approx_profile(s, scaled(f, {-3.0, 4.0}), 200);
      for (std::size_t i = 0; i < p.entries.size(); ++i) {
        const auto& e = p.entries[i];
        REQUIRE(e.status == EntryStatus::ok);
        REQUIRE(e.lower.log() <= e.upper->log() + 1e-9);
        if (e.exact) {
          REQUIRE(e.lower.log() <= e.exact->log() + 1e-9);
          REQUIRE(e.exact->log() <= e.upper->log() + 1e-9);
        }
        if (i > 0) {
          const auto& prev = p.entries[i - 1];
          REQUIRE(e.upper->log() <= prev.upper->log() + 1e-12);
          if (e.exact) REQUIRE(e.exact->log() <= prev.exact->log() + 1e-12);
        }
        const auto& g = q.entries[i];
        if (!e.lower.is_zero()) REQUIRE(g.lower.log() == Approx(e.lower.log() + std::log(5.0)).margin(1e-12));
        REQUIRE(g.upper->log() == Approx(e.upper->log() + std::log(5.0)).margin(1e-12));
        if (e.exact) REQUIRE(g.exact->log() == Approx(e.exact->log() + std::log(5.0)).margin(1e-12));
      }
    }
  }
}

TEST_CASE("upper bound roots vanish for entire functions", "[approximation][invariant]") {
  const std::vector<SpaceSpec> spaces = {kHardy, kBergman, SpaceSpec::bloch(1), SpaceSpec::bmoa(),
                                         SpaceSpec::dirichlet(2, DirichletWeights::power(-1))};
  SECTION("at or below 0.1 at n = 500") {
    const std::vector<CoefficientOracle> fs = {exp_scale(1), exp_scale(2), cos_sqrt(), synthetic(1, 1),
                                               power_order(0.5), power_order(2)};
    for (const auto& s : spaces) {
      for (const auto& f : fs) {
        const double root = std::exp(upper_bound(s, f, 500).log() / 500.0);
        INFO(s.to_string() << " " << f.name() << " root " << root);
        REQUIRE(root <= 0.1);
      }
    }
  }
  SECTION("synthetic(2,1) decays like (2e/n)^(1/2)") {
    // |c_500|^(1/500) = (2e/500)^(1/2) = 0.1043 already exceeds 0.1; the roots
    // still go to zero at the predicted rate.
    for (const auto& s : spaces) {
      for (Index n : {500, 2000}) {
        const double root = std::exp(upper_bound(s, synthetic(2, 1), n).log() / static_cast<double>(n));
        INFO(s.to_string() << " n " << n << " root " << root);
        REQUIRE(root == Approx(std::sqrt(2 * std::numbers::e / n)).epsilon(0.02));
      }
    }
  }
}
