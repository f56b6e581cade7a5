// Integer-coefficient approximation: impossible in the Hardy space for a
// non-integer function, but the lacunary series sum z^(n_k) built against
// the Bergman norms is approximated as well as we like.

#include <cmath>
#include <cstdio>

#include "entire/entire.hpp"

int main() {
  using namespace entire;
  const auto hardy = SpaceSpec::hardy(2), bergman = SpaceSpec::bergman(2);

  std::printf("exp in H^2: distance to integer polynomials of degree < n\n");
  for (Index n : {1, 2, 3, 10, 50}) {
    std::printf("  n = %-3lld  >= %.6f   rounding achieves %.6f\n", static_cast<long long>(n),
                obstruction_lower_bound(hardy, exp_scale(1), n).linear(),
                integer_approx_error(hardy, exp_scale(1), n).linear());
  }

  const auto lac = lacunary_construct(bergman, 8);
  std::printf("\nlacunary series in A^2\n");
  for (std::size_t k = 0; k < lac.exponents.size(); ++k) {
    const Index e = lac.exponents[k];
    std::printf("  n_%zu = %-6lld ||z^n|| = %.6f   error after it = %.3e\n", k + 1, static_cast<long long>(e),
                monomial_norm(bergman, e).value.linear(), integer_approx_error(bergman, lac.oracle, e + 1).linear());
  }

  try {
    lacunary_construct(hardy, 1);
  } catch (const InfeasibleSpaceError& e) {
    std::printf("\nH^2: %s\n", e.what());
  }
}
