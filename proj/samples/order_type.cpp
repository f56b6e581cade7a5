// Order and type of a few entire functions, read off from how fast they can
// be approximated by polynomials in the Bergman space.

#include <cstdio>

#include "entire/entire.hpp"

int main() {
  using namespace entire;
  const auto space = SpaceSpec::bergman(2);
  std::printf("%-28s %8s %8s %8s %8s  %s\n", "function", "rho", "rho_hat", "sigma", "sigma_hat", "verdict");
  for (const auto& f : {exp_scale(1), exp_scale(3), cos_sqrt(), synthetic(1.5, 0.7), power_order(2)}) {
    const auto r = estimate(space, f);
    std::printf("%-28s %8.4f %8.4f %8.4f %8.4f  %s\n", f.name().c_str(), *f.metadata().order, r.rho_hat.value_or(0),
                *f.metadata().type, r.sigma_hat.value_or(0), to_string(r.verdict));
  }

  // A function with finite radius of convergence is told apart.
  EstimateOptions opt;
  opt.n_max = 500;
  const auto g = estimate(space, geometric(0.8), opt);
  std::printf("%-28s verdict %s\n", "geometric:r=0.8", to_string(g.verdict));
}
