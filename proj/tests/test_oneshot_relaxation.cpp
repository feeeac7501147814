#include <doctest.h>

#include <cmath>
#include <vector>

#include "oranopt/rng.hpp"
#include "oranopt/scenario.hpp"

#include "relaxed_problem.hpp"

using namespace oranopt;
using solvers::detail::RelaxedProblem;

namespace {

model::Scenario small_instance(std::uint64_t seed) {
  scenario::GenParams p;
  p.n_ues = 2;
  p.n_orus = 2;
  p.horizon = 2;
  p.payload_kb = {1.0, 100.0};
  p.rate_bps = {50.0, 100.0};
  p.battery_joules = {5.0e5, 2.0e6};
  p.seed = seed;
  return scenario::generate(p);
}

}  // namespace

TEST_CASE("penalized gradient matches central differences") {
  // The penalty is built from squared hinges, so it is continuously
  // differentiable everywhere, including across hinge boundaries.
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto s = small_instance(seed);
    const double alpha = rng::uniform01(seed, 51);
    RelaxedProblem rp(s, alpha, 1e-2);
    const int n = rp.n_vars();

    std::vector<double> z(n);
    for (int k = 0; k < n; ++k) {
      z[k] = -3.0 * rng::uniform01(seed, 52, k);  // interior points
    }
    const double mu = std::pow(10.0, static_cast<double>(seed % 4));

    std::vector<double> grad;
    rp.eval(z, mu, &grad);

    const double h = 1e-6;
    for (int k = 0; k < n; ++k) {
      auto z_hi = z;
      auto z_lo = z;
      z_hi[k] += h;
      z_lo[k] -= h;
      const double fd =
          (rp.eval(z_hi, mu, nullptr) - rp.eval(z_lo, mu, nullptr)) / (2.0 * h);
      const double scale = std::max({1.0, std::abs(fd), std::abs(grad[k])});
      CAPTURE(seed);
      CAPTURE(k);
      CHECK(std::abs(grad[k] - fd) <= 1e-5 * scale);
    }
  }
}

TEST_CASE("penalized value decomposes into objective plus penalties") {
  const auto s = small_instance(9);
  RelaxedProblem rp(s, 0.5, 1e-2);
  std::vector<double> z(rp.n_vars(), -1.0);

  const double f0 = rp.eval(z, 0.0, nullptr);
  const double f1 = rp.eval(z, 1.0, nullptr);
  const double f2 = rp.eval(z, 2.0, nullptr);
  CHECK(std::isfinite(f0));
  // Penalties scale linearly in the weight.
  CHECK(f2 - f1 == doctest::Approx(f1 - f0).epsilon(1e-9));
  CHECK(f1 >= f0);
  CHECK(rp.relaxed_objective(z) == f0);
}

TEST_CASE("a one-hot feasible point carries zero penalty") {
  // Uniform rates and generous budgets: device i on radio unit i with the
  // cheapest cipher satisfies every constraint, so only the objective
  // remains and the penalty weight drops out.
  std::vector<model::UserEquipment> ues(
      2, model::UserEquipment{2e9, 1e12, 1.7e7, {4096, 4096}});
  std::vector<model::RadioUnit> orus(2, model::RadioUnit{3e9, 0.0, 1});
  Grid3<double> rates(2, 2, 2, 100.0);
  const model::Scenario s(std::move(ues), std::move(orus), 2, std::move(rates),
                          4.0, 7.0);

  RelaxedProblem rp(s, 0.3, 1e-2);
  std::vector<double> z(rp.n_vars(), -40.0);
  for (int i = 0; i < 2; ++i) {
    for (int t = 0; t < 2; ++t) {
      z[rp.x_var(i, t, i)] = 0.0;   // log(1)
      z[rp.a_var(i, t, 0)] = 0.0;   // cheapest cipher
    }
  }
  const double f0 = rp.eval(z, 0.0, nullptr);
  const double f_stiff = rp.eval(z, 1e6, nullptr);
  CHECK(f_stiff == doctest::Approx(f0).epsilon(1e-9));

  // And the relaxed objective at that point equals the discrete objective
  // of the corresponding assignment.
  auto a = problem::uniform_assignment(2, 2, 0, 0);
  a.oru_of(1, 0) = 1;
  a.oru_of(1, 1) = 1;
  const auto report = problem::objective(a, s, 0.3);
  CHECK(f0 == doctest::Approx(report.total).epsilon(1e-9));
}
