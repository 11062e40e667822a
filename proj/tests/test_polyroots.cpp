#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cutoff_lab/oscillator.hpp"
#include "cutoff_lab/polyroots.hpp"
#include "oracles.hpp"

using namespace cutoff_lab;

namespace {

RecurrenceSpec make_spec(std::vector<double> phi, std::vector<double> init,
                         double eps = 0.001) {
  RecurrenceSpec spec;
  spec.p = static_cast<int>(phi.size());
  spec.phi = std::move(phi);
  spec.init = std::move(init);
  spec.eps = eps;
  return spec;
}

}  // namespace

TEST_CASE("characteristic polynomial transcribes the coefficients") {
  CHECK(characteristic_polynomial(make_spec({0.5}, {1.0})).coeffs ==
        std::vector<double>{1.0, -0.5});
  CHECK(characteristic_polynomial(make_spec({1.0, -0.25}, {0.0, 1.0})).coeffs ==
        std::vector<double>{1.0, -1.0, 0.25});
  // Oscillator gamma=2, kappa=1, h=0.5.
  RecurrenceSpec osc = discretize(2.0, 1.0, 0.5, 1.0);
  CHECK(characteristic_polynomial(osc).coeffs ==
        std::vector<double>{1.0, -1.0, 0.25});
}

TEST_CASE("spec invariants are enforced") {
  CHECK_THROWS_AS(make_spec({0.0}, {1.0}).validate(), ValidationError);
  CHECK_THROWS_AS(make_spec({0.5}, {1.0, 2.0}).validate(), ValidationError);
  CHECK_THROWS_AS(make_spec({0.5}, {1.0}, 0.0).validate(), ValidationError);
  CHECK_NOTHROW(make_spec({0.5}, {1.0}).validate());
}

TEST_CASE("find_roots: linear") {
  RootDecomposition dec = find_roots(PolyCoeffs{{1.0, -0.5}});
  REQUIRE(dec.q() == 1);
  CHECK(dec.groups[0].root == Complex(0.5, 0.0));
  CHECK(dec.groups[0].multiplicity == 1);
}

TEST_CASE("find_roots: double root clusters to one group") {
  RootDecomposition dec = find_roots(PolyCoeffs{{1.0, -1.0, 0.25}});
  REQUIRE(dec.q() == 1);
  CHECK(dec.groups[0].multiplicity == 2);
  CHECK(dec.groups[0].root.real() == doctest::Approx(0.5).epsilon(1e-7));
  CHECK(dec.groups[0].root.imag() == 0.0);
}

TEST_CASE("find_roots: conjugate pair of the oscillator") {
  RootDecomposition dec = find_roots(PolyCoeffs{{1.0, -1.5, 0.75}});
  REQUIRE(dec.q() == 2);
  CHECK(dec.groups[0].root.real() == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(std::abs(dec.groups[0].root.imag()) ==
        doctest::Approx(0.4330127018922193).epsilon(1e-12));
  CHECK(dec.groups[1].root == std::conj(dec.groups[0].root));
  CHECK(std::abs(dec.groups[0].root) ==
        doctest::Approx(0.8660254037844386).epsilon(1e-12));
  // Ascending principal argument breaks the modulus tie.
  CHECK(dec.groups[0].root.imag() < 0.0);
}

TEST_CASE("find_roots rejects malformed inputs") {
  CHECK_THROWS_AS(find_roots(PolyCoeffs{{2.0, 1.0}}), ValidationError);
  CHECK_THROWS_AS(find_roots(PolyCoeffs{{1.0, 0.0}}), ValidationError);
  CHECK_THROWS_AS(find_roots(PolyCoeffs{{1.0}}), ValidationError);
}

TEST_CASE("check_stability") {
  RootDecomposition dbl;
  dbl.groups = {{Complex(0.5, 0.0), 2}};
  StabilityReport rep = check_stability(dbl);
  CHECK(rep.stable);
  CHECK(rep.kappa == 0.5);
  CHECK(rep.margin == 0.5);

  RootDecomposition unit;
  unit.groups = {{Complex(1.0, 0.0), 1}};
  CHECK_FALSE(check_stability(unit).stable);

  RootDecomposition osc = find_roots(PolyCoeffs{{1.0, -1.5, 0.75}});
  CHECK(check_stability(osc).stable);
  CHECK(check_stability(osc).kappa ==
        doctest::Approx(0.8660254037844386).epsilon(1e-12));
}

TEST_CASE("reconstruction: expanding the groups recovers the coefficients") {
  std::mt19937_64 rng(12345);
  for (int trial = 0; trial < 50; ++trial) {
    auto rs = oracles::random_stable_spec(rng, 6);
    PolyCoeffs poly = characteristic_polynomial(rs.spec);
    RootDecomposition dec = find_roots(poly);
    CHECK(dec.total_multiplicity() == rs.spec.p);

    std::vector<Complex> flat;
    for (const auto& g : dec.groups)
      for (int k = 0; k < g.multiplicity; ++k) flat.push_back(g.root);
    std::vector<double> rebuilt = oracles::expand_poly(flat);
    REQUIRE(rebuilt.size() == poly.coeffs.size());
    double max_coeff = 1.0;
    for (double c : poly.coeffs) max_coeff = std::max(max_coeff, std::abs(c));
    for (std::size_t i = 0; i < rebuilt.size(); ++i)
      CHECK(std::abs(rebuilt[i] - poly.coeffs[i]) <= 1e-8 * max_coeff);
  }
}

TEST_CASE("conjugate closure holds exactly") {
  std::mt19937_64 rng(777);
  for (int trial = 0; trial < 50; ++trial) {
    auto rs = oracles::random_stable_spec(rng, 6);
    RootDecomposition dec = find_roots(characteristic_polynomial(rs.spec));
    for (const auto& g : dec.groups) {
      if (g.root.imag() == 0.0) continue;
      bool found = false;
      for (const auto& h : dec.groups)
        if (h.root == std::conj(g.root) && h.multiplicity == g.multiplicity)
          found = true;
      CHECK(found);
    }
  }
}

TEST_CASE("oscillator stability matches h in (0, gamma/kappa) when disc <= 0") {
  for (auto [gamma, kappa] : {std::pair{2.0, 1.0}, std::pair{1.0, 1.0}}) {
    const double h_max = gamma / kappa;
    for (int i = 1; i <= 19; ++i) {
      const double h = h_max * double(i) / 20.0;
      if (1.0 - gamma * h + kappa * h * h == 0.0) continue;  // degenerate phi_2
      RootDecomposition dec =
          find_roots(characteristic_polynomial(discretize(gamma, kappa, h, 1.0)));
      CHECK(check_stability(dec).stable);
    }
    for (double h : {h_max * 1.05, h_max * 1.5}) {
      RootDecomposition dec =
          find_roots(characteristic_polynomial(discretize(gamma, kappa, h, 1.0)));
      CHECK_FALSE(check_stability(dec).stable);
    }
  }
}
