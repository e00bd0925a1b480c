#include <cmath>
#include <random>

#include "doctest.h"
#include "spp/transfer_matrix.hpp"
#include "spp/unit_cell.hpp"

using namespace spp;

namespace {

// random matrix of the Hermitian symmetry class, built from a random cell
TransferMatrix random_cell_matrix(std::mt19937& rng) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  EnergyPoint at = EnergyPoint::from_k(0.1 + 14.9 * u01(rng));
  if (u01(rng) < 0.5) return delta_matrix({-20.0 + 40.0 * u01(rng)}, at);
  return rect_matrix({-20.0 + 40.0 * u01(rng), 0.2 + 1.8 * u01(rng)}, at);
}

}  // namespace

TEST_CASE("identity scatters nothing") {
  ScatteringResult r = amplitudes(TransferMatrix::identity());
  CHECK(r.transmission == 1.0);
  CHECK(r.reflection == 0.0);
  CHECK(r.t == cdouble(1.0, 0.0));
  CHECK(r.log10_T == 0.0);
}

TEST_CASE("single delta with beta = 1 transmits one half") {
  EnergyPoint at = EnergyPoint::from_k(1.0);
  ScatteringResult r = amplitudes(delta_matrix({1.0}, at));
  CHECK(r.transmission == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("T + R = 1 and symmetry class invariants") {
  std::mt19937 rng(3);
  for (int i = 0; i < 500; ++i) {
    TransferMatrix m = random_cell_matrix(rng);
    CHECK(unimodularity_defect(m) < 1e-10);
    CHECK(conjugate_symmetry_defect(m) < 1e-12);
    ScatteringResult r = amplitudes(m);
    CHECK(std::fabs(r.transmission + r.reflection - 1.0) < 1e-12);
    CHECK(std::fabs(std::norm(r.t) - r.transmission) < 1e-12);
    CHECK(std::fabs(std::norm(r.r_left) - r.reflection) < 1e-12);
    CHECK(std::fabs(std::norm(r.r_right) - r.reflection) < 1e-12);
  }
}

TEST_CASE("translate keeps T and the invariants") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> ux(-30.0, 30.0);
  for (int i = 0; i < 200; ++i) {
    TransferMatrix m = random_cell_matrix(rng);
    double k = 0.1 + 10.0 * std::fabs(ux(rng)) / 30.0;
    TransferMatrix t = translate(m, ux(rng), k);
    CHECK(t.m22 == m.m22);
    CHECK(std::abs(t.m12) == doctest::Approx(std::abs(m.m12)).epsilon(1e-13));
    CHECK(unimodularity_defect(t) < 1e-10);
    CHECK(conjugate_symmetry_defect(t) < 1e-12);
    CHECK(translate(m, 0.0, k).m12 == m.m12);
  }
}

TEST_CASE("matmul identity and associativity") {
  std::mt19937 rng(9);
  for (int i = 0; i < 100; ++i) {
    TransferMatrix a = random_cell_matrix(rng);
    TransferMatrix b = random_cell_matrix(rng);
    TransferMatrix c = random_cell_matrix(rng);
    TransferMatrix I = TransferMatrix::identity();
    CHECK(matmul(I, a).m22 == a.m22);
    CHECK(matmul(a, I).m12 == a.m12);
    TransferMatrix lhs = matmul(matmul(a, b), c);
    TransferMatrix rhs = matmul(a, matmul(b, c));
    CHECK(std::abs(lhs.m11 - rhs.m11) < 1e-12 * std::abs(lhs.m11));
    CHECK(std::abs(lhs.m22 - rhs.m22) < 1e-12 * std::abs(lhs.m22));
  }
}

TEST_CASE("polar decomposition of m22") {
  PolarM22 p = polar_m22(TransferMatrix::identity());
  CHECK(p.magnitude == 1.0);
  CHECK(p.alpha == 0.0);

  EnergyPoint at = EnergyPoint::from_k(1.0);
  double beta = 10.0;
  PolarM22 d = polar_m22(delta_matrix({10.0}, at));
  CHECK(d.magnitude == doctest::Approx(std::sqrt(1.0 + beta * beta)).epsilon(1e-14));
  CHECK(d.alpha == doctest::Approx(-std::atan(beta)).epsilon(1e-14));

  // rectangular cell: magnitude and argument against the explicit forms
  RectangularCell cell{10.0, 1.0};
  for (double k : {0.7, 2.1, 4.47213595, 6.0, 11.0}) {
    EnergyPoint e = EnergyPoint::from_k(k);
    PolarM22 r = polar_m22(rect_matrix(cell, e));
    double kp2 = k * k - 2.0 * cell.height;
    auto [S, C] = guarded_sinc_cos(kp2, cell.width);
    double eps_sin = (k * k + kp2) / (2.0 * k) * S;
    CHECK(r.magnitude == doctest::Approx(std::sqrt(C * C + eps_sin * eps_sin)).epsilon(1e-12));
    double alpha = std::remainder(std::atan2(eps_sin, C) - k * cell.width, 2 * M_PI);
    CHECK(std::remainder(r.alpha - alpha, 2 * M_PI) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(r.alpha <= M_PI);
    CHECK(r.alpha > -M_PI);
  }
}

TEST_CASE("degenerate matrix is rejected") {
  TransferMatrix z{{0, 0}, {0, 0}, {0, 0}, {0, 0}};
  CHECK_THROWS_AS(amplitudes(z), Error);
}

TEST_CASE("scaled amplitudes agree with the plain route") {
  std::mt19937 rng(17);
  for (int i = 0; i < 100; ++i) {
    TransferMatrix m = random_cell_matrix(rng);
    ScatteringResult a = amplitudes(m);
    ScatteringResult b = amplitudes(ScaledComplex::from(m.m22), ScaledComplex::from(m.m12),
                                    ScaledComplex::from(m.m21));
    CHECK(a.transmission == doctest::Approx(b.transmission).epsilon(1e-12));
    CHECK(a.log10_T == doctest::Approx(b.log10_T).epsilon(1e-9));
    CHECK(std::abs(a.t - b.t) < 1e-12 * std::abs(a.t) + 1e-300);
  }
}
