#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "qflag/quatlab.hpp"

using namespace qflag;

namespace {

const Quaternion I = Quaternion::unit_i(), J = Quaternion::unit_j(), K = Quaternion::unit_k();

QuatMatrix mat2(Quaternion a, Quaternion b, Quaternion c, Quaternion d) {
  QuatMatrix m(2);
  m(0, 0) = a;
  m(0, 1) = b;
  m(1, 0) = c;
  m(1, 1) = d;
  return m;
}

}  // namespace

TEST_CASE("quaternion algebra") {
  const Quaternion minus_one = Quaternion::real(-1);
  CHECK(distance(I * J, K) == 0);
  CHECK(distance(J * K, I) == 0);
  CHECK(distance(K * I, J) == 0);
  CHECK(distance(I * I, minus_one) == 0);
  CHECK(distance(I * J * K, minus_one) == 0);
  CHECK(distance(J * I, -K) == 0);
  std::mt19937_64 rng(1);
  for (int t = 0; t < 100; ++t) {
    auto p = 2.0 * random_unit_quaternion(rng), q = random_unit_quaternion(rng);
    CHECK(distance((p * q).conj(), q.conj() * p.conj()) < 1e-14);
    CHECK(std::abs(q.norm() - 1) < 1e-14);
    CHECK(distance(p * p.inverse(), Quaternion::real(1)) < 1e-14);
  }
  CHECK_THROWS(Quaternion{}.inverse());
}

TEST_CASE("inner product") {
  std::vector<double> d{1, -1};
  auto x = QuatMatrix::diagonal(d);
  CHECK(inner(x, x) == doctest::Approx(2));
  auto off = mat2({}, J, -J, {});
  CHECK(off.is_hermitian(0));
  CHECK(inner(x, off) == 0);
  CHECK(inner(off, off) == doctest::Approx(2));
  CHECK_THROWS_AS(inner(x, QuatMatrix(3)), std::invalid_argument);
}

TEST_CASE("symplectic group closure and eigenvalues") {
  std::mt19937_64 rng(2);
  for (int n = 1; n <= 4; ++n) {
    auto a = random_symplectic(n, rng);
    auto id = QuatMatrix::identity(n);
    CHECK((a * a.adjoint() - id).frobenius() < 1e-12);
    std::vector<double> r;
    for (int i = 0; i < n; ++i) r.push_back(2.0 * i - n + 1);
    auto x = a * QuatMatrix::diagonal(r) * a.adjoint();
    CHECK(x.is_hermitian(1e-12));
    auto ev = hermitian_eigenvalues(x);
    for (int i = 0; i < n; ++i) CHECK(ev[static_cast<std::size_t>(i)] == doctest::Approx(r[static_cast<std::size_t>(i)]).epsilon(1e-12));
  }
  CHECK(sp_basis(3).size() == 21);
  CHECK(kpq_basis(3, 0, 2).size() == 10);
  for (const auto& g : sp_basis(3)) CHECK((g + g.adjoint()).frobenius() == 0);
}

TEST_CASE("orbit and sphere points") {
  std::vector<double> r{-1, 1};
  auto x = orbit_point(Permutation::from_one_based({2, 1}), r).x;
  CHECK(x(0, 0).re == 1);
  CHECK(x(1, 1).re == -1);
  auto w = Permutation::from_one_based({1, 3, 2});
  std::vector<double> r3{-2, 0, 2};
  auto base = orbit_point(w, r3).x;
  CHECK((sphere_point(w, 0, 2, 0.0, J, r3).x - base).frobenius() == 0);
  auto pole = sphere_point(w, 0, 2, std::numbers::pi, K, r3).x;
  CHECK((pole - orbit_point(w.right_transpose(0, 2), r3).x).frobenius() < 1e-14);
  auto mid = sphere_point(w, 0, 2, 1.0, I, r3);
  CHECK(mid.x.is_hermitian(1e-14));
  CHECK((mid.conjugator * QuatMatrix::diagonal(r3) * mid.conjugator.adjoint() - mid.x).frobenius() < 1e-14);
  CHECK_THROWS_AS(sphere_point(w, 0, 2, 1.0, 2.0 * I, r3), std::invalid_argument);
}

TEST_CASE("gradient vanishes exactly at permutation diagonals") {
  for (int n = 2; n <= 4; ++n) {
    auto hp = HeightParams::standard(n);
    auto a = hp.a_double(), r = hp.r_double();
    for (const auto& w : all_permutations(n)) CHECK(numeric_gradient(orbit_point(w, r).x, a).norm < 1e-9);
  }
  std::vector<double> r{-1, 1}, a{-1, 1}, a3{-3, 3};
  auto z = sphere_point(Permutation::identity(2), 0, 1, 0.3, I, r).x;
  auto g = numeric_gradient(z, a);
  CHECK(g.norm > 1e-3);
  CHECK(numeric_gradient(z, a3).norm == doctest::Approx(3 * g.norm));
  std::vector<double> flat{1, 1};
  CHECK_THROWS_AS(numeric_gradient(QuatMatrix::diagonal(flat), a), NonGenericError);
}

TEST_CASE("gradient on the n = 2 sphere matches the analytic projection") {
  // On the round 4-sphere the gradient of a linear function is A minus its
  // radial and normal components; for n = 2 that is the tangential part of
  // the traceless piece of A.
  std::vector<double> r{-1, 1}, a{-1, 1};
  auto z = sphere_point(Permutation::identity(2), 0, 1, 0.3, I, r).x;
  auto g = numeric_gradient(z, a).vector;
  auto amat = QuatMatrix::diagonal(a);
  const double rad2 = inner(z, z);
  auto expected = amat - (inner(amat, z) / rad2) * z;
  CHECK((g - expected).frobenius() < 1e-12);
}

TEST_CASE("hessian form") {
  std::vector<double> r{-1, 1}, a{-1, 1};
  auto x = orbit_point(Permutation::identity(2), r).x;
  auto omega = QuatMatrix::unit(2, 0, 1, I) - QuatMatrix::unit(2, 1, 0, I.conj());
  CHECK(hessian_form(x, a, omega) == doctest::Approx(-8).epsilon(1e-12));
  CHECK(hessian_form_fd(x, a, omega, 1e-4) == doctest::Approx(-8).epsilon(1e-6));
  HeightParams hp({-1, 1}, {-1, 1});
  CHECK(numeric_hessian_index(Permutation::identity(2), hp).index == 4);
  CHECK(numeric_hessian_index(Permutation::from_one_based({2, 1}), hp).index == 0);
}

TEST_CASE("numeric hessian index equals four times the coinversions") {
  for (int n = 2; n <= 4; ++n) {
    auto hp = HeightParams::standard(n);
    std::multiset<int> idx;
    for (const auto& w : all_permutations(n)) {
      auto h = numeric_hessian_index(w, hp);
      CHECK(h.index == 4 * w.coinversions());
      CHECK(h.index == morse_index(w, hp));
      CHECK(h.min_abs_eigenvalue > kHessianSeparation);
      CHECK(h.eigenvalues.size() == static_cast<std::size_t>(2 * n * (n - 1)));
      idx.insert(h.index);
    }
    if (n == 3) CHECK(idx == std::multiset<int>{0, 4, 4, 8, 8, 12});
  }
}

TEST_CASE("meridians are gradient lines") {
  auto hp = HeightParams::standard(3);
  auto w = Permutation::identity(3);
  auto serial = meridian_tangency_check(w, 0, 1, 50, hp, 42, Exec::serial);
  auto parallel = meridian_tangency_check(w, 0, 1, 50, hp, 42, Exec::parallel);
  CHECK(serial.max_residual < 1e-8);
  CHECK(serial.max_pole_gradient < 1e-9);
  CHECK(serial.min_interior_gradient >= 1e-3);
  CHECK(serial.min_sphere_rank == 4);
  CHECK(serial.max_sphere_rank == 4);
  CHECK(serial.max_radius_deviation < 1e-10);
  CHECK(serial.max_residual == parallel.max_residual);
  CHECK(serial.min_interior_gradient == parallel.min_interior_gradient);
  CHECK_THROWS_AS(meridian_tangency_check(Permutation::from_one_based({3, 2, 1}), 0, 1, 5, hp, 42),
                  std::invalid_argument);

  HeightParams hp2({-1, 1}, {-1, 1});
  CHECK(meridian_tangency_check(Permutation::identity(2), 0, 1, 50, hp2, 42).max_residual < 1e-12);
}

TEST_CASE("the residual detects a wrong sphere") {
  // the gradient along the K_12 sphere is not tangent to the K_13 orbit
  auto hp = HeightParams::standard(3);
  auto a = hp.a_double(), r = hp.r_double();
  auto z = sphere_point(Permutation::identity(3), 0, 1, 1.0, J, r).x;
  auto g = numeric_gradient(z, a).vector.flatten();
  auto frames = kpq_basis(3, 0, 2);
  auto wrong = tangent_frame(z, frames);
  double along = 0, total = 0;
  for (double v : g) total += v * v;
  for (const auto& b : wrong.basis) {
    double c = 0;
    for (std::size_t e = 0; e < g.size(); ++e) c += b[e] * g[e];
    along += c * c;
  }
  CHECK(std::sqrt(std::max(0.0, total - along)) > 1e-2);
}

TEST_CASE("T-fixed lines") {
  std::vector<Quaternion> e2{{}, Quaternion::real(1)};
  auto c = t_fixed_point_check(e2);
  CHECK(c.fixed);
  CHECK(c.residual < 1e-14);
  std::vector<Quaternion> ones{Quaternion::real(1), Quaternion::real(1)};
  c = t_fixed_point_check(ones);
  CHECK_FALSE(c.fixed);
  REQUIRE(c.witness);
  CHECK(*c.witness == std::vector<double>{1, -1});
  CHECK(c.residual > 1);
  std::vector<Quaternion> last{{}, {}, {}, Quaternion::real(5)};
  CHECK(t_fixed_point_check(last).fixed);
  std::vector<Quaternion> zero(3);
  CHECK_THROWS_AS(t_fixed_point_check(zero), std::invalid_argument);
}

TEST_CASE("matrix exponential") {
  auto omega = QuatMatrix::unit(2, 0, 1, Quaternion::real(1)) - QuatMatrix::unit(2, 1, 0, Quaternion::real(1));
  auto rot = expm(std::numbers::pi / 2 * omega);
  CHECK(std::abs(rot(0, 1).re - 1) < 1e-14);
  CHECK(std::abs(rot(0, 0).re) < 1e-14);
  CHECK((expm(QuatMatrix(3)) - QuatMatrix::identity(3)).frobenius() == 0);
}
