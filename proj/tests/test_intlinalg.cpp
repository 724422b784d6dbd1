#include <doctest.h>

#include <random>

#include "qflag/intlinalg.hpp"

using namespace qflag;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int lo = -6, int hi = 6) {
  std::uniform_int_distribution<int> d(lo, hi);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

Integer det(IntMatrix m) {
  // fraction-free elimination
  const std::size_t n = m.rows();
  Integer prev = 1, sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m(p, k) == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      m.swap_rows(p, k);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

}  // namespace

TEST_CASE("hermite normal form of a small matrix") {
  IntMatrix m{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}};
  auto h = hermite_normal_form(m);
  CHECK(h.rank == 3);
  CHECK(h.transform * m == h.hnf);
  CHECK(h.hnf == IntMatrix{{2, 4, 4}, {0, 6, 0}, {0, 0, 12}});
  CHECK(abs(det(h.transform)) == 1);
}

TEST_CASE("hermite form properties on random matrices") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 30; ++t) {
    auto m = random_matrix(rng, 1 + t % 5, 1 + (t * 7) % 6);
    auto h = hermite_normal_form(m);
    CHECK(h.transform * m == h.hnf);
    CHECK(abs(det(h.transform)) == 1);
    std::size_t lead = 0;
    for (std::size_t r = 0; r < h.rank; ++r) {
      std::size_t c = 0;
      while (h.hnf(r, c) == 0) ++c;
      if (r > 0) CHECK(c > lead);
      lead = c;
      CHECK(h.hnf(r, c) > 0);
      for (std::size_t above = 0; above < r; ++above) {
        CHECK(h.hnf(above, c) >= 0);
        CHECK(h.hnf(above, c) < h.hnf(r, c));
      }
    }
    for (std::size_t r = h.rank; r < h.hnf.rows(); ++r) CHECK(h.hnf.row_is_zero(r));
  }
}

TEST_CASE("smith invariants") {
  CHECK(smith_invariants(IntMatrix{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}) ==
        std::vector<Integer>{2, 6, 12});
  CHECK(smith_invariants(IntMatrix{{2, 0}, {0, 3}}) == std::vector<Integer>{1, 6});
  CHECK(smith_invariants(IntMatrix{{1, 0}, {0, 1}}) == std::vector<Integer>{1, 1});
  CHECK(smith_invariants(IntMatrix(3, 2)).empty());
  std::mt19937_64 rng(9);
  for (int t = 0; t < 20; ++t) {
    auto m = random_matrix(rng, 4, 4);
    auto s = smith_invariants(m);
    for (std::size_t i = 1; i < s.size(); ++i) CHECK(s[i] % s[i - 1] == 0);
    Integer prod = 1;
    for (const auto& f : s) prod *= f;
    if (s.size() == 4) CHECK(prod == abs(det(m)));
    CHECK(s.size() == rank(m));
  }
}

TEST_CASE("kernel basis is saturated and complementary to the row rank") {
  IntMatrix m{{2, 4}};
  auto k = kernel_basis(m);
  REQUIRE(k.rows() == 1);
  CHECK(k * m.transposed() == IntMatrix(1, 1));
  CHECK(lattices_equal(k, IntMatrix{{-2, 1}}));

  std::mt19937_64 rng(21);
  for (int t = 0; t < 25; ++t) {
    auto a = random_matrix(rng, 1 + t % 4, 3 + t % 4, -3, 3);
    auto ker = kernel_basis(a);
    CHECK(ker.rows() + rank(a) == a.cols());
    if (ker.rows()) {
      CHECK((ker * a.transposed()).is_zero());
      // saturation: all invariant factors 1
      for (const auto& f : smith_invariants(ker)) CHECK(f == 1);
    }
    CHECK(kernel_basis(a, Exec::serial) == kernel_basis(a, Exec::parallel));
  }
}

TEST_CASE("sparse and dense kernels agree") {
  std::vector<SparseRow> rows{{{0, 1}, {2, -1}}, {{1, 2}, {3, -2}}};
  auto sparse = kernel_basis(rows, 4);
  IntMatrix dense{{1, 0, -1, 0}, {0, 2, 0, -2}};
  CHECK(lattices_equal(sparse, kernel_basis(dense)));
  CHECK(sparse.rows() == 2);
}

TEST_CASE("lattice equality and row combinations") {
  IntMatrix a{{1, 0}, {0, 1}}, b{{1, 1}, {0, 1}}, c{{2, 0}, {0, 1}};
  CHECK(lattices_equal(a, b));
  CHECK_FALSE(lattices_equal(a, c));
  CHECK(lattices_equal(IntMatrix{{1, 2}, {2, 4}}, IntMatrix{{1, 2}}));

  std::vector<Integer> target{3, 5};
  auto sol = solve_row_combination(c, std::vector<Integer>{4, 5});
  REQUIRE(sol);
  CHECK((*sol)[0] == 2);
  CHECK((*sol)[1] == 5);
  CHECK_FALSE(solve_row_combination(c, target));
}

TEST_CASE("shape errors and json") {
  IntMatrix a{{1, 2}}, b{{1, 2}};
  CHECK_THROWS_AS(a * b, std::invalid_argument);
  auto j = matrix_to_json(IntMatrix{{1, -2}});
  CHECK(j.dump() == R"([["1","-2"]])");
}
