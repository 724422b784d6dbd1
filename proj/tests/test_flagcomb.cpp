#include <doctest.h>

#include <set>

#include "qflag/flagcomb.hpp"

using namespace qflag;

TEST_CASE("permutation basics") {
  auto w = Permutation::from_one_based({2, 3, 1});
  CHECK(w.to_string() == "[2,3,1]");
  CHECK(w(0) == 1);
  CHECK(w.compose(w.inverse()) == Permutation::identity(3));
  CHECK(w.inversions() == 2);
  CHECK(w.coinversions() == 1);
  CHECK(w.left_transpose(0, 1) == Permutation::from_one_based({1, 3, 2}));
  CHECK(w.right_transpose(0, 1) == Permutation::from_one_based({3, 2, 1}));
  CHECK(Permutation::transposition(3, 0, 2).compose(w) == w.left_transpose(0, 2));
  CHECK(w.compose(Permutation::transposition(3, 0, 2)) == w.right_transpose(0, 2));
  CHECK_THROWS_AS(Permutation({0, 0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(Permutation::from_one_based({0, 1}), std::invalid_argument);
  CHECK(permutation_from_json(permutation_to_json(w)) == w);
}

TEST_CASE("enumeration") {
  CHECK(all_permutations(1).size() == 1);
  CHECK(all_permutations(4).size() == 24);
  auto p3 = all_permutations(3);
  CHECK(p3.front() == Permutation::identity(3));
  CHECK(std::is_sorted(p3.begin(), p3.end()));
  CHECK_THROWS_AS(all_permutations(8), BudgetExceeded);
  CHECK_THROWS_AS(all_permutations(0), std::invalid_argument);
  CHECK(all_permutations(8, 8).size() == 40320);
}

TEST_CASE("edge sets") {
  CHECK(gkm_edges(1).empty());
  CHECK(gkm_edges(2).size() == 1);
  for (int n = 2; n <= 5; ++n) {
    auto left = gkm_edges(n, EdgeConvention::left);
    auto right = gkm_edges(n, EdgeConvention::right);
    const std::size_t fact = all_permutations(n).size();
    CHECK(left.size() == fact * static_cast<std::size_t>(n * (n - 1) / 2) / 2);
    CHECK(right.size() == left.size());
    // same unordered vertex pairs, labels differ
    std::set<std::pair<Permutation, Permutation>> l, r;
    for (const auto& e : left) {
      l.insert({e.first, e.second});
      CHECK(e.second == e.first.left_transpose(e.p, e.q));
      CHECK(e.first < e.second);
    }
    for (const auto& e : right) {
      r.insert({e.first, e.second});
      CHECK(e.second == e.first.right_transpose(e.p, e.q));
    }
    CHECK(l == r);
  }
  CHECK(edge_convention_from_string("right") == EdgeConvention::right);
  CHECK_THROWS(edge_convention_from_string("up"));
}

TEST_CASE("heights and rationals") {
  CHECK(parse_rational("3/4") == Rational(3, 4));
  CHECK(parse_rational("-2.5") == Rational(-5, 2));
  CHECK(parse_rational("7") == 7);
  CHECK_THROWS(parse_rational("x"));
  auto hp = HeightParams::standard(3);
  CHECK(hp.is_standard_chamber());
  CHECK(hp.is_generic());
  CHECK(height(Permutation::identity(3), hp) == 8);
  CHECK(height(Permutation::from_one_based({3, 2, 1}), hp) == -8);
  HeightParams tie({0, 0, 1}, {-1, 0, 1});
  CHECK_FALSE(tie.is_generic());
  CHECK_THROWS_AS(descent_pairs(Permutation::identity(3), tie), NonGenericError);
}

TEST_CASE("morse indices match coinversions and the q-factorial") {
  for (int n = 1; n <= 6; ++n) {
    auto hp = HeightParams::standard(n);
    std::vector<Integer> counts(static_cast<std::size_t>(n * (n - 1) / 2 + 1), 0);
    int zero = 0, top = 0;
    for (const auto& w : all_permutations(n)) {
      const int idx = morse_index(w, hp);
      CHECK(idx == 4 * w.coinversions());
      CHECK(idx == morse_index(w, hp, EdgeConvention::right));
      counts[static_cast<std::size_t>(idx / 4)] += 1;
      zero += idx == 0;
      top += idx == 2 * n * (n - 1);
    }
    CHECK(counts == q_factorial_coefficients(n));
    CHECK(zero == 1);
    CHECK(top == 1);
  }
  CHECK(q_factorial_coefficients(3) == std::vector<Integer>{1, 2, 2, 1});
  CHECK(q_factorial(3).coefficient({2}) == 2);
}

TEST_CASE("non-standard generic parameters keep the perfect count") {
  HeightParams hp({Rational(-3), Rational(1, 2), Rational(5, 2)}, {Rational(-1), Rational(-1, 3), Rational(4, 3)});
  std::vector<Integer> counts(4, 0);
  for (const auto& w : all_permutations(3)) counts[static_cast<std::size_t>(morse_index(w, hp) / 4)] += 1;
  CHECK(counts == q_factorial_coefficients(3));
}
