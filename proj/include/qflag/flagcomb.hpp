#pragma once
//
// Combinatorics of the fixed-point set S_n: permutations, the edge set of
// the GKM graph, height functions and Morse indices.
//
// Internally everything is 0-based. Permutations print and serialize in
// 1-based one-line notation, e.g. [2,1,3].
//

#include <compare>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qflag/exactpoly.hpp"
#include "qflag/exec.hpp"

namespace qflag {

inline constexpr int kDefaultPermutationCap = 7;

class Permutation {
 public:
  Permutation() = default;
  // `images` is 0-based; throws unless it is a bijection on {0..n-1}.
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int n);
  static Permutation from_one_based(const std::vector<int>& images);
  static Permutation transposition(int n, int p, int q);

  int size() const { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& images() const { return images_; }
  std::vector<int> one_based() const;

  // (this o other)(i) = this(other(i))
  Permutation compose(const Permutation& other) const;
  Permutation inverse() const;

  // s_pq o w: swaps the values p and q in one-line notation.
  Permutation left_transpose(int p, int q) const;
  // w o s_pq: swaps the positions p and q.
  Permutation right_transpose(int p, int q) const;

  int inversions() const;
  int coinversions() const;

  std::string to_string() const;

  auto operator<=>(const Permutation&) const = default;

 private:
  std::vector<int> images_;
};

nlohmann::json permutation_to_json(const Permutation& w);
Permutation permutation_from_json(const nlohmann::json& j);

// All n! permutations in lexicographic order. Throws if n > cap.
std::vector<Permutation> all_permutations(int n, int cap = kDefaultPermutationCap);

// Which transposition action joins the endpoints of an edge with divisor
// u_p - u_q. `left` ({w, s_pq w}) is the reading under which the tautological
// classes u_{w(nu)} satisfy the divisibility conditions; `right`
// ({w, w s_pq} with the same divisor) is kept for comparison.
enum class EdgeConvention { left, right };

std::string to_string(EdgeConvention c);
EdgeConvention edge_convention_from_string(const std::string& s);

struct GkmEdge {
  Permutation first;   // lexicographically smaller endpoint
  Permutation second;
  int p = 0;  // divisor u_p - u_q, 0-based, p < q
  int q = 0;
};

std::vector<GkmEdge> gkm_edges(int n, EdgeConvention convention = EdgeConvention::left,
                               int cap = kDefaultPermutationCap);

// Coefficients of the height function h_A(w) = sum_nu a_nu r_{w(nu)}.
class HeightParams {
 public:
  HeightParams() = default;
  HeightParams(std::vector<Rational> a, std::vector<Rational> r);

  // a = r = (2nu - n - 1)_nu: the integer points (1..n) shifted to zero sum.
  static HeightParams standard(int n);

  int size() const { return static_cast<int>(a_.size()); }
  const std::vector<Rational>& a() const { return a_; }
  const std::vector<Rational>& r() const { return r_; }
  std::vector<double> a_double() const;
  std::vector<double> r_double() const;

  // Strictly increasing entries summing to zero, in both a and r.
  bool is_standard_chamber() const;
  // All entries of a pairwise distinct, same for r.
  bool is_generic() const;

 private:
  std::vector<Rational> a_;
  std::vector<Rational> r_;
};

// Parses "1", "-2.5", "3/4" exactly.
Rational parse_rational(const std::string& s);

Rational height(const Permutation& w, const HeightParams& hp);

// Pairs (p,q), p < q, whose neighbor lies strictly below w. Throws
// NonGenericError on a tie.
std::vector<std::pair<int, int>> descent_pairs(const Permutation& w, const HeightParams& hp,
                                               EdgeConvention convention = EdgeConvention::left);

// Real Morse index of h_A at w on the quaternionic flag manifold:
// 4 * |descent_pairs|. Both conventions give the same count.
int morse_index(const Permutation& w, const HeightParams& hp,
                EdgeConvention convention = EdgeConvention::left);

// prod_{nu=1}^{n} (1 + t + ... + t^{nu-1}) as a one-variable polynomial.
IntPolynomial q_factorial(int n);

// Coefficients c_0..c_{C(n,2)} of q_factorial(n).
std::vector<Integer> q_factorial_coefficients(int n);

}  // namespace qflag
