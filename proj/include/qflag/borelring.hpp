#pragma once
//
// The Borel model Z[x_1..x_n, u_1..u_n] / <e_i(x) - e_i(u)> and its
// evaluation into the GKM model, x_nu |-> u_{w(nu)} at the vertex w.
//
// Polynomials here live in 2n variables ordered x_1..x_n, u_1..u_n.
//

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "qflag/exactpoly.hpp"
#include "qflag/exec.hpp"
#include "qflag/gkmring.hpp"
#include "qflag/intlinalg.hpp"

namespace qflag {

// x^a u^b with a_nu <= n - 1 - nu (0-based nu).
struct ArtinMonomial {
  ExponentVector x;
  ExponentVector u;

  std::size_t degree() const { return total_degree(x) + total_degree(u); }
  // The 2n-variable exponent vector (x part first).
  ExponentVector combined() const;
  bool operator==(const ArtinMonomial&) const = default;
};

// All Artin monomials of degree d, in graded lex order on the combined
// exponent vector (so x_1 > ... > x_n > u_1 > ... > u_n).
std::vector<ArtinMonomial> artin_basis(std::size_t d, int n);

class BorelElement {
 public:
  explicit BorelElement(int n);
  BorelElement(int n, IntPolynomial representative);

  static BorelElement x(int n, int nu);
  static BorelElement u(int n, int j);
  static BorelElement elementary_x(int n, int i);
  static BorelElement elementary_u(int n, int i);
  // e_i(x) - e_i(u): the degree-i piece of prod(1 + x) - prod(1 + u).
  static BorelElement relation(int n, int i);
  static BorelElement from_artin(const ArtinMonomial& m, int n);

  int n() const { return n_; }
  const IntPolynomial& representative() const { return rep_; }
  std::vector<std::string> variable_names() const;
  std::string to_string() const;

  BorelElement operator+(const BorelElement& o) const;
  BorelElement operator-(const BorelElement& o) const;
  BorelElement operator*(const BorelElement& o) const;

 private:
  int n_;
  IntPolynomial rep_;
};

// Restriction of a (2n-variable) polynomial to the fixed point w.
IntPolynomial evaluate_at_vertex(const IntPolynomial& rep, const Permutation& w, int n);

// Requires a homogeneous representative.
GkmClass evaluate_to_gkm(const BorelElement& e, ContextPtr ctx);

// Rows: GKM coordinates of the Artin basis of degree d.
IntMatrix artin_image_matrix(std::size_t d, const GkmContext& ctx, Exec exec = Exec::parallel);

struct IsomorphismReport {
  int n = 0;
  int scale = 4;
  std::size_t degree = 0;
  std::size_t artin_rank = 0;
  std::size_t gkm_rank = 0;
  bool injective = false;
  bool surjective = false;
  std::vector<Integer> invariant_factors;

  bool passed() const;
};

IsomorphismReport verify_isomorphism_degree(std::size_t d, const GkmContext& ctx,
                                            std::size_t cell_budget = kDefaultCellBudget,
                                            Exec exec = Exec::parallel);

// {"n","scale","degree","artinRank","gkmRank","injective","surjective","invariantFactors"}
nlohmann::json report_to_json(const IsomorphismReport& r);

struct ArtinCoordinates {
  std::size_t degree = 0;
  std::vector<ArtinMonomial> basis;
  std::vector<Integer> coefficients;
};

// Unique integer coordinates of a homogeneous element in the Artin basis.
// Throws std::runtime_error if the linear system is inconsistent.
ArtinCoordinates reduce_to_artin(const BorelElement& e, const GkmContext& ctx);

BorelElement expand_artin(const ArtinCoordinates& coords, int n);

}  // namespace qflag
