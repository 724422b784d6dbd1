#pragma once
//
// Exact multivariate polynomials over unbounded integers.
//
// Terms are kept in graded lexicographic order: lower total degree first,
// and within one degree the lexicographically larger exponent vector first,
// so u1 precedes u2 and u1^2 precedes u1*u2 precedes u2^2. Every matrix and
// JSON output in the project indexes monomials in this order.
//

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

namespace qflag {

using Integer = mpz_class;
using Rational = mpq_class;
using ExponentVector = std::vector<std::uint32_t>;

std::uint64_t total_degree(const ExponentVector& e);

// Strict weak order realizing graded lex: true iff a comes before b.
struct GradedLexOrder {
  bool operator()(const ExponentVector& a, const ExponentVector& b) const;
};

class IntPolynomial {
 public:
  using TermMap = std::map<ExponentVector, Integer, GradedLexOrder>;

  explicit IntPolynomial(std::size_t num_vars = 0) : num_vars_(num_vars) {}

  static IntPolynomial constant(std::size_t num_vars, const Integer& c);
  // The variable with 0-based index `var`.
  static IntPolynomial variable(std::size_t num_vars, std::size_t var);
  static IntPolynomial monomial(ExponentVector exps, const Integer& c = 1);

  std::size_t num_vars() const { return num_vars_; }
  bool is_zero() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  // Highest total degree; -1 for the zero polynomial.
  long total_degree() const;
  // The zero polynomial counts as homogeneous.
  bool is_homogeneous() const;
  Integer coefficient(const ExponentVector& e) const;

  // Adds c * x^e in place; zero results are pruned.
  void add_term(const ExponentVector& e, const Integer& c);

  IntPolynomial& operator+=(const IntPolynomial& o);
  IntPolynomial& operator-=(const IntPolynomial& o);
  IntPolynomial& operator*=(const Integer& c);

  friend IntPolynomial operator+(IntPolynomial a, const IntPolynomial& b) { return a += b; }
  friend IntPolynomial operator-(IntPolynomial a, const IntPolynomial& b) { return a -= b; }
  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator*(IntPolynomial a, const Integer& c) { return a *= c; }
  IntPolynomial operator-() const;

  bool operator==(const IntPolynomial& o) const {
    return num_vars_ == o.num_vars_ && terms_ == o.terms_;
  }

  IntPolynomial pow(unsigned k) const;

  // Human-readable form; default names are u1..un.
  std::string to_string(std::span<const std::string> names = {}) const;

 private:
  void require_same_vars(const IntPolynomial& o) const;

  std::size_t num_vars_;
  TermMap terms_;
};

enum class ArithKind { add, sub, mul };

IntPolynomial arith(const IntPolynomial& a, const IntPolynomial& b, ArithKind kind);

// Image under the evaluation homomorphism var |-> replacement.
IntPolynomial substitute(const IntPolynomial& p, std::size_t var, const IntPolynomial& replacement);

struct LinearDiffDivision {
  IntPolynomial quotient;
  bool divisible = false;
};

// Divides by (u_p - u_q) treating p as univariate in u_p; `quotient` is only
// meaningful when `divisible` is true.
LinearDiffDivision divrem_linear_diff(const IntPolynomial& p, std::size_t p_idx, std::size_t q_idx);

// e_i in the listed variables of an ambient ring with `num_vars` variables.
IntPolynomial elementary_symmetric(std::size_t i, std::span<const std::size_t> vars,
                                   std::size_t num_vars);

// All exponent vectors of total degree d, in graded lex order.
std::vector<ExponentVector> monomials_of_degree(std::size_t d, std::size_t num_vars);

Integer binomial(std::size_t n, std::size_t k);

// Splits p by total degree.
std::map<long, IntPolynomial> homogeneous_components(const IntPolynomial& p);

// JSON term form: [{"exp":[...],"coeff":"<decimal>"}...] in graded lex order.
nlohmann::json poly_to_json(const IntPolynomial& p);
IntPolynomial poly_from_json(const nlohmann::json& j, std::size_t num_vars);

}  // namespace qflag
