#pragma once
//
// The GKM model: tuples (f_w) of polynomials in u_1..u_n indexed by S_n,
// subject to (u_p - u_q) | (f_v - f_w) along every edge of the GKM graph.
//
// The degree scale only relabels cohomological degrees (4 for Sp(1)^n
// acting on the quaternionic flags, 2 for the torus acting on the complex
// ones); the polynomial data is identical for both.
//

#include <cstddef>
#include <map>
#include <memory>
#include <span>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "qflag/exactpoly.hpp"
#include "qflag/exec.hpp"
#include "qflag/flagcomb.hpp"
#include "qflag/intlinalg.hpp"

namespace qflag {

inline constexpr std::size_t kDefaultCellBudget = 50'000'000;

class GkmContext {
 public:
  GkmContext(int n, int degree_scale = 4, EdgeConvention convention = EdgeConvention::left,
             int cap = kDefaultPermutationCap);

  int n() const { return n_; }
  int degree_scale() const { return degree_scale_; }
  EdgeConvention convention() const { return convention_; }
  const std::vector<Permutation>& vertices() const { return vertices_; }
  const std::vector<GkmEdge>& edges() const { return edges_; }
  std::size_t vertex_index(const Permutation& w) const;

  // Re-verify GKM closure after pointwise products.
  bool debug_checks() const { return debug_checks_; }
  void set_debug_checks(bool on) { debug_checks_ = on; }

 private:
  int n_;
  int degree_scale_;
  EdgeConvention convention_;
  std::vector<Permutation> vertices_;
  std::vector<GkmEdge> edges_;
  std::map<Permutation, std::size_t> index_;
#ifdef NDEBUG
  bool debug_checks_ = false;
#else
  bool debug_checks_ = true;
#endif
};

using ContextPtr = std::shared_ptr<const GkmContext>;

ContextPtr make_context(int n, int degree_scale = 4,
                        EdgeConvention convention = EdgeConvention::left,
                        int cap = kDefaultPermutationCap);

class GkmClass {
 public:
  // Restrictions are listed in vertex order of the context. All must be
  // homogeneous of polynomial degree `degree` (or zero).
  GkmClass(ContextPtr ctx, long degree, std::vector<IntPolynomial> restrictions);

  static GkmClass zero(ContextPtr ctx, long degree);
  // The same polynomial at every vertex.
  static GkmClass constant(ContextPtr ctx, const IntPolynomial& f);

  const GkmContext& context() const { return *ctx_; }
  const ContextPtr& context_ptr() const { return ctx_; }
  long degree() const { return degree_; }
  long cohomological_degree() const { return degree_ * ctx_->degree_scale(); }
  const std::vector<IntPolynomial>& restrictions() const { return restrictions_; }
  const IntPolynomial& at(const Permutation& w) const;

  bool operator==(const GkmClass& o) const;

 private:
  ContextPtr ctx_;
  long degree_;
  std::vector<IntPolynomial> restrictions_;
};

struct MembershipReport {
  bool is_member = true;
  std::vector<GkmEdge> violated;
};

// Throws if a vertex is missing or the candidate is not homogeneous of one
// common degree.
MembershipReport is_gkm_class(const std::map<Permutation, IntPolynomial>& candidate,
                              const GkmContext& ctx);
MembershipReport is_gkm_class(const GkmClass& c);

// Restriction u_{w(nu)} at every vertex w; nu is 0-based.
GkmClass canonical_class(int nu, ContextPtr ctx);

enum class PointwiseKind { add, mul };
GkmClass pointwise(const GkmClass& a, const GkmClass& b, PointwiseKind kind);

// prod over descent pairs (p,q) of w of (u_p - u_q), read in the context's
// edge convention.
IntPolynomial negative_euler_class(const Permutation& w, const HeightParams& hp,
                                   const GkmContext& ctx);

// Morse index of w scaled to the context: degree_scale * |descent pairs|.
int scaled_morse_index(const Permutation& w, const HeightParams& hp, const GkmContext& ctx);

// prod_i (sum_j weights[i][j] u_j). Throws on a zero weight vector.
IntPolynomial weight_product_euler(std::span<const std::vector<long>> weights);

// The linearized divisibility constraints of one graded component: the
// coordinate space is vertices x monomials_of_degree(d, n), vertex-major;
// each edge contributes one row per monomial of (f_v - f_w)|_{u_p = u_q}.
struct ConstraintSystem {
  std::size_t degree = 0;
  std::size_t monomial_count = 0;
  std::size_t cols = 0;
  std::vector<SparseRow> rows;
};

// Rows x cols of the constraint matrix for degree d.
std::pair<std::size_t, std::size_t> constraint_dimensions(std::size_t d, const GkmContext& ctx);

ConstraintSystem assemble_constraints(std::size_t d, const GkmContext& ctx,
                                      std::size_t cell_budget = kDefaultCellBudget,
                                      Exec exec = Exec::parallel);

struct GradedComponent {
  IntMatrix basis;  // rows: Z-basis of the degree-d part of the GKM model
  std::size_t rank = 0;
  std::size_t monomial_count = 0;
};

GradedComponent graded_component(std::size_t d, const GkmContext& ctx,
                                 std::size_t cell_budget = kDefaultCellBudget,
                                 Exec exec = Exec::parallel);

// Flattens a class of degree d into the vertex-major coordinate vector.
std::vector<Integer> class_coordinates(const GkmClass& c);

// Sum_k c_k * C(d - k + n - 1, n - 1) with c_k the q-factorial coefficients.
Integer predicted_rank(std::size_t d, int n);

// {"n":..,"scale":..,"restrictions":{"[2,1,3]":[terms..],..}}
nlohmann::json class_to_json(const GkmClass& c);
GkmClass class_from_json(const nlohmann::json& j, ContextPtr ctx);

}  // namespace qflag
