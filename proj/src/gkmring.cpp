#include "qflag/gkmring.hpp"

#include <algorithm>
#include <stdexcept>

namespace qflag {

GkmContext::GkmContext(int n, int degree_scale, EdgeConvention convention, int cap)
    : n_(n), degree_scale_(degree_scale), convention_(convention) {
  if (degree_scale != 2 && degree_scale != 4) {
    throw std::invalid_argument("degree scale must be 2 or 4");
  }
  vertices_ = all_permutations(n, cap);
  edges_ = gkm_edges(n, convention, cap);
  for (std::size_t i = 0; i < vertices_.size(); ++i) index_.emplace(vertices_[i], i);
}

std::size_t GkmContext::vertex_index(const Permutation& w) const {
  auto it = index_.find(w);
  if (it == index_.end()) throw std::out_of_range("not a vertex: " + w.to_string());
  return it->second;
}

ContextPtr make_context(int n, int degree_scale, EdgeConvention convention, int cap) {
  return std::make_shared<const GkmContext>(n, degree_scale, convention, cap);
}

GkmClass::GkmClass(ContextPtr ctx, long degree, std::vector<IntPolynomial> restrictions)
    : ctx_(std::move(ctx)), degree_(degree), restrictions_(std::move(restrictions)) {
  if (restrictions_.size() != ctx_->vertices().size()) {
    throw std::invalid_argument("class needs one restriction per vertex");
  }
  for (const auto& f : restrictions_) {
    if (f.num_vars() != static_cast<std::size_t>(ctx_->n())) {
      throw std::invalid_argument("restriction has the wrong variable count");
    }
    if (!f.is_zero() && (!f.is_homogeneous() || f.total_degree() != degree_)) {
      throw std::invalid_argument("restriction is not homogeneous of degree " +
                                  std::to_string(degree_));
    }
  }
}

GkmClass GkmClass::zero(ContextPtr ctx, long degree) {
  std::vector<IntPolynomial> r(ctx->vertices().size(), IntPolynomial(static_cast<std::size_t>(ctx->n())));
  return {std::move(ctx), degree, std::move(r)};
}

GkmClass GkmClass::constant(ContextPtr ctx, const IntPolynomial& f) {
  if (!f.is_homogeneous()) throw std::invalid_argument("constant class must be homogeneous");
  std::vector<IntPolynomial> r(ctx->vertices().size(), f);
  long d = std::max(0L, f.total_degree());
  return {std::move(ctx), d, std::move(r)};
}

const IntPolynomial& GkmClass::at(const Permutation& w) const {
  return restrictions_[ctx_->vertex_index(w)];
}

bool GkmClass::operator==(const GkmClass& o) const {
  if (ctx_->n() != o.ctx_->n()) return false;
  bool a_zero = std::all_of(restrictions_.begin(), restrictions_.end(),
                            [](const IntPolynomial& f) { return f.is_zero(); });
  if (!a_zero && degree_ != o.degree_) return false;
  return restrictions_ == o.restrictions_;
}

namespace {

std::vector<GkmEdge> violated_edges(std::span<const IntPolynomial> f, const GkmContext& ctx) {
  std::vector<GkmEdge> bad;
  for (const auto& e : ctx.edges()) {
    IntPolynomial diff = f[ctx.vertex_index(e.first)] - f[ctx.vertex_index(e.second)];
    if (!divrem_linear_diff(diff, static_cast<std::size_t>(e.p), static_cast<std::size_t>(e.q))
             .divisible) {
      bad.push_back(e);
    }
  }
  return bad;
}

}  // namespace

MembershipReport is_gkm_class(const std::map<Permutation, IntPolynomial>& candidate,
                              const GkmContext& ctx) {
  std::vector<IntPolynomial> f;
  f.reserve(ctx.vertices().size());
  long degree = -1;
  for (const auto& w : ctx.vertices()) {
    auto it = candidate.find(w);
    if (it == candidate.end()) throw std::invalid_argument("missing vertex " + w.to_string());
    const auto& poly = it->second;
    if (poly.num_vars() != static_cast<std::size_t>(ctx.n())) {
      throw std::invalid_argument("restriction at " + w.to_string() + " has wrong variable count");
    }
    if (!poly.is_homogeneous()) {
      throw std::invalid_argument("inhomogeneous restriction at " + w.to_string());
    }
    if (!poly.is_zero()) {
      if (degree >= 0 && poly.total_degree() != degree) {
        throw std::invalid_argument("restrictions have different degrees");
      }
      degree = poly.total_degree();
    }
    f.push_back(poly);
  }
  MembershipReport rep;
  rep.violated = violated_edges(f, ctx);
  rep.is_member = rep.violated.empty();
  return rep;
}

MembershipReport is_gkm_class(const GkmClass& c) {
  MembershipReport rep;
  rep.violated = violated_edges(c.restrictions(), c.context());
  rep.is_member = rep.violated.empty();
  return rep;
}

GkmClass canonical_class(int nu, ContextPtr ctx) {
  if (nu < 0 || nu >= ctx->n()) throw std::out_of_range("canonical class index out of range");
  const auto n = static_cast<std::size_t>(ctx->n());
  std::vector<IntPolynomial> r;
  for (const auto& w : ctx->vertices()) {
    r.push_back(IntPolynomial::variable(n, static_cast<std::size_t>(w(nu))));
  }
  return {std::move(ctx), 1, std::move(r)};
}

GkmClass pointwise(const GkmClass& a, const GkmClass& b, PointwiseKind kind) {
  if (a.context_ptr() != b.context_ptr() &&
      (a.context().n() != b.context().n() ||
       a.context().convention() != b.context().convention() ||
       a.context().degree_scale() != b.context().degree_scale())) {
    throw std::invalid_argument("classes live in different contexts");
  }
  std::vector<IntPolynomial> r;
  r.reserve(a.restrictions().size());
  long degree = 0;
  if (kind == PointwiseKind::add) {
    if (a.degree() != b.degree()) throw std::invalid_argument("sum of classes of different degree");
    degree = a.degree();
    for (std::size_t i = 0; i < a.restrictions().size(); ++i)
      r.push_back(a.restrictions()[i] + b.restrictions()[i]);
  } else {
    degree = a.degree() + b.degree();
    for (std::size_t i = 0; i < a.restrictions().size(); ++i)
      r.push_back(a.restrictions()[i] * b.restrictions()[i]);
  }
  GkmClass out(a.context_ptr(), degree, std::move(r));
  if (a.context().debug_checks() && is_gkm_class(a).is_member && is_gkm_class(b).is_member &&
      !is_gkm_class(out).is_member) {
    throw std::logic_error("GKM closure violated by a pointwise operation");
  }
  return out;
}

IntPolynomial negative_euler_class(const Permutation& w, const HeightParams& hp,
                                   const GkmContext& ctx) {
  const auto n = static_cast<std::size_t>(ctx.n());
  IntPolynomial e = IntPolynomial::constant(n, 1);
  for (auto [p, q] : descent_pairs(w, hp, ctx.convention())) {
    e = e * (IntPolynomial::variable(n, static_cast<std::size_t>(p)) -
             IntPolynomial::variable(n, static_cast<std::size_t>(q)));
  }
  return e;
}

int scaled_morse_index(const Permutation& w, const HeightParams& hp, const GkmContext& ctx) {
  return ctx.degree_scale() * static_cast<int>(descent_pairs(w, hp, ctx.convention()).size());
}

IntPolynomial weight_product_euler(std::span<const std::vector<long>> weights) {
  if (weights.empty()) throw std::invalid_argument("no weights given");
  const std::size_t n = weights.front().size();
  IntPolynomial e = IntPolynomial::constant(n, 1);
  for (const auto& wt : weights) {
    if (wt.size() != n) throw std::invalid_argument("weight vectors differ in length");
    IntPolynomial form(n);
    for (std::size_t j = 0; j < n; ++j) {
      if (wt[j] != 0) form += IntPolynomial::variable(n, j) * Integer(wt[j]);
    }
    if (form.is_zero()) {
      throw std::invalid_argument("zero weight: the torus has a nonzero fixed vector");
    }
    e = e * form;
  }
  return e;
}

std::pair<std::size_t, std::size_t> constraint_dimensions(std::size_t d, const GkmContext& ctx) {
  const auto n = static_cast<std::size_t>(ctx.n());
  const std::size_t mons = binomial(d + n - 1, n - 1).get_ui();
  const std::size_t cols = ctx.vertices().size() * mons;
  const std::size_t per_edge = n >= 2 ? binomial(d + n - 2, n - 2).get_ui() : 0;
  return {ctx.edges().size() * per_edge, cols};
}

namespace {

std::vector<SparseRow> edge_rows(const GkmEdge& e, const GkmContext& ctx,
                                 const std::vector<ExponentVector>& mons) {
  const std::size_t m = mons.size();
  const std::size_t v = ctx.vertex_index(e.first);
  const std::size_t w = ctx.vertex_index(e.second);
  const auto p = static_cast<std::size_t>(e.p);
  const auto q = static_cast<std::size_t>(e.q);
  // Group source monomials by their image under u_p -> u_q.
  std::map<ExponentVector, std::vector<std::size_t>, GradedLexOrder> images;
  for (std::size_t k = 0; k < m; ++k) {
    ExponentVector img = mons[k];
    img[q] += img[p];
    img[p] = 0;
    images[img].push_back(k);
  }
  std::vector<SparseRow> rows;
  rows.reserve(images.size());
  for (const auto& [img, ks] : images) {
    SparseRow row;
    for (auto k : ks) row.emplace_back(v * m + k, 1);
    for (auto k : ks) row.emplace_back(w * m + k, -1);
    std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

ConstraintSystem assemble_constraints(std::size_t d, const GkmContext& ctx,
                                      std::size_t cell_budget, Exec exec) {
  auto [nrows, ncols] = constraint_dimensions(d, ctx);
  // The kernel computation also holds a cols x cols workspace.
  const double cells = (static_cast<double>(nrows) + static_cast<double>(ncols)) *
                       static_cast<double>(ncols);
  if (cells > static_cast<double>(cell_budget)) {
    throw BudgetExceeded("degree " + std::to_string(d) + " needs a " + std::to_string(nrows) +
                         " x " + std::to_string(ncols) + " constraint matrix plus a " +
                         std::to_string(ncols) + " x " + std::to_string(ncols) +
                         " kernel workspace, over the budget of " + std::to_string(cell_budget) +
                         " cells");
  }
  const auto mons = monomials_of_degree(d, static_cast<std::size_t>(ctx.n()));
  ConstraintSystem sys;
  sys.degree = d;
  sys.monomial_count = mons.size();
  sys.cols = ncols;

  const auto& edges = ctx.edges();
  std::vector<std::vector<SparseRow>> blocks(edges.size());
  const auto ne = static_cast<long>(edges.size());
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 4)
    for (long i = 0; i < ne; ++i) blocks[static_cast<std::size_t>(i)] = edge_rows(edges[static_cast<std::size_t>(i)], ctx, mons);
  } else {
    for (long i = 0; i < ne; ++i) blocks[static_cast<std::size_t>(i)] = edge_rows(edges[static_cast<std::size_t>(i)], ctx, mons);
  }
  sys.rows.reserve(nrows);
  for (auto& b : blocks)
    for (auto& r : b) sys.rows.push_back(std::move(r));
  return sys;
}

GradedComponent graded_component(std::size_t d, const GkmContext& ctx, std::size_t cell_budget,
                                 Exec exec) {
  ConstraintSystem sys = assemble_constraints(d, ctx, cell_budget, exec);
  GradedComponent out;
  out.basis = kernel_basis(sys.rows, sys.cols, exec);
  out.rank = out.basis.rows();
  out.monomial_count = sys.monomial_count;
  return out;
}

std::vector<Integer> class_coordinates(const GkmClass& c) {
  const auto n = static_cast<std::size_t>(c.context().n());
  const auto mons = monomials_of_degree(static_cast<std::size_t>(c.degree()), n);
  std::vector<Integer> v;
  v.reserve(mons.size() * c.restrictions().size());
  for (const auto& f : c.restrictions())
    for (const auto& m : mons) v.push_back(f.coefficient(m));
  return v;
}

Integer predicted_rank(std::size_t d, int n) {
  const auto c = q_factorial_coefficients(n);
  Integer total = 0;
  const auto nn = static_cast<std::size_t>(n);
  for (std::size_t k = 0; k < c.size() && k <= d; ++k) total += c[k] * binomial(d - k + nn - 1, nn - 1);
  return total;
}

nlohmann::json class_to_json(const GkmClass& c) {
  nlohmann::json restr = nlohmann::json::object();
  const auto& verts = c.context().vertices();
  for (std::size_t i = 0; i < verts.size(); ++i) {
    restr[verts[i].to_string()] = poly_to_json(c.restrictions()[i]);
  }
  return {{"n", c.context().n()}, {"scale", c.context().degree_scale()}, {"restrictions", restr}};
}

GkmClass class_from_json(const nlohmann::json& j, ContextPtr ctx) {
  if (j.at("n").get<int>() != ctx->n()) throw std::invalid_argument("class JSON has a different n");
  if (j.at("scale").get<int>() != ctx->degree_scale()) {
    throw std::invalid_argument("class JSON has a different degree scale");
  }
  const auto n = static_cast<std::size_t>(ctx->n());
  const auto& restr = j.at("restrictions");
  std::vector<IntPolynomial> r;
  long degree = 0;
  for (const auto& w : ctx->vertices()) {
    auto key = w.to_string();
    if (!restr.contains(key)) throw std::invalid_argument("class JSON is missing vertex " + key);
    r.push_back(poly_from_json(restr.at(key), n));
    if (!r.back().is_zero()) degree = r.back().total_degree();
  }
  return {std::move(ctx), degree, std::move(r)};
}

}  // namespace qflag
