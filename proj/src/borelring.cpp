#include "qflag/borelring.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace qflag {

ExponentVector ArtinMonomial::combined() const {
  ExponentVector e = x;
  e.insert(e.end(), u.begin(), u.end());
  return e;
}

std::vector<ArtinMonomial> artin_basis(std::size_t d, int n) {
  const auto nn = static_cast<std::size_t>(n);
  std::vector<ArtinMonomial> out;
  for (const auto& e : monomials_of_degree(d, 2 * nn)) {
    bool ok = true;
    for (std::size_t nu = 0; nu < nn && ok; ++nu) ok = e[nu] <= nn - 1 - nu;
    if (!ok) continue;
    out.push_back({ExponentVector(e.begin(), e.begin() + static_cast<long>(nn)),
                   ExponentVector(e.begin() + static_cast<long>(nn), e.end())});
  }
  return out;
}

BorelElement::BorelElement(int n) : n_(n), rep_(2 * static_cast<std::size_t>(n)) {}

BorelElement::BorelElement(int n, IntPolynomial representative)
    : n_(n), rep_(std::move(representative)) {
  if (rep_.num_vars() != 2 * static_cast<std::size_t>(n)) {
    throw std::invalid_argument("Borel representatives need 2n variables");
  }
}

BorelElement BorelElement::x(int n, int nu) {
  if (nu < 0 || nu >= n) throw std::out_of_range("x index out of range");
  return {n, IntPolynomial::variable(2 * static_cast<std::size_t>(n), static_cast<std::size_t>(nu))};
}

BorelElement BorelElement::u(int n, int j) {
  if (j < 0 || j >= n) throw std::out_of_range("u index out of range");
  return {n, IntPolynomial::variable(2 * static_cast<std::size_t>(n), static_cast<std::size_t>(n + j))};
}

namespace {

std::vector<std::size_t> index_range(std::size_t from, std::size_t count) {
  std::vector<std::size_t> v(count);
  std::iota(v.begin(), v.end(), from);
  return v;
}

}  // namespace

BorelElement BorelElement::elementary_x(int n, int i) {
  const auto nn = static_cast<std::size_t>(n);
  return {n, elementary_symmetric(static_cast<std::size_t>(i), index_range(0, nn), 2 * nn)};
}

BorelElement BorelElement::elementary_u(int n, int i) {
  const auto nn = static_cast<std::size_t>(n);
  return {n, elementary_symmetric(static_cast<std::size_t>(i), index_range(nn, nn), 2 * nn)};
}

BorelElement BorelElement::relation(int n, int i) { return elementary_x(n, i) - elementary_u(n, i); }

BorelElement BorelElement::from_artin(const ArtinMonomial& m, int n) {
  return {n, IntPolynomial::monomial(m.combined())};
}

std::vector<std::string> BorelElement::variable_names() const {
  std::vector<std::string> names;
  for (int i = 1; i <= n_; ++i) names.push_back("x" + std::to_string(i));
  for (int i = 1; i <= n_; ++i) names.push_back("u" + std::to_string(i));
  return names;
}

std::string BorelElement::to_string() const { return rep_.to_string(variable_names()); }

BorelElement BorelElement::operator+(const BorelElement& o) const { return {n_, rep_ + o.rep_}; }
BorelElement BorelElement::operator-(const BorelElement& o) const { return {n_, rep_ - o.rep_}; }
BorelElement BorelElement::operator*(const BorelElement& o) const { return {n_, rep_ * o.rep_}; }

IntPolynomial evaluate_at_vertex(const IntPolynomial& rep, const Permutation& w, int n) {
  const auto nn = static_cast<std::size_t>(n);
  if (rep.num_vars() != 2 * nn || w.size() != n) throw std::invalid_argument("evaluation size mismatch");
  IntPolynomial out(nn);
  ExponentVector e(nn);
  for (const auto& [exp, c] : rep.terms()) {
    for (std::size_t j = 0; j < nn; ++j) e[j] = exp[nn + j];
    for (std::size_t nu = 0; nu < nn; ++nu) e[static_cast<std::size_t>(w(static_cast<int>(nu)))] += exp[nu];
    out.add_term(e, c);
  }
  return out;
}

GkmClass evaluate_to_gkm(const BorelElement& e, ContextPtr ctx) {
  if (e.n() != ctx->n()) throw std::invalid_argument("Borel element and context differ in n");
  if (!e.representative().is_homogeneous()) {
    throw std::invalid_argument("evaluate_to_gkm needs a homogeneous element; split it first");
  }
  std::vector<IntPolynomial> r;
  r.reserve(ctx->vertices().size());
  for (const auto& w : ctx->vertices()) r.push_back(evaluate_at_vertex(e.representative(), w, e.n()));
  const long degree = std::max(0L, e.representative().total_degree());
  GkmClass out(ctx, degree, std::move(r));
  if (ctx->debug_checks() && ctx->convention() == EdgeConvention::left &&
      !is_gkm_class(out).is_member) {
    throw std::logic_error("evaluation left the GKM model");
  }
  return out;
}

IntMatrix artin_image_matrix(std::size_t d, const GkmContext& ctx, Exec exec) {
  const int n = ctx.n();
  const auto nn = static_cast<std::size_t>(n);
  const auto basis = artin_basis(d, n);
  const auto mons = monomials_of_degree(d, nn);
  std::map<ExponentVector, std::size_t, GradedLexOrder> mon_index;
  for (std::size_t k = 0; k < mons.size(); ++k) mon_index.emplace(mons[k], k);
  const auto& verts = ctx.vertices();
  IntMatrix image(basis.size(), verts.size() * mons.size());

  auto fill_row = [&](std::size_t r) {
    const auto& am = basis[r];
    ExponentVector e(nn);
    for (std::size_t v = 0; v < verts.size(); ++v) {
      e = am.u;
      for (std::size_t nu = 0; nu < nn; ++nu) e[static_cast<std::size_t>(verts[v](static_cast<int>(nu)))] += am.x[nu];
      image(r, v * mons.size() + mon_index.at(e)) = 1;
    }
  };
  const auto rows = static_cast<long>(basis.size());
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (long r = 0; r < rows; ++r) fill_row(static_cast<std::size_t>(r));
  } else {
    for (long r = 0; r < rows; ++r) fill_row(static_cast<std::size_t>(r));
  }
  return image;
}

bool IsomorphismReport::passed() const {
  return injective && surjective && invariant_factors.size() == artin_rank &&
         std::all_of(invariant_factors.begin(), invariant_factors.end(),
                     [](const Integer& f) { return f == 1; });
}

IsomorphismReport verify_isomorphism_degree(std::size_t d, const GkmContext& ctx,
                                            std::size_t cell_budget, Exec exec) {
  IsomorphismReport rep;
  rep.n = ctx.n();
  rep.scale = ctx.degree_scale();
  rep.degree = d;
  GradedComponent gc = graded_component(d, ctx, cell_budget, exec);
  IntMatrix image = artin_image_matrix(d, ctx, exec);
  rep.artin_rank = image.rows();
  rep.gkm_rank = gc.rank;
  rep.invariant_factors = smith_invariants(image);
  rep.injective = rep.invariant_factors.size() == image.rows();
  rep.surjective = lattices_equal(image, gc.basis);
  return rep;
}

nlohmann::json report_to_json(const IsomorphismReport& r) {
  nlohmann::json factors = nlohmann::json::array();
  for (const auto& f : r.invariant_factors) {
    if (f.fits_slong_p()) factors.push_back(f.get_si());
    else factors.push_back(f.get_str());
  }
  return {{"n", r.n},
          {"scale", r.scale},
          {"degree", r.degree},
          {"artinRank", r.artin_rank},
          {"gkmRank", r.gkm_rank},
          {"injective", r.injective},
          {"surjective", r.surjective},
          {"invariantFactors", factors}};
}

ArtinCoordinates reduce_to_artin(const BorelElement& e, const GkmContext& ctx) {
  if (!e.representative().is_homogeneous()) {
    throw std::invalid_argument("reduce_to_artin needs a homogeneous element");
  }
  ArtinCoordinates out;
  out.degree = static_cast<std::size_t>(std::max(0L, e.representative().total_degree()));
  out.basis = artin_basis(out.degree, ctx.n());
  IntMatrix image = artin_image_matrix(out.degree, ctx, Exec::serial);

  const auto nn = static_cast<std::size_t>(ctx.n());
  const auto mons = monomials_of_degree(out.degree, nn);
  std::vector<Integer> target;
  target.reserve(image.cols());
  for (const auto& w : ctx.vertices()) {
    IntPolynomial f = evaluate_at_vertex(e.representative(), w, ctx.n());
    for (const auto& m : mons) target.push_back(f.coefficient(m));
  }
  auto sol = solve_row_combination(image, target);
  if (!sol) {
    throw std::runtime_error("no integer Artin coordinates in degree " +
                             std::to_string(out.degree) + ": the isomorphism check has a gap");
  }
  out.coefficients = std::move(*sol);
  return out;
}

BorelElement expand_artin(const ArtinCoordinates& coords, int n) {
  IntPolynomial p(2 * static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < coords.basis.size(); ++i) {
    p.add_term(coords.basis[i].combined(), coords.coefficients[i]);
  }
  return {n, std::move(p)};
}

}  // namespace qflag
