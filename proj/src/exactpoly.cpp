#include "qflag/exactpoly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qflag {

std::uint64_t total_degree(const ExponentVector& e) {
  return std::accumulate(e.begin(), e.end(), std::uint64_t{0});
}

bool GradedLexOrder::operator()(const ExponentVector& a, const ExponentVector& b) const {
  const auto da = total_degree(a);
  const auto db = total_degree(b);
  if (da != db) return da < db;
  // Within a degree, the lexicographically larger vector comes first.
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

IntPolynomial IntPolynomial::constant(std::size_t num_vars, const Integer& c) {
  IntPolynomial p(num_vars);
  p.add_term(ExponentVector(num_vars, 0), c);
  return p;
}

IntPolynomial IntPolynomial::variable(std::size_t num_vars, std::size_t var) {
  if (var >= num_vars) throw std::out_of_range("variable index out of range");
  ExponentVector e(num_vars, 0);
  e[var] = 1;
  return monomial(std::move(e));
}

IntPolynomial IntPolynomial::monomial(ExponentVector exps, const Integer& c) {
  IntPolynomial p(exps.size());
  p.add_term(exps, c);
  return p;
}

long IntPolynomial::total_degree() const {
  if (terms_.empty()) return -1;
  // Graded order: the last term has the highest degree.
  return static_cast<long>(qflag::total_degree(terms_.rbegin()->first));
}

bool IntPolynomial::is_homogeneous() const {
  if (terms_.empty()) return true;
  return qflag::total_degree(terms_.begin()->first) ==
         qflag::total_degree(terms_.rbegin()->first);
}

Integer IntPolynomial::coefficient(const ExponentVector& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Integer(0) : it->second;
}

void IntPolynomial::add_term(const ExponentVector& e, const Integer& c) {
  if (e.size() != num_vars_) throw std::invalid_argument("exponent vector length mismatch");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void IntPolynomial::require_same_vars(const IntPolynomial& o) const {
  if (num_vars_ != o.num_vars_) {
    throw std::invalid_argument("variable count mismatch: " + std::to_string(num_vars_) +
                                " vs " + std::to_string(o.num_vars_));
  }
}

IntPolynomial& IntPolynomial::operator+=(const IntPolynomial& o) {
  require_same_vars(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

IntPolynomial& IntPolynomial::operator-=(const IntPolynomial& o) {
  require_same_vars(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

IntPolynomial& IntPolynomial::operator*=(const Integer& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, coeff] : terms_) coeff *= c;
  return *this;
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
  a.require_same_vars(b);
  IntPolynomial out(a.num_vars_);
  ExponentVector e(a.num_vars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

IntPolynomial IntPolynomial::operator-() const {
  IntPolynomial out(*this);
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

IntPolynomial IntPolynomial::pow(unsigned k) const {
  IntPolynomial result = constant(num_vars_, 1);
  IntPolynomial base = *this;
  while (k) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k) base = base * base;
  }
  return result;
}

std::string IntPolynomial::to_string(std::span<const std::string> names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    Integer mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool is_const = qflag::total_degree(e) == 0;
    if (mag != 1 || is_const) {
      os << mag.get_str();
      if (!is_const) os << "*";
    }
    bool first_var = true;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!first_var) os << "*";
      first_var = false;
      if (i < names.size()) {
        os << names[i];
      } else {
        os << "u" << (i + 1);
      }
      if (e[i] > 1) os << "^" << e[i];
    }
  }
  return os.str();
}

IntPolynomial arith(const IntPolynomial& a, const IntPolynomial& b, ArithKind kind) {
  switch (kind) {
    case ArithKind::add: return a + b;
    case ArithKind::sub: return a - b;
    case ArithKind::mul: return a * b;
  }
  throw std::invalid_argument("unknown arithmetic kind");
}

IntPolynomial substitute(const IntPolynomial& p, std::size_t var, const IntPolynomial& replacement) {
  if (var >= p.num_vars()) throw std::out_of_range("substitution variable out of range");
  if (replacement.num_vars() != p.num_vars()) {
    throw std::invalid_argument("replacement variable count mismatch");
  }
  std::vector<IntPolynomial> powers{IntPolynomial::constant(p.num_vars(), 1)};
  IntPolynomial out(p.num_vars());
  for (const auto& [e, c] : p.terms()) {
    while (powers.size() <= e[var]) powers.push_back(powers.back() * replacement);
    ExponentVector rest = e;
    rest[var] = 0;
    IntPolynomial term = IntPolynomial::monomial(rest, c) * powers[e[var]];
    out += term;
  }
  return out;
}

LinearDiffDivision divrem_linear_diff(const IntPolynomial& p, std::size_t p_idx, std::size_t q_idx) {
  if (p_idx >= p.num_vars() || q_idx >= p.num_vars()) {
    throw std::out_of_range("divisor variable index out of range");
  }
  if (p_idx == q_idx) throw std::invalid_argument("divisor u_p - u_q needs p != q");

  IntPolynomial rem = p;
  IntPolynomial quot(p.num_vars());
  while (true) {
    std::uint32_t top = 0;
    for (const auto& [e, c] : rem.terms()) top = std::max(top, e[p_idx]);
    if (top == 0) break;
    std::vector<std::pair<ExponentVector, Integer>> lead;
    for (const auto& [e, c] : rem.terms()) {
      if (e[p_idx] == top) lead.emplace_back(e, c);
    }
    // c*m*u_p^k = c*m*u_p^(k-1)*(u_p - u_q) + c*m*u_p^(k-1)*u_q
    for (auto& [e, c] : lead) {
      rem.add_term(e, -c);
      ExponentVector lowered = e;
      --lowered[p_idx];
      quot.add_term(lowered, c);
      ++lowered[q_idx];
      rem.add_term(lowered, c);
    }
  }
  LinearDiffDivision out;
  out.divisible = rem.is_zero();
  if (out.divisible) out.quotient = std::move(quot);
  else out.quotient = IntPolynomial(p.num_vars());
  return out;
}

IntPolynomial elementary_symmetric(std::size_t i, std::span<const std::size_t> vars,
                                   std::size_t num_vars) {
  if (i > vars.size()) {
    throw std::out_of_range("elementary symmetric index " + std::to_string(i) +
                            " exceeds variable count " + std::to_string(vars.size()));
  }
  for (auto v : vars) {
    if (v >= num_vars) throw std::out_of_range("variable index out of range");
  }
  // Coefficients of prod_v (1 + t*u_v): e_k is the t^k coefficient.
  std::vector<IntPolynomial> e(i + 1, IntPolynomial(num_vars));
  e[0] = IntPolynomial::constant(num_vars, 1);
  for (std::size_t idx = 0; idx < vars.size(); ++idx) {
    IntPolynomial x = IntPolynomial::variable(num_vars, vars[idx]);
    for (std::size_t k = std::min(i, idx + 1); k >= 1; --k) e[k] += e[k - 1] * x;
  }
  return e[i];
}

namespace {

void fill_monomials(std::size_t pos, std::size_t remaining, ExponentVector& cur,
                    std::vector<ExponentVector>& out) {
  if (pos + 1 == cur.size()) {
    cur[pos] = static_cast<std::uint32_t>(remaining);
    out.push_back(cur);
    return;
  }
  for (std::size_t k = remaining + 1; k-- > 0;) {
    cur[pos] = static_cast<std::uint32_t>(k);
    fill_monomials(pos + 1, remaining - k, cur, out);
  }
}

}  // namespace

std::vector<ExponentVector> monomials_of_degree(std::size_t d, std::size_t num_vars) {
  std::vector<ExponentVector> out;
  if (num_vars == 0) {
    if (d == 0) out.emplace_back();
    return out;
  }
  ExponentVector cur(num_vars, 0);
  fill_monomials(0, d, cur, out);
  return out;
}

Integer binomial(std::size_t n, std::size_t k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

std::map<long, IntPolynomial> homogeneous_components(const IntPolynomial& p) {
  std::map<long, IntPolynomial> out;
  for (const auto& [e, c] : p.terms()) {
    auto d = static_cast<long>(total_degree(e));
    auto it = out.try_emplace(d, IntPolynomial(p.num_vars())).first;
    it->second.add_term(e, c);
  }
  return out;
}

nlohmann::json poly_to_json(const IntPolynomial& p) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [e, c] : p.terms()) {
    arr.push_back({{"exp", e}, {"coeff", c.get_str()}});
  }
  return arr;
}

IntPolynomial poly_from_json(const nlohmann::json& j, std::size_t num_vars) {
  if (!j.is_array()) throw std::invalid_argument("polynomial JSON must be an array of terms");
  IntPolynomial p(num_vars);
  for (const auto& t : j) {
    auto e = t.at("exp").get<ExponentVector>();
    if (e.size() != num_vars) throw std::invalid_argument("term exponent length mismatch");
    Integer c;
    if (c.set_str(t.at("coeff").get<std::string>(), 10) != 0) {
      throw std::invalid_argument("malformed coefficient");
    }
    p.add_term(e, c);
  }
  return p;
}

}  // namespace qflag
