#include "qflag/flagcomb.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "qflag/exec.hpp"

namespace qflag {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (int v : images_) {
    if (v < 0 || v >= size() || seen[static_cast<std::size_t>(v)]) {
      throw std::invalid_argument("not a permutation of 0..n-1");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  return Permutation(std::move(v));
}

Permutation Permutation::from_one_based(const std::vector<int>& images) {
  std::vector<int> v(images.size());
  std::transform(images.begin(), images.end(), v.begin(), [](int x) { return x - 1; });
  return Permutation(std::move(v));
}

Permutation Permutation::transposition(int n, int p, int q) {
  return identity(n).right_transpose(p, q);
}

std::vector<int> Permutation::one_based() const {
  std::vector<int> v(images_.size());
  std::transform(images_.begin(), images_.end(), v.begin(), [](int x) { return x + 1; });
  return v;
}

Permutation Permutation::compose(const Permutation& other) const {
  if (other.size() != size()) throw std::invalid_argument("permutation size mismatch");
  std::vector<int> v(images_.size());
  for (int i = 0; i < size(); ++i) v[static_cast<std::size_t>(i)] = (*this)(other(i));
  return Permutation(std::move(v));
}

Permutation Permutation::inverse() const {
  std::vector<int> v(images_.size());
  for (int i = 0; i < size(); ++i) v[static_cast<std::size_t>((*this)(i))] = i;
  return Permutation(std::move(v));
}

Permutation Permutation::left_transpose(int p, int q) const {
  if (p < 0 || q < 0 || p >= size() || q >= size()) throw std::out_of_range("transposition index");
  Permutation out = *this;
  for (int& v : out.images_) {
    if (v == p) v = q;
    else if (v == q) v = p;
  }
  return out;
}

Permutation Permutation::right_transpose(int p, int q) const {
  if (p < 0 || q < 0 || p >= size() || q >= size()) throw std::out_of_range("transposition index");
  Permutation out = *this;
  std::swap(out.images_[static_cast<std::size_t>(p)], out.images_[static_cast<std::size_t>(q)]);
  return out;
}

int Permutation::inversions() const {
  int count = 0;
  for (int i = 0; i < size(); ++i)
    for (int j = i + 1; j < size(); ++j)
      if ((*this)(i) > (*this)(j)) ++count;
  return count;
}

int Permutation::coinversions() const { return size() * (size() - 1) / 2 - inversions(); }

std::string Permutation::to_string() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < size(); ++i) os << (i ? "," : "") << (*this)(i) + 1;
  os << "]";
  return os.str();
}

nlohmann::json permutation_to_json(const Permutation& w) { return w.one_based(); }

Permutation permutation_from_json(const nlohmann::json& j) {
  return Permutation::from_one_based(j.get<std::vector<int>>());
}

std::vector<Permutation> all_permutations(int n, int cap) {
  if (n < 1) throw std::invalid_argument("permutation size must be positive");
  if (n > cap) {
    throw BudgetExceeded("n = " + std::to_string(n) + " exceeds the permutation cap " +
                         std::to_string(cap));
  }
  std::vector<Permutation> out;
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  do {
    out.emplace_back(v);
  } while (std::next_permutation(v.begin(), v.end()));
  return out;
}

std::string to_string(EdgeConvention c) { return c == EdgeConvention::left ? "left" : "right"; }

EdgeConvention edge_convention_from_string(const std::string& s) {
  if (s == "left") return EdgeConvention::left;
  if (s == "right") return EdgeConvention::right;
  throw std::invalid_argument("convention must be 'left' or 'right', got '" + s + "'");
}

std::vector<GkmEdge> gkm_edges(int n, EdgeConvention convention, int cap) {
  if (n < 2) return {};
  std::vector<GkmEdge> out;
  for (const auto& w : all_permutations(n, cap)) {
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        Permutation v = convention == EdgeConvention::left ? w.left_transpose(p, q)
                                                           : w.right_transpose(p, q);
        if (w < v) out.push_back({w, std::move(v), p, q});
      }
  }
  return out;
}

HeightParams::HeightParams(std::vector<Rational> a, std::vector<Rational> r)
    : a_(std::move(a)), r_(std::move(r)) {
  if (a_.size() != r_.size()) throw std::invalid_argument("height parameter lengths differ");
}

HeightParams HeightParams::standard(int n) {
  std::vector<Rational> v;
  for (int nu = 1; nu <= n; ++nu) v.emplace_back(2 * nu - n - 1);
  return {v, v};
}

std::vector<double> HeightParams::a_double() const {
  std::vector<double> out;
  for (const auto& x : a_) out.push_back(x.get_d());
  return out;
}

std::vector<double> HeightParams::r_double() const {
  std::vector<double> out;
  for (const auto& x : r_) out.push_back(x.get_d());
  return out;
}

namespace {

bool strictly_increasing_zero_sum(const std::vector<Rational>& v) {
  Rational sum = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    sum += v[i];
    if (i && !(v[i - 1] < v[i])) return false;
  }
  return sum == 0;
}

bool pairwise_distinct(std::vector<Rational> v) {
  std::sort(v.begin(), v.end());
  return std::adjacent_find(v.begin(), v.end()) == v.end();
}

}  // namespace

bool HeightParams::is_standard_chamber() const {
  return strictly_increasing_zero_sum(a_) && strictly_increasing_zero_sum(r_);
}

bool HeightParams::is_generic() const { return pairwise_distinct(a_) && pairwise_distinct(r_); }

Rational parse_rational(const std::string& text) {
  std::string s = text;
  s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == ' '; }), s.end());
  if (s.empty()) throw std::invalid_argument("empty number");
  if (s.find('/') != std::string::npos) {
    Rational q;
    if (q.set_str(s, 10) != 0 || q.get_den() == 0) throw std::invalid_argument("bad rational '" + text + "'");
    q.canonicalize();
    return q;
  }
  bool neg = false;
  std::size_t pos = 0;
  if (s[pos] == '+' || s[pos] == '-') neg = s[pos++] == '-';
  std::string digits;
  std::size_t frac = 0;
  bool dot = false;
  for (; pos < s.size(); ++pos) {
    char c = s[pos];
    if (c == '.' && !dot) {
      dot = true;
    } else if (c >= '0' && c <= '9') {
      digits.push_back(c);
      if (dot) ++frac;
    } else {
      throw std::invalid_argument("bad number '" + text + "'");
    }
  }
  if (digits.empty()) throw std::invalid_argument("bad number '" + text + "'");
  Integer num(digits, 10);
  Integer den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, frac);
  Rational q(num, den);
  q.canonicalize();
  return neg ? Rational(-q) : q;
}

Rational height(const Permutation& w, const HeightParams& hp) {
  if (w.size() != hp.size()) throw std::invalid_argument("height parameter size mismatch");
  Rational h = 0;
  for (int nu = 0; nu < w.size(); ++nu) {
    h += hp.a()[static_cast<std::size_t>(nu)] * hp.r()[static_cast<std::size_t>(w(nu))];
  }
  return h;
}

std::vector<std::pair<int, int>> descent_pairs(const Permutation& w, const HeightParams& hp,
                                               EdgeConvention convention) {
  const Rational hw = height(w, hp);
  std::vector<std::pair<int, int>> out;
  for (int p = 0; p < w.size(); ++p)
    for (int q = p + 1; q < w.size(); ++q) {
      Permutation v = convention == EdgeConvention::left ? w.left_transpose(p, q)
                                                         : w.right_transpose(p, q);
      Rational hv = height(v, hp);
      if (hv == hw) {
        throw NonGenericError("height tie between " + w.to_string() + " and " + v.to_string());
      }
      if (hw > hv) out.emplace_back(p, q);
    }
  return out;
}

int morse_index(const Permutation& w, const HeightParams& hp, EdgeConvention convention) {
  return 4 * static_cast<int>(descent_pairs(w, hp, convention).size());
}

std::vector<Integer> q_factorial_coefficients(int n) {
  if (n < 1) throw std::invalid_argument("q-factorial needs n >= 1");
  std::vector<Integer> c{1};
  for (int nu = 2; nu <= n; ++nu) {
    std::vector<Integer> next(c.size() + static_cast<std::size_t>(nu) - 1);
    for (std::size_t i = 0; i < c.size(); ++i)
      for (int k = 0; k < nu; ++k) next[i + static_cast<std::size_t>(k)] += c[i];
    c = std::move(next);
  }
  return c;
}

IntPolynomial q_factorial(int n) {
  IntPolynomial p(1);
  auto c = q_factorial_coefficients(n);
  for (std::size_t k = 0; k < c.size(); ++k) {
    p.add_term({static_cast<std::uint32_t>(k)}, c[k]);
  }
  return p;
}

}  // namespace qflag
