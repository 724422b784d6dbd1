#include "qflag/intlinalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace qflag {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("ragged matrix initializer");
    for (long v : r) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

void IntMatrix::append_row(std::span<const Integer> values) {
  if (rows_ == 0 && cols_ == 0) cols_ = values.size();
  if (values.size() != cols_) throw std::invalid_argument("row length mismatch");
  data_.insert(data_.end(), values.begin(), values.end());
  ++rows_;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

bool IntMatrix::row_is_zero(std::size_t r) const {
  return std::all_of(row(r).begin(), row(r).end(), [](const Integer& v) { return v == 0; });
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& v) { return v == 0; });
}

IntMatrix IntMatrix::without_zero_rows() const {
  IntMatrix out(0, cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    if (!row_is_zero(r)) out.append_row(row(r));
  }
  return out;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product shape mismatch");
  IntMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

namespace {

// row_dst -= q * row_src, from column `from` onward.
void row_axpy(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& q, std::size_t from = 0) {
  for (std::size_t c = from; c < m.cols(); ++c) {
    if (m(src, c) != 0) m(dst, c) -= q * m(src, c);
  }
}

void negate_row(IntMatrix& m, std::size_t r) {
  for (auto& v : m.row(r)) v = -v;
}

HermiteForm hermite_impl(const IntMatrix& m, bool with_transform) {
  HermiteForm out;
  out.hnf = m;
  if (with_transform) out.transform = IntMatrix::identity(m.rows());
  IntMatrix& h = out.hnf;
  IntMatrix& u = out.transform;
  std::size_t r = 0;
  for (std::size_t c = 0; c < h.cols() && r < h.rows(); ++c) {
    bool have_pivot = false;
    while (true) {
      std::size_t best = h.rows();
      for (std::size_t i = r; i < h.rows(); ++i) {
        if (h(i, c) != 0 && (best == h.rows() || abs(h(i, c)) < abs(h(best, c)))) best = i;
      }
      if (best == h.rows()) break;
      have_pivot = true;
      h.swap_rows(r, best);
      if (with_transform) u.swap_rows(r, best);
      bool cleared = true;
      for (std::size_t i = r + 1; i < h.rows(); ++i) {
        if (h(i, c) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), h(i, c).get_mpz_t(), h(r, c).get_mpz_t());
        row_axpy(h, i, r, q, c);
        if (with_transform) row_axpy(u, i, r, q);
        if (h(i, c) != 0) cleared = false;
      }
      if (cleared) break;
    }
    if (!have_pivot) continue;
    if (h(r, c) < 0) {
      negate_row(h, r);
      if (with_transform) negate_row(u, r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      if (h(i, c) == 0) continue;
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), h(i, c).get_mpz_t(), h(r, c).get_mpz_t());
      if (q == 0) continue;
      row_axpy(h, i, r, q, c);
      if (with_transform) row_axpy(u, i, r, q);
    }
    ++r;
  }
  out.rank = r;
  return out;
}

bool is_row_diagonal(const IntMatrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (r != c && m(r, c) != 0) return false;
  return true;
}

}  // namespace

HermiteForm hermite_normal_form(const IntMatrix& m) { return hermite_impl(m, true); }

std::vector<Integer> smith_invariants(const IntMatrix& m) {
  // Alternate row and column Hermite reductions until diagonal.
  IntMatrix a = hermite_impl(m, false).hnf.without_zero_rows();
  while (!is_row_diagonal(a)) {
    a = hermite_impl(a.transposed(), false).hnf.without_zero_rows();
  }
  std::vector<Integer> d;
  for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i) {
    if (a(i, i) != 0) d.push_back(abs(a(i, i)));
  }
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      Integer g = gcd(d[i], d[j]);
      Integer l = d[i] / g * d[j];
      d[i] = g;
      d[j] = l;
    }
  }
  return d;
}

std::size_t rank(const IntMatrix& m) { return hermite_impl(m, false).rank; }

IntMatrix kernel_basis(const IntMatrix& m, Exec exec) {
  std::vector<SparseRow> rows(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (m(r, c) != 0) rows[r].emplace_back(c, m(r, c));
  return kernel_basis(rows, m.cols(), exec);
}

IntMatrix kernel_basis(std::span<const SparseRow> rows, std::size_t cols, Exec exec) {
  // Start from the standard basis of Z^cols. Each constraint row r cuts the
  // current lattice L = span(b_i) down to {sum t_i b_i : sum t_i <r,b_i> = 0};
  // a Euclid-style sequence of unimodular updates concentrates the values
  // <r,b_i> on one vector, which is then dropped.
  std::vector<std::vector<Integer>> basis(cols, std::vector<Integer>(cols));
  for (std::size_t i = 0; i < cols; ++i) basis[i][i] = 1;

  std::vector<Integer> s;
  for (const auto& row : rows) {
    if (row.empty() || basis.empty()) continue;
    const auto k = static_cast<long>(basis.size());
    s.assign(basis.size(), Integer(0));
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
      for (long i = 0; i < k; ++i) {
        Integer acc = 0;
        for (const auto& [c, v] : row) {
          if (basis[i][c] != 0) acc += v * basis[i][c];
        }
        s[i] = acc;
      }
    } else {
      for (long i = 0; i < k; ++i) {
        Integer acc = 0;
        for (const auto& [c, v] : row) {
          if (basis[i][c] != 0) acc += v * basis[i][c];
        }
        s[i] = acc;
      }
    }

    std::vector<std::size_t> nz;
    for (std::size_t i = 0; i < s.size(); ++i)
      if (s[i] != 0) nz.push_back(i);
    if (nz.empty()) continue;

    while (nz.size() > 1) {
      std::size_t piv = nz.front();
      for (auto i : nz)
        if (abs(s[i]) < abs(s[piv])) piv = i;
      const auto& bp = basis[piv];
      std::vector<std::size_t> next{piv};
      for (auto j : nz) {
        if (j == piv) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), s[j].get_mpz_t(), s[piv].get_mpz_t());
        auto& bj = basis[j];
        for (std::size_t c = 0; c < cols; ++c) {
          if (bp[c] != 0) bj[c] -= q * bp[c];
        }
        s[j] -= q * s[piv];
        if (s[j] != 0) next.push_back(j);
      }
      std::sort(next.begin(), next.end());
      nz = std::move(next);
    }
    basis.erase(basis.begin() + static_cast<long>(nz.front()));
  }

  IntMatrix out(0, cols);
  for (const auto& b : basis) out.append_row(b);
  return out;
}

bool lattices_equal(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.cols()) throw std::invalid_argument("lattices live in different dimensions");
  return hermite_impl(a, false).hnf.without_zero_rows() ==
         hermite_impl(b, false).hnf.without_zero_rows();
}

std::optional<std::vector<Integer>> solve_row_combination(const IntMatrix& m,
                                                          std::span<const Integer> target) {
  if (target.size() != m.cols()) throw std::invalid_argument("target length mismatch");
  HermiteForm hf = hermite_normal_form(m);
  std::vector<Integer> residual(target.begin(), target.end());
  std::vector<Integer> y(hf.rank);
  for (std::size_t i = 0; i < hf.rank; ++i) {
    std::size_t pc = 0;
    while (hf.hnf(i, pc) == 0) ++pc;
    if (residual[pc] == 0) continue;
    if (!mpz_divisible_p(residual[pc].get_mpz_t(), hf.hnf(i, pc).get_mpz_t())) return std::nullopt;
    y[i] = residual[pc] / hf.hnf(i, pc);
    for (std::size_t c = pc; c < m.cols(); ++c) residual[c] -= y[i] * hf.hnf(i, c);
  }
  if (std::any_of(residual.begin(), residual.end(), [](const Integer& v) { return v != 0; })) {
    return std::nullopt;
  }
  std::vector<Integer> coeffs(m.rows());
  for (std::size_t i = 0; i < hf.rank; ++i) {
    if (y[i] == 0) continue;
    for (std::size_t j = 0; j < m.rows(); ++j) coeffs[j] += y[i] * hf.transform(i, j);
  }
  return coeffs;
}

nlohmann::json matrix_to_json(const IntMatrix& m) {
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& v : m.row(r)) row.push_back(v.get_str());
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace qflag
