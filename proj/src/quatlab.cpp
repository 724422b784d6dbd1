#include "qflag/quatlab.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

namespace qflag {

double Quaternion::norm() const { return std::sqrt(norm2()); }

Quaternion Quaternion::inverse() const {
  const double n2 = norm2();
  if (n2 == 0) throw std::domain_error("inverse of the zero quaternion");
  Quaternion c = conj();
  return (1.0 / n2) * c;
}

Quaternion& Quaternion::operator+=(const Quaternion& o) {
  re += o.re;
  i += o.i;
  j += o.j;
  k += o.k;
  return *this;
}

Quaternion& Quaternion::operator-=(const Quaternion& o) {
  re -= o.re;
  i -= o.i;
  j -= o.j;
  k -= o.k;
  return *this;
}

Quaternion operator*(const Quaternion& a, const Quaternion& b) {
  return {a.re * b.re - a.i * b.i - a.j * b.j - a.k * b.k,
          a.re * b.i + a.i * b.re + a.j * b.k - a.k * b.j,
          a.re * b.j - a.i * b.k + a.j * b.re + a.k * b.i,
          a.re * b.k + a.i * b.j - a.j * b.i + a.k * b.re};
}

double distance(const Quaternion& a, const Quaternion& b) { return (a - b).norm(); }

QuatMatrix QuatMatrix::identity(int n) {
  QuatMatrix m(n);
  for (int d = 0; d < n; ++d) m(d, d) = Quaternion::real(1);
  return m;
}

QuatMatrix QuatMatrix::diagonal(std::span<const double> d) {
  QuatMatrix m(static_cast<int>(d.size()));
  for (int i = 0; i < m.size(); ++i) m(i, i) = Quaternion::real(d[static_cast<std::size_t>(i)]);
  return m;
}

QuatMatrix QuatMatrix::unit(int n, int p, int q, const Quaternion& h) {
  QuatMatrix m(n);
  m(p, q) = h;
  return m;
}

QuatMatrix QuatMatrix::adjoint() const {
  QuatMatrix m(n_);
  for (int r = 0; r < n_; ++r)
    for (int c = 0; c < n_; ++c) m(c, r) = (*this)(r, c).conj();
  return m;
}

Quaternion QuatMatrix::trace() const {
  Quaternion t;
  for (int d = 0; d < n_; ++d) t += (*this)(d, d);
  return t;
}

double QuatMatrix::frobenius() const {
  double s = 0;
  for (const auto& q : data_) s += q.norm2();
  return std::sqrt(s);
}

bool QuatMatrix::is_hermitian(double tol) const {
  for (int r = 0; r < n_; ++r)
    for (int c = r; c < n_; ++c)
      if (distance((*this)(r, c), (*this)(c, r).conj()) > tol) return false;
  return true;
}

std::vector<double> QuatMatrix::flatten() const {
  std::vector<double> v;
  v.reserve(data_.size() * 4);
  for (const auto& q : data_) {
    v.push_back(q.re);
    v.push_back(q.i);
    v.push_back(q.j);
    v.push_back(q.k);
  }
  return v;
}

QuatMatrix QuatMatrix::unflatten(int n, std::span<const double> v) {
  if (v.size() != static_cast<std::size_t>(4 * n * n)) throw std::invalid_argument("flattened size mismatch");
  QuatMatrix m(n);
  for (std::size_t e = 0; e < m.data_.size(); ++e) m.data_[e] = {v[4 * e], v[4 * e + 1], v[4 * e + 2], v[4 * e + 3]};
  return m;
}

QuatMatrix& QuatMatrix::operator+=(const QuatMatrix& o) {
  if (o.n_ != n_) throw std::invalid_argument("matrix shape mismatch");
  for (std::size_t e = 0; e < data_.size(); ++e) data_[e] += o.data_[e];
  return *this;
}

QuatMatrix& QuatMatrix::operator-=(const QuatMatrix& o) {
  if (o.n_ != n_) throw std::invalid_argument("matrix shape mismatch");
  for (std::size_t e = 0; e < data_.size(); ++e) data_[e] -= o.data_[e];
  return *this;
}

QuatMatrix operator*(const QuatMatrix& a, const QuatMatrix& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("matrix shape mismatch");
  const int n = a.n_;
  QuatMatrix out(n);
  for (int r = 0; r < n; ++r)
    for (int k = 0; k < n; ++k) {
      const Quaternion& x = a(r, k);
      if (x.norm2() == 0) continue;
      for (int c = 0; c < n; ++c) out(r, c) += x * b(k, c);
    }
  return out;
}

QuatMatrix operator*(double s, QuatMatrix a) {
  for (auto& q : a.data_) q = s * q;
  return a;
}

double inner(const QuatMatrix& x, const QuatMatrix& y) {
  if (x.size() != y.size()) throw std::invalid_argument("inner product shape mismatch");
  double s = 0;
  for (int r = 0; r < x.size(); ++r)
    for (int c = 0; c < x.size(); ++c) s += (x(r, c) * y(c, r)).re;
  return s;
}

QuatMatrix commutator(const QuatMatrix& a, const QuatMatrix& b) { return a * b - b * a; }

QuatMatrix expm(const QuatMatrix& a) {
  // Scaling and squaring with a Taylor core.
  int squarings = 0;
  double norm = a.frobenius();
  while (norm > 0.25) {
    norm /= 2;
    ++squarings;
  }
  QuatMatrix scaled = std::ldexp(1.0, -squarings) * a;
  QuatMatrix result = QuatMatrix::identity(a.size());
  QuatMatrix term = QuatMatrix::identity(a.size());
  for (int k = 1; k <= 18; ++k) {
    term = (1.0 / k) * (term * scaled);
    result += term;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

std::vector<double> hermitian_eigenvalues(const QuatMatrix& x) {
  // q = z1 + z2 j  |->  [[z1, z2], [-conj(z2), conj(z1)]]
  const int n = x.size();
  Eigen::MatrixXcd c(2 * n, 2 * n);
  for (int r = 0; r < n; ++r)
    for (int col = 0; col < n; ++col) {
      const Quaternion& q = x(r, col);
      std::complex<double> z1(q.re, q.i), z2(q.j, q.k);
      c(2 * r, 2 * col) = z1;
      c(2 * r, 2 * col + 1) = z2;
      c(2 * r + 1, 2 * col) = -std::conj(z2);
      c(2 * r + 1, 2 * col + 1) = std::conj(z1);
    }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(c, Eigen::EigenvaluesOnly);
  std::vector<double> out;
  for (int e = 0; e < 2 * n; e += 2) out.push_back(es.eigenvalues()(e));
  return out;
}

std::vector<QuatMatrix> sp_basis(int n) {
  const Quaternion units[3] = {Quaternion::unit_i(), Quaternion::unit_j(), Quaternion::unit_k()};
  std::vector<QuatMatrix> out;
  for (int p = 0; p < n; ++p)
    for (int q = p + 1; q < n; ++q) {
      out.push_back(QuatMatrix::unit(n, p, q, Quaternion::real(1)) -
                    QuatMatrix::unit(n, q, p, Quaternion::real(1)));
      for (const auto& u : units) out.push_back(QuatMatrix::unit(n, p, q, u) + QuatMatrix::unit(n, q, p, u));
    }
  for (int p = 0; p < n; ++p)
    for (const auto& u : units) out.push_back(QuatMatrix::unit(n, p, p, u));
  return out;
}

std::vector<QuatMatrix> kpq_basis(int n, int p, int q) {
  if (p == q || p < 0 || q < 0 || p >= n || q >= n) throw std::out_of_range("bad K_pq indices");
  const Quaternion units[3] = {Quaternion::unit_i(), Quaternion::unit_j(), Quaternion::unit_k()};
  std::vector<QuatMatrix> out;
  out.push_back(QuatMatrix::unit(n, p, q, Quaternion::real(1)) -
                QuatMatrix::unit(n, q, p, Quaternion::real(1)));
  for (const auto& u : units) out.push_back(QuatMatrix::unit(n, p, q, u) + QuatMatrix::unit(n, q, p, u));
  for (const auto& u : units) {
    out.push_back(QuatMatrix::unit(n, p, p, u));
    out.push_back(QuatMatrix::unit(n, q, q, u));
  }
  return out;
}

namespace {

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double standard_normal(std::mt19937_64& rng) {
  double u1 = uniform01(rng);
  while (u1 == 0) u1 = uniform01(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace

Quaternion random_unit_quaternion(std::mt19937_64& rng) {
  Quaternion q{standard_normal(rng), standard_normal(rng), standard_normal(rng), standard_normal(rng)};
  return (1.0 / q.norm()) * q;
}

QuatMatrix random_symplectic(int n, std::mt19937_64& rng) {
  QuatMatrix omega(n);
  for (const auto& g : sp_basis(n)) omega += standard_normal(rng) * g;
  return expm(omega);
}

OrbitPoint orbit_point(const Permutation& w, std::span<const double> r) {
  const int n = w.size();
  if (static_cast<int>(r.size()) != n) throw std::invalid_argument("spectrum size mismatch");
  std::vector<double> d(r.size());
  for (int nu = 0; nu < n; ++nu) d[static_cast<std::size_t>(nu)] = r[static_cast<std::size_t>(w(nu))];
  // Permutation matrix P with P Diag(r) P^* = Diag(r_{w(.)}).
  QuatMatrix perm(n);
  for (int nu = 0; nu < n; ++nu) perm(nu, w(nu)) = Quaternion::real(1);
  return {QuatMatrix::diagonal(d), perm};
}

OrbitPoint sphere_point(const Permutation& w, int p, int q, double angle, const Quaternion& axis,
                        std::span<const double> r) {
  if (std::abs(axis.norm() - 1.0) > 1e-12) throw std::invalid_argument("rotation axis must be a unit quaternion");
  const int n = w.size();
  if (p == q || p < 0 || q < 0 || p >= n || q >= n) throw std::out_of_range("bad sphere indices");
  OrbitPoint base = orbit_point(w, r);
  const double theta = angle / 2;
  QuatMatrix rot = QuatMatrix::identity(n);
  rot(p, p) = Quaternion::real(std::cos(theta));
  rot(q, q) = Quaternion::real(std::cos(theta));
  rot(p, q) = std::sin(theta) * axis;
  rot(q, p) = -std::sin(theta) * axis.conj();
  return {rot * base.x * rot.adjoint(), rot * base.conjugator};
}

TangentFrame tangent_frame(const QuatMatrix& x, std::span<const QuatMatrix> generators, double rel_tol) {
  const int dim = 4 * x.size() * x.size();
  Eigen::MatrixXd t(dim, static_cast<Eigen::Index>(generators.size()));
  for (std::size_t g = 0; g < generators.size(); ++g) {
    auto v = commutator(generators[g], x).flatten();
    t.col(static_cast<Eigen::Index>(g)) = Eigen::Map<Eigen::VectorXd>(v.data(), dim);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(t, Eigen::ComputeThinU);
  TangentFrame frame;
  const auto& s = svd.singularValues();
  const double top = s.size() ? s(0) : 0.0;
  for (Eigen::Index c = 0; c < s.size(); ++c) {
    if (top == 0 || s(c) <= rel_tol * top) break;
    frame.singular_values.push_back(s(c));
    Eigen::VectorXd col = svd.matrixU().col(c);
    frame.basis.emplace_back(col.data(), col.data() + col.size());
  }
  return frame;
}

namespace {

std::vector<double> project(std::span<const double> v, const TangentFrame& frame) {
  std::vector<double> out(v.size(), 0.0);
  for (const auto& b : frame.basis) {
    double c = 0;
    for (std::size_t e = 0; e < v.size(); ++e) c += b[e] * v[e];
    for (std::size_t e = 0; e < v.size(); ++e) out[e] += c * b[e];
  }
  return out;
}

double norm(std::span<const double> v) {
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

Gradient numeric_gradient(const QuatMatrix& x, std::span<const double> a) {
  const int n = x.size();
  if (static_cast<int>(a.size()) != n) throw std::invalid_argument("height vector size mismatch");
  const auto gens = sp_basis(n);
  TangentFrame frame = tangent_frame(x, gens);
  const std::size_t expected = static_cast<std::size_t>(2 * n * (n - 1));
  if (frame.basis.size() != expected ||
      (expected > 0 && frame.singular_values.back() < 1e-6 * frame.singular_values.front())) {
    throw NonGenericError("tangent frame has rank " + std::to_string(frame.basis.size()) +
                          ", expected " + std::to_string(expected) + " (degenerate spectrum?)");
  }
  auto av = QuatMatrix::diagonal(a).flatten();
  auto g = project(av, frame);
  return {QuatMatrix::unflatten(n, g), norm(g)};
}

double hessian_form(const QuatMatrix& x, std::span<const double> a, const QuatMatrix& omega) {
  return inner(QuatMatrix::diagonal(a), commutator(omega, commutator(omega, x)));
}

double hessian_form_fd(const QuatMatrix& x, std::span<const double> a, const QuatMatrix& omega,
                       double step) {
  const QuatMatrix amat = QuatMatrix::diagonal(a);
  auto h = [&](double t) {
    QuatMatrix e = expm(t * omega);
    return inner(amat, e * x * e.adjoint());
  };
  return (h(step) - 2 * h(0) + h(-step)) / (step * step);
}

HessianIndex numeric_hessian_index(const Permutation& w, const HeightParams& hp) {
  const int n = w.size();
  const auto a = hp.a_double();
  const auto r = hp.r_double();
  const QuatMatrix x = orbit_point(w, r).x;
  const auto gens = sp_basis(n);
  const auto m = static_cast<Eigen::Index>(gens.size());
  const int dim = 4 * n * n;
  const auto expected = static_cast<Eigen::Index>(2 * n * (n - 1));

  std::vector<QuatMatrix> images;
  Eigen::MatrixXd t(dim, m);
  for (Eigen::Index g = 0; g < m; ++g) {
    images.push_back(commutator(gens[static_cast<std::size_t>(g)], x));
    auto v = images.back().flatten();
    t.col(g) = Eigen::Map<Eigen::VectorXd>(v.data(), dim);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(t, Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  if (expected == 0) return {};
  if (s(expected - 1) < 1e-9 * s(0)) throw NonGenericError("critical point has a degenerate orbit");

  // Polarized second variation on the generators.
  const QuatMatrix amat = QuatMatrix::diagonal(a);
  Eigen::MatrixXd b(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = i; j < m; ++j) {
      const auto& gi = gens[static_cast<std::size_t>(i)];
      const auto& gj = gens[static_cast<std::size_t>(j)];
      double v = 0.5 * (inner(amat, commutator(gi, images[static_cast<std::size_t>(j)])) +
                        inner(amat, commutator(gj, images[static_cast<std::size_t>(i)])));
      b(i, j) = v;
      b(j, i) = v;
    }
  Eigen::MatrixXd vr = svd.matrixV().leftCols(expected);
  Eigen::VectorXd inv_s = s.head(expected).cwiseInverse();
  Eigen::MatrixXd h = inv_s.asDiagonal() * (vr.transpose() * b * vr) * inv_s.asDiagonal();
  h = 0.5 * (h + h.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h, Eigen::EigenvaluesOnly);

  HessianIndex out;
  out.min_abs_eigenvalue = std::numeric_limits<double>::infinity();
  for (Eigen::Index e = 0; e < es.eigenvalues().size(); ++e) {
    const double lam = es.eigenvalues()(e);
    out.eigenvalues.push_back(lam);
    out.min_abs_eigenvalue = std::min(out.min_abs_eigenvalue, std::abs(lam));
    if (lam < 0) ++out.index;
  }
  if (out.min_abs_eigenvalue <= kHessianSeparation) {
    throw NonGenericError("Hessian at " + w.to_string() + " has an eigenvalue within " +
                          std::to_string(kHessianSeparation) + " of zero");
  }
  return out;
}

namespace {

struct SampleResult {
  double residual = 0;
  double gradient = 0;
  double radius_dev = 0;
  int rank = 0;
  bool interior = false;
};

SampleResult meridian_sample(const Permutation& w, int p, int q, double angle, const Quaternion& axis,
                             std::span<const double> a, std::span<const double> r,
                             const QuatMatrix& center, double radius) {
  SampleResult out;
  const QuatMatrix z = sphere_point(w, p, q, angle, axis, r).x;
  const Gradient g = numeric_gradient(z, a);
  const auto kgens = kpq_basis(w.size(), p, q);
  const TangentFrame sphere = tangent_frame(z, kgens);
  auto gv = g.vector.flatten();
  auto along = project(gv, sphere);
  for (std::size_t e = 0; e < gv.size(); ++e) gv[e] -= along[e];
  out.residual = norm(gv);
  out.gradient = g.norm;
  out.radius_dev = std::abs((z - center).frobenius() - radius);
  out.rank = static_cast<int>(sphere.basis.size());
  out.interior = angle >= 0.2 && angle <= std::numbers::pi - 0.2;
  return out;
}

}  // namespace

MeridianReport meridian_tangency_check(const Permutation& w, int p, int q, std::size_t samples,
                                       const HeightParams& hp, std::uint64_t seed, Exec exec) {
  const Permutation south = w.right_transpose(p, q);
  if (!(height(w, hp) > height(south, hp))) {
    throw std::invalid_argument("meridian check needs h(w) > h(w s_pq) for " + w.to_string());
  }
  const auto a = hp.a_double();
  const auto r = hp.r_double();
  const QuatMatrix north_x = orbit_point(w, r).x;
  const QuatMatrix center = 0.5 * (north_x + orbit_point(south, r).x);
  const double radius = (north_x - center).frobenius();

  std::vector<SampleResult> results(samples);
  auto run = [&](std::size_t s) {
    // One deterministic stream per (seed, sphere, sample).
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(q),
                      static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(w.inversions()),
                      static_cast<std::uint32_t>(w(0))};
    std::vector<std::uint32_t> key(w.images().begin(), w.images().end());
    std::mt19937_64 rng(seq);
    for (auto v : key) rng.discard(v);
    const double angle = std::numbers::pi * (static_cast<double>(s) + uniform01(rng)) /
                         static_cast<double>(samples);
    const Quaternion axis = random_unit_quaternion(rng);
    results[s] = meridian_sample(w, p, q, angle, axis, a, r, center, radius);
  };
  const auto ns = static_cast<long>(samples);
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long s = 0; s < ns; ++s) run(static_cast<std::size_t>(s));
  } else {
    for (long s = 0; s < ns; ++s) run(static_cast<std::size_t>(s));
  }

  MeridianReport rep;
  rep.samples = samples;
  rep.min_interior_gradient = std::numeric_limits<double>::infinity();
  rep.min_sphere_rank = std::numeric_limits<int>::max();
  for (const auto& res : results) {
    rep.max_residual = std::max(rep.max_residual, res.residual);
    rep.max_radius_deviation = std::max(rep.max_radius_deviation, res.radius_dev);
    rep.min_sphere_rank = std::min(rep.min_sphere_rank, res.rank);
    rep.max_sphere_rank = std::max(rep.max_sphere_rank, res.rank);
    if (res.interior) rep.min_interior_gradient = std::min(rep.min_interior_gradient, res.gradient);
  }
  const SampleResult pole = meridian_sample(w, p, q, 0.0, Quaternion::unit_i(), a, r, center, radius);
  rep.max_pole_gradient = pole.gradient;
  rep.max_residual = std::max(rep.max_residual, pole.residual);
  return rep;
}

FixedLineCheck t_fixed_point_check(std::span<const Quaternion> h) {
  std::vector<std::size_t> support;
  for (std::size_t m = 0; m < h.size(); ++m)
    if (h[m].norm2() > 0) support.push_back(m);
  if (support.empty()) throw std::invalid_argument("the zero vector spans no line");

  // Deviation of (h_m conj(z_m)) from lambda h_m, with lambda pinned by the
  // first support coordinate.
  auto deviation = [&](const std::vector<Quaternion>& zbar) {
    const std::size_t mu = support.front();
    const Quaternion lambda = h[mu] * zbar[mu] * h[mu].inverse();
    double dev = 0;
    for (std::size_t m = 0; m < h.size(); ++m) dev = std::max(dev, distance(h[m] * zbar[m], lambda * h[m]));
    return dev;
  };

  FixedLineCheck out;
  out.fixed = support.size() == 1;
  if (out.fixed) {
    for (int trial = 0; trial < 8; ++trial) {
      std::vector<Quaternion> zbar;
      for (std::size_t m = 0; m < h.size(); ++m) {
        const double theta = 0.37 * static_cast<double>(trial + 1) * static_cast<double>(m + 1);
        zbar.push_back({std::cos(theta), -std::sin(theta), 0, 0});
      }
      out.residual = std::max(out.residual, deviation(zbar));
    }
    if (out.residual > 1e-9 * (1 + h[support.front()].norm())) {
      throw std::logic_error("support test and numeric invariance disagree");
    }
  } else {
    std::vector<double> z(h.size(), 1.0);
    z[support[1]] = -1.0;
    std::vector<Quaternion> zbar;
    for (double v : z) zbar.push_back(Quaternion::real(v));
    out.residual = deviation(zbar);
    out.witness = std::move(z);
    if (!(out.residual > 0)) throw std::logic_error("witness failed to move the line");
  }
  return out;
}

}  // namespace qflag
