#pragma once
//
// Floating-point quaternionic matrix geometry on the orbit
// Sp(n) . Diag(r_1..r_n) inside the traceless quaternion-hermitian
// matrices, with <X,Y> = Re Tr(XY).
//
// Matrix-model orientation: the point for w is Diag(r_{w(1)},...,r_{w(n)}),
// and K_pq rotates matrix positions p and q, so the K_pq-sphere through w
// has w and w s_pq (positions swapped) as its poles.
//

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "qflag/exec.hpp"
#include "qflag/flagcomb.hpp"

namespace qflag {

struct Quaternion {
  double re = 0, i = 0, j = 0, k = 0;

  static Quaternion real(double x) { return {x, 0, 0, 0}; }
  static Quaternion unit_i() { return {0, 1, 0, 0}; }
  static Quaternion unit_j() { return {0, 0, 1, 0}; }
  static Quaternion unit_k() { return {0, 0, 0, 1}; }

  Quaternion conj() const { return {re, -i, -j, -k}; }
  double norm2() const { return re * re + i * i + j * j + k * k; }
  double norm() const;
  Quaternion inverse() const;

  Quaternion& operator+=(const Quaternion& o);
  Quaternion& operator-=(const Quaternion& o);
  friend Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
  friend Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
  friend Quaternion operator*(const Quaternion& a, const Quaternion& b);
  friend Quaternion operator*(double s, const Quaternion& q) { return {s * q.re, s * q.i, s * q.j, s * q.k}; }
  Quaternion operator-() const { return {-re, -i, -j, -k}; }
};

double distance(const Quaternion& a, const Quaternion& b);

class QuatMatrix {
 public:
  QuatMatrix() = default;
  explicit QuatMatrix(int n) : n_(n), data_(static_cast<std::size_t>(n * n)) {}

  static QuatMatrix identity(int n);
  static QuatMatrix diagonal(std::span<const double> d);
  // E_pq scaled by the quaternion h.
  static QuatMatrix unit(int n, int p, int q, const Quaternion& h);

  int size() const { return n_; }
  Quaternion& operator()(int r, int c) { return data_[static_cast<std::size_t>(r * n_ + c)]; }
  const Quaternion& operator()(int r, int c) const { return data_[static_cast<std::size_t>(r * n_ + c)]; }

  QuatMatrix adjoint() const;
  Quaternion trace() const;
  double frobenius() const;
  bool is_hermitian(double tol) const;

  // 4n^2 real components, row-major, (re,i,j,k) per entry. On hermitian
  // matrices the Euclidean dot of these vectors equals Re Tr(XY).
  std::vector<double> flatten() const;
  static QuatMatrix unflatten(int n, std::span<const double> v);

  QuatMatrix& operator+=(const QuatMatrix& o);
  QuatMatrix& operator-=(const QuatMatrix& o);
  friend QuatMatrix operator+(QuatMatrix a, const QuatMatrix& b) { return a += b; }
  friend QuatMatrix operator-(QuatMatrix a, const QuatMatrix& b) { return a -= b; }
  friend QuatMatrix operator*(const QuatMatrix& a, const QuatMatrix& b);
  friend QuatMatrix operator*(double s, QuatMatrix a);

 private:
  int n_ = 0;
  std::vector<Quaternion> data_;
};

// Re Tr(XY).
double inner(const QuatMatrix& x, const QuatMatrix& y);
QuatMatrix commutator(const QuatMatrix& a, const QuatMatrix& b);
QuatMatrix expm(const QuatMatrix& a);

// Eigenvalues of a quaternion-hermitian matrix (ascending, n of them), via
// the 2n x 2n complex representation.
std::vector<double> hermitian_eigenvalues(const QuatMatrix& x);

// Generators of sp(n): E_pq - E_qp, u(E_pq + E_qp) and u E_pp for u = i,j,k.
std::vector<QuatMatrix> sp_basis(int n);
// Generators of the Lie algebra of K_pq.
std::vector<QuatMatrix> kpq_basis(int n, int p, int q);

Quaternion random_unit_quaternion(std::mt19937_64& rng);
// exp of a random skew-hermitian matrix.
QuatMatrix random_symplectic(int n, std::mt19937_64& rng);

struct OrbitPoint {
  QuatMatrix x;
  QuatMatrix conjugator;  // x = conjugator * Diag(r) * conjugator^*
};

// Diag(r_{w(1)},...,r_{w(n)}).
OrbitPoint orbit_point(const Permutation& w, std::span<const double> r);

// The point at polar angle `angle` on the K_pq-sphere through w, reached by
// the rotation exp(angle/2 (u E_pq - conj(u) E_qp)); angle pi is the pole
// w s_pq. Throws std::invalid_argument for a non-unit axis.
OrbitPoint sphere_point(const Permutation& w, int p, int q, double angle, const Quaternion& axis,
                        std::span<const double> r);

struct TangentFrame {
  std::vector<std::vector<double>> basis;  // orthonormal, flattened
  std::vector<double> singular_values;
};

// Orthonormal frame of span{[Omega, x]} over the given generators, keeping
// directions with singular value above rel_tol * largest.
TangentFrame tangent_frame(const QuatMatrix& x, std::span<const QuatMatrix> generators,
                           double rel_tol = 1e-9);

struct Gradient {
  QuatMatrix vector;
  double norm = 0;
};

// Orthogonal projection of Diag(a) onto the tangent space of the orbit at x.
// Throws NonGenericError if the frame does not have full orbit dimension.
Gradient numeric_gradient(const QuatMatrix& x, std::span<const double> a);

// <A, [Omega, [Omega, x]]>: second derivative of h_A along exp(t Omega).
double hessian_form(const QuatMatrix& x, std::span<const double> a, const QuatMatrix& omega);
// Central second difference of h_A(exp(t Omega) x exp(-t Omega)).
double hessian_form_fd(const QuatMatrix& x, std::span<const double> a, const QuatMatrix& omega,
                       double step = 1e-3);

struct HessianIndex {
  int index = 0;
  double min_abs_eigenvalue = 0;
  std::vector<double> eigenvalues;  // in an orthonormal tangent basis
};

inline constexpr double kHessianSeparation = 1e-6;

// Negative eigenvalue count at the critical point w. Throws NonGenericError
// when an eigenvalue falls within kHessianSeparation of zero.
HessianIndex numeric_hessian_index(const Permutation& w, const HeightParams& hp);

struct MeridianReport {
  double max_residual = 0;             // gradient component normal to the sphere
  double min_interior_gradient = 0;    // over polar angles in [0.2, pi - 0.2]
  double max_pole_gradient = 0;        // at the angle-0 pole
  double max_radius_deviation = 0;     // |dist(z, center) - radius|
  int min_sphere_rank = 0;
  int max_sphere_rank = 0;
  std::size_t samples = 0;
};

// Samples the K_pq-sphere through w; requires h_A(w) > h_A(w s_pq).
MeridianReport meridian_tangency_check(const Permutation& w, int p, int q, std::size_t samples,
                                       const HeightParams& hp, std::uint64_t seed,
                                       Exec exec = Exec::parallel);

struct FixedLineCheck {
  bool fixed = false;
  // For a non-fixed line: z with z_mu = 1, z_nu = -1 on two support entries.
  std::optional<std::vector<double>> witness;
  // Fixed: max deviation under sampled unit complex z (should be ~0).
  // Not fixed: deviation forced by the witness (bounded away from 0).
  double residual = 0;
};

// Whether the line H.h is invariant under every Diag(z_1..z_n), z unit
// complex. Throws on the zero vector.
FixedLineCheck t_fixed_point_check(std::span<const Quaternion> h);

}  // namespace qflag
