#ifndef PSDLAT_RANDOM_GEN_HPP
#define PSDLAT_RANDOM_GEN_HPP

#include <cmath>
#include <cstdint>
#include <random>

#include "psdlat/psd_core.hpp"

namespace psdlat {

/// splitmix64 step; used to derive independent per-trial seeds.
inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  return mix_seed(a ^ mix_seed(b));
}

/// Deterministic random source.  The normal sampler is hand-rolled
/// (Box-Muller over explicit 53-bit uniforms) so that a given seed yields
/// the same stream on every standard library.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform() { // in [0, 1)
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [lo, hi], inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<std::int64_t>(eng_() % span);
  }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  Complex complex_normal() {
    const double re = normal();
    const double im = normal();
    return Complex(re, im) * 0.7071067811865475244; // unit variance
  }

  Matrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols) {
    Matrix g(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
      for (Eigen::Index j = 0; j < cols; ++j) g(i, j) = complex_normal();
    return g;
  }

private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

/// Random PSD matrix G G* with a seeded Gaussian dim x rank factor.
/// Deterministic per seed; the effective rank equals `rank` almost surely.
inline PsdMatrix gen_random_psd(std::uint64_t seed, Eigen::Index dim,
                                Eigen::Index rank, const Tolerances& tol = {}) {
  if (rank < 0 || rank > dim) throw BadRank("gen_random_psd: rank outside [0, dim]");
  Rng rng(seed);
  if (rank == 0) return PsdMatrix::zero(dim, tol);
  const Matrix g = rng.gaussian_matrix(dim, rank);
  Matrix a = g * g.adjoint();
  a = Complex(0.5, 0.0) * (a + a.adjoint()).eval();
  return PsdMatrix(a, tol);
}

/// Random orthogonal projection of a seeded rank on C^r.
inline Matrix gen_random_projection(std::uint64_t seed, Eigen::Index r,
                                    const Tolerances& tol = {}) {
  Rng rng(seed);
  if (r == 0) return Matrix(0, 0);
  const Eigen::Index p = rng.uniform_int(0, r);
  if (p == 0) return Matrix::Zero(r, r);
  const Matrix w = detail::orthonormal_columns(rng.gaussian_matrix(r, p), tol.rank);
  Matrix proj = w * w.adjoint();
  return Complex(0.5, 0.0) * (proj + proj.adjoint()).eval();
}

/// Random quasi-unit of B: the image J_B P J_B* of a seeded random
/// projection P on the auxiliary space of B.
inline PsdMatrix gen_random_quasiunit(std::uint64_t seed, const PsdMatrix& b,
                                      const Tolerances& tol = {}) {
  const Eigen::Index r = b.effective_rank();
  if (r == 0) return PsdMatrix::zero(b.dim(), tol);
  const Matrix v = b.range_basis();
  const RealVector lam = b.range_eigenvalues();
  const Matrix j = v * lam.cwiseSqrt().asDiagonal(); // n x r, J J* = B
  const Matrix p = gen_random_projection(seed, r, tol);
  Matrix a = j * p * j.adjoint();
  a = Complex(0.5, 0.0) * (a + a.adjoint()).eval();
  return PsdMatrix(a, tol);
}

/// Random element of the operator interval [0, B]:  B^{1/2} E B^{1/2} with a
/// random PSD contraction E.
inline PsdMatrix gen_random_in_interval(std::uint64_t seed, const PsdMatrix& b,
                                        const Tolerances& tol = {}) {
  const Eigen::Index n = b.dim();
  Rng rng(mix_seed(seed, 0x1d7eULL));
  const Eigen::Index rank = rng.uniform_int(0, n);
  if (rank == 0 || b.effective_rank() == 0) return PsdMatrix::zero(n, tol);
  const PsdMatrix e = gen_random_psd(mix_seed(seed, 1), n, rank, tol);
  const double top = e.norm();
  if (top <= 0.0) return PsdMatrix::zero(n, tol);
  const PsdMatrix root = sqrt_psd(b, tol);
  Matrix c = root.matrix() * e.matrix() * root.matrix() / top;
  c = Complex(0.5, 0.0) * (c + c.adjoint()).eval();
  return PsdMatrix(c, tol);
}

} // namespace psdlat

#endif
