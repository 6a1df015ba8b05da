#include "doctest.h"

#include <cmath>

#include "psdlat/psd_core.hpp"
#include "psdlat/random_gen.hpp"

#include "oracles.hpp"

using namespace psdlat;

namespace {

Matrix real2(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << Complex(a, 0), Complex(b, 0), Complex(c, 0), Complex(d, 0);
  return m;
}

Matrix diag2(double a, double b) { return real2(a, 0, 0, b); }

Matrix ones2() { return real2(1, 1, 1, 1); }

double herm_gap(const Matrix& x, const Matrix& y) {
  return detail::spectral_norm_hermitian(x - y);
}

} // namespace

TEST_CASE("jacobi agrees with the reference solver on random Hermitian input") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Rng rng(seed);
    const Eigen::Index n = 1 + static_cast<Eigen::Index>(seed % 8);
    Matrix raw = rng.gaussian_matrix(n, n);
    raw = Complex(0.5, 0.0) * (raw + raw.adjoint()).eval();
    const EigenSystem es = detail::jacobi_hermitian(raw);

    // ascending eigenvalues
    for (Eigen::Index i = 0; i + 1 < n; ++i) CHECK(es.values(i) <= es.values(i + 1));

    // orthonormal vectors and exact reconstruction
    const double scale = std::max(1.0, es.values.cwiseAbs().maxCoeff());
    CHECK(detail::max_abs_entry(es.vectors.adjoint() * es.vectors -
                                Matrix::Identity(n, n)) < 1e-13);
    const Matrix recon =
        es.vectors * es.values.cast<Complex>().asDiagonal() * es.vectors.adjoint();
    CHECK(detail::max_abs_entry(recon - raw) < 1e-12 * n * scale);

    const RealVector ref = oracles::reference_eigenvalues(raw);
    for (Eigen::Index i = 0; i < n; ++i)
      CHECK(std::abs(es.values(i) - ref(i)) < 1e-11 * scale);
  }
}

TEST_CASE("jacobi keeps relative accuracy on a graded positive matrix") {
  // [[w + 2, 1], [1, 1]] with huge w: the small eigenvalue stays near 1 and
  // must come out with ~1e-15 relative error, not eps*||M||.
  const double w = 4.0e9;
  Matrix m = real2(w + 2.0, 1.0, 1.0, 1.0);
  const EigenSystem es = detail::jacobi_hermitian(m);
  const double small = es.values(0);
  // stable closed form: lambda_small = det / lambda_big
  const double big = (w + 3.0 + std::sqrt((w + 1.0) * (w + 1.0) + 4.0)) / 2.0;
  const double exact = (w + 1.0) / big;
  CHECK(std::abs(small - exact) < 1e-12 * std::abs(exact));
}

TEST_CASE("hermitian_eigen worked examples") {
  SUBCASE("diagonal input") {
    const EigenSystem es = hermitian_eigen(diag2(3, 1));
    CHECK(es.values(0) == doctest::Approx(1.0));
    CHECK(es.values(1) == doctest::Approx(3.0));
    // permutation of identity columns
    CHECK(std::abs(es.vectors(1, 0)) == doctest::Approx(1.0));
    CHECK(std::abs(es.vectors(0, 1)) == doctest::Approx(1.0));
  }
  SUBCASE("symmetric off-diagonal") {
    const EigenSystem es = hermitian_eigen(real2(0, 1, 1, 0));
    CHECK(es.values(0) == doctest::Approx(-1.0));
    CHECK(es.values(1) == doctest::Approx(1.0));
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    // first column proportional to (1,-1)/sqrt(2), second to (1,1)/sqrt(2)
    CHECK(std::abs(es.vectors(0, 0) * es.vectors(1, 1) -
                   es.vectors(1, 0) * es.vectors(0, 1)) == doctest::Approx(1.0));
    CHECK(std::abs(es.vectors(0, 0)) == doctest::Approx(inv_sqrt2));
    CHECK(std::abs(es.vectors(1, 0)) == doctest::Approx(inv_sqrt2));
  }
  SUBCASE("identity") {
    const EigenSystem es = hermitian_eigen(Matrix(Matrix::Identity(3, 3)));
    for (int i = 0; i < 3; ++i) CHECK(es.values(i) == doctest::Approx(1.0));
  }
  SUBCASE("rejects non-Hermitian input") {
    CHECK_THROWS_AS(hermitian_eigen(real2(0, 1, 0, 0)), NonHermitianInput);
  }
}

TEST_CASE("PsdMatrix validation") {
  SUBCASE("clips admissible negative eigenvalues to zero") {
    const PsdMatrix a(diag2(1.0, -1e-12));
    CHECK(a.eigenvalues()(0) == 0.0);
    CHECK(a.effective_rank() == 1);
  }
  SUBCASE("rejects genuinely indefinite input") {
    CHECK_THROWS_AS(PsdMatrix(diag2(1.0, -1e-3)), NotPositiveSemidefinite);
  }
  SUBCASE("effective rank uses a relative threshold") {
    const PsdMatrix a(diag2(5.0, 1e-12));
    CHECK(a.effective_rank() == 1);
    const PsdMatrix b(diag2(5.0, 0.5));
    CHECK(b.effective_rank() == 2);
  }
}

TEST_CASE("pseudo_inverse worked examples") {
  CHECK(herm_gap(pseudo_inverse(PsdMatrix(diag2(4, 0))).matrix(), diag2(0.25, 0)) < 1e-14);
  CHECK(herm_gap(pseudo_inverse(PsdMatrix::zero(2)).matrix(), diag2(0, 0)) < 1e-14);
  CHECK(herm_gap(pseudo_inverse(PsdMatrix(ones2())).matrix(), Matrix(0.25 * ones2())) <
        1e-14);
}

TEST_CASE("pseudo_inverse satisfies the four Moore-Penrose identities") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Eigen::Index n = 1 + static_cast<Eigen::Index>(mix_seed(seed) % 6);
    const Eigen::Index r = static_cast<Eigen::Index>(mix_seed(seed, 7) % (n + 1));
    const PsdMatrix a = gen_random_psd(seed, n, r);
    const PsdMatrix p = pseudo_inverse(a);
    const Matrix& am = a.matrix();
    const Matrix& pm = p.matrix();
    const double scale = 1.0 + a.norm() + p.norm();
    CHECK(detail::spectral_norm(am * pm * am - am) < 1e-7 * scale);
    CHECK(detail::spectral_norm(pm * am * pm - pm) < 1e-7 * scale);
    CHECK(detail::spectral_norm((am * pm).adjoint() - am * pm) < 1e-7 * scale);
    CHECK(detail::spectral_norm((pm * am).adjoint() - pm * am) < 1e-7 * scale);
  }
}

TEST_CASE("sqrt_psd worked examples and roundtrip") {
  CHECK(herm_gap(sqrt_psd(PsdMatrix(diag2(4, 9))).matrix(), diag2(2, 3)) < 1e-13);
  CHECK(herm_gap(sqrt_psd(PsdMatrix::zero(2)).matrix(), diag2(0, 0)) < 1e-14);
  CHECK(herm_gap(sqrt_psd(PsdMatrix(ones2())).matrix(),
                 Matrix((1.0 / std::sqrt(2.0)) * ones2())) < 1e-13);

  for (std::uint64_t seed = 100; seed < 120; ++seed) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(seed % 5);
    const Eigen::Index r = static_cast<Eigen::Index>(mix_seed(seed) % (n + 1));
    const PsdMatrix a = gen_random_psd(seed, n, r);
    const PsdMatrix s = sqrt_psd(a);
    CHECK(herm_gap(s.matrix() * s.matrix(), a.matrix()) < 1e-7 * (1.0 + a.norm()));
    CHECK(herm_gap(range_projection(a).matrix(), range_projection(s).matrix()) < 1e-7);
  }
}

TEST_CASE("loewner_leq worked examples") {
  CHECK(loewner_leq(PsdMatrix(diag2(1, 0)), PsdMatrix::identity(2)));
  CHECK_FALSE(loewner_leq(PsdMatrix(diag2(2, 1)), PsdMatrix(diag2(1, 2))));
  CHECK_FALSE(loewner_leq(PsdMatrix(diag2(1, 2)), PsdMatrix(diag2(2, 1))));
  const PsdMatrix a = gen_random_psd(3, 4, 3);
  CHECK(loewner_leq(a, a));
  CHECK_THROWS_AS(loewner_leq(a, PsdMatrix::identity(5)), DimensionMismatch);
}

TEST_CASE("loewner_leq is reflexive, transitive and order-antisymmetric") {
  for (std::uint64_t seed = 40; seed < 60; ++seed) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(seed % 4);
    const PsdMatrix a = gen_random_psd(seed, n, static_cast<Eigen::Index>(1 + seed % n));
    const PsdMatrix e1 = gen_random_psd(mix_seed(seed, 1), n, n);
    const PsdMatrix e2 = gen_random_psd(mix_seed(seed, 2), n, n);
    const PsdMatrix b(a.matrix() + e1.matrix());
    const PsdMatrix c(b.matrix() + e2.matrix());
    CHECK(loewner_leq(a, b));
    CHECK(loewner_leq(b, c));
    CHECK(loewner_leq(a, c)); // transitivity on a constructed chain
    // antisymmetry up to tolerance: mutual domination only for near-equal pairs
    if (loewner_leq(b, a)) CHECK(herm_gap(a.matrix(), b.matrix()) < 1e-6 * (1 + b.norm()));
  }
}

TEST_CASE("range_projection worked examples") {
  CHECK(herm_gap(range_projection(PsdMatrix(diag2(5, 0))).matrix(), diag2(1, 0)) < 1e-14);
  CHECK(herm_gap(range_projection(PsdMatrix(ones2())).matrix(), Matrix(0.5 * ones2())) <
        1e-14);
  CHECK(herm_gap(range_projection(PsdMatrix::zero(2)).matrix(), diag2(0, 0)) < 1e-14);
  const PsdMatrix p = range_projection(gen_random_psd(9, 5, 3));
  CHECK(detail::spectral_norm(p.matrix() * p.matrix() - p.matrix()) < 1e-12);
}

TEST_CASE("subspace_intersection worked examples") {
  Matrix e1(2, 1), e2(2, 1), diagline(2, 1);
  e1 << Complex(1, 0), Complex(0, 0);
  e2 << Complex(0, 0), Complex(1, 0);
  diagline << Complex(1.0 / std::sqrt(2.0), 0), Complex(1.0 / std::sqrt(2.0), 0);
  const Subspace s1(2, e1), s2(2, e2), sd(2, diagline);
  CHECK(subspace_intersection(s1, s2).dim() == 0);
  CHECK(subspace_intersection(s1, sd).dim() == 0);
  const Subspace self = subspace_intersection(sd, sd);
  CHECK(self.dim() == 1);
  CHECK(detail::spectral_norm(self.projector() - sd.projector()) < 1e-12);
}

TEST_CASE("subspace_intersection agrees with an LU null-space oracle") {
  for (std::uint64_t seed = 200; seed < 240; ++seed) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(seed % 5);
    const PsdMatrix a = gen_random_psd(seed, n, static_cast<Eigen::Index>(mix_seed(seed) % (n + 1)));
    const PsdMatrix b = gen_random_psd(mix_seed(seed, 3), n,
                                       static_cast<Eigen::Index>(mix_seed(seed, 4) % (n + 1)));
    const Subspace s = range_subspace(a);
    const Subspace t = range_subspace(b);
    const Subspace inter = subspace_intersection(s, t);

    // kernel of (P_S - I) + (P_T - I) is exactly S intersect T
    const Matrix m = (s.projector() - Matrix::Identity(n, n)) +
                     (t.projector() - Matrix::Identity(n, n));
    const Matrix k = oracles::lu_null_space(m);
    CHECK(inter.dim() == k.cols());
    if (inter.dim() > 0)
      CHECK(detail::spectral_norm(inter.projector() - k * k.adjoint()) < 1e-9);
  }
}

TEST_CASE("subspace dimension mismatch is rejected") {
  CHECK_THROWS_AS(subspace_intersection(Subspace::zero(2), Subspace::zero(3)),
                  DimensionMismatch);
}
