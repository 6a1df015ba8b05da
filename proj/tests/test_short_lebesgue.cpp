#include "doctest.h"

#include <cmath>

#include "psdlat/random_gen.hpp"
#include "psdlat/short_lebesgue.hpp"

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

PsdMatrix random_psd(std::uint64_t seed, Eigen::Index n) {
  const Eigen::Index r = static_cast<Eigen::Index>(mix_seed(seed, 21) % (n + 1));
  return gen_random_psd(seed, n, r);
}

} // namespace

TEST_CASE("aux space worked examples") {
  SUBCASE("rank-one diagonal") {
    const AuxSpace aux(PsdMatrix(diag2(4, 0)));
    CHECK(aux.rank() == 1);
    CHECK(std::abs(aux.j()(0, 0) - Complex(2, 0)) < 1e-14);
    CHECK(std::abs(aux.j()(1, 0)) < 1e-14);
  }
  SUBCASE("identity") {
    const AuxSpace aux(PsdMatrix::identity(2));
    CHECK(aux.rank() == 2);
    CHECK(herm_gap(aux.j() * aux.jstar(), Matrix(Matrix::Identity(2, 2))) < 1e-13);
  }
  SUBCASE("zero") {
    const AuxSpace aux(PsdMatrix::zero(2));
    CHECK(aux.rank() == 0);
  }
  SUBCASE("factorization and injectivity on random input") {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
      const Eigen::Index n = 1 + static_cast<Eigen::Index>(seed % 6);
      const PsdMatrix b = random_psd(seed, n);
      const AuxSpace aux(b);
      CHECK(herm_gap(aux.j() * aux.jstar(), b.matrix()) < 1e-7 * (1 + b.norm()));
      if (aux.rank() > 0) {
        // full column rank: J* J is positive definite
        const EigenSystem es = detail::jacobi_hermitian(Matrix(aux.jstar() * aux.j()));
        CHECK(es.values(0) > 0.0);
      }
    }
  }
}

TEST_CASE("multivalued part worked examples") {
  SUBCASE("kernel direction filling all of H_B") {
    const Subspace m = multivalued_part(PsdMatrix(diag2(1, 0)), PsdMatrix(ones2()));
    CHECK(m.ambient_dim() == 1);
    CHECK(m.dim() == 1);
  }
  SUBCASE("injective A") {
    const Subspace m = multivalued_part(PsdMatrix::identity(2), PsdMatrix::identity(2));
    CHECK(m.dim() == 0);
  }
  SUBCASE("diagonal pair") {
    const Subspace m = multivalued_part(PsdMatrix(diag2(1, 0)), PsdMatrix(diag2(2, 3)));
    CHECK(m.ambient_dim() == 2);
    CHECK(m.dim() == 1);
    // B's aux coordinates are ordered by ascending eigenvalue (2 then 3),
    // so ker A = span e2 lands on the second coordinate
    CHECK(std::abs(m.basis()(1, 0)) == doctest::Approx(1.0));
  }
}

TEST_CASE("three short algorithms on the worked examples") {
  const PsdMatrix a10(diag2(1, 0));
  const PsdMatrix b23(diag2(2, 3));
  const PsdMatrix bones(ones2());
  const PsdMatrix bmix(real2(2, 1, 1, 1));

  for (int route = 0; route < 3; ++route) {
    auto run = [&](const PsdMatrix& a, const PsdMatrix& b) {
      switch (route) {
        case 0: return short_aux(a, b);
        case 1: return short_schur(a, b);
        default: return short_iterative(a, b);
      }
    };
    CAPTURE(route);
    // the iterative route stops within tol_conv*(1+||B||) of the limit;
    // the two direct routes are exact up to rounding
    const double budget = route == 2 ? 1e-6 : 1e-9;
    CHECK(herm_gap(run(a10, b23).matrix(), diag2(2, 0)) < budget);
    CHECK(run(PsdMatrix::zero(2), b23).norm() < 1e-12);
    CHECK(herm_gap(run(b23, b23).matrix(), b23.matrix()) < budget * 4);
    CHECK(run(a10, bones).norm() < budget);
    CHECK(herm_gap(run(a10, bmix).matrix(), diag2(1, 0)) < budget);
    // full-rank A leaves B untouched
    const PsdMatrix b = random_psd(77, 3);
    CHECK(herm_gap(run(gen_random_psd(78, 3, 3), b).matrix(), b.matrix()) <
          1e-7 * (1 + b.norm()));
  }
}

TEST_CASE("generalized_short: triple agreement and the golden case") {
  const PsdMatrix golden =
      generalized_short(PsdMatrix(diag2(1, 0)), PsdMatrix(real2(2, 1, 1, 1)));
  CHECK(herm_gap(golden.matrix(), diag2(1, 0)) < 1e-10);

  for (std::uint64_t seed = 300; seed < 330; ++seed) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(seed % 5);
    const PsdMatrix a = random_psd(mix_seed(seed, 1), n);
    const PsdMatrix b = random_psd(mix_seed(seed, 2), n);
    const PsdMatrix s = generalized_short(a, b); // throws on any disagreement
    CHECK(loewner_leq(s, b));
    // idempotence: the short is absolutely continuous w.r.t. A
    const PsdMatrix again = generalized_short(a, s);
    CHECK(herm_gap(again.matrix(), s.matrix()) < 1e-7 * (1 + b.norm()));
  }
}

TEST_CASE("generalized_short maximality among dominated absolutely continuous parts") {
  for (std::uint64_t seed = 400; seed < 420; ++seed) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(seed % 4);
    const PsdMatrix a = random_psd(mix_seed(seed, 3), n);
    const PsdMatrix b = random_psd(mix_seed(seed, 4), n);
    const PsdMatrix shorted = generalized_short(a, b);
    // sample C <= B with ran C inside ran A: take the A-short of a random
    // element of [0, B]
    const PsdMatrix d = gen_random_in_interval(mix_seed(seed, 5), b);
    const PsdMatrix c = generalized_short(a, d);
    CHECK(loewner_leq(c, shorted));
  }
}

TEST_CASE("short schedule is monotone nondecreasing") {
  for (std::uint64_t seed = 500; seed < 515; ++seed) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(seed % 4);
    const PsdMatrix a = random_psd(mix_seed(seed, 6), n);
    const PsdMatrix b = random_psd(mix_seed(seed, 7), n);
    const ShortSchedule sched = short_iterative_schedule(a, b);
    CHECK(sched.converged);
    for (std::size_t k = 1; k < sched.iterates.size(); ++k)
      CHECK(loewner_leq(sched.iterates[k - 1], sched.iterates[k]));
    // and the schedule is dominated by its limit's upper bound B
    CHECK(loewner_leq(sched.iterates.back(), b));
  }
}

TEST_CASE("absolute continuity predicate") {
  const PsdMatrix b = random_psd(91, 4);
  CHECK(is_absolutely_continuous(b, b));
  CHECK_FALSE(is_absolutely_continuous(PsdMatrix(diag2(2, 3)), PsdMatrix(diag2(1, 0))));
  CHECK(is_absolutely_continuous(PsdMatrix(diag2(2, 0)), PsdMatrix(diag2(1, 0))));
}

TEST_CASE("singularity predicate") {
  CHECK(is_singular(PsdMatrix(diag2(1, 0)), PsdMatrix(diag2(0, 1))));
  const PsdMatrix b = gen_random_psd(92, 3, 2);
  CHECK_FALSE(is_singular(b, b));
  CHECK(is_singular(PsdMatrix(ones2()), PsdMatrix(diag2(1, 0))));
}

TEST_CASE("lebesgue decomposition worked examples") {
  SUBCASE("golden 2x2 case") {
    const LebesgueDecomposition ld =
        lebesgue_decompose(PsdMatrix(diag2(1, 0)), PsdMatrix(real2(2, 1, 1, 1)));
    CHECK(herm_gap(ld.regular.matrix(), diag2(1, 0)) < 1e-10);
    CHECK(herm_gap(ld.singular_part.matrix(), ones2()) < 1e-10);
    CHECK(ld.unique);
    REQUIRE(ld.alpha_min.has_value());
    CHECK(*ld.alpha_min == doctest::Approx(1.0));
  }
  SUBCASE("A = B") {
    const PsdMatrix b = random_psd(93, 3);
    const LebesgueDecomposition ld = lebesgue_decompose(b, b);
    CHECK(herm_gap(ld.regular.matrix(), b.matrix()) < 1e-8 * (1 + b.norm()));
    CHECK(ld.singular_part.norm() < 1e-8 * (1 + b.norm()));
  }
  SUBCASE("A = 0") {
    const PsdMatrix b = random_psd(94, 3);
    const LebesgueDecomposition ld = lebesgue_decompose(PsdMatrix::zero(3), b);
    CHECK(ld.regular.norm() < 1e-12);
    CHECK(herm_gap(ld.singular_part.matrix(), b.matrix()) < 1e-12);
    CHECK(ld.unique);
  }
}

TEST_CASE("lebesgue decomposition reconstructs B on random input") {
  for (std::uint64_t seed = 600; seed < 625; ++seed) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(seed % 5);
    const PsdMatrix a = random_psd(mix_seed(seed, 8), n);
    const PsdMatrix b = random_psd(mix_seed(seed, 9), n);
    const LebesgueDecomposition ld = lebesgue_decompose(a, b);
    CHECK(herm_gap(Matrix(ld.regular.matrix() + ld.singular_part.matrix()), b.matrix()) <
          1e-9 * (1 + b.norm()));
    CHECK(ld.unique); // always true in finite dimension
    if (ld.alpha_min && a.effective_rank() > 0) {
      // regular <= alpha_min * A, and barely so
      const PsdMatrix scaled(Matrix(*ld.alpha_min * a.matrix()));
      CHECK(loewner_leq(ld.regular, scaled));
    }
  }
}
