#include "doctest.h"

#include <cmath>

#include "psdlat/galois.hpp"
#include "psdlat/random_gen.hpp"

using namespace psdlat;

namespace {

Matrix diag2m(double a, double b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

double herm_gap(const Matrix& x, const Matrix& y) {
  return detail::spectral_norm_hermitian(x - y);
}

Form random_form(std::uint64_t seed, Eigen::Index n) {
  const Eigen::Index r = static_cast<Eigen::Index>(mix_seed(seed, 51) % (n + 1));
  return Form(gen_random_psd(seed, n, r));
}

PolarityPair random_context(std::uint64_t seed, Eigen::Index n) {
  return PolarityPair{random_form(seed, n), Tolerances{}};
}

} // namespace

TEST_CASE("alpha worked examples") {
  const PolarityPair ctx{Form(PsdMatrix(diag2m(1, 0))), Tolerances{}};

  CHECK(alpha(Form(PsdMatrix::zero(2)), ctx).gram().norm() < 1e-14);

  // alpha(w) = w : w = w/2
  const Form aw = alpha(ctx.reference, ctx);
  CHECK(herm_gap(aw.gram().matrix(), Matrix(0.5 * diag2m(1, 0))) < 1e-13);

  const Form t(PsdMatrix(diag2m(2, 3)));
  CHECK(herm_gap(alpha(t, ctx).gram().matrix(), diag2m(2.0 / 3.0, 0)) < 1e-13);
}

TEST_CASE("beta worked examples") {
  const PolarityPair ctx{Form(PsdMatrix(diag2m(1, 0))), Tolerances{}};

  // beta(w/2) = w
  const Form half_w(PsdMatrix(Matrix(0.5 * diag2m(1, 0))));
  CHECK(herm_gap(beta(half_w, ctx).gram().matrix(), diag2m(1, 0)) < 1e-12);

  CHECK(beta(Form(PsdMatrix::zero(2)), ctx).gram().norm() < 1e-13);

  // beta(alpha(t)) is the almost-dominated part of t
  const Form t(PsdMatrix(diag2m(2, 3)));
  CHECK(herm_gap(beta(alpha(t, ctx), ctx).gram().matrix(), diag2m(2, 0)) < 1e-12);

  // a form outside the image cone is rejected
  CHECK_THROWS_AS(beta(Form(PsdMatrix(diag2m(0, 1))), ctx), NotInImage);
}

TEST_CASE("closure worked examples") {
  const PolarityPair ctx{Form(PsdMatrix(diag2m(1, 0))), Tolerances{}};

  // already dominated forms are fixed points
  const Form dominated(PsdMatrix(diag2m(0.4, 0)));
  CHECK(herm_gap(closure(dominated, ctx).gram().matrix(), dominated.gram().matrix()) <
        1e-12);

  const Form t(PsdMatrix(diag2m(2, 3)));
  CHECK(herm_gap(closure(t, ctx).gram().matrix(), diag2m(2, 0)) < 1e-12);

  CHECK(closure(Form(PsdMatrix::zero(2)), ctx).gram().norm() < 1e-13);
}

TEST_CASE("adjunction worked examples") {
  const PolarityPair ctx{Form(PsdMatrix(diag2m(1, 0))), Tolerances{}};

  SUBCASE("unit of the adjunction") {
    const Form u = random_form(3, 2);
    const Form v = alpha(u, ctx);
    const AdjunctionCheck c = check_adjunction(u, v, ctx);
    CHECK(c.lhs);
    CHECK(c.rhs);
    CHECK(c.holds());
  }
  SUBCASE("counit of the adjunction") {
    const Form t(PsdMatrix(diag2m(5, 1)));
    const Form v = alpha(t, ctx);
    const Form u = beta(v, ctx);
    const AdjunctionCheck c = check_adjunction(u, v, ctx);
    CHECK(c.lhs);
    CHECK(c.rhs);
    CHECK(c.holds());
  }
  SUBCASE("both sides can fail together") {
    const Form u(PsdMatrix(diag2m(0, 5)));
    const Form v = alpha(Form(PsdMatrix(diag2m(3, 0))), ctx); // = diag(3/4, 0)
    CHECK(herm_gap(v.gram().matrix(), diag2m(0.75, 0)) < 1e-13);
    const AdjunctionCheck c = check_adjunction(u, v, ctx);
    CHECK_FALSE(c.lhs);
    CHECK_FALSE(c.rhs);
    CHECK(c.holds());
  }
}

TEST_CASE("closed elements worked examples") {
  const PolarityPair ctx{Form(PsdMatrix(diag2m(1, 0))), Tolerances{}};

  CHECK(is_closed_element(Form(PsdMatrix(diag2m(7, 0))), ctx)); // range included
  CHECK(is_closed_element(ctx.reference, ctx));                 // t = w
  CHECK_FALSE(is_closed_element(Form(PsdMatrix(diag2m(0, 1))), ctx));
}

TEST_CASE("adjunction biconditional holds on random valid pairs") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(seed % 5);
    const PolarityPair ctx = random_context(mix_seed(seed, 1), n);
    const Form u = random_form(mix_seed(seed, 2), n);
    const Form v = alpha(random_form(mix_seed(seed, 3), n), ctx);
    CHECK(check_adjunction(u, v, ctx).holds());
  }
}

TEST_CASE("closure is contractive in the order and idempotent") {
  for (std::uint64_t seed = 40; seed < 60; ++seed) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(seed % 4);
    const PolarityPair ctx = random_context(mix_seed(seed, 4), n);
    const Form t = random_form(mix_seed(seed, 5), n);
    const Form c = closure(t, ctx);
    CHECK(loewner_leq(c.gram(), t.gram()));
    const Form cc = closure(c, ctx);
    CHECK(herm_gap(cc.gram().matrix(), c.gram().matrix()) <
          1e-7 * (1 + t.gram().norm()));
  }
}

TEST_CASE("alpha is constant on the fiber [D_w t, t]") {
  for (std::uint64_t seed = 70; seed < 85; ++seed) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(seed % 4);
    const PolarityPair ctx = random_context(mix_seed(seed, 6), n);
    const Form t = random_form(mix_seed(seed, 7), n);
    const Form c = closure(t, ctx);
    Rng rng(mix_seed(seed, 8));
    const double theta = rng.uniform(0.0, 1.0);
    Matrix mid = c.gram().matrix() +
                 theta * (t.gram().matrix() - c.gram().matrix());
    const Form u{PsdMatrix(mid)};
    CHECK(herm_gap(alpha(u, ctx).gram().matrix(), alpha(t, ctx).gram().matrix()) <
          1e-7 * (1 + t.gram().norm()));
  }
}

TEST_CASE("alpha restricted to closed elements is inverted by beta") {
  for (std::uint64_t seed = 90; seed < 110; ++seed) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(seed % 4);
    const PolarityPair ctx = random_context(mix_seed(seed, 9), n);
    const Form t = random_form(mix_seed(seed, 10), n);
    const Form c = closure(t, ctx); // closed element
    const Form back = beta(alpha(c, ctx), ctx);
    CHECK(herm_gap(back.gram().matrix(), c.gram().matrix()) <
          1e-7 * (1 + t.gram().norm()));
    CHECK(is_closed_element(c, ctx));
  }
}

TEST_CASE("identity chain t:w = (D_w t):w = D_w (t:w)") {
  for (std::uint64_t seed = 120; seed < 140; ++seed) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(seed % 4);
    const PolarityPair ctx = random_context(mix_seed(seed, 11), n);
    const Form w = ctx.reference;
    const Form t = random_form(mix_seed(seed, 12), n);
    const double scale = 1.0 + t.gram().norm() + w.gram().norm();

    const Form tw = form_parallel_sum(t, w);
    const Form dwt = form_short(w, t);
    CHECK(herm_gap(tw.gram().matrix(),
                   form_parallel_sum(dwt, w).gram().matrix()) < 1e-7 * scale);
    CHECK(herm_gap(tw.gram().matrix(),
                   form_short(w, tw).gram().matrix()) < 1e-7 * scale);
  }
}

TEST_CASE("order transfer: t:w <= s:w iff D_w t <= D_w s") {
  for (std::uint64_t seed = 150; seed < 175; ++seed) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(seed % 4);
    const PolarityPair ctx = random_context(mix_seed(seed, 13), n);
    const Form w = ctx.reference;
    const Form t = random_form(mix_seed(seed, 14), n);

    // an ordered pair (t <= s) exercises the true branch; an unrelated pair
    // usually exercises the false branch -- both directions must agree
    Form s = (seed % 2 == 0)
                 ? Form(PsdMatrix(Matrix(
                       t.gram().matrix() +
                       gen_random_psd(mix_seed(seed, 15), n, n).matrix())))
                 : random_form(mix_seed(seed, 16), n);

    const bool lhs = loewner_leq(form_parallel_sum(t, w).gram(),
                                 form_parallel_sum(s, w).gram());
    const bool rhs =
        loewner_leq(form_short(w, t).gram(), form_short(w, s).gram());
    CHECK(lhs == rhs);
  }
}
