#include <doctest.h>

#include <cmath>

#include "md5fol/catalog.hpp"
#include "md5fol/lie_core.hpp"
#include "md5fol/rng.hpp"
#include "md5fol/sampling.hpp"

using namespace md5fol;

namespace {

FamilyDescriptor g541_example() {
  return validate_params(FamilyId::G5_4_1,
                         FamilyParams::of_lambda123(2.0, 3.0, -1.0));
}

}  // namespace

TEST_CASE("basis elements and covector accessors") {
  const AlgebraElement x3 = AlgebraElement::basis(2);
  CHECK(x3.coords(2) == 1.0);
  CHECK(x3.coords.sum() == 1.0);
  CHECK_THROWS_AS(AlgebraElement::basis(5), std::out_of_range);
  CHECK_THROWS_AS(AlgebraElement::basis(-1), std::out_of_range);

  const Covector F = Covector::of(1, 2, 3, 4, 5);
  CHECK(F.alpha() == 1.0);
  CHECK(F.beta() == 2.0);
  CHECK(F.gamma() == 3.0);
  CHECK(F.delta() == 4.0);
  CHECK(F.sigma() == 5.0);
  CHECK(F.ideal_part() == Vec4(2, 3, 4, 5));
}

TEST_CASE("structure constants stay antisymmetric under set") {
  StructureConstants c;
  c.set(0, 3, 2, 2.5);
  CHECK(c(0, 3, 2) == 2.5);
  CHECK(c(3, 0, 2) == -2.5);
  c.set(3, 0, 2, 1.0);
  CHECK(c(0, 3, 2) == -1.0);
}

TEST_CASE("bracket reproduces the ad-action of X1") {
  const StructureConstants c = build_algebra(g541_example());
  // [X1, X2] = 2 X2
  const AlgebraElement b =
      bracket(c, AlgebraElement::basis(0), AlgebraElement::basis(1));
  CHECK(b.coords == 2.0 * AlgebraElement::basis(1).coords);

  // [X1, X5] = X4 + X5 in the family with a shear in the last block
  const StructureConstants c6 = build_algebra(
      validate_params(FamilyId::G5_4_6, FamilyParams::of_lambda12(2.0, 3.0)));
  const AlgebraElement b6 =
      bracket(c6, AlgebraElement::basis(0), AlgebraElement::basis(4));
  CHECK(b6.coords(3) == 1.0);
  CHECK(b6.coords(4) == 1.0);
  CHECK(b6.coords(0) == 0.0);
  CHECK(b6.coords(1) == 0.0);
  CHECK(b6.coords(2) == 0.0);
}

TEST_CASE("bracket is bilinear and antisymmetric, ideal is commutative") {
  const StructureConstants c = build_algebra(g541_example());
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    AlgebraElement u, v;
    for (int i = 0; i < kDim; ++i) {
      u.coords(i) = rng.uniform(-2, 2);
      v.coords(i) = rng.uniform(-2, 2);
    }
    const Vec5 uv = bracket(c, u, v).coords;
    const Vec5 vu = bracket(c, v, u).coords;
    CHECK((uv + vu).lpNorm<Eigen::Infinity>() == doctest::Approx(0).epsilon(1e-14));

    AlgebraElement su = u;
    su.coords *= 3.0;
    CHECK((bracket(c, su, v).coords - 3.0 * uv).lpNorm<Eigen::Infinity>() <
          1e-12);

    // both arguments inside span(X2..X5)
    AlgebraElement iu = u, iv = v;
    iu.coords(0) = 0.0;
    iv.coords(0) = 0.0;
    CHECK(bracket(c, iu, iv).coords == Vec5::Zero());
  }
}

TEST_CASE("kirillov form matches the hand-computed first row") {
  const StructureConstants c = build_algebra(g541_example());
  const Covector F = Covector::of(0, 1, 1, 1, 1);
  const Mat5 b = kirillov_form(c, F);
  // B(0, j) = <F, [X1, X_{1+j}]> picks up the eigenvalues (2, 3, -1, 1)
  CHECK(b(0, 0) == 0.0);
  CHECK(b(0, 1) == 2.0);
  CHECK(b(0, 2) == 3.0);
  CHECK(b(0, 3) == -1.0);
  CHECK(b(0, 4) == 1.0);
  // skew bit-for-bit, and zero outside the first row/column
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) {
      CHECK(b(i, j) == -b(j, i));
      if (i != 0 && j != 0) CHECK(b(i, j) == 0.0);
    }
}

TEST_CASE("rank of the kirillov form") {
  CHECK(rank_skew(Mat5::Zero(), 1e-9) == 0);
  CHECK_THROWS_AS(rank_skew(Mat5::Zero(), 0.0), std::invalid_argument);
  CHECK_THROWS_AS(rank_skew(Mat5::Zero(), -1.0), std::invalid_argument);

  const StructureConstants c = build_algebra(g541_example());
  CHECK(rank_skew(kirillov_form(c, Covector::of(0, 1, 1, 1, 1)), 1e-9) == 2);
  CHECK(rank_skew(kirillov_form(c, Covector::of(7, 0, 0, 0, 0)), 1e-9) == 0);
  // a single tiny coordinate still gives a full-rank 2x2 block
  CHECK(rank_skew(kirillov_form(c, Covector::of(0, 0, 0, 0, 1e-7)), 1e-9) == 2);

  // an odd count above the cutoff is rounded down and flagged
  Mat5 m = Mat5::Zero();
  m(0, 1) = 1.0;
  m(1, 0) = -1.0;
  m(2, 3) = 1.5e-9;
  const SkewRank r = rank_skew_detail(m, 1e-9);
  CHECK(r.rank == 2);
  CHECK(r.odd_count_adjusted);
  const SkewRank ok = rank_skew_detail(kirillov_form(c, Covector::of(0, 1, 1, 1, 1)), 1e-9);
  CHECK_FALSE(ok.odd_count_adjusted);
}

TEST_CASE("coadjoint fields are the columns of the kirillov form") {
  const StructureConstants c5 = build_algebra(
      validate_params(FamilyId::G5_4_5, FamilyParams::none()));
  const Covector F = Covector::of(0, 1, 0, 0, 0);
  // <Y_2(F), X_1> = <F, [X1, X2]> = beta
  const Covector y2 = coad_field(c5, 1, F);
  CHECK(y2.coords == Vec5(1, 0, 0, 0, 0));

  const StructureConstants c = build_algebra(g541_example());
  const Covector G = Covector::of(5, 1, 1, 1, 1);
  const Covector y1 = coad_field(c, 0, G);
  CHECK(y1.coords == Vec5(0, -2, -3, 1, -1));

  const Mat5 b = kirillov_form(c, G);
  for (int gen = 0; gen < kDim; ++gen)
    CHECK(coad_field(c, gen, G).coords == Vec5(b.col(gen)));

  CHECK_THROWS_AS(coad_field(c, 5, G), std::out_of_range);
  CHECK_THROWS_AS(coad_field(c, -1, G), std::out_of_range);
}

TEST_CASE("jacobi check accepts real algebras and rejects a broken table") {
  for (FamilyId id : kAllFamilies) {
    Rng rng(derive_key(11, {static_cast<std::uint64_t>(family_index(id))}));
    // a couple of draws per family; the catalog tests cover more
    for (int i = 0; i < 3; ++i) {
      const auto d = validate_params(id, sample_params(id, rng));
      CHECK(verify_jacobi(build_algebra(d)));
    }
  }

  // nilpotent-style table: [X1, X2] = X3, all else zero
  StructureConstants heis;
  heis.set(0, 1, 2, 1.0);
  CHECK(verify_jacobi(heis));

  // [X1, X2] = X2 and [X2, X3] = X1 leave a nonzero cyclic sum
  StructureConstants bad;
  bad.set(0, 1, 1, 1.0);
  bad.set(1, 2, 0, 1.0);
  CHECK_FALSE(verify_jacobi(bad));
}
