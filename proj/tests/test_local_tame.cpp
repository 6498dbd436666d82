#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "gsp/local_tame.hpp"
#include "gsp/symplectic.hpp"

using namespace gsp;

namespace {

constexpr int64_t kP = 5, kV = 11;

const GaloisRing* ring(int m) { return GaloisRing::get(prime_field(kP), m); }

Mat unconj(int n, const GaloisRing* R) {
  RootDatum rd(n, R);
  return identity(R, 2 * n) + rd.X(long_root(n, 0, -1));
}

// Unramified representative: sigma diagonal with 2L1 value v, tau trivial.
TameRep nr_base(int m, int64_t a2 = 1 + 2 * kP) {
  const GaloisRing* R = ring(m);
  const GR nu = R->from_int(kV).inverse();
  const GR b = R->from_int(a2);
  TameRep r;
  r.v = kV;
  r.A = diagonal({R->one(), b, nu, nu * b.inverse()});
  r.B = identity(R, 4);
  return r;
}

TameRep nr_rep(int m, int64_t a2 = 1 + 2 * kP) { return conjugate(nr_base(m, a2), unconj(2, ring(m))); }

TameRep ram_rep(int m) {
  const GaloisRing* R = ring(m);
  RootDatum rd(2, R);
  const GR v = R->from_int(kV);
  const GR b = R->from_int(1 + 3 * kP);
  TameRep r;
  r.v = kV;
  r.A = diagonal({R->one(), b, v, v * b.inverse()});
  r.B = identity(R, 4) + scale(rd.X(long_root(2, 0, -1)), R->from_int(kP));
  return r;
}

Cocycle1 column(const Mat& T, Eigen::Index c, int d) { return unstack_cocycle(T.col(c), 2, d); }

Mat random_kernel_element(std::mt19937& rng, const GaloisRing* R) {
  RootDatum rdF(2, R->residue_field());
  std::uniform_int_distribution<int> coef(0, static_cast<int>(kP) - 1);
  Mat c = zeros(R->residue_field(), rdF.dim(), 1);
  for (int k = 0; k < rdF.dim(); ++k) c(k, 0) = R->residue_field()->from_int(coef(rng));
  return cayley(scale(lift(rdF.from_coords(c), R), R->from_int(kP)));
}

}  // namespace

TEST_CASE("trivial primes") {
  CHECK(is_trivial_prime(11, 5));
  CHECK_FALSE(is_trivial_prime(101, 5));
  CHECK_FALSE(is_trivial_prime(7, 5));
  CHECK(is_trivial_prime(31, 5));
  CHECK_FALSE(is_trivial_prime(51, 5));
}

TEST_CASE("condition names round trip") {
  CHECK(parse_condition("nr") == LocalCondition::Nr);
  CHECK(std::string(condition_name(parse_condition("ram"))) == "ram");
  CHECK_THROWS_AS(parse_condition("flat"), Error);
}

TEST_CASE("D_alpha membership") {
  TameRep base = nr_base(2);
  CHECK(satisfies_relation(base));
  CHECK(in_D_alpha(base, long_root(2, 0, 1)));
  TameRep id = base;
  id.A = identity(ring(2), 4);
  CHECK_FALSE(in_D_alpha(id, long_root(2, 0, 1)));

  const GaloisRing* R = ring(3);
  TameRep s = n1_shape(kV, R->from_int(3), R->from_int(kP), R->from_int(kV));
  CHECK(satisfies_relation(s));
  CHECK(in_D_alpha(s, long_root(1, 0, 1)));
  CHECK(similitude(s.A) == R->from_int(kV));
}

TEST_CASE("n = 1 shape needs a square ratio") {
  const GaloisRing* R = ring(2);
  // 2 is not a square mod 5.
  CHECK_THROWS_AS(n1_shape(kV, R->zero(), R->zero(), R->from_int(2 * kV)), Error);
  const GR r = sqrt_unit(R->from_int(4 * 11));
  CHECK(r * r == R->from_int(44));
}

TEST_CASE("unramified condition at precision 2") {
  CHECK(in_C_nr(nr_rep(2)));
  validate(nr_rep(2));
  TameRep ram = nr_rep(2);
  ram.B = ram.B + scale(RootDatum(2, ring(2)).X(long_root(2, 0, 1)), ring(2)->from_int(kP));
  CHECK_FALSE(in_C_nr(ram));
  // a2 = 1 makes beta = L2 - L1 trivial on sigma.
  CHECK_FALSE(in_C_nr(nr_rep(2, 1)));
  CHECK_FALSE(in_C_nr(nr_base(2)));
}

TEST_CASE("ramified condition at precision 2") {
  const GaloisRing* R = ring(2);
  RootDatum rd(2, R);
  TameRep r = ram_rep(2);
  validate(r);
  CHECK(in_C_ram(r));
  TameRep flat = r;
  flat.B = identity(R, 4);
  CHECK_FALSE(in_C_ram(flat));
  TameRep wrong = r;
  wrong.B = identity(R, 4) + scale(rd.X(long_root(2, 1, 1)), R->from_int(kP));
  CHECK_FALSE(in_C_ram(wrong));
}

TEST_CASE("tangent space dimensions") {
  for (int n : {1, 2}) {
    RootDatum rd(n, ring(1));
    CAPTURE(n);
    const Mat N = tangent_nr(rd);
    CHECK(N.cols() == rd.dim());
    CHECK(tangent_ram(rd).cols() == rd.dim());
    CHECK(tame_z1(rd, kV).cols() == 2 * rd.dim());
    CHECK(contains_span(tame_z1(rd, kV), N));
  }
}

TEST_CASE("unconjugated nr tangent has no H1 component") {
  RootDatum rd(2, ring(1));
  const Mat N = tangent_nr(rd);
  const Mat back = conjugate_cocycles(rd, N, inverse(unconj(2, ring(1))));
  const int h1 = rd.torus_index(0);
  for (Eigen::Index c = 0; c < back.cols(); ++c) {
    CHECK(back(h1, c).is_zero());
    CHECK(back(rd.dim() + h1, c).is_zero());
  }
}

TEST_CASE("exclusion criterion on the nr tangent space") {
  RootDatum rd(2, ring(1));
  const Mat N = tangent_nr(rd);
  for (Eigen::Index c = 0; c < N.cols(); ++c) CHECK(lemma55_criterion(rd, column(N, c, rd.dim())));
  Cocycle1 zero{{zeros(rd.ring(), rd.dim(), 1), zeros(rd.ring(), rd.dim(), 1)}};
  CHECK(lemma55_criterion(rd, zero));
  Cocycle1 bad = zero;
  bad.values[0](rd.index_of(long_root(2, 0, 1)), 0) = rd.ring()->one();
  CHECK_FALSE(lemma55_criterion(rd, bad));
}

TEST_CASE("nr twist stability at m = 3 with a failing witness at m = 2") {
  RootDatum rd(2, ring(1));
  const Mat N = tangent_nr(rd);
  const TameRep r3 = nr_rep(3);
  REQUIRE(class_in_condition(r3, LocalCondition::Nr));
  for (Eigen::Index c = 0; c < N.cols(); ++c) {
    CAPTURE(c);
    CHECK(class_in_condition(twist(r3, column(N, c, rd.dim())), LocalCondition::Nr));
  }
  const Mat S = conjugate_cocycles(rd, tangent_S(rd, long_root(2, 0, 1)), unconj(2, ring(1)));
  const TameRep bad = twist(nr_rep(2), column(S, 0, rd.dim()));
  CHECK_FALSE(in_C_nr(bad));
  CHECK_FALSE(class_in_condition(bad, LocalCondition::Nr));
}

TEST_CASE("adapted ram twist stability at m = 3 with a failing witness at m = 2") {
  const TameRep r3 = ram_rep(3);
  REQUIRE(class_in_condition(r3, LocalCondition::Ram));
  const Mat N = tangent_ram_adapted(r3);
  RootDatum rd(2, ring(1));
  CHECK(N.cols() == rd.dim());
  for (Eigen::Index c = 0; c < N.cols(); ++c) {
    CAPTURE(c);
    CHECK(class_in_condition(twist(r3, column(N, c, rd.dim())), LocalCondition::Ram));
  }
  bool witness = false;
  const TameRep r2 = ram_rep(2);
  const Mat N2 = tangent_ram_adapted(r2);
  for (Eigen::Index c = 0; c < N2.cols(); ++c)
    if (!in_C_ram(twist(r2, column(N2, c, rd.dim())))) witness = true;
  CHECK(witness);
}

TEST_CASE("mirror ram tangent is not twist stable at m = 3") {
  const TameRep r3 = ram_rep(3);
  RootDatum rd(2, ring(1));
  const Mat N = tangent_ram(rd);
  bool failure = false;
  for (Eigen::Index c = 0; c < N.cols(); ++c)
    if (!class_in_condition(twist(r3, column(N, c, rd.dim())), LocalCondition::Ram)) failure = true;
  CHECK(failure);
}

TEST_CASE("membership is invariant under kernel conjugation") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    for (int m : {2, 3}) {
      const Mat K = random_kernel_element(rng, ring(m));
      CHECK(class_in_condition(conjugate(nr_rep(m), K), LocalCondition::Nr));
      CHECK(class_in_condition(conjugate(ram_rep(m), K), LocalCondition::Ram));
      CHECK_FALSE(class_in_condition(conjugate(nr_rep(m, 1), K), LocalCondition::Nr));
    }
  }
}

TEST_CASE("class membership above precision 3 is unsupported") {
  CHECK_THROWS_AS(class_in_condition(nr_rep(4), LocalCondition::Nr), Error);
}
