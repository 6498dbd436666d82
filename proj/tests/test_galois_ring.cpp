#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gsp/galois_ring.hpp"

using namespace gsp;

TEST_CASE("make_field validates prime and modulus") {
  CHECK(make_field(5, 1, {0, 1}).q() == 5);
  CHECK(make_field(3, 2, {1, 0, 1}).q() == 9);
  CHECK_THROWS_AS(make_field(4, 1, {0, 1}), Error);
  try {
    make_field(4, 1, {0, 1});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotPrime);
  }
  try {
    make_field(5, 2, {1, 0, 1});  // x^2 + 1 = (x - 2)(x + 2) mod 5
    FAIL("reducible modulus accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ReducibleModulus);
  }
}

TEST_CASE("teichmuller examples") {
  const GaloisRing* F = GaloisRing::get(prime_field(5), 1);
  GR t = teichmuller(F->from_int(2), 2);
  CHECK(t.to_int() == 7);
  CHECK(teichmuller(F->zero(), 3).is_zero());
  CHECK(teichmuller(F->one(), 3).is_one());
  CHECK(reduce_precision(t, 1).to_int() == 2);
  CHECK(reduce_precision(t, 2) == t);
  const GaloisRing* R = GaloisRing::get(prime_field(5), 3);
  CHECK(reduce_precision(R->from_int(5 * 7), 1).is_zero());
  CHECK_THROWS(reduce_precision(F->one(), 2));
}

TEST_CASE("reduction is a ring homomorphism, exhaustive for small rings") {
  for (int64_t p : {3, 5})
    for (int m = 1; m <= 3; ++m) {
      const GaloisRing* R = GaloisRing::get(prime_field(p), m);
      for (const GR& a : R->elements())
        for (const GR& b : R->elements())
          for (int k = 1; k <= m; ++k) {
            CHECK((a + b).reduce(k) == a.reduce(k) + b.reduce(k));
            CHECK((a * b).reduce(k) == a.reduce(k) * b.reduce(k));
          }
    }
}

TEST_CASE("teichmuller is multiplicative and of order dividing q-1") {
  for (auto spec : {prime_field(5), prime_field(7), make_field(3, 2, {1, 0, 1}), make_field(5, 2, {2, 0, 1})}) {
    const GaloisRing* F = GaloisRing::get(spec, 1);
    for (int m = 1; m <= 3; ++m)
      for (const GR& a : F->elements()) {
        GR ta = teichmuller(a, m);
        if (!a.is_zero()) CHECK(ta.pow(F->q() - 1).is_one());
        CHECK(ta.pow(F->q()) == ta);
        CHECK(ta.reduce(1) == a);
        for (const GR& b : F->elements()) CHECK(teichmuller(a * b, m) == ta * teichmuller(b, m));
      }
  }
}

TEST_CASE("inverse and valuation in a Galois ring") {
  const GaloisRing* R = GaloisRing::get(make_field(3, 2, {1, 0, 1}), 3);
  for (const GR& a : R->elements()) {
    if (a.is_unit()) {
      CHECK((a * a.inverse()).is_one());
    } else {
      CHECK(a.valuation() >= 1);
      CHECK_THROWS(a.inverse());
    }
  }
  CHECK(R->from_int(9).valuation() == 2);
  CHECK(R->zero().valuation() == 3);
}

TEST_CASE("frobenius, primitive elements and discrete logs") {
  const GaloisRing* F = GaloisRing::get(make_field(3, 2, {1, 0, 1}), 1);
  GR g = primitive_element(F);
  CHECK(multiplicative_order(g) == 8);
  CHECK(frobenius(g, 2) == g);
  CHECK(frobenius(g) == g.pow(3));
  for (int64_t k = 0; k < 8; ++k) CHECK(discrete_log(g.pow(k), g) == k);
}
