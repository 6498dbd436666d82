#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gsp/gmodule.hpp"
#include "gsp/symplectic.hpp"

using namespace gsp;

namespace {

// Diagonal torus generator diag(g^3, 1, g^6, g^9) plus exp(X_{L1-L2}) and exp(X_{2L2}).
GroupData diagonal_example(int64_t p) {
  const GaloisRing* F = GaloisRing::get(prime_field(p), 1);
  RootDatum rd(2, F);
  const GR g = primitive_element(F);
  GroupData G;
  G.n = 2;
  G.F = F;
  G.labels = {"t", "u1", "u2"};
  G.images = {diagonal({g.pow(3), F->one(), g.pow(6), g.pow(9)}),
              exp_filtered(rd.X(Root::parse("L1-L2", 2))), exp_filtered(rd.X(Root::parse("2L2", 2)))};
  G.torus = {true, false, false};
  G.chi = {g, F->one(), F->one()};
  G.kappa = {g.pow(9), F->one(), F->one()};
  G.validate();
  return G;
}

Mat unit(const GaloisRing* F, int d, int k) {
  Mat e = zeros(F, d, 1);
  e(k, 0) = F->one();
  return e;
}

}  // namespace

TEST_CASE("eigenspaces of the diagonal example at p = 23") {
  GroupData G = diagonal_example(23);
  RootDatum rd(2, G.F);
  GMod M = adjoint_module(G, rd);
  auto parts = eigenspace_decomposition(M);
  // sigma_{-2L1} = sigma_{L1-L2} and sigma_{2L1} = sigma_{L2-L1} for this torus.
  CHECK(parts.size() == 7);
  int total = 0, ones = 0;
  for (const auto& e : parts) {
    total += static_cast<int>(e.basis.cols());
    if (e.basis.cols() == 1) ++ones;
  }
  CHECK(total == 10);
  CHECK(ones == 4);
  const GR g = primitive_element(G.F);
  const int k = rd.index_of(Root::parse("2L1", 2));
  bool found = false;
  for (const auto& e : parts)
    if (in_span(e.basis, unit(G.F, 10, k))) {
      CHECK(e.values[0] == g.pow(3).inverse());
      CHECK(e.basis.cols() == 2);
      CHECK(in_span(e.basis, unit(G.F, 10, rd.index_of(Root::parse("L2-L1", 2)))));
      found = true;
    }
  CHECK(found);
  const int km = rd.index_of(Root::parse("-2L1", 2));
  for (const auto& e : parts)
    if (in_span(e.basis, unit(G.F, 10, km))) CHECK(e.values[0] == g.pow(3));
}

TEST_CASE("trivial torus gives one eigenspace") {
  const GaloisRing* F = GaloisRing::get(prime_field(7), 1);
  GMod M;
  M.F = F;
  M.action = {identity(F, 5)};
  M.torus = {true};
  auto parts = eigenspace_decomposition(M);
  REQUIRE(parts.size() == 1);
  CHECK(parts[0].basis.cols() == 5);
}

TEST_CASE("non-diagonalizable torus generator is rejected") {
  const GaloisRing* F = GaloisRing::get(prime_field(7), 1);
  GMod M;
  M.F = F;
  M.action = {from_ints(F, 2, 2, {1, 1, 0, 1})};
  M.torus = {true};
  CHECK_THROWS_AS(eigenspace_decomposition(M), Error);
}

TEST_CASE("stable closures") {
  GroupData G = diagonal_example(23);
  RootDatum rd(2, G.F);
  GMod M = adjoint_module(G, rd);
  CHECK(stable_closure(M, Mat(10, 0)).cols() == 0);
  CHECK(stable_closure(M, unit(G.F, 10, rd.index_of(Root::parse("-2L1", 2)))).cols() == 10);
  CHECK(stable_closure(M, unit(G.F, 10, rd.index_of(Root::parse("2L1", 2)))).cols() == 1);

  GroupData T = G;
  T.images[1] = T.images[2] = identity(G.F, 4);
  GMod MT = adjoint_module(T, rd);
  Mat seed = unit(G.F, 10, rd.torus_index(0)) + unit(G.F, 10, rd.torus_index(1));
  Mat S = stable_closure(MT, seed);
  CHECK(S.cols() == 1);
  CHECK(contains_span(hstack(unit(G.F, 10, 8), unit(G.F, 10, 9)), S));
}

TEST_CASE("fixed subspaces") {
  GroupData G = diagonal_example(23);
  RootDatum rd(2, G.F);
  GMod M = adjoint_module(G, rd);
  CHECK(fixed_subspace(G.F, 10, {identity(G.F, 10)}).cols() == 10);
  const GR m1 = -G.F->one();
  Mat c = diagonal({m1, G.F->one(), G.F->one(), m1});
  CHECK(fixed_subspace(G.F, 10, {adjoint_action(rd, c)}).cols() == 4);
  GMod Q = quotient(M, rd.filtration(0));
  CHECK(Q.dim() == 4);
  CHECK(fixed_subspace(Q, {0}).cols() == 0);
  GMod Qchi = twist(Q, G.chi);
  CHECK(fixed_subspace(Qchi, {0}).cols() == 0);
}

TEST_CASE("hom invariants basics") {
  const GaloisRing* F = GaloisRing::get(prime_field(5), 1);
  GMod Z = zero_module(F, 2);
  CHECK(hom_invariants(Z, Z) == 0);
  GMod M;
  M.F = F;
  M.action = {identity(F, 3), identity(F, 3)};
  M.torus = {true, false};
  CHECK(hom_invariants(M, M) == 9);
}

TEST_CASE("hom invariants over F_9 count F_3-dimensions") {
  const GaloisRing* F = GaloisRing::get(make_field(3, 2, {1, 0, 1}), 1);
  GMod M;
  M.F = F;
  M.action = {Mat::Constant(1, 1, F->gen())};
  M.torus = {true};
  // F_9 with multiplication by x: equivariant F_3-maps are F_3[x] = F_9, dimension 2.
  CHECK(hom_invariants(M, M) == 2);
}

TEST_CASE("dual module characters") {
  GroupData G = diagonal_example(23);
  RootDatum rd(2, G.F);
  GMod D = dual_module(adjoint_module(G, rd), G.chi);
  const GR g = primitive_element(G.F);
  // X*_{-lambda} spans the chi * sigma_lambda line.
  for (const Root& r : rd.roots()) {
    const int k = rd.index_of(-r);
    Mat e = unit(G.F, 10, k);
    CHECK(equal(Mat(D.action[0] * e), scale(e, g * rd.character(r, G.images[0]))));
  }
}

TEST_CASE("submodules and quotients carry consistent actions") {
  GroupData G = diagonal_example(23);
  RootDatum rd(2, G.F);
  GMod M = adjoint_module(G, rd);
  Mat b = rd.filtration(0);
  GMod S = submodule(M, b);
  CHECK(S.dim() == 6);
  GMod Q = quotient(M, b);
  CHECK(Q.dim() == 4);
  CHECK_THROWS(submodule(M, unit(G.F, 10, rd.index_of(Root::parse("-2L1", 2)))));
}
