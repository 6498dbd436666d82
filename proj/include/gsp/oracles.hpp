#pragma once

// Brute-force oracles for the structural lemmas used by the example:
// commutator saturation of U_1, stable closures in Ad0 seeded at the
// lowest root, and equivariant Hom dimensions between stable submodules.

#include <cstdint>
#include <string>
#include <vector>

#include "gsp/gsp4_example.hpp"

namespace gsp {

struct SaturationResult {
  int64_t p = 0;
  int pairs = 0;                 // (lambda, mu, a, b) combinations checked
  int commutator_failures = 0;   // mod U_{k+l+1} identity
  int exact_failures = 0;        // three-factor product form
  int64_t u1_order = 0;          // |U_1(F_p)| by enumeration
  int64_t example_order = 0;     // <exp(X_{L1-L2}) exp(X_{2L1}), exp(X_{2L2})>
  std::vector<int64_t> trial_orders;
  std::vector<std::string> witnesses;

  bool ok() const;
};

// Order of the subgroup generated by gens (Unsupported above cap).
int64_t subgroup_order(const std::vector<Mat>& gens, size_t cap);

// n = 2, q = p. PrimeTooSmall unless p > 4.
SaturationResult saturation_oracle(int64_t p, int trials, uint64_t seed);

struct ClosureOracleResult {
  int64_t p = 0;
  int eigen_seeds = 0;   // eigenvector seeds with nonzero -2L1 coordinate
  int random_seeds = 0;
  int failures = 0;
  std::vector<std::string> witnesses;
  bool ok() const { return failures == 0 && eigen_seeds > 0; }
};

// Every stable closure of a vector with nonzero X_{-2L1} coordinate in Ad0
// of the example's residual data at p is all of Ad0.
ClosureOracleResult closure_oracle(int64_t p, int random_seeds, uint64_t seed);

struct HomOracleResult {
  int64_t p = 0;
  int subsets = 0;            // nonempty subsets of the 10 basis vectors
  int dual_modules = 0;       // distinct stable P in Ad0*
  int adjoint_modules = 0;    // distinct stable Q in Ad0
  int dual_failures = 0;      // hom(P, Ad0*) != 1
  int cross_failures = 0;     // hom(Q, Ad0*) != 0
  std::vector<std::string> witnesses;
  bool ok() const { return dual_failures == 0 && cross_failures == 0 && dual_modules > 0; }
};

// F_p-dimensions of equivariant Homs for stable submodules generated by
// subsets of the dual (resp. adjoint) coordinate eigenvectors.
// Runs on example_group_data(shape); shape.validate_shape() must hold.
HomOracleResult hom_count_oracle(const ExamplePlan& shape);

}  // namespace gsp
