#pragma once

// The GSp_4 example: the diagonal residual representation
// r = diag(chi^3, 1, chi^6, chi^9) on a surrogate global group, its lifts
// inside the congruence subgroup H cut out by D = diag(p, 1, p^-2, p^-1),
// and the Borel-valued residual representation read off from D^-1 r D.
//
// Surrogate group: t of order p - 1 (chi(t) a primitive root) and u1, u2
// with t u_i t^-1 = u_i^{a_i}, where a_i represents the Teichmuller lift of
// sigma_{lambda_i}(t) to the top precision. lambda1 = L1 - L2, lambda2 = 2L2.

#include <array>
#include <string>
#include <vector>

#include "gsp/ladder.hpp"
#include "gsp/report.hpp"

namespace gsp {

struct ExamplePlan {
  int64_t p = 23;
  int precision = 3;
  std::array<int64_t, 4> exponents{3, 0, 6, 9};
  int64_t similitude_exponent = 9;
  bool regular_prime = true;  // C(chi^{p-i}) = 0 for i in {+-3, +-6, +-9}
  // kappa = kappa0 chi^k. By default k = p(p-1); general_k allows any k
  // with (p-1) | k.
  bool general_k = false;
  int64_t k = 0;

  // Prime, exponents define a GSp_4 diagonal with similitude chi^s.
  void validate_shape() const;
  // validate_shape plus p >= 23 and the k rule. PlanInvalid otherwise.
  void validate() const;
  int64_t kappa_k() const { return k != 0 ? k : p * (p - 1); }
};

// Exponents of p in the H pattern, entry (i, j) equal to |s_i - s_j| with
// D = diag(p^{s_i}).
const std::array<std::array<int, 4>, 4>& h_pattern();
const std::array<int, 4>& d_exponents();

// h_m as columns of Ad0 coordinates over F: basis vectors whose entries
// all sit in positions with pattern exponent <= m.
Mat h_subspace(int m, const GaloisRing* F);
// Entry valuations respect the pattern at the available precision and
// D^-1 X D has the Borel shape modulo p.
bool verify_h_pattern(const Mat& X);
// D^-1 X D mod p. Needs every divided entry to be known modulo p, so
// precision > 3 in general (PrecisionIncrease otherwise); NotInU1 when X
// is not in H.
Mat d_conjugate_residue(const Mat& X);

FPGroup example_surrogate(const ExamplePlan& plan, int top_precision);
// Residual diagonal data r-bar (u1, u2 trivial).
GroupData example_diagonal_data(const ExamplePlan& plan);
// Residual Borel data rho-bar: t -> r-bar(t), u_i -> exp(X_{lambda_i}).
GroupData example_group_data(const ExamplePlan& plan);

struct ExampleStep {
  std::string name;  // "r-bar", "r2'", "r2", "r3", ...
  LiftLadder ladder;
};

struct ExampleBuild {
  ExamplePlan plan;
  GroupData residual;  // rho-bar, read off from the ladder
  std::vector<ExampleStep> trace;
  Mat phi;  // Phi(r2) in Ad0 coordinates
  Report report{"gsp4-example"};
};

ExampleBuild build_example(const ExamplePlan& plan);

// Torus character exponents e with sigma_lambda(t) = chi(t)^e, in the
// symmetric range (-(p-1)/2, (p-1)/2].
struct CharacterExponent {
  Root root;
  int64_t exponent;
};
std::vector<CharacterExponent> eigencharacter_table(const ExamplePlan& plan);

}  // namespace gsp
