#pragma once

// Trivial primes and the local conditions D^alpha, C^nr, C^ram on the tame
// group <sigma, tau | sigma tau sigma^{-1} = tau^v> with trivial residual
// image, together with their tangent spaces inside Z^1(G_v, Ad0).
//
// Tangent spaces are returned as matrices whose columns are stacked
// cocycles [f(sigma); f(tau)] in sp_2n coordinates.

#include <optional>

#include "gsp/cohomology.hpp"

namespace gsp {

// v prime, v = 1 mod p, v != 1 mod p^2. The splitting clause is an input.
bool is_trivial_prime(int64_t v, int64_t p);

enum class LocalCondition { Nr, Ram };
const char* condition_name(LocalCondition c);
LocalCondition parse_condition(const std::string& s);

struct TameRep {
  int64_t v = 0;
  Mat A;  // image of sigma
  Mat B;  // image of tau
  std::optional<GR> kappa_sigma, kappa_tau;

  int n() const { return static_cast<int>(A.rows() / 2); }
  const GaloisRing* ring() const { return ring_of(A); }
  int precision() const { return ring()->precision(); }
};

bool satisfies_relation(const TameRep& r);
// Relation, symplecticity, similitude targets and trivial residual image.
void validate(const TameRep& r);
TameRep conjugate(const TameRep& r, const Mat& K);
TameRep reduce(const TameRep& r, int m);
// (Id + p^{m-1} f(g)) rho(g) for a cocycle with F_q coordinates.
TameRep twist(const TameRep& r, const Cocycle1& f);

// The root the condition is built on: 2L_1 for nr, -2L_1 for ram.
Root condition_root(LocalCondition c, int n);

bool in_D_alpha(const TameRep& r, const Root& alpha);
// Representative-level tests of the given matrices.
bool in_C_nr(const TameRep& r);
bool in_C_ram(const TameRep& r);
bool in_condition(const TameRep& r, LocalCondition c);

// A congruence-kernel conjugator K with K r K^{-1} passing the
// representative test, found by solving the linearized conditions.
// Exact for precision <= 3; Unsupported above.
std::optional<Mat> class_conjugator(const TameRep& r, LocalCondition c);
bool class_in_condition(const TameRep& r, LocalCondition c);

// Cocycles of the tame group on Ad0 with trivial action.
GMod trivial_adjoint(const RootDatum& rd);
Mat tame_z1(const RootDatum& rd, int64_t v);

// phi(sigma) in t_alpha + Cent(X_alpha), phi(tau) on the alpha line.
Mat tangent_P(const RootDatum& rd, const Root& alpha);
// phi(sigma) in the Phi^alpha root lines, phi(tau) = 0.
Mat tangent_S(const RootDatum& rd, const Root& alpha);
Mat tangent_nr(const RootDatum& rd);
// Same recipe at alpha = -2L_1, without conjugation.
Mat tangent_ram(const RootDatum& rd);
// P plus the rho-dependent S: phi(sigma) = X_beta and
// phi(tau) = -(y / u_beta)[X_beta, X_alpha], where rho(tau) = u_alpha(p y)
// mod p^2 and u_beta = (beta(rho(sigma)) - 1) / p.
Mat tangent_ram_adapted(const TameRep& r);

// Conjugate every cocycle in the columns of T by the residual matrix g.
Mat conjugate_cocycles(const RootDatum& rd, const Mat& T, const Mat& g);

// a_{2L1} = -(cd)^{-1} a_1 for the sigma-value of f.
bool lemma55_criterion(const RootDatum& rd, const Cocycle1& f);

// Square root of a unit of a Galois ring; NotASquare otherwise.
GR sqrt_unit(const GR& a);
// n = 1: sigma -> c [[v, x], [0, 1]], tau -> [[1, y], [0, 1]] with
// c^2 = kappa_sigma / v.
TameRep n1_shape(int64_t v, const GR& x, const GR& y, const GR& kappa_sigma);

}  // namespace gsp
