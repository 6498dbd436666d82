#include "gsp/local_tame.hpp"

#include "gsp/symplectic.hpp"

namespace gsp {

bool is_trivial_prime(int64_t v, int64_t p) {
  if (!is_prime(v) || !is_prime(p)) return false;
  return v % p == 1 && v % (p * p) != 1;
}

const char* condition_name(LocalCondition c) { return c == LocalCondition::Nr ? "nr" : "ram"; }

LocalCondition parse_condition(const std::string& s) {
  if (s == "nr") return LocalCondition::Nr;
  if (s == "ram") return LocalCondition::Ram;
  throw Error(ErrorKind::ConfigError, "unknown local condition '" + s + "'");
}

bool satisfies_relation(const TameRep& r) {
  const GaloisRing* R = r.ring();
  return R && equal(Mat(r.A * r.B), Mat(power(r.B, r.v) * r.A));
}

void validate(const TameRep& r) {
  if (!satisfies_relation(r)) throw Error(ErrorKind::NotTame, "sigma tau sigma^{-1} != tau^v");
  const GR nuA = similitude(r.A), nuB = similitude(r.B);
  if (r.kappa_sigma && nuA != r.kappa_sigma->in(r.ring()))
    throw Error(ErrorKind::NotSymplectic, "similitude of sigma differs from kappa");
  if (r.kappa_tau && nuB != r.kappa_tau->in(r.ring()))
    throw Error(ErrorKind::NotSymplectic, "similitude of tau differs from kappa");
  const Mat I = identity(r.ring(), r.A.rows());
  if (!equal(reduce(r.A, 1), reduce(I, 1)) || !equal(reduce(r.B, 1), reduce(I, 1)))
    throw Error(ErrorKind::NotTame, "residual image is not trivial");
}

TameRep conjugate(const TameRep& r, const Mat& K) {
  TameRep out = r;
  const Mat Ki = inverse(K);
  out.A = K * r.A * Ki;
  out.B = K * r.B * Ki;
  return out;
}

TameRep reduce(const TameRep& r, int m) {
  TameRep out = r;
  out.A = gsp::reduce(r.A, m);
  out.B = gsp::reduce(r.B, m);
  if (r.kappa_sigma) out.kappa_sigma = r.kappa_sigma->reduce(m);
  if (r.kappa_tau) out.kappa_tau = r.kappa_tau->reduce(m);
  return out;
}

TameRep twist(const TameRep& r, const Cocycle1& f) {
  const GaloisRing* R = r.ring();
  const int m = R->precision();
  if (m < 2) throw Error(ErrorKind::PrecisionIncrease, "twisting needs precision >= 2");
  RootDatum rd(r.n(), R->residue_field());
  const GR pm1 = R->from_int(ipow(R->p(), m - 1));
  const Mat I = identity(R, r.A.rows());
  TameRep out = r;
  out.A = (I + scale(lift(rd.from_coords(f.values.at(0)), R), pm1)) * r.A;
  out.B = (I + scale(lift(rd.from_coords(f.values.at(1)), R), pm1)) * r.B;
  return out;
}

Root condition_root(LocalCondition c, int n) { return long_root(n, 0, c == LocalCondition::Nr ? 1 : -1); }

namespace {

// Entries of M away from the support of X_alpha.
Mat off_support(const Mat& M, const Mat& Xa) {
  Mat out = M;
  for (Eigen::Index i = 0; i < M.size(); ++i)
    if (!Xa(i).is_zero()) out(i) = M(i).ring() ? M(i).ring()->zero() : GR(0);
  return out;
}

bool in_root_group(const Mat& B, const Mat& Xa) {
  const GaloisRing* R = ring_of(B);
  return is_zero(off_support(Mat(B - identity(R, B.rows())), Xa));
}

// Residual-free representative conditions at precision 2 for the chosen root.
bool mod_p2_clauses(const TameRep& r2, LocalCondition c, const RootDatum& rd, const Root& alpha) {
  const GaloisRing* R = r2.ring();
  const Mat I = identity(R, r2.A.rows());
  if (c == LocalCondition::Nr) {
    if (!equal(r2.B, I)) return false;
    if (!is_diagonal(r2.A)) return false;
  } else {
    Mat N = r2.B - I;
    if (valuation(N) < 1) return false;
    Mat y = divide_by_p_power(N, 1);  // precision 1
    const Mat Xa1 = RootDatum(rd.n(), R->residue_field()).X(alpha);
    if (!is_zero(off_support(y, Xa1))) return false;
    auto [i, j] = rd.pivot(rd.index_of(alpha));
    if (y(i, j).is_zero()) return false;
  }
  for (const Root& beta : rd.bracket_support(alpha)) {
    const Mat diag = torus_part(r2.A);
    if (rd.character(beta, diag).is_one()) return false;
  }
  return true;
}

Mat unconjugator(int n, const GaloisRing* R) {
  RootDatum rd(n, R);
  return identity(R, 2 * n) + rd.X(long_root(n, 0, -1));
}

}  // namespace

bool in_D_alpha(const TameRep& r, const Root& alpha) {
  const GaloisRing* R = r.ring();
  RootDatum rd(r.n(), R);
  const Mat& Xa = rd.X(alpha);
  const Mat lhs = r.A * Xa * inverse(r.A);
  if (!equal(lhs, scale(Xa, R->from_int(r.v)))) return false;
  return in_root_group(r.B, Xa) && is_symplectic(r.A) && is_symplectic(r.B);
}

bool in_C_nr(const TameRep& r) {
  const GaloisRing* R = r.ring();
  if (R->precision() < 2) throw Error(ErrorKind::PrecisionIncrease, "condition needs precision >= 2");
  const Mat U = unconjugator(r.n(), R);
  TameRep base = conjugate(r, inverse(U));
  const Root alpha = condition_root(LocalCondition::Nr, r.n());
  if (!in_D_alpha(base, alpha)) return false;
  RootDatum rd(r.n(), R->at_precision(2));
  return mod_p2_clauses(reduce(base, 2), LocalCondition::Nr, rd, alpha);
}

bool in_C_ram(const TameRep& r) {
  const GaloisRing* R = r.ring();
  if (R->precision() < 2) throw Error(ErrorKind::PrecisionIncrease, "condition needs precision >= 2");
  const Root alpha = condition_root(LocalCondition::Ram, r.n());
  if (!in_D_alpha(r, alpha)) return false;
  RootDatum rd(r.n(), R->at_precision(2));
  return mod_p2_clauses(reduce(r, 2), LocalCondition::Ram, rd, alpha);
}

bool in_condition(const TameRep& r, LocalCondition c) {
  return c == LocalCondition::Nr ? in_C_nr(r) : in_C_ram(r);
}

std::optional<Mat> class_conjugator(const TameRep& r, LocalCondition c) {
  const GaloisRing* R = r.ring();
  const int m = R->precision();
  const int n = r.n();
  const Mat I = identity(R, 2 * n);
  if (m <= 2) {
    if (in_condition(r, c)) return I;
    return std::nullopt;
  }
  if (m > 3) throw Error(ErrorKind::Unsupported, "class membership is implemented for precision <= 3");
  validate(r);
  // Work with the unconjugated representative; the kernel is normal, so the
  // conjugator transports back through U.
  const Mat U = c == LocalCondition::Nr ? unconjugator(n, R) : I;
  const TameRep base = conjugate(r, inverse(U));
  const GaloisRing* F = R->residue_field();
  RootDatum rdF(n, F);
  RootDatum rdR(n, R);
  const Root alpha = condition_root(c, n);
  const Mat& XaR = rdR.X(alpha);
  const Mat& XaF = rdF.X(alpha);
  if (!mod_p2_clauses(reduce(base, 2), c, RootDatum(n, R->at_precision(2)), alpha)) return std::nullopt;

  // Conjugation by Id + pZ changes A = Id + pS by p^2 [Z, S] and B = Id + pT
  // by p^2 [Z, T] modulo p^3.
  const Mat S = reduce(divide_by_p_power(Mat(base.A - I), 1), 1);
  const Mat T = reduce(divide_by_p_power(Mat(base.B - I), 1), 1);
  const GR v = R->from_int(base.v);
  const Mat E = base.A * XaR - scale(Mat(XaR * base.A), v);
  const Mat Boff = off_support(Mat(base.B - I), XaR);
  if (valuation(E) < 2 || valuation(Boff) < 2) return std::nullopt;
  const Mat e1 = vec(reduce(divide_by_p_power(E, 2), 1));
  const Mat e2 = vec(reduce(divide_by_p_power(Boff, 2), 1));
  const int d = rdF.dim();
  Mat sys = zeros(F, e1.rows() + e2.rows(), d);
  for (int k = 0; k < d; ++k) {
    const Mat& Z = rdF.basis_matrix(k);
    sys.block(0, k, e1.rows(), 1) = vec(bracket(bracket(Z, S), XaF));
    sys.block(e1.rows(), k, e2.rows(), 1) = vec(off_support(bracket(Z, T), XaF));
  }
  auto z = solve(sys, Mat(-vstack(e1, e2)));
  if (!z) return std::nullopt;
  const Mat K = cayley(scale(lift(rdF.from_coords(*z), R), R->from_int(R->p())));
  const Mat full = U * K * inverse(U);
  if (!in_condition(conjugate(r, full), c)) return std::nullopt;
  return full;
}

bool class_in_condition(const TameRep& r, LocalCondition c) { return class_conjugator(r, c).has_value(); }

GMod trivial_adjoint(const RootDatum& rd) {
  GMod M;
  M.F = rd.ring();
  M.action = {identity(rd.ring(), rd.dim()), identity(rd.ring(), rd.dim())};
  M.torus = {true, false};
  M.side = Side::Adjoint;
  return M;
}

Mat tame_z1(const RootDatum& rd, int64_t v) { return z1_basis(FPGroup::tame(v), trivial_adjoint(rd)); }

namespace {

Mat stacked(const RootDatum& rd, const Mat& sigma, const Mat& tau) {
  Mat out = zeros(rd.ring(), 2 * rd.dim(), 1);
  out.topRows(rd.dim()) = rd.coords(sigma);
  out.bottomRows(rd.dim()) = rd.coords(tau);
  return out;
}

}  // namespace

Mat tangent_P(const RootDatum& rd, const Root& alpha) {
  const GaloisRing* F = rd.ring();
  const int d = rd.dim();
  const Mat& Xa = rd.X(alpha);
  // Cent(X_alpha) in Ad0 already contains t_alpha.
  Mat ad = zeros(F, static_cast<Eigen::Index>(Xa.size()), d);
  for (int k = 0; k < d; ++k) ad.col(k) = vec(bracket(Xa, rd.basis_matrix(k)));
  Mat cent = nullspace(ad);
  Mat out = zeros(F, 2 * d, cent.cols() + 1);
  out.topLeftCorner(d, cent.cols()) = cent;
  out.bottomRightCorner(d, 1) = rd.coords(Xa);
  return out;
}

Mat tangent_S(const RootDatum& rd, const Root& alpha) {
  const auto support = rd.bracket_support(alpha);
  const int d = rd.dim();
  Mat out = zeros(rd.ring(), 2 * d, static_cast<Eigen::Index>(support.size()));
  for (size_t k = 0; k < support.size(); ++k) out(rd.index_of(support[k]), k) = rd.ring()->one();
  return out;
}

Mat conjugate_cocycles(const RootDatum& rd, const Mat& T, const Mat& g) {
  const int d = rd.dim();
  const Mat Ad = adjoint_action(rd, g);
  Mat out = T;
  for (Eigen::Index c = 0; c < T.cols(); ++c) {
    out.block(0, c, d, 1) = Ad * T.block(0, c, d, 1);
    out.block(d, c, d, 1) = Ad * T.block(d, c, d, 1);
  }
  return out;
}

Mat tangent_nr(const RootDatum& rd) {
  const Root alpha = long_root(rd.n(), 0, 1);
  Mat base = hstack(tangent_P(rd, alpha), tangent_S(rd, alpha));
  const Mat U = identity(rd.ring(), 2 * rd.n()) + rd.X(-alpha);
  return column_basis(conjugate_cocycles(rd, base, U));
}

Mat tangent_ram(const RootDatum& rd) {
  const Root alpha = long_root(rd.n(), 0, -1);
  return column_basis(hstack(tangent_P(rd, alpha), tangent_S(rd, alpha)));
}

Mat tangent_ram_adapted(const TameRep& r) {
  const GaloisRing* R = r.ring();
  const GaloisRing* F = R->residue_field();
  const int n = r.n();
  RootDatum rd(n, F);
  const Root alpha = long_root(n, 0, -1);
  const Mat& Xa = rd.X(alpha);
  const Mat r2A = gsp::reduce(r.A, 2);
  const Mat y = reduce(divide_by_p_power(Mat(gsp::reduce(r.B, 2) - identity(R->at_precision(2), 2 * n)), 1), 1);
  auto [i, j] = rd.pivot(rd.index_of(alpha));
  const GR yv = y(i, j) * Xa(i, j).inverse();
  if (yv.is_zero()) throw Error(ErrorKind::SpecMismatch, "tau is not u_alpha(p y) with y a unit");
  RootDatum rd2(n, R->at_precision(2));
  Mat S(2 * rd.dim(), 0);
  for (const Root& beta : rd.bracket_support(alpha)) {
    const GR b = rd2.character(beta, torus_part(r2A)) - R->at_precision(2)->one();
    if (b.valuation() != 1) throw Error(ErrorKind::SpecMismatch, "beta(sigma) is not 1 + p u with u a unit");
    const GR u = divide_by_p_power(Mat::Constant(1, 1, b), 1)(0, 0);
    const Mat& Xb = rd.X(beta);
    Mat col = stacked(rd, Xb, scale(bracket(Xb, Xa), -(yv * u.inverse())));
    S = hstack(S, col);
  }
  return column_basis(hstack(tangent_P(rd, alpha), S));
}

bool lemma55_criterion(const RootDatum& rd, const Cocycle1& f) {
  const int n = rd.n();
  const Mat& Xm = rd.X(long_root(n, 0, -1));
  const Mat& Xp = rd.X(long_root(n, 0, 1));
  const GR c = Xm(n, 0), d = Xp(0, n);
  const Mat& a = f.values.at(0);
  const GR a2L1 = a(rd.index_of(long_root(n, 0, 1)), 0);
  const GR a1 = a(rd.torus_index(0), 0);
  return a2L1 == -((c * d).inverse() * a1);
}

GR sqrt_unit(const GR& a) {
  const GaloisRing* R = a.ring();
  if (!a.is_unit()) throw Error(ErrorKind::NotASquare, "not a unit");
  const GaloisRing* F = R->residue_field();
  const GR a1 = a.residue();
  GR root = F->zero();
  bool found = false;
  for (const GR& x : F->elements())
    if (x * x == a1) {
      root = x;
      found = true;
      break;
    }
  if (!found) throw Error(ErrorKind::NotASquare, a.str() + " is not a square");
  // Newton: y <- (y + a / y) / 2.
  GR y = root.lift(R);
  const GR half = R->from_int(2).inverse();
  for (int k = 0; k < R->precision() + 1; ++k) y = (y + a * y.inverse()) * half;
  return y;
}

TameRep n1_shape(int64_t v, const GR& x, const GR& y, const GR& kappa_sigma) {
  const GaloisRing* R = kappa_sigma.ring();
  const GR c = sqrt_unit(kappa_sigma * R->from_int(v).inverse());
  TameRep r;
  r.v = v;
  r.A = from_ints(R, 2, 2, {v, 0, 0, 1});
  r.A(0, 1) = x.in(R);
  r.A = scale(r.A, c);
  r.B = identity(R, 2);
  r.B(0, 1) = y.in(R);
  r.kappa_sigma = kappa_sigma;
  r.kappa_tau = R->one();
  return r;
}

}  // namespace gsp
