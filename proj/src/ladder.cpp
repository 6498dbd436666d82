#include "gsp/ladder.hpp"

#include <functional>
#include <numeric>
#include <sstream>

#include "gsp/symplectic.hpp"

namespace gsp {

namespace {

Mat lifted_sp(const RootDatum& rdF, const Mat& coords, const GaloisRing* R, int64_t pk) {
  return scale(lift(rdF.from_coords(coords), R), R->from_int(pk));
}

bool is_teichmuller_diagonal(const Mat& X) {
  if (!is_diagonal(X)) return false;
  const int64_t q = X(0, 0).ring()->q();
  for (Eigen::Index i = 0; i < X.rows(); ++i)
    if (X(i, i).pow(q) != X(i, i)) return false;
  return true;
}

}  // namespace

void validate(const LiftLadder& L) {
  if (L.images.size() != static_cast<size_t>(L.group.gens()) || L.kappa.size() != L.images.size())
    throw Error(ErrorKind::SpecMismatch, "ladder lists do not match the generators");
  const GaloisRing* R = L.ring();
  const int m = R->precision();
  for (size_t g = 0; g < L.images.size(); ++g) {
    if (L.kappa[g].ring()->precision() < m)
      throw Error(ErrorKind::PrecisionIncrease, "similitude target known to lower precision");
    if (similitude(L.images[g]) != L.kappa[g].reduce(m))
      throw Error(ErrorKind::NotSymplectic, "similitude of " + L.group.labels[g] + " differs from kappa");
  }
  const Mat I = identity(R, 2 * L.n());
  for (const Word& r : L.group.relations)
    if (!equal(evaluate(r, L.images), I))
      throw Error(ErrorKind::SpecMismatch, "relation " + word_string(r, L.group.labels) + " fails");
}

bool is_valid(const LiftLadder& L) {
  try {
    validate(L);
    return true;
  } catch (const Error&) {
    return false;
  }
}

LiftLadder reduce(const LiftLadder& L, int m) {
  LiftLadder out = L;
  for (Mat& X : out.images) X = reduce(X, m);
  return out;
}

GMod residual_adjoint(const LiftLadder& L) {
  const GaloisRing* F = L.ring()->residue_field();
  RootDatum rd(L.n(), F);
  GMod M;
  M.F = F;
  M.side = Side::Adjoint;
  for (const Mat& X : L.images) {
    M.action.push_back(adjoint_action(rd, reduce(X, 1)));
    M.torus.push_back(false);
  }
  return M;
}

std::string ObstructionWitness::str(const FPGroup& G) const {
  std::ostringstream os;
  os << "obstruction at precision " << precision << ":";
  for (size_t r = 0; r < residues.size(); ++r)
    os << " [" << word_string(G.relations.at(r), G.labels) << "] -> " << to_string(Mat(residues[r].transpose()));
  return os.str();
}

Mat set_lift(const Mat& X, const GR& kappa, const GaloisRing* R) {
  const GR k = kappa.reduce(R->precision());
  Mat Y;
  if (is_teichmuller_diagonal(X)) {
    std::vector<GR> d;
    for (Eigen::Index i = 0; i < X.rows(); ++i) d.push_back(teichmuller(X(i, i).residue(), R->precision()));
    Y = diagonal(d);
  } else {
    Y = lift(X, R);
  }
  const Mat J = symplectic_form(static_cast<int>(X.rows() / 2), R);
  // Y^T J Y = k J + p^v E; replace Y by Y (Id + p^v Z) with
  // k (Z^T J + J Z) = -E, taking J Z strictly upper triangular.
  for (int guard = 0; guard <= R->precision(); ++guard) {
    const Mat M = Y.transpose() * J * Y - scale(J, k);
    if (is_zero(M)) return Y;
    const int v = valuation(M);
    if (v < 1) throw Error(ErrorKind::NotSymplectic, "set-lift is not symplectic modulo p");
    const Mat E = reduce(divide_by_p_power(M, v), 1);
    const GR kinv = k.residue().inverse();
    Mat W = zeros(E(0, 0).ring(), E.rows(), E.cols());
    for (Eigen::Index i = 0; i < E.rows(); ++i)
      for (Eigen::Index j = i + 1; j < E.cols(); ++j) W(i, j) = -(E(i, j) * kinv);
    const Mat JF = symplectic_form(static_cast<int>(X.rows() / 2), ring_of(E));
    const Mat Z = -(JF * W);
    Y = Y * (identity(R, Y.rows()) + scale(lift(Z, R), R->from_int(ipow(R->p(), v))));
  }
  throw Error(ErrorKind::NotSymplectic, "similitude correction did not converge");
}

LiftOutcome lift_step(const LiftLadder& L, const std::optional<Mat>& directions) {
  const GaloisRing* R0 = L.ring();
  const int m = R0->precision();
  const GaloisRing* R = R0->at_precision(m + 1);
  const GaloisRing* F = R0->residue_field();
  const int n = L.n();
  RootDatum rdF(n, F);
  const int d = rdF.dim();
  const int k = L.group.gens();
  for (const GR& x : L.kappa)
    if (x.ring()->precision() < m + 1) throw Error(ErrorKind::PrecisionIncrease, "kappa is not known at the next precision");

  std::vector<Mat> lifts;
  for (int g = 0; g < k; ++g) lifts.push_back(set_lift(L.images[g], L.kappa[g], R));
  std::vector<Mat> inv;
  for (const Mat& X : lifts) inv.push_back(inverse(X));

  const Mat I = identity(R, 2 * n);
  const int64_t pm = ipow(R->p(), m);
  std::vector<Mat> residues;
  Mat c(0, 1);
  bool trivial = true;
  for (const Word& r : L.group.relations) {
    const Mat E = evaluate(r, lifts, inv) - I;
    Mat C = zeros(F, 2 * n, 2 * n);
    if (!is_zero(E)) {
      if (valuation(E) < m) throw Error(ErrorKind::SpecMismatch, "ladder does not satisfy its relations");
      C = reduce(divide_by_p_power(E, m), 1);
      trivial = false;
    }
    if (!rdF.in_sp(C)) throw Error(ErrorKind::SpecMismatch, "similitude targets are not compatible with a relation");
    residues.push_back(rdF.coords(C));
    c = vstack(c, residues.back());
  }

  LiftLadder out = L;
  if (trivial) {
    out.images = lifts;
    return {out, std::nullopt};
  }

  const Mat V = directions ? *directions : identity(F, d);
  const Mat fox = fox_matrix(L.group, residual_adjoint(L));
  const Mat system = fox * kron(identity(F, k), V);
  auto y = solve(system, Mat(-c));
  if (!y) return {std::nullopt, ObstructionWitness{m + 1, residues}};
  const Mat x = kron(identity(F, k), V) * *y;
  for (int g = 0; g < k; ++g)
    out.images[g] = (I + lifted_sp(rdF, x.block(static_cast<Eigen::Index>(g) * d, 0, d, 1), R, pm)) * lifts[g];
  validate(out);
  return {out, std::nullopt};
}

LiftLadder twist(const LiftLadder& L, const Cocycle1& f) {
  const GaloisRing* R = L.ring();
  const int m = R->precision();
  if (m < 2) throw Error(ErrorKind::PrecisionIncrease, "twisting needs precision >= 2");
  const GMod M = residual_adjoint(L);
  if (!is_cocycle(L.group, M, f)) throw Error(ErrorKind::NotACocycle, "twist by a non-cocycle");
  RootDatum rdF(L.n(), M.F);
  const Mat I = identity(R, 2 * L.n());
  LiftLadder out = L;
  for (int g = 0; g < L.group.gens(); ++g)
    out.images[g] = (I + lifted_sp(rdF, f.values.at(g), R, ipow(R->p(), m - 1))) * L.images[g];
  return out;
}

std::optional<Mat> strict_conjugator(const LiftLadder& L1, const LiftLadder& L2, size_t cap) {
  const GaloisRing* R = L1.ring();
  const int m = R->precision();
  if (L2.ring() != R || L1.images.size() != L2.images.size())
    throw Error(ErrorKind::SpecMismatch, "ladders differ in ring or generators");
  for (size_t g = 0; g < L1.images.size(); ++g)
    if (!equal(reduce(L1.images[g], 1), reduce(L2.images[g], 1))) return std::nullopt;

  const GMod M = residual_adjoint(L1);
  const GaloisRing* F = M.F;
  RootDatum rdF(L1.n(), F);
  const Mat B = b1_span(L1.group, M);
  const Mat H0 = nullspace(B);
  const std::vector<GR> field = F->elements();
  std::vector<Mat> inv2;
  for (const Mat& X : L2.images) inv2.push_back(inverse(X));
  size_t nodes = 0;

  // K satisfies K L1 K^{-1} = L2 modulo p^j.
  std::function<std::optional<Mat>(int, const Mat&)> search = [&](int j, const Mat& K) -> std::optional<Mat> {
    if (++nodes > cap) throw Error(ErrorKind::Unsupported, "strict equivalence search exceeded its cap");
    if (j >= m) return K;
    const Mat Ki = inverse(K);
    Mat delta(0, 1);
    for (size_t g = 0; g < L1.images.size(); ++g) {
      const Mat D = K * L1.images[g] * Ki * inv2[g] - identity(R, K.rows());
      Mat Dj = zeros(F, K.rows(), K.cols());
      if (!is_zero(D)) {
        if (valuation(D) < j) throw Error(ErrorKind::SpecMismatch, "conjugator invariant broken");
        Dj = reduce(divide_by_p_power(D, j), 1);
      }
      // A scalar part means the similitudes differ.
      if (!rdF.in_sp(Dj)) return std::nullopt;
      delta = vstack(delta, rdF.coords(Dj));
    }
    auto z0 = solve(B, delta);
    if (!z0) return std::nullopt;
    const int64_t pj = ipow(R->p(), j);
    auto step = [&](const Mat& z) { return Mat(cayley(lifted_sp(rdF, z, R, pj)) * K); };
    // At the last level any solution will do.
    if (j == m - 1 || H0.cols() == 0) return search(j + 1, step(*z0));
    std::vector<int> digits(H0.cols(), 0);
    while (true) {
      Mat z = *z0;
      for (Eigen::Index i = 0; i < H0.cols(); ++i) z += scale(Mat(H0.col(i)), field[digits[i]]);
      if (auto found = search(j + 1, step(z))) return found;
      Eigen::Index i = 0;
      while (i < H0.cols() && ++digits[i] == static_cast<int>(field.size())) digits[i++] = 0;
      if (i == H0.cols()) break;
    }
    return std::nullopt;
  };
  return search(1, identity(R, 2 * L1.n()));
}

bool strict_equivalent(const LiftLadder& L1, const LiftLadder& L2, size_t cap) {
  return strict_conjugator(L1, L2, cap).has_value();
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "PASS";
    case Verdict::Fail:
      return "FAIL";
    case Verdict::Assumed:
      return "ASSUMED";
  }
  return "?";
}

const ConditionResult& HypothesisReport::get(const std::string& id) const {
  for (const ConditionResult& c : conditions)
    if (c.id == id) return c;
  throw Error(ErrorKind::MissingDesignation, "no condition " + id);
}

bool HypothesisReport::all_pass() const {
  for (const ConditionResult& c : conditions)
    if (c.verdict == Verdict::Fail) return false;
  return true;
}

CharacterTable character_table(const GroupData& G) {
  RootDatum rd(G.n, G.F);
  CharacterTable T;
  T.labels.push_back(Root::trivial(G.n));
  for (const Root& r : rd.roots()) T.labels.push_back(r);
  for (const Root& r : T.labels) {
    std::vector<GR> vals;
    for (const Mat& X : G.images) vals.push_back(rd.character(r, torus_part(X)));
    T.values.push_back(std::move(vals));
  }
  return T;
}

namespace {

std::vector<GR> frobenius_all(const std::vector<GR>& v, int k) {
  std::vector<GR> out;
  for (const GR& x : v) out.push_back(frobenius(x, k));
  return out;
}

// sigma as a power of chi on a torus generator where chi is primitive.
std::string describe(const GroupData& G, const std::vector<GR>& vals) {
  for (int g = 0; g < G.size(); ++g) {
    if (!G.torus[g]) continue;
    const GR& c = G.chi[g];
    const int64_t ord = multiplicative_order(c);
    const int64_t e = discrete_log(vals[g], c);
    if (e < 0) continue;
    int64_t s = e > ord / 2 ? e - ord : e;
    return "chi^" + std::to_string(s) + " (mod " + std::to_string(ord) + ")";
  }
  std::string s;
  for (const GR& x : vals) s += (s.empty() ? "" : ",") + x.str();
  return "(" + s + ")";
}

std::string sigma_name(const Root& r) { return "sigma_{" + r.name() + "}"; }

int field_degree(const GR& x) {
  const int M = x.ring()->degree();
  for (int k = 1; k <= M; ++k)
    if (frobenius(x, k) == x) return k;
  return M;
}

// Condition (3). Pi = image meets U_1; its image in U_1/U_2 is spanned over
// F_p by the unipotent parts X^{ord(torus part)} and their conjugates.
ConditionResult condition_u1(const GroupData& G, const RootDatum& rd) {
  const GaloisRing* F = G.F;
  const int n = G.n;
  const int64_t p = F->p();
  const int M = F->degree();
  ConditionResult c{"3", "image contains U_1(F_p)", Verdict::Fail, "", {}};
  if (p <= 2 * n) {
    c.certificate = "not evaluated: exp and log on U_1 need p > 2n";
    return c;
  }
  // Pi = image meets U_1. Its image in U_1/U_2 is spanned over F_p by the
  // unipotent parts X^{ord(torus part)} and their conjugates.
  const auto simple = rd.simple_roots();
  const GaloisRing* P = GaloisRing::get(prime_field(p), 1);
  Mat span = zeros(P, n * M, 0);
  bool borel = true;
  for (int g = 0; g < G.size(); ++g) {
    const Mat& X = G.images[g];
    if (!in_borel(X)) {
      borel = false;
      c.witnesses.push_back(G.labels[g] + " is not in the Borel");
      continue;
    }
    const Mat T = torus_part(X);
    int64_t ord = 1;
    for (Eigen::Index i = 0; i < T.rows(); ++i) ord = std::lcm(ord, multiplicative_order(T(i, i)));
    const Mat U = power(X, ord);
    if (filtration_level(U) == kLevelInfinity) continue;
    const Mat v = rd.coords(log_unipotent(U));
    Mat s = zeros(F, n, 1);
    for (int i = 0; i < n; ++i) s(i, 0) = v(rd.index_of(simple[i]), 0);
    span = hstack(span, Mat(restrict_scalars(s).col(0)));
  }
  // Conjugation acts on U_1/U_2 through the simple root characters.
  GMod quot;
  quot.F = P;
  for (const Mat& X : G.images) {
    std::vector<GR> diag;
    for (const Root& r : simple) diag.push_back(rd.character(r, torus_part(X)));
    quot.action.push_back(restrict_scalars(diagonal(diag)));
    quot.torus.push_back(false);
  }
  const Mat closure = stable_closure(quot, span);
  // restrict_scalars orders coordinates as (entry, power) blocks.
  Mat rational = zeros(P, n * M, n);
  for (int i = 0; i < n; ++i) rational(static_cast<Eigen::Index>(i) * M, i) = P->one();
  const bool ok = borel && contains_span(closure, rational);
  c.verdict = ok ? Verdict::Pass : Verdict::Fail;
  c.certificate = "F_p-rank of Pi in U_1/U_2 = " + std::to_string(closure.cols()) + " (needs the " +
                  std::to_string(n) + " rational simple directions); commutator saturation lifts this to U_1(F_p)";
  return c;
}

}  // namespace

HypothesisReport check_hypotheses(const GroupData& G) {
  G.validate();
  const GaloisRing* F = G.F;
  const int n = G.n;
  const int64_t p = F->p();
  const int M = F->degree();
  RootDatum rd(n, F);
  const int d = rd.dim();
  HypothesisReport rep;
  rep.p = static_cast<int>(p);

  {
    ConditionResult c{"1", "p > 2n", p > 2 * n ? Verdict::Pass : Verdict::Fail, "", {}};
    c.certificate = "p = " + std::to_string(p) + ", 2n = " + std::to_string(2 * n);
    rep.conditions.push_back(c);
  }
  {
    if (!G.complex_conjugation) throw Error(ErrorKind::MissingDesignation, "no complex conjugation image");
    const Mat fixed = fixed_subspace(F, d, {adjoint_action(rd, *G.complex_conjugation)});
    const int want = n * n;
    ConditionResult c{"2", "odd", fixed.cols() == want ? Verdict::Pass : Verdict::Fail, "", {}};
    c.certificate = "dim Ad0^{c} = " + std::to_string(fixed.cols()) + ", dim n = " + std::to_string(want);
    rep.conditions.push_back(c);
  }
  rep.conditions.push_back(condition_u1(G, rd));
  {
    const CharacterTable T = character_table(G);
    ConditionResult c{"4", "distinct characters", Verdict::Pass, "", {}};
    const size_t N = T.labels.size();
    for (size_t i = 0; i < N; ++i)
      for (size_t j = i + 1; j < N; ++j)
        for (int k = 0; k < M; ++k)
          if (T.values[i] == frobenius_all(T.values[j], k))
            c.witnesses.push_back("(a) " + sigma_name(T.labels[i]) + " = " + (k ? "Frob^" + std::to_string(k) + " " : "") +
                                  sigma_name(T.labels[j]) + " = " + describe(G, T.values[i]));
    for (size_t i = 0; i < N; ++i)
      for (size_t j = 0; j < N; ++j) {
        std::vector<GR> shifted = T.values[j];
        for (size_t g = 0; g < shifted.size(); ++g) shifted[g] = shifted[g] * G.chi[g];
        for (int k = 0; k < M; ++k)
          if (T.values[i] == frobenius_all(shifted, k))
            c.witnesses.push_back("(b) " + sigma_name(T.labels[i]) + " = " + (k ? "Frob^" + std::to_string(k) + " " : "") +
                                  "chi " + sigma_name(T.labels[j]) + " = " + describe(G, T.values[i]));
      }
    if (!c.witnesses.empty()) c.verdict = Verdict::Fail;
    c.certificate = "compared " + std::to_string(N) + " characters pairwise under " + std::to_string(M) +
                    " Frobenius powers; " + std::to_string(c.witnesses.size()) + " coincidences";
    rep.conditions.push_back(c);
  }
  {
    ConditionResult c{"5", "F_p-span of sigma_lambda is F_q", Verdict::Pass, "", {}};
    const CharacterTable T = character_table(G);
    for (size_t i = 1; i < T.labels.size(); ++i) {
      int deg = 1;
      for (const GR& x : T.values[i]) deg = std::lcm(deg, field_degree(x));
      if (deg != M) {
        c.verdict = Verdict::Fail;
        c.witnesses.push_back(sigma_name(T.labels[i]) + " generates F_{p^" + std::to_string(deg) + "}");
      }
    }
    c.certificate = "value fields of all sigma_lambda have degree " + std::to_string(M) + " over F_p";
    if (c.verdict == Verdict::Fail) c.certificate = "some value field is too small";
    rep.conditions.push_back(c);
  }
  rep.conditions.push_back({"6", "global inputs (class groups, Sha vanishing)", Verdict::Assumed,
                            "supplied by configuration; not computed", {}});
  rep.conditions.push_back({"7", "liftable local conditions at v in S, v != p", Verdict::Assumed,
                            "surrogate data carries no places besides p", {}});
  {
    if (G.decomposition_at_p.empty()) throw Error(ErrorKind::MissingDesignation, "no decomposition group at p");
    GMod Mp;
    Mp.F = F;
    std::vector<GR> chi;
    for (int g : G.decomposition_at_p) {
      Mp.action.push_back(adjoint_action(rd, G.images[g]));
      Mp.torus.push_back(false);
      chi.push_back(G.chi[g]);
    }
    const GMod Q = quotient(Mp, rd.filtration(0));
    const int h = static_cast<int>(fixed_subspace(Q).cols());
    const int hchi = static_cast<int>(fixed_subspace(twist(Q, chi)).cols());
    ConditionResult c{"8", "REG and REG*", h == 0 && hchi == 0 ? Verdict::Pass : Verdict::Fail, "", {}};
    c.certificate = "h0(G_p, Ad0/b) = " + std::to_string(h) + ", h0(G_p, (Ad0/b)(chi)) = " + std::to_string(hchi);
    rep.conditions.push_back(c);
  }
  return rep;
}

}  // namespace gsp
