// One PASS/FAIL line per acceptance criterion. Exit status is nonzero when
// any criterion fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "gsp/gsp4_example.hpp"
#include "gsp/local_tame.hpp"
#include "gsp/oracles.hpp"
#include "gsp/symplectic.hpp"

using namespace gsp;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;
  void expect(bool ok, const std::string& what) {
    if (!ok) pass = false;
    notes.push_back(std::string(ok ? "ok: " : "FAILED: ") + what);
  }
};

const GaloisRing* ring(int64_t p, int m) { return GaloisRing::get(prime_field(p), m); }

Cocycle1 column(const Mat& T, Eigen::Index c, int gens, int d) { return unstack_cocycle(T.col(c), gens, d); }

// ------------------------------------------------------------ criterion 1

Outcome root_system() {
  Outcome o;
  const GaloisRing* F = ring(5, 1);
  RootDatum rd(2, F);
  const int n = 2;
  auto e = [&](int i, int j) { return unit_matrix(F, 2 * n, i, j); };
  // Chevalley basis of sp_4 for J = [[0, I], [-I, 0]], 0-based indices.
  int mismatches = 0;
  for (int i = 0; i < n; ++i) {
    if (!equal(rd.X(long_root(n, i, 1)), e(i, n + i))) ++mismatches;
    if (!equal(rd.X(long_root(n, i, -1)), e(n + i, i))) ++mismatches;
    for (int j = i + 1; j < n; ++j) {
      if (!equal(rd.X(short_root(n, i, j, 1, -1)), Mat(e(i, j) - e(n + j, n + i)))) ++mismatches;
      if (!equal(rd.X(short_root(n, i, j, -1, 1)), Mat(e(j, i) - e(n + i, n + j)))) ++mismatches;
      if (!equal(rd.X(short_root(n, i, j, 1, 1)), Mat(e(i, n + j) + e(j, n + i)))) ++mismatches;
      if (!equal(rd.X(short_root(n, i, j, -1, -1)), Mat(e(n + j, i) + e(n + i, j)))) ++mismatches;
    }
  }
  o.expect(mismatches == 0 && rd.num_roots() == 8,
           "8 root vectors equal the elementary-matrix formulas (" + std::to_string(mismatches) + " mismatches)");
  auto X = [&](const char* s) { return rd.X(Root::parse(s, 2)); };
  o.expect(equal(bracket(X("L1-L2"), X("2L2")), X("L1+L2")), "[X_{L1-L2}, X_{2L2}] = X_{L1+L2}");
  o.expect(equal(bracket(X("L1-L2"), X("L1+L2")), scale(X("2L1"), F->from_int(2))),
           "[X_{L1-L2}, X_{L1+L2}] = 2 X_{2L1}");
  return o;
}

// ------------------------------------------------------------ criterion 2

Outcome oddness() {
  Outcome o;
  const GaloisRing* F = ring(23, 1);
  RootDatum rd(2, F);
  const Mat c = diagonal({-F->one(), F->one(), F->one(), -F->one()});
  const Mat fixed = nullspace(Mat(adjoint_action(rd, c) - identity(F, rd.dim())));
  const int dim_n = static_cast<int>(rd.positive_roots().size());
  o.expect(fixed.cols() == 4 && dim_n == 4,
           "dim Ad0^{c} = " + std::to_string(fixed.cols()) + ", dim n = " + std::to_string(dim_n));
  return o;
}

// ------------------------------------------------------------ criterion 3

Outcome saturation() {
  Outcome o;
  const SaturationResult r5 = saturation_oracle(5, 100, 2024);
  const SaturationResult r7 = saturation_oracle(7, 0, 2024);
  for (const SaturationResult* r : {&r5, &r7})
    o.expect(r->commutator_failures == 0 && r->exact_failures == 0,
             "F_" + std::to_string(r->p) + ": commutator identity on " + std::to_string(r->pairs) + " scaled pairs");
  int full = 0;
  for (int64_t ord : r5.trial_orders) full += ord == 625;
  o.expect(r5.trial_orders.size() == 100 && full == 100,
           std::to_string(full) + "/" + std::to_string(r5.trial_orders.size()) + " random trials at p=5 give order 625");
  o.expect(r5.ok() && r7.ok(), "|U_1| and the example subgroup have order p^4 at p = 5, 7");
  return o;
}

// ------------------------------------------------------------ criterion 4

Outcome closure() {
  Outcome o;
  for (int64_t p : {5, 7}) {
    const ClosureOracleResult r = closure_oracle(p, 200, 77 + p);
    o.expect(r.ok() && r.random_seeds >= 200,
             "p=" + std::to_string(p) + ": " + std::to_string(r.eigen_seeds) + " eigenvector + " +
                 std::to_string(r.random_seeds) + " random seeds, " + std::to_string(r.failures) + " proper closures");
  }
  return o;
}

// ------------------------------------------------------------ criterion 5

Outcome hom_counts() {
  Outcome o;
  // Residual data of the example's shape whose root characters are
  // distinct and not twists of each other, as the Hom count requires.
  ExamplePlan shape;
  shape.p = 37;
  shape.precision = 1;
  shape.exponents = {3, 0, -12, -9};
  shape.similitude_exponent = -9;
  const HypothesisReport h = check_hypotheses(example_group_data(shape));
  o.expect(h.all_pass(), "data (3, 0, -12, -9) at p=37 passes conditions (1)-(5), (8)");
  const HomOracleResult r = hom_count_oracle(shape);
  o.expect(r.dual_failures == 0 && r.dual_modules > 0,
           std::to_string(r.dual_modules) + " stable dual P: hom(P, Ad0*) = 1 (" + std::to_string(r.dual_failures) +
               " exceptions)");
  o.expect(r.cross_failures == 0 && r.adjoint_modules > 0,
           std::to_string(r.adjoint_modules) + " stable adjoint Q: hom(Q, Ad0*) = 0");

  ExamplePlan literal;
  literal.precision = 1;
  const HomOracleResult lit = hom_count_oracle(literal);
  o.notes.push_back("info: example exponents (3, 0, 6, 9) at p=23 give " + std::to_string(lit.dual_failures) +
                    " dual exceptions (colliding root characters)");
  return o;
}

// ------------------------------------------------------------ criterion 6

Outcome tame_dimensions() {
  Outcome o;
  const GaloisRing* F = ring(5, 1);
  RootDatum rd(2, F);
  const int64_t v = 11;
  const FPGroup T = FPGroup::tame(v);
  const GMod M = trivial_adjoint(rd);
  const int h1 = h1_dim(T, M);
  o.expect(h1 == 20, "h1 = " + std::to_string(h1) + " = 2 dim Ad0");
  const Mat N = tangent_nr(rd);
  const int h0 = rd.dim() - static_cast<int>(rank(Mat(b1_span(T, M))));
  o.expect(N.cols() == 10 && h0 == 10, "dim N^nr = " + std::to_string(N.cols()) + ", h0 = " + std::to_string(h0));

  // Self-pairing through the trace form.
  const int d = rd.dim();
  int nonzero = 0;
  std::string witness;
  for (Eigen::Index i = 0; i < N.cols(); ++i)
    for (Eigen::Index j = 0; j < N.cols(); ++j) {
      const Cocycle1 f = column(N, i, 2, d);
      Cocycle1 g = column(N, j, 2, d);
      for (Mat& val : g.values) val = rd.trace_dual(rd.from_coords(val));
      if (!local_cup(T, rd, f, g).is_zero()) {
        if (witness.empty()) witness = " e.g. basis " + std::to_string(i) + " x " + std::to_string(j);
        ++nonzero;
      }
    }
  o.expect(nonzero == 0, "N^nr isotropic under local_cup: " + std::to_string(nonzero) + " nonzero pairings" + witness);
  return o;
}

// ------------------------------------------------------------ criterion 7

Outcome exclusion() {
  Outcome o;
  RootDatum rd(2, ring(5, 1));
  const Mat N = tangent_nr(rd);
  int good = 0;
  for (Eigen::Index c = 0; c < N.cols(); ++c) good += lemma55_criterion(rd, column(N, c, 2, rd.dim()));
  o.expect(good == N.cols(), std::to_string(good) + "/" + std::to_string(N.cols()) + " basis elements satisfy it");
  Cocycle1 bad{{zeros(rd.ring(), rd.dim(), 1), zeros(rd.ring(), rd.dim(), 1)}};
  bad.values[0](rd.index_of(long_root(2, 0, 1)), 0) = rd.ring()->one();
  o.expect(!lemma55_criterion(rd, bad), "sigma -> X_{2L1} alone violates it");
  return o;
}

// ------------------------------------------------------------ criterion 8

Outcome wiles() {
  Outcome o;
  RootDatum rd(2, ring(5, 1));
  const int dim_n = static_cast<int>(rd.positive_roots().size());
  const int h0p = 2;
  std::vector<LocalTerm> package = {{h0p + dim_n, h0p}, {0, dim_n}, {3, 3}};
  const int base = wiles_difference(0, 0, package);
  o.expect(base == 0, "balanced package: difference " + std::to_string(base));
  const FPGroup T = FPGroup::tame(11);
  const GMod M = trivial_adjoint(rd);
  const int h0v = rd.dim() - static_cast<int>(rank(Mat(b1_span(T, M))));
  package.push_back({static_cast<int>(tangent_nr(rd).cols()), h0v});
  const int after = wiles_difference(0, 0, package);
  o.expect(after == base, "with a trivial prime (dim N_v = h0 = " + std::to_string(h0v) + "): difference " +
                              std::to_string(after));
  return o;
}

// ------------------------------------------------------------ criterion 9

Outcome pipeline() {
  Outcome o;
  const ExampleBuild B = build_example(ExamplePlan{});
  const Report& rep = B.report;
  std::vector<std::string> failed;
  for (const char* id : {"1", "2", "3", "4", "5", "8"}) {
    const Check* c = rep.find(std::string("hypothesis.") + id);
    if (!c || c->verdict != Verdict::Pass) {
      std::string w = c && !c->witnesses.empty() ? " [" + c->witnesses.front() + "]" : "";
      failed.push_back(std::string("(") + id + ")" + w);
    }
  }
  std::string list;
  for (const std::string& f : failed) list += " " + f;
  o.expect(failed.empty(), "p=23 conditions (1)-(5), (8) all pass" + (failed.empty() ? "" : ", failing:" + list));
  auto verdict = [&](const char* name) {
    const Check* c = rep.find(name);
    return c && c->verdict == Verdict::Pass;
  };
  o.expect(verdict("ladder") && !B.trace.empty() && B.trace.back().name == "r3",
           "ladder r-bar -> r2 -> r3 with similitude chi^9 mod p^m");
  o.expect(verdict("H pattern"), "every generator image passes verify_h_pattern");
  o.expect(verdict("Phi(r2) components"), "Phi(r2) has nonzero chi^3 and chi^-9 components");

  ExamplePlan p13;
  p13.p = 13;
  p13.precision = 1;
  const ConditionResult c4 = check_hypotheses(example_group_data(p13)).get("4");
  bool collision = false;
  for (const std::string& w : c4.witnesses)
    if (w.find("2L2") != std::string::npos && w.find("L1-L2") != std::string::npos &&
        w.find("mod 12") != std::string::npos)
      collision = true;
  o.expect(c4.verdict == Verdict::Fail && collision, "p=13: condition (4) fails with a mod 12 witness");
  return o;
}

// ----------------------------------------------------------- criterion 10

LiftLadder tame_ladder(int m) {
  const GaloisRing* R = ring(5, m);
  LiftLadder L;
  L.group = FPGroup::tame(11);
  L.images = {diagonal({R->one(), teichmuller(R->from_int(2), m), R->one(), teichmuller(R->from_int(3), m)}),
              identity(R, 4)};
  L.kappa = {ring(5, m + 1)->one(), ring(5, m + 1)->one()};
  return L;
}

TameRep nr_rep(int m) {
  const GaloisRing* R = ring(5, m);
  RootDatum rd(2, R);
  const GR nu = R->from_int(11).inverse();
  const GR b = R->from_int(11);
  TameRep r;
  r.v = 11;
  r.A = diagonal({R->one(), b, nu, nu * b.inverse()});
  r.B = identity(R, 4);
  return conjugate(r, Mat(identity(R, 4) + rd.X(long_root(2, 0, -1))));
}

TameRep ram_rep(int m) {
  const GaloisRing* R = ring(5, m);
  RootDatum rd(2, R);
  const GR v = R->from_int(11);
  const GR b = R->from_int(16);
  TameRep r;
  r.v = 11;
  r.A = diagonal({R->one(), b, v, v * b.inverse()});
  r.B = identity(R, 4) + scale(rd.X(long_root(2, 0, -1)), R->from_int(5));
  return r;
}

Outcome twist_laws() {
  Outcome o;
  for (int m : {2, 3}) {
    const LiftLadder L = tame_ladder(m);
    const GMod M = residual_adjoint(L);
    const Mat B = b1_span(L.group, M), Z = z1_basis(L.group, M);
    const int d = M.dim();
    int equivalent = 0, tried = 0;
    for (Eigen::Index c = 0; c < B.cols(); ++c) {
      if (is_zero(Mat(B.col(c)))) continue;
      ++tried;
      equivalent += strict_equivalent(L, twist(L, column(B, c, 2, d)));
    }
    o.expect(tried > 0 && equivalent == tried, "m=" + std::to_string(m) + ": " + std::to_string(equivalent) + "/" +
                                                   std::to_string(tried) + " coboundary twists strictly equivalent");
    int inequivalent = 0, outside = 0;
    for (Eigen::Index c = 0; c < Z.cols(); ++c) {
      if (in_span(B, Mat(Z.col(c)))) continue;
      ++outside;
      inequivalent += !strict_equivalent(L, twist(L, column(Z, c, 2, d)));
    }
    o.expect(outside > 0 && inequivalent == outside,
             "m=" + std::to_string(m) + ": " + std::to_string(inequivalent) + "/" + std::to_string(outside) +
                 " non-coboundary twists inequivalent");

    // Twists by f and by f + b agree; twists by f and g with f - g outside B1 do not.
    std::vector<Eigen::Index> nz;
    for (Eigen::Index c = 0; c < Z.cols(); ++c)
      if (!in_span(B, Mat(Z.col(c)))) nz.push_back(c);
    Eigen::Index b = 0;
    while (b < B.cols() && is_zero(Mat(B.col(b)))) ++b;
    if (nz.size() >= 2 && b < B.cols()) {
      const Mat f = Z.col(nz[0]), g = Z.col(nz[1]);
      const LiftLadder Tf = twist(L, unstack_cocycle(f, 2, d));
      const bool same = strict_equivalent(Tf, twist(L, unstack_cocycle(Mat(f + B.col(b)), 2, d)));
      const bool apart = in_span(B, Mat(f - g)) || !strict_equivalent(Tf, twist(L, unstack_cocycle(g, 2, d)));
      o.expect(same && apart, "m=" + std::to_string(m) + ": twists by f, f + b equivalent; by f, g inequivalent");
    } else {
      o.expect(false, "m=" + std::to_string(m) + ": not enough cocycles to compare twists");
    }
  }

  RootDatum rd(2, ring(5, 1));
  const int d = rd.dim();
  auto stable = [&](const TameRep& r, const Mat& N, LocalCondition c) {
    for (Eigen::Index k = 0; k < N.cols(); ++k)
      if (!class_in_condition(twist(r, column(N, k, 2, d)), c)) return false;
    return true;
  };
  o.expect(stable(nr_rep(3), tangent_nr(rd), LocalCondition::Nr), "C^nr stable under N^nr twists at m=3");
  o.expect(stable(ram_rep(3), tangent_ram_adapted(ram_rep(3)), LocalCondition::Ram),
           "C^ram stable under N^ram twists at m=3");
  const Mat S = conjugate_cocycles(rd, tangent_S(rd, long_root(2, 0, 1)), Mat(identity(rd.ring(), 4) + rd.X(long_root(2, 0, -1))));
  const bool nr_witness = !class_in_condition(twist(nr_rep(2), column(S, 0, 2, d)), LocalCondition::Nr);
  const bool ram_witness = !stable(ram_rep(2), tangent_ram_adapted(ram_rep(2)), LocalCondition::Ram);
  o.expect(nr_witness || ram_witness, std::string("failing witness at m=2 (nr: ") + (nr_witness ? "yes" : "no") +
                                          ", ram: " + (ram_witness ? "yes" : "no") + ")");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const bool verbose = argc > 1 && std::string(argv[1]) == "-v";
  struct Criterion {
    int id;
    double budget;  // seconds
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, 1, root_system},  {2, 1, oddness},  {3, 30, saturation}, {4, 60, closure},  {5, 60, hom_counts},
      {6, 5, tame_dimensions}, {7, 1, exclusion}, {8, 1, wiles}, {9, 60, pipeline}, {10, 60, twist_laws},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream time;
    time.precision(2);
    time << std::fixed << secs << " s";
    if (secs > c.budget) o.expect(false, "runtime " + time.str() + " over budget");
    std::string detail;
    for (const std::string& n : o.notes)
      if (verbose || n.rfind("ok: ", 0) != 0) detail += (detail.empty() ? "" : "; ") + n;
    if (detail.empty()) detail = std::to_string(o.notes.size()) + " sub-checks";
    std::cout << "criterion " << c.id << ": " << (o.pass ? "PASS" : "FAIL") << " (" << detail << "; " << time.str()
              << ")" << std::endl;
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
