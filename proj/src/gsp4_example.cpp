#include "gsp/gsp4_example.hpp"

#include <algorithm>

#include "gsp/symplectic.hpp"

namespace gsp {

namespace {

const GaloisRing* prime_ring(int64_t p, int m) { return GaloisRing::get(prime_field(p), m); }

Root lambda1() { return short_root(2, 0, 1, 1, -1); }
Root lambda2() { return long_root(2, 1, 1); }

void plan_error(const std::string& what) { throw Error(ErrorKind::PlanInvalid, what); }

int64_t mod(int64_t a, int64_t m) { return ((a % m) + m) % m; }

Mat diagonal_image(const ExamplePlan& plan, const GaloisRing* F) {
  const GR g = primitive_element(F);
  std::vector<GR> d;
  for (int64_t e : plan.exponents) d.push_back(g.pow(mod(e, plan.p - 1)));
  return diagonal(d);
}

GroupData base_data(const ExamplePlan& plan) {
  plan.validate_shape();
  const GaloisRing* F = prime_ring(plan.p, 1);
  const GR g = primitive_element(F);
  GroupData G;
  G.n = 2;
  G.F = F;
  G.labels = {"t", "u1", "u2"};
  G.images = {diagonal_image(plan, F), identity(F, 4), identity(F, 4)};
  G.torus = {true, false, false};
  G.chi = {g, F->one(), F->one()};
  G.kappa = {g.pow(mod(plan.similitude_exponent, plan.p - 1)), F->one(), F->one()};
  G.complex_conjugation = diagonal({-F->one(), F->one(), F->one(), -F->one()});
  G.decomposition_at_p = {0, 1, 2};
  return G;
}

int64_t symmetric(int64_t e, int64_t ord) {
  e = mod(e, ord);
  return e > ord / 2 ? e - ord : e;
}

std::string chi_power(int64_t e) { return e == 0 ? "1" : "chi^" + std::to_string(e); }

}  // namespace

void ExamplePlan::validate_shape() const {
  if (!is_prime(p) || p == 2) plan_error(std::to_string(p) + " is not an odd prime");
  if (p < 5) plan_error("p must exceed 2n = 4");
  if (precision < 1 || precision + 2 > precision_ceiling())
    plan_error("precision must lie in [1, " + std::to_string(precision_ceiling() - 2) + "]");
  const int64_t o = p - 1;
  if (mod(exponents[0] + exponents[2] - similitude_exponent, o) != 0 ||
      mod(exponents[1] + exponents[3] - similitude_exponent, o) != 0)
    plan_error("exponents do not define a GSp_4 diagonal with similitude chi^" + std::to_string(similitude_exponent));
}

void ExamplePlan::validate() const {
  validate_shape();
  if (p < 23) plan_error("the example needs p >= 23, got " + std::to_string(p));
  const int64_t kk = kappa_k();
  if (kk <= 0) plan_error("k must be positive");
  if (kk % (p - 1) != 0) plan_error("k must be divisible by p - 1 so that kappa lifts kappa-bar");
  if (!general_k && kk % p != 0) plan_error("k must be divisible by p(p-1) unless general_k is set");
}

const std::array<std::array<int, 4>, 4>& h_pattern() {
  static const std::array<std::array<int, 4>, 4> pattern = [] {
    std::array<std::array<int, 4>, 4> e{};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) e[i][j] = std::abs(d_exponents()[i] - d_exponents()[j]);
    return e;
  }();
  return pattern;
}

const std::array<int, 4>& d_exponents() {
  static const std::array<int, 4> s{1, 0, -2, -1};
  return s;
}

Mat h_subspace(int m, const GaloisRing* F) {
  RootDatum rd(2, F);
  Mat out = zeros(F, rd.dim(), 0);
  for (int k = 0; k < rd.dim(); ++k) {
    const Mat& B = rd.basis_matrix(k);
    bool inside = true;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        if (!B(i, j).is_zero() && h_pattern()[i][j] > m) inside = false;
    if (inside) out = hstack(out, Mat(identity(F, rd.dim()).col(k)));
  }
  return out;
}

bool verify_h_pattern(const Mat& X) {
  if (X.rows() != 4 || X.cols() != 4) throw Error(ErrorKind::SpecMismatch, "the H pattern is defined for n = 2");
  const int m = ring_of(X)->precision();
  const auto& s = d_exponents();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const int e = h_pattern()[i][j];
      if (X(i, j).valuation() < std::min(e, m)) return false;
      // Borel shape of D^-1 X D mod p; entry is X_ij p^{s_j - s_i}.
      const bool structural_zero = (i >= 2 && j < 2) || (i < 2 && j < 2 && i > j) || (i >= 2 && j >= 2 && j > i);
      if (structural_zero && s[j] - s[i] <= 0 && m > e && X(i, j).valuation() < e + 1) return false;
    }
  return true;
}

Mat d_conjugate_residue(const Mat& X) {
  if (!verify_h_pattern(X)) throw Error(ErrorKind::NotInU1, "matrix is not in H");
  const GaloisRing* R = ring_of(X);
  const int m = R->precision();
  const GaloisRing* F = R->residue_field();
  const auto& s = d_exponents();
  Mat out = zeros(F, 4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const int d = s[j] - s[i];
      if (d > 0) continue;
      if (d == 0) {
        out(i, j) = X(i, j).residue();
        continue;
      }
      if (m <= -d) throw Error(ErrorKind::PrecisionIncrease, "entry of D^-1 X D undetermined at this precision");
      Mat e(1, 1);
      e(0, 0) = X(i, j);
      out(i, j) = divide_by_p_power(e, -d)(0, 0).residue();
    }
  return out;
}

FPGroup example_surrogate(const ExamplePlan& plan, int top_precision) {
  plan.validate_shape();
  const GaloisRing* F = prime_ring(plan.p, 1);
  RootDatum rd(2, F);
  const Mat rt = diagonal_image(plan, F);
  FPGroup G;
  G.labels = {"t", "u1", "u2"};
  G.relations.push_back({{0, plan.p - 1}});
  int u = 1;
  for (const Root& lam : {lambda1(), lambda2()}) {
    const int64_t a = teichmuller(rd.character(lam, rt), top_precision).to_int();
    G.relations.push_back({{0, 1}, {u, 1}, {0, -1}, {u, -a}});
    ++u;
  }
  return G;
}

GroupData example_diagonal_data(const ExamplePlan& plan) { return base_data(plan); }

GroupData example_group_data(const ExamplePlan& plan) {
  GroupData G = base_data(plan);
  RootDatum rd(2, G.F);
  G.images[1] = exp_filtered(rd.X(lambda1()));
  G.images[2] = exp_filtered(rd.X(lambda2()));
  return G;
}

std::vector<CharacterExponent> eigencharacter_table(const ExamplePlan& plan) {
  const GroupData G = example_diagonal_data(plan);
  const CharacterTable T = character_table(G);
  std::vector<CharacterExponent> out;
  for (size_t i = 0; i < T.labels.size(); ++i)
    out.push_back({T.labels[i], symmetric(discrete_log(T.values[i][0], G.chi[0]), plan.p - 1)});
  return out;
}

ExampleBuild build_example(const ExamplePlan& plan) {
  plan.validate();
  ExampleBuild B;
  B.plan = plan;
  Report& rep = B.report;
  const int64_t p = plan.p;
  // rho-bar needs D^-1 r D mod p, which divides the (1,3) entry by p^3.
  const int top = std::max(plan.precision, 4);
  const GaloisRing* F = prime_ring(p, 1);
  const GaloisRing* Rk = prime_ring(p, top + 1);
  RootDatum rd(2, F);
  const GR g = primitive_element(F);
  const GroupData rbar = example_diagonal_data(plan);

  rep.set("p", std::to_string(p));
  rep.set("precision", std::to_string(plan.precision));
  rep.set("exponents", std::to_string(plan.exponents[0]) + ", " + std::to_string(plan.exponents[1]) + ", " +
                           std::to_string(plan.exponents[2]) + ", " + std::to_string(plan.exponents[3]));
  rep.set("similitude", chi_power(plan.similitude_exponent));
  rep.set("kappa_k", std::to_string(plan.kappa_k()));
  rep.set("chi(t)", g.str());

  // Characters.
  {
    ReportSection& s = rep.section("eigencharacters");
    for (const CharacterExponent& c : eigencharacter_table(plan))
      s.entries.emplace_back("sigma_{" + c.root.name() + "}", chi_power(c.exponent));
    const GMod Ad = adjoint_module(rbar, rd);
    const auto parts = eigenspace_decomposition(Ad);
    std::string dims;
    for (const Eigenspace& e : parts) dims += (dims.empty() ? "" : ", ") + std::to_string(e.basis.cols());
    s.entries.emplace_back("dim Ad0", std::to_string(rd.dim()));
    s.entries.emplace_back("torus eigenspace dims", dims);
  }

  // h_m filtration.
  {
    const Mat At = adjoint_action(rd, rbar.images[0]);
    std::vector<int> dims;
    bool stable = true;
    for (int m = 1; m <= 3; ++m) {
      const Mat h = h_subspace(m, F);
      dims.push_back(static_cast<int>(h.cols()));
      if (!contains_span(h, Mat(At * h))) stable = false;
    }
    rep.add_check("h_m filtration", stable && dims == std::vector<int>{6, 8, 10},
                  "dim h_1 = " + std::to_string(dims[0]) + ", dim h_2 = " + std::to_string(dims[1]) +
                      ", dim h_3 = " + std::to_string(dims[2]) + "; each stable under Ad r-bar(t)");
  }

  // Ladder.
  const FPGroup G = example_surrogate(plan, top);
  LiftLadder L;
  L.group = G;
  L.images = rbar.images;
  L.kappa = {teichmuller(g.lift(Rk), top + 1).pow(mod(plan.similitude_exponent + plan.kappa_k(), p - 1)), Rk->one(),
             Rk->one()};
  std::vector<ExampleStep> steps;
  steps.push_back({"r-bar", L});
  std::string failure;
  auto step = [&](const LiftLadder& from, int m, const std::string& name) -> bool {
    const LiftOutcome out = lift_step(from, h_subspace(m, F));
    if (!out.lifted()) {
      failure = out.obstruction->str(G);
      return false;
    }
    steps.push_back({name, *out.ladder});
    return true;
  };
  bool lifted = step(L, 1, "r2'");
  if (lifted) {
    Cocycle1 f{{zeros(F, rd.dim(), 1), rd.coords(rd.X(lambda1())), rd.coords(rd.X(lambda2()))}};
    steps.push_back({"r2", twist(steps.back().ladder, f)});
    for (int m = 2; m < top && lifted; ++m) lifted = step(steps.back().ladder, m, "r" + std::to_string(m + 1));
  }
  for (const ExampleStep& s : steps)
    if (s.ladder.precision() <= plan.precision) B.trace.push_back(s);

  {
    std::vector<std::string> witnesses;
    bool ok = lifted;
    if (!lifted) witnesses.push_back(failure);
    for (const ExampleStep& s : steps) {
      if (!is_valid(s.ladder)) {
        ok = false;
        witnesses.push_back(s.name + " is not a valid ladder");
      }
      const int m = s.ladder.precision();
      const GR want = teichmuller(g, m).pow(mod(plan.similitude_exponent, p - 1));
      if (similitude(s.ladder.images[0]) != want) {
        ok = false;
        witnesses.push_back(s.name + ": similitude of t differs from chi^" + std::to_string(plan.similitude_exponent));
      }
    }
    rep.add_check("ladder", ok,
                  "r-bar -> r2' -> r2 -> ... reached precision " + std::to_string(steps.back().ladder.precision()) +
                      " inside h_m; similitude chi^" + std::to_string(plan.similitude_exponent) + " mod p^m",
                  witnesses);
  }
  {
    std::vector<std::string> witnesses;
    for (const ExampleStep& s : steps)
      for (size_t i = 0; i < s.ladder.images.size(); ++i)
        if (!verify_h_pattern(s.ladder.images[i])) witnesses.push_back(s.name + "(" + G.labels[i] + ")");
    rep.add_check("H pattern", witnesses.empty(),
                  "every generator image of every step has the H valuation pattern and D^-1 X D is Borel mod p",
                  witnesses);
  }
  for (const ExampleStep& s : B.trace)
    rep.add_ladder("ladder " + s.name, s.ladder,
                   {s.name == "r2" ? "twist of r2' by f: u1 -> X_{L1-L2}, u2 -> X_{2L2}" : ""});

  // Phi(r2): F_p-span of (r2(g) - Id)/p on ker r-bar, t-stable.
  if (steps.size() >= 3) {
    const LiftLadder& r2 = steps[2].ladder;
    Mat seeds = zeros(F, rd.dim(), 0);
    for (int u : {1, 2}) {
      const Mat E = r2.images[u] - identity(r2.ring(), 4);
      seeds = hstack(seeds, rd.coords(reduce(divide_by_p_power(E, 1), 1)));
    }
    GMod Mt;
    Mt.F = F;
    Mt.action = {adjoint_action(rd, rbar.images[0])};
    Mt.torus = {true};
    B.phi = stable_closure(Mt, seeds);
    const Mat At = adjoint_action(rd, rbar.images[0]);
    auto component = [&](int64_t e) {
      const Mat E = nullspace(Mat(At - scale(identity(F, rd.dim()), g.pow(mod(e, p - 1)))));
      return static_cast<int>(intersect(B.phi, E).cols());
    };
    const int c3 = component(3), c9 = component(-9);
    Mat small = zeros(F, rd.dim(), 0);
    for (int i = 0; i < 2; ++i) small = hstack(small, Mat(identity(F, rd.dim()).col(rd.torus_index(i))));
    for (const Root& r : {lambda1(), lambda2()}) small = hstack(small, Mat(identity(F, rd.dim()).col(rd.index_of(r))));
    const bool inside = contains_span(small, B.phi);
    rep.add_check("Phi(r2) components", c3 > 0 && c9 > 0 && inside,
                  "dim Phi(r2) = " + std::to_string(B.phi.cols()) + ", chi^3-part " + std::to_string(c3) +
                      ", chi^-9-part " + std::to_string(c9) + ", inside <H1, H2, X_{L1-L2}, X_{2L2}>: " +
                      (inside ? "yes" : "no"));
  }

  // rho-bar = D^-1 r D mod p.
  B.residual = rbar;
  if (lifted) {
    const LiftLadder& top_ladder = steps.back().ladder;
    for (size_t i = 0; i < top_ladder.images.size(); ++i) B.residual.images[i] = d_conjugate_residue(top_ladder.images[i]);
    const GroupData model = example_group_data(plan);
    bool same = true, borel = true;
    for (size_t i = 0; i < model.images.size(); ++i) {
      same = same && equal(model.images[i], B.residual.images[i]);
      borel = borel && in_borel(B.residual.images[i]);
    }
    rep.add_check("rho-bar", same && borel,
                  "D^-1 r D mod p read at precision " + std::to_string(top) +
                      ": t -> r-bar(t), u_i -> exp(X_{lambda_i}), Borel-valued");
    ReportSection& s = rep.section("rho-bar");
    for (size_t i = 0; i < B.residual.images.size(); ++i)
      s.entries.emplace_back("image." + G.labels[i], matrix_text(B.residual.images[i]));
    s.entries.emplace_back("complex_conjugation", matrix_text(*B.residual.complex_conjugation));
    rep.add_hypotheses(check_hypotheses(B.residual));
  }

  if (plan.regular_prime)
    rep.assume("regular prime input: C(chi^{p-i}) = 0 for i in {+-3, +-6, +-9}, so H^2 of h_m vanishes");
  else
    rep.add_check("regular prime input", false, "class-group input not asserted; H^2 vanishing is unsupported");
  rep.assume("global group replaced by the surrogate <t, u1, u2 | t^{p-1}, t u_i t^-1 u_i^{-a_i}>");
  rep.assume("the global classes f1, f2 are realized on the surrogate as u1 -> X_{L1-L2}, u2 -> X_{2L2}");
  rep.assume("complex conjugation maps to diag(-1, 1, 1, -1); the decomposition group at p is the whole surrogate");
  return B;
}

}  // namespace gsp
