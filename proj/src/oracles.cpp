#include "gsp/oracles.hpp"

#include <map>
#include <random>
#include <set>

#include "gsp/gsp4_example.hpp"
#include "gsp/symplectic.hpp"

namespace gsp {

namespace {

const GaloisRing* prime_ring(int64_t p) { return GaloisRing::get(prime_field(p), 1); }

ExamplePlan shape_plan(int64_t p) {
  ExamplePlan plan;
  plan.p = p;
  plan.precision = 1;
  return plan;
}

std::string describe_vector(const Mat& v) { return "(" + matrix_text(Mat(v.transpose())) + ")"; }

// Canonical key of a column span: the reduced row echelon form of its
// transpose.
std::vector<int64_t> span_key(const Mat& S) {
  if (S.cols() == 0) return {};
  return to_int_vector(rref(Mat(S.transpose())).R);
}

}  // namespace

bool SaturationResult::ok() const {
  if (commutator_failures || exact_failures || pairs == 0) return false;
  const int64_t full = p * p * p * p;
  if (u1_order != full || example_order != full) return false;
  for (int64_t o : trial_orders)
    if (o != full) return false;
  return true;
}

int64_t subgroup_order(const std::vector<Mat>& gens, size_t cap) {
  const GroupEnumeration e = enumerate_group(gens, cap);
  if (!e.complete) throw Error(ErrorKind::Unsupported, "subgroup exceeds enumeration cap");
  return static_cast<int64_t>(e.elements.size());
}

SaturationResult saturation_oracle(int64_t p, int trials, uint64_t seed) {
  if (p <= 4) throw Error(ErrorKind::PrimeTooSmall, "saturation needs p > 2n = 4, got p=" + std::to_string(p));
  const GaloisRing* F = prime_ring(p);
  RootDatum rd(2, F);
  SaturationResult res;
  res.p = p;
  const auto pos = rd.positive_roots();
  const GR half = F->from_int(2).inverse();

  for (const Root& lam : pos)
    for (const Root& mu : pos)
      for (int64_t a = 1; a < p; ++a)
        for (int64_t b = 1; b < p; ++b) {
          ++res.pairs;
          const Mat X = scale(rd.X(lam), F->from_int(a));
          const Mat Y = scale(rd.X(mu), F->from_int(b));
          const Mat c = commutator(exp_filtered(X), exp_filtered(Y));
          const Mat XY = bracket(X, Y);
          const int level = lam.height() + mu.height() + 1;
          const Mat rest = exp_filtered(Mat(-XY)) * c;
          if (!in_U(rest, level)) {
            ++res.commutator_failures;
            res.witnesses.push_back("{exp(" + std::to_string(a) + " X_{" + lam.name() + "}), exp(" + std::to_string(b) +
                                    " X_{" + mu.name() + "})} differs from exp([X, Y]) below U_" + std::to_string(level));
          }
          const Mat exact = exp_filtered(XY) * exp_filtered(Mat(-scale(bracket(XY, X), half))) *
                            exp_filtered(Mat(scale(bracket(Mat(-XY), Y), half)));
          if (!equal(exact, c)) {
            ++res.exact_failures;
            res.witnesses.push_back("three-factor form fails for (" + lam.name() + ", " + mu.name() + ")");
          }
        }

  const size_t cap = static_cast<size_t>(2 * p * p * p * p);
  res.u1_order = static_cast<int64_t>(enumerate_U1(2, F, cap).size());
  const Root l1 = short_root(2, 0, 1, 1, -1), l2 = long_root(2, 1, 1);
  const Root top = long_root(2, 0, 1), mid = short_root(2, 0, 1, 1, 1);
  res.example_order = subgroup_order(
      {Mat(exp_filtered(rd.X(l1)) * exp_filtered(rd.X(top))), exp_filtered(rd.X(l2))}, cap);

  // Random lifts of a basis of U_1/U_2: an invertible 2x2 matrix of simple
  // coefficients plus arbitrary U_2 tails.
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int64_t> coef(0, p - 1);
  for (int t = 0; t < trials; ++t) {
    int64_t a11, a12, a21, a22;
    do {
      a11 = coef(rng), a12 = coef(rng), a21 = coef(rng), a22 = coef(rng);
    } while ((a11 * a22 - a12 * a21) % p == 0);
    auto lift = [&](int64_t x, int64_t y) {
      const Mat head = exp_filtered(Mat(scale(rd.X(l1), F->from_int(x)) + scale(rd.X(l2), F->from_int(y))));
      const Mat tail = exp_filtered(Mat(scale(rd.X(mid), F->from_int(coef(rng))) + scale(rd.X(top), F->from_int(coef(rng)))), 2);
      return Mat(head * tail);
    };
    res.trial_orders.push_back(subgroup_order({lift(a11, a12), lift(a21, a22)}, cap));
  }
  return res;
}

ClosureOracleResult closure_oracle(int64_t p, int random_seeds, uint64_t seed) {
  const GroupData G = example_group_data(shape_plan(p));
  RootDatum rd(2, G.F);
  const GMod M = adjoint_module(G, rd);
  const int low = rd.index_of(long_root(2, 0, -1));
  ClosureOracleResult res;
  res.p = p;
  auto run = [&](const Mat& v, const std::string& label) {
    const Mat C = stable_closure(M, v);
    if (C.cols() != rd.dim()) {
      ++res.failures;
      res.witnesses.push_back(label + " " + describe_vector(v) + " closes to dimension " + std::to_string(C.cols()));
    }
  };

  // Eigenvectors of the torus generator: eigenspace bases and the
  // coordinate vectors, which are eigenvectors as well.
  std::vector<Mat> eigen;
  for (const Eigenspace& e : eigenspace_decomposition(M))
    for (Eigen::Index c = 0; c < e.basis.cols(); ++c) eigen.push_back(e.basis.col(c));
  for (int k = 0; k < rd.dim(); ++k) eigen.push_back(identity(G.F, rd.dim()).col(k));
  for (const Mat& v : eigen) {
    if (v(low, 0).is_zero()) continue;
    ++res.eigen_seeds;
    run(v, "eigenvector seed");
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int64_t> coef(0, p - 1), unit(1, p - 1);
  for (int t = 0; t < random_seeds; ++t) {
    Mat v = zeros(G.F, rd.dim(), 1);
    for (int k = 0; k < rd.dim(); ++k) v(k, 0) = G.F->from_int(coef(rng));
    v(low, 0) = G.F->from_int(unit(rng));
    ++res.random_seeds;
    run(v, "random seed");
  }
  return res;
}

HomOracleResult hom_count_oracle(const ExamplePlan& shape) {
  const int64_t p = shape.p;
  const GroupData G = example_group_data(shape);
  RootDatum rd(2, G.F);
  const GMod A = adjoint_module(G, rd);
  const GMod D = dual_module(A, G.chi);
  const int d = rd.dim();
  const Mat I = identity(G.F, d);
  HomOracleResult res;
  res.p = p;

  auto closures = [&](const GMod& M) {
    std::map<std::vector<int64_t>, Mat> seen;
    for (int mask = 1; mask < (1 << d); ++mask) {
      Mat seeds = zeros(G.F, d, 0);
      for (int k = 0; k < d; ++k)
        if (mask & (1 << k)) seeds = hstack(seeds, Mat(I.col(k)));
      const Mat C = stable_closure(M, seeds);
      seen.emplace(span_key(C), C);
    }
    return seen;
  };
  res.subsets = (1 << d) - 1;

  for (const auto& [key, P] : closures(D)) {
    ++res.dual_modules;
    const int h = hom_invariants(submodule(D, P), D);
    if (h != 1) {
      ++res.dual_failures;
      res.witnesses.push_back("dual submodule of dim " + std::to_string(P.cols()) + ": hom = " + std::to_string(h));
    }
  }
  for (const auto& [key, Q] : closures(A)) {
    ++res.adjoint_modules;
    const int h = hom_invariants(submodule(A, Q), D);
    if (h != 0) {
      ++res.cross_failures;
      res.witnesses.push_back("adjoint submodule of dim " + std::to_string(Q.cols()) + ": hom to dual = " +
                              std::to_string(h));
    }
  }
  return res;
}

}  // namespace gsp
