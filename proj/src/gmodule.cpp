#include "gsp/gmodule.hpp"

#include <algorithm>
#include <map>

#include "gsp/symplectic.hpp"

namespace gsp {

int GroupData::index(const std::string& label) const {
  for (int i = 0; i < size(); ++i)
    if (labels[i] == label) return i;
  throw Error(ErrorKind::MissingDesignation, "no generator labelled " + label);
}

void GroupData::validate() const {
  const size_t k = images.size();
  if (labels.size() != k || torus.size() != k || chi.size() != k || kappa.size() != k)
    throw Error(ErrorKind::ConfigError, "generator lists have different lengths");
  for (size_t i = 0; i < k; ++i) {
    if (images[i].rows() != 2 * n) throw Error(ErrorKind::ConfigError, "image size mismatch for " + labels[i]);
    if (torus[i] && !is_diagonal(images[i]))
      throw Error(ErrorKind::NotSemisimple, "torus generator " + labels[i] + " is not diagonal");
    if (!is_symplectic(images[i])) throw Error(ErrorKind::NotSymplectic, labels[i]);
  }
  for (int g : decomposition_at_p)
    if (g < 0 || g >= size()) throw Error(ErrorKind::MissingDesignation, "bad decomposition generator");
}

std::vector<Mat> GroupData::torus_images() const {
  std::vector<Mat> out;
  for (int i = 0; i < size(); ++i)
    if (torus[i]) out.push_back(images[i]);
  return out;
}

Mat adjoint_action(const RootDatum& rd, const Mat& g) {
  const GaloisRing* F = rd.ring();
  Mat gi = inverse(g);
  Mat A = zeros(F, rd.dim(), rd.dim());
  for (int k = 0; k < rd.dim(); ++k) A.col(k) = rd.coords(Mat(g * rd.basis_matrix(k) * gi));
  return A;
}

Mat dual_action(const Mat& adjoint_matrix, const GR& chi) {
  return scale(Mat(inverse(adjoint_matrix).transpose()), chi);
}

GMod adjoint_module(const GroupData& G, const RootDatum& rd) {
  GMod M;
  M.F = rd.ring();
  M.torus = G.torus;
  M.side = Side::Adjoint;
  for (const Mat& g : G.images) M.action.push_back(adjoint_action(rd, g));
  return M;
}

GMod dual_module(const GMod& M, const std::vector<GR>& chi) {
  GMod D = M;
  D.side = Side::Dual;
  for (size_t i = 0; i < M.action.size(); ++i) D.action[i] = dual_action(M.action[i], chi.at(i));
  return D;
}

GMod twist(const GMod& M, const std::vector<GR>& values) {
  GMod T = M;
  T.side = Side::Other;
  for (size_t i = 0; i < M.action.size(); ++i) T.action[i] = scale(M.action[i], values.at(i));
  return T;
}

GMod submodule(const GMod& M, const Mat& S) {
  if (!is_stable(M, S)) throw Error(ErrorKind::SpecMismatch, "subspace is not stable");
  GMod sub;
  sub.F = M.F;
  sub.torus = M.torus;
  sub.side = M.side;
  for (const Mat& A : M.action)
    sub.action.push_back(S.cols() == 0 ? Mat(0, 0) : coordinates(S, Mat(A * S)));
  return sub;
}

GMod quotient(const GMod& M, const Mat& S) {
  if (!is_stable(M, S)) throw Error(ErrorKind::SpecMismatch, "subspace is not stable");
  const int d = M.dim();
  Mat T = Mat(d, 0);
  Mat span = S;
  for (int i = 0; i < d; ++i) {
    Mat e = zeros(M.F, d, 1);
    e(i, 0) = M.F->one();
    if (!in_span(span, e)) {
      span = hstack(span, e);
      T = hstack(T, e);
    }
  }
  GMod Q;
  Q.F = M.F;
  Q.torus = M.torus;
  const Mat ST = hstack(S, T);
  for (const Mat& A : M.action) {
    if (T.cols() == 0) {
      Q.action.push_back(Mat(0, 0));
      continue;
    }
    Mat C = coordinates(ST, Mat(A * T));
    Q.action.push_back(C.bottomRows(T.cols()));
  }
  return Q;
}

GMod zero_module(const GaloisRing* F, int gens) {
  GMod Z;
  Z.F = F;
  Z.action.assign(gens, Mat(0, 0));
  Z.torus.assign(gens, false);
  return Z;
}

Mat empty_subspace(const GaloisRing*, int dim) { return Mat(dim, 0); }

bool is_stable(const GMod& M, const Mat& S) {
  if (S.cols() == 0) return true;
  for (const Mat& A : M.action)
    if (!contains_span(S, Mat(A * S))) return false;
  return true;
}

Mat stable_closure(const GMod& M, const Mat& seeds) {
  const int d = M.dim();
  Mat basis = seeds.cols() == 0 ? Mat(d, 0) : column_basis(seeds);
  std::vector<Mat> frontier;
  for (Eigen::Index c = 0; c < basis.cols(); ++c) frontier.push_back(basis.col(c));
  int r = static_cast<int>(basis.cols());
  while (!frontier.empty() && r < d) {
    Mat v = std::move(frontier.back());
    frontier.pop_back();
    for (const Mat& A : M.action) {
      Mat w = A * v;
      if (in_span(basis, w)) continue;
      basis = hstack(basis, w);
      ++r;
      frontier.push_back(std::move(w));
    }
  }
  return basis.cols() == 0 ? basis : column_basis(basis);
}

Mat fixed_subspace(const GaloisRing* F, int dim, const std::vector<Mat>& elements) {
  Mat stacked(0, dim);
  for (const Mat& A : elements) stacked = vstack(stacked, Mat(A - identity(F, dim)));
  if (stacked.rows() == 0) return identity(F, dim);
  return nullspace(stacked);
}

Mat fixed_subspace(const GMod& M, const std::vector<int>& gens) {
  std::vector<Mat> els;
  if (gens.empty()) {
    els = M.action;
  } else {
    for (int g : gens) els.push_back(M.action.at(g));
  }
  return fixed_subspace(M.F, M.dim(), els);
}

namespace {

std::vector<GR> candidate_eigenvalues(const Mat& A, const GaloisRing* F) {
  std::vector<GR> out;
  if (is_diagonal(A)) {
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
      GR c = A(i, i).in(F);
      if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
    }
    return out;
  }
  if (F->size() > 200000) throw Error(ErrorKind::Unsupported, "eigenvalue search over a large field");
  for (int64_t k = 1; k < F->size(); ++k) out.push_back(F->element(k));
  return out;
}

int first_pivot(const Mat& B) {
  Echelon E = rref(B.transpose());
  return E.pivots.empty() ? INT_MAX : E.pivots.front();
}

}  // namespace

std::vector<Eigenspace> eigenspace_decomposition(const GMod& M) {
  const int d = M.dim();
  std::vector<Eigenspace> parts{{{}, identity(M.F, d)}};
  if (d == 0) return {};
  for (int g = 0; g < M.gens(); ++g) {
    if (!M.torus[g]) continue;
    const Mat& A = M.action[g];
    std::vector<Eigenspace> next;
    const auto cands = candidate_eigenvalues(A, M.F);
    for (const Eigenspace& part : parts) {
      int found = 0;
      for (const GR& c : cands) {
        Mat K = nullspace(Mat((A - scale(identity(M.F, d), c)) * part.basis));
        if (K.cols() == 0) continue;
        Eigenspace e{part.values, column_basis(Mat(part.basis * K))};
        e.values.push_back(c);
        found += static_cast<int>(K.cols());
        next.push_back(std::move(e));
      }
      if (found != part.basis.cols())
        throw Error(ErrorKind::NotSemisimple, "torus generator does not act diagonalizably");
    }
    parts = std::move(next);
  }
  std::stable_sort(parts.begin(), parts.end(), [](const Eigenspace& a, const Eigenspace& b) {
    return first_pivot(a.basis) < first_pivot(b.basis);
  });
  return parts;
}

int hom_invariants(const GMod& M1, const GMod& M2) {
  if (M1.dim() == 0 || M2.dim() == 0) return 0;
  // phi A1 = A2 phi, i.e. (A1^T (x) I - I (x) A2) vec(phi) = 0, over F_p.
  Mat basis;
  bool first = true;
  for (int g = 0; g < M1.gens(); ++g) {
    Mat A1 = restrict_scalars(M1.action[g]);
    Mat A2 = restrict_scalars(M2.action[g]);
    const GaloisRing* P = ring_of(A1);
    Mat sys = kron(Mat(A1.transpose()), identity(P, A2.rows())) - kron(identity(P, A1.rows()), A2);
    if (first) {
      basis = nullspace(sys);
      first = false;
    } else {
      if (basis.cols() == 0) return 0;
      basis = basis * nullspace(Mat(sys * basis));
    }
    if (basis.cols() == 0) return 0;
  }
  if (first) return static_cast<int>(restrict_scalars(identity(M1.F, M1.dim())).rows() *
                                      restrict_scalars(identity(M2.F, M2.dim())).rows());
  return static_cast<int>(basis.cols());
}

}  // namespace gsp
