#pragma once

// The C_n root system of sp_2n with explicit root vectors, heights, the
// height filtration and the dual basis X*_lambda, H*_i.
//
// Indices are 0-based: L_0..L_{n-1} in code correspond to L_1..L_n.
// Coordinates on sp_2n list the root vectors in the total order of roots()
// and then H_1..H_n.

#include <string>
#include <vector>

#include "gsp/linalg.hpp"

namespace gsp {

struct Root {
  std::vector<int> c;  // coefficients of L_1..L_n
  bool one = false;    // the formal symbol "1"

  static Root trivial(int n);
  Root operator-() const;
  int height() const;
  bool operator==(const Root& o) const { return one == o.one && c == o.c; }
  bool operator!=(const Root& o) const { return !(*this == o); }
  std::string name() const;
  static Root parse(const std::string& s, int n);
};

Root long_root(int n, int i, int sign = 1);               // sign * 2L_i
Root short_root(int n, int i, int j, int si, int sj);     // si L_i + sj L_j
bool is_root(const Root& r);
// Total order: height, then lexicographic on coefficients.
bool root_less(const Root& a, const Root& b);

class RootDatum {
 public:
  RootDatum(int n, const GaloisRing* R, GR zeta = GR(1));

  int n() const { return n_; }
  int dim() const { return n_ * (2 * n_ + 1); }  // dim sp_2n
  int num_roots() const { return static_cast<int>(roots_.size()); }
  const GaloisRing* ring() const { return R_; }
  const GR& zeta() const { return zeta_; }

  const std::vector<Root>& roots() const { return roots_; }
  std::vector<Root> positive_roots() const;
  std::vector<Root> simple_roots() const;
  const Root& highest_root() const;
  int index_of(const Root& r) const;  // coordinate index; throws NotARoot
  int torus_index(int i) const { return num_roots() + i; }

  const Mat& X(const Root& r) const;
  const Mat& H(int i) const { return H_.at(i); }
  const Mat& basis_matrix(int k) const { return basis_.at(k); }
  const std::vector<Mat>& basis() const { return basis_; }

  // Coordinates of a matrix in sp_2n, as a column; throws NotSymplectic
  // when Y is not in the span.
  Mat coords(const Mat& Y) const;
  Mat from_coords(const Mat& v) const;
  bool in_sp(const Mat& Y) const;

  // Span of root spaces of height >= k, plus the torus when k <= 0.
  Mat filtration(int k) const;
  // Functionals vanishing on filtration(k), in dual coordinates.
  Mat filtration_perp(int k) const;
  // Largest k with v in filtration(k) for nonzero v of nilpotent support.
  int level_of(const Mat& v) const;

  // Evaluation of a dual vector on a vector: zeta * sum f_i v_i.
  GR pair(const Mat& v, const Mat& f) const;
  // Dual coordinates of the functional Y -> tr(X Y).
  Mat trace_dual(const Mat& X) const;

  // Roots beta with [X_alpha, X_beta] != 0.
  std::vector<Root> bracket_support(const Root& alpha) const;
  // Value of the root character on the diagonal of a (Borel) matrix.
  GR character(const Root& r, const Mat& g) const;

  // Entry (row, col) at which X_r is nonzero and all other basis vectors vanish.
  std::pair<int, int> pivot(int k) const { return pivots_.at(k); }

 private:
  int n_;
  const GaloisRing* R_;
  GR zeta_;
  std::vector<Root> roots_;
  std::vector<Mat> X_;
  std::vector<Mat> H_;
  std::vector<Mat> basis_;
  std::vector<std::pair<int, int>> pivots_;
};

std::vector<Root> roots(int n);
Mat root_vector(const Root& r, int n, const GaloisRing* R);
Mat bracket(const Mat& A, const Mat& B);
Mat symplectic_form(int n, const GaloisRing* R);

}  // namespace gsp
