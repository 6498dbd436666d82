#pragma once

// GSp_2n over Galois rings: similitude, Borel blocks, the nilpotent
// exponential and logarithm, and the unipotent filtration U_k.

#include <climits>
#include <cstddef>
#include <functional>
#include <unordered_set>
#include <vector>

#include "gsp/roots.hpp"

namespace gsp {

inline constexpr int kLevelInfinity = INT_MAX;

// nu with X^T J X = nu J; throws NotSymplectic.
GR similitude(const Mat& X);
bool is_symplectic(const Mat& X);

class SympMatrix {
 public:
  explicit SympMatrix(Mat X);
  SympMatrix(Mat X, GR nu) : X_(std::move(X)), nu_(std::move(nu)) {}

  const Mat& matrix() const { return X_; }
  const GR& nu() const { return nu_; }
  int n() const { return static_cast<int>(X_.rows() / 2); }

  SympMatrix operator*(const SympMatrix& o) const { return SympMatrix(Mat(X_ * o.X_), nu_ * o.nu_); }
  SympMatrix inverse() const;
  SympMatrix reduce(int m) const;

 private:
  Mat X_;
  GR nu_;
};

// [[C, CD], [0, xi C^{-T}]].
Mat borel_element(const Mat& C, const Mat& D, const GR& xi);
// Zero lower-left block, upper triangular C, lower triangular xi C^{-T}.
bool in_borel(const Mat& X);
// Diagonal part of a Borel element, as a torus element.
Mat torus_part(const Mat& X);

Mat exp_filtered(const Mat& Y, int k = 1);
Mat log_unipotent(const Mat& U);
// Largest k with log U in the height-k piece; kLevelInfinity for Id.
int filtration_level(const Mat& U);
bool in_U(const Mat& U, int k);

Mat commutator(const Mat& x, const Mat& y);
// Cayley transform (1 - Z/2)^{-1}(1 + Z/2): symplectic when Z is in sp_2n.
Mat cayley(const Mat& Z);

struct MatHash {
  size_t operator()(const std::vector<int64_t>& v) const noexcept;
};

// Closure of a generating set under multiplication, by breadth-first
// search. Returns the element count, or -1 once it exceeds cap.
struct GroupEnumeration {
  std::vector<Mat> elements;
  bool complete = true;
};
GroupEnumeration enumerate_group(const std::vector<Mat>& gens, size_t cap);

// All of U_1(F_q) for GSp_2n, built from root-group coordinates.
std::vector<Mat> enumerate_U1(int n, const GaloisRing* F, size_t cap);

}  // namespace gsp
