#pragma once

// Dense matrices over Galois rings, backed by Eigen with GR as the scalar.
// Elimination routines (rank, kernels, solves) require a field, i.e.
// precision 1; inverse() works over any Galois ring.

#include <Eigen/Core>
#include <optional>
#include <string>
#include <vector>

#include "gsp/galois_ring.hpp"

namespace Eigen {
template <>
struct NumTraits<gsp::GR> : GenericNumTraits<gsp::GR> {
  typedef gsp::GR Real;
  typedef gsp::GR NonInteger;
  typedef gsp::GR Nested;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 4,
    MulCost = 8
  };
  static inline Real epsilon() { return gsp::GR(0); }
  static inline Real dummy_precision() { return gsp::GR(0); }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen

namespace gsp {

using Mat = Eigen::Matrix<GR, Eigen::Dynamic, Eigen::Dynamic>;

Mat zeros(const GaloisRing* R, Eigen::Index rows, Eigen::Index cols);
Mat identity(const GaloisRing* R, Eigen::Index n);
// Elementary matrix e_{i,j} (0-based).
Mat unit_matrix(const GaloisRing* R, Eigen::Index n, Eigen::Index i, Eigen::Index j);
Mat diagonal(const std::vector<GR>& d);
Mat from_ints(const GaloisRing* R, Eigen::Index rows, Eigen::Index cols, const std::vector<int64_t>& v);

// Replace bare integer constants by ring elements of R.
Mat normalize(const Mat& A, const GaloisRing* R);
const GaloisRing* ring_of(const Mat& A);

Mat reduce(const Mat& A, int m);
Mat lift(const Mat& A, const GaloisRing* R);
Mat scale(const Mat& A, const GR& s);

bool is_zero(const Mat& A);
bool equal(const Mat& A, const Mat& B);
bool is_diagonal(const Mat& A);
// Smallest valuation over all entries (precision when A = 0).
int valuation(const Mat& A);
// A / p^k for A divisible by p^k, returned at precision m - k.
Mat divide_by_p_power(const Mat& A, int k);

std::vector<int64_t> to_int_vector(const Mat& A);
std::string to_string(const Mat& A);

Mat inverse(const Mat& A);
// A^e for e >= 0, by repeated squaring.
Mat power(Mat A, int64_t e);
GR determinant(const Mat& A);

// Field routines.
struct Echelon {
  Mat R;                    // reduced row echelon form
  std::vector<int> pivots;  // pivot column per nonzero row
};
Echelon rref(const Mat& A);
int rank(const Mat& A);
// Columns spanning the right kernel.
Mat nullspace(const Mat& A);
// Some X with A X = B, if one exists.
std::optional<Mat> solve(const Mat& A, const Mat& B);
// Independent columns spanning the column space, in reduced form.
Mat column_basis(const Mat& A);
Mat hstack(const Mat& A, const Mat& B);
Mat vstack(const Mat& A, const Mat& B);
bool in_span(const Mat& basis, const Mat& v);
bool same_span(const Mat& U, const Mat& V);
bool contains_span(const Mat& U, const Mat& V);  // span V inside span U
Mat intersect(const Mat& U, const Mat& V);
// Coordinates of v in the given independent columns.
Mat coordinates(const Mat& basis, const Mat& v);
Mat kron(const Mat& A, const Mat& B);
// Column-major vectorisation.
Mat vec(const Mat& A);
Mat unvec(const Mat& v, Eigen::Index rows, Eigen::Index cols);

// F_q-matrices rewritten as F_p-matrices on the basis 1, x, ..., x^{M-1}.
Mat restrict_scalars(const Mat& A);

}  // namespace gsp
