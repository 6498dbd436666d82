#include "gsp/linalg.hpp"

#include <sstream>

namespace gsp {

Mat zeros(const GaloisRing* R, Eigen::Index rows, Eigen::Index cols) {
  return Mat::Constant(rows, cols, R->zero());
}

Mat identity(const GaloisRing* R, Eigen::Index n) {
  Mat I = zeros(R, n, n);
  for (Eigen::Index i = 0; i < n; ++i) I(i, i) = R->one();
  return I;
}

Mat unit_matrix(const GaloisRing* R, Eigen::Index n, Eigen::Index i, Eigen::Index j) {
  Mat E = zeros(R, n, n);
  E(i, j) = R->one();
  return E;
}

Mat diagonal(const std::vector<GR>& d) {
  const GaloisRing* R = d.at(0).ring();
  Mat D = zeros(R, static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
  for (size_t i = 0; i < d.size(); ++i) D(i, i) = d[i].in(R);
  return D;
}

Mat from_ints(const GaloisRing* R, Eigen::Index rows, Eigen::Index cols, const std::vector<int64_t>& v) {
  Mat A(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) A(i, j) = R->from_int(v.at(i * cols + j));
  return A;
}

Mat normalize(const Mat& A, const GaloisRing* R) {
  Mat B(A.rows(), A.cols());
  for (Eigen::Index i = 0; i < A.size(); ++i) B(i) = A(i).in(R);
  return B;
}

const GaloisRing* ring_of(const Mat& A) {
  for (Eigen::Index i = 0; i < A.size(); ++i)
    if (A(i).ring()) return A(i).ring();
  return nullptr;
}

Mat reduce(const Mat& A, int m) {
  Mat B(A.rows(), A.cols());
  for (Eigen::Index i = 0; i < A.size(); ++i) B(i) = A(i).reduce(m);
  return B;
}

Mat lift(const Mat& A, const GaloisRing* R) {
  Mat B(A.rows(), A.cols());
  for (Eigen::Index i = 0; i < A.size(); ++i) B(i) = A(i).lift(R);
  return B;
}

Mat scale(const Mat& A, const GR& s) {
  Mat B = A;
  for (Eigen::Index i = 0; i < B.size(); ++i) B(i) *= s;
  return B;
}

bool is_zero(const Mat& A) {
  for (Eigen::Index i = 0; i < A.size(); ++i)
    if (!A(i).is_zero()) return false;
  return true;
}

bool equal(const Mat& A, const Mat& B) {
  if (A.rows() != B.rows() || A.cols() != B.cols()) return false;
  for (Eigen::Index i = 0; i < A.size(); ++i)
    if (A(i) != B(i)) return false;
  return true;
}

bool is_diagonal(const Mat& A) {
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j)
      if (i != j && !A(i, j).is_zero()) return false;
  return true;
}

int valuation(const Mat& A) {
  const GaloisRing* R = ring_of(A);
  if (!R) return 0;
  int v = R->precision();
  for (Eigen::Index i = 0; i < A.size(); ++i) v = std::min(v, A(i).in(R).valuation());
  return v;
}

Mat divide_by_p_power(const Mat& A, int k) {
  const GaloisRing* R = ring_of(A);
  const int m = R->precision();
  if (k >= m) throw Error(ErrorKind::PrecisionIncrease, "division leaves no precision");
  const GaloisRing* S = R->at_precision(m - k);
  const int64_t pk = ipow(R->p(), k);
  Mat B(A.rows(), A.cols());
  for (Eigen::Index i = 0; i < A.size(); ++i) {
    GR x = A(i).in(R);
    std::vector<int64_t> c(R->degree());
    for (int j = 0; j < R->degree(); ++j) {
      if (x.coeff(j) % pk != 0) throw Error(ErrorKind::NotInvertible, "entry not divisible by p^k");
      c[j] = x.coeff(j) / pk;
    }
    B(i) = S->from_coeffs(c);
  }
  return B;
}

std::vector<int64_t> to_int_vector(const Mat& A) {
  std::vector<int64_t> v;
  v.reserve(static_cast<size_t>(A.size()) * kMaxDegree);
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      const GR& x = A(i, j);
      const int M = x.ring() ? x.ring()->degree() : 1;
      for (int k = 0; k < M; ++k) v.push_back(x.coeff(k));
    }
  return v;
}

std::string to_string(const Mat& A) {
  std::ostringstream os;
  os << '[';
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    os << (i ? ", [" : "[");
    for (Eigen::Index j = 0; j < A.cols(); ++j) os << (j ? ", " : "") << A(i, j).str();
    os << ']';
  }
  os << ']';
  return os.str();
}

Mat inverse(const Mat& A0) {
  const GaloisRing* R = ring_of(A0);
  const Eigen::Index n = A0.rows();
  Mat A = normalize(A0, R);
  Mat I = identity(R, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index piv = -1;
    for (Eigen::Index r = c; r < n; ++r)
      if (A(r, c).is_unit()) {
        piv = r;
        break;
      }
    if (piv < 0) throw Error(ErrorKind::NotInvertible, "matrix is not invertible");
    A.row(c).swap(A.row(piv));
    I.row(c).swap(I.row(piv));
    GR inv = A(c, c).inverse();
    A.row(c) *= inv;
    I.row(c) *= inv;
    for (Eigen::Index r = 0; r < n; ++r) {
      if (r == c || A(r, c).is_zero()) continue;
      GR f = A(r, c);
      A.row(r) -= f * A.row(c);
      I.row(r) -= f * I.row(c);
    }
  }
  return I;
}

Mat power(Mat A, int64_t e) {
  Mat result = identity(ring_of(A), A.rows());
  while (e > 0) {
    if (e & 1) result = result * A;
    e >>= 1;
    if (e) A = A * A;
  }
  return result;
}

GR determinant(const Mat& A0) {
  const GaloisRing* R = ring_of(A0);
  const Eigen::Index n = A0.rows();
  Mat A = normalize(A0, R);
  GR det = R->one();
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index piv = -1;
    for (Eigen::Index r = c; r < n; ++r)
      if (A(r, c).is_unit()) {
        piv = r;
        break;
      }
    if (piv < 0) {
      if (!R->is_field()) throw Error(ErrorKind::Unsupported, "determinant of a non-unit matrix");
      return R->zero();
    }
    if (piv != c) {
      A.row(c).swap(A.row(piv));
      det = -det;
    }
    det *= A(c, c);
    GR inv = A(c, c).inverse();
    for (Eigen::Index r = c + 1; r < n; ++r) {
      if (A(r, c).is_zero()) continue;
      GR f = A(r, c) * inv;
      A.row(r) -= f * A.row(c);
    }
  }
  return det;
}

namespace {

const GaloisRing* field_of(const Mat& A) {
  const GaloisRing* R = ring_of(A);
  if (R && !R->is_field()) throw Error(ErrorKind::Unsupported, "elimination needs a field");
  return R;
}

}  // namespace

Echelon rref(const Mat& A0) {
  Echelon E;
  const GaloisRing* R = field_of(A0);
  if (!R) {
    E.R = A0;
    return E;
  }
  Mat A = normalize(A0, R);
  const Eigen::Index rows = A.rows(), cols = A.cols();
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index piv = -1;
    for (Eigen::Index i = r; i < rows; ++i)
      if (!A(i, c).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    A.row(r).swap(A.row(piv));
    GR inv = A(r, c).inverse();
    for (Eigen::Index j = c; j < cols; ++j) A(r, j) *= inv;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == r || A(i, c).is_zero()) continue;
      GR f = A(i, c);
      for (Eigen::Index j = c; j < cols; ++j)
        if (!A(r, j).is_zero()) A(i, j) -= f * A(r, j);
    }
    E.pivots.push_back(static_cast<int>(c));
    ++r;
  }
  E.R = std::move(A);
  return E;
}

int rank(const Mat& A) {
  if (A.size() == 0) return 0;
  return static_cast<int>(rref(A).pivots.size());
}

Mat nullspace(const Mat& A) {
  const GaloisRing* R = field_of(A);
  const Eigen::Index cols = A.cols();
  if (!R) return Mat(cols, 0);
  Echelon E = rref(A);
  std::vector<bool> is_pivot(cols, false);
  for (int c : E.pivots) is_pivot[c] = true;
  std::vector<Eigen::Index> free;
  for (Eigen::Index c = 0; c < cols; ++c)
    if (!is_pivot[c]) free.push_back(c);
  Mat N = zeros(R, cols, static_cast<Eigen::Index>(free.size()));
  for (size_t k = 0; k < free.size(); ++k) {
    N(free[k], k) = R->one();
    for (size_t r = 0; r < E.pivots.size(); ++r) N(E.pivots[r], k) = -E.R(r, free[k]);
  }
  return N;
}

std::optional<Mat> solve(const Mat& A, const Mat& B) {
  const GaloisRing* R = field_of(A);
  if (!R) R = field_of(B);
  const Eigen::Index n = A.cols();
  if (!R) return Mat(n, B.cols());
  if (A.rows() == 0) return zeros(R, n, B.cols());
  Mat aug = hstack(normalize(A, R), normalize(B, R));
  Echelon E = rref(aug);
  Mat X = zeros(R, n, B.cols());
  for (size_t r = 0; r < E.pivots.size(); ++r) {
    if (E.pivots[r] >= n) return std::nullopt;
    for (Eigen::Index k = 0; k < B.cols(); ++k) X(E.pivots[r], k) = E.R(r, n + k);
  }
  return X;
}

Mat column_basis(const Mat& A) {
  const GaloisRing* R = field_of(A);
  if (!R || A.cols() == 0) return Mat(A.rows(), 0);
  Echelon E = rref(A.transpose());
  const Eigen::Index k = static_cast<Eigen::Index>(E.pivots.size());
  return E.R.topRows(k).transpose();
}

Mat hstack(const Mat& A, const Mat& B) {
  if (A.cols() == 0) return B;
  if (B.cols() == 0) return A;
  Mat C(A.rows(), A.cols() + B.cols());
  C << A, B;
  return C;
}

Mat vstack(const Mat& A, const Mat& B) {
  if (A.rows() == 0) return B;
  if (B.rows() == 0) return A;
  Mat C(A.rows() + B.rows(), A.cols());
  C << A, B;
  return C;
}

bool in_span(const Mat& basis, const Mat& v) {
  if (is_zero(v)) return true;
  if (basis.cols() == 0) return false;
  return rank(hstack(basis, v)) == rank(basis);
}

bool contains_span(const Mat& U, const Mat& V) {
  if (V.cols() == 0 || is_zero(V)) return true;
  if (U.cols() == 0) return false;
  return rank(hstack(U, V)) == rank(U);
}

bool same_span(const Mat& U, const Mat& V) { return contains_span(U, V) && contains_span(V, U); }

Mat intersect(const Mat& U, const Mat& V) {
  if (U.cols() == 0 || V.cols() == 0) return Mat(U.rows(), 0);
  Mat N = nullspace(hstack(U, -V));
  return column_basis(U * N.topRows(U.cols()));
}

Mat coordinates(const Mat& basis, const Mat& v) {
  auto x = solve(basis, v);
  if (!x) throw Error(ErrorKind::SpecMismatch, "vector not in span");
  return *x;
}

Mat kron(const Mat& A, const Mat& B) {
  Mat K(A.rows() * B.rows(), A.cols() * B.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j)
      K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = scale(B, A(i, j));
  return K;
}

Mat vec(const Mat& A) {
  Mat v(A.size(), 1);
  for (Eigen::Index i = 0; i < A.size(); ++i) v(i, 0) = A(i);
  return v;
}

Mat unvec(const Mat& v, Eigen::Index rows, Eigen::Index cols) {
  Mat A(rows, cols);
  for (Eigen::Index i = 0; i < A.size(); ++i) A(i) = v(i, 0);
  return A;
}

Mat restrict_scalars(const Mat& A) {
  const GaloisRing* R = ring_of(A);
  const int M = R->degree();
  if (M == 1) return A;
  const GaloisRing* P = GaloisRing::get(prime_field(R->p()), R->precision());
  Mat B = zeros(P, A.rows() * M, A.cols() * M);
  // Column k of the block for a is the coefficient vector of a * x^k.
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      GR xk = R->one();
      for (int k = 0; k < M; ++k) {
        GR y = A(i, j).in(R) * xk;
        for (int l = 0; l < M; ++l) B(i * M + l, j * M + k) = P->from_int(y.coeff(l));
        xk *= R->gen();
      }
    }
  return B;
}

}  // namespace gsp
