#pragma once

// Exact arithmetic in F_q and in the Galois ring W(F_q)/p^m.
//
// A ring is Z/p^m[x] modulo a monic lift of an irreducible F_p polynomial.
// Rings are interned: GaloisRing::get returns a pointer that lives for the
// whole program, so elements carry a raw pointer and copy cheaply.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gsp/errors.hpp"

namespace gsp {

inline constexpr int kMaxDegree = 8;
inline constexpr int kDefaultPrecisionCeiling = 8;

struct FieldSpec {
  int64_t p = 0;
  int M = 1;
  std::vector<int64_t> modulus;  // coefficients low to high, size M+1, monic

  int64_t q() const;
  bool operator==(const FieldSpec&) const = default;
};

bool is_prime(int64_t n);
int64_t ipow(int64_t base, int exp);

// Validates p (odd prime), degree and irreducibility of the modulus mod p.
FieldSpec make_field(int64_t p, int M, std::vector<int64_t> modulus);
// Prime field F_p with modulus x.
FieldSpec prime_field(int64_t p);
// F_{p^M} with the first irreducible monic modulus in base-p digit order.
FieldSpec default_field(int64_t p, int M);

int precision_ceiling();
void set_precision_ceiling(int m);

class GR;

class GaloisRing {
 public:
  static const GaloisRing* get(const FieldSpec& spec, int m);

  const FieldSpec& spec() const { return spec_; }
  int64_t p() const { return spec_.p; }
  int degree() const { return spec_.M; }
  int precision() const { return m_; }
  int64_t q() const { return spec_.q(); }
  int64_t pm() const { return pm_; }
  bool is_field() const { return m_ == 1; }

  const GaloisRing* at_precision(int m) const { return get(spec_, m); }
  const GaloisRing* residue_field() const { return get(spec_, 1); }

  GR zero() const;
  GR one() const;
  GR from_int(int64_t v) const;
  GR from_coeffs(const std::vector<int64_t>& c) const;
  GR gen() const;  // the class of x

  // Every element, enumerated by base-p^m digits of the coefficients.
  std::vector<GR> elements() const;
  // Element with index i in [0, pm^M) in the same enumeration.
  GR element(int64_t index) const;
  int64_t size() const;

  const std::vector<int64_t>& modulus_lift() const { return mod_; }

 private:
  GaloisRing(FieldSpec spec, int m);
  FieldSpec spec_;
  int m_;
  int64_t pm_;
  std::vector<int64_t> mod_;
};

// Ring element. A null ring pointer marks a bare integer constant, which is
// how Eigen's Scalar(0) and Scalar(1) enter; it promotes on first contact.
class GR {
 public:
  GR() : R_(nullptr), c_{} {}
  GR(int v) : R_(nullptr), c_{} { c_[0] = v; }
  GR(const GaloisRing* R, const std::array<int64_t, kMaxDegree>& c) : R_(R), c_(c) {}

  const GaloisRing* ring() const { return R_; }
  int64_t coeff(int i) const { return c_[i]; }
  const std::array<int64_t, kMaxDegree>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_unit() const;
  // p-adic valuation; the precision m for zero.
  int valuation() const;

  GR inverse() const;
  GR pow(int64_t e) const;
  GR reduce(int m) const;
  GR residue() const { return reduce(1); }
  // Same integer coefficients in a ring of the same spec and higher precision.
  GR lift(const GaloisRing* R) const;
  GR in(const GaloisRing* R) const;  // promote constants, check ring

  // Integer value for prime-field rings, in [0, p^m).
  int64_t to_int() const;
  // Symmetric integer representative in (-p^m/2, p^m/2].
  int64_t to_signed() const;
  std::string str() const;

  GR operator-() const;
  GR& operator+=(const GR& o);
  GR& operator-=(const GR& o);
  GR& operator*=(const GR& o);
  GR& operator/=(const GR& o);
  friend GR operator+(GR a, const GR& b) { return a += b; }
  friend GR operator-(GR a, const GR& b) { return a -= b; }
  friend GR operator*(GR a, const GR& b) { return a *= b; }
  friend GR operator/(GR a, const GR& b) { return a /= b; }
  friend bool operator==(const GR& a, const GR& b);
  friend bool operator!=(const GR& a, const GR& b) { return !(a == b); }

 private:
  const GaloisRing* R_;
  std::array<int64_t, kMaxDegree> c_;
};

std::ostream& operator<<(std::ostream& os, const GR& x);

// Unique x with x^q = x reducing to a mod p.
GR teichmuller(const GR& a, int m);
GR reduce_precision(const GR& x, int m);

// Frobenius x -> x^p on the residue field.
GR frobenius(const GR& a, int times = 1);

// Discrete log of a against a generator g of the residue field's unit group
// restricted to the cyclic subgroup <g>; -1 when a is not in <g>.
int64_t discrete_log(const GR& a, const GR& g);
// A generator of F_q^x.
GR primitive_element(const GaloisRing* F);
// Multiplicative order of a unit of the residue field.
int64_t multiplicative_order(const GR& a);

// Eigen plumbing.
inline const GR& conj(const GR& x) { return x; }
inline const GR& real(const GR& x) { return x; }
inline GR imag(const GR&) { return GR(0); }
inline GR abs2(const GR& x) { return x * x; }

}  // namespace gsp
