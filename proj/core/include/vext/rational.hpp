#pragma once

#include <complex>
#include <gmpxx.h>
#include <string>

namespace vext {

/// Exact rational scalar (arbitrary precision).
using Rat = mpq_class;

/// Complex number with exact rational real and imaginary parts.
struct CRat {
  Rat re, im;

  CRat() : re(0), im(0) {}
  CRat(const Rat& r) : re(r), im(0) {}
  CRat(long r) : re(r), im(0) {}
  CRat(const Rat& r, const Rat& i) : re(r), im(i) {}

  CRat operator+(const CRat& o) const { return {re + o.re, im + o.im}; }
  CRat operator-(const CRat& o) const { return {re - o.re, im - o.im}; }
  CRat operator-() const { return {-re, -im}; }
  CRat operator*(const CRat& o) const {
    // fast path: purely real factors dominate the projector workload
    if (sgn(im) == 0 && sgn(o.im) == 0) return {re * o.re, Rat(0)};
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  CRat operator/(const CRat& o) const {
    Rat n = o.re * o.re + o.im * o.im;
    return {(re * o.re + im * o.im) / n, (im * o.re - re * o.im) / n};
  }
  CRat& operator+=(const CRat& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  CRat& operator-=(const CRat& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  CRat& operator*=(const CRat& o) { return *this = *this * o; }
  bool operator==(const CRat& o) const { return re == o.re && im == o.im; }
  bool operator!=(const CRat& o) const { return !(*this == o); }
};

using Cplx = std::complex<double>;

// Scalar trait functions shared by the exact and float matrix backends.

inline Rat conj_s(const Rat& x) { return x; }
inline CRat conj_s(const CRat& x) { return {x.re, -x.im}; }
inline Cplx conj_s(const Cplx& x) { return std::conj(x); }

/// num/den in canonical form (mpq_class's two-argument constructor does not
/// canonicalize on its own).
inline Rat frac(long num, long den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline bool is_zero(const Rat& x) { return sgn(x) == 0; }
inline bool is_zero(const CRat& x) { return sgn(x.re) == 0 && sgn(x.im) == 0; }
inline bool is_zero(const Cplx& x) { return x == Cplx(0.0, 0.0); }

inline Cplx to_cplx(const Rat& x) { return {x.get_d(), 0.0}; }
inline Cplx to_cplx(const CRat& x) { return {x.re.get_d(), x.im.get_d()}; }
inline Cplx to_cplx(const Cplx& x) { return x; }

/// Parses "p/q" or "p"; throws std::invalid_argument on malformed input.
Rat rat_from_string(const std::string& s);
std::string rat_to_string(const Rat& x);

}  // namespace vext
