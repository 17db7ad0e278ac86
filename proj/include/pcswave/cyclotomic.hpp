#pragma once

#include "pcswave/rational.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace pcs {

/// Trial-division primality test; dilations are expected to be small.
bool is_prime(std::int64_t p);

/// Element of Q(zeta_p), zeta_p = exp(-2*pi*i/p), p prime.
///
/// Stored as p rational coordinates on 1, zeta, ..., zeta^{p-1}. The
/// representation is made unique by the relation 1 + zeta + ... + zeta^{p-1} = 0:
/// the canonical form has a zero last coordinate. Every operation returns a
/// canonical value, so equality is coordinate-wise.
class Cyclotomic {
 public:
  /// Zero of Q(zeta_p).
  explicit Cyclotomic(std::int64_t p);
  Cyclotomic(std::int64_t p, std::vector<Rational> coeffs);

  /// Rational r embedded in Q(zeta_p).
  static Cyclotomic constant(std::int64_t p, const Rational& r);

  std::int64_t modulus() const { return p_; }
  const std::vector<Rational>& coeffs() const { return c_; }

  bool is_zero() const;

  /// Adds r * zeta^e in place, without renormalizing until canonicalize().
  void accumulate(std::int64_t e, const Rational& r);
  void canonicalize();

  Cyclotomic& operator+=(const Cyclotomic& o);
  Cyclotomic& operator-=(const Cyclotomic& o);
  Cyclotomic& operator*=(const Rational& r);

  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Rational& r) { return a *= r; }
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    return a.p_ == b.p_ && a.c_ == b.c_;
  }

  std::string str() const;

 private:
  std::int64_t p_;
  std::vector<Rational> c_;
};

/// zeta_p^{e mod p}. Throws CompositeDilation when p is not prime.
Cyclotomic cyc_root(std::int64_t p, std::int64_t e);
Cyclotomic cyc_mul(const Cyclotomic& a, const Cyclotomic& b);
inline bool cyc_is_zero(const Cyclotomic& a) { return a.is_zero(); }

}  // namespace pcs
