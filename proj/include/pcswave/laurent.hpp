#pragma once

#include "pcswave/multi_index.hpp"
#include "pcswave/rational.hpp"

#include <map>
#include <string>

namespace pcs {

/// Laurent polynomial sum_k c_k z^k in n variables with rational
/// coefficients, where z^k stands for exp(-i k.w). Zero coefficients are
/// never stored.
class LaurentPoly {
 public:
  using TermMap = std::map<MultiIndex, Rational>;

  explicit LaurentPoly(std::size_t n) : n_(n) {}
  static LaurentPoly constant(std::size_t n, const Rational& c);
  static LaurentPoly monomial(const MultiIndex& exponent, const Rational& c);

  std::size_t vars() const { return n_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coeff(const MultiIndex& k) const;

  void add_term(const MultiIndex& k, const Rational& c);

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const Rational& s);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(LaurentPoly a, const Rational& s) { return a *= s; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);

  /// Complex conjugate for real coefficients: z^k -> z^{-k}.
  LaurentPoly conj() const;
  /// Multiplication by z^e.
  LaurentPoly shifted(const MultiIndex& e) const;
  /// Substitution w -> s*w, i.e. z^k -> z^{s k}.
  LaurentPoly dilated(std::int64_t s) const;
  /// Univariate poly evaluated at xi = w.direction: z^j -> z^{j * direction}.
  LaurentPoly embedded_along(const MultiIndex& direction) const;

  std::string str() const;

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }

 private:
  std::size_t n_;
  TermMap terms_;
};

}  // namespace pcs
