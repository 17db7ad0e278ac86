#include "pcswave/laurent.hpp"

#include "pcswave/error.hpp"

namespace pcs {

LaurentPoly LaurentPoly::constant(std::size_t n, const Rational& c) {
  LaurentPoly out(n);
  out.add_term(MultiIndex(n), c);
  return out;
}

LaurentPoly LaurentPoly::monomial(const MultiIndex& exponent, const Rational& c) {
  LaurentPoly out(exponent.dim());
  out.add_term(exponent, c);
  return out;
}

Rational LaurentPoly::coeff(const MultiIndex& k) const {
  const auto it = terms_.find(k);
  return it == terms_.end() ? Rational{0} : it->second;
}

void LaurentPoly::add_term(const MultiIndex& k, const Rational& c) {
  if (k.dim() != n_) throw Error(ErrorCode::DimensionMismatch, "Laurent exponent dimension");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  if (o.n_ != n_) throw Error(ErrorCode::DimensionMismatch, "Laurent variable count");
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  if (o.n_ != n_) throw Error(ErrorCode::DimensionMismatch, "Laurent variable count");
  for (const auto& [k, c] : o.terms_) add_term(k, -c);
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const Rational& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, c] : terms_) c *= s;
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.n_ != b.n_) throw Error(ErrorCode::DimensionMismatch, "Laurent variable count");
  LaurentPoly out(a.n_);
  for (const auto& [ka, ca] : a.terms_) {
    for (const auto& [kb, cb] : b.terms_) out.add_term(ka + kb, ca * cb);
  }
  return out;
}

LaurentPoly LaurentPoly::conj() const {
  LaurentPoly out(n_);
  for (const auto& [k, c] : terms_) out.terms_.emplace(-k, c);
  return out;
}

LaurentPoly LaurentPoly::shifted(const MultiIndex& e) const {
  LaurentPoly out(n_);
  for (const auto& [k, c] : terms_) out.terms_.emplace(k + e, c);
  return out;
}

LaurentPoly LaurentPoly::dilated(std::int64_t s) const {
  LaurentPoly out(n_);
  for (const auto& [k, c] : terms_) out.add_term(s * k, c);
  return out;
}

LaurentPoly LaurentPoly::embedded_along(const MultiIndex& direction) const {
  if (n_ != 1) throw Error(ErrorCode::DimensionMismatch, "embedding needs a univariate poly");
  LaurentPoly out(direction.dim());
  for (const auto& [k, c] : terms_) out.add_term(k[0] * direction, c);
  return out;
}

std::string LaurentPoly::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [k, c] : terms_) {
    if (!s.empty()) s += " + ";
    s += "(" + c.str() + ")";
    if (!k.is_zero()) s += "*z^" + k.str();
  }
  return s;
}

}  // namespace pcs
