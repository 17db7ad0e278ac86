#include "pcswave/cyclotomic.hpp"

#include "pcswave/error.hpp"
#include "pcswave/multi_index.hpp"

namespace pcs {

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

namespace {

void require_prime(std::int64_t p) {
  if (!is_prime(p)) {
    throw Error(ErrorCode::CompositeDilation,
                "dilation must be prime (got " + std::to_string(p) + ")");
  }
}

}  // namespace

Cyclotomic::Cyclotomic(std::int64_t p) : p_(p) {
  require_prime(p);
  c_.assign(static_cast<std::size_t>(p), Rational{0});
}

Cyclotomic::Cyclotomic(std::int64_t p, std::vector<Rational> coeffs)
    : p_(p), c_(std::move(coeffs)) {
  require_prime(p);
  if (c_.size() != static_cast<std::size_t>(p)) {
    throw Error(ErrorCode::DimensionMismatch, "cyclotomic needs exactly p coordinates");
  }
  canonicalize();
}

Cyclotomic Cyclotomic::constant(std::int64_t p, const Rational& r) {
  Cyclotomic c(p);
  c.c_[0] = r;
  return c;
}

bool Cyclotomic::is_zero() const {
  for (const auto& v : c_) {
    if (!v.is_zero()) return false;
  }
  return true;
}

void Cyclotomic::accumulate(std::int64_t e, const Rational& r) {
  c_[static_cast<std::size_t>(mod_floor(e, p_))] += r;
}

void Cyclotomic::canonicalize() {
  const Rational last = c_.back();
  if (last.is_zero()) return;
  for (auto& v : c_) v -= last;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
  if (o.p_ != p_) throw Error(ErrorCode::DimensionMismatch, "cyclotomic moduli differ");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  canonicalize();
  return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) {
  if (o.p_ != p_) throw Error(ErrorCode::DimensionMismatch, "cyclotomic moduli differ");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  canonicalize();
  return *this;
}

Cyclotomic& Cyclotomic::operator*=(const Rational& r) {
  for (auto& v : c_) v *= r;
  return *this;
}

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.p_ != b.p_) throw Error(ErrorCode::DimensionMismatch, "cyclotomic moduli differ");
  Cyclotomic out(a.p_);
  const auto p = static_cast<std::size_t>(a.p_);
  for (std::size_t i = 0; i < p; ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < p; ++j) {
      if (b.c_[j].is_zero()) continue;
      out.c_[(i + j) % p] += a.c_[i] * b.c_[j];
    }
  }
  out.canonicalize();
  return out;
}

std::string Cyclotomic::str() const {
  std::string s;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += "(" + c_[i].str() + ")";
    if (i > 0) s += "*z^" + std::to_string(i);
  }
  return s.empty() ? "0" : s;
}

Cyclotomic cyc_root(std::int64_t p, std::int64_t e) {
  Cyclotomic c(p);
  c.accumulate(e, Rational{1});
  c.canonicalize();
  return c;
}

Cyclotomic cyc_mul(const Cyclotomic& a, const Cyclotomic& b) { return a * b; }

}  // namespace pcs
