#include "pcswave/rational.hpp"

#include "pcswave/error.hpp"

#include <cctype>

namespace pcs {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::CompositeDilation: return "CompositeDilation";
    case ErrorCode::InvalidConvention: return "InvalidConvention";
    case ErrorCode::ZeroResidue: return "ZeroResidue";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotLowpass: return "NotLowpass";
    case ErrorCode::NotInterpolatory: return "NotInterpolatory";
    case ErrorCode::ShapeNotDivisible: return "ShapeNotDivisible";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::WrongProvenance: return "WrongProvenance";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error(ErrorCode::DomainError, "rational with zero denominator");
  q_ = mpq_class(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
  q_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error(ErrorCode::DomainError, "division by zero");
  q_ /= o.q_;
  return *this;
}

namespace {

bool valid_integer(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

mpz_class parse_integer(std::string_view s) {
  if (s[0] == '+') s.remove_prefix(1);
  return mpz_class(std::string(s), 10);
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  const auto num = text.substr(0, slash);
  if (!valid_integer(num)) {
    throw Error(ErrorCode::ParseError, "malformed rational \"" + std::string(text) + "\"");
  }
  mpz_class den = 1;
  if (slash != std::string_view::npos) {
    const auto d = text.substr(slash + 1);
    if (!valid_integer(d) || d[0] == '-') {
      throw Error(ErrorCode::ParseError, "malformed rational \"" + std::string(text) + "\"");
    }
    den = parse_integer(d);
    if (den == 0) {
      throw Error(ErrorCode::ParseError, "zero denominator in \"" + std::string(text) + "\"");
    }
  }
  return Rational(mpq_class(parse_integer(num), den));
}

std::string Rational::str() const {
  if (q_.get_den() == 1) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Rational pow(const Rational& base, unsigned exponent) {
  Rational result{1};
  Rational b = base;
  while (exponent != 0) {
    if (exponent & 1U) result *= b;
    b *= b;
    exponent >>= 1U;
  }
  return result;
}

}  // namespace pcs
