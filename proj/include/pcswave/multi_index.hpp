#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

namespace pcs {

/// Integer point of Z^n. Used for filter offsets, coset representatives,
/// lattice frequencies g (with gamma = 2*pi*g/p) and Laurent exponents.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::size_t n) : c_(n, 0) {}
  MultiIndex(std::initializer_list<std::int64_t> coords) : c_(coords) {}
  explicit MultiIndex(std::vector<std::int64_t> coords) : c_(std::move(coords)) {}

  std::size_t dim() const { return c_.size(); }
  std::int64_t operator[](std::size_t i) const { return c_[i]; }
  std::int64_t& operator[](std::size_t i) { return c_[i]; }
  const std::vector<std::int64_t>& coords() const { return c_; }

  bool is_zero() const {
    for (auto v : c_) {
      if (v != 0) return false;
    }
    return true;
  }

  MultiIndex& operator+=(const MultiIndex& o) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  MultiIndex& operator-=(const MultiIndex& o) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  friend MultiIndex operator+(MultiIndex a, const MultiIndex& b) { return a += b; }
  friend MultiIndex operator-(MultiIndex a, const MultiIndex& b) { return a -= b; }
  friend MultiIndex operator-(MultiIndex a) {
    for (auto& v : a.c_) v = -v;
    return a;
  }
  friend MultiIndex operator*(std::int64_t s, MultiIndex a) {
    for (auto& v : a.c_) v *= s;
    return a;
  }

  /// Exact division of every coordinate; caller guarantees divisibility.
  MultiIndex divided_by(std::int64_t d) const {
    MultiIndex r = *this;
    for (auto& v : r.c_) v /= d;
    return r;
  }

  bool divisible_by(std::int64_t d) const {
    for (auto v : c_) {
      if (v % d != 0) return false;
    }
    return true;
  }

  std::int64_t dot(const MultiIndex& o) const {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < c_.size(); ++i) s += c_[i] * o.c_[i];
    return s;
  }

  std::int64_t sum() const {
    std::int64_t s = 0;
    for (auto v : c_) s += v;
    return s;
  }

  /// "(a,b,c)"
  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(c_[i]);
    }
    return s + ")";
  }

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;
  friend std::ostream& operator<<(std::ostream& os, const MultiIndex& m) { return os << m.str(); }

 private:
  std::vector<std::int64_t> c_;
};

/// Non-negative residue of v modulo m (m > 0).
inline std::int64_t mod_floor(std::int64_t v, std::int64_t m) {
  const std::int64_t r = v % m;
  return r < 0 ? r + m : r;
}

}  // namespace pcs
