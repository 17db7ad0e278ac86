#pragma once

#include "pcswave/multi_index.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace pcs {

enum class Convention { Standard, Centered };

std::string_view to_string(Convention c);
/// "standard" | "centered"; throws ParseError otherwise.
Convention parse_convention(std::string_view s);

/// Coset representatives for Z^n / pZ^n (Gamma) and Z / pZ (F_p).
///
/// Standard: Gamma = {0..p-1}^n, F_p = {0..p-1}.
/// Centered (odd p): Gamma = {-(p-1)/2..(p-1)/2}^n, F_p likewise.
///
/// Gamma is ordered lexicographically by the standard residue vector, so
/// gamma()[0] is the origin and index_of() is a base-p positional read of
/// the residues. The same order is used for polyphase rows/columns and for
/// subband numbering in the transform.
class CosetSystem {
 public:
  /// Throws CompositeDilation (p not prime), InvalidConvention (centered with
  /// even p) or DomainError (n < 1).
  CosetSystem(std::int64_t p, std::size_t n, Convention convention);

  std::int64_t p() const { return p_; }
  std::size_t dim() const { return n_; }
  Convention convention() const { return convention_; }
  /// q = p^n.
  std::int64_t q() const { return static_cast<std::int64_t>(gamma_.size()); }

  const std::vector<MultiIndex>& gamma() const { return gamma_; }
  const std::vector<std::int64_t>& fp() const { return fp_; }

  /// Position in gamma() of the representative congruent to x (any x in Z^n).
  std::size_t index_of(const MultiIndex& x) const;
  const MultiIndex& representative(const MultiIndex& x) const { return gamma_[index_of(x)]; }
  /// Element of F_p congruent to m.
  std::int64_t fp_representative(std::int64_t m) const;

  bool in_gamma(const MultiIndex& x) const;
  bool in_fp(std::int64_t l) const;

  /// eta(l, nu): the element of Gamma' congruent to rho(l) * nu mod p.
  /// Requires l in F_p' and nu in Gamma'; throws DomainError otherwise.
  MultiIndex eta(std::int64_t l, const MultiIndex& nu) const;

  /// eta for any m with m != 0 mod p (uses the F_p' representative of m).
  MultiIndex eta_of_residue(std::int64_t m, const MultiIndex& nu) const;

  friend bool operator==(const CosetSystem& a, const CosetSystem& b) {
    return a.p_ == b.p_ && a.n_ == b.n_ && a.convention_ == b.convention_;
  }

 private:
  std::int64_t p_;
  std::size_t n_;
  Convention convention_;
  std::vector<MultiIndex> gamma_;
  std::vector<std::int64_t> fp_;  // indexed by residue
};

/// rho(l) in {1..p-1} with l * rho(l) = 1 mod p. Throws ZeroResidue.
std::int64_t mult_inverse(std::int64_t l, std::int64_t p);

/// #{nu in Gamma : g . nu = 0 mod p} by enumeration. Throws DomainError
/// when g = 0 mod p.
std::int64_t coset_zero_count(const CosetSystem& sys, const MultiIndex& g);

/// Same count over {0..m-1}^n for an arbitrary modulus m >= 2, prime or not.
/// Exists so that the failure of the count for composite moduli can be shown.
std::int64_t coset_zero_count_any_modulus(std::int64_t m, const MultiIndex& g);

/// All points of {lo..hi}^n in lexicographic order.
std::vector<MultiIndex> box_points(std::size_t n, std::int64_t lo, std::int64_t hi);

}  // namespace pcs
