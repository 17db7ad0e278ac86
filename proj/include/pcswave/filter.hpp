#pragma once

#include "pcswave/cyclotomic.hpp"
#include "pcswave/multi_index.hpp"
#include "pcswave/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace pcs {

/// Finitely supported filter h : Z^n -> Q for dilation p*I_n.
///
/// Taps are stored unnormalized; the associated mask is
/// tau(w) = (1/q) sum_k h(k) exp(-i k.w) with q = p^n. Zero taps are never
/// stored.
class FilterND {
 public:
  using TapMap = std::map<MultiIndex, Rational>;

  FilterND(std::int64_t p, std::size_t n);
  FilterND(std::int64_t p, std::size_t n, const TapMap& taps);

  std::int64_t p() const { return p_; }
  std::size_t dim() const { return n_; }
  std::int64_t q() const;

  const TapMap& taps() const { return taps_; }
  Rational tap(const MultiIndex& k) const;
  std::size_t support_size() const { return taps_.size(); }
  Rational tap_sum() const;

  /// h(k) += v, dropping the entry if it cancels.
  void add(const MultiIndex& k, const Rational& v);

  FilterND scaled(const Rational& s) const;
  FilterND& operator+=(const FilterND& o);
  FilterND& operator-=(const FilterND& o);
  friend FilterND operator+(FilterND a, const FilterND& b) { return a += b; }
  friend FilterND operator-(FilterND a, const FilterND& b) { return a -= b; }

  friend bool operator==(const FilterND& a, const FilterND& b) {
    return a.p_ == b.p_ && a.n_ == b.n_ && a.taps_ == b.taps_;
  }

 private:
  void check_compatible(const FilterND& o) const;

  std::int64_t p_;
  std::size_t n_;
  TapMap taps_;
};

/// 1-D filter H : Z -> Q. Thin facade over a one-dimensional FilterND.
class Filter1D {
 public:
  explicit Filter1D(std::int64_t p) : f_(p, 1) {}
  Filter1D(std::int64_t p, const std::map<std::int64_t, Rational>& taps);
  explicit Filter1D(FilterND f);

  std::int64_t p() const { return f_.p(); }
  Rational tap(std::int64_t k) const { return f_.tap(MultiIndex{k}); }
  std::map<std::int64_t, Rational> taps() const;
  std::size_t support_size() const { return f_.support_size(); }
  const FilterND& nd() const { return f_; }

  friend bool operator==(const Filter1D& a, const Filter1D& b) { return a.f_ == b.f_; }

 private:
  FilterND f_;
};

/// (1/q) sum_k h(k) zeta_p^{k.g}, the mask at gamma = 2*pi*g/p, exactly.
Cyclotomic mask_eval(const FilterND& f, const MultiIndex& g);

/// sum_k h(k) * prod_j k_j^{mu_j}.
Rational moment_sum(const FilterND& f, const MultiIndex& mu);

/// sum_k h(k) * prod_j k_j^{mu_j} * zeta_p^{k.g}: the mu-th derivative of the
/// mask at 2*pi*g/p up to the nonzero factor (-i)^{|mu|} / q.
Cyclotomic weighted_character_sum(const FilterND& f, const MultiIndex& mu, const MultiIndex& g);

/// Tap sum equals q, i.e. the mask is 1 at the origin.
bool is_lowpass(const FilterND& f);
/// Tap sum equals 0, i.e. the mask vanishes at the origin.
bool is_highpass(const FilterND& f);

/// h(0) = 1 and h vanishes on pZ^n \ {0}.
bool is_interpolatory(const FilterND& f);

/// First violation of the interpolatory condition, phrased for users, e.g.
/// "H(3) = 1/3 != 0". Empty when the filter is interpolatory.
std::optional<std::string> interpolatory_defect(const FilterND& f, std::string_view name);

/// sum_k h(k) g(k + p l) = q delta_{l,0} for every l in Z^n.
/// Throws DimensionMismatch if p or n differ.
bool is_biorthogonal(const FilterND& h, const FilterND& g);

struct MaskDiagnostics {
  bool is_lowpass = false;
  bool is_interpolatory = false;
  int accuracy = 0;
  int vanishing_moments = 0;
  int flatness = 0;
  std::size_t support_size = 0;
  int max_order_searched = 0;
  // An order equal to max_order_searched with its flag set is a lower bound.
  bool accuracy_saturated = false;
  bool vanishing_moments_saturated = false;
  bool flatness_saturated = false;

  bool is_wavelet_mask() const { return vanishing_moments >= 1; }
};

inline constexpr int kDefaultMaxOrder = 20;

/// Orders of zeros at the nonzero lattice frequencies (accuracy), at the
/// origin (vanishing moments), and of 1 - mask at the origin (flatness).
/// Searches derivative orders below max_order (>= 1).
MaskDiagnostics diagnostics(const FilterND& f, int max_order = kDefaultMaxOrder);

/// All multi-indices mu in N^n with |mu| = order.
std::vector<MultiIndex> multi_indices_of_order(std::size_t n, int order);

}  // namespace pcs
