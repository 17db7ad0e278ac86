#include "pcswave/filter.hpp"

#include "pcswave/error.hpp"
#include "pcswave/lattice.hpp"

namespace pcs {

FilterND::FilterND(std::int64_t p, std::size_t n) : p_(p), n_(n) {
  if (p < 2) throw Error(ErrorCode::DomainError, "dilation must be at least 2");
  if (n < 1) throw Error(ErrorCode::DomainError, "dimension must be at least 1");
}

FilterND::FilterND(std::int64_t p, std::size_t n, const TapMap& taps) : FilterND(p, n) {
  for (const auto& [k, v] : taps) add(k, v);
}

std::int64_t FilterND::q() const {
  std::int64_t q = 1;
  for (std::size_t i = 0; i < n_; ++i) q *= p_;
  return q;
}

Rational FilterND::tap(const MultiIndex& k) const {
  const auto it = taps_.find(k);
  return it == taps_.end() ? Rational{0} : it->second;
}

Rational FilterND::tap_sum() const {
  Rational s{0};
  for (const auto& [k, v] : taps_) s += v;
  return s;
}

void FilterND::add(const MultiIndex& k, const Rational& v) {
  if (k.dim() != n_) {
    throw Error(ErrorCode::DimensionMismatch,
                "tap " + k.str() + " does not have dimension " + std::to_string(n_));
  }
  if (v.is_zero()) return;
  auto [it, inserted] = taps_.try_emplace(k, v);
  if (!inserted) {
    it->second += v;
    if (it->second.is_zero()) taps_.erase(it);
  }
}

FilterND FilterND::scaled(const Rational& s) const {
  FilterND out(p_, n_);
  if (s.is_zero()) return out;
  for (const auto& [k, v] : taps_) out.taps_.emplace(k, v * s);
  return out;
}

void FilterND::check_compatible(const FilterND& o) const {
  if (o.p_ != p_ || o.n_ != n_) {
    throw Error(ErrorCode::DimensionMismatch, "filters differ in dilation or dimension");
  }
}

FilterND& FilterND::operator+=(const FilterND& o) {
  check_compatible(o);
  for (const auto& [k, v] : o.taps_) add(k, v);
  return *this;
}

FilterND& FilterND::operator-=(const FilterND& o) {
  check_compatible(o);
  for (const auto& [k, v] : o.taps_) add(k, -v);
  return *this;
}

Filter1D::Filter1D(std::int64_t p, const std::map<std::int64_t, Rational>& taps) : f_(p, 1) {
  for (const auto& [k, v] : taps) f_.add(MultiIndex{k}, v);
}

Filter1D::Filter1D(FilterND f) : f_(std::move(f)) {
  if (f_.dim() != 1) throw Error(ErrorCode::DimensionMismatch, "Filter1D needs a 1-D filter");
}

std::map<std::int64_t, Rational> Filter1D::taps() const {
  std::map<std::int64_t, Rational> out;
  for (const auto& [k, v] : f_.taps()) out.emplace(k[0], v);
  return out;
}

namespace {

Rational monomial(const MultiIndex& k, const MultiIndex& mu) {
  mpz_class prod = 1;
  for (std::size_t j = 0; j < k.dim(); ++j) {
    if (mu[j] == 0) continue;
    mpz_class b = static_cast<long>(k[j]);
    mpz_class e;
    mpz_pow_ui(e.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(mu[j]));
    prod *= e;
  }
  return Rational(mpq_class(prod));
}

}  // namespace

Cyclotomic mask_eval(const FilterND& f, const MultiIndex& g) {
  if (g.dim() != f.dim()) throw Error(ErrorCode::DimensionMismatch, "frequency dimension");
  Cyclotomic out(f.p());
  for (const auto& [k, v] : f.taps()) out.accumulate(k.dot(g), v);
  out.canonicalize();
  out *= Rational(1, f.q());
  return out;
}

Rational moment_sum(const FilterND& f, const MultiIndex& mu) {
  Rational s{0};
  for (const auto& [k, v] : f.taps()) s += v * monomial(k, mu);
  return s;
}

Cyclotomic weighted_character_sum(const FilterND& f, const MultiIndex& mu, const MultiIndex& g) {
  Cyclotomic out(f.p());
  for (const auto& [k, v] : f.taps()) out.accumulate(k.dot(g), v * monomial(k, mu));
  out.canonicalize();
  return out;
}

bool is_lowpass(const FilterND& f) { return f.tap_sum() == Rational(f.q()); }

bool is_highpass(const FilterND& f) { return f.tap_sum().is_zero(); }

bool is_interpolatory(const FilterND& f) { return !interpolatory_defect(f, "h").has_value(); }

std::optional<std::string> interpolatory_defect(const FilterND& f, std::string_view name) {
  const auto label = [&](const MultiIndex& k) {
    std::string s(name);
    if (f.dim() == 1) return s + "(" + std::to_string(k[0]) + ")";
    return s + k.str();
  };
  const MultiIndex origin(f.dim());
  const Rational h0 = f.tap(origin);
  if (h0 != Rational(1)) return label(origin) + " = " + h0.str() + " != 1";
  for (const auto& [k, v] : f.taps()) {
    if (!k.is_zero() && k.divisible_by(f.p())) return label(k) + " = " + v.str() + " != 0";
  }
  return std::nullopt;
}

bool is_biorthogonal(const FilterND& h, const FilterND& g) {
  if (h.p() != g.p() || h.dim() != g.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "biorthogonality needs equal dilation and dimension");
  }
  const auto p = h.p();
  std::map<MultiIndex, Rational> acc;
  for (const auto& [k, a] : h.taps()) {
    for (const auto& [x, b] : g.taps()) {
      const MultiIndex d = x - k;
      if (!d.divisible_by(p)) continue;
      acc[d.divided_by(p)] += a * b;
    }
  }
  const MultiIndex origin(h.dim());
  for (const auto& [l, v] : acc) {
    const Rational expected = l == origin ? Rational(h.q()) : Rational(0);
    if (v != expected) return false;
  }
  return acc.contains(origin);
}

std::vector<MultiIndex> multi_indices_of_order(std::size_t n, int order) {
  std::vector<MultiIndex> out;
  MultiIndex cur(n);
  // Recursive composition of `order` into n non-negative parts.
  auto rec = [&](auto&& self, std::size_t pos, int remaining) -> void {
    if (pos + 1 == n) {
      cur[pos] = remaining;
      out.push_back(cur);
      return;
    }
    for (int v = remaining; v >= 0; --v) {
      cur[pos] = v;
      self(self, pos + 1, remaining - v);
    }
  };
  rec(rec, 0, order);
  return out;
}

MaskDiagnostics diagnostics(const FilterND& f, int max_order) {
  if (max_order < 1) throw Error(ErrorCode::DomainError, "max_order must be at least 1");
  MaskDiagnostics d;
  d.is_lowpass = is_lowpass(f);
  d.is_interpolatory = is_interpolatory(f);
  d.support_size = f.support_size();
  d.max_order_searched = max_order;

  std::vector<MultiIndex> nonzero_freqs = box_points(f.dim(), 0, f.p() - 1);
  nonzero_freqs.erase(nonzero_freqs.begin());

  const Rational one_minus_mask_at_0 = Rational(1) - f.tap_sum() / Rational(f.q());

  d.accuracy = max_order;
  d.accuracy_saturated = true;
  for (int order = 0; order < max_order && d.accuracy_saturated; ++order) {
    for (const auto& mu : multi_indices_of_order(f.dim(), order)) {
      bool nonzero = false;
      for (const auto& g : nonzero_freqs) {
        if (!weighted_character_sum(f, mu, g).is_zero()) {
          nonzero = true;
          break;
        }
      }
      if (nonzero) {
        d.accuracy = order;
        d.accuracy_saturated = false;
        break;
      }
    }
  }

  // Vanishing moments and flatness share the moment sums; they differ only at
  // order 0, where flatness looks at 1 - mask(0).
  d.vanishing_moments = max_order;
  d.vanishing_moments_saturated = true;
  d.flatness = max_order;
  d.flatness_saturated = true;
  if (!one_minus_mask_at_0.is_zero()) {
    d.flatness = 0;
    d.flatness_saturated = false;
  }
  for (int order = 0; order < max_order; ++order) {
    bool nonzero = false;
    for (const auto& mu : multi_indices_of_order(f.dim(), order)) {
      if (!moment_sum(f, mu).is_zero()) {
        nonzero = true;
        break;
      }
    }
    if (nonzero && d.vanishing_moments_saturated) {
      d.vanishing_moments = order;
      d.vanishing_moments_saturated = false;
    }
    if (nonzero && order >= 1 && d.flatness_saturated) {
      d.flatness = order;
      d.flatness_saturated = false;
    }
    if (!d.vanishing_moments_saturated && !d.flatness_saturated) break;
  }
  return d;
}

}  // namespace pcs
