#include "pcswave/coset_sum.hpp"

#include "pcswave/error.hpp"

namespace pcs {

namespace {

void check_generator(const Filter1D& H, const CosetSystem& sys) {
  if (H.p() != sys.p()) {
    throw Error(ErrorCode::DimensionMismatch,
                "filter dilation " + std::to_string(H.p()) + " differs from coset system dilation " +
                    std::to_string(sys.p()));
  }
  if (!is_lowpass(H.nd())) {
    throw Error(ErrorCode::NotLowpass, "1-D filter is not lowpass: tap sum " +
                                           H.nd().tap_sum().str() + " != " + std::to_string(H.p()));
  }
}

}  // namespace

FilterND prime_coset_sum(const Filter1D& H, const CosetSystem& sys) {
  check_generator(H, sys);
  const std::int64_t p = sys.p();
  const std::int64_t q = sys.q();
  const Rational inv_pm1(1, p - 1);

  FilterND h(p, sys.dim());
  h.add(MultiIndex(sys.dim()),
        (Rational(p - q) + Rational(q - 1) * H.tap(0)) * inv_pm1);

  const auto taps = H.taps();
  for (std::size_t i = 1; i < sys.gamma().size(); ++i) {
    const MultiIndex& nu = sys.gamma()[i];
    for (const auto& [l, v] : taps) {
      if (l == 0) continue;
      h.add(l * nu, v * inv_pm1);
    }
  }
  return h;
}

FilterND prime_coset_sum(const Filter1D& H, std::size_t n, const CosetSystem& sys) {
  if (n != sys.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "requested dimension " + std::to_string(n) +
                                                  " differs from coset system dimension " +
                                                  std::to_string(sys.dim()));
  }
  return prime_coset_sum(H, sys);
}

Cyclotomic coset_sum_mask_eval(const Filter1D& H, const CosetSystem& sys, const MultiIndex& g) {
  check_generator(H, sys);
  if (g.dim() != sys.dim()) throw Error(ErrorCode::DimensionMismatch, "frequency dimension");
  const std::int64_t p = sys.p();
  const Rational p_nm1(sys.q() / p);

  Cyclotomic acc = Cyclotomic::constant(p, Rational(1) - p_nm1);
  for (std::size_t i = 1; i < sys.gamma().size(); ++i) {
    acc += mask_eval(H.nd(), MultiIndex{g.dot(sys.gamma()[i])});
  }
  acc *= Rational(1) / (Rational(p - 1) * p_nm1);
  return acc;
}

std::vector<RayIndex> rays_through(const Filter1D& H, const CosetSystem& sys, const MultiIndex& k) {
  std::vector<RayIndex> out;
  if (k.is_zero()) return out;
  for (const auto& [l, v] : H.taps()) {
    if (l == 0 || !k.divisible_by(l)) continue;
    MultiIndex nu = k.divided_by(l);
    if (!nu.is_zero() && sys.in_gamma(nu)) out.push_back({l, std::move(nu)});
  }
  return out;
}

}  // namespace pcs
