#pragma once

#include "pcswave/cyclotomic.hpp"
#include "pcswave/filter.hpp"
#include "pcswave/lattice.hpp"

#include <vector>

namespace pcs {

/// A point k = l * nu on the ray through nu in Gamma'.
struct RayIndex {
  std::int64_t l;
  MultiIndex nu;
};

/// Prime coset sum of a 1-D lowpass filter H into n = sys.dim() dimensions:
///
///   h(0) = (p - q + (q-1) H(0)) / (p-1)
///   h(k) = (1/(p-1)) * sum of H(l) over all (l, nu) in Z\0 x Gamma' with k = l*nu
///
/// Throws NotLowpass if sum H != p and DimensionMismatch if H.p() != sys.p().
FilterND prime_coset_sum(const Filter1D& H, const CosetSystem& sys);
/// As above, additionally checking n == sys.dim().
FilterND prime_coset_sum(const Filter1D& H, std::size_t n, const CosetSystem& sys);

/// The prime coset sum mask at 2*pi*g/p evaluated straight from the 1-D mask:
/// (1 - p^{n-1} + sum_{nu in Gamma'} R(2*pi*(g.nu)/p)) / ((p-1) p^{n-1}).
Cyclotomic coset_sum_mask_eval(const Filter1D& H, const CosetSystem& sys, const MultiIndex& g);

/// Every (l, nu) with l in supp(H) \ 0, nu in Gamma' and l*nu = k.
std::vector<RayIndex> rays_through(const Filter1D& H, const CosetSystem& sys, const MultiIndex& k);

}  // namespace pcs
