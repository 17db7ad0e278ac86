#include "pcswave/lattice.hpp"

#include "pcswave/cyclotomic.hpp"
#include "pcswave/error.hpp"

namespace pcs {

std::string_view to_string(Convention c) {
  return c == Convention::Standard ? "standard" : "centered";
}

Convention parse_convention(std::string_view s) {
  if (s == "standard") return Convention::Standard;
  if (s == "centered") return Convention::Centered;
  throw Error(ErrorCode::ParseError,
              "unknown convention \"" + std::string(s) + "\" (expected standard|centered)");
}

std::vector<MultiIndex> box_points(std::size_t n, std::int64_t lo, std::int64_t hi) {
  std::vector<MultiIndex> out;
  MultiIndex cur(n);
  for (std::size_t i = 0; i < n; ++i) cur[i] = lo;
  if (hi < lo) return out;
  while (true) {
    out.push_back(cur);
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (cur[i] < hi) {
        ++cur[i];
        break;
      }
      cur[i] = lo;
      if (i == 0) return out;
    }
    if (n == 0) return out;
  }
}

CosetSystem::CosetSystem(std::int64_t p, std::size_t n, Convention convention)
    : p_(p), n_(n), convention_(convention) {
  if (!is_prime(p)) {
    throw Error(ErrorCode::CompositeDilation,
                "dilation must be prime (got " + std::to_string(p) + ")");
  }
  if (n < 1) throw Error(ErrorCode::DomainError, "dimension must be at least 1");
  if (convention == Convention::Centered && p == 2) {
    throw Error(ErrorCode::InvalidConvention, "centered convention requires an odd prime");
  }
  const std::int64_t lo = convention == Convention::Centered ? -(p - 1) / 2 : 0;
  const std::int64_t hi = lo + p - 1;

  // Bucket the candidate box by residue; each residue class must be hit once.
  std::size_t q = 1;
  for (std::size_t i = 0; i < n; ++i) q *= static_cast<std::size_t>(p);
  gamma_.assign(q, MultiIndex{});
  std::vector<bool> seen(q, false);
  for (auto& x : box_points(n, lo, hi)) {
    const std::size_t idx = index_of(x);
    if (seen[idx]) throw Error(ErrorCode::DomainError, "duplicate coset representative");
    seen[idx] = true;
    gamma_[idx] = std::move(x);
  }
  for (bool s : seen) {
    if (!s) throw Error(ErrorCode::DomainError, "incomplete coset representative set");
  }
  if (!gamma_[0].is_zero()) throw Error(ErrorCode::DomainError, "Gamma must start at 0");

  fp_.assign(static_cast<std::size_t>(p), 0);
  for (std::int64_t l = lo; l <= hi; ++l) fp_[static_cast<std::size_t>(mod_floor(l, p))] = l;
}

std::size_t CosetSystem::index_of(const MultiIndex& x) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < n_; ++i) {
    idx = idx * static_cast<std::size_t>(p_) + static_cast<std::size_t>(mod_floor(x[i], p_));
  }
  return idx;
}

std::int64_t CosetSystem::fp_representative(std::int64_t m) const {
  return fp_[static_cast<std::size_t>(mod_floor(m, p_))];
}

bool CosetSystem::in_gamma(const MultiIndex& x) const {
  return x.dim() == n_ && gamma_[index_of(x)] == x;
}

bool CosetSystem::in_fp(std::int64_t l) const { return fp_representative(l) == l; }

MultiIndex CosetSystem::eta(std::int64_t l, const MultiIndex& nu) const {
  if (!in_fp(l) || mod_floor(l, p_) == 0) {
    throw Error(ErrorCode::DomainError, "eta: l = " + std::to_string(l) + " is not in F_p'");
  }
  if (!in_gamma(nu) || nu.is_zero()) {
    throw Error(ErrorCode::DomainError, "eta: nu = " + nu.str() + " is not in Gamma'");
  }
  return representative(mult_inverse(l, p_) * nu);
}

MultiIndex CosetSystem::eta_of_residue(std::int64_t m, const MultiIndex& nu) const {
  return eta(fp_representative(m), nu);
}

std::int64_t mult_inverse(std::int64_t l, std::int64_t p) {
  const std::int64_t r = mod_floor(l, p);
  if (r == 0) {
    throw Error(ErrorCode::ZeroResidue,
                std::to_string(l) + " has no inverse mod " + std::to_string(p));
  }
  for (std::int64_t x = 1; x < p; ++x) {
    if ((r * x) % p == 1) return x;
  }
  throw Error(ErrorCode::ZeroResidue,
              std::to_string(l) + " has no inverse mod " + std::to_string(p));
}

std::int64_t coset_zero_count(const CosetSystem& sys, const MultiIndex& g) {
  if (g.dim() != sys.dim()) throw Error(ErrorCode::DimensionMismatch, "frequency dimension");
  if (g.divisible_by(sys.p())) {
    throw Error(ErrorCode::DomainError, "coset_zero_count needs a nonzero frequency");
  }
  std::int64_t count = 0;
  for (const auto& nu : sys.gamma()) {
    if (mod_floor(g.dot(nu), sys.p()) == 0) ++count;
  }
  return count;
}

std::int64_t coset_zero_count_any_modulus(std::int64_t m, const MultiIndex& g) {
  if (m < 2) throw Error(ErrorCode::DomainError, "modulus must be at least 2");
  if (g.divisible_by(m)) {
    throw Error(ErrorCode::DomainError, "coset_zero_count needs a nonzero frequency");
  }
  std::int64_t count = 0;
  for (const auto& nu : box_points(g.dim(), 0, m - 1)) {
    if (mod_floor(g.dot(nu), m) == 0) ++count;
  }
  return count;
}

}  // namespace pcs
