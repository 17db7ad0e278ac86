#include "pcswave/filterbank.hpp"

#include "pcswave/coset_sum.hpp"
#include "pcswave/error.hpp"

#include <algorithm>
#include <stdexcept>

namespace pcs {

std::string_view to_string(Provenance p) {
  return p == Provenance::General ? "general" : "prime_coset_sum";
}

Provenance parse_provenance(std::string_view s) {
  if (s == "general") return Provenance::General;
  if (s == "prime_coset_sum") return Provenance::PrimeCosetSum;
  throw Error(ErrorCode::ParseError, "unknown provenance '" + std::string(s) + "'");
}

namespace {

void require_lowpass(const FilterND& f, std::string_view name) {
  if (!is_lowpass(f)) {
    throw Error(ErrorCode::NotLowpass, std::string(name) + " is not lowpass: tap sum " +
                                           f.tap_sum().str() + " != " + std::to_string(f.q()));
  }
}

}  // namespace

WaveletFilterBank build_general(const FilterND& g, const FilterND& h, const CosetSystem& sys) {
  if (g.p() != sys.p() || h.p() != sys.p() || g.dim() != sys.dim() || h.dim() != sys.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "filters do not match the coset system");
  }
  require_lowpass(g, "g");
  require_lowpass(h, "h");
  if (auto defect = interpolatory_defect(h, "h")) {
    throw Error(ErrorCode::NotInterpolatory, "h is not interpolatory: " + *defect);
  }

  const std::int64_t p = sys.p();
  const Rational q(sys.q());
  const auto G = polyphase_decompose(g, sys, Side::Analysis);
  const auto H = polyphase_decompose(h, sys, Side::Synthesis);
  const LaurentPoly B = biorthogonality_defect(g, h, sys);
  const LaurentPoly h_mask = mask_poly(h);

  WaveletFilterBank bank{sys, std::nullopt, std::nullopt, g, {}, h, {}, Provenance::General};

  // analysis polyphase at coset 0 is q*B: c(-p k) = q * (q * b_k)
  for (const auto& [k, b] : B.terms()) bank.tau.add(-(p * k), b * q * q);

  const std::size_t count = sys.gamma().size() - 1;
  bank.t.reserve(count);
  bank.t_d.reserve(count);
  for (std::size_t i = 1; i <= count; ++i) {
    const MultiIndex& nu = sys.gamma()[i];

    FilterND t(p, sys.dim());
    t.add(nu, q);
    for (const auto& [k, c] : H[i].terms()) t.add(-(p * k), -(q * q * c));
    bank.t.push_back(std::move(t));

    LaurentPoly md = LaurentPoly::monomial(nu, Rational(1) / q);
    md -= G[i].dilated(p) * h_mask;
    bank.t_d.push_back(filter_from_mask(md, p));
  }
  return bank;
}

FilterND closed_form_t(const Filter1D& H, const CosetSystem& sys, const MultiIndex& nu) {
  const Rational q(sys.q());
  LaurentPoly m = LaurentPoly::monomial(nu, Rational(1));
  m -= coset_sum_polyphase(H, sys, nu).conj().dilated(sys.p()) * q;
  return filter_from_mask(m, sys.p());
}

FilterND closed_form_t_d(const Filter1D& G, const FilterND& tau_d, const CosetSystem& sys,
                         const MultiIndex& nu) {
  const Rational q(sys.q());
  LaurentPoly m = LaurentPoly::monomial(nu, Rational(1) / q);
  m -= coset_sum_polyphase(G, sys, nu).conj().dilated(sys.p()) * mask_poly(tau_d);
  return filter_from_mask(m, sys.p());
}

WaveletFilterBank build_pcs_bank(const Filter1D& G, const Filter1D& H, std::size_t n,
                                 Convention convention) {
  if (G.p() != H.p()) {
    throw Error(ErrorCode::DimensionMismatch, "G and H have different dilations");
  }
  const CosetSystem sys(G.p(), n, convention);
  if (auto defect = interpolatory_defect(H.nd(), "H")) {
    throw Error(ErrorCode::NotInterpolatory, "H is not interpolatory: " + *defect);
  }
  const FilterND g = prime_coset_sum(G, sys);
  const FilterND h = prime_coset_sum(H, sys);

  WaveletFilterBank bank = build_general(g, h, sys);
  bank.G_1d = G;
  bank.H_1d = H;
  bank.provenance = Provenance::PrimeCosetSum;

  for (std::size_t i = 0; i < bank.wavelet_count(); ++i) {
    const MultiIndex& nu = bank.nu(i);
    if (!(closed_form_t(H, sys, nu) == bank.t[i])) {
      throw std::logic_error("closed-form t" + nu.str() + " disagrees with the general completion");
    }
    if (!(closed_form_t_d(G, bank.tau_d, sys, nu) == bank.t_d[i])) {
      throw std::logic_error("closed-form t_d" + nu.str() +
                             " disagrees with the general completion");
    }
  }
  return bank;
}

BiorthogonalityReport verify_combined_biorthogonality(const WaveletFilterBank& bank) {
  std::vector<const FilterND*> analysis{&bank.tau};
  std::vector<const FilterND*> synthesis{&bank.tau_d};
  for (const auto& f : bank.t) analysis.push_back(&f);
  for (const auto& f : bank.t_d) synthesis.push_back(&f);

  BiorthogonalityReport r;
  if (analysis.size() != bank.sys.gamma().size() || synthesis.size() != analysis.size()) {
    r.passed = false;
    return r;
  }
  const PolyphaseMatrix A = analysis_matrix(analysis, bank.sys);
  const PolyphaseMatrix S = synthesis_matrix(synthesis, bank.sys);
  r.residuals = product_residuals(S, A, bank.sys.q());
  r.passed = r.residuals.empty();
  return r;
}

BankReport bank_report(const WaveletFilterBank& bank, int max_order) {
  BankReport r;
  if (bank.G_1d && bank.H_1d) {
    const auto dh = diagnostics(bank.H_1d->nd(), max_order);
    const auto dg = diagnostics(bank.G_1d->nd(), max_order);
    r.acc_H = dh.accuracy;
    r.acc_G = dg.accuracy;
    r.flat_G = dg.flatness;
    r.guarantee_floor = std::min({dh.accuracy, dg.accuracy, dg.flatness});
  }
  auto add = [&](std::string name, const FilterND& f, bool lowpass) {
    FilterReport fr{std::move(name), lowpass, diagnostics(f, max_order), true};
    if (r.guarantee_floor) {
      const int order = lowpass ? fr.diag.accuracy : fr.diag.vanishing_moments;
      fr.meets_floor = order >= *r.guarantee_floor;
    }
    r.all_meet_floor = r.all_meet_floor && fr.meets_floor;
    r.filters.push_back(std::move(fr));
  };
  add("tau", bank.tau, true);
  add("tau_d", bank.tau_d, true);
  for (std::size_t i = 0; i < bank.t.size(); ++i) add("t" + bank.nu(i).str(), bank.t[i], false);
  for (std::size_t i = 0; i < bank.t_d.size(); ++i) {
    add("t_d" + bank.nu(i).str(), bank.t_d[i], false);
  }
  return r;
}

}  // namespace pcs
