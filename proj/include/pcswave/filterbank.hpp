#pragma once

#include "pcswave/filter.hpp"
#include "pcswave/lattice.hpp"
#include "pcswave/polyphase.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pcs {

enum class Provenance { General, PrimeCosetSum };

std::string_view to_string(Provenance p);
Provenance parse_provenance(std::string_view s);

/// Analysis bank (tau, t_nu) and synthesis bank (tau_d, t_d_nu) with dilation p*I_n.
/// t and t_d are indexed like sys.gamma() with the origin dropped: t[i] belongs
/// to sys.gamma()[i + 1].
struct WaveletFilterBank {
  CosetSystem sys;
  std::optional<Filter1D> G_1d;
  std::optional<Filter1D> H_1d;
  FilterND tau;
  std::vector<FilterND> t;
  FilterND tau_d;
  std::vector<FilterND> t_d;
  Provenance provenance = Provenance::General;

  const MultiIndex& nu(std::size_t i) const { return sys.gamma()[i + 1]; }
  std::size_t wavelet_count() const { return t.size(); }
};

/// Completion of an analysis lowpass g and an interpolatory synthesis lowpass h:
///   tau = g + (correction supported on pZ^n, mask q*B(p w))
///   tau_d = h
///   t_nu(w) = z^nu - q conj(H_nu)(p w)
///   t_d_nu(w) = z^nu / q - G_nu(p w) h^(w)
/// Throws NotLowpass, NotInterpolatory.
WaveletFilterBank build_general(const FilterND& g, const FilterND& h, const CosetSystem& sys);

/// t_nu assembled from the 1-D polyphase components of H (coset_sum_polyphase),
/// without going through the n-D filter h.
FilterND closed_form_t(const Filter1D& H, const CosetSystem& sys, const MultiIndex& nu);
/// t_d_nu assembled from the 1-D polyphase components of G and tau_d.
FilterND closed_form_t_d(const Filter1D& G, const FilterND& tau_d, const CosetSystem& sys,
                         const MultiIndex& nu);

/// Bank of prime coset sums of G and H. The wavelet filters are built both
/// through build_general and through the closed forms; a disagreement is a
/// logic_error.
WaveletFilterBank build_pcs_bank(const Filter1D& G, const Filter1D& H, std::size_t n,
                                 Convention convention);

struct BiorthogonalityReport {
  bool passed = false;
  std::vector<Residual> residuals;  // rows/cols in sys.gamma() order
};

/// Checks S*A = I/q with A built from (tau, t) and S from (tau_d, t_d).
BiorthogonalityReport verify_combined_biorthogonality(const WaveletFilterBank& bank);

struct FilterReport {
  std::string name;  // "tau", "tau_d", "t(1,0)", ...
  bool lowpass_slot = false;
  MaskDiagnostics diag;
  bool meets_floor = true;
};

struct BankReport {
  std::vector<FilterReport> filters;
  // min{accuracy of H, accuracy of G, flatness of G}; absent for general banks.
  std::optional<int> guarantee_floor;
  std::optional<int> acc_H, acc_G, flat_G;
  bool all_meet_floor = true;
};

/// Diagnostics for all 2q filters. Lowpass slots are compared with the floor
/// through accuracy, wavelet slots through vanishing moments.
BankReport bank_report(const WaveletFilterBank& bank, int max_order = kDefaultMaxOrder);

}  // namespace pcs
