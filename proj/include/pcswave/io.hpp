#pragma once

#include "pcswave/filterbank.hpp"
#include "pcswave/transform.hpp"

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace pcs {

// Filter JSON: {"p": 3, "dim": 1, "taps": [{"k": [-1], "v": "1"}, ...]}
nlohmann::json filter_to_json(const FilterND& f);
FilterND filter_from_json(const nlohmann::json& j);
Filter1D filter1d_from_json(const nlohmann::json& j);

nlohmann::json bank_to_json(const WaveletFilterBank& bank);

struct LoadedBank {
  WaveletFilterBank bank;
  // Filters that differ from what the generators re-derive to; empty for
  // general banks and for consistent files.
  std::vector<std::string> mismatches;
};

/// Bank JSON: {"p", "dim", "convention", "provenance", "G", "H",
///             "filters": {"tau", "tau_d", "t": {"1,0": ...}, "t_d": {...}}}
LoadedBank bank_from_json(const nlohmann::json& j);

nlohmann::json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// Key of nu in the bank JSON wavelet maps, e.g. "1,-1".
std::string nu_key(const MultiIndex& nu);

// PCST: "PCST", u16 version 1, u8 scalar code (0 = f64 LE), u8 n, n x u64 shape, payload
void write_pcst(std::ostream& os, const Tensor<double>& t);
Tensor<double> read_pcst(std::istream& is);
void save_pcst(const std::string& path, const Tensor<double>& t);
Tensor<double> load_pcst(const std::string& path);

// PCSC: "PCSC", u16 version 1, u32 p, u8 n, u8 J, n x u64 shape, u32 record count,
// then records (u32 level, u32 gamma index, PCST block). The coarse subband is
// (0, 0); details carry their gamma index >= 1.
struct PcscFile {
  std::int64_t p = 0;
  std::vector<std::size_t> shape;
  MultiresCoeffs<double> coeffs;
};
void write_pcsc(std::ostream& os, const MultiresCoeffs<double>& c, std::int64_t p,
                const std::vector<std::size_t>& shape);
PcscFile read_pcsc(std::istream& is);
void save_pcsc(const std::string& path, const MultiresCoeffs<double>& c, std::int64_t p,
               const std::vector<std::size_t>& shape);
PcscFile load_pcsc(const std::string& path);

nlohmann::json laurent_to_json(const LaurentPoly& poly);
nlohmann::json polyphase_to_json(const PolyphaseMatrix& m);

}  // namespace pcs
