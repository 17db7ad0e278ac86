#include "pcswave/io.hpp"

#include "pcswave/coset_sum.hpp"
#include "pcswave/error.hpp"

#include <cstring>
#include <fstream>
#include <sstream>

namespace pcs {

using nlohmann::json;

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

std::int64_t int_field(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer()) {
    parse_fail(std::string("missing integer field '") + key + "'");
  }
  return j.at(key).get<std::int64_t>();
}

Rational rational_value(const json& v) {
  if (v.is_string()) return Rational::parse(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  parse_fail("tap value must be a \"num/den\" string or an integer");
}

}  // namespace

json filter_to_json(const FilterND& f) {
  json taps = json::array();
  for (const auto& [k, v] : f.taps()) taps.push_back({{"k", k.coords()}, {"v", v.str()}});
  return {{"p", f.p()}, {"dim", f.dim()}, {"taps", taps}};
}

FilterND filter_from_json(const json& j) {
  if (!j.is_object()) parse_fail("filter must be a JSON object");
  const std::int64_t p = int_field(j, "p");
  const std::int64_t dim = int_field(j, "dim");
  if (dim < 1) parse_fail("filter dim must be positive");
  if (!is_prime(p)) {
    throw Error(ErrorCode::CompositeDilation, "dilation must be prime (got " + std::to_string(p) + ")");
  }
  if (!j.contains("taps") || !j.at("taps").is_array()) parse_fail("filter needs a 'taps' array");
  FilterND f(p, static_cast<std::size_t>(dim));
  for (const auto& t : j.at("taps")) {
    if (!t.contains("k") || !t.at("k").is_array() || !t.contains("v")) {
      parse_fail("each tap needs 'k' (array) and 'v'");
    }
    const auto k = t.at("k").get<std::vector<std::int64_t>>();
    if (k.size() != static_cast<std::size_t>(dim)) {
      parse_fail("tap index has " + std::to_string(k.size()) + " coordinates, expected " +
                 std::to_string(dim));
    }
    const Rational v = rational_value(t.at("v"));
    if (v.is_zero()) parse_fail("zero tap at " + MultiIndex(k).str() + " (zero taps are not stored)");
    if (!f.tap(MultiIndex(k)).is_zero()) parse_fail("duplicate tap at " + MultiIndex(k).str());
    f.add(MultiIndex(k), v);
  }
  return f;
}

Filter1D filter1d_from_json(const json& j) {
  FilterND f = filter_from_json(j);
  if (f.dim() != 1) parse_fail("expected a 1-D filter, got dim " + std::to_string(f.dim()));
  return Filter1D(std::move(f));
}

std::string nu_key(const MultiIndex& nu) {
  std::string s;
  for (std::size_t i = 0; i < nu.dim(); ++i) {
    if (i) s += ',';
    s += std::to_string(nu[i]);
  }
  return s;
}

json bank_to_json(const WaveletFilterBank& bank) {
  json t = json::object();
  json td = json::object();
  for (std::size_t i = 0; i < bank.wavelet_count(); ++i) {
    t[nu_key(bank.nu(i))] = filter_to_json(bank.t[i]);
    td[nu_key(bank.nu(i))] = filter_to_json(bank.t_d[i]);
  }
  return {
      {"p", bank.sys.p()},
      {"dim", bank.sys.dim()},
      {"convention", std::string(to_string(bank.sys.convention()))},
      {"provenance", std::string(to_string(bank.provenance))},
      {"G", bank.G_1d ? filter_to_json(bank.G_1d->nd()) : json(nullptr)},
      {"H", bank.H_1d ? filter_to_json(bank.H_1d->nd()) : json(nullptr)},
      {"filters", {{"tau", filter_to_json(bank.tau)},
                   {"tau_d", filter_to_json(bank.tau_d)},
                   {"t", t},
                   {"t_d", td}}},
  };
}

LoadedBank bank_from_json(const json& j) {
  if (!j.is_object()) parse_fail("bank must be a JSON object");
  const std::int64_t p = int_field(j, "p");
  const std::int64_t dim = int_field(j, "dim");
  if (!j.contains("convention") || !j.at("convention").is_string()) {
    parse_fail("bank needs a 'convention' string");
  }
  if (dim < 1) parse_fail("bank dim must be positive");
  const CosetSystem sys(p, static_cast<std::size_t>(dim),
                        parse_convention(j.at("convention").get<std::string>()));
  const Provenance prov = j.contains("provenance")
                              ? parse_provenance(j.at("provenance").get<std::string>())
                              : ((j.contains("G") && !j.at("G").is_null()) ? Provenance::PrimeCosetSum
                                                                          : Provenance::General);
  if (!j.contains("filters") || !j.at("filters").is_object()) parse_fail("bank needs 'filters'");
  const json& fj = j.at("filters");
  for (const char* key : {"tau", "tau_d", "t", "t_d"}) {
    if (!fj.contains(key)) parse_fail(std::string("bank filters lack '") + key + "'");
  }

  auto checked = [&](const json& x, const std::string& name) {
    FilterND f = filter_from_json(x);
    if (f.p() != sys.p() || f.dim() != sys.dim()) {
      throw Error(ErrorCode::DimensionMismatch, name + " does not match the bank's p and dim");
    }
    return f;
  };

  LoadedBank out{WaveletFilterBank{sys, std::nullopt, std::nullopt, checked(fj.at("tau"), "tau"),
                                   {}, checked(fj.at("tau_d"), "tau_d"), {}, prov},
                 {}};
  WaveletFilterBank& bank = out.bank;
  const std::size_t expected = sys.gamma().size() - 1;
  if (fj.at("t").size() != expected || fj.at("t_d").size() != expected) {
    parse_fail("bank needs " + std::to_string(expected) + " wavelet filters per side");
  }
  for (std::size_t i = 1; i < sys.gamma().size(); ++i) {
    const std::string key = nu_key(sys.gamma()[i]);
    if (!fj.at("t").contains(key) || !fj.at("t_d").contains(key)) {
      parse_fail("bank lacks wavelet filters for nu = (" + key + ")");
    }
    bank.t.push_back(checked(fj.at("t").at(key), "t(" + key + ")"));
    bank.t_d.push_back(checked(fj.at("t_d").at(key), "t_d(" + key + ")"));
  }

  if (prov == Provenance::PrimeCosetSum) {
    if (!j.contains("G") || !j.contains("H") || j.at("G").is_null() || j.at("H").is_null()) {
      parse_fail("prime coset sum bank needs generators 'G' and 'H'");
    }
    bank.G_1d = filter1d_from_json(j.at("G"));
    bank.H_1d = filter1d_from_json(j.at("H"));
    if (bank.G_1d->p() != p || bank.H_1d->p() != p) {
      throw Error(ErrorCode::DimensionMismatch, "generator dilation differs from the bank");
    }
    const WaveletFilterBank ref =
        build_pcs_bank(*bank.G_1d, *bank.H_1d, sys.dim(), sys.convention());
    if (!(ref.tau == bank.tau)) out.mismatches.push_back("tau");
    if (!(ref.tau_d == bank.tau_d)) out.mismatches.push_back("tau_d");
    for (std::size_t i = 0; i < bank.wavelet_count(); ++i) {
      if (!(ref.t[i] == bank.t[i])) out.mismatches.push_back("t" + bank.nu(i).str());
      if (!(ref.t_d[i] == bank.t_d[i])) out.mismatches.push_back("t_d" + bank.nu(i).str());
    }
  }
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path);
}

namespace {

template <class U>
void put(std::ostream& os, U v) {
  unsigned char b[sizeof(U)];
  for (std::size_t i = 0; i < sizeof(U); ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
  os.write(reinterpret_cast<const char*>(b), sizeof(U));
}

template <class U>
U get(std::istream& is) {
  unsigned char b[sizeof(U)];
  if (!is.read(reinterpret_cast<char*>(b), sizeof(U))) {
    throw Error(ErrorCode::ParseError, "truncated binary stream");
  }
  U v = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) v |= static_cast<U>(b[i]) << (8 * i);
  return v;
}

void expect_magic(std::istream& is, const char* magic) {
  char m[4];
  if (!is.read(m, 4) || std::memcmp(m, magic, 4) != 0) {
    throw Error(ErrorCode::ParseError, std::string("bad magic, expected ") + magic);
  }
}

constexpr std::uint16_t kVersion = 1;

}  // namespace

void write_pcst(std::ostream& os, const Tensor<double>& t) {
  os.write("PCST", 4);
  put<std::uint16_t>(os, kVersion);
  put<std::uint8_t>(os, 0);
  put<std::uint8_t>(os, static_cast<std::uint8_t>(t.dim()));
  for (auto s : t.shape()) put<std::uint64_t>(os, s);
  for (double v : t.data()) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    put<std::uint64_t>(os, bits);
  }
}

Tensor<double> read_pcst(std::istream& is) {
  expect_magic(is, "PCST");
  const auto version = get<std::uint16_t>(is);
  if (version != kVersion) {
    throw Error(ErrorCode::ParseError, "unsupported PCST version " + std::to_string(version));
  }
  const auto code = get<std::uint8_t>(is);
  if (code != 0) throw Error(ErrorCode::ParseError, "unsupported PCST scalar code " + std::to_string(code));
  const auto n = get<std::uint8_t>(is);
  if (n == 0) throw Error(ErrorCode::ParseError, "PCST tensor has no axes");
  std::vector<std::size_t> shape(n);
  std::uint64_t total = 1;
  for (auto& s : shape) {
    s = get<std::uint64_t>(is);
    if (s == 0 || total > (std::uint64_t{1} << 40) / s) {
      throw Error(ErrorCode::ParseError, "PCST shape is empty or too large");
    }
    total *= s;
  }
  Tensor<double> t(shape);
  for (auto& v : t.data()) {
    const auto bits = get<std::uint64_t>(is);
    std::memcpy(&v, &bits, sizeof v);
  }
  return t;
}

void save_pcst(const std::string& path, const Tensor<double>& t) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
  write_pcst(out, t);
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path);
}

Tensor<double> load_pcst(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  return read_pcst(in);
}

void write_pcsc(std::ostream& os, const MultiresCoeffs<double>& c, std::int64_t p,
                const std::vector<std::size_t>& shape) {
  os.write("PCSC", 4);
  put<std::uint16_t>(os, kVersion);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(p));
  put<std::uint8_t>(os, static_cast<std::uint8_t>(shape.size()));
  put<std::uint8_t>(os, static_cast<std::uint8_t>(c.levels));
  for (auto s : shape) put<std::uint64_t>(os, s);
  std::uint32_t count = 1;
  for (const auto& level : c.details) count += static_cast<std::uint32_t>(level.size());
  put<std::uint32_t>(os, count);
  put<std::uint32_t>(os, 0);
  put<std::uint32_t>(os, 0);
  write_pcst(os, c.coarse);
  for (std::size_t j = 0; j < c.details.size(); ++j) {
    for (std::size_t i = 0; i < c.details[j].size(); ++i) {
      put<std::uint32_t>(os, static_cast<std::uint32_t>(j));
      put<std::uint32_t>(os, static_cast<std::uint32_t>(i + 1));
      write_pcst(os, c.details[j][i]);
    }
  }
}

PcscFile read_pcsc(std::istream& is) {
  expect_magic(is, "PCSC");
  const auto version = get<std::uint16_t>(is);
  if (version != kVersion) {
    throw Error(ErrorCode::ParseError, "unsupported PCSC version " + std::to_string(version));
  }
  PcscFile f;
  f.p = get<std::uint32_t>(is);
  const auto n = get<std::uint8_t>(is);
  const auto J = get<std::uint8_t>(is);
  if (n == 0 || J == 0) throw Error(ErrorCode::ParseError, "PCSC header has zero axes or levels");
  f.shape.resize(n);
  for (auto& s : f.shape) s = get<std::uint64_t>(is);
  const auto count = get<std::uint32_t>(is);

  std::int64_t q = 1;
  for (std::size_t j = 0; j < n; ++j) q *= f.p;
  const std::uint64_t expected = 1 + static_cast<std::uint64_t>(J) * static_cast<std::uint64_t>(q - 1);
  if (count != expected) {
    throw Error(ErrorCode::ShapeMismatch, "PCSC holds " + std::to_string(count) +
                                              " subbands, expected " + std::to_string(expected));
  }
  f.coeffs.levels = J;
  f.coeffs.details.assign(J, std::vector<Tensor<double>>(static_cast<std::size_t>(q - 1)));
  std::vector<std::vector<bool>> seen(J, std::vector<bool>(static_cast<std::size_t>(q - 1), false));
  bool coarse_seen = false;
  for (std::uint32_t r = 0; r < count; ++r) {
    const auto level = get<std::uint32_t>(is);
    const auto index = get<std::uint32_t>(is);
    Tensor<double> t = read_pcst(is);
    if (index == 0) {
      if (level != 0 || coarse_seen) throw Error(ErrorCode::ParseError, "bad coarse record");
      f.coeffs.coarse = std::move(t);
      coarse_seen = true;
      continue;
    }
    if (level >= J || index >= static_cast<std::uint64_t>(q) || seen[level][index - 1]) {
      throw Error(ErrorCode::ParseError, "bad subband record (" + std::to_string(level) + ", " +
                                             std::to_string(index) + ")");
    }
    seen[level][index - 1] = true;
    f.coeffs.details[level][index - 1] = std::move(t);
  }
  if (!coarse_seen) throw Error(ErrorCode::ParseError, "PCSC lacks the coarse subband");
  return f;
}

void save_pcsc(const std::string& path, const MultiresCoeffs<double>& c, std::int64_t p,
               const std::vector<std::size_t>& shape) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
  write_pcsc(out, c, p, shape);
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path);
}

PcscFile load_pcsc(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  return read_pcsc(in);
}

json laurent_to_json(const LaurentPoly& poly) {
  json terms = json::array();
  for (const auto& [k, c] : poly.terms()) terms.push_back({{"k", k.coords()}, {"v", c.str()}});
  return terms;
}

json polyphase_to_json(const PolyphaseMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(laurent_to_json(m.at(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace pcs
