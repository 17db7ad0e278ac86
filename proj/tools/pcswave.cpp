// pcswave: design, verify and apply prime coset sum wavelet filter banks.

#include "pcswave/coset_sum.hpp"
#include "pcswave/error.hpp"
#include "pcswave/filterbank.hpp"
#include "pcswave/io.hpp"
#include "pcswave/transform.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <sstream>

using nlohmann::json;
using namespace pcs;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct DesignArgs {
  std::int64_t p = 0;
  int dim = 0;
  std::string g_path, h_path, gamma, out;
  bool json = false;
};

struct VerifyArgs {
  std::string bank;
  int max_order = kDefaultMaxOrder;
  bool json = false;
  std::string dump_polyphase;
};

struct AnalyzeArgs {
  std::string bank, in, out;
  int levels = 1;
  bool oracle = false;
};

struct SynthesizeArgs {
  std::string bank, in, out, compare;
};

struct BenchArgs {
  std::string bank, shape;
  int levels = 1;
  bool tensor_model = false;
  bool json = false;
};

std::string order_str(int v, bool saturated) {
  return saturated ? ">=" + std::to_string(v) : std::to_string(v);
}

double max_abs(const std::vector<double>& v) {
  double m = 0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double max_abs_diff(const Tensor<double>& a, const Tensor<double>& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

WaveletFilterBank load_bank(const std::string& path, std::vector<std::string>* mismatches = nullptr) {
  LoadedBank lb = bank_from_json(read_json_file(path));
  if (mismatches) *mismatches = lb.mismatches;
  return std::move(lb.bank);
}

int run_design(const DesignArgs& a) {
  if (!is_prime(a.p)) {
    throw Error(ErrorCode::CompositeDilation, "dilation must be prime (got " + std::to_string(a.p) + ")");
  }
  if (a.dim < 1) throw Error(ErrorCode::DomainError, "--dim must be at least 1");
  const std::string gamma = a.gamma.empty() ? (a.p == 2 ? "standard" : "centered") : a.gamma;
  const Convention conv = parse_convention(gamma);

  const Filter1D G = filter1d_from_json(read_json_file(a.g_path));
  const Filter1D H = filter1d_from_json(read_json_file(a.h_path));
  for (const auto* f : {&G, &H}) {
    if (f->p() != a.p) {
      throw Error(ErrorCode::DimensionMismatch, std::string(f == &G ? "G" : "H") +
                                                    " has dilation " + std::to_string(f->p()) +
                                                    " but --p is " + std::to_string(a.p));
    }
  }
  if (auto d = interpolatory_defect(H.nd(), "H")) {
    throw Error(ErrorCode::NotInterpolatory, "H is not interpolatory: " + *d);
  }
  const WaveletFilterBank bank = build_pcs_bank(G, H, static_cast<std::size_t>(a.dim), conv);
  write_text_file(a.out, bank_to_json(bank).dump(2) + "\n");

  const BankReport rep = bank_report(bank);
  if (a.json) {
    json filters = json::array();
    for (const auto& f : rep.filters) filters.push_back({{"name", f.name}, {"support", f.diag.support_size}});
    std::cout << json{{"bank", a.out},
                      {"p", a.p},
                      {"dim", a.dim},
                      {"convention", gamma},
                      {"filters", filters},
                      {"guarantee_floor", *rep.guarantee_floor}}
                     .dump(2)
              << "\n";
    return kOk;
  }
  std::cout << "wrote " << a.out << " (p=" << a.p << ", dim=" << a.dim << ", " << gamma << ")\n";
  std::cout << "support sizes:\n";
  for (const auto& f : rep.filters) {
    std::cout << "  " << std::left << std::setw(16) << f.name << f.diag.support_size << "\n";
  }
  std::cout << "guarantee floor min{acc H, acc G, flat G} = min{" << *rep.acc_H << ", "
            << *rep.acc_G << ", " << *rep.flat_G << "} = " << *rep.guarantee_floor << "\n";
  return kOk;
}

std::string subband_name(const CosetSystem& sys, std::size_t idx) {
  return idx == 0 ? "lowpass" : "nu=" + sys.gamma()[idx].str();
}

int run_verify(const VerifyArgs& a) {
  std::vector<std::string> mismatches;
  const WaveletFilterBank bank = load_bank(a.bank, &mismatches);
  const CosetSystem& sys = bank.sys;

  const BiorthogonalityReport bio = verify_combined_biorthogonality(bank);
  const bool interp = is_interpolatory(bank.tau_d);
  const bool pair = is_biorthogonal(bank.tau_d, bank.tau);
  const BankReport rep = bank_report(bank, a.max_order);
  const bool all = bio.passed && interp && pair && mismatches.empty() && rep.all_meet_floor;

  if (!a.dump_polyphase.empty()) {
    std::vector<const FilterND*> an{&bank.tau}, sy{&bank.tau_d};
    for (const auto& f : bank.t) an.push_back(&f);
    for (const auto& f : bank.t_d) sy.push_back(&f);
    json gamma = json::array();
    for (const auto& g : sys.gamma()) gamma.push_back(g.coords());
    const json dump{{"gamma", gamma},
                    {"A", polyphase_to_json(analysis_matrix(an, sys))},
                    {"S", polyphase_to_json(synthesis_matrix(sy, sys))}};
    write_text_file(a.dump_polyphase, dump.dump(2) + "\n");
  }

  if (a.json) {
    json residuals = json::array();
    for (const auto& r : bio.residuals) {
      residuals.push_back({{"row", subband_name(sys, r.row)},
                           {"col", subband_name(sys, r.col)},
                           {"residual", r.value.str()}});
    }
    json filters = json::array();
    for (const auto& f : rep.filters) {
      filters.push_back({{"name", f.name},
                         {"accuracy", f.diag.accuracy},
                         {"vanishing_moments", f.diag.vanishing_moments},
                         {"flatness", f.diag.flatness},
                         {"support", f.diag.support_size},
                         {"interpolatory", f.diag.is_interpolatory},
                         {"meets_floor", f.meets_floor}});
    }
    json out{{"combined_biorthogonality", bio.passed},
             {"residuals", residuals},
             {"tau_d_interpolatory", interp},
             {"lowpass_pair_biorthogonal", pair},
             {"generator_mismatches", mismatches},
             {"filters", filters},
             {"max_order", a.max_order},
             {"pass", all}};
    if (rep.guarantee_floor) out["guarantee_floor"] = *rep.guarantee_floor;
    std::cout << out.dump(2) << "\n";
    return all ? kOk : kFailed;
  }

  auto line = [](bool ok, const std::string& what) {
    std::cout << (ok ? "PASS " : "FAIL ") << what << "\n";
  };
  line(bio.passed, "combined biorthogonality S*A = I/" + std::to_string(sys.q()));
  constexpr std::size_t kShown = 10;
  for (std::size_t i = 0; i < bio.residuals.size() && i < kShown; ++i) {
    const auto& r = bio.residuals[i];
    std::cout << "     residual at (" << subband_name(sys, r.row) << ", " << subband_name(sys, r.col)
              << "): " << r.value.str() << "\n";
  }
  if (bio.residuals.size() > kShown) {
    std::cout << "     ... " << bio.residuals.size() - kShown << " more nonzero entries\n";
  }
  line(interp, "tau_d interpolatory");
  line(pair, "(tau, tau_d) biorthogonal");
  if (bank.provenance == Provenance::PrimeCosetSum) {
    line(mismatches.empty(), "filters match the generators");
    for (const auto& m : mismatches) std::cout << "     differs: " << m << "\n";
  }
  if (rep.guarantee_floor) {
    line(rep.all_meet_floor, "every filter meets the guarantee floor " +
                                 std::to_string(*rep.guarantee_floor));
  }

  std::cout << "\n" << std::left << std::setw(16) << "filter" << std::setw(10) << "accuracy"
            << std::setw(10) << "moments" << std::setw(10) << "flatness" << "support\n";
  for (const auto& f : rep.filters) {
    std::cout << std::setw(16) << f.name << std::setw(10)
              << order_str(f.diag.accuracy, f.diag.accuracy_saturated) << std::setw(10)
              << order_str(f.diag.vanishing_moments, f.diag.vanishing_moments_saturated)
              << std::setw(10) << order_str(f.diag.flatness, f.diag.flatness_saturated)
              << f.diag.support_size << (f.meets_floor ? "" : "  below floor") << "\n";
  }
  return all ? kOk : kFailed;
}

int run_analyze(const AnalyzeArgs& a) {
  const WaveletFilterBank bank = load_bank(a.bank);
  const Tensor<double> y = load_pcst(a.in);
  if (y.dim() != bank.sys.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "input has " + std::to_string(y.dim()) +
                                                  " axes but the bank is " +
                                                  std::to_string(bank.sys.dim()) + "-D");
  }
  check_shape(y.shape(), bank.sys, a.levels);
  const bool fast = bank.provenance == Provenance::PrimeCosetSum;
  const MultiresCoeffs<double> c =
      fast ? decompose_fast(y, bank, a.levels) : decompose_direct(y, bank, a.levels);
  save_pcsc(a.out, c, bank.sys.p(), y.shape());
  std::cout << "wrote " << a.out << ": " << a.levels << " level(s), "
            << 1 + a.levels * static_cast<int>(bank.wavelet_count()) << " subbands ("
            << (fast ? "fast" : "direct") << " transform)\n";

  if (a.oracle) {
    const MultiresCoeffs<double> d = decompose_direct(y, bank, a.levels);
    double diff = max_abs_diff(c.coarse, d.coarse);
    for (std::size_t j = 0; j < c.details.size(); ++j) {
      for (std::size_t i = 0; i < c.details[j].size(); ++i) {
        diff = std::max(diff, max_abs_diff(c.details[j][i], d.details[j][i]));
      }
    }
    const double tol = 1e-12 * std::max(1.0, max_abs(y.data()));
    std::cout << "oracle: max |fast - direct| = " << diff << " (tolerance " << tol << ")\n";
    if (diff > tol) {
      std::cout << "FAIL fast transform disagrees with the filter-bank oracle\n";
      return kFailed;
    }
  }
  return kOk;
}

int run_synthesize(const SynthesizeArgs& a) {
  const WaveletFilterBank bank = load_bank(a.bank);
  const PcscFile f = load_pcsc(a.in);
  if (f.p != bank.sys.p() || f.shape.size() != bank.sys.dim()) {
    throw Error(ErrorCode::ShapeMismatch, "coefficients were produced with p=" + std::to_string(f.p) +
                                              ", n=" + std::to_string(f.shape.size()) +
                                              "; bank has p=" + std::to_string(bank.sys.p()) +
                                              ", n=" + std::to_string(bank.sys.dim()));
  }
  const bool fast = bank.provenance == Provenance::PrimeCosetSum;
  const Tensor<double> y = fast ? reconstruct_fast(f.coeffs, bank) : reconstruct_direct(f.coeffs, bank);
  if (y.shape() != f.shape) throw Error(ErrorCode::ShapeMismatch, "reconstructed shape differs from header");
  save_pcst(a.out, y);
  std::cout << "wrote " << a.out << "\n";
  if (!a.compare.empty()) {
    const Tensor<double> ref = load_pcst(a.compare);
    if (ref.shape() != y.shape()) throw Error(ErrorCode::ShapeMismatch, "--compare tensor has a different shape");
    const double err = max_abs_diff(ref, y);
    const double norm = max_abs(ref.data());
    std::cout << "max abs error " << err << " (||ref||inf = " << norm << ")\n";
    if (err > 1e-12 * norm) {
      std::cout << "FAIL round trip exceeds 1e-12 * ||ref||inf\n";
      return kFailed;
    }
  }
  return kOk;
}

std::vector<std::size_t> parse_shape(const std::string& s) {
  std::vector<std::size_t> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, 'x')) {
    try {
      std::size_t used = 0;
      const long v = std::stol(part, &used);
      if (used != part.size() || v <= 0) throw std::invalid_argument(part);
      out.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "bad --shape '" + s + "', expected e.g. 81x81");
    }
  }
  if (out.empty()) throw Error(ErrorCode::ParseError, "empty --shape");
  return out;
}

int run_bench(const BenchArgs& a) {
  const WaveletFilterBank bank = load_bank(a.bank);
  const auto shape = parse_shape(a.shape);
  if (shape.size() != bank.sys.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "--shape has " + std::to_string(shape.size()) +
                                                  " axes but the bank is " +
                                                  std::to_string(bank.sys.dim()) + "-D");
  }
  const OpCount oc = count_ops(bank, shape, a.levels);
  const bool exact = Rational(static_cast<std::int64_t>(oc.multiplicative_ops)) == oc.predicted;
  const Rational measured_c =
      Rational(static_cast<std::int64_t>(oc.per_level.front()), static_cast<std::int64_t>(oc.samples));
  const bool below = oc.per_sample_constant <= oc.tensor_model;

  if (a.json) {
    json out{{"measured", oc.multiplicative_ops},
             {"per_level", oc.per_level},
             {"predicted", oc.predicted.str()},
             {"match", exact},
             {"samples", oc.samples},
             {"per_sample_constant", measured_c.str()},
             {"predicted_constant", oc.per_sample_constant.str()},
             {"alpha", oc.alpha},
             {"beta", oc.beta},
             {"alpha_tilde", oc.alpha_tilde}};
    if (a.tensor_model) {
      out["tensor_model_constant"] = oc.tensor_model.str();
      out["pcs_at_most_tensor"] = below;
    }
    std::cout << out.dump(2) << "\n";
    return exact ? kOk : kFailed;
  }
  std::cout << "multiplications counted: tap products, normalizations by 1/(p-1) and\n"
               "1/((p-1)p^n), and the n index products p*k per coarse sample in the update steps\n";
  std::cout << "alpha=" << oc.alpha << " beta=" << oc.beta << " alpha~=" << oc.alpha_tilde
            << " N=" << oc.samples << " levels=" << a.levels << "\n";
  std::cout << "measured  " << oc.multiplicative_ops << "\n";
  std::cout << "predicted " << oc.predicted.str() << (exact ? "  (match)" : "  (MISMATCH)") << "\n";
  std::cout << "per-sample constant (one level) " << measured_c.str() << " = "
            << measured_c.to_double() << "\n";
  if (a.tensor_model) {
    std::cout << "tensor-product model (alpha+beta)n = " << oc.tensor_model.str() << "; coset sum constant "
              << oc.per_sample_constant.str() << (below ? " <= " : " > ") << "tensor constant "
              << oc.tensor_model.str() << "\n";
  }
  return exact ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pcswave: prime coset sum wavelet filter banks"};
  app.require_subcommand(1);

  DesignArgs design;
  auto* d = app.add_subcommand("design", "build a wavelet filter bank from 1-D lowpass filters G and H");
  d->set_help_flag("--help", "print this help message and exit");
  d->add_option("--p", design.p, "dilation (prime)")->required();
  d->add_option("--dim", design.dim, "spatial dimension n")->required();
  d->add_option("--g", design.g_path, "1-D analysis lowpass filter JSON")->required();
  d->add_option("--h", design.h_path, "1-D interpolatory synthesis lowpass filter JSON")->required();
  d->add_option("--gamma", design.gamma, "coset representatives: standard|centered");
  d->add_option("-o,--output", design.out, "bank JSON to write")->required();
  d->add_flag("--json", design.json, "print the summary as JSON");

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "check perfect reconstruction and report mask diagnostics");
  v->add_option("bank", verify.bank, "bank JSON")->required();
  v->add_option("--max-order", verify.max_order, "highest derivative order searched")
      ->check(CLI::Range(1, 200));
  v->add_flag("--json", verify.json, "print the report as JSON");
  v->add_option("--dump-polyphase", verify.dump_polyphase, "write the analysis/synthesis polyphase matrices as JSON");

  AnalyzeArgs analyze;
  auto* an = app.add_subcommand("analyze", "multilevel decomposition of a PCST tensor");
  an->add_option("--bank", analyze.bank, "bank JSON")->required();
  an->add_option("--levels", analyze.levels, "number of levels J")->check(CLI::Range(1, 64));
  an->add_option("input", analyze.in, "PCST input")->required();
  an->add_option("-o,--output", analyze.out, "PCSC output")->required();
  an->add_flag("--oracle", analyze.oracle, "cross-check against the filter-and-downsample transform");

  SynthesizeArgs synth;
  auto* sy = app.add_subcommand("synthesize", "reconstruct a PCST tensor from PCSC coefficients");
  sy->add_option("--bank", synth.bank, "bank JSON")->required();
  sy->add_option("input", synth.in, "PCSC input")->required();
  sy->add_option("-o,--output", synth.out, "PCST output")->required();
  sy->add_option("--compare", synth.compare, "PCST reference to compare against");

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "count multiplications of the fast transform");
  b->add_option("--bank", bench.bank, "bank JSON")->required();
  b->add_option("--shape", bench.shape, "signal shape, e.g. 81x81")->required();
  b->add_option("--levels", bench.levels, "number of levels J")->check(CLI::Range(1, 64));
  b->add_flag("--compare-tensor-model", bench.tensor_model, "also print the tensor-product model");
  b->add_flag("--json", bench.json, "print the report as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*d) return run_design(design);
    if (*v) return run_verify(verify);
    if (*an) return run_analyze(analyze);
    if (*sy) return run_synthesize(synth);
    if (*b) return run_bench(bench);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
