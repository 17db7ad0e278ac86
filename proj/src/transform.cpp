#include "pcswave/transform.hpp"

#include "pcswave/error.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>

namespace pcs {

template <class T>
Tensor<T>::Tensor(std::vector<std::size_t> shape, const T& fill) : shape_(std::move(shape)) {
  strides_.assign(shape_.size(), 1);
  std::size_t total = 1;
  for (std::size_t j = shape_.size(); j-- > 0;) {
    if (shape_[j] == 0) throw Error(ErrorCode::DomainError, "tensor axes must be positive");
    strides_[j] = total;
    total *= shape_[j];
  }
  data_.assign(total, fill);
}

template <class T>
std::size_t Tensor<T>::wrap(const MultiIndex& x) const {
  if (x.dim() != shape_.size()) throw Error(ErrorCode::DimensionMismatch, "index dimension");
  std::size_t off = 0;
  for (std::size_t j = 0; j < shape_.size(); ++j) {
    off += static_cast<std::size_t>(mod_floor(x[j], static_cast<std::int64_t>(shape_[j]))) *
           strides_[j];
  }
  return off;
}

template <class T>
MultiIndex Tensor<T>::coords(std::size_t i) const {
  MultiIndex x(shape_.size());
  for (std::size_t j = 0; j < shape_.size(); ++j) {
    x[j] = static_cast<std::int64_t>(i / strides_[j]);
    i %= strides_[j];
  }
  return x;
}

template class Tensor<double>;
template class Tensor<Rational>;

unsigned worker_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("PCSWAVE_THREADS")) {
    try {
      const long cap = std::stol(env);
      if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
    } catch (const std::exception&) {
    }
  }
  return n;
}

namespace {

// Runs body(begin, end) over [0, count) in contiguous chunks. Each chunk
// returns its own op count; counts are summed in chunk order.
template <class F>
std::uint64_t parallel_for(std::size_t count, F&& body) {
  const std::size_t workers = std::min<std::size_t>(worker_count(), std::max<std::size_t>(1, count / 64));
  if (workers <= 1) return body(std::size_t{0}, count);
  std::vector<std::uint64_t> ops(workers, 0);
  std::vector<std::thread> pool;
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t b = std::min(count, w * chunk);
    const std::size_t e = std::min(count, b + chunk);
    pool.emplace_back([&, w, b, e] { ops[w] = body(b, e); });
  }
  for (auto& t : pool) t.join();
  std::uint64_t total = 0;
  for (auto v : ops) total += v;
  return total;
}

template <class T>
T scalar(const Rational& r);
template <>
double scalar<double>(const Rational& r) { return r.to_double(); }
template <>
Rational scalar<Rational>(const Rational& r) { return r; }

std::vector<std::size_t> divided_shape(const std::vector<std::size_t>& s, std::int64_t p) {
  std::vector<std::size_t> out(s);
  for (auto& v : out) v /= static_cast<std::size_t>(p);
  return out;
}

// Flat offset of p*k + off in a tensor of the given shape/strides.
inline std::size_t fine_offset(const std::int64_t* k, const std::int64_t* off, std::int64_t p,
                               const std::vector<std::size_t>& shape,
                               const std::vector<std::size_t>& strides) {
  std::size_t o = 0;
  for (std::size_t j = 0; j < shape.size(); ++j) {
    o += static_cast<std::size_t>(mod_floor(p * k[j] + off[j], static_cast<std::int64_t>(shape[j]))) *
         strides[j];
  }
  return o;
}

inline std::size_t shifted_offset(const std::int64_t* k, const std::int64_t* off,
                                  const std::vector<std::size_t>& shape,
                                  const std::vector<std::size_t>& strides) {
  std::size_t o = 0;
  for (std::size_t j = 0; j < shape.size(); ++j) {
    o += static_cast<std::size_t>(mod_floor(k[j] - off[j], static_cast<std::int64_t>(shape[j]))) *
         strides[j];
  }
  return o;
}

inline void decode(std::size_t i, const std::vector<std::size_t>& strides, std::int64_t* k) {
  for (std::size_t j = 0; j < strides.size(); ++j) {
    k[j] = static_cast<std::int64_t>(i / strides[j]);
    i %= strides[j];
  }
}

// Lifting plan for one bank: predict terms per nu and update terms across all nu.
template <class T>
struct LiftingPlan {
  struct Predict {
    std::vector<std::int64_t> offset;  // nu - eta(m, nu) m
    T coef;                            // H(m)
  };
  struct Update {
    std::size_t band;
    std::vector<std::int64_t> shift;  // (nu - eta(m, nu) m) / p
    T coef;                           // G(m)
  };
  std::int64_t p;
  std::size_t n;
  std::vector<std::vector<std::int64_t>> nu;
  std::vector<std::vector<Predict>> predict;
  std::vector<Update> update;
  T inv_pm1;
  T update_norm;
};

template <class T>
LiftingPlan<T> make_plan(const WaveletFilterBank& bank) {
  if (bank.provenance != Provenance::PrimeCosetSum || !bank.G_1d || !bank.H_1d) {
    throw Error(ErrorCode::WrongProvenance,
                "fast transform needs a prime coset sum bank (provenance " +
                    std::string(to_string(bank.provenance)) + ")");
  }
  const CosetSystem& sys = bank.sys;
  const std::int64_t p = sys.p();
  LiftingPlan<T> plan;
  plan.p = p;
  plan.n = sys.dim();
  plan.inv_pm1 = scalar<T>(Rational(1, p - 1));
  plan.update_norm = scalar<T>(Rational(1) / Rational((p - 1) * sys.q()));
  const auto H = bank.H_1d->taps();
  const auto G = bank.G_1d->taps();
  for (std::size_t i = 0; i < bank.wavelet_count(); ++i) {
    const MultiIndex& nu = bank.nu(i);
    plan.nu.push_back(nu.coords());
    std::vector<typename LiftingPlan<T>::Predict> pred;
    for (const auto& [m, h] : H) {
      if (mod_floor(m, p) == 0) continue;
      const MultiIndex off = nu - m * sys.eta_of_residue(m, nu);
      pred.push_back({off.coords(), scalar<T>(h)});
    }
    plan.predict.push_back(std::move(pred));
    for (const auto& [m, g] : G) {
      if (mod_floor(m, p) == 0) continue;
      const MultiIndex off = nu - m * sys.eta_of_residue(m, nu);
      if (!off.divisible_by(p)) throw std::logic_error("lifting offset not on the coarse lattice");
      plan.update.push_back({i, off.divided_by(p).coords(), scalar<T>(g)});
    }
  }
  return plan;
}

template <class T>
void check_input(const Tensor<T>& y, const CosetSystem& sys, int levels) {
  if (y.dim() != sys.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "signal has " + std::to_string(y.dim()) +
                                                  " axes but the bank is " +
                                                  std::to_string(sys.dim()) + "-D");
  }
  check_shape(y.shape(), sys, levels);
}

// One analysis level: y (fine) -> coarse + details.
template <class T>
std::uint64_t lift_forward(const LiftingPlan<T>& plan, const Tensor<T>& y, Tensor<T>& coarse,
                           std::vector<Tensor<T>>& w) {
  const std::int64_t p = plan.p;
  const std::size_t n = plan.n;
  const auto& fs = y.shape();
  const auto& fst = y.strides();
  const auto& cs = coarse.shape();
  const auto& cst = coarse.strides();
  const std::size_t bands = plan.nu.size();
  const std::size_t N = coarse.size();

  // predict
  std::uint64_t ops = parallel_for(N * bands, [&](std::size_t b, std::size_t e) {
    std::uint64_t local = 0;
    std::vector<std::int64_t> k(n);
    for (std::size_t t = b; t < e; ++t) {
      const std::size_t i = t / N;
      const std::size_t c = t % N;
      decode(c, cst, k.data());
      T acc{};
      for (const auto& term : plan.predict[i]) {
        acc += term.coef * y[fine_offset(k.data(), term.offset.data(), p, fs, fst)];
        ++local;
      }
      w[i][c] = y[fine_offset(k.data(), plan.nu[i].data(), p, fs, fst)] - plan.inv_pm1 * acc;
      ++local;
    }
    return local;
  });

  // update
  const std::vector<std::int64_t> zero(n, 0);
  ops += parallel_for(N, [&](std::size_t b, std::size_t e) {
    std::uint64_t local = 0;
    std::vector<std::int64_t> k(n);
    for (std::size_t c = b; c < e; ++c) {
      decode(c, cst, k.data());
      const T& base = y[fine_offset(k.data(), zero.data(), p, fs, fst)];
      local += n;
      T acc{};
      for (const auto& term : plan.update) {
        acc += term.coef * w[term.band][shifted_offset(k.data(), term.shift.data(), cs, cst)];
        ++local;
      }
      coarse[c] = base + plan.update_norm * acc;
      ++local;
    }
    return local;
  });
  return ops;
}

// One synthesis level: coarse + details -> y (fine).
template <class T>
std::uint64_t lift_inverse(const LiftingPlan<T>& plan, const Tensor<T>& coarse,
                           const std::vector<Tensor<T>>& w, Tensor<T>& y) {
  const std::int64_t p = plan.p;
  const std::size_t n = plan.n;
  const auto& fs = y.shape();
  const auto& fst = y.strides();
  const auto& cs = coarse.shape();
  const auto& cst = coarse.strides();
  const std::size_t bands = plan.nu.size();
  const std::size_t N = coarse.size();

  // undo update
  const std::vector<std::int64_t> zero(n, 0);
  std::uint64_t ops = parallel_for(N, [&](std::size_t b, std::size_t e) {
    std::uint64_t local = 0;
    std::vector<std::int64_t> k(n);
    for (std::size_t c = b; c < e; ++c) {
      decode(c, cst, k.data());
      const std::size_t dst = fine_offset(k.data(), zero.data(), p, fs, fst);
      local += n;
      T acc{};
      for (const auto& term : plan.update) {
        acc += term.coef * w[term.band][shifted_offset(k.data(), term.shift.data(), cs, cst)];
        ++local;
      }
      y[dst] = coarse[c] - plan.update_norm * acc;
      ++local;
    }
    return local;
  });

  // undo predict; reads only samples on the coarse lattice written above
  ops += parallel_for(N * bands, [&](std::size_t b, std::size_t e) {
    std::uint64_t local = 0;
    std::vector<std::int64_t> k(n);
    for (std::size_t t = b; t < e; ++t) {
      const std::size_t i = t / N;
      const std::size_t c = t % N;
      decode(c, cst, k.data());
      T acc{};
      for (const auto& term : plan.predict[i]) {
        acc += term.coef * y[fine_offset(k.data(), term.offset.data(), p, fs, fst)];
        ++local;
      }
      y[fine_offset(k.data(), plan.nu[i].data(), p, fs, fst)] = w[i][c] + plan.inv_pm1 * acc;
      ++local;
    }
    return local;
  });
  return ops;
}

template <class T>
void check_coeffs(const MultiresCoeffs<T>& c, const WaveletFilterBank& bank) {
  const CosetSystem& sys = bank.sys;
  if (c.levels < 1 || c.details.size() != static_cast<std::size_t>(c.levels)) {
    throw Error(ErrorCode::ShapeMismatch, "coefficient set has inconsistent level count");
  }
  if (c.coarse.dim() != sys.dim()) {
    throw Error(ErrorCode::ShapeMismatch, "coarse subband dimension differs from the bank");
  }
  std::vector<std::size_t> expect = c.coarse.shape();
  for (int j = 0; j < c.levels; ++j) {
    const auto& level = c.details[static_cast<std::size_t>(j)];
    if (level.size() != bank.wavelet_count()) {
      throw Error(ErrorCode::ShapeMismatch, "level " + std::to_string(j) + " has " +
                                                std::to_string(level.size()) + " subbands, need " +
                                                std::to_string(bank.wavelet_count()));
    }
    for (const auto& band : level) {
      if (band.shape() != expect) {
        throw Error(ErrorCode::ShapeMismatch,
                    "subband shape mismatch at level " + std::to_string(j));
      }
    }
    for (auto& v : expect) v *= static_cast<std::size_t>(sys.p());
  }
}

// One direct analysis level.
template <class T>
void filter_down(const Tensor<T>& y, const WaveletFilterBank& bank, Tensor<T>& coarse,
                 std::vector<Tensor<T>>& w) {
  const std::int64_t p = bank.sys.p();
  const Rational inv_q(1, bank.sys.q());
  auto apply = [&](const FilterND& a, Tensor<T>& out) {
    std::vector<std::pair<MultiIndex, T>> taps;
    for (const auto& [x, v] : a.taps()) taps.emplace_back(x, scalar<T>(v * inv_q));
    for (std::size_t c = 0; c < out.size(); ++c) {
      const MultiIndex pk = p * out.coords(c);
      T acc{};
      for (const auto& [x, v] : taps) acc += v * y.at(x + pk);
      out[c] = acc;
    }
  };
  apply(bank.tau, coarse);
  for (std::size_t i = 0; i < bank.wavelet_count(); ++i) apply(bank.t[i], w[i]);
}

template <class T>
void filter_up(const Tensor<T>& coarse, const std::vector<Tensor<T>>& w,
               const WaveletFilterBank& bank, Tensor<T>& y) {
  const std::int64_t p = bank.sys.p();
  auto apply = [&](const FilterND& s, const Tensor<T>& in) {
    std::vector<std::pair<MultiIndex, T>> taps;
    for (const auto& [x, v] : s.taps()) taps.emplace_back(x, scalar<T>(v));
    for (std::size_t c = 0; c < in.size(); ++c) {
      const MultiIndex pk = p * in.coords(c);
      for (const auto& [x, v] : taps) y.at(x + pk) += in[c] * v;
    }
  };
  apply(bank.tau_d, coarse);
  for (std::size_t i = 0; i < bank.wavelet_count(); ++i) apply(bank.t_d[i], w[i]);
}

}  // namespace

void check_shape(const std::vector<std::size_t>& shape, const CosetSystem& sys, int levels) {
  if (levels < 1) throw Error(ErrorCode::DomainError, "levels must be at least 1");
  std::size_t block = 1;
  for (int j = 0; j < levels; ++j) block *= static_cast<std::size_t>(sys.p());
  for (std::size_t a = 0; a < shape.size(); ++a) {
    if (shape[a] % block != 0) {
      throw Error(ErrorCode::ShapeNotDivisible,
                  "axis " + std::to_string(a) + " has length " + std::to_string(shape[a]) +
                      ", not divisible by " + std::to_string(sys.p()) + "^" +
                      std::to_string(levels) + " = " + std::to_string(block));
    }
  }
}

template <class T>
MultiresCoeffs<T> decompose_fast(const Tensor<T>& y, const WaveletFilterBank& bank, int levels,
                                 std::uint64_t* ops) {
  const auto plan = make_plan<T>(bank);
  check_input(y, bank.sys, levels);
  MultiresCoeffs<T> out;
  out.levels = levels;
  out.details.resize(static_cast<std::size_t>(levels));
  Tensor<T> current = y;
  for (int j = levels; j-- > 0;) {
    const auto cs = divided_shape(current.shape(), plan.p);
    Tensor<T> coarse(cs);
    std::vector<Tensor<T>> w(bank.wavelet_count(), Tensor<T>(cs));
    const std::uint64_t c = lift_forward(plan, current, coarse, w);
    if (ops) *ops += c;
    out.details[static_cast<std::size_t>(j)] = std::move(w);
    current = std::move(coarse);
  }
  out.coarse = std::move(current);
  return out;
}

template <class T>
Tensor<T> reconstruct_fast(const MultiresCoeffs<T>& c, const WaveletFilterBank& bank,
                           std::uint64_t* ops) {
  const auto plan = make_plan<T>(bank);
  check_coeffs(c, bank);
  Tensor<T> current = c.coarse;
  for (int j = 0; j < c.levels; ++j) {
    auto fs = current.shape();
    for (auto& v : fs) v *= static_cast<std::size_t>(plan.p);
    Tensor<T> fine(fs);
    const std::uint64_t n = lift_inverse(plan, current, c.details[static_cast<std::size_t>(j)], fine);
    if (ops) *ops += n;
    current = std::move(fine);
  }
  return current;
}

template <class T>
MultiresCoeffs<T> decompose_direct(const Tensor<T>& y, const WaveletFilterBank& bank, int levels) {
  check_input(y, bank.sys, levels);
  MultiresCoeffs<T> out;
  out.levels = levels;
  out.details.resize(static_cast<std::size_t>(levels));
  Tensor<T> current = y;
  for (int j = levels; j-- > 0;) {
    const auto cs = divided_shape(current.shape(), bank.sys.p());
    Tensor<T> coarse(cs);
    std::vector<Tensor<T>> w(bank.wavelet_count(), Tensor<T>(cs));
    filter_down(current, bank, coarse, w);
    out.details[static_cast<std::size_t>(j)] = std::move(w);
    current = std::move(coarse);
  }
  out.coarse = std::move(current);
  return out;
}

template <class T>
Tensor<T> reconstruct_direct(const MultiresCoeffs<T>& c, const WaveletFilterBank& bank) {
  check_coeffs(c, bank);
  Tensor<T> current = c.coarse;
  for (int j = 0; j < c.levels; ++j) {
    auto fs = current.shape();
    for (auto& v : fs) v *= static_cast<std::size_t>(bank.sys.p());
    Tensor<T> fine(fs);
    filter_up(current, c.details[static_cast<std::size_t>(j)], bank, fine);
    current = std::move(fine);
  }
  return current;
}

template MultiresCoeffs<double> decompose_fast(const Tensor<double>&, const WaveletFilterBank&, int,
                                               std::uint64_t*);
template MultiresCoeffs<Rational> decompose_fast(const Tensor<Rational>&, const WaveletFilterBank&,
                                                 int, std::uint64_t*);
template Tensor<double> reconstruct_fast(const MultiresCoeffs<double>&, const WaveletFilterBank&,
                                         std::uint64_t*);
template Tensor<Rational> reconstruct_fast(const MultiresCoeffs<Rational>&,
                                           const WaveletFilterBank&, std::uint64_t*);
template MultiresCoeffs<double> decompose_direct(const Tensor<double>&, const WaveletFilterBank&,
                                                 int);
template MultiresCoeffs<Rational> decompose_direct(const Tensor<Rational>&,
                                                   const WaveletFilterBank&, int);
template Tensor<double> reconstruct_direct(const MultiresCoeffs<double>&, const WaveletFilterBank&);
template Tensor<Rational> reconstruct_direct(const MultiresCoeffs<Rational>&,
                                             const WaveletFilterBank&);

Rational predicted_constant(std::int64_t p, std::size_t n, std::int64_t beta,
                            std::int64_t alpha_tilde) {
  std::int64_t q = 1;
  for (std::size_t j = 0; j < n; ++j) q *= p;
  const auto nn = static_cast<std::int64_t>(n);
  return Rational(2 * (q - 1) * beta + 2 * (q - 1) * alpha_tilde + 2 * nn + 2, q);
}

OpCount count_ops(const WaveletFilterBank& bank, const std::vector<std::size_t>& shape, int levels) {
  check_shape(shape, bank.sys, levels);
  if (shape.size() != bank.sys.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "shape dimension differs from the bank");
  }
  const auto plan = make_plan<double>(bank);
  OpCount r;
  r.alpha = static_cast<std::int64_t>(bank.G_1d->support_size());
  r.beta = static_cast<std::int64_t>(bank.H_1d->support_size());
  for (const auto& [m, g] : bank.G_1d->taps()) {
    if (mod_floor(m, bank.sys.p()) != 0) ++r.alpha_tilde;
  }
  const auto n = bank.sys.dim();
  r.per_sample_constant = predicted_constant(bank.sys.p(), n, r.beta, r.alpha_tilde);
  r.tensor_model = Rational((r.alpha + r.beta) * static_cast<std::int64_t>(n));

  std::uint64_t samples = 1;
  for (auto s : shape) samples *= s;
  r.samples = samples;

  // level by level so that per-level counts are visible
  Tensor<double> current(shape, 0.0);
  std::uint64_t level_samples = samples;
  for (int j = 0; j < levels; ++j) {
    const auto cs = divided_shape(current.shape(), plan.p);
    Tensor<double> coarse(cs);
    std::vector<Tensor<double>> w(bank.wavelet_count(), Tensor<double>(cs));
    std::uint64_t c = lift_forward(plan, current, coarse, w);
    Tensor<double> back(current.shape());
    c += lift_inverse(plan, coarse, w, back);
    r.per_level.push_back(c);
    r.multiplicative_ops += c;
    r.predicted += r.per_sample_constant * Rational(static_cast<std::int64_t>(level_samples));
    level_samples /= static_cast<std::uint64_t>(bank.sys.q());
    current = std::move(coarse);
  }
  return r;
}

Tensor<double> to_double(const Tensor<Rational>& t) {
  Tensor<double> out(t.shape());
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = t[i].to_double();
  return out;
}

Tensor<Rational> to_rational(const Tensor<double>& t) {
  Tensor<Rational> out(t.shape());
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = Rational(mpq_class(t[i]));
  return out;
}

}  // namespace pcs
