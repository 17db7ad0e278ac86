#include "doctest.h"

#include "../support/corpus.hpp"
#include "../support/oracles.hpp"
#include "pcswave/coset_sum.hpp"
#include "pcswave/error.hpp"
#include "pcswave/transform.hpp"

#include <cstdlib>
#include <random>

using namespace pcs;

namespace {

WaveletFilterBank haar_bank(std::int64_t p, std::size_t n) {
  return build_pcs_bank(corpus::haar(p), corpus::haar(p), n, p == 2 ? Convention::Standard : Convention::Centered);
}

WaveletFilterBank acc4_bank() {
  return build_pcs_bank(corpus::haar_centered(3), corpus::u_acc4(), 2, Convention::Centered);
}

template <class T>
bool same(const MultiresCoeffs<T>& a, const MultiresCoeffs<T>& b) {
  return a.levels == b.levels && a.coarse == b.coarse && a.details == b.details;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::IoError;
}

}  // namespace

TEST_CASE("tensor indexing is periodic") {
  Tensor<double> t({3, 4});
  t.at(MultiIndex{-1, 5}) = 7;
  CHECK(t.at(MultiIndex{2, 1}) == 7);
  CHECK(t.coords(t.wrap(MultiIndex{2, 1})) == MultiIndex{2, 1});
  CHECK(t.size() == 12);
}

TEST_CASE("constant signal: zero details, same coarse value") {
  const auto bank = haar_bank(3, 2);
  Tensor<Rational> y({9, 9}, Rational(5, 2));
  const auto c = decompose_fast(y, bank, 1);
  CHECK(c.coarse == Tensor<Rational>({3, 3}, Rational(5, 2)));
  for (const auto& w : c.details[0]) CHECK(w == Tensor<Rational>({3, 3}));
  CHECK(same(c, decompose_direct(y, bank, 1)));
}

TEST_CASE("fast and direct transforms agree on every impulse of the 9x9 torus") {
  for (const auto& bank : {haar_bank(3, 2), acc4_bank()}) {
    for (int J : {1, 2}) {
      for (std::size_t i = 0; i < 81; ++i) {
        Tensor<Rational> y({9, 9});
        y[i] = Rational(1);
        const auto f = decompose_fast(y, bank, J);
        const auto d = decompose_direct(y, bank, J);
        CHECK(same(f, d));
        CHECK(reconstruct_fast(f, bank) == y);
        CHECK(reconstruct_direct(d, bank) == y);
      }
    }
  }
}

TEST_CASE("impulse on a 27x27 torus, accuracy-four bank") {
  const auto bank = acc4_bank();
  Tensor<Rational> y({27, 27});
  y.at(MultiIndex{0, 0}) = Rational(1);
  CHECK(same(decompose_fast(y, bank, 1), decompose_direct(y, bank, 1)));
  CHECK(same(decompose_fast(y, bank, 3), decompose_direct(y, bank, 3)));
}

TEST_CASE("fast transform across dilations and dimensions") {
  std::mt19937 rng(6);
  for (auto [p, n, side] : {std::tuple{2, 1, 8}, {2, 2, 4}, {2, 3, 4}, {3, 1, 9}, {3, 3, 3}, {5, 2, 5}}) {
    const auto bank = build_pcs_bank(corpus::haar(p), oracle::random_interpolatory(p, rng, 5),
                                     static_cast<std::size_t>(n), p == 2 ? Convention::Standard : Convention::Centered);
    Tensor<Rational> y(std::vector<std::size_t>(static_cast<std::size_t>(n), static_cast<std::size_t>(side)));
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = oracle::random_rational(rng);
    const auto f = decompose_fast(y, bank, 1);
    CHECK(same(f, decompose_direct(y, bank, 1)));
    CHECK(reconstruct_fast(f, bank) == y);
  }
}

TEST_CASE("exact round trip on random rational data, two levels") {
  std::mt19937 rng(13);
  const auto bank = haar_bank(3, 2);
  Tensor<Rational> y({9, 9});
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = oracle::random_rational(rng, 50, 30);
  CHECK(reconstruct_fast(decompose_fast(y, bank, 2), bank) == y);
  CHECK(reconstruct_direct(decompose_direct(y, bank, 2), bank) == y);
}

TEST_CASE("float round trip on 81x81 data") {
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> u(-100, 100);
  for (const auto& bank : {haar_bank(3, 2), acc4_bank()}) {
    Tensor<double> y({81, 81});
    double norm = 0;
    for (auto& v : y.data()) {
      v = u(rng);
      norm = std::max(norm, std::abs(v));
    }
    const auto back = reconstruct_fast(decompose_fast(y, bank, 2), bank);
    double err = 0;
    for (std::size_t i = 0; i < y.size(); ++i) err = std::max(err, std::abs(back[i] - y[i]));
    CHECK(err <= 1e-12 * norm);
  }
}

TEST_CASE("zero details give piecewise-constant upsampling for Haar") {
  const auto bank = haar_bank(3, 2);
  MultiresCoeffs<Rational> c;
  c.levels = 1;
  c.coarse = Tensor<Rational>({3, 3});
  for (std::size_t i = 0; i < 9; ++i) c.coarse[i] = Rational(static_cast<std::int64_t>(i) + 1);
  c.details.assign(1, std::vector<Tensor<Rational>>(8, Tensor<Rational>({3, 3})));
  const auto y = reconstruct_fast(c, bank);
  CHECK(y == reconstruct_direct(c, bank));
  for (std::size_t i = 0; i < y.size(); ++i) {
    const MultiIndex x = y.coords(i);
    // nearest coarse sample under centered rounding
    MultiIndex k(2);
    for (std::size_t j = 0; j < 2; ++j) k[j] = (x[j] + 1) / 3;
    CHECK(y[i] == c.coarse.at(k));
  }
}

TEST_CASE("multiplication counts match the closed form") {
  for (auto [p, n, side] : {std::tuple{2, 2, 8}, {3, 2, 27}, {3, 3, 9}, {5, 2, 25}}) {
    const auto bank = haar_bank(p, static_cast<std::size_t>(n));
    const std::vector<std::size_t> shape(static_cast<std::size_t>(n), static_cast<std::size_t>(side));
    for (int J : {1, 2}) {
      const OpCount oc = count_ops(bank, shape, J);
      CHECK(Rational(static_cast<std::int64_t>(oc.multiplicative_ops)) == oc.predicted);
      CHECK(oc.alpha == p);
      CHECK(oc.beta == p);
      CHECK(oc.alpha_tilde == p - 1);
      CHECK(oc.per_sample_constant <= Rational(4 * p - 1));
      // additivity over levels
      std::uint64_t N = oc.samples, sum = 0;
      for (auto c : oc.per_level) {
        CHECK(Rational(static_cast<std::int64_t>(c)) == oc.per_sample_constant * Rational(static_cast<std::int64_t>(N)));
        N /= static_cast<std::uint64_t>(bank.sys.q());
        sum += c;
      }
      CHECK(sum == oc.multiplicative_ops);
    }
  }
  const OpCount oc = count_ops(acc4_bank(), {27, 27}, 1);
  CHECK(oc.alpha == 3);
  CHECK(oc.beta == 9);
  CHECK(oc.alpha_tilde == 2);
  CHECK(oc.per_sample_constant == Rational(18 * 8 + 4 * 8 + 6, 9));
  CHECK(oc.per_sample_constant <= Rational(21));
  CHECK(Rational(static_cast<std::int64_t>(oc.multiplicative_ops)) == oc.predicted);
}

TEST_CASE("dyadic coset sum constant stays below the tensor-product constant") {
  for (std::int64_t alpha = 2; alpha <= 12; ++alpha) {
    for (std::int64_t beta = 1; beta <= 12; ++beta) {
      for (std::int64_t n = 2; n <= 8; ++n) CHECK(alpha + 2 * beta + 2 <= (alpha + beta) * n);
    }
  }
  for (std::size_t n : {2u, 3u}) {
    for (const auto& H : {corpus::haar_standard(2), corpus::dd4()}) {
      const auto bank = build_pcs_bank(corpus::haar_standard(2), H, n, Convention::Standard);
      const OpCount oc = count_ops(bank, std::vector<std::size_t>(n, 8), 1);
      CHECK(oc.per_sample_constant <= oc.tensor_model);
    }
  }
}

TEST_CASE("transform preconditions") {
  const auto bank = haar_bank(3, 2);
  Tensor<double> bad({10, 9});
  try {
    decompose_fast(bad, bank, 1);
    FAIL("expected ShapeNotDivisible");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ShapeNotDivisible);
    CHECK(std::string(e.what()).find("axis 0") != std::string::npos);
  }
  CHECK(code_of([&] { decompose_fast(Tensor<double>({9, 9}), bank, 3); }) == ErrorCode::ShapeNotDivisible);
  CHECK(code_of([&] { decompose_fast(Tensor<double>({9}), bank, 1); }) == ErrorCode::DimensionMismatch);

  auto general = build_general(bank.tau, bank.tau_d, bank.sys);
  CHECK(code_of([&] { decompose_fast(Tensor<double>({9, 9}), general, 1); }) == ErrorCode::WrongProvenance);
  // the direct route accepts any bank
  CHECK(decompose_direct(Tensor<double>({9, 9}), general, 1).levels == 1);

  auto c = decompose_fast(Tensor<double>({9, 9}), bank, 1);
  c.details[0].pop_back();
  CHECK(code_of([&] { reconstruct_fast(c, bank); }) == ErrorCode::ShapeMismatch);
  auto d = decompose_fast(Tensor<double>({9, 9}), bank, 2);
  d.details[1][0] = Tensor<double>({1, 3});
  CHECK(code_of([&] { reconstruct_fast(d, bank); }) == ErrorCode::ShapeMismatch);
}

TEST_CASE("results do not depend on the worker count") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  const auto bank = acc4_bank();
  Tensor<double> y({81, 81});
  for (auto& v : y.data()) v = u(rng);
  setenv("PCSWAVE_THREADS", "1", 1);
  CHECK(worker_count() == 1);
  const auto a = decompose_fast(y, bank, 2);
  setenv("PCSWAVE_THREADS", "4", 1);
  const auto b = decompose_fast(y, bank, 2);
  unsetenv("PCSWAVE_THREADS");
  CHECK(same(a, b));
}
