#include "doctest.h"

#include "../support/corpus.hpp"
#include "../support/oracles.hpp"
#include "pcswave/error.hpp"
#include "pcswave/filter.hpp"

#include <random>

using namespace pcs;

namespace {

FilterND all_ones_3x3() {
  FilterND f(3, 2);
  for (std::int64_t a = -1; a <= 1; ++a) {
    for (std::int64_t b = -1; b <= 1; ++b) f.add(MultiIndex{a, b}, Rational(1));
  }
  return f;
}

}  // namespace

TEST_CASE("filter storage drops zeros and checks dimension") {
  FilterND f(3, 2);
  f.add(MultiIndex{1, 0}, Rational(2));
  f.add(MultiIndex{1, 0}, Rational(-2));
  CHECK(f.support_size() == 0);
  CHECK_THROWS_AS(f.add(MultiIndex{1}, Rational(1)), Error);
  CHECK_THROWS_AS(FilterND(3, 2) += FilterND(5, 2), Error);
  CHECK_THROWS_AS(Filter1D{all_ones_3x3()}, Error);
}

TEST_CASE("mask values at lattice frequencies") {
  const FilterND box = all_ones_3x3();
  CHECK(mask_eval(box, MultiIndex{0, 0}) == Cyclotomic::constant(3, Rational(1)));
  CHECK(mask_eval(corpus::haar_centered(3).nd(), MultiIndex{1}).is_zero());
  CHECK(mask_eval(corpus::u_acc4().nd(), MultiIndex{1}).is_zero());
  CHECK(mask_eval(corpus::u_acc4().nd(), MultiIndex{2}).is_zero());

  std::mt19937 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const auto f = oracle::random_lowpass(5, rng, 4);
    for (std::int64_t g = 0; g < 5; ++g) {
      const auto exact = oracle::to_complex(mask_eval(f.nd(), MultiIndex{g}));
      const auto num = oracle::mask1d_at(f, 2 * std::numbers::pi * double(g) / 5);
      CHECK(std::abs(exact - num) < 1e-9);
    }
    CHECK(mask_eval(f.nd(), MultiIndex{0}) == Cyclotomic::constant(5, Rational(1)));
    CHECK(is_lowpass(f.nd()));
  }
}

TEST_CASE("interpolatory condition") {
  CHECK(is_interpolatory(all_ones_3x3()));
  CHECK(is_interpolatory(corpus::u_acc4().nd()));
  FilterND shifted(3, 2);
  const FilterND box = all_ones_3x3();
  for (const auto& [k, v] : box.taps()) shifted.add(k + MultiIndex{2, 0}, v);
  CHECK(!is_interpolatory(shifted));
  CHECK(interpolatory_defect(shifted, "h").value() == "h(0,0) = 0 != 1");

  const Filter1D bad(3, {{-1, Rational(1)}, {0, Rational(1)}, {1, Rational(2, 3)}, {3, Rational(1, 3)}});
  CHECK(interpolatory_defect(bad.nd(), "H").value() == "H(3) = 1/3 != 0");
}

TEST_CASE("biorthogonality of lowpass pairs") {
  const FilterND box = all_ones_3x3();
  CHECK(is_biorthogonal(box, box));
  CHECK(is_biorthogonal(corpus::haar_standard(3).nd(), corpus::haar_standard(3).nd()));
  CHECK(is_biorthogonal(corpus::dd4().nd(), corpus::delta_lowpass(2).nd()));
  CHECK(!is_biorthogonal(corpus::dd4().nd(), corpus::dd4().nd()));
  CHECK_THROWS_AS(is_biorthogonal(box, corpus::haar_centered(3).nd()), Error);

  // exact decision agrees with the numeric frequency-domain identity
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> w(-3, 3);
  for (int trial = 0; trial < 40; ++trial) {
    const auto h = oracle::random_lowpass(3, rng, 2).nd();
    const auto g = trial % 2 ? h : oracle::random_lowpass(3, rng, 2).nd();
    const bool exact = is_biorthogonal(h, g);
    CHECK(exact == is_biorthogonal(g, h));
    bool numeric = true;
    for (int s = 0; s < 5; ++s) {
      numeric = numeric && std::abs(oracle::coset_product_sum(h, g, {w(rng)}) - 1.0) < 1e-9;
    }
    CHECK(exact == numeric);
  }
}

TEST_CASE("diagnostics of reference filters") {
  const auto haar = diagnostics(corpus::haar_centered(3).nd());
  CHECK(haar.is_lowpass);
  CHECK(haar.is_interpolatory);
  CHECK(haar.accuracy == 1);
  CHECK(haar.vanishing_moments == 0);
  CHECK(haar.flatness == 2);

  const auto u = diagnostics(corpus::u_acc4().nd());
  CHECK(u.accuracy == 4);
  CHECK(u.flatness == 4);

  const auto dd = diagnostics(corpus::dd4().nd());
  CHECK(dd.accuracy == 4);
  CHECK(dd.flatness == 4);

  // z^nu - 1 with nu = (1,0), dilation 3
  FilterND t(3, 2);
  t.add(MultiIndex{1, 0}, Rational(9));
  t.add(MultiIndex{0, 0}, Rational(-9));
  const auto dt = diagnostics(t);
  CHECK(dt.vanishing_moments == 1);
  CHECK(dt.is_wavelet_mask());
  CHECK(dt.support_size == 2);
}

TEST_CASE("diagnostics saturate at the search bound") {
  FilterND delta(3, 1);
  delta.add(MultiIndex{0}, Rational(3));
  const auto d = diagnostics(delta, 5);
  CHECK(d.flatness == 5);
  CHECK(d.flatness_saturated);
  CHECK(d.max_order_searched == 5);
}

TEST_CASE("wavelet mask iff zero tap sum") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    FilterND f(3, 2);
    for (int j = 0; j < 4; ++j) {
      f.add(MultiIndex{std::int64_t(rng() % 5) - 2, std::int64_t(rng() % 5) - 2}, oracle::random_rational(rng));
    }
    if (trial % 2) f.add(MultiIndex{0, 0}, -f.tap_sum());
    const auto d = diagnostics(f, 6);
    CHECK((d.vanishing_moments >= 1) == f.tap_sum().is_zero());
    CHECK((d.vanishing_moments >= 1) == is_highpass(f));
  }
}

TEST_CASE("interpolatory filters: accuracy never exceeds flatness, equal for dilation 2") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const auto f2 = oracle::random_interpolatory(2, rng, 5);
    const auto d2 = diagnostics(f2.nd(), 12);
    CHECK(d2.accuracy == d2.flatness);
    for (std::int64_t p : {3, 5}) {
      const auto f = trial % 2 ? oracle::random_interpolatory(p, rng, 6)
                               : oracle::random_interpolatory_accurate(p, rng, 2);
      const auto d = diagnostics(f.nd(), 12);
      CHECK(d.accuracy <= d.flatness);
    }
  }
}

TEST_CASE("multi-indices of a given order") {
  CHECK(multi_indices_of_order(2, 0).size() == 1);
  CHECK(multi_indices_of_order(2, 3).size() == 4);
  CHECK(multi_indices_of_order(3, 2).size() == 6);
}
