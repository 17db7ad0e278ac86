#include "doctest.h"

#include "../support/corpus.hpp"
#include "../support/oracles.hpp"
#include "pcswave/coset_sum.hpp"
#include "pcswave/error.hpp"
#include "pcswave/polyphase.hpp"

#include <random>

using namespace pcs;

namespace {

CosetSystem system_for(std::int64_t p, std::size_t n) {
  return CosetSystem(p, n, p == 2 ? Convention::Standard : Convention::Centered);
}

// sum_nu z^nu H_nu(z^p)
LaurentPoly recombine(const std::vector<LaurentPoly>& comps, const CosetSystem& sys) {
  LaurentPoly acc(sys.dim());
  for (std::size_t i = 0; i < comps.size(); ++i) acc += comps[i].dilated(sys.p()).shifted(sys.gamma()[i]);
  return acc;
}

}  // namespace

TEST_CASE("laurent polynomial algebra") {
  const LaurentPoly x = LaurentPoly::monomial(MultiIndex{1, 0}, Rational(2));
  const LaurentPoly y = LaurentPoly::monomial(MultiIndex{0, -1}, Rational(1, 3));
  const LaurentPoly xy = x * y;
  CHECK(xy.coeff(MultiIndex{1, -1}) == Rational(2, 3));
  CHECK((x - x).is_zero());
  CHECK(x.conj().coeff(MultiIndex{-1, 0}) == Rational(2));
  CHECK(x.dilated(3).coeff(MultiIndex{3, 0}) == Rational(2));
  CHECK(y.shifted(MultiIndex{1, 1}).coeff(MultiIndex{1, 0}) == Rational(1, 3));
  LaurentPoly u(1);
  u.add_term(MultiIndex{2}, Rational(5));
  CHECK(u.embedded_along(MultiIndex{1, -1}).coeff(MultiIndex{2, -2}) == Rational(5));
  CHECK((x + y) * (x - y) == x * x - y * y);
}

TEST_CASE("centered Haar, dilation 3: every component is 1/3") {
  const CosetSystem line(3, 1, Convention::Centered);
  const auto comps = polyphase_decompose(corpus::haar_centered(3).nd(), line, Side::Synthesis);
  REQUIRE(comps.size() == 3);
  for (const auto& c : comps) CHECK(c == LaurentPoly::constant(1, Rational(1, 3)));
}

TEST_CASE("decomposition round trips and recombines to the mask") {
  std::mt19937 rng(31);
  for (std::int64_t p : {2, 3, 5}) {
    for (std::size_t n : {1u, 2u}) {
      const CosetSystem sys = system_for(p, n);
      for (int t = 0; t < 3; ++t) {
        const FilterND h = prime_coset_sum(oracle::random_lowpass(p, rng, 4), sys);
        const auto syn = polyphase_decompose(h, sys, Side::Synthesis);
        const auto ana = polyphase_decompose(h, sys, Side::Analysis);
        CHECK(polyphase_recompose(syn, sys, Side::Synthesis) == h);
        CHECK(polyphase_recompose(ana, sys, Side::Analysis) == h);
        CHECK(recombine(syn, sys) == mask_poly(h));
        for (std::size_t i = 0; i < syn.size(); ++i) CHECK(ana[i] == syn[i].conj());
      }
    }
  }
}

TEST_CASE("interpolatory filters have constant zeroth component 1/q") {
  std::mt19937 rng(5);
  for (std::int64_t p : {2, 3, 5}) {
    const CosetSystem sys = system_for(p, 2);
    const FilterND h = prime_coset_sum(oracle::random_interpolatory(p, rng, 5), sys);
    CHECK(polyphase_decompose(h, sys, Side::Synthesis)[0] == LaurentPoly::constant(2, Rational(1, sys.q())));
  }
}

TEST_CASE("coset sum components from the 1-D components") {
  std::mt19937 rng(77);
  for (std::int64_t p : {2, 3, 5}) {
    for (std::size_t n : {1u, 2u, 3u}) {
      if (p == 5 && n == 3) continue;
      const CosetSystem sys = system_for(p, n);
      std::vector<Filter1D> filters{corpus::haar(p), oracle::random_lowpass(p, rng, 5),
                                    oracle::random_interpolatory(p, rng, 6)};
      if (p == 3) filters.push_back(corpus::u_acc4());
      if (p == 2) filters.push_back(corpus::dd4());
      for (const auto& H : filters) {
        const auto direct = polyphase_decompose(prime_coset_sum(H, sys), sys, Side::Synthesis);
        for (std::size_t i = 1; i < sys.gamma().size(); ++i) {
          CHECK(coset_sum_polyphase(H, sys, sys.gamma()[i]) == direct[i]);
        }
      }
    }
  }
  const CosetSystem sys = system_for(3, 2);
  CHECK_THROWS_AS(coset_sum_polyphase(corpus::haar_centered(3), sys, MultiIndex{0, 0}), Error);
}

TEST_CASE("dyadic coset sum components come from a single term") {
  const CosetSystem sys(2, 2, Convention::Standard);
  const Filter1D H = corpus::dd4();
  const CosetSystem line(2, 1, Convention::Standard);
  const LaurentPoly u1 = polyphase_decompose(H.nd(), line, Side::Synthesis)[1];
  for (std::size_t i = 1; i < sys.gamma().size(); ++i) {
    const MultiIndex& nu = sys.gamma()[i];
    // only l = 1, eta(1, nu) = nu, phase 0; factor 1/(p-1)p^(n-1) = 1/2
    CHECK(coset_sum_polyphase(H, sys, nu) == u1.embedded_along(nu) * Rational(1, 2));
  }
}

TEST_CASE("coset sum component at the origin frequency matches the mask") {
  std::mt19937 rng(9);
  for (std::int64_t p : {3, 5}) {
    const CosetSystem sys = system_for(p, 2);
    const auto H = oracle::random_interpolatory(p, rng, 6);
    const FilterND h = prime_coset_sum(H, sys);
    Rational total = Rational(1, sys.q());
    for (std::size_t i = 1; i < sys.gamma().size(); ++i) {
      const LaurentPoly comp = coset_sum_polyphase(H, sys, sys.gamma()[i]);
      Rational s;
      for (const auto& [k, c] : comp.terms()) s += c;
      total += s;
    }
    CHECK(total == Rational(1));
  }
}

TEST_CASE("analysis/synthesis matrices invert up to 1/q") {
  const auto check = [](const FilterND& g, const FilterND& h, const CosetSystem& sys) {
    const auto [A, S] = build_A_S(g, h, sys);
    CHECK(A.rows() == static_cast<std::size_t>(sys.q()));
    CHECK(matmul_check(S, A, sys.q()));
    const auto [U, L] = triangular_factors(g, h, sys);
    CHECK(U * L == A);
  };
  for (std::int64_t p : {2, 3, 5}) {
    for (std::size_t n : {1u, 2u}) {
      const CosetSystem sys = system_for(p, n);
      const FilterND haar = prime_coset_sum(corpus::haar(p), sys);
      check(haar, haar, sys);
    }
  }
  const CosetSystem sys = system_for(3, 2);
  check(prime_coset_sum(corpus::haar_centered(3), sys), prime_coset_sum(corpus::u_acc4(), sys), sys);

  std::mt19937 rng(41);
  for (int t = 0; t < 5; ++t) {
    const FilterND g = prime_coset_sum(oracle::random_lowpass(3, rng, 3), sys);
    const FilterND h = prime_coset_sum(oracle::random_interpolatory(3, rng, 4), sys);
    check(g, h, sys);
  }
}

TEST_CASE("biorthogonal pairs have no defect") {
  const CosetSystem sys = system_for(3, 2);
  const FilterND haar = prime_coset_sum(corpus::haar_centered(3), sys);
  CHECK(biorthogonality_defect(haar, haar, sys).is_zero());
  const auto [A, S] = build_A_S(haar, haar, sys);
  CHECK(A.at(0, 0) == polyphase_decompose(haar, sys, Side::Analysis)[0]);

  const FilterND u = prime_coset_sum(corpus::u_acc4(), sys);
  CHECK(!biorthogonality_defect(haar, u, sys).is_zero());
}

TEST_CASE("perturbed completion fails the product check") {
  const CosetSystem sys = system_for(3, 2);
  const FilterND g = prime_coset_sum(corpus::haar_centered(3), sys);
  const FilterND h = prime_coset_sum(corpus::u_acc4(), sys);
  auto [A, S] = build_A_S(g, h, sys);
  // perturb one tap of g inside the analysis matrix
  A.at(0, 1) += LaurentPoly::constant(2, Rational(1, 1000 * sys.q()));
  CHECK(!matmul_check(S, A, sys.q()));
  CHECK(!product_residuals(S, A, sys.q()).empty());
}

TEST_CASE("non-interpolatory synthesis lowpass is rejected") {
  const CosetSystem sys = system_for(3, 1);
  const FilterND g = corpus::haar_centered(3).nd();
  const FilterND bad =
      Filter1D(3, {{-1, Rational(1)}, {0, Rational(1)}, {1, Rational(2, 3)}, {3, Rational(1, 3)}}).nd();
  try {
    build_A_S(g, bad, sys);
    FAIL("expected NotInterpolatory");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotInterpolatory);
  }
}

TEST_CASE("character sums over the representatives") {
  for (std::int64_t p : {2, 3, 5}) {
    for (std::size_t n : {1u, 2u, 3u}) {
      const CosetSystem sys = system_for(p, n);
      for (const auto& g : box_points(n, 0, p - 1)) {
        Cyclotomic s(p);
        for (const auto& nu : sys.gamma()) s += cyc_root(p, g.dot(nu));
        const bool zero = g.is_zero();
        CHECK(s == Cyclotomic::constant(p, Rational(zero ? sys.q() : 0)));
        // dual sum over frequencies for a fixed point
        Cyclotomic t(p);
        for (const auto& w : box_points(n, 0, p - 1)) t += cyc_root(p, w.dot(g));
        CHECK(t == s);
      }
    }
  }
}
