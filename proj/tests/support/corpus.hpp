#pragma once

#include "pcswave/filter.hpp"

#include <map>

namespace corpus {

using pcs::Rational;

inline pcs::Filter1D haar_centered(std::int64_t p) {
  std::map<std::int64_t, Rational> t;
  for (std::int64_t k = -(p - 1) / 2; k <= (p - 1) / 2; ++k) t[k] = Rational(1);
  return pcs::Filter1D(p, t);
}

inline pcs::Filter1D haar_standard(std::int64_t p) {
  std::map<std::int64_t, Rational> t;
  for (std::int64_t k = 0; k < p; ++k) t[k] = Rational(1);
  return pcs::Filter1D(p, t);
}

// Haar filter on the representatives the coset system uses for p
inline pcs::Filter1D haar(std::int64_t p) { return p == 2 ? haar_standard(2) : haar_centered(p); }

// interpolatory, dilation 3, accuracy 4
inline pcs::Filter1D u_acc4() {
  return pcs::Filter1D(3, {{0, Rational(1)},
                           {1, Rational(60, 81)},
                           {-1, Rational(60, 81)},
                           {2, Rational(30, 81)},
                           {-2, Rational(30, 81)},
                           {4, Rational(-5, 81)},
                           {-4, Rational(-5, 81)},
                           {5, Rational(-4, 81)},
                           {-5, Rational(-4, 81)}});
}

// four-point interpolatory dyadic filter
inline pcs::Filter1D dd4() {
  return pcs::Filter1D(2, {{0, Rational(1)},
                           {1, Rational(9, 16)},
                           {-1, Rational(9, 16)},
                           {3, Rational(-1, 16)},
                           {-3, Rational(-1, 16)}});
}

inline pcs::Filter1D delta_lowpass(std::int64_t p) { return pcs::Filter1D(p, {{0, Rational(p)}}); }

}  // namespace corpus
