#include "pcswave/polyphase.hpp"

#include "pcswave/error.hpp"

#include <stdexcept>

namespace pcs {

namespace {

void check_system(const FilterND& f, const CosetSystem& sys) {
  if (f.p() != sys.p() || f.dim() != sys.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "filter does not match the coset system");
  }
}

}  // namespace

std::vector<LaurentPoly> polyphase_decompose(const FilterND& f, const CosetSystem& sys, Side side) {
  check_system(f, sys);
  const Rational inv_q(1, sys.q());
  std::vector<LaurentPoly> out(sys.gamma().size(), LaurentPoly(sys.dim()));
  for (const auto& [x, v] : f.taps()) {
    const std::size_t idx = sys.index_of(x);
    const MultiIndex& nu = sys.gamma()[idx];
    const MultiIndex k = side == Side::Synthesis ? (x - nu).divided_by(sys.p())
                                                 : (nu - x).divided_by(sys.p());
    out[idx].add_term(k, v * inv_q);
  }
  return out;
}

FilterND polyphase_recompose(const std::vector<LaurentPoly>& components, const CosetSystem& sys,
                             Side side) {
  if (components.size() != sys.gamma().size()) {
    throw Error(ErrorCode::DimensionMismatch, "need one polyphase component per coset");
  }
  const Rational q(sys.q());
  FilterND f(sys.p(), sys.dim());
  for (std::size_t i = 0; i < components.size(); ++i) {
    const MultiIndex& nu = sys.gamma()[i];
    for (const auto& [k, c] : components[i].terms()) {
      const MultiIndex pk = sys.p() * k;
      f.add(side == Side::Synthesis ? nu + pk : nu - pk, c * q);
    }
  }
  return f;
}

LaurentPoly mask_poly(const FilterND& f) {
  LaurentPoly out(f.dim());
  const Rational inv_q(1, f.q());
  for (const auto& [k, v] : f.taps()) out.add_term(k, v * inv_q);
  return out;
}

FilterND filter_from_mask(const LaurentPoly& mask, std::int64_t p) {
  FilterND f(p, mask.vars());
  const Rational q(f.q());
  for (const auto& [k, c] : mask.terms()) f.add(k, c * q);
  return f;
}

LaurentPoly coset_sum_polyphase(const Filter1D& H, const CosetSystem& sys, const MultiIndex& nu) {
  if (H.p() != sys.p()) throw Error(ErrorCode::DimensionMismatch, "filter dilation");
  if (nu.is_zero() || !sys.in_gamma(nu)) {
    throw Error(ErrorCode::DomainError, "coset_sum_polyphase needs nu in Gamma' (got " + nu.str() + ")");
  }
  const std::int64_t p = sys.p();
  const CosetSystem line(p, 1, sys.convention());
  const auto U = polyphase_decompose(H.nd(), line, Side::Synthesis);

  LaurentPoly acc(sys.dim());
  for (std::int64_t l : sys.fp()) {
    if (l == 0) continue;
    const MultiIndex eta = sys.eta(l, nu);
    const MultiIndex phase = l * eta - nu;
    if (!phase.divisible_by(p)) {
      throw std::logic_error("eta(l,nu)*l - nu not divisible by p for l = " + std::to_string(l) +
                             ", nu = " + nu.str());
    }
    // U is indexed by the line system's representatives; U_l lives at index of l.
    const LaurentPoly& Ul = U[line.index_of(MultiIndex{l})];
    if (line.gamma()[line.index_of(MultiIndex{l})][0] != l) {
      throw std::logic_error("F_p and the 1-D coset representatives disagree");
    }
    acc += Ul.embedded_along(eta).shifted(phase.divided_by(p));
  }
  acc *= Rational(1) / Rational((p - 1) * (sys.q() / p));
  return acc;
}

PolyphaseMatrix::PolyphaseMatrix(std::size_t rows, std::size_t cols, std::size_t vars)
    : rows_(rows), cols_(cols), vars_(vars), entries_(rows * cols, LaurentPoly(vars)) {}

PolyphaseMatrix PolyphaseMatrix::scaled_identity(std::size_t size, std::size_t vars,
                                                 const Rational& s) {
  PolyphaseMatrix m(size, size, vars);
  for (std::size_t i = 0; i < size; ++i) m.at(i, i) = LaurentPoly::constant(vars, s);
  return m;
}

PolyphaseMatrix operator*(const PolyphaseMatrix& a, const PolyphaseMatrix& b) {
  if (a.cols_ != b.rows_ || a.vars_ != b.vars_) {
    throw Error(ErrorCode::DimensionMismatch, "polyphase matrices are not conformable");
  }
  PolyphaseMatrix out(a.rows_, b.cols_, a.vars_);
  // Column-sparse walk: most banks have very sparse analysis matrices.
  for (std::size_t k = 0; k < a.cols_; ++k) {
    for (std::size_t j = 0; j < b.cols_; ++j) {
      const LaurentPoly& bkj = b.at(k, j);
      if (bkj.is_zero()) continue;
      for (std::size_t i = 0; i < a.rows_; ++i) {
        const LaurentPoly& aik = a.at(i, k);
        if (aik.is_zero()) continue;
        out.at(i, j) += aik * bkj;
      }
    }
  }
  return out;
}

LaurentPoly biorthogonality_defect(const FilterND& g, const FilterND& h, const CosetSystem& sys) {
  const auto G = polyphase_decompose(g, sys, Side::Analysis);
  const auto H = polyphase_decompose(h, sys, Side::Synthesis);
  LaurentPoly B = LaurentPoly::constant(sys.dim(), Rational(1, sys.q()));
  for (std::size_t i = 0; i < G.size(); ++i) B -= G[i] * H[i];
  return B;
}

AnalysisSynthesisPair build_A_S(const FilterND& g, const FilterND& h, const CosetSystem& sys) {
  check_system(g, sys);
  check_system(h, sys);
  if (auto defect = interpolatory_defect(h, "h")) {
    throw Error(ErrorCode::NotInterpolatory, "h is not interpolatory: " + *defect);
  }
  const auto G = polyphase_decompose(g, sys, Side::Analysis);
  const auto H = polyphase_decompose(h, sys, Side::Synthesis);
  const std::size_t q = G.size();
  const std::size_t n = sys.dim();
  const Rational qr(sys.q());
  const Rational inv_q(1, sys.q());
  const LaurentPoly B = biorthogonality_defect(g, h, sys);

  PolyphaseMatrix A(q, q, n);
  PolyphaseMatrix S(q, q, n);
  A.at(0, 0) = G[0] + B * qr;
  S.at(0, 0) = LaurentPoly::constant(n, inv_q);
  for (std::size_t j = 1; j < q; ++j) {
    A.at(0, j) = G[j];
    A.at(j, 0) = H[j] * (-qr);
    A.at(j, j) = LaurentPoly::constant(n, Rational(1));
    S.at(0, j) = G[j] * (-inv_q);
    S.at(j, 0) = H[j];
  }
  for (std::size_t i = 1; i < q; ++i) {
    for (std::size_t j = 1; j < q; ++j) {
      LaurentPoly e = (H[i] * G[j]) * Rational(-1);
      if (i == j) e += LaurentPoly::constant(n, inv_q);
      S.at(i, j) = std::move(e);
    }
  }
  return {std::move(A), std::move(S)};
}

std::pair<PolyphaseMatrix, PolyphaseMatrix> triangular_factors(const FilterND& g,
                                                               const FilterND& h,
                                                               const CosetSystem& sys) {
  check_system(g, sys);
  check_system(h, sys);
  const auto G = polyphase_decompose(g, sys, Side::Analysis);
  const auto H = polyphase_decompose(h, sys, Side::Synthesis);
  const std::size_t q = G.size();
  const std::size_t n = sys.dim();
  PolyphaseMatrix upper = PolyphaseMatrix::scaled_identity(q, n, Rational(1));
  PolyphaseMatrix lower = PolyphaseMatrix::scaled_identity(q, n, Rational(1));
  for (std::size_t j = 1; j < q; ++j) {
    upper.at(0, j) = G[j];
    lower.at(j, 0) = H[j] * Rational(-sys.q());
  }
  return {std::move(upper), std::move(lower)};
}

std::vector<Residual> product_residuals(const PolyphaseMatrix& S, const PolyphaseMatrix& A,
                                        std::int64_t q) {
  PolyphaseMatrix prod = S * A;
  std::vector<Residual> out;
  const Rational inv_q(1, q);
  for (std::size_t i = 0; i < prod.rows(); ++i) {
    for (std::size_t j = 0; j < prod.cols(); ++j) {
      LaurentPoly r = prod.at(i, j);
      if (i == j) r -= LaurentPoly::constant(prod.vars(), inv_q);
      if (!r.is_zero()) out.push_back({i, j, std::move(r)});
    }
  }
  return out;
}

bool matmul_check(const PolyphaseMatrix& S, const PolyphaseMatrix& A, std::int64_t q) {
  if (S.cols() != A.rows() || S.rows() != A.cols()) return false;
  return product_residuals(S, A, q).empty();
}

PolyphaseMatrix analysis_matrix(const std::vector<const FilterND*>& analysis,
                                const CosetSystem& sys) {
  const std::size_t q = sys.gamma().size();
  if (analysis.size() != q) throw Error(ErrorCode::DimensionMismatch, "need q analysis filters");
  PolyphaseMatrix A(q, q, sys.dim());
  for (std::size_t r = 0; r < q; ++r) {
    auto comps = polyphase_decompose(*analysis[r], sys, Side::Analysis);
    for (std::size_t c = 0; c < q; ++c) A.at(r, c) = std::move(comps[c]);
  }
  return A;
}

PolyphaseMatrix synthesis_matrix(const std::vector<const FilterND*>& synthesis,
                                 const CosetSystem& sys) {
  const std::size_t q = sys.gamma().size();
  if (synthesis.size() != q) throw Error(ErrorCode::DimensionMismatch, "need q synthesis filters");
  PolyphaseMatrix S(q, q, sys.dim());
  for (std::size_t c = 0; c < q; ++c) {
    auto comps = polyphase_decompose(*synthesis[c], sys, Side::Synthesis);
    for (std::size_t r = 0; r < q; ++r) S.at(r, c) = std::move(comps[r]);
  }
  return S;
}

}  // namespace pcs
