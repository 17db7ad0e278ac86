#pragma once

#include "pcswave/filter.hpp"
#include "pcswave/lattice.hpp"
#include "pcswave/laurent.hpp"

#include <utility>
#include <vector>

namespace pcs {

enum class Side { Synthesis, Analysis };

/// Polyphase components indexed like sys.gamma():
///   synthesis: H_nu(w) = (1/q) sum_k h(nu + p k) z^k
///   analysis:  G_nu(w) = (1/q) sum_k g(nu - p k) z^k   (conjugate of the synthesis form)
std::vector<LaurentPoly> polyphase_decompose(const FilterND& f, const CosetSystem& sys, Side side);

/// Inverse of polyphase_decompose.
FilterND polyphase_recompose(const std::vector<LaurentPoly>& components, const CosetSystem& sys,
                             Side side);

/// The normalized mask (1/q) sum_k h(k) z^k as a Laurent polynomial.
LaurentPoly mask_poly(const FilterND& f);
/// Filter whose mask is the given Laurent polynomial (taps = q * coefficients).
FilterND filter_from_mask(const LaurentPoly& mask, std::int64_t p);

/// Synthesis polyphase component nu in Gamma' of the prime coset sum of H,
/// assembled from the 1-D polyphase components U_l(xi) = (1/p) sum_j H(l + p j) z^j:
///
///   H_nu(w) = 1/((p-1) p^{n-1}) * sum_{l in F_p'} z^{(eta(l,nu) l - nu)/p} U_l(w . eta(l,nu))
///
/// Throws DomainError for nu = 0.
LaurentPoly coset_sum_polyphase(const Filter1D& H, const CosetSystem& sys, const MultiIndex& nu);

/// q x q matrix of Laurent polynomials; rows/cols follow sys.gamma() order.
class PolyphaseMatrix {
 public:
  PolyphaseMatrix(std::size_t rows, std::size_t cols, std::size_t vars);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t vars() const { return vars_; }

  LaurentPoly& at(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const LaurentPoly& at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  static PolyphaseMatrix scaled_identity(std::size_t size, std::size_t vars, const Rational& s);

  friend PolyphaseMatrix operator*(const PolyphaseMatrix& a, const PolyphaseMatrix& b);
  friend bool operator==(const PolyphaseMatrix& a, const PolyphaseMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::size_t vars_;
  std::vector<LaurentPoly> entries_;
};

/// B(w) = 1/q - G(w) H(w) for analysis lowpass g and synthesis lowpass h.
LaurentPoly biorthogonality_defect(const FilterND& g, const FilterND& h, const CosetSystem& sys);

struct AnalysisSynthesisPair {
  PolyphaseMatrix A;
  PolyphaseMatrix S;
};

/// The analysis/synthesis polyphase matrices of the completion of (g, h):
///   A = [[G_0 + q B, G~], [-q H~, I]],  S = [[1/q, G~/q], [H~, I/q - H~ G~]]
/// Throws NotInterpolatory when h is not interpolatory.
AnalysisSynthesisPair build_A_S(const FilterND& g, const FilterND& h, const CosetSystem& sys);

/// Upper and lower triangular factors [[1, G~], [0, I]] and [[1, 0], [-q H~, I]]
/// whose product is A for interpolatory h.
std::pair<PolyphaseMatrix, PolyphaseMatrix> triangular_factors(const FilterND& g,
                                                               const FilterND& h,
                                                               const CosetSystem& sys);

struct Residual {
  std::size_t row;
  std::size_t col;
  LaurentPoly value;  // (S A - I/q) at (row, col)
};

/// Entries of S*A that differ from (1/q) I.
std::vector<Residual> product_residuals(const PolyphaseMatrix& S, const PolyphaseMatrix& A,
                                        std::int64_t q);

/// S * A == (1/q) I exactly.
bool matmul_check(const PolyphaseMatrix& S, const PolyphaseMatrix& A, std::int64_t q);

/// Rows are the analysis polyphase vectors of `analysis`; columns of the
/// returned synthesis matrix are the synthesis polyphase vectors of `synthesis`.
PolyphaseMatrix analysis_matrix(const std::vector<const FilterND*>& analysis, const CosetSystem& sys);
PolyphaseMatrix synthesis_matrix(const std::vector<const FilterND*>& synthesis,
                                 const CosetSystem& sys);

}  // namespace pcs
