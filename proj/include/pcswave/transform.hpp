#pragma once

#include "pcswave/filterbank.hpp"
#include "pcswave/rational.hpp"

#include <cstdint>
#include <vector>

namespace pcs {

/// Dense row-major n-D array with periodic (toroidal) indexing.
template <class T>
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(std::vector<std::size_t> shape, const T& fill = T{});

  std::size_t dim() const { return shape_.size(); }
  const std::vector<std::size_t>& shape() const { return shape_; }
  std::size_t size() const { return data_.size(); }
  const std::vector<std::size_t>& strides() const { return strides_; }

  T& operator[](std::size_t i) { return data_[i]; }
  const T& operator[](std::size_t i) const { return data_[i]; }
  std::vector<T>& data() { return data_; }
  const std::vector<T>& data() const { return data_; }

  /// Flat offset of x with every coordinate reduced modulo the shape.
  std::size_t wrap(const MultiIndex& x) const;
  T& at(const MultiIndex& x) { return data_[wrap(x)]; }
  const T& at(const MultiIndex& x) const { return data_[wrap(x)]; }
  /// Coordinates of flat offset i.
  MultiIndex coords(std::size_t i) const;

  friend bool operator==(const Tensor& a, const Tensor& b) {
    return a.shape_ == b.shape_ && a.data_ == b.data_;
  }

 private:
  std::vector<std::size_t> shape_;
  std::vector<std::size_t> strides_;
  std::vector<T> data_;
};

/// y_0 plus the detail subbands w_{nu,j}. details[j][i] is the subband of
/// sys.gamma()[i + 1] at level j; level 0 is the coarsest.
template <class T>
struct MultiresCoeffs {
  int levels = 0;
  Tensor<T> coarse;
  std::vector<std::vector<Tensor<T>>> details;
};

struct OpCount {
  std::uint64_t multiplicative_ops = 0;
  std::vector<std::uint64_t> per_level;  // finest level first
  Rational predicted;                    // closed form summed over levels
  Rational per_sample_constant;          // one-level closed form divided by N
  Rational tensor_model;                 // (alpha + beta) n per sample
  std::int64_t alpha = 0;
  std::int64_t beta = 0;
  std::int64_t alpha_tilde = 0;
  std::uint64_t samples = 0;
};

/// Worker count used by the transforms: hardware concurrency capped by
/// PCSWAVE_THREADS when set.
unsigned worker_count();

/// Lifting-form transform driven by the 1-D generators of a prime coset sum bank.
/// Throws WrongProvenance, ShapeNotDivisible, DimensionMismatch.
template <class T>
MultiresCoeffs<T> decompose_fast(const Tensor<T>& y, const WaveletFilterBank& bank, int levels,
                                 std::uint64_t* ops = nullptr);
/// Throws ShapeMismatch when the subbands are inconsistent.
template <class T>
Tensor<T> reconstruct_fast(const MultiresCoeffs<T>& c, const WaveletFilterBank& bank,
                           std::uint64_t* ops = nullptr);

/// Filter-and-downsample transform using the materialized filters:
///   s_f(k) = (1/q) sum_x a_f(x - p k) y(x),   y(x) = sum_f sum_k s_f(k) c_f(x - p k)
template <class T>
MultiresCoeffs<T> decompose_direct(const Tensor<T>& y, const WaveletFilterBank& bank, int levels);
template <class T>
Tensor<T> reconstruct_direct(const MultiresCoeffs<T>& c, const WaveletFilterBank& bank);

/// One decompose + reconstruct cycle on a zero signal with the counter on,
/// plus the closed-form prediction and the tensor-product model.
OpCount count_ops(const WaveletFilterBank& bank, const std::vector<std::size_t>& shape, int levels);

/// Closed-form multiplications per sample of one level:
/// (2(q-1) beta + 2(q-1) alpha_tilde + 2n + 2) / q.
Rational predicted_constant(std::int64_t p, std::size_t n, std::int64_t beta,
                            std::int64_t alpha_tilde);

/// Throws ShapeNotDivisible naming the first bad axis.
void check_shape(const std::vector<std::size_t>& shape, const CosetSystem& sys, int levels);

Tensor<double> to_double(const Tensor<Rational>& t);
Tensor<Rational> to_rational(const Tensor<double>& t);

}  // namespace pcs
