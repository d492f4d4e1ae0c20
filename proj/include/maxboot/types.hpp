#pragma once

#include <cstddef>
#include <vector>

namespace maxboot {

/// n x p data matrix: row i = observation, column j = coordinate.
/// Row-major storage. Indexing is 0-based internally; everything shown to
/// users (error messages, reports) is 1-based.
class SampleMatrix {
 public:
  /// Zero-initialized matrix; dimensions must be >= 1.
  SampleMatrix(std::size_t n, std::size_t p);

  /// Takes ownership of row-major values; validates size and finiteness.
  SampleMatrix(std::size_t n, std::size_t p, std::vector<double> values);

  static SampleMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t n() const { return n_; }
  std::size_t p() const { return p_; }

  double operator()(std::size_t i, std::size_t j) const {
    return values_[i * p_ + j];
  }
  double& operator()(std::size_t i, std::size_t j) { return values_[i * p_ + j]; }

  const double* row(std::size_t i) const { return values_.data() + i * p_; }
  double* row(std::size_t i) { return values_.data() + i * p_; }

  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

 private:
  std::size_t n_ = 0;
  std::size_t p_ = 0;
  std::vector<double> values_;
};

/// Coordinate-wise mean vector of length p.
struct MeanVector {
  std::vector<double> mu;

  MeanVector() = default;
  explicit MeanVector(std::vector<double> values) : mu(std::move(values)) {}
  static MeanVector zeros(std::size_t p) { return MeanVector(std::vector<double>(p, 0.0)); }
  static MeanVector constant(std::size_t p, double c) {
    return MeanVector(std::vector<double>(p, c));
  }
  std::size_t size() const { return mu.size(); }
  double operator[](std::size_t j) const { return mu[j]; }
};

/// Shift vector t of length p added inside the max.
struct ShiftVector {
  std::vector<double> t;

  ShiftVector() = default;
  explicit ShiftVector(std::vector<double> values) : t(std::move(values)) {}
  static ShiftVector zeros(std::size_t p) { return ShiftVector(std::vector<double>(p, 0.0)); }
  static ShiftVector constant(std::size_t p, double c) {
    return ShiftVector(std::vector<double>(p, c));
  }
  std::size_t size() const { return t.size(); }
  double operator[](std::size_t j) const { return t[j]; }
};

/// p x p symmetric covariance matrix (row-major).
struct CovarianceEstimate {
  std::size_t p = 0;
  std::vector<double> values;

  double operator()(std::size_t j, std::size_t k) const { return values[j * p + k]; }

  /// Max absolute asymmetry |S_jk - S_kj|; zero up to rounding.
  double symmetry_defect() const;
};

}  // namespace maxboot
