#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>

namespace styleeq::nn {

// Sequences are stored one time step per column.
template <typename T>
using Matrix = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <typename T>
using Vector = Eigen::Matrix<T, Eigen::Dynamic, 1>;

using Rng = std::mt19937_64;

// Uniform [0, 1) from the top 53 bits; independent of the standard
// library's distribution implementations.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

template <typename T>
Matrix<T> sigmoid(const Matrix<T>& x) {
  return (T(1) / (T(1) + (-x.array()).exp())).matrix();
}

// Column-wise log-softmax.
template <typename T>
Matrix<T> log_softmax_columns(const Matrix<T>& logits) {
  Matrix<T> out(logits.rows(), logits.cols());
  for (Eigen::Index j = 0; j < logits.cols(); ++j) {
    const T mx = logits.col(j).maxCoeff();
    const T lse = mx + std::log((logits.col(j).array() - mx).exp().sum());
    out.col(j) = logits.col(j).array() - lse;
  }
  return out;
}

template <typename T>
Vector<T> softmax(const Vector<T>& x) {
  const T mx = x.maxCoeff();
  Vector<T> e = (x.array() - mx).exp().matrix();
  return e / e.sum();
}

}  // namespace styleeq::nn
