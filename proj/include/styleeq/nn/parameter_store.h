#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "styleeq/nn/tensor.h"

namespace styleeq::nn {

enum class Init { Uniform, Zero };

template <typename T>
using GradientSet = std::vector<Matrix<T>>;

// Named dense parameters, each with a same-shape gradient buffer. Vectors are
// stored as n x 1 matrices.
template <typename T>
class ParameterStore {
 public:
  using Id = int;

  Id add(const std::string& name, int rows, int cols, Init init = Init::Uniform) {
    if (index_.count(name)) throw std::invalid_argument("duplicate parameter " + name);
    if (rows <= 0 || cols <= 0) throw std::invalid_argument("empty parameter " + name);
    const Id id = size();
    names_.push_back(name);
    inits_.push_back(init);
    values_.push_back(Matrix<T>::Zero(rows, cols));
    grads_.push_back(Matrix<T>::Zero(rows, cols));
    index_.emplace(name, id);
    return id;
  }

  int size() const { return static_cast<int>(values_.size()); }
  const std::string& name(Id id) const { return names_[id]; }
  Init init_kind(Id id) const { return inits_[id]; }
  Matrix<T>& value(Id id) { return values_[id]; }
  const Matrix<T>& value(Id id) const { return values_[id]; }
  Matrix<T>& grad(Id id) { return grads_[id]; }
  const Matrix<T>& grad(Id id) const { return grads_[id]; }
  GradientSet<T>& grads() { return grads_; }
  const GradientSet<T>& grads() const { return grads_; }

  std::optional<Id> find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t num_scalars() const {
    std::size_t n = 0;
    for (const auto& v : values_) n += static_cast<std::size_t>(v.size());
    return n;
  }

  // Uniform(-range, range) for weights, zeros for biases, in insertion order.
  void initialize(std::uint64_t seed, double range = 0.1) {
    Rng rng(seed);
    for (Id id = 0; id < size(); ++id) {
      Matrix<T>& v = values_[id];
      if (inits_[id] == Init::Zero) {
        v.setZero();
        continue;
      }
      for (Eigen::Index k = 0; k < v.size(); ++k) {
        v.data()[k] = static_cast<T>((2.0 * uniform01(rng) - 1.0) * range);
      }
    }
    zero_grad();
  }

  void zero_grad() {
    for (auto& g : grads_) g.setZero();
  }

  GradientSet<T> make_gradients() const {
    GradientSet<T> g;
    g.reserve(values_.size());
    for (const auto& v : values_) g.push_back(Matrix<T>::Zero(v.rows(), v.cols()));
    return g;
  }

  void accumulate(const GradientSet<T>& g, T scale = T(1)) {
    for (std::size_t i = 0; i < grads_.size(); ++i) grads_[i] += scale * g[i];
  }

  template <typename U>
  ParameterStore<U> cast() const {
    ParameterStore<U> out;
    for (Id id = 0; id < size(); ++id) {
      out.add(names_[id], static_cast<int>(values_[id].rows()),
              static_cast<int>(values_[id].cols()), inits_[id]);
      out.value(id) = values_[id].template cast<U>();
    }
    return out;
  }

 private:
  std::vector<std::string> names_;
  std::vector<Init> inits_;
  std::vector<Matrix<T>> values_;
  GradientSet<T> grads_;
  std::unordered_map<std::string, Id> index_;
};

class NonFiniteGradient : public std::runtime_error {
 public:
  explicit NonFiniteGradient(const std::string& param)
      : std::runtime_error("non-finite gradient in parameter " + param), param_(param) {}
  const std::string& param() const { return param_; }

 private:
  std::string param_;
};

template <typename T>
double gradient_norm(const ParameterStore<T>& store) {
  double sq = 0.0;
  for (const auto& g : store.grads()) sq += static_cast<double>(g.squaredNorm());
  return std::sqrt(sq);
}

// Rescales all gradients so their global L2 norm is at most max_norm.
// Returns the norm before clipping.
template <typename T>
double clip_grad_norm(ParameterStore<T>& store, double max_norm) {
  const double norm = gradient_norm(store);
  if (max_norm > 0.0 && norm > max_norm) {
    const T scale = static_cast<T>(max_norm / norm);
    for (auto& g : store.grads()) g *= scale;
  }
  return norm;
}

// theta <- theta - lr * (g + weight_decay * theta); gradients are zeroed.
template <typename T>
void sgd_step(ParameterStore<T>& store, double lr, double weight_decay) {
  for (int id = 0; id < store.size(); ++id) {
    if (!store.grad(id).allFinite()) throw NonFiniteGradient(store.name(id));
  }
  const T lr_t = static_cast<T>(lr);
  const T wd_t = static_cast<T>(weight_decay);
  for (int id = 0; id < store.size(); ++id) {
    Matrix<T>& v = store.value(id);
    v -= lr_t * (store.grad(id) + wd_t * v);
  }
  store.zero_grad();
}

}  // namespace styleeq::nn
