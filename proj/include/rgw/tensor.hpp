#pragma once

#include <array>
#include <cassert>
#include <vector>

#include "rgw/scalar.hpp"

namespace rgw {

/// Dense 3-index coefficient block, zero-initialized.
template <class T>
class Tensor3 {
public:
  Tensor3() = default;
  Tensor3(int d0, int d1, int d2)
      : d0_(d0), d1_(d1), d2_(d2), v_(static_cast<size_t>(d0) * d1 * d2, T(0)) {}

  int dim0() const { return d0_; }
  int dim1() const { return d1_; }
  int dim2() const { return d2_; }

  T& operator()(int i, int j, int k) { return v_[idx(i, j, k)]; }
  const T& operator()(int i, int j, int k) const { return v_[idx(i, j, k)]; }

  const std::vector<T>& data() const { return v_; }

private:
  size_t idx(int i, int j, int k) const {
    assert(i >= 0 && i < d0_ && j >= 0 && j < d1_ && k >= 0 && k < d2_);
    return (static_cast<size_t>(i) * d1_ + j) * d2_ + k;
  }
  int d0_ = 0, d1_ = 0, d2_ = 0;
  std::vector<T> v_;
};

/// Dense 4-index block; curvature is stored as t(i,j,k,l) with
/// R(e_i,e_j)e_k = sum_l t(i,j,k,l) e_l.
template <class T>
class Tensor4 {
public:
  Tensor4() = default;
  Tensor4(int d0, int d1, int d2, int d3)
      : d0_(d0), d1_(d1), d2_(d2), d3_(d3),
        v_(static_cast<size_t>(d0) * d1 * d2 * d3, T(0)) {}

  int dim0() const { return d0_; }
  int dim1() const { return d1_; }
  int dim2() const { return d2_; }
  int dim3() const { return d3_; }

  T& operator()(int i, int j, int k, int l) { return v_[idx(i, j, k, l)]; }
  const T& operator()(int i, int j, int k, int l) const { return v_[idx(i, j, k, l)]; }

  const std::vector<T>& data() const { return v_; }

private:
  size_t idx(int i, int j, int k, int l) const {
    assert(i >= 0 && i < d0_ && j >= 0 && j < d1_ && k >= 0 && k < d2_ && l >= 0 && l < d3_);
    return ((static_cast<size_t>(i) * d1_ + j) * d2_ + k) * d3_ + l;
  }
  int d0_ = 0, d1_ = 0, d2_ = 0, d3_ = 0;
  std::vector<T> v_;
};

/// k-times covariant coefficient block over a fixed basis: all k index
/// ranges equal `dim`. Used for covariant differentials of arbitrary order.
template <class T>
class KTensor {
public:
  KTensor() = default;
  KTensor(int order, int dim)
      : order_(order), dim_(dim), v_(pow_size(dim, order), T(0)) {}

  static KTensor from_matrix(const Mat<T>& m) {
    KTensor t(2, static_cast<int>(m.rows()));
    for (int i = 0; i < t.dim_; ++i)
      for (int j = 0; j < t.dim_; ++j) t.v_[static_cast<size_t>(i) * t.dim_ + j] = m(i, j);
    return t;
  }

  int order() const { return order_; }
  int dim() const { return dim_; }
  size_t size() const { return v_.size(); }

  T& at(const std::vector<int>& idx) { return v_[flat(idx)]; }
  const T& at(const std::vector<int>& idx) const { return v_[flat(idx)]; }

  T& flat_at(size_t f) { return v_[f]; }
  const T& flat_at(size_t f) const { return v_[f]; }

  /// Decodes a flat offset into the multi-index (row-major, first index
  /// slowest).
  std::vector<int> unflatten(size_t f) const {
    std::vector<int> idx(order_);
    for (int s = order_ - 1; s >= 0; --s) {
      idx[s] = static_cast<int>(f % dim_);
      f /= dim_;
    }
    return idx;
  }

private:
  static size_t pow_size(int dim, int order) {
    size_t s = 1;
    for (int i = 0; i < order; ++i) s *= static_cast<size_t>(dim);
    return s;
  }
  size_t flat(const std::vector<int>& idx) const {
    assert(static_cast<int>(idx.size()) == order_);
    size_t f = 0;
    for (int s = 0; s < order_; ++s) {
      assert(idx[s] >= 0 && idx[s] < dim_);
      f = f * dim_ + idx[s];
    }
    return f;
  }
  int order_ = 0, dim_ = 0;
  std::vector<T> v_;
};

}  // namespace rgw
