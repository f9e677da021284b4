#pragma once

#include <cassert>
#include <cstddef>
#include <vector>

namespace hynet {

/// Dense 3-d array with row-major layout. Dimensions are fixed at
/// construction; indices are checked in debug builds only.
template <typename T>
class Array3 {
public:
    Array3() : d0_(0), d1_(0), d2_(0) {}
    Array3(int d0, int d1, int d2, T fill = T{})
        : d0_(d0), d1_(d1), d2_(d2),
          data_(static_cast<std::size_t>(d0) * d1 * d2, fill) {}

    T& operator()(int i, int j, int k) { return data_[index(i, j, k)]; }
    const T& operator()(int i, int j, int k) const { return data_[index(i, j, k)]; }

    int dim0() const { return d0_; }
    int dim1() const { return d1_; }
    int dim2() const { return d2_; }
    std::size_t size() const { return data_.size(); }

    std::vector<T>& flat() { return data_; }
    const std::vector<T>& flat() const { return data_; }

    bool same_shape(const Array3& other) const {
        return d0_ == other.d0_ && d1_ == other.d1_ && d2_ == other.d2_;
    }

    friend bool operator==(const Array3& a, const Array3& b) {
        return a.same_shape(b) && a.data_ == b.data_;
    }

private:
    std::size_t index(int i, int j, int k) const {
        assert(i >= 0 && i < d0_ && j >= 0 && j < d1_ && k >= 0 && k < d2_);
        return (static_cast<std::size_t>(i) * d1_ + j) * d2_ + k;
    }

    int d0_, d1_, d2_;
    std::vector<T> data_;
};

/// Dense 4-d array, same conventions as Array3.
template <typename T>
class Array4 {
public:
    Array4() : d0_(0), d1_(0), d2_(0), d3_(0) {}
    Array4(int d0, int d1, int d2, int d3, T fill = T{})
        : d0_(d0), d1_(d1), d2_(d2), d3_(d3),
          data_(static_cast<std::size_t>(d0) * d1 * d2 * d3, fill) {}

    T& operator()(int i, int j, int k, int l) { return data_[index(i, j, k, l)]; }
    const T& operator()(int i, int j, int k, int l) const { return data_[index(i, j, k, l)]; }

    int dim0() const { return d0_; }
    int dim1() const { return d1_; }
    int dim2() const { return d2_; }
    int dim3() const { return d3_; }
    std::size_t size() const { return data_.size(); }

    std::vector<T>& flat() { return data_; }
    const std::vector<T>& flat() const { return data_; }

    bool same_shape(const Array4& other) const {
        return d0_ == other.d0_ && d1_ == other.d1_ && d2_ == other.d2_ && d3_ == other.d3_;
    }

    friend bool operator==(const Array4& a, const Array4& b) {
        return a.same_shape(b) && a.data_ == b.data_;
    }

private:
    std::size_t index(int i, int j, int k, int l) const {
        assert(i >= 0 && i < d0_ && j >= 0 && j < d1_ && k >= 0 && k < d2_ && l >= 0 && l < d3_);
        return ((static_cast<std::size_t>(i) * d1_ + j) * d2_ + k) * d3_ + l;
    }

    int d0_, d1_, d2_, d3_;
    std::vector<T> data_;
};

} // namespace hynet
