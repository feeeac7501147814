#pragma once

#include <cassert>
#include <cstddef>
#include <vector>

namespace oranopt {

// Dense row-major 2-index table.
template <typename T>
class Grid2 {
 public:
  Grid2() = default;
  Grid2(int rows, int cols, T fill = T{})
      : rows_(rows), cols_(cols), v_(static_cast<std::size_t>(rows) * cols, fill) {
    assert(rows >= 0 && cols >= 0);
  }

  T& operator()(int r, int c) {
    assert(r >= 0 && r < rows_ && c >= 0 && c < cols_);
    return v_[static_cast<std::size_t>(r) * cols_ + c];
  }
  const T& operator()(int r, int c) const {
    assert(r >= 0 && r < rows_ && c >= 0 && c < cols_);
    return v_[static_cast<std::size_t>(r) * cols_ + c];
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t size() const { return v_.size(); }
  const std::vector<T>& data() const { return v_; }

  bool operator==(const Grid2&) const = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> v_;
};

// Dense 3-index table, layout [d0][d1][d2].
template <typename T>
class Grid3 {
 public:
  Grid3() = default;
  Grid3(int n0, int n1, int n2, T fill = T{})
      : n0_(n0), n1_(n1), n2_(n2),
        v_(static_cast<std::size_t>(n0) * n1 * n2, fill) {
    assert(n0 >= 0 && n1 >= 0 && n2 >= 0);
  }

  T& operator()(int a, int b, int c) {
    assert(a >= 0 && a < n0_ && b >= 0 && b < n1_ && c >= 0 && c < n2_);
    return v_[(static_cast<std::size_t>(a) * n1_ + b) * n2_ + c];
  }
  const T& operator()(int a, int b, int c) const {
    assert(a >= 0 && a < n0_ && b >= 0 && b < n1_ && c >= 0 && c < n2_);
    return v_[(static_cast<std::size_t>(a) * n1_ + b) * n2_ + c];
  }

  int dim0() const { return n0_; }
  int dim1() const { return n1_; }
  int dim2() const { return n2_; }
  std::size_t size() const { return v_.size(); }
  const std::vector<T>& data() const { return v_; }

  bool operator==(const Grid3&) const = default;

 private:
  int n0_ = 0;
  int n1_ = 0;
  int n2_ = 0;
  std::vector<T> v_;
};

}  // namespace oranopt
