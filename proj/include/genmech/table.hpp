#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace genmech {

/// Dense row-major table indexed by a pair of states.
///
/// Rows and columns are stored separately so that a table read from a file
/// with the wrong shape can still be held and reported on.
template <typename T>
class Table {
public:
  Table() = default;
  Table(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Table square(std::size_t n, T fill = T{}) { return Table(n, n, fill); }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square(std::size_t n) const noexcept { return rows_ == n && cols_ == n; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  T& at(std::size_t r, std::size_t c) {
    check(r, c);
    return (*this)(r, c);
  }
  const T& at(std::size_t r, std::size_t c) const {
    check(r, c);
    return (*this)(r, c);
  }

  const std::vector<T>& data() const noexcept { return data_; }

  friend bool operator==(const Table&, const Table&) = default;

private:
  void check(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) throw std::out_of_range("Table index out of range");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using Complex = std::complex<double>;

/// Symmetric real overlap map, the analogue of a transition probability.
using OverlapTable = Table<double>;

/// Complex pre-overlap map, the analogue of an inner product.
using PreOverlapTable = Table<Complex>;

} // namespace genmech
