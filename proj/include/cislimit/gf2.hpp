// Dense linear algebra over GF(2), rows packed as bitsets.

#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

namespace cislimit {

using Gf2Vector = boost::dynamic_bitset<>;

class Gf2Matrix {
 public:
  Gf2Matrix() = default;
  Gf2Matrix(std::size_t rows, std::size_t cols);

  static Gf2Matrix identity(std::size_t n);
  /// Throws Error on ragged input or entries other than 0/1.
  static Gf2Matrix from_rows(const std::vector<std::vector<int>>& rows,
                             std::size_t cols = 0);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool get(std::size_t r, std::size_t c) const { return data_[r].test(c); }
  void set(std::size_t r, std::size_t c, bool v = true) { data_[r].set(c, v); }
  void flip(std::size_t r, std::size_t c) { data_[r].flip(c); }
  const Gf2Vector& row(std::size_t r) const { return data_[r]; }
  Gf2Vector column(std::size_t c) const;
  void set_column(std::size_t c, const Gf2Vector& v);

  Gf2Matrix transpose() const;
  bool is_zero() const;
  std::vector<std::vector<int>> to_rows() const;

  friend Gf2Matrix operator*(const Gf2Matrix& a, const Gf2Matrix& b);
  friend bool operator==(const Gf2Matrix& a, const Gf2Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Gf2Vector> data_;
};

/// [a | b], same row count.
Gf2Matrix hconcat(const Gf2Matrix& a, const Gf2Matrix& b);
/// a over b, same column count.
Gf2Matrix vconcat(const Gf2Matrix& a, const Gf2Matrix& b);

std::size_t rank(const Gf2Matrix& m);

/// Basis of {v : m v = 0}.
std::vector<Gf2Vector> kernel_basis(const Gf2Matrix& m);

/// Some X with a X = b, or nullopt.
std::optional<Gf2Matrix> solve_right(const Gf2Matrix& a, const Gf2Matrix& b);
/// Some X with X a = b, or nullopt.
std::optional<Gf2Matrix> solve_left(const Gf2Matrix& a, const Gf2Matrix& b);

/// Incremental echelon basis. Each stored row carries a tag vector that is
/// XOR-accumulated alongside the row during reduction.
class Gf2Reducer {
 public:
  Gf2Reducer(std::size_t width, std::size_t tag_width)
      : width_(width), tag_width_(tag_width) {}

  struct Reduced {
    Gf2Vector residual;
    Gf2Vector tag;
  };

  Reduced reduce(Gf2Vector v, Gf2Vector tag) const;
  Reduced reduce(Gf2Vector v) const { return reduce(std::move(v), Gf2Vector(tag_width_)); }
  /// Adds a reduced, nonzero residual as a new row.
  void insert(Reduced r);

  std::size_t size() const { return rows_.size(); }

 private:
  std::size_t width_;
  std::size_t tag_width_;
  std::vector<Reduced> rows_;
  std::map<std::size_t, std::size_t> by_pivot_;
};

}  // namespace cislimit
