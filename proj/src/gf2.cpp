#include "cislimit/gf2.hpp"

#include "cislimit/finspace.hpp"

namespace cislimit {

Gf2Matrix::Gf2Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows, Gf2Vector(cols)) {}

Gf2Matrix Gf2Matrix::identity(std::size_t n) {
  Gf2Matrix m(n, n);
  for (std::size_t k = 0; k < n; ++k) m.set(k, k);
  return m;
}

Gf2Matrix Gf2Matrix::from_rows(const std::vector<std::vector<int>>& rows,
                               std::size_t cols) {
  if (!rows.empty()) cols = rows.front().size();
  Gf2Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw Error("matrix rows have different lengths");
    for (std::size_t c = 0; c < cols; ++c) {
      const int v = rows[r][c];
      if (v != 0 && v != 1) throw Error("matrix entries must be 0 or 1");
      m.set(r, c, v == 1);
    }
  }
  return m;
}

Gf2Vector Gf2Matrix::column(std::size_t c) const {
  Gf2Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v.set(r, data_[r].test(c));
  return v;
}

void Gf2Matrix::set_column(std::size_t c, const Gf2Vector& v) {
  for (std::size_t r = 0; r < rows_; ++r) data_[r].set(c, v.test(r));
}

Gf2Matrix Gf2Matrix::transpose() const {
  Gf2Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (auto c = data_[r].find_first(); c != Gf2Vector::npos;
         c = data_[r].find_next(c)) {
      t.set(c, r);
    }
  }
  return t;
}

bool Gf2Matrix::is_zero() const {
  for (const auto& r : data_) {
    if (r.any()) return false;
  }
  return true;
}

std::vector<std::vector<int>> Gf2Matrix::to_rows() const {
  std::vector<std::vector<int>> out(rows_, std::vector<int>(cols_, 0));
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out[r][c] = get(r, c) ? 1 : 0;
  }
  return out;
}

Gf2Matrix operator*(const Gf2Matrix& a, const Gf2Matrix& b) {
  if (a.cols_ != b.rows_) throw Error("matrix product: shape mismatch");
  Gf2Matrix out(a.rows_, b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r) {
    const auto& row = a.data_[r];
    for (auto k = row.find_first(); k != Gf2Vector::npos; k = row.find_next(k)) {
      out.data_[r] ^= b.data_[k];
    }
  }
  return out;
}

Gf2Matrix hconcat(const Gf2Matrix& a, const Gf2Matrix& b) {
  if (a.rows() != b.rows()) throw Error("hconcat: row counts differ");
  Gf2Matrix out(a.rows(), a.cols() + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) out.set(r, c, a.get(r, c));
    for (std::size_t c = 0; c < b.cols(); ++c) out.set(r, a.cols() + c, b.get(r, c));
  }
  return out;
}

Gf2Matrix vconcat(const Gf2Matrix& a, const Gf2Matrix& b) {
  if (a.cols() != b.cols()) throw Error("vconcat: column counts differ");
  Gf2Matrix out(a.rows() + b.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) out.set(r, c, a.get(r, c));
  }
  for (std::size_t r = 0; r < b.rows(); ++r) {
    for (std::size_t c = 0; c < b.cols(); ++c) out.set(a.rows() + r, c, b.get(r, c));
  }
  return out;
}

namespace {

// Reduced row echelon form over the first `lead` columns of each row.
// Returns the pivot column of each nonzero leading row, in row order.
std::vector<std::size_t> rref(std::vector<Gf2Vector>& rows, std::size_t lead) {
  std::vector<std::size_t> pivots;
  std::size_t top = 0;
  for (std::size_t c = 0; c < lead && top < rows.size(); ++c) {
    std::size_t r = top;
    while (r < rows.size() && !rows[r].test(c)) ++r;
    if (r == rows.size()) continue;
    std::swap(rows[top], rows[r]);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (k != top && rows[k].test(c)) rows[k] ^= rows[top];
    }
    pivots.push_back(c);
    ++top;
  }
  return pivots;
}

}  // namespace

std::size_t rank(const Gf2Matrix& m) {
  std::vector<Gf2Vector> rows;
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row(r));
  return rref(rows, m.cols()).size();
}

std::vector<Gf2Vector> kernel_basis(const Gf2Matrix& m) {
  std::vector<Gf2Vector> rows;
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row(r));
  const auto pivots = rref(rows, m.cols());
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<Gf2Vector> out;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Gf2Vector v(m.cols());
    v.set(free);
    for (std::size_t k = 0; k < pivots.size(); ++k) {
      if (rows[k].test(free)) v.set(pivots[k]);
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<Gf2Matrix> solve_right(const Gf2Matrix& a, const Gf2Matrix& b) {
  if (a.rows() != b.rows()) throw Error("solve_right: row counts differ");
  const std::size_t n = a.cols();
  const std::size_t k = b.cols();
  std::vector<Gf2Vector> rows;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    Gf2Vector v(n + k);
    for (std::size_t c = 0; c < n; ++c) v.set(c, a.get(r, c));
    for (std::size_t c = 0; c < k; ++c) v.set(n + c, b.get(r, c));
    rows.push_back(std::move(v));
  }
  const auto pivots = rref(rows, n);
  for (std::size_t r = pivots.size(); r < rows.size(); ++r) {
    if (rows[r].any()) return std::nullopt;
  }
  Gf2Matrix x(n, k);
  for (std::size_t p = 0; p < pivots.size(); ++p) {
    for (std::size_t c = 0; c < k; ++c) x.set(pivots[p], c, rows[p].test(n + c));
  }
  return x;
}

std::optional<Gf2Matrix> solve_left(const Gf2Matrix& a, const Gf2Matrix& b) {
  auto xt = solve_right(a.transpose(), b.transpose());
  if (!xt) return std::nullopt;
  return xt->transpose();
}

Gf2Reducer::Reduced Gf2Reducer::reduce(Gf2Vector v, Gf2Vector tag) const {
  if (v.size() != width_ || tag.size() != tag_width_) {
    throw Error("Gf2Reducer: vector has wrong width");
  }
  for (auto p = v.find_first(); p != Gf2Vector::npos; p = v.find_first()) {
    auto it = by_pivot_.find(p);
    if (it == by_pivot_.end()) break;
    v ^= rows_[it->second].residual;
    tag ^= rows_[it->second].tag;
  }
  return {std::move(v), std::move(tag)};
}

void Gf2Reducer::insert(Reduced r) {
  const auto p = r.residual.find_first();
  if (p == Gf2Vector::npos) throw Error("Gf2Reducer: inserting a zero row");
  if (by_pivot_.contains(p)) throw Error("Gf2Reducer: row is not reduced");
  by_pivot_.emplace(p, rows_.size());
  rows_.push_back(std::move(r));
}

}  // namespace cislimit
