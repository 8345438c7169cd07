#include "cartier/matrix.hpp"

#include <algorithm>

namespace cartier {

namespace {

void require_same(const Matrix& a, const Matrix& b) {
  if (!a.field() || !b.field() || !same_field(*a.field(), *b.field())) {
    throw UsageError("matrix operands belong to different fields");
  }
}

}  // namespace

Matrix::Matrix(FieldPtr field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

Matrix::Matrix(FieldPtr field, std::size_t rows, std::size_t cols, std::vector<Elem> data)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) throw UsageError("matrix data size mismatch");
  for (auto x : data_) {
    if (x >= field_->size()) throw UsageError("matrix entry outside the field");
  }
}

Matrix Matrix::identity(FieldPtr field, std::size_t n) {
  Matrix m(std::move(field), n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(FieldPtr field, std::size_t cols, std::span<const Vector> rows) {
  Matrix m(std::move(field), rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw UsageError("row length mismatch");
    std::copy(rows[r].begin(), rows[r].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(r * cols));
  }
  return m;
}

Vector Matrix::row_vector(std::size_t r) const {
  auto s = row(r);
  return {s.begin(), s.end()};
}

Vector Matrix::col_vector(std::size_t c) const {
  Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](Elem x) { return x == 0; });
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  require_same(a, b);
  if (a.cols_ != b.rows_) throw UsageError("matrix product dimension mismatch");
  const GaloisField& f = *a.field_;
  Matrix out(a.field_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Elem x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        out(i, j) = f.add(out(i, j), f.mul(x, b(k, j)));
      }
    }
  }
  return out;
}

Vector operator*(const Matrix& a, const Vector& v) {
  if (a.cols_ != v.size()) throw UsageError("matrix-vector dimension mismatch");
  const GaloisField& f = *a.field_;
  Vector out(a.rows_, 0);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    Elem acc = 0;
    for (std::size_t k = 0; k < a.cols_; ++k) acc = f.add(acc, f.mul(a(i, k), v[k]));
    out[i] = acc;
  }
  return out;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  require_same(a, b);
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw UsageError("matrix sum dimension mismatch");
  Matrix out = a;
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] = a.field_->add(a.data_[i], b.data_[i]);
  return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  require_same(a, b);
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw UsageError("matrix difference dimension mismatch");
  Matrix out = a;
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] = a.field_->sub(a.data_[i], b.data_[i]);
  return out;
}

Matrix operator*(Elem c, const Matrix& a) {
  Matrix out = a;
  for (auto& x : out.data_) x = a.field_->mul(c, x);
  return out;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_ &&
         (a.field_ == b.field_ || (a.field_ && b.field_ && same_field(*a.field_, *b.field_)));
}

Matrix twist(const Matrix& m, std::int64_t j) {
  std::vector<Elem> data = m.data();
  for (auto& x : data) x = m.field()->twist(x, j);
  return Matrix(m.field(), m.rows(), m.cols(), std::move(data));
}

Vector twist(const GaloisField& field, const Vector& v, std::int64_t j) {
  Vector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = field.twist(v[i], j);
  return out;
}

Vector add(const GaloisField& field, const Vector& a, const Vector& b) {
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = field.add(a[i], b[i]);
  return out;
}

Vector sub(const GaloisField& field, const Vector& a, const Vector& b) {
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = field.sub(a[i], b[i]);
  return out;
}

Vector scale(const GaloisField& field, Elem c, const Vector& v) {
  Vector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = field.mul(c, v[i]);
  return out;
}

bool is_zero(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](Elem x) { return x == 0; });
}

RowEchelon row_reduce(const Matrix& input) {
  const GaloisField& f = *input.field();
  Matrix m = input;
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && m(pivot, c) == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != r) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(pivot, j), m(r, j));
    }
    const Elem lead_inv = f.inv(m(r, c));
    for (std::size_t j = c; j < cols; ++j) m(r, j) = f.mul(m(r, j), lead_inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m(i, c) == 0) continue;
      const Elem factor = m(i, c);
      for (std::size_t j = c; j < cols; ++j) m(i, j) = f.sub(m(i, j), f.mul(factor, m(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  std::vector<Elem> data(m.data().begin(), m.data().begin() + static_cast<std::ptrdiff_t>(r * cols));
  return {Matrix(input.field(), r, cols, std::move(data)), std::move(pivots)};
}

std::size_t rank(const Matrix& m) { return row_reduce(m).pivots.size(); }

Matrix kernel(const Matrix& m) {
  const GaloisField& f = *m.field();
  const auto ech = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : ech.pivots) is_pivot[c] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v(m.cols(), 0);
    v[free] = 1;
    for (std::size_t r = 0; r < ech.pivots.size(); ++r) v[ech.pivots[r]] = f.neg(ech.reduced(r, free));
    basis.push_back(std::move(v));
  }
  return row_reduce(Matrix::from_rows(m.field(), m.cols(), basis)).reduced;
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (!m.is_square()) throw UsageError("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  Matrix aug(m.field(), n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  const auto ech = row_reduce(aug);
  if (ech.pivots.size() < n || (n > 0 && ech.pivots[n - 1] != n - 1)) return std::nullopt;
  Matrix out(m.field(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = ech.reduced(i, n + j);
  return out;
}

Subspace::Subspace(RowEchelon echelon)
    : basis_(std::move(echelon.reduced)), pivots_(std::move(echelon.pivots)) {}

Subspace Subspace::zero(FieldPtr field, std::size_t ambient) {
  return Subspace(RowEchelon{Matrix(std::move(field), 0, ambient), {}});
}

Subspace Subspace::full(FieldPtr field, std::size_t ambient) {
  return span(Matrix::identity(std::move(field), ambient));
}

Subspace Subspace::span(const Matrix& rows) { return Subspace(row_reduce(rows)); }

Subspace Subspace::span(FieldPtr field, std::size_t ambient, std::span<const Vector> vectors) {
  return span(Matrix::from_rows(std::move(field), ambient, vectors));
}

std::vector<Vector> Subspace::basis_vectors() const {
  std::vector<Vector> out;
  for (std::size_t r = 0; r < dim(); ++r) out.push_back(basis_.row_vector(r));
  return out;
}

Vector Subspace::reduce(const Vector& v) const {
  if (v.size() != ambient_dim()) throw UsageError("vector length does not match subspace ambient dimension");
  const GaloisField& f = *field();
  Vector out = v;
  for (std::size_t r = 0; r < dim(); ++r) {
    const Elem c = out[pivots_[r]];
    if (c == 0) continue;
    for (std::size_t j = pivots_[r]; j < out.size(); ++j) out[j] = f.sub(out[j], f.mul(c, basis_(r, j)));
  }
  return out;
}

bool Subspace::contains(const Vector& v) const { return is_zero(reduce(v)); }

bool Subspace::contains(const Subspace& other) const {
  for (std::size_t r = 0; r < other.dim(); ++r) {
    if (!contains(other.basis_.row_vector(r))) return false;
  }
  return true;
}

Vector Subspace::coordinates(const Vector& v) const {
  Vector out(dim());
  for (std::size_t r = 0; r < dim(); ++r) out[r] = v[pivots_[r]];
  return out;
}

std::vector<std::size_t> Subspace::non_pivots() const {
  std::vector<std::size_t> out;
  std::size_t next = 0;
  for (std::size_t c = 0; c < ambient_dim(); ++c) {
    if (next < pivots_.size() && pivots_[next] == c) {
      ++next;
    } else {
      out.push_back(c);
    }
  }
  return out;
}

std::strong_ordering operator<=>(const Subspace& a, const Subspace& b) {
  if (auto c = a.dim() <=> b.dim(); c != 0) return c;
  if (auto c = a.ambient_dim() <=> b.ambient_dim(); c != 0) return c;
  const auto& x = a.basis_.data();
  const auto& y = b.basis_.data();
  return std::lexicographical_compare_three_way(x.begin(), x.end(), y.begin(), y.end());
}

Subspace operator+(const Subspace& a, const Subspace& b) {
  auto rows = a.basis_vectors();
  for (auto& v : b.basis_vectors()) rows.push_back(std::move(v));
  return Subspace::span(a.field(), a.ambient_dim(), rows);
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  // Zassenhaus: row reduce [[a, a], [b, 0]]; rows with zero left half carry
  // a basis of the intersection in their right half.
  const std::size_t n = a.ambient_dim();
  if (b.ambient_dim() != n) throw UsageError("subspaces live in different ambient spaces");
  Matrix m(a.field(), a.dim() + b.dim(), 2 * n);
  for (std::size_t r = 0; r < a.dim(); ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = m(r, n + c) = a.basis()(r, c);
  for (std::size_t r = 0; r < b.dim(); ++r)
    for (std::size_t c = 0; c < n; ++c) m(a.dim() + r, c) = b.basis()(r, c);
  const auto ech = row_reduce(m);
  std::vector<Vector> rows;
  for (std::size_t r = 0; r < ech.pivots.size(); ++r) {
    if (ech.pivots[r] < n) continue;
    Vector v(n);
    for (std::size_t c = 0; c < n; ++c) v[c] = ech.reduced(r, n + c);
    rows.push_back(std::move(v));
  }
  return Subspace::span(a.field(), n, rows);
}

Subspace twist(const Subspace& s, std::int64_t j) { return Subspace::span(twist(s.basis(), j)); }

}  // namespace cartier
