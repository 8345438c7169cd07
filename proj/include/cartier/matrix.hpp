#pragma once

#include <compare>
#include <optional>
#include <cstddef>
#include <span>
#include <vector>

#include "cartier/galois_field.hpp"

namespace cartier {

/// Column vector over a GaloisField (element codes).
using Vector = std::vector<Elem>;

/// Dense row-major matrix over a GaloisField.
class Matrix {
 public:
  Matrix() = default;
  Matrix(FieldPtr field, std::size_t rows, std::size_t cols);
  Matrix(FieldPtr field, std::size_t rows, std::size_t cols, std::vector<Elem> data);

  static Matrix identity(FieldPtr field, std::size_t n);
  /// Matrix whose rows are the given vectors (all of length cols).
  static Matrix from_rows(FieldPtr field, std::size_t cols, std::span<const Vector> rows);

  const FieldPtr& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const std::vector<Elem>& data() const { return data_; }

  Elem operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Elem& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  std::span<const Elem> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  Vector row_vector(std::size_t r) const;
  Vector col_vector(std::size_t c) const;

  bool is_zero() const;
  bool is_square() const { return rows_ == cols_; }
  Matrix transpose() const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Vector operator*(const Matrix& a, const Vector& v);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  /// Scalar multiple.
  friend Matrix operator*(Elem c, const Matrix& a);
  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  FieldPtr field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Elem> data_;
};

/// Entrywise sigma^j (j < 0 takes p^{|j|}-th roots).
Matrix twist(const Matrix& m, std::int64_t j);
Vector twist(const GaloisField& field, const Vector& v, std::int64_t j);

Vector add(const GaloisField& field, const Vector& a, const Vector& b);
Vector sub(const GaloisField& field, const Vector& a, const Vector& b);
Vector scale(const GaloisField& field, Elem c, const Vector& v);
bool is_zero(const Vector& v);

struct RowEchelon {
  Matrix reduced;                   // reduced row echelon form, zero rows dropped
  std::vector<std::size_t> pivots;  // pivot column of each row
};

RowEchelon row_reduce(const Matrix& m);
std::size_t rank(const Matrix& m);
/// Rows form a basis of {v : m v = 0}.
Matrix kernel(const Matrix& m);
/// Inverse of a square matrix, or empty optional when singular.
std::optional<Matrix> inverse(const Matrix& m);

/// Subspace of k^n stored as a reduced row echelon basis with pivot entries 1.
/// The representation is canonical, so equality is basis equality.
class Subspace {
 public:
  Subspace() = default;
  static Subspace zero(FieldPtr field, std::size_t ambient);
  static Subspace full(FieldPtr field, std::size_t ambient);
  static Subspace span(const Matrix& rows);
  static Subspace span(FieldPtr field, std::size_t ambient, std::span<const Vector> vectors);

  const FieldPtr& field() const { return basis_.field(); }
  std::size_t dim() const { return basis_.rows(); }
  std::size_t ambient_dim() const { return basis_.cols(); }
  const Matrix& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  std::vector<Vector> basis_vectors() const;

  /// v minus the combination of basis rows that clears the pivot columns.
  Vector reduce(const Vector& v) const;
  bool contains(const Vector& v) const;
  bool contains(const Subspace& other) const;
  /// Coordinates of v (assumed contained) in the echelon basis.
  Vector coordinates(const Vector& v) const;
  /// Columns that are not pivots, ascending.
  std::vector<std::size_t> non_pivots() const;

  friend bool operator==(const Subspace& a, const Subspace& b) { return a.basis_ == b.basis_; }
  /// Orders by dimension, then by the echelon basis entries.
  friend std::strong_ordering operator<=>(const Subspace& a, const Subspace& b);

 private:
  explicit Subspace(RowEchelon echelon);

  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

Subspace operator+(const Subspace& a, const Subspace& b);
Subspace intersect(const Subspace& a, const Subspace& b);
Subspace twist(const Subspace& s, std::int64_t j);

}  // namespace cartier
