#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cartier/matrix.hpp"

namespace cartier {

/// Finite-dimensional Cartier module over k = GF(p^d): the q^{-1}-linear map
/// C(v) = A * sigma^{-e}(v), where sigma^{-e} takes q-th roots coordinatewise
/// and q = p^e is the twist of the field spec (e | d is required).
class SemilinearModule {
 public:
  SemilinearModule(FieldPtr field, Matrix matrix);
  /// Zero-dimensional module.
  explicit SemilinearModule(FieldPtr field);

  const FieldPtr& field() const { return field_; }
  const Matrix& matrix() const { return matrix_; }
  std::size_t dim() const { return matrix_.rows(); }
  std::uint32_t twist_exponent() const { return field_->e(); }
  std::uint64_t q() const { return field_->q(); }

  Vector apply(const Vector& v) const;
  /// B_i with C^i(v) = B_i * sigma^{-ie}(v).
  Matrix power_matrix(std::size_t i) const;
  /// C(N); equals the span of the images of any basis of N.
  Subspace image(const Subspace& n) const;
  bool is_stable(const Subspace& n) const;

 private:
  FieldPtr field_;
  Matrix matrix_;
};

/// Least i with C^i = 0, or nullopt when the module is not nilpotent.
using Nilord = std::optional<std::size_t>;

struct NilDecomposition {
  Subspace nilpotent;  // largest nilpotent submodule
  Subspace stable;     // stable image C^n(V)
  Nilord nilord;       // of the whole module
};

Subspace stable_image(const SemilinearModule& m);
/// Stable image together with the number of image steps until stationary.
std::pair<Subspace, std::size_t> stable_image_chain(const SemilinearModule& m);
Subspace nilpotent_part(const SemilinearModule& m);
Nilord nilpotence_order(const SemilinearModule& m);
/// Throws InvariantError if the two parts are not complementary.
NilDecomposition decompose(const SemilinearModule& m);

/// Induced module on a C-stable subspace, in the echelon basis of n.
SemilinearModule restrict_to(const SemilinearModule& m, const Subspace& n);
/// Induced module on V/n, coordinates on the non-pivot columns of n.
SemilinearModule quotient(const SemilinearModule& m, const Subspace& n);
/// Image of v in V/n under the coordinates used by quotient().
Vector project(const Subspace& n, const Vector& v);
/// Block upper-triangular extension [[sub, glue], [0, quot]]; the first
/// sub.dim() coordinates span a submodule with quotient `quot`.
SemilinearModule block_extension(const SemilinearModule& sub, const SemilinearModule& quot,
                                 const Matrix& glue);

/// F_q-basis of {v : C(v) = v}.
std::vector<Vector> fixed_points(const SemilinearModule& m);

/// Embedding GF(p^d) -> GF(p^{dm}) sending t to the least root of the small
/// modulus in the big field.
class FieldEmbedding {
 public:
  FieldEmbedding(FieldPtr from, FieldPtr to);
  const FieldPtr& source() const { return from_; }
  const FieldPtr& target() const { return to_; }
  Elem root() const { return root_; }
  Elem operator()(Elem a) const;

 private:
  FieldPtr from_;
  FieldPtr to_;
  Elem root_ = 0;
};

/// Same matrix over GF(p^{d m}) (default modulus), twist exponent unchanged.
SemilinearModule base_change(const SemilinearModule& m, std::uint32_t degree);

struct HomSpace {
  std::vector<Matrix> basis;  // n_W x n_V matrices, F_q-independent
  std::uint64_t q = 0;
  /// q^{basis.size()}, saturating at UINT64_MAX.
  std::uint64_t cardinality() const;
};

/// Cartier-module maps phi: V -> W, i.e. phi * A_V = A_W * sigma^{-e}(phi).
HomSpace hom_space(const SemilinearModule& v, const SemilinearModule& w);
/// phi intertwines the two structural maps.
bool is_homomorphism(const Matrix& phi, const SemilinearModule& v, const SemilinearModule& w);

inline constexpr std::uint64_t kDefaultSubspaceCap = 100000;

/// Number of subspaces of k^n, saturating at UINT64_MAX.
std::uint64_t subspace_count(std::uint64_t field_size, std::size_t n);

struct SubmoduleEntry {
  Subspace space;
  bool surjective = false;  // C(N) = N
};

/// Every C-stable subspace, sorted by (dimension, echelon basis). Throws
/// ResourceError when the number of subspaces of k^n exceeds `cap`. `jobs`
/// worker threads split the candidate space; output does not depend on it.
std::vector<SubmoduleEntry> enumerate_submodules(const SemilinearModule& m,
                                                 std::uint64_t cap = kDefaultSubspaceCap,
                                                 unsigned jobs = 1);

/// Nonzero with no proper nonzero C-stable subspace.
bool is_simple(const SemilinearModule& m, std::uint64_t cap = kDefaultSubspaceCap);

struct EndRing {
  HomSpace hom;
  std::uint64_t order = 0;
  bool closed = false;
  bool commutative = false;
  bool units = false;  // every nonzero element invertible inside the ring
  bool is_field() const { return closed && commutative && units; }
};

/// End_Cart(M) for simple M, checked to be a finite field by exhaustion.
EndRing end_ring(const SemilinearModule& m, std::uint64_t cap = kDefaultSubspaceCap);

/// Module with a q-linear left action F(w) = B * sigma^{e}(w).
class LeftFrobeniusModule {
 public:
  LeftFrobeniusModule(FieldPtr field, Matrix matrix);

  const FieldPtr& field() const { return field_; }
  const Matrix& matrix() const { return matrix_; }
  std::size_t dim() const { return matrix_.rows(); }

  Vector apply(const Vector& w) const;
  /// D_i with F^i(w) = D_i * sigma^{ie}(w).
  Matrix power_matrix(std::size_t i) const;

 private:
  FieldPtr field_;
  Matrix matrix_;
};

Nilord nilpotence_order(const LeftFrobeniusModule& m);

/// Dual left module: B = sigma^e(A)^T in column-vector form.
LeftFrobeniusModule dual(const SemilinearModule& m);
/// Inverse construction: A = sigma^{-e}(B^T).
SemilinearModule dual(const LeftFrobeniusModule& m);

/// Every F_q-linear combination of `basis` (q^k vectors of F_q coefficients
/// applied in order). Throws ResourceError above `cap`.
std::vector<Matrix> fq_span_elements(const GaloisField& field, const std::vector<Matrix>& basis,
                                     std::uint64_t cap);

}  // namespace cartier
