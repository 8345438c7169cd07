#pragma once

#include <utility>
#include <vector>

#include "cartier/semilinear.hpp"

namespace cartier {

/// Minimal representative: restrict to the stable image, then divide out the
/// nilpotent part of that restriction. Nil-isomorphic to m, with no nilpotent
/// submodules or quotients.
SemilinearModule minimal_rep(const SemilinearModule& m);
/// The other route: divide out the nilpotent part first, then restrict to the
/// stable image of the quotient. Isomorphic to minimal_rep(m).
SemilinearModule minimal_rep_quotient_first(const SemilinearModule& m);

bool is_nilpotent(const SemilinearModule& m);
/// No nilpotent submodule and surjective structural map.
bool is_minimal(const SemilinearModule& m);

/// phi: V -> W has nilpotent kernel and cokernel. Throws UsageError if phi
/// does not intertwine the structural maps.
bool is_nil_isomorphism(const Matrix& phi, const SemilinearModule& v, const SemilinearModule& w);

struct CrystalReport {
  SemilinearModule minimal;
  std::size_t quasi_length = 0;
  /// C(N) = N submodules of the minimal representative, canonically sorted.
  std::vector<Subspace> lattice;
  /// Covering relations (smaller index, larger index) into `lattice`.
  std::vector<std::pair<std::size_t, std::size_t>> cover_edges;
  /// Dimensions of the successive quotients of a maximal chain, ascending.
  std::vector<std::size_t> factor_dims;
};

/// Builds the lattice of C(N) = N submodules of minimal_rep(m) and checks that
/// every maximal chain has the same length (InvariantError otherwise).
CrystalReport jordan_holder(const SemilinearModule& m, std::uint64_t cap = kDefaultSubspaceCap);
std::size_t quasi_length(const SemilinearModule& m, std::uint64_t cap = kDefaultSubspaceCap);

/// M = M_0 >= M_0' >= M_1 >= M_1' >= ... >= M_n >= M_n' = 0 with M_i/M_i'
/// nilpotent and M_i'/M_{i+1} simple and non-nilpotent; n = quasi_length.
/// Returned flat, 2(n+1) subspaces of the ambient space.
std::vector<Subspace> nil_series(const SemilinearModule& m, std::uint64_t cap = kDefaultSubspaceCap);

/// Crystal homomorphisms, computed on minimal representatives.
HomSpace hom_crys(const SemilinearModule& v, const SemilinearModule& w);

/// Every C-stable subspace N satisfies C(N) = N.
bool anti_nilpotent(const SemilinearModule& m, std::uint64_t cap = kDefaultSubspaceCap);

enum class Isomorphism { isomorphic, not_isomorphic, profile_isomorphic };
const char* to_string(Isomorphism iso);

/// Exhaustive search for an invertible intertwiner when both dimensions are
/// at most 3 and the Hom space is small; otherwise compares invariant profiles
/// (dimension, nilord, stable-image dimension, fixed-point dimensions after
/// base change of degree 1..3).
Isomorphism compare_modules(const SemilinearModule& v, const SemilinearModule& w,
                            std::uint64_t cap = kDefaultSubspaceCap);

}  // namespace cartier
