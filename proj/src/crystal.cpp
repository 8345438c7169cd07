#include "cartier/crystal.hpp"

#include <algorithm>
#include <limits>

namespace cartier {

namespace {

// Lift subspaces of the restriction to `host` back into ambient coordinates.
Subspace lift_from(const Subspace& host, const Subspace& inner) {
  const auto host_basis = host.basis_vectors();
  const GaloisField& f = *host.field();
  std::vector<Vector> vectors;
  for (const auto& c : inner.basis_vectors()) {
    Vector v(host.ambient_dim(), 0);
    for (std::size_t i = 0; i < c.size(); ++i) v = add(f, v, scale(f, c[i], host_basis[i]));
    vectors.push_back(std::move(v));
  }
  return Subspace::span(host.field(), host.ambient_dim(), vectors);
}

struct Profile {
  std::size_t dim;
  Nilord nilord;
  std::size_t stable_dim;
  std::vector<std::size_t> fixed_dims;
  friend bool operator==(const Profile&, const Profile&) = default;
};

Profile profile_of(const SemilinearModule& m) {
  Profile out{m.dim(), nilpotence_order(m), stable_image(m).dim(), {}};
  for (std::uint32_t degree = 1; degree <= 3; ++degree) {
    out.fixed_dims.push_back(fixed_points(base_change(m, degree)).size());
  }
  return out;
}

}  // namespace

SemilinearModule minimal_rep(const SemilinearModule& m) {
  const auto restricted = restrict_to(m, stable_image(m));
  return quotient(restricted, nilpotent_part(restricted));
}

SemilinearModule minimal_rep_quotient_first(const SemilinearModule& m) {
  const auto reduced = quotient(m, nilpotent_part(m));
  return restrict_to(reduced, stable_image(reduced));
}

bool is_nilpotent(const SemilinearModule& m) { return nilpotence_order(m).has_value(); }

bool is_minimal(const SemilinearModule& m) {
  return nilpotent_part(m).dim() == 0 && m.image(Subspace::full(m.field(), m.dim())).dim() == m.dim();
}

bool is_nil_isomorphism(const Matrix& phi, const SemilinearModule& v, const SemilinearModule& w) {
  if (!is_homomorphism(phi, v, w)) throw UsageError("map does not intertwine the Cartier structures");
  const auto ker = Subspace::span(kernel(phi));
  const auto img = Subspace::span(phi.transpose());
  return is_nilpotent(restrict_to(v, ker)) && is_nilpotent(quotient(w, img));
}

CrystalReport jordan_holder(const SemilinearModule& m, std::uint64_t cap) {
  CrystalReport out{minimal_rep(m), 0, {}, {}, {}};
  for (auto& entry : enumerate_submodules(out.minimal, cap)) {
    if (entry.surjective) out.lattice.push_back(std::move(entry.space));
  }
  const std::size_t n = out.lattice.size();
  if (n == 0 || out.lattice.front().dim() != 0 || out.lattice.back().dim() != out.minimal.dim()) {
    throw InvariantError("submodule lattice lacks its bottom or top element");
  }

  // below[j] holds the strict subspaces of lattice[j] as a bitset.
  const std::size_t words = (n + 63) / 64;
  std::vector<std::vector<std::uint64_t>> below(n, std::vector<std::uint64_t>(words, 0));
  std::vector<std::vector<std::uint64_t>> above(n, std::vector<std::uint64_t>(words, 0));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (out.lattice[i].dim() < out.lattice[j].dim() && out.lattice[j].contains(out.lattice[i])) {
        below[j][i / 64] |= std::uint64_t{1} << (i % 64);
        above[i][j / 64] |= std::uint64_t{1} << (j % 64);
      }
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (!((below[j][i / 64] >> (i % 64)) & 1u)) continue;
      bool cover = true;
      for (std::size_t w = 0; w < words && cover; ++w) cover = (below[j][w] & above[i][w]) == 0;
      if (cover) out.cover_edges.emplace_back(i, j);
    }
  }

  // Longest and shortest chains from 0 (index 0) to the top (index n-1);
  // indices are sorted by dimension, so edges point forward.
  constexpr std::size_t unset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> longest(n, 0), shortest(n, unset), parent(n, unset);
  shortest[0] = 0;
  for (const auto& [i, j] : out.cover_edges) {
    if (shortest[i] == unset) continue;
    if (parent[j] == unset || longest[i] + 1 > longest[j]) {
      longest[j] = longest[i] + 1;
      parent[j] = i;
    }
    shortest[j] = std::min(shortest[j], shortest[i] + 1);
  }
  if (n > 1 && longest[n - 1] != shortest[n - 1]) {
    throw InvariantError("maximal chains of lengths " + std::to_string(shortest[n - 1]) + " and " +
                         std::to_string(longest[n - 1]) + " in the submodule lattice");
  }
  out.quasi_length = n > 1 ? longest[n - 1] : 0;
  for (std::size_t j = n - 1; j != 0 && parent[j] != unset; j = parent[j]) {
    out.factor_dims.push_back(out.lattice[j].dim() - out.lattice[parent[j]].dim());
  }
  std::sort(out.factor_dims.begin(), out.factor_dims.end());
  return out;
}

std::size_t quasi_length(const SemilinearModule& m, std::uint64_t cap) { return jordan_holder(m, cap).quasi_length; }

std::vector<Subspace> nil_series(const SemilinearModule& m, std::uint64_t cap) {
  // On the stable image C is bijective, so every C-stable subspace there is
  // C(N) = N and the factors of a maximal chain are simple and non-nilpotent.
  const Subspace top = stable_image(m);
  const auto restricted = restrict_to(m, top);
  const auto entries = enumerate_submodules(restricted, cap);

  std::vector<Subspace> out{Subspace::full(m.field(), m.dim()), top};
  Subspace current = Subspace::full(m.field(), restricted.dim());
  while (current.dim() > 0) {
    const Subspace* next = nullptr;
    for (const auto& entry : entries) {
      if (entry.space.dim() >= current.dim() || !current.contains(entry.space)) continue;
      if (next == nullptr || entry.space.dim() > next->dim()) next = &entry.space;
    }
    if (next == nullptr) throw InvariantError("lattice has no element below a nonzero submodule");
    current = *next;
    const auto lifted = lift_from(top, current);
    out.push_back(lifted);
    out.push_back(lifted);
  }
  return out;
}

HomSpace hom_crys(const SemilinearModule& v, const SemilinearModule& w) {
  return hom_space(minimal_rep(v), minimal_rep(w));
}

bool anti_nilpotent(const SemilinearModule& m, std::uint64_t cap) {
  const auto entries = enumerate_submodules(m, cap);
  return std::all_of(entries.begin(), entries.end(), [](const SubmoduleEntry& e) { return e.surjective; });
}

const char* to_string(Isomorphism iso) {
  switch (iso) {
    case Isomorphism::isomorphic: return "isomorphic";
    case Isomorphism::not_isomorphic: return "not-isomorphic";
    case Isomorphism::profile_isomorphic: return "profile-isomorphic";
  }
  return "unknown";
}

Isomorphism compare_modules(const SemilinearModule& v, const SemilinearModule& w, std::uint64_t cap) {
  if (!same_field(*v.field(), *w.field()) || v.field()->e() != w.field()->e()) {
    throw UsageError("modules over different fields");
  }
  if (v.dim() != w.dim()) return Isomorphism::not_isomorphic;
  if (v.dim() == 0) return Isomorphism::isomorphic;
  if (v.dim() <= 3) {
    const auto hom = hom_space(v, w);
    if (hom.cardinality() <= cap) {
      for (const auto& phi : fq_span_elements(*v.field(), hom.basis, cap)) {
        if (inverse(phi)) return Isomorphism::isomorphic;
      }
      return Isomorphism::not_isomorphic;
    }
  }
  return profile_of(v) == profile_of(w) ? Isomorphism::profile_isomorphic : Isomorphism::not_isomorphic;
}

}  // namespace cartier
