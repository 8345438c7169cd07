#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cartier/polynomial.hpp"

namespace cartier {

/// Reduced Groebner basis of the ideal generated by `generators`, computed
/// with Buchberger's algorithm (coprime-leading-monomial criterion) in the
/// ring re-ordered by `order`. Sorted by descending leading monomial.
std::vector<Polynomial> groebner(const std::vector<Polynomial>& generators, const MonomialOrder& order);
/// Same, under the generators' ring order.
std::vector<Polynomial> groebner(const std::vector<Polynomial>& generators);

/// Remainder of g on division by `basis` (fully reduced).
Polynomial normal_form(const Polynomial& g, const std::vector<Polynomial>& basis);

/// Cofactors h_i with g = sum h_i * generators[i], or nullopt when g is not in
/// the ideal. Uses Buchberger with cofactor bookkeeping.
std::optional<std::vector<Polynomial>> lift(const Polynomial& g, const std::vector<Polynomial>& generators);

/// Exact quotient a / b; throws DomainError when b does not divide a.
Polynomial exact_divide(const Polynomial& a, const Polynomial& b);

/// Ideal of a polynomial ring with its reduced Groebner basis under the ring
/// order, computed once at construction.
class Ideal {
 public:
  Ideal(RingPtr ring, std::vector<Polynomial> generators);
  static Ideal zero(RingPtr ring) { return Ideal(std::move(ring), {}); }
  static Ideal unit(RingPtr ring);
  /// Parses a comma-separated generator list; "" or "0" gives the zero ideal.
  static Ideal parse(const RingPtr& ring, std::string_view text);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Polynomial>& generators() const { return generators_; }
  const std::vector<Polynomial>& basis() const { return basis_; }

  bool is_zero() const { return basis_.empty(); }
  bool is_unit() const;
  Polynomial normal_form(const Polynomial& g) const { return cartier::normal_form(g, basis_); }
  bool contains(const Polynomial& g) const { return normal_form(g).is_zero(); }
  bool contains(const Ideal& other) const;

  /// Basis elements as canonical strings.
  std::vector<std::string> to_strings() const;
  /// "(g1, g2)" with "(0)" for the zero ideal.
  std::string to_string() const;

  friend bool operator==(const Ideal& a, const Ideal& b);

 private:
  RingPtr ring_;
  std::vector<Polynomial> generators_;
  std::vector<Polynomial> basis_;
};

Ideal operator+(const Ideal& a, const Ideal& b);
Ideal operator*(const Ideal& a, const Ideal& b);
/// Eliminates t from t*I + (1-t)*J under a block order.
Ideal intersect(const Ideal& a, const Ideal& b);
/// (I : g) = (1/g)(I intersect (g)); g must be nonzero.
Ideal colon(const Ideal& i, const Polynomial& g);
/// (I : J) as the intersection of (I : g) over the basis of J.
Ideal colon(const Ideal& i, const Ideal& j);

/// Reduced basis consists of monomials.
bool is_monomial_ideal(const Ideal& i);
/// Throws UsageError for a non-monomial ideal.
bool is_squarefree_monomial_ideal(const Ideal& i);
Ideal monomial_radical(const Ideal& i);

/// Canonical ordering by the basis strings; used to sort ideal lists.
bool canonical_less(const Ideal& a, const Ideal& b);

}  // namespace cartier
