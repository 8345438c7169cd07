#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "cartier/galois_field.hpp"

namespace cartier {

/// Exponent vector, one entry per ring variable.
using Monomial = std::vector<std::uint32_t>;

std::uint64_t total_degree(const Monomial& m);
bool divides(const Monomial& a, const Monomial& b);
Monomial lcm(const Monomial& a, const Monomial& b);
/// b / a, assuming divides(a, b).
Monomial quotient(const Monomial& b, const Monomial& a);
Monomial product(const Monomial& a, const Monomial& b);
bool coprime(const Monomial& a, const Monomial& b);

class MonomialOrder {
 public:
  enum class Kind { grevlex, lex, block };

  static MonomialOrder grevlex() { return MonomialOrder(Kind::grevlex, 0); }
  static MonomialOrder lex() { return MonomialOrder(Kind::lex, 0); }
  /// grevlex on the first k variables, ties broken by grevlex on the rest;
  /// eliminates the first k variables.
  static MonomialOrder block_elimination(std::size_t k) { return MonomialOrder(Kind::block, k); }

  Kind kind() const { return kind_; }
  std::size_t block_size() const { return block_; }
  std::strong_ordering compare(const Monomial& a, const Monomial& b) const;
  std::string name() const;

  friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;

 private:
  MonomialOrder(Kind kind, std::size_t block) : kind_(kind), block_(block) {}

  Kind kind_;
  std::size_t block_;
};

inline constexpr std::uint64_t kDefaultDegreeBound = 200;

/// k[x_1..x_n] with a fixed monomial order and an intermediate degree guard.
class PolynomialRing {
 public:
  static std::shared_ptr<const PolynomialRing> create(FieldPtr field, std::vector<std::string> vars,
                                                      MonomialOrder order = MonomialOrder::grevlex(),
                                                      std::uint64_t degree_bound = kDefaultDegreeBound);

  const FieldPtr& field() const { return field_; }
  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t nvars() const { return vars_.size(); }
  const MonomialOrder& order() const { return order_; }
  std::uint64_t degree_bound() const { return degree_bound_; }
  /// Index of a variable name, or -1.
  int index_of(std::string_view name) const;

  /// Same field and variables under another order.
  std::shared_ptr<const PolynomialRing> with_order(MonomialOrder order) const;

  /// Throws ResourceError when deg exceeds the degree bound.
  void check_degree(std::uint64_t deg) const;

 private:
  PolynomialRing(FieldPtr field, std::vector<std::string> vars, MonomialOrder order, std::uint64_t bound)
      : field_(std::move(field)), vars_(std::move(vars)), order_(order), degree_bound_(bound) {}

  FieldPtr field_;
  std::vector<std::string> vars_;
  MonomialOrder order_;
  std::uint64_t degree_bound_;
};

using RingPtr = std::shared_ptr<const PolynomialRing>;

/// Same field, variables and order.
bool same_ring(const PolynomialRing& a, const PolynomialRing& b);

struct Term {
  Monomial exponents;
  Elem coeff = 0;

  friend bool operator==(const Term&, const Term&) = default;
};

/// Sparse polynomial; terms are kept sorted descending in the ring's order
/// with no zero coefficients, so equality is structural.
class Polynomial {
 public:
  explicit Polynomial(RingPtr ring);
  static Polynomial constant(RingPtr ring, Elem c);
  static Polynomial variable(RingPtr ring, std::size_t index);
  static Polynomial monomial(RingPtr ring, Monomial exponents, Elem coeff = 1);
  /// Combines like terms, drops zeros and sorts.
  static Polynomial from_terms(RingPtr ring, std::vector<Term> terms);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_monomial() const { return terms_.size() == 1; }
  const Term& leading_term() const;
  const Monomial& leading_monomial() const { return leading_term().exponents; }
  Elem leading_coeff() const { return leading_term().coeff; }
  std::uint64_t total_degree() const;
  /// Coefficient of a monomial (0 when absent).
  Elem coeff(const Monomial& m) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial scaled(Elem c) const;
  Polynomial times_term(const Monomial& m, Elem c) const;
  Polynomial pow(std::uint64_t n) const;
  /// Scales so the leading coefficient is 1 (zero stays zero).
  Polynomial monic() const;

  /// Same terms re-sorted in a ring with identical field and variables.
  Polynomial in_ring(const RingPtr& target) const;

  /// Canonical text, e.g. "x^2*y + 2*y + [0,1]"; "0" for zero.
  std::string to_string() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);

 private:
  Polynomial(RingPtr ring, std::vector<Term> sorted_terms)
      : ring_(std::move(ring)), terms_(std::move(sorted_terms)) {}

  RingPtr ring_;
  std::vector<Term> terms_;
};

/// Grammar: sums and differences of products of factors, a factor being an
/// integer, an element literal "[c0,c1,...]", a variable, or a parenthesised
/// expression, optionally raised to a nonnegative integer power.
Polynomial parse_polynomial(const RingPtr& ring, std::string_view text);

/// Splits on top-level commas (outside brackets and parentheses).
std::vector<std::string> split_top_level(std::string_view text);

}  // namespace cartier
