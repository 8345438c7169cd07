#pragma once

#include <map>
#include <optional>
#include <vector>

#include "cartier/ideal.hpp"

namespace cartier {

inline constexpr std::size_t kDefaultIterationCap = 64;

/// Frobenius descent: g = sum_b g_b^q x^b over b in [0,q)^n. Keys are the
/// exponent vectors b; components that vanish are omitted.
std::map<Monomial, Polynomial> frobenius_descent(const Polynomial& g, std::uint32_t level);

/// Classical Cartier operator at level e with the dx_1..dx_n trivialization:
/// c x^a -> c^{1/q} x^{(a+1)/q - 1} when q divides every a_j + 1, else 0.
Polynomial cartier_std(const Polynomial& g, std::uint32_t level);

/// The q^{-1}-linear operator g -> cartier_std(f g) on R = k[x_1..x_n].
class CartierOperator {
 public:
  explicit CartierOperator(Polynomial multiplier, std::uint32_t level = 1);

  const Polynomial& multiplier() const { return multiplier_; }
  std::uint32_t level() const { return level_; }
  const RingPtr& ring() const { return multiplier_.ring(); }
  /// p^level.
  std::uint64_t q() const;

  Polynomial operator()(const Polynomial& g) const;

 private:
  Polynomial multiplier_;
  std::uint32_t level_;
};

Polynomial op_apply(const CartierOperator& op, const Polynomial& g);

/// outer o inner as a single operator: multiplier outer.f^q * inner.f at
/// level 2e (both operators at the same level).
CartierOperator compose(const CartierOperator& outer, const CartierOperator& inner);

/// R-span of op(I): generated by cartier_std(f x^b g_i) over b in [0,q)^n
/// and generators g_i of I.
Ideal image_ideal(const CartierOperator& op, const Ideal& i);

struct StableImage {
  Ideal ideal;
  std::size_t iterations = 0;  // least k with op^k(I) = op^{k+1}(I)
};

/// Iterates I, op(I), op^2(I), ... until two consecutive ideals agree.
/// Throws ResourceError (with the last two ideals) past `cap` steps.
StableImage stable_image(const CartierOperator& op, const Ideal& i, std::size_t cap = kDefaultIterationCap);

/// Smallest op-compatible ideal containing J: the limit of J + op(J) + ...
Ideal smallest_submodule_containing(const CartierOperator& op, const Ideal& j,
                                    std::size_t cap = kDefaultIterationCap);

/// op(I) is contained in I.
bool is_compatible(const CartierOperator& op, const Ideal& i);
/// op(I) = I.
bool is_fixed(const CartierOperator& op, const Ideal& i);

/// 1 lies in op(R).
bool is_split(const CartierOperator& op);
/// h with cartier_std(f h) = 1, built from cofactors of 1 over the image
/// generators; nullopt when the operator does not split.
std::optional<Polynomial> find_splitting(const CartierOperator& op);

/// Number of antichains of subsets of an n-element set (squarefree monomial
/// ideals of k[x_1..x_n], including (0) and (1)); saturates for n > 7.
std::uint64_t squarefree_monomial_ideal_count(std::size_t n);

/// All op-compatible ideals for a split operator with monomial multiplier,
/// found by brute force over squarefree monomial ideals; sorted canonically.
std::vector<Ideal> enumerate_compatible_monomial(const CartierOperator& op, std::uint64_t cap = 100000);

/// M = R/J with the operator induced by op; requires op(J) in J.
class IdealModule {
 public:
  IdealModule(CartierOperator op, Ideal j);

  const CartierOperator& op() const { return op_; }
  const Ideal& ideal() const { return ideal_; }

 private:
  CartierOperator op_;
  Ideal ideal_;
};

struct NilpotenceReport {
  std::optional<std::size_t> order;  // nullopt: not nilpotent
  std::size_t iterations = 0;
  Ideal stable;                      // K_infinity = op^i(R) + J for large i
  bool nilpotent() const { return order.has_value(); }
};

/// Iterates K_0 = R, K_{i+1} = op(K_i) + J. R/J is nilpotent of order i iff
/// K_i is contained in J.
NilpotenceReport quotient_nilpotence(const IdealModule& m, std::size_t cap = kDefaultIterationCap);

struct SupportReport {
  Ideal ann;  // annihilator of the stable image of R/J
  std::size_t iterations = 0;
};

/// Crystalline support of R/J as the annihilator (J : K_infinity).
SupportReport supp_crys(const IdealModule& m, std::size_t cap = kDefaultIterationCap);

struct AnnihilatorReport {
  Ideal colon;              // preimage of M[I] = {m : I m = 0}
  bool whole_module = false;  // M[I] = M, i.e. I is contained in J
};

/// (J : I); throws InvariantError if it is not op-stable.
AnnihilatorReport annihilator_submodule(const IdealModule& m, const Ideal& i);

}  // namespace cartier
