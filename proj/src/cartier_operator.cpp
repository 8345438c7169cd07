#include "cartier/cartier_operator.hpp"

#include <algorithm>
#include <functional>
#include <limits>

namespace cartier {

namespace {

std::uint64_t power_of(std::uint32_t p, std::uint32_t level) {
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < level; ++i) {
    if (q > std::numeric_limits<std::uint32_t>::max()) throw UsageError("operator level too large");
    q *= p;
  }
  return q;
}

void require_level(std::uint32_t level) {
  if (level == 0) throw UsageError("operator level must be at least 1");
}

// Every b in [0,q)^n, in lexicographic order of the exponent vectors.
std::vector<Monomial> residue_box(std::size_t n, std::uint64_t q) {
  std::vector<Monomial> out;
  Monomial b(n, 0);
  for (;;) {
    out.push_back(b);
    std::size_t i = n;
    while (i > 0) {
      if (++b[i - 1] < q) break;
      b[i - 1] = 0;
      --i;
    }
    if (i == 0) break;
  }
  return out;
}

// g^q computed termwise: (sum c x^a)^q = sum c^q x^{qa} in characteristic p.
Polynomial frobenius_power(const Polynomial& g, std::uint32_t level, std::uint64_t q) {
  const GaloisField& f = *g.ring()->field();
  std::vector<Term> terms;
  for (const auto& t : g.terms()) {
    Monomial m = t.exponents;
    for (auto& x : m) x = static_cast<std::uint32_t>(x * q);
    terms.push_back({std::move(m), f.frobenius(t.coeff, level)});
  }
  return Polynomial::from_terms(g.ring(), std::move(terms));
}

void require_same_ring(const CartierOperator& op, const Ideal& i) {
  if (!same_ring(*op.ring(), *i.ring())) throw UsageError("operator and ideal live in different rings");
}

// Generators cartier_std(f x^b g) spanning op(I).
std::vector<Polynomial> image_generators(const CartierOperator& op, const Ideal& i) {
  std::vector<Polynomial> gens;
  const auto box = residue_box(op.ring()->nvars(), op.q());
  for (const auto& g : i.basis()) {
    const Polynomial fg = op.multiplier() * g;
    for (const auto& b : box) {
      Polynomial image = cartier_std(fg.times_term(b, 1), op.level());
      if (!image.is_zero()) gens.push_back(std::move(image));
    }
  }
  return gens;
}

}  // namespace

std::map<Monomial, Polynomial> frobenius_descent(const Polynomial& g, std::uint32_t level) {
  require_level(level);
  const GaloisField& f = *g.ring()->field();
  const std::uint64_t q = power_of(f.p(), level);
  std::map<Monomial, std::vector<Term>> parts;
  for (const auto& t : g.terms()) {
    Monomial b(t.exponents.size()), s(t.exponents.size());
    for (std::size_t j = 0; j < b.size(); ++j) {
      b[j] = static_cast<std::uint32_t>(t.exponents[j] % q);
      s[j] = static_cast<std::uint32_t>(t.exponents[j] / q);
    }
    parts[b].push_back({std::move(s), f.inv_frobenius(t.coeff, level)});
  }
  std::map<Monomial, Polynomial> out;
  for (auto& [b, terms] : parts) out.emplace(b, Polynomial::from_terms(g.ring(), std::move(terms)));
  return out;
}

Polynomial cartier_std(const Polynomial& g, std::uint32_t level) {
  require_level(level);
  const GaloisField& f = *g.ring()->field();
  const std::uint64_t q = power_of(f.p(), level);
  std::vector<Term> terms;
  for (const auto& t : g.terms()) {
    Monomial m(t.exponents.size());
    bool integral = true;
    for (std::size_t j = 0; j < m.size() && integral; ++j) {
      const std::uint64_t shifted = std::uint64_t{t.exponents[j]} + 1;
      if (shifted % q != 0) {
        integral = false;
      } else {
        m[j] = static_cast<std::uint32_t>(shifted / q - 1);
      }
    }
    if (integral) terms.push_back({std::move(m), f.inv_frobenius(t.coeff, level)});
  }
  return Polynomial::from_terms(g.ring(), std::move(terms));
}

CartierOperator::CartierOperator(Polynomial multiplier, std::uint32_t level)
    : multiplier_(std::move(multiplier)), level_(level) {
  require_level(level_);
  power_of(ring()->field()->p(), level_);
}

std::uint64_t CartierOperator::q() const { return power_of(ring()->field()->p(), level_); }

Polynomial CartierOperator::operator()(const Polynomial& g) const { return cartier_std(multiplier_ * g, level_); }

Polynomial op_apply(const CartierOperator& op, const Polynomial& g) { return op(g); }

CartierOperator compose(const CartierOperator& outer, const CartierOperator& inner) {
  if (outer.level() != inner.level()) throw UsageError("composition of operators at different levels");
  if (!same_ring(*outer.ring(), *inner.ring())) throw UsageError("composition of operators on different rings");
  const Polynomial f = frobenius_power(outer.multiplier(), outer.level(), outer.q()) * inner.multiplier();
  return CartierOperator(f, 2 * outer.level());
}

Ideal image_ideal(const CartierOperator& op, const Ideal& i) {
  require_same_ring(op, i);
  return Ideal(i.ring(), image_generators(op, i));
}

StableImage stable_image(const CartierOperator& op, const Ideal& i, std::size_t cap) {
  Ideal current = i;
  for (std::size_t k = 0; k <= cap; ++k) {
    Ideal next = image_ideal(op, current);
    if (next == current) return {std::move(current), k};
    if (k == cap) {
      throw ResourceError("stable image not reached after " + std::to_string(cap) +
                          " iterations; last ideals " + current.to_string() + " and " + next.to_string());
    }
    current = std::move(next);
  }
  throw InvariantError("unreachable");
}

Ideal smallest_submodule_containing(const CartierOperator& op, const Ideal& j, std::size_t cap) {
  Ideal current = j;
  for (std::size_t k = 0; k <= cap; ++k) {
    Ideal next = current + image_ideal(op, current);
    if (next == current) return current;
    current = std::move(next);
  }
  throw ResourceError("ascending chain did not stabilize within " + std::to_string(cap) + " iterations");
}

bool is_compatible(const CartierOperator& op, const Ideal& i) {
  require_same_ring(op, i);
  const auto gens = image_generators(op, i);
  return std::all_of(gens.begin(), gens.end(), [&](const Polynomial& g) { return i.contains(g); });
}

bool is_fixed(const CartierOperator& op, const Ideal& i) { return image_ideal(op, i) == i; }

bool is_split(const CartierOperator& op) { return image_ideal(op, Ideal::unit(op.ring())).is_unit(); }

std::optional<Polynomial> find_splitting(const CartierOperator& op) {
  const RingPtr& ring = op.ring();
  const auto box = residue_box(ring->nvars(), op.q());
  std::vector<Polynomial> images;
  for (const auto& b : box) images.push_back(cartier_std(op.multiplier().times_term(b, 1), op.level()));
  const auto cofactors = lift(Polynomial::constant(ring, 1), images);
  if (!cofactors) return std::nullopt;
  Polynomial h(ring);
  for (std::size_t k = 0; k < box.size(); ++k) {
    h += frobenius_power((*cofactors)[k], op.level(), op.q()).times_term(box[k], 1);
  }
  if (!(op(h) == Polynomial::constant(ring, 1))) throw InvariantError("splitting witness does not map to 1");
  return h;
}

std::uint64_t squarefree_monomial_ideal_count(std::size_t n) {
  static constexpr std::uint64_t dedekind[] = {2, 3, 6, 20, 168, 7581, 7828354, 2414682040998ULL};
  return n < std::size(dedekind) ? dedekind[n] : std::numeric_limits<std::uint64_t>::max();
}

std::vector<Ideal> enumerate_compatible_monomial(const CartierOperator& op, std::uint64_t cap) {
  if (!op.multiplier().is_monomial()) throw UsageError("compatible enumeration needs a monomial multiplier");
  if (!is_split(op)) throw UsageError("compatible enumeration needs a split operator");
  const RingPtr& ring = op.ring();
  const std::size_t n = ring->nvars();
  const std::uint64_t count = squarefree_monomial_ideal_count(n);
  if (count > cap) {
    throw ResourceError("enumeration needs " + std::to_string(count) + " candidate ideals, cap is " +
                        std::to_string(cap));
  }
  const std::uint32_t subsets = 1u << n;
  auto to_poly = [&](std::uint32_t mask) {
    Monomial m(n, 0);
    for (std::size_t j = 0; j < n; ++j) m[j] = (mask >> j) & 1u;
    return Polynomial::monomial(ring, std::move(m));
  };

  std::vector<Ideal> out;
  std::vector<std::uint32_t> chosen;
  std::function<void(std::uint32_t)> visit = [&](std::uint32_t next) {
    if (next == subsets) {
      std::vector<Polynomial> gens;
      for (auto mask : chosen) gens.push_back(to_poly(mask));
      Ideal ideal(ring, std::move(gens));
      if (is_compatible(op, ideal)) out.push_back(std::move(ideal));
      return;
    }
    visit(next + 1);
    const bool comparable = std::any_of(chosen.begin(), chosen.end(), [&](std::uint32_t c) {
      return (c & next) == c || (c & next) == next;
    });
    if (!comparable) {
      chosen.push_back(next);
      visit(next + 1);
      chosen.pop_back();
    }
  };
  visit(0);
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

IdealModule::IdealModule(CartierOperator op, Ideal j) : op_(std::move(op)), ideal_(std::move(j)) {
  require_same_ring(op_, ideal_);
  if (!is_compatible(op_, ideal_)) throw UsageError("ideal " + ideal_.to_string() + " is not op-compatible");
}

NilpotenceReport quotient_nilpotence(const IdealModule& m, std::size_t cap) {
  const Ideal& j = m.ideal();
  Ideal k = Ideal::unit(j.ring());
  for (std::size_t i = 0; i <= cap; ++i) {
    if (j.contains(k)) return {i, i, j};
    Ideal next = image_ideal(m.op(), k) + j;
    if (next == k) return {std::nullopt, i, std::move(k)};
    k = std::move(next);
  }
  throw ResourceError("nilpotence chain did not stabilize within " + std::to_string(cap) + " iterations");
}

SupportReport supp_crys(const IdealModule& m, std::size_t cap) {
  auto report = quotient_nilpotence(m, cap);
  return {colon(m.ideal(), report.stable), report.iterations};
}

AnnihilatorReport annihilator_submodule(const IdealModule& m, const Ideal& i) {
  if (!same_ring(*m.ideal().ring(), *i.ring())) throw UsageError("ideal from another ring");
  AnnihilatorReport out{colon(m.ideal(), i), m.ideal().contains(i)};
  if (!out.colon.contains(image_ideal(m.op(), out.colon))) {
    throw InvariantError("annihilator submodule is not stable under the operator");
  }
  return out;
}

}  // namespace cartier
