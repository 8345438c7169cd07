#include "cartier/ideal.hpp"

#include <algorithm>

namespace cartier {

namespace {

// A polynomial together with its expression sum cof[j] * gens[j] in terms of
// the input generators. `cof` stays empty when cofactors are not tracked.
struct Tracked {
  Polynomial poly;
  std::vector<Polynomial> cof;
};

Polynomial leading_part(const Polynomial& p) {
  const auto& lt = p.leading_term();
  return Polynomial::monomial(p.ring(), lt.exponents, lt.coeff);
}

// Full reduction of h modulo `basis`, updating cofactors alongside.
Tracked reduce(Tracked h, const std::vector<Tracked>& basis) {
  const GaloisField& f = *h.poly.ring()->field();
  Polynomial remainder(h.poly.ring());
  while (!h.poly.is_zero()) {
    const Term& lt = h.poly.leading_term();
    const Tracked* divisor = nullptr;
    for (const auto& b : basis) {
      if (divides(b.poly.leading_monomial(), lt.exponents)) {
        divisor = &b;
        break;
      }
    }
    if (!divisor) {
      const Polynomial head = leading_part(h.poly);
      remainder += head;
      h.poly -= head;
      continue;
    }
    const Monomial m = quotient(lt.exponents, divisor->poly.leading_monomial());
    const Elem c = f.div(lt.coeff, divisor->poly.leading_coeff());
    h.poly -= divisor->poly.times_term(m, c);
    for (std::size_t j = 0; j < h.cof.size(); ++j) h.cof[j] -= divisor->cof[j].times_term(m, c);
  }
  h.poly = std::move(remainder);
  return h;
}

Tracked make_monic(Tracked t) {
  const Elem inv = t.poly.ring()->field()->inv(t.poly.leading_coeff());
  t.poly = t.poly.scaled(inv);
  for (auto& c : t.cof) c = c.scaled(inv);
  return t;
}

Tracked s_polynomial(const Tracked& a, const Tracked& b) {
  const Monomial l = lcm(a.poly.leading_monomial(), b.poly.leading_monomial());
  const GaloisField& f = *a.poly.ring()->field();
  const Monomial ma = quotient(l, a.poly.leading_monomial());
  const Monomial mb = quotient(l, b.poly.leading_monomial());
  const Elem ca = f.inv(a.poly.leading_coeff());
  const Elem cb = f.inv(b.poly.leading_coeff());
  Tracked s{a.poly.times_term(ma, ca) - b.poly.times_term(mb, cb), {}};
  for (std::size_t j = 0; j < a.cof.size(); ++j) {
    s.cof.push_back(a.cof[j].times_term(ma, ca) - b.cof[j].times_term(mb, cb));
  }
  return s;
}

// Buchberger's algorithm; returns a (not necessarily reduced) Groebner basis.
std::vector<Tracked> buchberger(std::vector<Tracked> input) {
  std::vector<Tracked> basis;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  auto add = [&](Tracked t) {
    basis.push_back(make_monic(std::move(t)));
    for (std::size_t i = 0; i + 1 < basis.size(); ++i) pairs.emplace_back(i, basis.size() - 1);
  };
  for (auto& t : input) {
    if (t.poly.is_zero()) continue;
    Tracked r = reduce(std::move(t), basis);
    if (!r.poly.is_zero()) add(std::move(r));
  }
  while (!pairs.empty()) {
    // Normal selection strategy: smallest lcm first.
    const MonomialOrder& ord = basis.front().poly.ring()->order();
    std::size_t best = 0;
    Monomial best_lcm;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      Monomial l = lcm(basis[pairs[k].first].poly.leading_monomial(), basis[pairs[k].second].poly.leading_monomial());
      if (k == 0 || ord.compare(l, best_lcm) < 0) {
        best = k;
        best_lcm = std::move(l);
      }
    }
    const auto [i, j] = pairs[best];
    pairs.erase(pairs.begin() + static_cast<std::ptrdiff_t>(best));
    if (coprime(basis[i].poly.leading_monomial(), basis[j].poly.leading_monomial())) continue;
    Tracked r = reduce(s_polynomial(basis[i], basis[j]), basis);
    if (!r.poly.is_zero()) add(std::move(r));
  }
  return basis;
}

std::vector<Tracked> untracked(const std::vector<Polynomial>& gens) {
  std::vector<Tracked> out;
  for (const auto& g : gens) out.push_back({g, {}});
  return out;
}

std::vector<Polynomial> reduced_basis(std::vector<Tracked> gb) {
  if (gb.empty()) return {};
  const MonomialOrder& ord = gb.front().poly.ring()->order();
  std::sort(gb.begin(), gb.end(), [&](const Tracked& a, const Tracked& b) {
    return ord.compare(a.poly.leading_monomial(), b.poly.leading_monomial()) < 0;
  });
  std::vector<Tracked> minimal;
  for (auto& g : gb) {
    const bool redundant = std::any_of(minimal.begin(), minimal.end(), [&](const Tracked& h) {
      return divides(h.poly.leading_monomial(), g.poly.leading_monomial());
    });
    if (!redundant) minimal.push_back(std::move(g));
  }
  std::vector<Polynomial> out;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Tracked> others;
    for (std::size_t j = 0; j < minimal.size(); ++j) {
      if (j != i) others.push_back({minimal[j].poly, {}});
    }
    out.push_back(make_monic(reduce({minimal[i].poly, {}}, others)).poly);
  }
  std::sort(out.begin(), out.end(), [&](const Polynomial& a, const Polynomial& b) {
    return ord.compare(a.leading_monomial(), b.leading_monomial()) > 0;
  });
  return out;
}

void require_same_ring(const Ideal& a, const Ideal& b) {
  if (!same_ring(*a.ring(), *b.ring())) throw UsageError("ideals belong to different rings");
}

}  // namespace

std::vector<Polynomial> groebner(const std::vector<Polynomial>& generators, const MonomialOrder& order) {
  if (generators.empty()) return {};
  const RingPtr ring = generators.front().ring()->order() == order ? generators.front().ring()
                                                                   : generators.front().ring()->with_order(order);
  std::vector<Polynomial> gens;
  for (const auto& g : generators) gens.push_back(g.in_ring(ring));
  return reduced_basis(buchberger(untracked(gens)));
}

std::vector<Polynomial> groebner(const std::vector<Polynomial>& generators) {
  if (generators.empty()) return {};
  return groebner(generators, generators.front().ring()->order());
}

Polynomial normal_form(const Polynomial& g, const std::vector<Polynomial>& basis) {
  for (const auto& b : basis) {
    if (!same_ring(*b.ring(), *g.ring())) throw UsageError("normal form against a basis from another ring");
  }
  return reduce({g, {}}, untracked(basis)).poly;
}

std::optional<std::vector<Polynomial>> lift(const Polynomial& g, const std::vector<Polynomial>& generators) {
  const RingPtr& ring = g.ring();
  std::vector<Tracked> input;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (!same_ring(*generators[i].ring(), *ring)) throw UsageError("lift against generators from another ring");
    Tracked t{generators[i], std::vector<Polynomial>(generators.size(), Polynomial(ring))};
    t.cof[i] = Polynomial::constant(ring, 1);
    input.push_back(std::move(t));
  }
  const auto gb = buchberger(std::move(input));
  Tracked h{g, std::vector<Polynomial>(generators.size(), Polynomial(ring))};
  h = reduce(std::move(h), gb);
  if (!h.poly.is_zero()) return std::nullopt;
  for (auto& c : h.cof) c = -c;
  return h.cof;
}

Polynomial exact_divide(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw DomainError("division by the zero polynomial");
  const GaloisField& f = *a.ring()->field();
  Polynomial q(a.ring());
  Polynomial r = a;
  while (!r.is_zero()) {
    if (!divides(b.leading_monomial(), r.leading_monomial())) throw DomainError("inexact polynomial division");
    const Monomial m = quotient(r.leading_monomial(), b.leading_monomial());
    const Elem c = f.div(r.leading_coeff(), b.leading_coeff());
    q += Polynomial::monomial(a.ring(), m, c);
    r -= b.times_term(m, c);
  }
  return q;
}

Ideal::Ideal(RingPtr ring, std::vector<Polynomial> generators) : ring_(std::move(ring)) {
  for (auto& g : generators) {
    if (!same_ring(*g.ring(), *ring_)) throw UsageError("generator belongs to a different ring");
    if (!g.is_zero()) generators_.push_back(std::move(g));
  }
  basis_ = groebner(generators_);
}

Ideal Ideal::unit(RingPtr ring) {
  auto one = Polynomial::constant(ring, 1);
  return Ideal(std::move(ring), {std::move(one)});
}

Ideal Ideal::parse(const RingPtr& ring, std::string_view text) {
  std::vector<Polynomial> gens;
  for (const auto& piece : split_top_level(text)) gens.push_back(parse_polynomial(ring, piece));
  return Ideal(ring, std::move(gens));
}

bool Ideal::is_unit() const { return basis_.size() == 1 && basis_.front().is_constant(); }

bool Ideal::contains(const Ideal& other) const {
  require_same_ring(*this, other);
  return std::all_of(other.basis_.begin(), other.basis_.end(), [&](const Polynomial& g) { return contains(g); });
}

std::vector<std::string> Ideal::to_strings() const {
  std::vector<std::string> out;
  for (const auto& g : basis_) out.push_back(g.to_string());
  return out;
}

std::string Ideal::to_string() const {
  if (basis_.empty()) return "(0)";
  std::string out = "(";
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (i) out += ", ";
    out += basis_[i].to_string();
  }
  return out + ")";
}

bool operator==(const Ideal& a, const Ideal& b) {
  return same_ring(*a.ring_, *b.ring_) && a.basis_ == b.basis_;
}

Ideal operator+(const Ideal& a, const Ideal& b) {
  require_same_ring(a, b);
  auto gens = a.basis();
  gens.insert(gens.end(), b.basis().begin(), b.basis().end());
  return Ideal(a.ring(), std::move(gens));
}

Ideal operator*(const Ideal& a, const Ideal& b) {
  require_same_ring(a, b);
  std::vector<Polynomial> gens;
  for (const auto& f : a.basis())
    for (const auto& g : b.basis()) gens.push_back(f * g);
  return Ideal(a.ring(), std::move(gens));
}

Ideal intersect(const Ideal& a, const Ideal& b) {
  require_same_ring(a, b);
  if (a.is_zero() || b.is_zero()) return Ideal::zero(a.ring());
  if (a.is_unit()) return b;
  if (b.is_unit()) return a;

  const RingPtr& ring = a.ring();
  std::string aux = "_t";
  while (ring->index_of(aux) >= 0) aux += '_';
  std::vector<std::string> vars{aux};
  vars.insert(vars.end(), ring->vars().begin(), ring->vars().end());
  const RingPtr big =
      PolynomialRing::create(ring->field(), std::move(vars), MonomialOrder::block_elimination(1), ring->degree_bound());

  auto lift_up = [&](const Polynomial& p) {
    std::vector<Term> terms;
    for (const auto& t : p.terms()) {
      Monomial m{0};
      m.insert(m.end(), t.exponents.begin(), t.exponents.end());
      terms.push_back({std::move(m), t.coeff});
    }
    return Polynomial::from_terms(big, std::move(terms));
  };
  const Polynomial t = Polynomial::variable(big, 0);
  const Polynomial one_minus_t = Polynomial::constant(big, 1) - t;
  std::vector<Polynomial> gens;
  for (const auto& f : a.basis()) gens.push_back(t * lift_up(f));
  for (const auto& g : b.basis()) gens.push_back(one_minus_t * lift_up(g));

  std::vector<Polynomial> kept;
  for (const auto& g : groebner(gens)) {
    if (g.leading_monomial()[0] != 0) continue;  // block order: t-free iff leading term t-free
    std::vector<Term> terms;
    for (const auto& term : g.terms()) terms.push_back({Monomial(term.exponents.begin() + 1, term.exponents.end()), term.coeff});
    kept.push_back(Polynomial::from_terms(ring, std::move(terms)));
  }
  return Ideal(ring, std::move(kept));
}

Ideal colon(const Ideal& i, const Polynomial& g) {
  if (!same_ring(*i.ring(), *g.ring())) throw UsageError("colon by a polynomial from another ring");
  if (g.is_zero()) throw DomainError("colon by the zero polynomial");
  const Ideal meet = intersect(i, Ideal(i.ring(), {g}));
  std::vector<Polynomial> gens;
  for (const auto& h : meet.basis()) gens.push_back(exact_divide(h, g));
  return Ideal(i.ring(), std::move(gens));
}

Ideal colon(const Ideal& i, const Ideal& j) {
  require_same_ring(i, j);
  Ideal result = Ideal::unit(i.ring());
  for (const auto& g : j.basis()) result = intersect(result, colon(i, g));
  return result;
}

bool is_monomial_ideal(const Ideal& i) {
  return std::all_of(i.basis().begin(), i.basis().end(), [](const Polynomial& g) { return g.is_monomial(); });
}

bool is_squarefree_monomial_ideal(const Ideal& i) {
  if (!is_monomial_ideal(i)) throw UsageError("ideal is not generated by monomials");
  for (const auto& g : i.basis()) {
    for (auto x : g.leading_monomial()) {
      if (x > 1) return false;
    }
  }
  return true;
}

Ideal monomial_radical(const Ideal& i) {
  if (!is_monomial_ideal(i)) throw UsageError("ideal is not generated by monomials");
  std::vector<Polynomial> gens;
  for (const auto& g : i.basis()) {
    Monomial m = g.leading_monomial();
    for (auto& x : m) x = std::min<std::uint32_t>(x, 1);
    gens.push_back(Polynomial::monomial(i.ring(), std::move(m)));
  }
  return Ideal(i.ring(), std::move(gens));
}

bool canonical_less(const Ideal& a, const Ideal& b) { return a.to_strings() < b.to_strings(); }

}  // namespace cartier
