#include "cartier/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <limits>
#include <map>

namespace cartier {

std::uint64_t total_degree(const Monomial& m) {
  std::uint64_t d = 0;
  for (auto x : m) d += x;
  return d;
}

bool divides(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::max(a[i], b[i]);
  return out;
}

Monomial quotient(const Monomial& b, const Monomial& a) {
  Monomial out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = b[i] - a[i];
  return out;
}

Monomial product(const Monomial& a, const Monomial& b) {
  Monomial out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

bool coprime(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] && b[i]) return false;
  }
  return true;
}

namespace {

std::strong_ordering grevlex_range(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) {
  std::uint64_t da = 0, db = 0;
  for (std::size_t i = lo; i < hi; ++i) {
    da += a[i];
    db += b[i];
  }
  if (da != db) return da <=> db;
  for (std::size_t i = hi; i-- > lo;) {
    if (a[i] != b[i]) return b[i] <=> a[i];  // smaller last exponent is larger
  }
  return std::strong_ordering::equal;
}

}  // namespace

std::strong_ordering MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  switch (kind_) {
    case Kind::lex:
      return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
    case Kind::grevlex:
      return grevlex_range(a, b, 0, a.size());
    case Kind::block: {
      const std::size_t k = std::min(block_, a.size());
      if (auto c = grevlex_range(a, b, 0, k); c != 0) return c;
      return grevlex_range(a, b, k, a.size());
    }
  }
  return std::strong_ordering::equal;
}

std::string MonomialOrder::name() const {
  switch (kind_) {
    case Kind::grevlex: return "grevlex";
    case Kind::lex: return "lex";
    case Kind::block: return "block-elimination(" + std::to_string(block_) + ")";
  }
  return "?";
}

RingPtr PolynomialRing::create(FieldPtr field, std::vector<std::string> vars, MonomialOrder order,
                               std::uint64_t degree_bound) {
  if (!field) throw UsageError("polynomial ring without a field");
  for (std::size_t i = 0; i < vars.size(); ++i) {
    const auto& v = vars[i];
    if (v.empty() || !(std::isalpha(static_cast<unsigned char>(v[0])) || v[0] == '_')) {
      throw UsageError("invalid variable name '" + v + "'");
    }
    for (char c : v) {
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) {
        throw UsageError("invalid variable name '" + v + "'");
      }
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (vars[j] == v) throw UsageError("duplicate variable '" + v + "'");
    }
  }
  return RingPtr(new PolynomialRing(std::move(field), std::move(vars), order, degree_bound));
}

int PolynomialRing::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i] == name) return static_cast<int>(i);
  }
  return -1;
}

RingPtr PolynomialRing::with_order(MonomialOrder order) const { return create(field_, vars_, order, degree_bound_); }

void PolynomialRing::check_degree(std::uint64_t deg) const {
  if (deg > degree_bound_) {
    throw ResourceError("intermediate polynomial of total degree " + std::to_string(deg) +
                        " exceeds the degree bound " + std::to_string(degree_bound_));
  }
}

bool same_ring(const PolynomialRing& a, const PolynomialRing& b) {
  return &a == &b || (same_field(*a.field(), *b.field()) && a.vars() == b.vars() && a.order() == b.order());
}

namespace {

void require_same(const Polynomial& a, const Polynomial& b) {
  if (!same_ring(*a.ring(), *b.ring())) throw UsageError("polynomials belong to different rings");
}

void sort_terms(const PolynomialRing& ring, std::vector<Term>& terms) {
  std::sort(terms.begin(), terms.end(), [&](const Term& a, const Term& b) {
    return ring.order().compare(a.exponents, b.exponents) > 0;
  });
}

}  // namespace

Polynomial::Polynomial(RingPtr ring) : ring_(std::move(ring)) {
  if (!ring_) throw UsageError("polynomial without a ring");
}

Polynomial Polynomial::constant(RingPtr ring, Elem c) {
  Polynomial out(ring);
  if (c != 0) out.terms_.push_back({Monomial(ring->nvars(), 0), c});
  return out;
}

Polynomial Polynomial::variable(RingPtr ring, std::size_t index) {
  if (index >= ring->nvars()) throw UsageError("variable index out of range");
  Monomial m(ring->nvars(), 0);
  m[index] = 1;
  return monomial(std::move(ring), std::move(m));
}

Polynomial Polynomial::monomial(RingPtr ring, Monomial exponents, Elem coeff) {
  if (exponents.size() != ring->nvars()) throw UsageError("monomial length does not match variable count");
  ring->check_degree(cartier::total_degree(exponents));
  Polynomial out(ring);
  if (coeff != 0) out.terms_.push_back({std::move(exponents), coeff});
  return out;
}

Polynomial Polynomial::from_terms(RingPtr ring, std::vector<Term> terms) {
  const GaloisField& f = *ring->field();
  for (const auto& t : terms) {
    if (t.exponents.size() != ring->nvars()) throw UsageError("monomial length does not match variable count");
    ring->check_degree(cartier::total_degree(t.exponents));
  }
  sort_terms(*ring, terms);
  std::vector<Term> out;
  for (auto& t : terms) {
    if (!out.empty() && out.back().exponents == t.exponents) {
      out.back().coeff = f.add(out.back().coeff, t.coeff);
    } else {
      if (!out.empty() && out.back().coeff == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().coeff == 0) out.pop_back();
  return Polynomial(std::move(ring), std::move(out));
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && cartier::total_degree(terms_[0].exponents) == 0);
}

const Term& Polynomial::leading_term() const {
  if (terms_.empty()) throw UsageError("leading term of the zero polynomial");
  return terms_.front();
}

std::uint64_t Polynomial::total_degree() const {
  std::uint64_t d = 0;
  for (const auto& t : terms_) d = std::max(d, cartier::total_degree(t.exponents));
  return d;
}

Elem Polynomial::coeff(const Monomial& m) const {
  for (const auto& t : terms_) {
    if (t.exponents == m) return t.coeff;
  }
  return 0;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& t : out.terms_) t.coeff = ring_->field()->neg(t.coeff);
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  require_same(*this, other);
  const GaloisField& f = *ring_->field();
  const MonomialOrder& ord = ring_->order();
  std::vector<Term> merged;
  merged.reserve(terms_.size() + other.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < other.terms_.size()) {
    if (j == other.terms_.size()) {
      merged.push_back(std::move(terms_[i++]));
    } else if (i == terms_.size()) {
      merged.push_back(other.terms_[j++]);
    } else {
      const auto c = ord.compare(terms_[i].exponents, other.terms_[j].exponents);
      if (c > 0) {
        merged.push_back(std::move(terms_[i++]));
      } else if (c < 0) {
        merged.push_back(other.terms_[j++]);
      } else {
        const Elem s = f.add(terms_[i].coeff, other.terms_[j].coeff);
        if (s != 0) merged.push_back({std::move(terms_[i].exponents), s});
        ++i;
        ++j;
      }
    }
  }
  terms_ = std::move(merged);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) { return *this += -other; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  require_same(a, b);
  if (a.is_zero() || b.is_zero()) return Polynomial(a.ring_);
  a.ring_->check_degree(a.total_degree() + b.total_degree());
  const GaloisField& f = *a.ring_->field();
  std::map<Monomial, Elem> acc;
  for (const auto& s : a.terms_) {
    for (const auto& t : b.terms_) {
      auto& slot = acc[product(s.exponents, t.exponents)];
      slot = f.add(slot, f.mul(s.coeff, t.coeff));
    }
  }
  std::vector<Term> terms;
  for (auto& [m, c] : acc) {
    if (c != 0) terms.push_back({m, c});
  }
  sort_terms(*a.ring_, terms);
  return Polynomial(a.ring_, std::move(terms));
}

Polynomial Polynomial::scaled(Elem c) const {
  if (c == 0) return Polynomial(ring_);
  Polynomial out = *this;
  for (auto& t : out.terms_) t.coeff = ring_->field()->mul(c, t.coeff);
  return out;
}

Polynomial Polynomial::times_term(const Monomial& m, Elem c) const {
  if (c == 0 || is_zero()) return Polynomial(ring_);
  ring_->check_degree(total_degree() + cartier::total_degree(m));
  Polynomial out = *this;
  for (auto& t : out.terms_) {
    t.exponents = product(t.exponents, m);
    t.coeff = ring_->field()->mul(c, t.coeff);
  }
  return out;  // multiplication by a monomial preserves the order
}

Polynomial Polynomial::pow(std::uint64_t n) const {
  if (n == 0) return constant(ring_, 1);
  if (!is_constant()) {
    const std::uint64_t deg = total_degree();
    if (n > ring_->degree_bound() / deg) {
      throw ResourceError("power of total degree above the degree bound " + std::to_string(ring_->degree_bound()));
    }
  }
  Polynomial result = constant(ring_, 1);
  Polynomial base = *this;
  for (;;) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (!n) break;
    base = base * base;
  }
  return result;
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  return scaled(ring_->field()->inv(leading_coeff()));
}

Polynomial Polynomial::in_ring(const RingPtr& target) const {
  if (!same_field(*ring_->field(), *target->field()) || ring_->vars() != target->vars()) {
    throw UsageError("target ring has a different field or variables");
  }
  std::vector<Term> terms = terms_;
  sort_terms(*target, terms);
  return Polynomial(target, std::move(terms));
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  const GaloisField& f = *ring_->field();
  std::string out;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i) out += " + ";
    const auto& t = terms_[i];
    std::string mono;
    for (std::size_t v = 0; v < t.exponents.size(); ++v) {
      if (t.exponents[v] == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += ring_->vars()[v];
      if (t.exponents[v] > 1) mono += '^' + std::to_string(t.exponents[v]);
    }
    const std::string coeff = f.d() == 1 ? std::to_string(t.coeff) : f.to_string(t.coeff);
    if (mono.empty()) {
      out += coeff;
    } else if (t.coeff == 1) {
      out += mono;
    } else {
      out += coeff + '*' + mono;
    }
  }
  return out;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  return same_ring(*a.ring_, *b.ring_) && a.terms_ == b.terms_;
}

namespace {

class Parser {
 public:
  Parser(const RingPtr& ring, std::string_view text) : ring_(ring), text_(text) {}

  Polynomial parse() {
    Polynomial p = expression();
    skip();
    if (pos_ != text_.size()) throw SyntaxError("unexpected character '" + std::string(1, text_[pos_]) + "'", pos_);
    return p;
  }

 private:
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expression() {
    Polynomial acc = term();
    for (;;) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (accept('*')) acc = acc * factor();
    return acc;
  }

  Polynomial factor() {
    if (accept('-')) return -factor();
    if (accept('+')) return factor();
    Polynomial b = base();
    if (accept('^')) {
      skip();
      const std::size_t at = pos_;
      const std::uint64_t n = integer();
      if (n > std::numeric_limits<std::uint32_t>::max()) throw SyntaxError("exponent overflow", at);
      return b.pow(n);
    }
    return b;
  }

  std::uint64_t integer() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) throw SyntaxError("expected integer", start);
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (ec != std::errc() || ptr != text_.data() + pos_) throw SyntaxError("integer overflow", start);
    return value;
  }

  Polynomial base() {
    skip();
    if (pos_ >= text_.size()) throw SyntaxError("unexpected end of input", pos_);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial inner = expression();
      if (!accept(')')) throw SyntaxError("expected ')'", pos_);
      return inner;
    }
    if (c == '[') {
      const std::size_t start = pos_;
      const auto close = text_.find(']', pos_);
      if (close == std::string_view::npos) throw SyntaxError("unterminated element literal", start);
      pos_ = close + 1;
      Elem value;
      try {
        value = ring_->field()->parse(text_.substr(start, close + 1 - start));
      } catch (const SyntaxError& err) {
        throw SyntaxError(std::string("bad element literal: ") + err.what(), start);
      } catch (const UsageError& err) {
        throw SyntaxError(std::string("bad element literal: ") + err.what(), start);
      }
      return Polynomial::constant(ring_, value);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      // Reduce digit by digit so arbitrarily long literals stay exact mod p.
      const GaloisField& f = *ring_->field();
      Elem value = 0;
      for (std::size_t i = start; i < pos_; ++i) {
        value = f.add(f.mul(value, f.from_int(10)), f.from_int(text_[i] - '0'));
      }
      return Polynomial::constant(ring_, value);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      const auto name = text_.substr(start, pos_ - start);
      const int index = ring_->index_of(name);
      if (index < 0) throw SyntaxError("unknown variable '" + std::string(name) + "'", start);
      return Polynomial::variable(ring_, static_cast<std::size_t>(index));
    }
    throw SyntaxError("unexpected character '" + std::string(1, c) + "'", pos_);
  }

  const RingPtr& ring_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(const RingPtr& ring, std::string_view text) { return Parser(ring, text).parse(); }

std::vector<std::string> split_top_level(std::string_view text) {
  std::vector<std::string> out;
  int depth = 0;
  std::string current;
  for (char c : text) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  auto blank = [](const std::string& s) {
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
  };
  if (!blank(current) || !out.empty()) out.push_back(current);
  return out;
}

}  // namespace cartier
