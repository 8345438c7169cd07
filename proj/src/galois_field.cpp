#include "cartier/galois_field.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <mutex>
#include <tuple>

namespace cartier {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::usage: return "usage";
    case ErrorKind::domain: return "domain";
    case ErrorKind::syntax: return "syntax";
    case ErrorKind::resource: return "resource";
    case ErrorKind::invariant: return "invariant";
  }
  return "unknown";
}

namespace {

struct BundledEntry {
  std::uint32_t p;
  std::uint32_t d;
  std::vector<std::uint32_t> modulus;
};

// Least monic irreducible per (p, d), candidates ordered by the packed code of
// their non-leading coefficients.
const std::vector<BundledEntry>& bundled_table() {
  static const std::vector<BundledEntry> table = {
      {2, 1, {0, 1}},          {2, 2, {1, 1, 1}},          {2, 3, {1, 1, 0, 1}},
      {2, 4, {1, 1, 0, 0, 1}}, {2, 5, {1, 0, 1, 0, 0, 1}}, {2, 6, {1, 1, 0, 0, 0, 0, 1}},
      {3, 1, {0, 1}},          {3, 2, {1, 0, 1}},          {3, 3, {1, 2, 0, 1}},
      {3, 4, {2, 1, 0, 0, 1}}, {3, 5, {1, 2, 0, 0, 0, 1}}, {3, 6, {2, 1, 0, 0, 0, 0, 1}},
      {5, 1, {0, 1}},          {5, 2, {2, 0, 1}},          {5, 3, {1, 1, 0, 1}},
      {5, 4, {2, 0, 0, 0, 1}}, {5, 5, {1, 4, 0, 0, 0, 1}}, {5, 6, {2, 1, 0, 0, 0, 0, 1}},
      {7, 1, {0, 1}},          {7, 2, {1, 0, 1}},          {7, 3, {2, 0, 0, 1}},
      {7, 4, {1, 1, 0, 0, 1}}, {7, 5, {3, 1, 0, 0, 0, 1}}, {7, 6, {2, 0, 0, 0, 0, 0, 1}},
  };
  return table;
}

using Poly = std::vector<std::uint32_t>;  // dense F_p[t], low degree first

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p) {
  // p is prime and small: Fermat.
  std::uint64_t result = 1, base = a % p;
  for (std::uint32_t n = p - 2; n; n >>= 1) {
    if (n & 1) result = result * base % p;
    base = base * base % p;
  }
  return static_cast<std::uint32_t>(result);
}

// Remainder of a modulo b (b nonzero, trimmed).
Poly poly_rem(Poly a, const Poly& b, std::uint32_t p) {
  trim(a);
  const std::uint32_t lead_inv = inverse_mod(b.back(), p);
  while (a.size() >= b.size()) {
    const std::uint64_t c = std::uint64_t{a.back()} * lead_inv % p;
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) {
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - c * b[i] % p) % p);
    }
    trim(a);
  }
  return a;
}

std::uint64_t checked_power(std::uint32_t p, std::uint32_t d) {
  std::uint64_t n = 1;
  for (std::uint32_t i = 0; i < d; ++i) {
    n *= p;
    if (n > kMaxFieldOrder) return kMaxFieldOrder + 1;
  }
  return n;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t f = 2; f * f <= n; ++f) {
    if (n % f == 0) {
      out.push_back(f);
      while (n % f == 0) n /= f;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t n, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  for (; n; n >>= 1) {
    if (n & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
  }
  return result;
}

}  // namespace

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t f = 2; f * f <= n; ++f) {
    if (n % f == 0) return false;
  }
  return true;
}

bool is_irreducible(std::uint32_t p, std::span<const std::uint32_t> modulus) {
  Poly m(modulus.begin(), modulus.end());
  trim(m);
  if (m.size() < 2) return false;
  const std::size_t deg = m.size() - 1;
  for (std::size_t k = 1; k <= deg / 2; ++k) {
    // Enumerate the monic divisors of degree k by their tail code.
    const std::uint64_t count = checked_power(p, static_cast<std::uint32_t>(k));
    Poly divisor(k + 1, 0);
    divisor[k] = 1;
    for (std::uint64_t code = 0; code < count; ++code) {
      std::uint64_t c = code;
      for (std::size_t i = 0; i < k; ++i) {
        divisor[i] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      if (poly_rem(m, divisor, p).empty()) return false;
    }
  }
  return true;
}

std::optional<std::vector<std::uint32_t>> bundled_modulus(std::uint32_t p, std::uint32_t d) {
  for (const auto& entry : bundled_table()) {
    if (entry.p == p && entry.d == d) return entry.modulus;
  }
  return std::nullopt;
}

std::vector<std::uint32_t> least_irreducible(std::uint32_t p, std::uint32_t d) {
  if (!is_prime(p)) throw UsageError("characteristic " + std::to_string(p) + " is not prime");
  if (d == 0) throw UsageError("extension degree must be positive");
  if (checked_power(p, d) > kMaxFieldOrder) {
    throw UsageError("no modulus available: GF(" + std::to_string(p) + "^" + std::to_string(d) +
                     ") exceeds the supported field order");
  }
  const std::uint64_t count = checked_power(p, d);
  Poly m(d + 1, 0);
  m[d] = 1;
  for (std::uint64_t code = 0; code < count; ++code) {
    std::uint64_t c = code;
    for (std::uint32_t i = 0; i < d; ++i) {
      m[i] = static_cast<std::uint32_t>(c % p);
      c /= p;
    }
    if (is_irreducible(p, m)) return m;
  }
  throw InvariantError("no irreducible polynomial found");
}

FieldSpec default_field_spec(std::uint32_t p, std::uint32_t d, std::uint32_t e) {
  FieldSpec spec;
  spec.p = p;
  spec.d = d;
  spec.e = e;
  if (auto bundled = bundled_modulus(p, d)) {
    spec.modulus = *bundled;
  } else {
    spec.modulus = least_irreducible(p, d);
  }
  return spec;
}

std::shared_ptr<const GaloisField> GaloisField::create(const FieldSpec& spec) {
  using Key = std::tuple<std::uint32_t, std::uint32_t, std::vector<std::uint32_t>, std::uint32_t>;
  static std::mutex mutex;
  static std::map<Key, std::shared_ptr<const GaloisField>> cache;

  Key key{spec.p, spec.d, spec.modulus, spec.e};
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  std::shared_ptr<const GaloisField> field(new GaloisField(spec));
  std::lock_guard lock(mutex);
  return cache.emplace(std::move(key), std::move(field)).first->second;
}

GaloisField::GaloisField(FieldSpec spec) : spec_(std::move(spec)) {
  const std::uint32_t p = spec_.p;
  if (!is_prime(p)) throw UsageError("characteristic " + std::to_string(p) + " is not prime");
  if (spec_.d == 0) throw UsageError("extension degree must be positive");
  if (spec_.e == 0) throw UsageError("twist exponent e must be at least 1");
  if (spec_.modulus.size() != spec_.d + 1) {
    throw UsageError("modulus must have d+1 = " + std::to_string(spec_.d + 1) + " coefficients");
  }
  for (auto c : spec_.modulus) {
    if (c >= p) throw UsageError("modulus coefficient out of range [0,p)");
  }
  if (spec_.modulus.back() != 1) throw UsageError("modulus must be monic");
  if (!is_irreducible(p, spec_.modulus)) throw UsageError("modulus is reducible over F_p");
  const std::uint64_t order = checked_power(p, spec_.d);
  if (order > kMaxFieldOrder) throw UsageError("field order exceeds the supported maximum");
  size_ = static_cast<std::uint32_t>(order);

  digit_weight_.resize(spec_.d);
  std::uint32_t w = 1;
  for (std::uint32_t i = 0; i < spec_.d; ++i) {
    digit_weight_[i] = w;
    w *= p;
  }

  // Pick the least generator of the multiplicative group by the order test
  // g^((N-1)/r) != 1 for every prime r | N-1, then tabulate its powers.
  const std::uint64_t group = size_ - 1;
  const auto factors = prime_factors(group);
  auto slow_pow = [&](Elem a, std::uint64_t n) {
    Elem result = 1;
    for (; n; n >>= 1) {
      if (n & 1) result = mul_reference(result, a);
      a = mul_reference(a, a);
    }
    return result;
  };
  Elem gen = 1;
  for (Elem candidate = 1; candidate < size_; ++candidate) {
    bool ok = true;
    for (auto r : factors) {
      if (slow_pow(candidate, group / r) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) {
      gen = candidate;
      break;
    }
  }
  exp_.resize(group);
  log_.assign(size_, 0);
  Elem x = 1;
  for (std::uint64_t i = 0; i < group; ++i) {
    exp_[i] = x;
    log_[x] = static_cast<std::uint32_t>(i);
    x = mul_reference(x, gen);
  }
  if (x != 1) throw InvariantError("multiplicative generator search failed");
}

std::uint64_t GaloisField::q() const {
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < spec_.e; ++i) q *= spec_.p;
  return q;
}

void GaloisField::require_twist_divides() const {
  if (!twist_divides_degree()) {
    throw UsageError("twist exponent e = " + std::to_string(spec_.e) +
                     " does not divide the extension degree d = " + std::to_string(spec_.d));
  }
}

Elem GaloisField::add(Elem a, Elem b) const {
  const std::uint32_t p = spec_.p;
  if (p == 2) return a ^ b;
  if (spec_.d == 1) return (a + b) % p;
  Elem out = 0;
  for (std::uint32_t i = 0; i < spec_.d; ++i) {
    out += ((a % p + b % p) % p) * digit_weight_[i];
    a /= p;
    b /= p;
  }
  return out;
}

Elem GaloisField::neg(Elem a) const {
  const std::uint32_t p = spec_.p;
  if (p == 2) return a;
  if (spec_.d == 1) return (p - a) % p;
  Elem out = 0;
  for (std::uint32_t i = 0; i < spec_.d; ++i) {
    out += ((p - a % p) % p) * digit_weight_[i];
    a /= p;
  }
  return out;
}

Elem GaloisField::sub(Elem a, Elem b) const { return add(a, neg(b)); }

Elem GaloisField::mul(Elem a, Elem b) const {
  if (a == 0 || b == 0) return 0;
  std::uint64_t s = std::uint64_t{log_[a]} + log_[b];
  const std::uint64_t group = size_ - 1;
  if (s >= group) s -= group;
  return exp_[s];
}

Elem GaloisField::inv(Elem a) const {
  if (a == 0) throw DomainError("inverse of zero");
  const std::uint64_t group = size_ - 1;
  return exp_[(group - log_[a]) % group];
}

Elem GaloisField::pow(Elem a, std::uint64_t n) const {
  if (n == 0) return 1;
  if (a == 0) return 0;
  const std::uint64_t group = size_ - 1;
  return exp_[mulmod(log_[a], n % group, group)];
}

Elem GaloisField::frobenius(Elem a, std::uint64_t j) const {
  if (a == 0 || a == 1) return a;
  const std::uint64_t group = size_ - 1;
  const std::uint64_t exponent = powmod(spec_.p, j % spec_.d, group);
  return exp_[mulmod(log_[a], exponent, group)];
}

Elem GaloisField::inv_frobenius(Elem a, std::uint64_t j) const {
  return frobenius(a, (spec_.d - j % spec_.d) % spec_.d);
}

Elem GaloisField::from_int(std::int64_t value) const {
  const std::int64_t p = spec_.p;
  return static_cast<Elem>(((value % p) + p) % p);
}

Elem GaloisField::from_coeffs(std::span<const std::uint32_t> coeffs) const {
  if (coeffs.size() > spec_.d) throw UsageError("too many coefficients for GF(p^d) element");
  Elem out = 0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] >= spec_.p) throw UsageError("element coefficient out of range [0,p)");
    out += coeffs[i] * digit_weight_[i];
  }
  return out;
}

std::vector<std::uint32_t> GaloisField::coeffs(Elem a) const {
  std::vector<std::uint32_t> out(spec_.d);
  for (auto& c : out) {
    c = a % spec_.p;
    a /= spec_.p;
  }
  return out;
}

bool GaloisField::in_twist_subfield(Elem a) const { return frobenius(a, spec_.e) == a; }

std::vector<Elem> GaloisField::twist_subfield_basis() const {
  require_twist_divides();
  const std::uint64_t q = this->q();
  const Elem gamma = pow(generator(), (size_ - 1) / (q - 1));
  std::vector<Elem> basis;
  Elem x = 1;
  for (std::uint32_t i = 0; i < spec_.e; ++i) {
    basis.push_back(x);
    x = mul(x, gamma);
  }
  return basis;
}

std::vector<Elem> GaloisField::twist_subfield_elements() const {
  std::vector<Elem> out;
  for (Elem a = 0; a < size_; ++a) {
    if (in_twist_subfield(a)) out.push_back(a);
  }
  return out;
}

std::string GaloisField::to_string(Elem a) const {
  std::string out = "[";
  const auto cs = coeffs(a);
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(cs[i]);
  }
  out += ']';
  return out;
}

Elem GaloisField::parse(std::string_view text) const {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  };
  auto number = [&]() -> std::int64_t {
    skip();
    bool negative = false;
    if (pos < text.size() && text[pos] == '-') {
      negative = true;
      ++pos;
    }
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), value);
    if (ec != std::errc()) throw SyntaxError("expected integer", pos);
    pos = static_cast<std::size_t>(ptr - text.data());
    return negative ? -value : value;
  };
  skip();
  if (pos < text.size() && text[pos] == '[') {
    ++pos;
    std::vector<std::uint32_t> cs;
    skip();
    if (pos < text.size() && text[pos] == ']') {
      ++pos;
    } else {
      for (;;) {
        const std::size_t at = pos;
        const auto v = number();
        if (v < 0 || v >= static_cast<std::int64_t>(spec_.p)) {
          throw SyntaxError("coefficient outside [0,p)", at);
        }
        cs.push_back(static_cast<std::uint32_t>(v));
        skip();
        if (pos < text.size() && text[pos] == ',') {
          ++pos;
          continue;
        }
        if (pos < text.size() && text[pos] == ']') {
          ++pos;
          break;
        }
        throw SyntaxError("expected ',' or ']'", pos);
      }
    }
    if (cs.size() > spec_.d) throw SyntaxError("element has more than d coefficients", 0);
    skip();
    if (pos != text.size()) throw SyntaxError("trailing characters", pos);
    return from_coeffs(cs);
  }
  const auto v = number();
  skip();
  if (pos != text.size()) throw SyntaxError("trailing characters", pos);
  return from_int(v);
}

Elem GaloisField::mul_reference(Elem a, Elem b) const {
  const std::uint32_t p = spec_.p;
  const auto ca = coeffs(a), cb = coeffs(b);
  Poly product(2 * spec_.d, 0);
  for (std::size_t i = 0; i < ca.size(); ++i) {
    for (std::size_t j = 0; j < cb.size(); ++j) {
      product[i + j] = static_cast<std::uint32_t>((product[i + j] + std::uint64_t{ca[i]} * cb[j]) % p);
    }
  }
  const Poly rem = poly_rem(product, spec_.modulus, p);
  Elem out = 0;
  for (std::size_t i = 0; i < rem.size(); ++i) out += rem[i] * digit_weight_[i];
  return out;
}

FieldPtr make_field(std::uint32_t p, std::uint32_t d, std::uint32_t e) {
  return GaloisField::create(default_field_spec(p, d, e));
}

bool same_field(const GaloisField& a, const GaloisField& b) {
  return &a == &b || (a.p() == b.p() && a.d() == b.d() && a.spec().modulus == b.spec().modulus);
}

FieldElement::FieldElement(FieldPtr field, Elem code) : field_(std::move(field)), code_(code) {
  if (!field_) throw UsageError("field element without a field");
  if (code_ >= field_->size()) throw UsageError("element code out of range");
}

FieldElement FieldElement::from_coeffs(FieldPtr field, std::span<const std::uint32_t> coeffs) {
  const Elem code = field->from_coeffs(coeffs);
  return {std::move(field), code};
}

namespace {
const GaloisField& common_field(const FieldElement& a, const FieldElement& b) {
  if (!same_field(*a.field(), *b.field())) throw UsageError("operands belong to different fields");
  return *a.field();
}
}  // namespace

FieldElement FieldElement::inv() const { return {field_, field_->inv(code_)}; }
FieldElement FieldElement::frobenius(std::uint64_t j) const { return {field_, field_->frobenius(code_, j)}; }
FieldElement FieldElement::inv_frobenius(std::uint64_t j) const {
  return {field_, field_->inv_frobenius(code_, j)};
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  return {a.field_, common_field(a, b).add(a.code_, b.code_)};
}
FieldElement operator-(const FieldElement& a, const FieldElement& b) {
  return {a.field_, common_field(a, b).sub(a.code_, b.code_)};
}
FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  return {a.field_, common_field(a, b).mul(a.code_, b.code_)};
}
FieldElement operator/(const FieldElement& a, const FieldElement& b) {
  return {a.field_, common_field(a, b).div(a.code_, b.code_)};
}
FieldElement FieldElement::operator-() const { return {field_, field_->neg(code_)}; }
bool operator==(const FieldElement& a, const FieldElement& b) {
  return same_field(*a.field_, *b.field_) && a.code_ == b.code_;
}

}  // namespace cartier
