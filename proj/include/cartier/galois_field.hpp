#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cartier/error.hpp"

namespace cartier {

/// Raw element of a GaloisField: the polynomial-basis coordinates packed as
/// base-p digits, coefficient of t^i at digit i. Zero is 0 and one is 1.
using Elem = std::uint32_t;

/// Description of GF(p^d) = F_p[t]/(modulus) together with the twist
/// exponent e that fixes q = p^e for every Cartier structure built on it.
struct FieldSpec {
  std::uint32_t p = 2;
  std::uint32_t d = 1;
  std::vector<std::uint32_t> modulus{0, 1};  // d+1 coefficients, low degree first
  std::uint32_t e = 1;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

/// Largest field order for which log/antilog tables are built.
inline constexpr std::uint64_t kMaxFieldOrder = std::uint64_t{1} << 20;

bool is_prime(std::uint32_t n);

/// Trial division by every monic polynomial of degree 1..deg/2.
bool is_irreducible(std::uint32_t p, std::span<const std::uint32_t> modulus);

/// Bundled modulus for p in {2,3,5,7} and d <= 6.
std::optional<std::vector<std::uint32_t>> bundled_modulus(std::uint32_t p, std::uint32_t d);

/// Least monic irreducible polynomial of degree d, ordering candidates by the
/// integer whose base-p digits are the non-leading coefficients.
std::vector<std::uint32_t> least_irreducible(std::uint32_t p, std::uint32_t d);

/// Bundled modulus when available, otherwise the least irreducible one.
/// Throws UsageError when p^d exceeds kMaxFieldOrder.
FieldSpec default_field_spec(std::uint32_t p, std::uint32_t d, std::uint32_t e = 1);

class GaloisField {
 public:
  /// Validates the FieldSpec (prime p, monic irreducible modulus, e >= 1, size
  /// within kMaxFieldOrder) and returns a shared, immutable field. Fields are
  /// cached by spec, so repeated calls return the same object.
  static std::shared_ptr<const GaloisField> create(const FieldSpec& spec);

  const FieldSpec& spec() const { return spec_; }
  std::uint32_t p() const { return spec_.p; }
  std::uint32_t d() const { return spec_.d; }
  std::uint32_t e() const { return spec_.e; }
  /// Number of elements, p^d.
  std::uint32_t size() const { return size_; }
  /// Size of the twist subfield, p^e.
  std::uint64_t q() const;
  bool twist_divides_degree() const { return spec_.d % spec_.e == 0; }
  /// Throws UsageError unless e | d.
  void require_twist_divides() const;

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t n) const;

  /// a^{p^j}.
  Elem frobenius(Elem a, std::uint64_t j) const;
  /// The unique b with b^{p^j} = a.
  Elem inv_frobenius(Elem a, std::uint64_t j) const;
  /// sigma^j for signed j: positive powers the element, negative takes roots.
  Elem twist(Elem a, std::int64_t j) const {
    return j >= 0 ? frobenius(a, static_cast<std::uint64_t>(j))
                  : inv_frobenius(a, static_cast<std::uint64_t>(-j));
  }

  /// Integer image of the prime field (reduces mod p, handles negatives).
  Elem from_int(std::int64_t value) const;
  Elem from_coeffs(std::span<const std::uint32_t> coeffs) const;
  std::vector<std::uint32_t> coeffs(Elem a) const;
  bool in_prime_field(Elem a) const { return a < spec_.p; }
  /// a^q == a.
  bool in_twist_subfield(Elem a) const;

  /// Multiplicative generator selected at construction.
  Elem generator() const { return exp_[1 % exp_.size()]; }
  /// F_p-basis 1, g, ..., g^{e-1} of F_q for a generator g of F_q^x.
  std::vector<Elem> twist_subfield_basis() const;
  /// Elements of F_q in increasing code order.
  std::vector<Elem> twist_subfield_elements() const;

  /// Polynomial-basis coefficient list "[c0,c1,...]" of length d.
  std::string to_string(Elem a) const;
  Elem parse(std::string_view text) const;

  /// Slow reference multiplication by polynomial reduction; independent of
  /// the log tables.
  Elem mul_reference(Elem a, Elem b) const;

 private:
  explicit GaloisField(FieldSpec spec);

  FieldSpec spec_;
  std::uint32_t size_ = 0;
  std::vector<std::uint32_t> digit_weight_;  // p^i
  std::vector<Elem> exp_;                    // exp_[i] = g^i, i < size-1
  std::vector<std::uint32_t> log_;           // log_[a] for a != 0
};

using FieldPtr = std::shared_ptr<const GaloisField>;

/// Convenience: GaloisField::create(default_field_spec(p, d, e)).
FieldPtr make_field(std::uint32_t p, std::uint32_t d = 1, std::uint32_t e = 1);

/// Field-checked element value. Mixing elements of different fields is a
/// usage error.
class FieldElement {
 public:
  FieldElement(FieldPtr field, Elem code);
  static FieldElement from_coeffs(FieldPtr field, std::span<const std::uint32_t> coeffs);

  const FieldPtr& field() const { return field_; }
  Elem code() const { return code_; }
  std::vector<std::uint32_t> coeffs() const { return field_->coeffs(code_); }
  bool is_zero() const { return code_ == 0; }

  FieldElement inv() const;
  FieldElement frobenius(std::uint64_t j) const;
  FieldElement inv_frobenius(std::uint64_t j) const;
  std::string to_string() const { return field_->to_string(code_); }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
  FieldElement operator-() const;
  friend bool operator==(const FieldElement& a, const FieldElement& b);

 private:
  FieldPtr field_;
  Elem code_;
};

bool same_field(const GaloisField& a, const GaloisField& b);

}  // namespace cartier
