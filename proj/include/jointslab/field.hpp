#pragma once

// Exact arithmetic in GF(p) and GF(p^q).
//
// A Field is an immutable, interned description of GF(p^q) in a fixed
// polynomial basis GF(p)[t]/(modulus). Elements are packed into a single
// integer index: the coefficient vector (c_0, ..., c_{q-1}) maps to
// c_0 + c_1 p + ... + c_{q-1} p^{q-1}. Every FieldElem carries a pointer to
// its interned Field, so mixing elements of different fields is detected at
// the operation site.

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace jointslab {

class FieldElem;

// Serializable description of a finite field. For q == 1 the modulus is the
// monic linear polynomial t and carries no information.
struct FieldSpec {
  std::uint32_t p = 2;
  std::uint32_t q = 1;
  std::vector<std::uint32_t> modulus;  // low-to-high, monic, size q + 1

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

bool is_prime(std::uint64_t n);

// Rabin irreducibility test for a polynomial over GF(p), low-to-high.
bool is_irreducible(std::span<const std::uint32_t> poly, std::uint32_t p);

// Monic irreducible of degree q whose lower coefficients, read as a base-p
// integer, are smallest. For p = 2, q = 2 this is t^2 + t + 1.
std::vector<std::uint32_t> smallest_irreducible(std::uint32_t p,
                                                std::uint32_t q);

class Field {
 public:
  // Largest extension field order supported (log tables are built eagerly).
  static constexpr std::uint64_t kMaxExtensionOrder = 1u << 22;

  // Interned lookup. The returned reference stays valid for the lifetime of
  // the process. Throws InputError if p is not prime, q == 0, the modulus is
  // not monic irreducible of degree q, or the field is too large.
  static const Field& get(std::uint32_t p, std::uint32_t q = 1);
  static const Field& get(const FieldSpec& spec);

  Field(const Field&) = delete;
  Field& operator=(const Field&) = delete;

  const FieldSpec& spec() const { return spec_; }
  std::uint32_t characteristic() const { return spec_.p; }
  std::uint32_t degree() const { return spec_.q; }
  std::uint32_t order() const { return order_; }
  bool is_prime_field() const { return spec_.q == 1; }

  FieldElem zero() const;
  FieldElem one() const;
  // Embeds an integer through the prime subfield.
  FieldElem from_int(std::int64_t v) const;
  FieldElem from_index(std::uint32_t index) const;
  // Coefficients low-to-high; each is reduced mod p; at most q entries.
  FieldElem from_coeffs(std::span<const std::int64_t> coeffs) const;
  // All elements in index order.
  std::vector<FieldElem> elements() const;

  // Raw operations on packed indices.
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t neg(std::uint32_t a) const;
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t inv(std::uint32_t a) const;  // throws Error on zero
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;

  std::vector<std::uint32_t> digits(std::uint32_t index) const;

  std::string to_string() const;

 private:
  explicit Field(FieldSpec spec);

  std::uint32_t mul_schoolbook(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t pack(std::span<const std::uint32_t> digits) const;

  FieldSpec spec_;
  std::uint32_t order_ = 0;
  // Extension fields only: discrete log / antilog tables w.r.t. a generator.
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> exp_;
};

class FieldElem {
 public:
  // A detached zero; only useful as a placeholder before assignment.
  FieldElem() = default;
  FieldElem(const Field& field, std::uint32_t index)
      : field_(&field), index_(index) {}

  const Field& field() const;
  bool attached() const { return field_ != nullptr; }
  std::uint32_t index() const { return index_; }
  std::vector<std::uint32_t> coeffs() const { return field().digits(index_); }

  bool is_zero() const { return index_ == 0; }
  bool is_one() const { return index_ == 1; }

  FieldElem operator-() const;
  FieldElem& operator+=(const FieldElem& o);
  FieldElem& operator-=(const FieldElem& o);
  FieldElem& operator*=(const FieldElem& o);
  FieldElem& operator/=(const FieldElem& o);

  friend FieldElem operator+(FieldElem a, const FieldElem& b) { return a += b; }
  friend FieldElem operator-(FieldElem a, const FieldElem& b) { return a -= b; }
  friend FieldElem operator*(FieldElem a, const FieldElem& b) { return a *= b; }
  friend FieldElem operator/(FieldElem a, const FieldElem& b) { return a /= b; }

  FieldElem inverse() const;
  FieldElem pow(std::uint64_t e) const;
  // a -> a^p.
  FieldElem frobenius() const;

  friend bool operator==(const FieldElem& a, const FieldElem& b) {
    return a.field_ == b.field_ && a.index_ == b.index_;
  }
  friend std::strong_ordering operator<=>(const FieldElem& a,
                                          const FieldElem& b) {
    if (a.field_ != b.field_)
      return std::compare_three_way{}(a.field_, b.field_);
    return a.index_ <=> b.index_;
  }

  std::string to_string() const;

 private:
  const Field& checked_peer(const FieldElem& o) const;

  const Field* field_ = nullptr;
  std::uint32_t index_ = 0;
};

std::ostream& operator<<(std::ostream& os, const FieldElem& a);

}  // namespace jointslab

template <>
struct std::hash<jointslab::FieldElem> {
  std::size_t operator()(const jointslab::FieldElem& a) const noexcept {
    return std::hash<std::uint32_t>{}(a.index());
  }
};
