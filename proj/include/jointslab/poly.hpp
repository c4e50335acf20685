#pragma once

// Sparse multivariate polynomials over a finite field.
//
// Derivatives are Hasse derivatives throughout:
//   H^a(x^e) = prod_i binom(e_i, a_i) x^(e - a),
// with binomials reduced mod p. In characteristic p the ordinary derivative
// loses information (d/dx x^p = 0) while Hasse derivatives still detect the
// order of vanishing of a polynomial at a point.

#include <climits>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "jointslab/field.hpp"
#include "jointslab/geometry.hpp"

namespace jointslab {

using Exponent = std::vector<std::uint32_t>;

std::uint32_t total_degree(const Exponent& e);

// Graded lexicographic order: total degree first, then lexicographic with the
// first variable most significant.
struct GradedLex {
  bool operator()(const Exponent& a, const Exponent& b) const;
};

// Exponents of total degree exactly d in n variables, in descending
// lexicographic order (x_1^d first).
std::vector<Exponent> monomials_of_degree(std::size_t n, std::uint32_t d);
// Concatenation of monomials_of_degree(n, 0..d).
std::vector<Exponent> monomials_up_to(std::size_t n, std::uint32_t d);

// binom(n, k) mod p via Lucas' theorem.
std::uint32_t binomial_mod(std::uint64_t n, std::uint64_t k, std::uint32_t p);

// Univariate polynomial, coefficients low-to-high with no trailing zeros.
class UniPoly {
 public:
  explicit UniPoly(const Field& field) : field_(&field) {}
  UniPoly(const Field& field, std::vector<FieldElem> coeffs);

  const Field& field() const { return *field_; }
  const std::vector<FieldElem>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  FieldElem coeff(std::size_t k) const;
  FieldElem evaluate(const FieldElem& t) const;

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  friend bool operator==(const UniPoly& a, const UniPoly& b) {
    return a.field_ == b.field_ && a.coeffs_ == b.coeffs_;
  }

 private:
  void normalize();

  const Field* field_;
  std::vector<FieldElem> coeffs_;
};

class MultiPoly {
 public:
  using TermMap = std::map<Exponent, FieldElem, GradedLex>;

  // Degree reported for the zero polynomial.
  static constexpr int kZeroDegree = INT_MIN;

  MultiPoly(const Field& field, std::size_t nvars);

  static MultiPoly constant(const Field& field, std::size_t nvars,
                            const FieldElem& c);
  static MultiPoly variable(const Field& field, std::size_t nvars,
                            std::size_t i);
  static MultiPoly monomial(const Field& field, Exponent e, const FieldElem& c);
  // a0 + a[0] x_1 + ... + a[n-1] x_n
  static MultiPoly linear(const FieldElem& a0, std::span<const FieldElem> a);

  const Field& field() const { return *field_; }
  std::size_t nvars() const { return n_; }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  int degree() const;
  // Largest exponent of variable i across all terms.
  std::uint32_t degree_in(std::size_t i) const;

  FieldElem coeff(const Exponent& e) const;
  // Adds c x^e into the polynomial, dropping the term if it cancels.
  void add_term(const Exponent& e, const FieldElem& c);
  // Leading term under GradedLex. Requires a nonzero polynomial.
  const std::pair<const Exponent, FieldElem>& leading_term() const;

  FieldElem evaluate(const Point& x) const;
  FieldElem operator()(const Point& x) const { return evaluate(x); }

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const FieldElem& c);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const FieldElem& c) { return a *= c; }
  friend MultiPoly operator*(const FieldElem& c, MultiPoly a) { return a *= c; }
  MultiPoly pow(std::uint32_t k) const;

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.field_ == b.field_ && a.n_ == b.n_ && a.terms_ == b.terms_;
  }

  std::string to_string() const;

 private:
  void check_peer(const MultiPoly& o) const;

  const Field* field_;
  std::size_t n_;
  TermMap terms_;
};

MultiPoly hasse_derivative(const MultiPoly& f, const Exponent& alpha);
// (H^alpha f)(x) without materializing the derivative.
FieldElem hasse_derivative_at(const MultiPoly& f, const Exponent& alpha,
                              const Point& x);

// Least |alpha| with H^alpha f (x) != 0. Throws InputError for f == 0.
std::uint32_t vanishing_order(const MultiPoly& f, const Point& x);

// t -> f(base + t dir)
UniPoly restrict_to_line(const MultiPoly& f, const Line& l);
// Exact: the restriction is the zero polynomial.
bool vanishes_on_line(const MultiPoly& f, const Line& l);

// First-order Hasse derivatives, one per variable.
std::vector<MultiPoly> gradient(const MultiPoly& f);

// g with g^p == f. Throws InputError unless every gradient component of f is
// identically zero.
MultiPoly pth_root(const MultiPoly& f);

struct DivisionResult {
  MultiPoly quotient;
  MultiPoly remainder;
};

// Division by a single nonzero divisor in GradedLex order. A single
// polynomial is a Groebner basis of the ideal it generates, so the remainder
// is zero iff g divides f.
DivisionResult divide(const MultiPoly& f, const MultiPoly& g);
bool divides(const MultiPoly& g, const MultiPoly& f);

struct LinearFactor {
  MultiPoly form;
  std::uint32_t multiplicity;
};

struct LinearFactorization {
  std::vector<LinearFactor> factors;
  MultiPoly remainder;
};

// Canonical linear forms a0 + a.x where the first nonzero a_i is 1, in
// canonical order (pivot, linear coefficients, constant).
std::vector<MultiPoly> canonical_linear_forms(const Field& field,
                                              std::size_t n);
std::uint64_t canonical_linear_form_count(const Field& field, std::size_t n);

inline constexpr std::uint64_t kDefaultLinearFormCap = 200000;

// Trial division by every canonical linear form. f == remainder * prod
// form^mult, and the remainder has no linear factor. Throws InputError when
// the number of candidate forms exceeds `cap` or f is zero.
LinearFactorization factor_linear(const MultiPoly& f,
                                  std::uint64_t cap = kDefaultLinearFormCap);

}  // namespace jointslab
