#include "jointslab/poly.hpp"

#include <algorithm>
#include <numeric>

#include "jointslab/error.hpp"

namespace jointslab {

std::uint32_t total_degree(const Exponent& e) {
  return std::accumulate(e.begin(), e.end(), std::uint32_t{0});
}

bool GradedLex::operator()(const Exponent& a, const Exponent& b) const {
  const auto da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db;
  return a < b;
}

namespace {

void append_monomials(std::size_t n, std::uint32_t d, Exponent& prefix,
                      std::vector<Exponent>& out) {
  if (n == 1) {
    prefix.push_back(d);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (std::uint32_t e = d + 1; e-- > 0;) {
    prefix.push_back(e);
    append_monomials(n - 1, d - e, prefix, out);
    prefix.pop_back();
  }
}

std::uint64_t small_binomial_mod(std::uint64_t n, std::uint64_t k,
                                 std::uint64_t p) {
  // n < p here, so no factor in the product vanishes mod p.
  k = std::min(k, n - k);
  std::uint64_t num = 1, den = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    num = num * ((n - i) % p) % p;
    den = den * ((i + 1) % p) % p;
  }
  std::uint64_t inv = 1, base = den, e = p - 2;
  while (e) {
    if (e & 1) inv = inv * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return num * inv % p;
}

}  // namespace

std::vector<Exponent> monomials_of_degree(std::size_t n, std::uint32_t d) {
  if (n == 0) throw InputError("monomials need at least one variable");
  std::vector<Exponent> out;
  Exponent prefix;
  append_monomials(n, d, prefix, out);
  return out;
}

std::vector<Exponent> monomials_up_to(std::size_t n, std::uint32_t d) {
  std::vector<Exponent> out;
  for (std::uint32_t k = 0; k <= d; ++k) {
    auto part = monomials_of_degree(n, k);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

std::uint32_t binomial_mod(std::uint64_t n, std::uint64_t k, std::uint32_t p) {
  if (k > n) return 0;
  std::uint64_t result = 1;
  while (n > 0 || k > 0) {
    const std::uint64_t nd = n % p, kd = k % p;
    if (kd > nd) return 0;
    result = result * small_binomial_mod(nd, kd, p) % p;
    n /= p;
    k /= p;
  }
  return static_cast<std::uint32_t>(result);
}

// ---------------------------------------------------------------------------

UniPoly::UniPoly(const Field& field, std::vector<FieldElem> coeffs)
    : field_(&field), coeffs_(std::move(coeffs)) {
  for (const auto& c : coeffs_)
    if (&c.field() != field_) throw Error("coefficient from a different field");
  normalize();
}

void UniPoly::normalize() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

FieldElem UniPoly::coeff(std::size_t k) const {
  return k < coeffs_.size() ? coeffs_[k] : field_->zero();
}

FieldElem UniPoly::evaluate(const FieldElem& t) const {
  FieldElem acc = field_->zero();
  for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * t + coeffs_[k];
  return acc;
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
  std::vector<FieldElem> c(std::max(a.coeffs_.size(), b.coeffs_.size()),
                           a.field_->zero());
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
  return UniPoly(*a.field_, std::move(c));
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return UniPoly(*a.field_);
  const Field& f = *a.field_;
  std::vector<std::uint32_t> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
      c[i + j] =
          f.add(c[i + j], f.mul(a.coeffs_[i].index(), b.coeffs_[j].index()));
  std::vector<FieldElem> out;
  out.reserve(c.size());
  for (auto v : c) out.emplace_back(f, v);
  return UniPoly(f, std::move(out));
}

// ---------------------------------------------------------------------------

MultiPoly::MultiPoly(const Field& field, std::size_t nvars)
    : field_(&field), n_(nvars) {
  if (nvars == 0) throw InputError("polynomials need at least one variable");
}

MultiPoly MultiPoly::constant(const Field& field, std::size_t nvars,
                              const FieldElem& c) {
  MultiPoly f(field, nvars);
  f.add_term(Exponent(nvars, 0), c);
  return f;
}

MultiPoly MultiPoly::variable(const Field& field, std::size_t nvars,
                              std::size_t i) {
  Exponent e(nvars, 0);
  e.at(i) = 1;
  return monomial(field, std::move(e), field.one());
}

MultiPoly MultiPoly::monomial(const Field& field, Exponent e,
                              const FieldElem& c) {
  MultiPoly f(field, e.size());
  f.add_term(e, c);
  return f;
}

MultiPoly MultiPoly::linear(const FieldElem& a0, std::span<const FieldElem> a) {
  const Field& field = a0.field();
  MultiPoly f = constant(field, a.size(), a0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    Exponent e(a.size(), 0);
    e[i] = 1;
    f.add_term(e, a[i]);
  }
  return f;
}

bool MultiPoly::is_constant() const {
  return terms_.empty() ||
         (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
}

int MultiPoly::degree() const {
  if (terms_.empty()) return kZeroDegree;
  return static_cast<int>(total_degree(terms_.rbegin()->first));
}

std::uint32_t MultiPoly::degree_in(std::size_t i) const {
  std::uint32_t d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[i]);
  return d;
}

FieldElem MultiPoly::coeff(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? field_->zero() : it->second;
}

void MultiPoly::add_term(const Exponent& e, const FieldElem& c) {
  if (e.size() != n_) throw InputError("exponent length does not match nvars");
  if (&c.field() != field_) throw Error("coefficient from a different field");
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.emplace(e, c);
  if (fresh) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

const std::pair<const Exponent, FieldElem>& MultiPoly::leading_term() const {
  if (terms_.empty()) throw Error("zero polynomial has no leading term");
  return *terms_.rbegin();
}

FieldElem MultiPoly::evaluate(const Point& x) const {
  if (x.dim() != n_) throw InputError("point dimension does not match nvars");
  if (&x.field() != field_) throw Error("point from a different field");
  const Field& f = *field_;
  std::vector<std::vector<std::uint32_t>> powers(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    const std::uint32_t top = degree_in(i);
    auto& p = powers[i];
    p.resize(top + 1);
    p[0] = 1;
    for (std::uint32_t k = 1; k <= top; ++k)
      p[k] = f.mul(p[k - 1], x[i].index());
  }
  std::uint32_t acc = 0;
  for (const auto& [e, c] : terms_) {
    std::uint32_t term = c.index();
    for (std::size_t i = 0; i < n_ && term; ++i)
      term = f.mul(term, powers[i][e[i]]);
    acc = f.add(acc, term);
  }
  return {f, acc};
}

void MultiPoly::check_peer(const MultiPoly& o) const {
  if (field_ != o.field_ || n_ != o.n_)
    throw Error("polynomials over different rings");
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly out(*this);
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  check_peer(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  check_peer(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const FieldElem& c) {
  if (&c.field() != field_) throw Error("scalar from a different field");
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  a.check_peer(b);
  MultiPoly out(*a.field_, a.n_);
  Exponent e(a.n_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < a.n_; ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  return out;
}

MultiPoly MultiPoly::pow(std::uint32_t k) const {
  MultiPoly result = constant(*field_, n_, field_->one());
  MultiPoly base = *this;
  while (k) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    if (!s.empty()) s += " + ";
    std::string mono;
    for (std::size_t i = 0; i < n_; ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "x" + std::to_string(i + 1);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    const std::string cs = c.to_string();
    if (mono.empty())
      s += cs;
    else if (c.is_one())
      s += mono;
    else
      s += (c.field().is_prime_field() ? cs : "(" + cs + ")") + "*" + mono;
  }
  return s;
}

// ---------------------------------------------------------------------------

MultiPoly hasse_derivative(const MultiPoly& f, const Exponent& alpha) {
  if (alpha.size() != f.nvars()) throw InputError("alpha length mismatch");
  const Field& field = f.field();
  const std::uint32_t p = field.characteristic();
  MultiPoly out(field, f.nvars());
  Exponent shifted(f.nvars());
  for (const auto& [e, c] : f.terms()) {
    std::uint64_t scale = 1;
    for (std::size_t i = 0; i < e.size() && scale; ++i) {
      if (e[i] < alpha[i]) {
        scale = 0;
        break;
      }
      scale = scale * binomial_mod(e[i], alpha[i], p) % p;
      shifted[i] = e[i] - alpha[i];
    }
    if (scale == 0) continue;
    out.add_term(shifted, c * field.from_int(static_cast<std::int64_t>(scale)));
  }
  return out;
}

FieldElem hasse_derivative_at(const MultiPoly& f, const Exponent& alpha,
                              const Point& x) {
  if (alpha.size() != f.nvars() || x.dim() != f.nvars())
    throw InputError("dimension mismatch in Hasse derivative");
  const Field& field = f.field();
  const std::uint32_t p = field.characteristic();
  std::uint32_t acc = 0;
  for (const auto& [e, c] : f.terms()) {
    std::uint32_t term = c.index();
    for (std::size_t i = 0; i < e.size() && term; ++i) {
      if (e[i] < alpha[i]) {
        term = 0;
        break;
      }
      const std::uint32_t b = binomial_mod(e[i], alpha[i], p);
      term = field.mul(term, field.from_int(b).index());
      term = field.mul(term, field.pow(x[i].index(), e[i] - alpha[i]));
    }
    acc = field.add(acc, term);
  }
  return {field, acc};
}

std::uint32_t vanishing_order(const MultiPoly& f, const Point& x) {
  if (f.is_zero())
    throw InputError("the zero polynomial vanishes to infinite order");
  const auto cap = static_cast<std::uint32_t>(f.degree());
  for (std::uint32_t order = 0; order <= cap; ++order)
    for (const auto& alpha : monomials_of_degree(f.nvars(), order))
      if (!hasse_derivative_at(f, alpha, x).is_zero()) return order;
  throw Error("nonzero polynomial with all Hasse derivatives vanishing");
}

UniPoly restrict_to_line(const MultiPoly& f, const Line& l) {
  if (l.dim() != f.nvars()) throw InputError("line dimension mismatch");
  const Field& field = f.field();
  const std::size_t n = f.nvars();
  // powers[i][k] = (base_i + t dir_i)^k
  std::vector<std::vector<UniPoly>> powers(n);
  for (std::size_t i = 0; i < n; ++i) {
    const UniPoly lin(field, {l.base()[i], l.dir()[i]});
    const std::uint32_t top = f.degree_in(i);
    powers[i].reserve(top + 1);
    powers[i].emplace_back(field, std::vector<FieldElem>{field.one()});
    for (std::uint32_t k = 1; k <= top; ++k)
      powers[i].push_back(powers[i].back() * lin);
  }
  const int deg = f.degree();
  std::vector<std::uint32_t> acc(deg < 0 ? 0 : static_cast<std::size_t>(deg) + 1,
                                 0);
  for (const auto& [e, c] : f.terms()) {
    UniPoly term(field, {c});
    for (std::size_t i = 0; i < n; ++i)
      if (e[i]) term = term * powers[i][e[i]];
    for (std::size_t k = 0; k < term.coeffs().size(); ++k)
      acc[k] = field.add(acc[k], term.coeffs()[k].index());
  }
  std::vector<FieldElem> out;
  out.reserve(acc.size());
  for (auto v : acc) out.emplace_back(field, v);
  return UniPoly(field, std::move(out));
}

bool vanishes_on_line(const MultiPoly& f, const Line& l) {
  return restrict_to_line(f, l).is_zero();
}

std::vector<MultiPoly> gradient(const MultiPoly& f) {
  std::vector<MultiPoly> out;
  out.reserve(f.nvars());
  for (std::size_t i = 0; i < f.nvars(); ++i) {
    Exponent unit(f.nvars(), 0);
    unit[i] = 1;
    out.push_back(hasse_derivative(f, unit));
  }
  return out;
}

MultiPoly pth_root(const MultiPoly& f) {
  for (const auto& g : gradient(f))
    if (!g.is_zero())
      throw InputError("pth_root requires an identically zero gradient");
  const Field& field = f.field();
  const std::uint32_t p = field.characteristic();
  // The inverse of a -> a^p on GF(p^q) is a -> a^(p^(q-1)).
  std::uint64_t root_exp = 1;
  for (std::uint32_t i = 1; i < field.degree(); ++i) root_exp *= p;
  MultiPoly out(field, f.nvars());
  for (const auto& [e, c] : f.terms()) {
    Exponent r(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) r[i] = e[i] / p;
    out.add_term(r, c.pow(root_exp));
  }
  return out;
}

DivisionResult divide(const MultiPoly& f, const MultiPoly& g) {
  if (g.is_zero()) throw InputError("division by the zero polynomial");
  if (&f.field() != &g.field() || f.nvars() != g.nvars())
    throw Error("polynomials over different rings");
  const Field& field = f.field();
  const std::size_t n = f.nvars();
  const auto& [lead_exp, lead_coef] = g.leading_term();
  const FieldElem lead_inv = lead_coef.inverse();

  MultiPoly rest = f;
  DivisionResult out{MultiPoly(field, n), MultiPoly(field, n)};
  Exponent shift(n), prod(n);
  while (!rest.is_zero()) {
    const auto [e, c] = rest.leading_term();
    bool divisible = true;
    for (std::size_t i = 0; i < n && divisible; ++i)
      divisible = e[i] >= lead_exp[i];
    if (!divisible) {
      out.remainder.add_term(e, c);
      rest.add_term(e, -c);
      continue;
    }
    for (std::size_t i = 0; i < n; ++i) shift[i] = e[i] - lead_exp[i];
    const FieldElem q = c * lead_inv;
    out.quotient.add_term(shift, q);
    for (const auto& [ge, gc] : g.terms()) {
      for (std::size_t i = 0; i < n; ++i) prod[i] = shift[i] + ge[i];
      rest.add_term(prod, -(q * gc));
    }
  }
  return out;
}

bool divides(const MultiPoly& g, const MultiPoly& f) {
  return divide(f, g).remainder.is_zero();
}

std::uint64_t canonical_linear_form_count(const Field& field, std::size_t n) {
  const std::uint64_t fo = field.order();
  std::uint64_t fn = 1;
  for (std::size_t i = 0; i < n; ++i) fn *= fo;
  return (fn - 1) / (fo - 1) * fo;
}

std::vector<MultiPoly> canonical_linear_forms(const Field& field,
                                              std::size_t n) {
  std::vector<MultiPoly> out;
  const auto elems = field.elements();
  for (std::size_t k = 0; k < n; ++k) {
    for (const auto& a : all_points(field, n)) {
      bool canonical = a[k].is_one();
      for (std::size_t j = 0; j < k && canonical; ++j)
        canonical = a[j].is_zero();
      if (!canonical) continue;
      for (const auto& a0 : elems)
        out.push_back(MultiPoly::linear(a0, a.coords()));
    }
  }
  return out;
}

LinearFactorization factor_linear(const MultiPoly& f, std::uint64_t cap) {
  if (f.is_zero()) throw InputError("cannot factor the zero polynomial");
  const std::uint64_t candidates =
      canonical_linear_form_count(f.field(), f.nvars());
  if (candidates > cap)
    throw InputError(
        "linear-form trial division needs " + std::to_string(candidates) +
        " candidates, above the cap of " + std::to_string(cap) +
        "; supply the factorization through an external factor-list file");
  LinearFactorization out{{}, f};
  for (const auto& form : canonical_linear_forms(f.field(), f.nvars())) {
    if (out.remainder.degree() <= 0) break;
    std::uint32_t mult = 0;
    while (out.remainder.degree() > 0) {
      auto [q, r] = divide(out.remainder, form);
      if (!r.is_zero()) break;
      out.remainder = std::move(q);
      ++mult;
    }
    if (mult) out.factors.push_back({form, mult});
  }
  return out;
}

}  // namespace jointslab
