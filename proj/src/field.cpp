#include "jointslab/field.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <sstream>

#include "jointslab/error.hpp"

namespace jointslab {

namespace {

using Coeffs = std::vector<std::uint64_t>;

void trim(Coeffs& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  // p is prime, so a^(p-2).
  std::uint64_t result = 1, base = a % p, e = p - 2;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return result;
}

// a mod f over GF(p); f need not be monic but must be nonzero.
Coeffs poly_mod(Coeffs a, const Coeffs& f, std::uint64_t p) {
  trim(a);
  const std::size_t df = f.size() - 1;
  const std::uint64_t lead_inv = inv_mod(f.back(), p);
  while (a.size() > df) {
    const std::uint64_t c = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - 1 - df;
    for (std::size_t i = 0; i <= df; ++i)
      a[shift + i] = (a[shift + i] + (p - c) * f[i]) % p;
    trim(a);
  }
  return a;
}

Coeffs poly_mulmod(const Coeffs& a, const Coeffs& b, const Coeffs& f,
                   std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Coeffs r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return poly_mod(std::move(r), f, p);
}

Coeffs poly_powmod(Coeffs base, std::uint64_t e, const Coeffs& f,
                   std::uint64_t p) {
  Coeffs result{1};
  base = poly_mod(std::move(base), f, p);
  while (e) {
    if (e & 1) result = poly_mulmod(result, base, f, p);
    base = poly_mulmod(base, base, f, p);
    e >>= 1;
  }
  return result;
}

Coeffs poly_gcd(Coeffs a, Coeffs b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Coeffs r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// x^(p^k) mod f
Coeffs frobenius_power_of_x(std::uint64_t k, const Coeffs& f,
                            std::uint64_t p) {
  Coeffs h = poly_mod(Coeffs{0, 1}, f, p);
  for (std::uint64_t i = 0; i < k; ++i) h = poly_powmod(h, p, f, p);
  return h;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool is_irreducible(std::span<const std::uint32_t> poly, std::uint32_t p) {
  Coeffs f(poly.begin(), poly.end());
  for (auto& c : f) c %= p;
  trim(f);
  if (f.size() < 2) return false;
  const std::uint64_t q = f.size() - 1;
  if (q == 1) return true;
  // x^(p^q) == x (mod f)
  Coeffs h = frobenius_power_of_x(q, f, p);
  Coeffs x = poly_mod(Coeffs{0, 1}, f, p);
  if (h != x) return false;
  for (std::uint64_t l : prime_factors(q)) {
    Coeffs g = frobenius_power_of_x(q / l, f, p);
    g.resize(std::max<std::size_t>(g.size(), 2), 0);
    g[1] = (g[1] + p - 1) % p;
    trim(g);
    if (g.empty()) return false;
    if (poly_gcd(f, g, p).size() != 1) return false;
  }
  return true;
}

std::vector<std::uint32_t> smallest_irreducible(std::uint32_t p,
                                                std::uint32_t q) {
  if (!is_prime(p)) throw InputError("field characteristic must be prime");
  if (q == 0) throw InputError("extension degree must be >= 1");
  if (q == 1) return {0, 1};
  std::vector<std::uint32_t> f(q + 1, 0);
  f[q] = 1;
  // Walk the lower q coefficients as a base-p counter.
  while (true) {
    if (is_irreducible(f, p)) return f;
    std::size_t i = 0;
    while (i < q && ++f[i] == p) f[i++] = 0;
    if (i == q) break;
  }
  throw Error("no irreducible polynomial found");  // unreachable
}

// ---------------------------------------------------------------------------

const Field& Field::get(std::uint32_t p, std::uint32_t q) {
  return get(FieldSpec{p, q, smallest_irreducible(p, q)});
}

const Field& Field::get(const FieldSpec& requested) {
  FieldSpec spec = requested;
  if (!is_prime(spec.p))
    throw InputError("field characteristic " + std::to_string(spec.p) +
                     " is not prime");
  if (spec.q == 0) throw InputError("extension degree must be >= 1");
  if (spec.q == 1) {
    spec.modulus = {0, 1};
  } else {
    if (spec.modulus.size() != spec.q + 1 || spec.modulus.back() != 1)
      throw InputError("modulus must be monic of degree q");
    for (auto c : spec.modulus)
      if (c >= spec.p) throw InputError("modulus coefficient out of range");
    if (!is_irreducible(spec.modulus, spec.p))
      throw InputError("modulus is not irreducible over GF(p)");
  }
  std::uint64_t order = 1;
  for (std::uint32_t i = 0; i < spec.q; ++i) {
    order *= spec.p;
    if (order > (std::uint64_t{1} << 31)) throw InputError("field too large");
  }
  if (spec.q > 1 && order > kMaxExtensionOrder)
    throw InputError("extension field too large");

  static std::mutex mutex;
  static std::map<std::tuple<std::uint32_t, std::uint32_t,
                             std::vector<std::uint32_t>>,
                  std::unique_ptr<Field>>
      registry;
  std::lock_guard lock(mutex);
  auto key = std::make_tuple(spec.p, spec.q, spec.modulus);
  auto it = registry.find(key);
  if (it == registry.end())
    it = registry.emplace(key, std::unique_ptr<Field>(new Field(spec))).first;
  return *it->second;
}

Field::Field(FieldSpec spec) : spec_(std::move(spec)) {
  order_ = 1;
  for (std::uint32_t i = 0; i < spec_.q; ++i) order_ *= spec_.p;
  if (spec_.q == 1) return;

  const std::uint64_t group = order_ - 1;
  const auto factors = prime_factors(group);
  auto slow_pow = [&](std::uint32_t a, std::uint64_t e) {
    std::uint32_t r = 1;
    while (e) {
      if (e & 1) r = mul_schoolbook(r, a);
      a = mul_schoolbook(a, a);
      e >>= 1;
    }
    return r;
  };
  std::uint32_t gen = 0;
  for (std::uint32_t g = 2; g < order_; ++g) {
    bool primitive = true;
    for (auto l : factors)
      if (slow_pow(g, group / l) == 1) {
        primitive = false;
        break;
      }
    if (primitive) {
      gen = g;
      break;
    }
  }
  exp_.resize(2 * group);
  log_.assign(order_, 0);
  std::uint32_t cur = 1;
  for (std::uint64_t i = 0; i < group; ++i) {
    exp_[i] = exp_[i + group] = cur;
    log_[cur] = static_cast<std::uint32_t>(i);
    cur = mul_schoolbook(cur, gen);
  }
}

std::vector<std::uint32_t> Field::digits(std::uint32_t index) const {
  std::vector<std::uint32_t> d(spec_.q);
  for (auto& c : d) {
    c = index % spec_.p;
    index /= spec_.p;
  }
  return d;
}

std::uint32_t Field::pack(std::span<const std::uint32_t> d) const {
  std::uint32_t v = 0;
  for (std::size_t i = d.size(); i-- > 0;) v = v * spec_.p + d[i];
  return v;
}

std::uint32_t Field::mul_schoolbook(std::uint32_t a, std::uint32_t b) const {
  const std::uint64_t p = spec_.p;
  const auto da = digits(a), db = digits(b);
  std::vector<std::uint64_t> r(2 * spec_.q - 1, 0);
  for (std::size_t i = 0; i < da.size(); ++i)
    for (std::size_t j = 0; j < db.size(); ++j)
      r[i + j] = (r[i + j] + std::uint64_t{da[i]} * db[j]) % p;
  for (std::size_t k = r.size(); k-- > spec_.q;) {
    const std::uint64_t c = r[k];
    if (c == 0) continue;
    const std::size_t shift = k - spec_.q;
    for (std::size_t i = 0; i <= spec_.q; ++i)
      r[shift + i] = (r[shift + i] + (p - c) * spec_.modulus[i]) % p;
  }
  std::vector<std::uint32_t> out(spec_.q);
  for (std::size_t i = 0; i < spec_.q; ++i)
    out[i] = static_cast<std::uint32_t>(r[i]);
  return pack(out);
}

std::uint32_t Field::add(std::uint32_t a, std::uint32_t b) const {
  const std::uint32_t p = spec_.p;
  if (spec_.q == 1) {
    const std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<std::uint32_t>(s >= p ? s - p : s);
  }
  std::uint32_t result = 0, place = 1;
  for (std::uint32_t i = 0; i < spec_.q; ++i) {
    std::uint32_t d = a % p + b % p;
    if (d >= p) d -= p;
    result += d * place;
    place *= p;
    a /= p;
    b /= p;
  }
  return result;
}

std::uint32_t Field::neg(std::uint32_t a) const {
  const std::uint32_t p = spec_.p;
  if (spec_.q == 1) return a == 0 ? 0 : p - a;
  std::uint32_t result = 0, place = 1;
  for (std::uint32_t i = 0; i < spec_.q; ++i) {
    const std::uint32_t d = a % p;
    result += (d == 0 ? 0 : p - d) * place;
    place *= p;
    a /= p;
  }
  return result;
}

std::uint32_t Field::sub(std::uint32_t a, std::uint32_t b) const {
  return add(a, neg(b));
}

std::uint32_t Field::mul(std::uint32_t a, std::uint32_t b) const {
  if (spec_.q == 1)
    return static_cast<std::uint32_t>(std::uint64_t{a} * b % spec_.p);
  if (a == 0 || b == 0) return 0;
  return exp_[std::size_t{log_[a]} + log_[b]];
}

std::uint32_t Field::inv(std::uint32_t a) const {
  if (a == 0) throw Error("division by zero in " + to_string());
  if (spec_.q == 1) return static_cast<std::uint32_t>(inv_mod(a, spec_.p));
  const std::uint32_t group = order_ - 1;
  return exp_[(group - log_[a]) % group];
}

std::uint32_t Field::pow(std::uint32_t a, std::uint64_t e) const {
  std::uint32_t result = 1;
  while (e) {
    if (e & 1) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

FieldElem Field::zero() const { return {*this, 0}; }
FieldElem Field::one() const { return {*this, 1}; }

FieldElem Field::from_int(std::int64_t v) const {
  std::int64_t r = v % static_cast<std::int64_t>(spec_.p);
  if (r < 0) r += spec_.p;
  return {*this, static_cast<std::uint32_t>(r)};
}

FieldElem Field::from_index(std::uint32_t index) const {
  if (index >= order_) throw InputError("field element index out of range");
  return {*this, index};
}

FieldElem Field::from_coeffs(std::span<const std::int64_t> coeffs) const {
  if (coeffs.size() > spec_.q)
    throw InputError("field element has " + std::to_string(coeffs.size()) +
                     " coefficients, expected at most " +
                     std::to_string(spec_.q));
  std::vector<std::uint32_t> d(spec_.q, 0);
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    d[i] = from_int(coeffs[i]).index();
  return {*this, pack(d)};
}

std::vector<FieldElem> Field::elements() const {
  std::vector<FieldElem> out;
  out.reserve(order_);
  for (std::uint32_t i = 0; i < order_; ++i) out.emplace_back(*this, i);
  return out;
}

std::string Field::to_string() const {
  std::ostringstream os;
  os << "GF(" << spec_.p;
  if (spec_.q > 1) os << "^" << spec_.q;
  os << ")";
  return os.str();
}

// ---------------------------------------------------------------------------

const Field& FieldElem::field() const {
  if (!field_) throw Error("detached field element");
  return *field_;
}

const Field& FieldElem::checked_peer(const FieldElem& o) const {
  if (!field_ || field_ != o.field_)
    throw Error("field mismatch between operands");
  return *field_;
}

FieldElem FieldElem::operator-() const {
  return {field(), field().neg(index_)};
}

FieldElem& FieldElem::operator+=(const FieldElem& o) {
  index_ = checked_peer(o).add(index_, o.index_);
  return *this;
}

FieldElem& FieldElem::operator-=(const FieldElem& o) {
  index_ = checked_peer(o).sub(index_, o.index_);
  return *this;
}

FieldElem& FieldElem::operator*=(const FieldElem& o) {
  index_ = checked_peer(o).mul(index_, o.index_);
  return *this;
}

FieldElem& FieldElem::operator/=(const FieldElem& o) {
  const Field& f = checked_peer(o);
  index_ = f.mul(index_, f.inv(o.index_));
  return *this;
}

FieldElem FieldElem::inverse() const { return {field(), field().inv(index_)}; }

FieldElem FieldElem::pow(std::uint64_t e) const {
  return {field(), field().pow(index_, e)};
}

FieldElem FieldElem::frobenius() const {
  return pow(field().characteristic());
}

std::string FieldElem::to_string() const {
  if (!field_) return "<detached>";
  if (field_->is_prime_field()) return std::to_string(index_);
  const auto d = coeffs();
  std::string s;
  for (std::size_t i = d.size(); i-- > 0;) {
    if (d[i] == 0) continue;
    if (!s.empty()) s += "+";
    if (d[i] != 1 || i == 0) s += std::to_string(d[i]);
    if (i >= 1) s += "t";
    if (i >= 2) s += "^" + std::to_string(i);
  }
  return s.empty() ? "0" : s;
}

std::ostream& operator<<(std::ostream& os, const FieldElem& a) {
  return os << a.to_string();
}

}  // namespace jointslab
