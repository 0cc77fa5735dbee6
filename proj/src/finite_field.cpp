#include "diff_forge/finite_field.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <unordered_map>

#include "diff_forge/error.hpp"
#include "diff_forge/number_theory.hpp"

namespace diff_forge {

std::uint64_t FiniteField::default_dlog_threshold() {
  static const std::uint64_t value = [] {
    if (const char* env = std::getenv("DIFF_FORGE_DLOG_THRESHOLD")) {
      char* end = nullptr;
      auto parsed = std::strtoull(env, &end, 10);
      if (end != env && *end == '\0') return static_cast<std::uint64_t>(parsed);
    }
    return kDefaultDlogThreshold;
  }();
  return value;
}

FiniteField::FiniteField(std::uint64_t p, unsigned f,
                         std::optional<std::vector<std::uint64_t>> modulus,
                         std::optional<std::uint64_t> dlog_threshold)
    : p_(p), f_(f) {
  if (!is_prime(p)) throw InvalidArgument("field characteristic " + std::to_string(p) + " is not prime");
  if (f == 0) throw InvalidArgument("field extension degree must be at least 1");
  q_ = 1;
  for (unsigned i = 0; i < f; ++i) {
    if (q_ > (std::numeric_limits<std::uint64_t>::max() >> 2) / p)
      throw InvalidArgument("field order overflows 62 bits");
    q_ *= p;
  }

  if (modulus) {
    auto m = *modulus;
    if (m.size() != f + 1) throw InvalidArgument("modulus must have degree " + std::to_string(f));
    for (auto& c : m) {
      if (c >= p) throw InvalidArgument("modulus coefficient out of range");
    }
    if (m.back() == 0) throw InvalidArgument("modulus leading coefficient is zero");
    // Scale to monic: multiply by the inverse of the leading coefficient.
    std::uint64_t lead_inv = pow_mod(m.back(), p - 2, p);
    for (auto& c : m) c = mul_mod(c, lead_inv, p);
    modulus_ = std::move(m);
    omega_ = f == 1 ? (p - modulus_[0]) % p : p;
    if (!has_full_order(omega_)) throw InvalidArgument("modulus is not a primitive polynomial over F_" + std::to_string(p));
  } else if (f == 1) {
    for (std::uint64_t g = 1; g < p; ++g) {
      if (has_full_order(g)) {
        omega_ = g;
        break;
      }
    }
    modulus_ = {(p - omega_) % p, 1};
  } else {
    const std::uint64_t candidates = q_;
    bool found = false;
    for (std::uint64_t n = 0; n < candidates && !found; ++n) {
      // Most significant digit of n is the constant term.
      std::vector<std::uint64_t> m(f + 1, 0);
      std::uint64_t rest = n;
      for (unsigned i = f; i-- > 0;) {
        m[i] = rest % p;
        rest /= p;
      }
      if (m[0] == 0) continue;
      m[f] = 1;
      modulus_ = std::move(m);
      omega_ = p;
      found = has_full_order(omega_);
    }
    if (!found) throw InvalidArgument("no primitive polynomial found");
  }

  const std::uint64_t threshold = dlog_threshold.value_or(default_dlog_threshold());
  if (q_ <= threshold && q_ - 1 <= std::numeric_limits<std::uint32_t>::max()) {
    auto tables = std::make_shared<Tables>();
    tables->exp.resize(q_ - 1);
    tables->log.assign(q_, 0);
    FieldElem x = 1;
    for (std::uint64_t i = 0; i + 1 < q_; ++i) {
      tables->exp[i] = x;
      tables->log[x] = static_cast<std::uint32_t>(i);
      x = mul(x, omega_);
    }
    tables_ = std::move(tables);
  }
}

FiniteField FiniteField::of_order(std::uint64_t q, std::optional<std::uint64_t> dlog_threshold) {
  auto pp = as_prime_power(q);
  if (!pp) throw InvalidArgument(std::to_string(q) + " is not a prime power");
  return FiniteField(pp->p, pp->f, std::nullopt, dlog_threshold);
}

bool FiniteField::has_full_order(FieldElem g) const {
  if (g == 0) return false;
  const std::uint64_t n = q_ - 1;
  if (slow_pow(g, n) != 1) return false;
  for (auto r : prime_divisors(n)) {
    if (slow_pow(g, n / r) == 1) return false;
  }
  return true;
}

FieldElem FiniteField::from_integer(std::int64_t n) const noexcept {
  auto m = static_cast<std::int64_t>(p_);
  return static_cast<FieldElem>(((n % m) + m) % m);
}

std::vector<std::uint64_t> FiniteField::coefficients(FieldElem x) const {
  std::vector<std::uint64_t> out(f_);
  for (unsigned i = 0; i < f_; ++i) {
    out[i] = x % p_;
    x /= p_;
  }
  return out;
}

FieldElem FiniteField::from_coefficients(std::span<const std::uint64_t> coeffs) const {
  if (coeffs.size() != f_) throw InvalidArgument("expected " + std::to_string(f_) + " coefficients");
  FieldElem x = 0;
  for (unsigned i = f_; i-- > 0;) {
    if (coeffs[i] >= p_) throw InvalidArgument("coefficient out of range");
    x = x * p_ + coeffs[i];
  }
  return x;
}

FieldElem FiniteField::add(FieldElem a, FieldElem b) const noexcept {
  if (f_ == 1) {
    FieldElem s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  FieldElem out = 0, scale = 1;
  for (unsigned i = 0; i < f_; ++i) {
    std::uint64_t c = a % p_ + b % p_;
    if (c >= p_) c -= p_;
    out += c * scale;
    scale *= p_;
    a /= p_;
    b /= p_;
  }
  return out;
}

FieldElem FiniteField::neg(FieldElem a) const noexcept {
  if (f_ == 1) return a == 0 ? 0 : p_ - a;
  FieldElem out = 0, scale = 1;
  for (unsigned i = 0; i < f_; ++i) {
    std::uint64_t c = a % p_;
    out += (c == 0 ? 0 : p_ - c) * scale;
    scale *= p_;
    a /= p_;
  }
  return out;
}

FieldElem FiniteField::sub(FieldElem a, FieldElem b) const noexcept { return add(a, neg(b)); }

FieldElem FiniteField::poly_mul(FieldElem a, FieldElem b) const {
  auto ca = coefficients(a);
  auto cb = coefficients(b);
  std::vector<std::uint64_t> prod(2 * f_ - 1, 0);
  for (unsigned i = 0; i < f_; ++i) {
    if (ca[i] == 0) continue;
    for (unsigned j = 0; j < f_; ++j) {
      prod[i + j] = (prod[i + j] + mul_mod(ca[i], cb[j], p_)) % p_;
    }
  }
  // Reduce by the monic modulus from the top degree down.
  for (std::size_t deg = prod.size(); deg-- > f_;) {
    std::uint64_t c = prod[deg];
    if (c == 0) continue;
    prod[deg] = 0;
    for (unsigned i = 0; i < f_; ++i) {
      std::uint64_t t = mul_mod(c, modulus_[i], p_);
      auto& slot = prod[deg - f_ + i];
      slot = (slot + p_ - t) % p_;
    }
  }
  FieldElem out = 0;
  for (unsigned i = f_; i-- > 0;) out = out * p_ + prod[i];
  return out;
}

FieldElem FiniteField::mul(FieldElem a, FieldElem b) const noexcept {
  if (a == 0 || b == 0) return 0;
  if (tables_) {
    std::uint64_t s = std::uint64_t{tables_->log[a]} + tables_->log[b];
    if (s >= q_ - 1) s -= q_ - 1;
    return tables_->exp[s];
  }
  if (f_ == 1) return mul_mod(a, b, p_);
  return poly_mul(a, b);
}

FieldElem FiniteField::slow_pow(FieldElem a, std::uint64_t e) const {
  FieldElem result = 1;
  while (e > 0) {
    if (e & 1) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

FieldElem FiniteField::pow(FieldElem a, std::uint64_t e) const noexcept {
  if (e == 0) return 1;
  if (a == 0) return 0;
  if (tables_) {
    auto r = static_cast<std::uint64_t>(static_cast<unsigned __int128>(tables_->log[a]) * e % (q_ - 1));
    return tables_->exp[r];
  }
  return slow_pow(a, e);
}

FieldElem FiniteField::inv(FieldElem a) const {
  check_nonzero(a);
  return pow(a, q_ - 2);
}

FieldElem FiniteField::omega_pow(std::int64_t k) const noexcept {
  auto n = static_cast<std::int64_t>(q_ - 1);
  auto r = static_cast<std::uint64_t>(((k % n) + n) % n);
  if (tables_) return tables_->exp[r];
  return slow_pow(omega_, r);
}

std::uint64_t FiniteField::log(FieldElem x) const {
  check_nonzero(x);
  if (tables_) return tables_->log[x];
  // Baby-step giant-step over the full multiplicative group.
  const std::uint64_t n = q_ - 1;
  const auto m = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(n))));
  std::unordered_map<FieldElem, std::uint64_t> baby;
  FieldElem cur = 1;
  for (std::uint64_t j = 0; j < m; ++j) {
    baby.emplace(cur, j);
    cur = mul(cur, omega_);
  }
  const FieldElem giant = inv(slow_pow(omega_, m));
  FieldElem gamma = x;
  for (std::uint64_t i = 0; i <= m; ++i) {
    if (auto it = baby.find(gamma); it != baby.end()) return (i * m + it->second) % n;
    gamma = mul(gamma, giant);
  }
  throw std::logic_error("discrete logarithm not found");
}

void FiniteField::check_divisor(std::uint64_t e) const {
  if (e == 0 || (q_ - 1) % e != 0)
    throw InvalidArgument("index " + std::to_string(e) + " does not divide q-1 = " + std::to_string(q_ - 1));
}

void FiniteField::check_nonzero(FieldElem x) const {
  if (x == 0) throw InvalidArgument("zero has no cyclotomic class or inverse");
  if (x >= q_) throw InvalidArgument("element " + std::to_string(x) + " is not in " + describe());
}

unsigned FiniteField::cyclo_index(std::uint64_t e, FieldElem x) const {
  check_divisor(e);
  check_nonzero(x);
  if (tables_) return static_cast<unsigned>(tables_->log[x] % e);
  return cyclo_index_by_power(e, x);
}

unsigned FiniteField::cyclo_index_by_power(std::uint64_t e, FieldElem x) const {
  check_divisor(e);
  check_nonzero(x);
  const std::uint64_t cofactor = (q_ - 1) / e;
  const FieldElem target = slow_pow(x, cofactor);
  const FieldElem zeta = slow_pow(omega_, cofactor);  // order e
  if (e <= 64) {
    FieldElem cur = 1;
    for (std::uint64_t j = 0; j < e; ++j) {
      if (cur == target) return static_cast<unsigned>(j);
      cur = mul(cur, zeta);
    }
  } else {
    const auto m = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(e))));
    std::unordered_map<FieldElem, std::uint64_t> baby;
    FieldElem cur = 1;
    for (std::uint64_t j = 0; j < m; ++j) {
      baby.emplace(cur, j);
      cur = mul(cur, zeta);
    }
    const FieldElem giant = inv(slow_pow(zeta, m));
    FieldElem gamma = target;
    for (std::uint64_t i = 0; i <= m; ++i) {
      if (auto it = baby.find(gamma); it != baby.end()) return static_cast<unsigned>((i * m + it->second) % e);
      gamma = mul(gamma, giant);
    }
  }
  throw std::logic_error("power residue did not match any root of unity");
}

std::vector<FieldElem> FiniteField::representative_system(std::uint64_t e, std::uint64_t d) const {
  check_divisor(e);
  if (d == 0 || e % d != 0)
    throw InvalidArgument("index " + std::to_string(d) + " does not divide " + std::to_string(e));
  std::vector<FieldElem> out;
  out.reserve(e / d);
  for (std::uint64_t j = 0; j < e / d; ++j) out.push_back(omega_pow(static_cast<std::int64_t>(d * j)));
  return out;
}

FieldElem FiniteField::primitive_fourth_root() const {
  if ((q_ - 1) % 4 != 0) throw InvalidArgument("4 does not divide q-1 = " + std::to_string(q_ - 1));
  return omega_pow(static_cast<std::int64_t>((q_ - 1) / 4));
}

std::string FiniteField::describe() const {
  std::ostringstream os;
  os << "GF(" << q_ << ")";
  if (f_ > 1) {
    os << "[";
    bool first = true;
    for (unsigned i = f_ + 1; i-- > 0;) {
      auto c = modulus_[i];
      if (c == 0) continue;
      if (!first) os << "+";
      first = false;
      if (i == 0 || c != 1) os << c;
      if (i >= 1) os << "x";
      if (i >= 2) os << "^" << i;
    }
    os << "]";
  }
  return os.str();
}

std::string FiniteField::format(FieldElem x) const {
  if (f_ == 1) return std::to_string(x);
  std::ostringstream os;
  os << "[";
  auto c = coefficients(x);
  for (unsigned i = 0; i < f_; ++i) os << (i ? "," : "") << c[i];
  os << "]";
  return os.str();
}

}  // namespace diff_forge
