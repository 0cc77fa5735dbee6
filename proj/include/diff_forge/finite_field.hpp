#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace diff_forge {

/// Elements of F_q are encoded by the integer sum c_i p^i of their coefficient
/// vector (constant term first), so 0 and 1 are the field's zero and one and
/// the prime subfield occupies codes 0..p-1.
using FieldElem = std::uint64_t;

/// F_{p^f} presented as F_p[x]/(m(x)) with m primitive, together with a fixed
/// primitive element omega. Copies share the (immutable) logarithm tables.
class FiniteField {
 public:
  static constexpr std::uint64_t kDefaultDlogThreshold = std::uint64_t{1} << 20;

  /// Table cutoff used when none is passed explicitly. Reads the
  /// DIFF_FORGE_DLOG_THRESHOLD environment variable once.
  static std::uint64_t default_dlog_threshold();

  /// Builds F_{p^f}. Without a modulus, the prime field uses the least
  /// primitive root and extensions use the lexicographically least primitive
  /// polynomial (coefficients compared constant term first). A supplied
  /// modulus must have degree f and be primitive; it is scaled to be monic.
  FiniteField(std::uint64_t p, unsigned f = 1,
              std::optional<std::vector<std::uint64_t>> modulus = std::nullopt,
              std::optional<std::uint64_t> dlog_threshold = std::nullopt);

  /// Field of order q (q must be a prime power) with canonical presentation.
  static FiniteField of_order(std::uint64_t q,
                              std::optional<std::uint64_t> dlog_threshold = std::nullopt);

  std::uint64_t characteristic() const noexcept { return p_; }
  unsigned degree() const noexcept { return f_; }
  std::uint64_t order() const noexcept { return q_; }
  const std::vector<std::uint64_t>& modulus() const noexcept { return modulus_; }
  FieldElem primitive_element() const noexcept { return omega_; }
  bool has_log_table() const noexcept { return tables_ != nullptr; }
  bool contains(FieldElem x) const noexcept { return x < q_; }

  FieldElem from_integer(std::int64_t n) const noexcept;
  std::vector<std::uint64_t> coefficients(FieldElem x) const;
  FieldElem from_coefficients(std::span<const std::uint64_t> coeffs) const;

  FieldElem add(FieldElem a, FieldElem b) const noexcept;
  FieldElem sub(FieldElem a, FieldElem b) const noexcept;
  FieldElem neg(FieldElem a) const noexcept;
  FieldElem mul(FieldElem a, FieldElem b) const noexcept;
  FieldElem pow(FieldElem a, std::uint64_t e) const noexcept;
  FieldElem inv(FieldElem a) const;
  FieldElem div(FieldElem a, FieldElem b) const { return mul(a, inv(b)); }

  /// omega^k for any integer k.
  FieldElem omega_pow(std::int64_t k) const noexcept;
  /// Discrete logarithm base omega, in [0, q-1).
  std::uint64_t log(FieldElem x) const;

  /// Label i with x in C_i^{e,q} = omega^i * (e-th powers).
  unsigned cyclo_index(std::uint64_t e, FieldElem x) const;
  /// Same result computed by matching x^{(q-1)/e} against the e-th roots of
  /// unity, never consulting the logarithm table.
  unsigned cyclo_index_by_power(std::uint64_t e, FieldElem x) const;

  /// {omega^{d j} : 0 <= j < e/d}: one element per coset of C_0^{e,q} in
  /// C_0^{d,q}.
  std::vector<FieldElem> representative_system(std::uint64_t e, std::uint64_t d) const;

  /// omega^{(q-1)/4}.
  FieldElem primitive_fourth_root() const;

  /// "GF(25)" for prime fields, "GF(25)[x^2+2x+3]" for extensions.
  std::string describe() const;
  std::string format(FieldElem x) const;

  bool operator==(const FiniteField& other) const noexcept {
    return p_ == other.p_ && f_ == other.f_ && modulus_ == other.modulus_;
  }

 private:
  struct Tables {
    std::vector<FieldElem> exp;      // exp[i] = omega^i, i < q-1
    std::vector<std::uint32_t> log;  // log[x] for x != 0
  };

  FieldElem poly_mul(FieldElem a, FieldElem b) const;
  FieldElem slow_pow(FieldElem a, std::uint64_t e) const;
  bool has_full_order(FieldElem g) const;
  void check_divisor(std::uint64_t e) const;
  void check_nonzero(FieldElem x) const;

  std::uint64_t p_ = 0;
  unsigned f_ = 1;
  std::uint64_t q_ = 0;
  std::vector<std::uint64_t> modulus_;
  FieldElem omega_ = 0;
  std::shared_ptr<const Tables> tables_;
};

}  // namespace diff_forge
