#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "diff_forge/finite_field.hpp"

namespace diff_forge {

/// Element re + im * xi of Z[xi] with xi^2 = -1. Coefficients of symbolic
/// differences live here; xi is only given a value at evaluation time.
struct Gauss {
  std::int64_t re = 0;
  std::int64_t im = 0;

  bool is_zero() const noexcept { return re == 0 && im == 0; }
  friend Gauss operator+(Gauss a, Gauss b) noexcept { return {a.re + b.re, a.im + b.im}; }
  friend Gauss operator-(Gauss a, Gauss b) noexcept { return {a.re - b.re, a.im - b.im}; }
  friend Gauss operator*(Gauss a, Gauss b) noexcept {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend auto operator<=>(const Gauss&, const Gauss&) = default;
};

/// The unit group acting on differences: {1, -1} or {1, -1, xi, -xi}.
enum class UnitGroup { plus_minus, gaussian };

std::span<const Gauss> units(UnitGroup group) noexcept;

/// Symbol 0 is the anchor "y"; symbol i >= 1 is "y<i>".
std::string symbol_name(unsigned symbol);

/// Linear combination of symbols with Z[xi] coefficients. Terms are kept
/// sorted by decreasing symbol index with no zero coefficients.
class LinearForm {
 public:
  struct Term {
    unsigned symbol;
    Gauss coef;
    friend auto operator<=>(const Term&, const Term&) = default;
  };

  LinearForm() = default;
  static LinearForm of(unsigned symbol, Gauss coef = {1, 0});

  /// Parses forms such as "y3-y2xi", "2y1", "y2(1-xi)", "-y1+y", "y4+y1xi".
  static LinearForm parse(std::string_view text);

  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  LinearForm operator+(const LinearForm& other) const;
  LinearForm operator-(const LinearForm& other) const;
  LinearForm scaled(Gauss unit) const;

  /// Value at symbol -> values[symbol - first_symbol], with xi substituted.
  FieldElem evaluate(const FiniteField& field, std::span<const FieldElem> values, unsigned first_symbol,
                     FieldElem xi) const;

  std::string to_string() const;

  friend auto operator<=>(const LinearForm&, const LinearForm&) = default;
  friend bool operator==(const LinearForm&, const LinearForm&) = default;

 private:
  std::vector<Term> terms_;
};

/// Representative of the orbit units(group) * form: the coefficient of the
/// highest symbol is moved into {re > 0, im <= 0}, so two-symbol forms read
/// y_i +- y_j or y_i +- y_j xi with i > j.
LinearForm normalize(const LinearForm& form, UnitGroup group);

/// Shapes a normalized difference can take.
enum class FormType {
  twice,         // 2 y_i
  unit,          // y_i
  one_minus_xi,  // y_i (1 - xi)
  sum,           // y_i +- y_j, i > j >= 1
  xi_sum,        // y_i +- y_j xi
  anchored,      // y_i +- y (anchor symbol 0)
  other
};

FormType classify(const LinearForm& normalized);
std::string to_string(FormType type);

}  // namespace diff_forge
