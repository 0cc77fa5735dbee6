#pragma once

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

namespace diff_forge {

using BigInt = boost::multiprecision::cpp_int;
using BigDecimal = boost::multiprecision::cpp_dec_float_100;

/// The cyclotomic-existence threshold
///   Q(d, m) = (U + sqrt(U^2 + 4 d^{m-1} m))^2 / 4,
///   U = sum_{h=1}^{m} C(m, h) (d-1)^h (h-1),
/// kept exactly as the pair (U, d^{m-1} m).
struct BoundQuery {
  unsigned d = 0;
  unsigned m = 0;
  BigInt u;
  BigInt weight;     // d^{m-1} m
  BigInt q_floor;    // floor(Q)
  BigInt threshold;  // least integer strictly greater than Q

  /// Q to 100 significant digits.
  BigDecimal value() const;
  /// Q rounded to `digits` significant figures, e.g. "3.23433e+05".
  std::string decimal(unsigned digits = 6) const;
};

/// Throws InvalidArgument for d == 0 or m == 0.
BoundQuery q_bound(unsigned d, unsigned m);

}  // namespace diff_forge
