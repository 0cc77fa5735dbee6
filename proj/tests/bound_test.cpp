#include <doctest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "diff_forge/bound.hpp"
#include "diff_forge/error.hpp"

using namespace diff_forge;
using Float = boost::multiprecision::cpp_bin_float_100;

namespace {

BigInt binom(unsigned n, unsigned k) {
  BigInt r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Q(d, m) straight from the formula in binary floating point.
Float reference_q(unsigned d, unsigned m) {
  BigInt u = 0;
  for (unsigned h = 1; h <= m; ++h) u += binom(m, h) * boost::multiprecision::pow(BigInt(d - 1), h) * (h - 1);
  const BigInt w = boost::multiprecision::pow(BigInt(d), m - 1) * m;
  const Float uf(u);
  const Float root = uf + sqrt(uf * uf + 4 * Float(w));
  return root * root / 4;
}

}  // namespace

TEST_SUITE("bound") {

TEST_CASE("printed values") {
  auto b = q_bound(3, 5);
  CHECK(b.q_floor == 323433);
  CHECK(b.threshold == 323434);
  CHECK(q_bound(3, 9).decimal() == "9.68583e+09");
  CHECK(q_bound(4, 13).decimal() == "3.44807e+17");
  CHECK(q_bound(2, 13).decimal() == "2.03024e+09");
  CHECK(q_bound(12, 12).decimal() == "7.94968e+27");
}

TEST_CASE("d = 1 collapses to m") {
  for (unsigned m = 1; m <= 20; ++m) {
    auto b = q_bound(1, m);
    CHECK(b.u == 0);
    CHECK(b.q_floor == m);
  }
}

TEST_CASE("exact floor agrees with high-precision evaluation") {
  for (unsigned d = 1; d <= 16; ++d)
    for (unsigned m = 1; m <= 16; ++m) {
      const auto b = q_bound(d, m);
      const Float q = reference_q(d, m);
      // Q can be an exact integer (d = 1 gives m), where rounding may land
      // just below it.
      const Float nudged = q + Float("1e-60") * q;
      const BigInt fl = static_cast<BigInt>(floor(nudged));
      CHECK_MESSAGE(b.q_floor == fl, "d=" << d << " m=" << m);
      CHECK(Float(b.q_floor) <= nudged);
      CHECK(Float(b.threshold) > nudged);
      CHECK(b.threshold == b.q_floor + 1);
    }
}

TEST_CASE("strictly increasing in d and in m") {
  // Q(d, 1) = 1 for every d, so growth in d starts at m = 2.
  for (unsigned d = 1; d <= 16; ++d) CHECK(q_bound(d, 1).q_floor == 1);
  for (unsigned d = 1; d <= 16; ++d)
    for (unsigned m = 1; m <= 16; ++m) {
      const auto v = q_bound(d, m).value();
      if (d < 16 && m >= 2) CHECK(q_bound(d + 1, m).value() > v);
      if (m < 16) CHECK(q_bound(d, m + 1).value() > v);
    }
}

TEST_CASE("invalid arguments") {
  CHECK_THROWS_AS(q_bound(0, 3), InvalidArgument);
  CHECK_THROWS_AS(q_bound(3, 0), InvalidArgument);
}

}  // TEST_SUITE
