#include "diff_forge/bound.hpp"

#include <iomanip>
#include <sstream>

#include "diff_forge/error.hpp"

namespace diff_forge {

namespace {

BigInt binomial(unsigned n, unsigned k) {
  BigInt r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

}  // namespace

BoundQuery q_bound(unsigned d, unsigned m) {
  if (d == 0 || m == 0) throw InvalidArgument("Q(d, m) needs d >= 1 and m >= 1");
  BoundQuery b;
  b.d = d;
  b.m = m;
  for (unsigned h = 1; h <= m; ++h) {
    b.u += binomial(m, h) * boost::multiprecision::pow(BigInt(d - 1), h) * (h - 1);
  }
  b.weight = boost::multiprecision::pow(BigInt(d), m - 1) * m;
  // Q = (N + U sqrt(D)) / 2 with N = U^2 + 2 w and D = U^2 + 4 w, so
  // floor(Q) = floor((N + isqrt(U^2 D)) / 2) whether or not U^2 D is square.
  const BigInt disc = b.u * b.u + 4 * b.weight;
  const BigInt n = b.u * b.u + 2 * b.weight;
  const BigInt radicand = b.u * b.u * disc;
  const BigInt s = boost::multiprecision::sqrt(radicand);
  b.q_floor = (n + s) / 2;
  b.threshold = b.q_floor + 1;
  return b;
}

BigDecimal BoundQuery::value() const {
  BigDecimal uu(u);
  BigDecimal root = boost::multiprecision::sqrt(uu * uu + 4 * BigDecimal(weight));
  BigDecimal t = uu + root;
  return t * t / 4;
}

std::string BoundQuery::decimal(unsigned digits) const {
  std::ostringstream os;
  os << std::scientific << std::setprecision(static_cast<int>(digits > 0 ? digits - 1 : 0)) << value();
  return os.str();
}

}  // namespace diff_forge
