#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace diff_forge {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(std::uint64_t n);

/// Distinct prime divisors of n in increasing order (trial division).
std::vector<std::uint64_t> prime_divisors(std::uint64_t n);

struct PrimePower {
  std::uint64_t p;
  unsigned f;
};

/// Returns {p, f} with n = p^f, or nothing when n is not a prime power.
std::optional<PrimePower> as_prime_power(std::uint64_t n);

std::uint64_t ipow(std::uint64_t base, unsigned exp);

}  // namespace diff_forge
