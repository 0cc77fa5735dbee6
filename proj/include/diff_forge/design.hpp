#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "diff_forge/family.hpp"

namespace diff_forge {

using Point = std::uint32_t;

/// Candidate 2-(v, k, lambda) design on points 0..v-1. Nothing is checked on
/// construction; verify_design is the judge.
struct Design {
  std::uint32_t v = 0;
  unsigned k = 0;
  std::uint64_t lambda = 0;
  std::vector<std::vector<Point>> blocks;
};

struct DesignViolation {
  enum class Kind { block_size, point_range, repeated_point, pair_coverage, block_count };
  Kind kind;
  std::size_t block = 0;           // block_size, point_range, repeated_point
  Point first = 0, second = 0;     // pair_coverage
  std::uint64_t observed = 0;
  std::uint64_t expected = 0;
};

std::string to_string(DesignViolation::Kind kind);

struct DesignReport {
  bool ok = false;
  std::optional<DesignViolation> first_violation;
};

/// Checks block shapes, then counts every unordered pair (a triangular
/// matrix of v(v-1)/2 counters) and compares with lambda.
DesignReport verify_design(const Design& design);

/// lambda copies of the block {0, ..., n-1}.
Design trivial_design(std::uint32_t n, std::uint64_t lambda);

/// AG(2, q): points F_q^2 encoded as x * q + y, blocks all q^2 + q lines.
Design affine_plane(const FiniteField& field);

enum class CompositionVariant { on_cosets = 1, on_cosets_plus_infinity = 2 };

/// Develops df over G and fills every coset of N (variant 1) or every coset
/// together with a point at infinity (variant 2) with a copy of the
/// ingredient design. Points are element codes of G; infinity is |G|.
/// Cosets are visited in canonical order of G and the i-th ingredient point
/// goes to rep + (i-th element of N).
Design compose_design(const RelativeDifferenceFamily& df, const Design& ingredient, CompositionVariant variant);

}  // namespace diff_forge
