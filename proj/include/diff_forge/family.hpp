#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "diff_forge/group.hpp"

namespace diff_forge {

using Block = std::vector<GroupElem>;

/// Multiplicity of every group element in a list of differences, indexed by
/// element code.
class DifferenceTally {
 public:
  explicit DifferenceTally(std::uint64_t group_order) : counts_(group_order, 0) {}

  std::uint64_t operator[](GroupElem x) const { return counts_.at(x.code); }
  void add(GroupElem x, std::uint64_t times = 1) { counts_.at(x.code) += times; }
  std::uint64_t total() const;
  const std::vector<std::uint64_t>& counts() const noexcept { return counts_; }

  friend bool operator==(const DifferenceTally&, const DifferenceTally&) = default;

 private:
  std::vector<std::uint64_t> counts_;
};

/// Ordered differences x - y over all pairs of distinct positions of every
/// block. Repeated entries in a block contribute, so 0 can occur.
DifferenceTally difference_multiset(const std::vector<Block>& blocks, const AbelianGroup& group);

/// Element whose observed multiplicity differs from the expected one.
struct Violation {
  GroupElem element;
  std::uint64_t observed = 0;
  std::uint64_t expected = 0;
};

/// (G, k, mu) strong difference family. Base blocks are multisets kept as
/// sequences so that positional pairing with companion sequences survives.
class StrongDifferenceFamily {
 public:
  StrongDifferenceFamily(AbelianGroup group, std::vector<Block> blocks, unsigned k, std::uint64_t mu);

  const AbelianGroup& group() const noexcept { return group_; }
  const std::vector<Block>& blocks() const noexcept { return blocks_; }
  unsigned k() const noexcept { return k_; }
  std::uint64_t mu() const noexcept { return mu_; }

 private:
  AbelianGroup group_;
  std::vector<Block> blocks_;
  unsigned k_;
  std::uint64_t mu_;
};

struct SdfReport {
  bool ok = false;
  /// Common multiplicity when the tally is constant over G.
  std::optional<std::uint64_t> mu_observed;
  std::optional<Violation> first_violation;
  /// Necessary conditions on the declared parameters: mu even and
  /// mu |G| divisible by k(k-1).
  bool mu_even = false;
  bool divisibility = false;
};

SdfReport verify_sdf(const StrongDifferenceFamily& sdf);

/// (G, N, k, lambda) relative difference family with set base blocks.
/// Construction rejects blocks of the wrong size, repeated elements and
/// elements outside G.
class RelativeDifferenceFamily {
 public:
  RelativeDifferenceFamily(AbelianGroup group, Subgroup subgroup, std::vector<Block> blocks, unsigned k,
                           std::uint64_t lambda);

  const AbelianGroup& group() const noexcept { return group_; }
  const Subgroup& subgroup() const noexcept { return subgroup_; }
  const std::vector<Block>& blocks() const noexcept { return blocks_; }
  unsigned k() const noexcept { return k_; }
  std::uint64_t lambda() const noexcept { return lambda_; }

  /// lambda (|G| - |N|) / (k (k-1)); nothing when not integral.
  std::optional<std::uint64_t> expected_block_count() const;

 private:
  AbelianGroup group_;
  Subgroup subgroup_;
  std::vector<Block> blocks_;
  unsigned k_;
  std::uint64_t lambda_;
};

struct DfReport {
  bool ok = false;
  std::optional<Violation> first_violation;
  bool block_count_matches = false;
};

DfReport verify_df(const RelativeDifferenceFamily& df);

/// Translates B + g for every base block B and every g in G, base block
/// major, translates in canonical order of g.
std::vector<Block> develop_df(const RelativeDifferenceFamily& df);

/// The base blocks of `times` copies of df, with lambda scaled accordingly.
RelativeDifferenceFamily repeat(const RelativeDifferenceFamily& df, unsigned times);

}  // namespace diff_forge
