#include "diff_forge/family.hpp"

#include <algorithm>
#include <numeric>

#include "diff_forge/error.hpp"

namespace diff_forge {

std::uint64_t DifferenceTally::total() const {
  return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

DifferenceTally difference_multiset(const std::vector<Block>& blocks, const AbelianGroup& group) {
  if (blocks.empty()) throw InvalidArgument("difference multiset of an empty family");
  DifferenceTally tally(group.order());
  for (const auto& block : blocks) {
    for (auto x : block) {
      if (!group.contains(x))
        throw InvalidArgument("element " + std::to_string(x.code) + " is not in " + group.describe());
    }
    for (std::size_t a = 0; a < block.size(); ++a) {
      for (std::size_t b = 0; b < block.size(); ++b) {
        if (a != b) tally.add(group.sub(block[a], block[b]));
      }
    }
  }
  return tally;
}

StrongDifferenceFamily::StrongDifferenceFamily(AbelianGroup group, std::vector<Block> blocks, unsigned k,
                                               std::uint64_t mu)
    : group_(std::move(group)), blocks_(std::move(blocks)), k_(k), mu_(mu) {
  if (blocks_.empty()) throw InvalidArgument("SDF needs at least one base block");
  for (const auto& b : blocks_) {
    if (b.size() != k_) throw InvalidArgument("SDF base block has " + std::to_string(b.size()) + " entries, expected " + std::to_string(k_));
    for (auto x : b) {
      if (!group_.contains(x)) throw InvalidArgument("SDF entry outside " + group_.describe());
    }
  }
}

SdfReport verify_sdf(const StrongDifferenceFamily& sdf) {
  SdfReport report;
  const std::uint64_t kk = std::uint64_t{sdf.k()} * (sdf.k() - 1);
  report.mu_even = sdf.mu() % 2 == 0;
  report.divisibility = kk == 0 ? false : (sdf.mu() * sdf.group().order()) % kk == 0;

  auto tally = difference_multiset(sdf.blocks(), sdf.group());
  const auto& counts = tally.counts();
  const bool constant = std::all_of(counts.begin(), counts.end(), [&](auto c) { return c == counts.front(); });
  if (constant) report.mu_observed = counts.front();
  for (std::uint64_t i = 0; i < counts.size(); ++i) {
    if (counts[i] != sdf.mu()) {
      report.first_violation = Violation{{i}, counts[i], sdf.mu()};
      break;
    }
  }
  report.ok = !report.first_violation.has_value();
  return report;
}

RelativeDifferenceFamily::RelativeDifferenceFamily(AbelianGroup group, Subgroup subgroup, std::vector<Block> blocks,
                                                   unsigned k, std::uint64_t lambda)
    : group_(std::move(group)), subgroup_(std::move(subgroup)), blocks_(std::move(blocks)), k_(k), lambda_(lambda) {
  if (!(subgroup_.group() == group_)) throw InvalidArgument("subgroup belongs to a different group");
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    const auto& b = blocks_[i];
    if (b.size() != k_)
      throw InvalidArgument("base block " + std::to_string(i) + " has size " + std::to_string(b.size()) +
                            ", expected " + std::to_string(k_));
    for (auto x : b) {
      if (!group_.contains(x)) throw InvalidArgument("base block element outside " + group_.describe());
    }
    auto sorted = b;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw InvalidArgument("base block " + std::to_string(i) + " repeats element " + group_.format(*std::adjacent_find(sorted.begin(), sorted.end())));
  }
}

std::optional<std::uint64_t> RelativeDifferenceFamily::expected_block_count() const {
  const std::uint64_t kk = std::uint64_t{k_} * (k_ - 1);
  const std::uint64_t num = lambda_ * (group_.order() - subgroup_.order());
  if (kk == 0 || num % kk != 0) return std::nullopt;
  return num / kk;
}

DfReport verify_df(const RelativeDifferenceFamily& df) {
  DfReport report;
  auto expected_r = df.expected_block_count();
  report.block_count_matches = expected_r && *expected_r == df.blocks().size();
  if (df.blocks().empty()) {
    report.ok = df.group().order() == df.subgroup().order();
    return report;
  }
  auto tally = difference_multiset(df.blocks(), df.group());
  const auto& counts = tally.counts();
  for (std::uint64_t i = 0; i < counts.size(); ++i) {
    const std::uint64_t expected = df.subgroup().contains({i}) ? 0 : df.lambda();
    if (counts[i] != expected) {
      report.first_violation = Violation{{i}, counts[i], expected};
      break;
    }
  }
  report.ok = !report.first_violation.has_value();
  return report;
}

std::vector<Block> develop_df(const RelativeDifferenceFamily& df) {
  const auto& g = df.group();
  std::vector<Block> out;
  out.reserve(df.blocks().size() * g.order());
  for (const auto& base : df.blocks()) {
    for (std::uint64_t t = 0; t < g.order(); ++t) {
      Block translate;
      translate.reserve(base.size());
      for (auto x : base) translate.push_back(g.add(x, {t}));
      out.push_back(std::move(translate));
    }
  }
  return out;
}

RelativeDifferenceFamily repeat(const RelativeDifferenceFamily& df, unsigned times) {
  if (times == 0) throw InvalidArgument("repeat count must be positive");
  std::vector<Block> blocks;
  blocks.reserve(df.blocks().size() * times);
  for (unsigned i = 0; i < times; ++i) blocks.insert(blocks.end(), df.blocks().begin(), df.blocks().end());
  return RelativeDifferenceFamily(df.group(), df.subgroup(), std::move(blocks), df.k(), df.lambda() * times);
}

}  // namespace diff_forge
