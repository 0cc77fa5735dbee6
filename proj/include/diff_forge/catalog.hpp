#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "diff_forge/design.hpp"
#include "diff_forge/family.hpp"
#include "diff_forge/lifting.hpp"

namespace diff_forge {

struct SdfEntry {
  std::string tag;
  StrongDifferenceFamily sdf;
};

/// (v, |N|, k, lambda) of a relative DF over G x F_q.
struct DfParameters {
  std::uint64_t v = 0;
  std::uint64_t n = 0;
  unsigned k = 0;
  std::uint64_t lambda = 0;
};

/// How a lifted family becomes a 2-design: take `copies` copies of the DF
/// and fill its cosets with an ingredient 2-(ingredient_v, k, lambda) design.
struct DesignRecipe {
  unsigned copies = 1;
  CompositionVariant variant = CompositionVariant::on_cosets;
  std::uint64_t ingredient_v = 0;
  std::uint64_t ingredient_lambda = 0;
  /// Order of the affine plane serving as ingredient; nothing when the
  /// ingredient has to be supplied as a file.
  std::optional<std::uint64_t> affine_order;
};

struct LiftEntry {
  std::string tag;
  LiftInput input;
  DfParameters expected;
  DesignRecipe recipe;
};

const std::vector<SdfEntry>& sdf_catalog();
const std::vector<LiftEntry>& lift_catalog();

/// Entries whose tag equals `key`, equals "lemma-" + key, or starts with
/// "lemma-" + key + "-". So "2.7" selects both q = 17 and q = 29.
std::vector<const SdfEntry*> find_sdf(const std::string& key);
std::vector<const LiftEntry*> find_lift(const std::string& key);

}  // namespace diff_forge
