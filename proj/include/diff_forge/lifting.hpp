#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "diff_forge/family.hpp"
#include "diff_forge/finite_field.hpp"
#include "diff_forge/group.hpp"

namespace diff_forge {

/// Ordered SDF blocks F_i over G paired position by position with companion
/// sequences Phi_i over F_q.
struct LiftInput {
  AbelianGroup group;
  FiniteField field;
  std::uint64_t e = 0;
  std::uint64_t d = 0;
  std::uint64_t lambda = 0;
  std::vector<Block> f_blocks;
  std::vector<std::vector<FieldElem>> phi_blocks;

  unsigned k() const { return f_blocks.empty() ? 0 : static_cast<unsigned>(f_blocks.front().size()); }
  /// lambda d (q-1) / e, the multiplicity the F-blocks must have as an SDF.
  std::uint64_t required_mu() const;
  StrongDifferenceFamily sdf() const;
};

/// Raised by lift when the input does not satisfy the lifting hypotheses.
class LiftError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DhFactor {
  GroupElem h;
  std::vector<FieldElem> t;  // positional differences, sorted
  std::vector<FieldElem> d;  // orbit representatives (least element of each orbit)
  bool factored = false;     // t is a union of C_0^{e,q}-orbits
  std::string failure;       // why factoring failed
};

struct DhAnalysis {
  std::vector<DhFactor> rows;  // one per element of G, by code

  bool factored() const;
  const DhFactor* first_unfactored() const;
};

/// T_h = [phi_ia - phi_ib : f_ia - f_ib = h] for every h, each factored as
/// C_0^{e,q} * D_h by removing whole orbits greedily.
DhAnalysis compute_dh(const LiftInput& input);

/// Class counts of `values` over the d cyclotomic classes.
std::vector<std::uint64_t> class_counts(const std::vector<FieldElem>& values, const FiniteField& field,
                                        std::uint64_t d);

/// B_i = {(f_ij, phi_ij)}, without expansion.
std::vector<Block> lifted_blocks(const LiftInput& input);

/// [B_i * (1, s) : i, s in S] over G x F_q relative to G x {0}, i major.
/// Throws LiftError when some D_h fails to factor or is not a
/// lambda-transversal, or when some B_i repeats an element; InvalidArgument
/// when the parameters are inconsistent.
RelativeDifferenceFamily lift(const LiftInput& input);

/// Two copies of every base block, lambda doubled.
RelativeDifferenceFamily double_lambda(const RelativeDifferenceFamily& df);

}  // namespace diff_forge
