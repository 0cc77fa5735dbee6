#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "diff_forge/finite_field.hpp"
#include "diff_forge/lifting.hpp"
#include "diff_forge/paley.hpp"

namespace diff_forge {

/// Find values for the symbols of a Paley scheme over F_q such that every
/// evaluated D_h is a lambda-transversal for the cosets of C_0^{d,q}.
struct SearchProblem {
  PaleyScheme scheme;
  SymbolicDhTable table;
  FiniteField field;  // F_q
  std::uint64_t d = 0;
  std::uint64_t lambda = 0;
  FieldElem xi = 0;  // primitive 4th root of unity for the quarter scheme, else 0

  /// Checks d * lambda = |D_h|, that q-1 is divisible by the scheme's unit
  /// count and that d divides e = (q-1) / units.
  static SearchProblem make(std::uint64_t p, SchemeVariant variant, const FiniteField& field, std::uint64_t d,
                            std::uint64_t lambda);

  std::uint64_t e() const { return (field.order() - 1) / scheme.unit_count(); }
};

enum class SearchStatus { found, exhausted, budget_exceeded };

std::string to_string(SearchStatus s);

struct SearchResult {
  SearchStatus status = SearchStatus::exhausted;
  std::vector<FieldElem> witness;  // symbol values in search order
  std::uint64_t nodes = 0;
  double seconds = 0;
  std::string detail;
};

struct SearchOptions {
  /// Maximum number of symbol assignments tried; nothing means unlimited.
  std::optional<std::uint64_t> budget;
  /// Fix the first symbol to 1. Scaling every symbol by c shifts all class
  /// labels by the class of c, so this loses no solutions, and the least
  /// witness always starts with 1.
  bool normalize = true;
  /// Run certify on a found witness and report failure as an exception.
  bool certify = true;
};

/// Depth-first search over the symbols in order y, y1, y2, ..., each ranging
/// over F_q^* in code order. After each assignment every D_h entry whose
/// symbols are all assigned is classified and the search backs up as soon as
/// some class of some D_h holds more than lambda entries. The first witness
/// found is the lexicographically least one.
SearchResult search(const SearchProblem& problem, const SearchOptions& options = {});

/// The lift input (single block over F_p) that a witness produces.
LiftInput lift_input(const SearchProblem& problem, const std::vector<FieldElem>& witness);

struct Certificate {
  bool transversal = false;  // symbolic D_h evaluated and checked
  bool df = false;           // lifted through compute_dh and verified with verify_df
  std::string detail;
  bool ok() const { return transversal && df; }
};

Certificate certify(const SearchProblem& problem, const std::vector<FieldElem>& witness);

struct CycloConstraint {
  FieldElem base = 0;
  unsigned cls = 0;
};

/// Least x in code order with x - b_i in C_{beta_i}^{d,q} for every
/// constraint and x not in `exclude`.
std::optional<FieldElem> find_constrained_element(const FiniteField& field, std::uint64_t d,
                                                  const std::vector<CycloConstraint>& constraints,
                                                  const std::vector<FieldElem>& exclude = {});

/// Required class of `form` for every class of 1 - xi (one column per class).
struct Condition {
  LinearForm form;
  std::vector<unsigned> cls;
};

using ConditionTable = std::vector<Condition>;

/// Condition tables for the quarter scheme with p = 13 (d = 3) and p = 17
/// (d = 4), lambda = 1.
std::optional<ConditionTable> reference_condition_table(std::uint64_t p);

/// Fixes the symbols one at a time, each as the least element meeting the
/// conditions of the table column selected by the class of 1 - xi. Every
/// condition must have the form y_j + c y_i (i < j, c a unit) or y_j, and is
/// applied when y_j is chosen. Symbols without conditions get the least
/// nonzero element. Status is exhausted when some step has no candidate, and
/// also when the completed assignment fails the transversal check.
SearchResult greedy_lift_search(const SearchProblem& problem, const ConditionTable& table,
                                const SearchOptions& options = {});

struct ScanRecord {
  std::uint64_t q = 0;
  SearchResult result;
};

struct ScanOptions {
  SearchOptions search;
  bool primes_only = true;
  unsigned jobs = 1;
};

/// Runs search for every admissible q in [q_from, q_to] (q prime, or a prime
/// power when primes_only is false, with the divisibility conditions of
/// SearchProblem::make). Records come back in increasing q whatever the
/// number of jobs.
std::vector<ScanRecord> scan_range(std::uint64_t p, SchemeVariant variant, std::uint64_t d, std::uint64_t lambda,
                                   std::uint64_t q_from, std::uint64_t q_to, const ScanOptions& options = {});

}  // namespace diff_forge
