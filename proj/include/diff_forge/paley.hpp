#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "diff_forge/family.hpp"
#include "diff_forge/finite_field.hpp"
#include "diff_forge/symbolic.hpp"

namespace diff_forge {

enum class PaleyType { first, second };

/// First type: {0} together with every nonzero square of F_p twice, a
/// (F_p, p, p-1)-SDF. Second type (p = 3 mod 4): 0 and every square twice,
/// a (F_p, p+1, p+1)-SDF.
StrongDifferenceFamily paley_sdf(std::uint64_t p, PaleyType type);

/// Which ordering of the Paley multiset is lifted, and with which unit group.
enum class SchemeVariant {
  quarter,      // p = 1 mod 4, units {1,-1,xi,-xi}, e = (q-1)/4
  half_first,   // p odd,       units {1,-1},        e = (q-1)/2
  half_second,  // p = 3 mod 4, second type,         e = (q-1)/2
};

std::string to_string(SchemeVariant v);
SchemeVariant scheme_variant_from_string(const std::string& s);

/// An ordered Paley base block together with its companion template of
/// symbolic field values.
struct PaleyScheme {
  std::uint64_t p = 0;
  SchemeVariant variant = SchemeVariant::quarter;
  FiniteField field;  // F_p
  FieldElem delta = 0;  // generator of the nonzero squares of F_p
  std::vector<FieldElem> f;
  std::vector<LinearForm> phi;
  unsigned first_symbol = 1;  // 0 when the anchor y is present
  unsigned symbol_count = 0;

  UnitGroup unit_group() const noexcept {
    return variant == SchemeVariant::quarter ? UnitGroup::gaussian : UnitGroup::plus_minus;
  }
  std::size_t block_size() const noexcept { return f.size(); }
  /// |D_h| for every h.
  std::uint64_t dh_size() const noexcept;
  /// q - 1 divided by this gives the index e used when lifting.
  std::uint64_t unit_count() const noexcept { return variant == SchemeVariant::quarter ? 4 : 2; }
  /// Symbols in search order: y (if present), y1, y2, ...
  std::vector<unsigned> symbols() const;
};

/// delta is the square of the canonical primitive element of F_p.
PaleyScheme build_scheme(std::uint64_t p, SchemeVariant variant);

struct DhRow {
  FieldElem h = 0;
  std::vector<LinearForm> entries;  // normalized, sorted
};

/// D_h for h = 0 and one h from each pair {h, -h} (the smaller code), in
/// increasing order of h.
struct SymbolicDhTable {
  std::uint64_t p = 0;
  SchemeVariant variant = SchemeVariant::quarter;
  std::vector<DhRow> rows;
  std::vector<std::size_t> row_of;  // row index for every h in F_p

  const DhRow& row(FieldElem h) const { return rows.at(row_of.at(h)); }
};

/// Groups the positional differences phi_a - phi_b by h = f_a - f_b and
/// factors each group as units * D_h. Throws std::logic_error when a group is
/// not a union of full unit orbits or when D_h != D_{-h}.
SymbolicDhTable symbolic_dh(const PaleyScheme& scheme);

/// Numeric D_h, one vector per table row. `assignment` lists the symbol values
/// in search order. Throws InvalidArgument on a zero assignment or a zero
/// evaluated entry.
std::vector<std::vector<FieldElem>> evaluate_dh(const SymbolicDhTable& table, const PaleyScheme& scheme,
                                                const FiniteField& fq, std::span<const FieldElem> assignment,
                                                FieldElem xi);

/// True iff every class C_l^{d,q} holds exactly lambda of the values.
bool transversal_check(std::span<const FieldElem> values, const FiniteField& fq, std::uint64_t d,
                       std::uint64_t lambda);

/// The lifted base block {(f_a, phi_a)} as pairs of field codes.
std::vector<std::pair<FieldElem, FieldElem>> assemble_block(const PaleyScheme& scheme, const FiniteField& fq,
                                                            std::span<const FieldElem> assignment, FieldElem xi);

}  // namespace diff_forge
