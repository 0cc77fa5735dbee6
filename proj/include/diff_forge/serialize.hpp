#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "diff_forge/bound.hpp"
#include "diff_forge/design.hpp"
#include "diff_forge/family.hpp"
#include "diff_forge/lifting.hpp"
#include "diff_forge/paley.hpp"
#include "diff_forge/search.hpp"

// JSON encodings. Every *_from_json throws SchemaError with the path of the
// offending value. Group elements: an integer for Z_n and prime fields, a
// coefficient list (constant term first) for extension fields, and [l, r]
// for products.

namespace diff_forge {

using Json = nlohmann::ordered_json;

/// Parses one JSON document; SchemaError at path "" when it is malformed.
Json parse_json(std::istream& in);
Json parse_json(const std::string& text);

Json field_to_json(const FiniteField& field);
FiniteField field_from_json(const Json& j, const std::string& path = "/field");

Json field_element_to_json(const FiniteField& field, FieldElem x);
FieldElem field_element_from_json(const FiniteField& field, const Json& j, const std::string& path);

Json group_to_json(const AbelianGroup& g);
AbelianGroup group_from_json(const Json& j, const std::string& path = "/group");

Json element_to_json(const AbelianGroup& g, GroupElem x);
GroupElem element_from_json(const AbelianGroup& g, const Json& j, const std::string& path);

Json subgroup_to_json(const Subgroup& n);
Subgroup subgroup_from_json(const AbelianGroup& g, const Json& j, const std::string& path = "/subgroup");

Json sdf_to_json(const StrongDifferenceFamily& sdf);
StrongDifferenceFamily sdf_from_json(const Json& j);

Json df_to_json(const RelativeDifferenceFamily& df);
RelativeDifferenceFamily df_from_json(const Json& j);

Json design_to_json(const Design& design);
Design design_from_json(const Json& j);
/// A header line {"v", "k", "lambda", "block_count"} followed by one JSON
/// array per block.
void write_design_jsonl(std::ostream& out, const Design& design);
/// Accepts either a single design document or the JSON Lines form.
Design read_design(std::istream& in);

Json lift_input_to_json(const LiftInput& input);
LiftInput lift_input_from_json(const Json& j);

Json sdf_report_to_json(const SdfReport& r, const StrongDifferenceFamily& sdf);
Json df_report_to_json(const DfReport& r, const RelativeDifferenceFamily& df);
Json design_report_to_json(const DesignReport& r);

/// {d, m, U, Q_decimal, Q_floor, q_threshold}; big integers as decimal
/// strings.
Json bound_to_json(const BoundQuery& b);

/// {p, variant, rows: {"<h>": [forms...]}}.
Json dh_table_to_json(const SymbolicDhTable& table, const PaleyScheme& scheme);

/// {p, variant, q, field, d, lambda}; field may be omitted.
SearchProblem problem_from_json(const Json& j);
Json problem_to_json(const SearchProblem& problem);

/// {status, witness, nodes, seconds}; witness keyed by symbol name.
Json search_result_to_json(const SearchProblem& problem, const SearchResult& r);

}  // namespace diff_forge
