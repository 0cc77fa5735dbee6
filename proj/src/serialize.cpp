#include "diff_forge/serialize.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "diff_forge/error.hpp"
#include "diff_forge/number_theory.hpp"

namespace diff_forge {

namespace {

const Json& member(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(path + "/" + key, "missing");
  return *it;
}

std::uint64_t as_uint(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw SchemaError(path, "expected a non-negative integer");
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  auto v = j.get<std::int64_t>();
  if (v < 0) throw SchemaError(path, "expected a non-negative integer");
  return static_cast<std::uint64_t>(v);
}

std::uint64_t uint_member(const Json& j, const char* key, const std::string& path) {
  return as_uint(member(j, key, path), path + "/" + key);
}

const Json& array_member(const Json& j, const char* key, const std::string& path) {
  const auto& a = member(j, key, path);
  if (!a.is_array()) throw SchemaError(path + "/" + key, "expected an array");
  return a;
}

std::string idx(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

template <typename F>
auto rethrow_as_schema(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const InvalidArgument& e) {
    throw SchemaError(path, e.what());
  }
}

}  // namespace

Json parse_json(std::istream& in) {
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str());
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError("", std::string("invalid JSON: ") + e.what());
  }
}

Json field_to_json(const FiniteField& field) {
  return Json{{"p", field.characteristic()}, {"f", field.degree()}, {"modulus", field.modulus()}};
}

FiniteField field_from_json(const Json& j, const std::string& path) {
  const auto p = uint_member(j, "p", path);
  unsigned f = 1;
  if (j.contains("f")) f = static_cast<unsigned>(uint_member(j, "f", path));
  std::optional<std::vector<std::uint64_t>> modulus;
  if (j.contains("modulus") && !j["modulus"].is_null()) {
    const auto& m = array_member(j, "modulus", path);
    std::vector<std::uint64_t> coeffs;
    for (std::size_t i = 0; i < m.size(); ++i) coeffs.push_back(as_uint(m[i], idx(path + "/modulus", i)));
    modulus = std::move(coeffs);
  }
  return rethrow_as_schema(path, [&] { return FiniteField(p, f, modulus); });
}

Json field_element_to_json(const FiniteField& field, FieldElem x) {
  if (field.degree() == 1) return x;
  return field.coefficients(x);
}

FieldElem field_element_from_json(const FiniteField& field, const Json& j, const std::string& path) {
  const auto p = field.characteristic();
  if (field.degree() == 1) {
    auto v = as_uint(j, path);
    if (v >= p) throw SchemaError(path, "element " + std::to_string(v) + " is not below " + std::to_string(p));
    return v;
  }
  if (!j.is_array() || j.size() != field.degree())
    throw SchemaError(path, "expected a list of " + std::to_string(field.degree()) + " coefficients");
  std::vector<std::uint64_t> c;
  for (std::size_t i = 0; i < j.size(); ++i) {
    auto v = as_uint(j[i], idx(path, i));
    if (v >= p) throw SchemaError(idx(path, i), "coefficient is not below " + std::to_string(p));
    c.push_back(v);
  }
  return field.from_coefficients(c);
}

Json group_to_json(const AbelianGroup& g) {
  switch (g.kind()) {
    case AbelianGroup::Kind::cyclic:
      return Json{{"kind", "cyclic"}, {"n", g.order()}};
    case AbelianGroup::Kind::field_additive:
      return Json{{"kind", "field"}, {"field", field_to_json(g.field())}};
    case AbelianGroup::Kind::product:
      return Json{{"kind", "product"}, {"left", group_to_json(g.left())}, {"right", group_to_json(g.right())}};
  }
  return {};
}

AbelianGroup group_from_json(const Json& j, const std::string& path) {
  const auto& kind = member(j, "kind", path);
  if (!kind.is_string()) throw SchemaError(path + "/kind", "expected a string");
  const auto k = kind.get<std::string>();
  if (k == "cyclic") {
    const auto n = uint_member(j, "n", path);
    return rethrow_as_schema(path + "/n", [&] { return AbelianGroup::cyclic(n); });
  }
  if (k == "field") return AbelianGroup::field_additive(field_from_json(member(j, "field", path), path + "/field"));
  if (k == "product")
    return AbelianGroup::product(group_from_json(member(j, "left", path), path + "/left"),
                                 group_from_json(member(j, "right", path), path + "/right"));
  throw SchemaError(path + "/kind", "unknown group kind '" + k + "'");
}

Json element_to_json(const AbelianGroup& g, GroupElem x) {
  switch (g.kind()) {
    case AbelianGroup::Kind::cyclic:
      return x.code;
    case AbelianGroup::Kind::field_additive:
      return field_element_to_json(g.field(), x.code);
    case AbelianGroup::Kind::product: {
      auto [l, r] = g.split(x);
      return Json::array({element_to_json(g.left(), l), element_to_json(g.right(), r)});
    }
  }
  return {};
}

GroupElem element_from_json(const AbelianGroup& g, const Json& j, const std::string& path) {
  switch (g.kind()) {
    case AbelianGroup::Kind::cyclic: {
      auto v = as_uint(j, path);
      if (v >= g.order()) throw SchemaError(path, "element " + std::to_string(v) + " is not in " + g.describe());
      return {v};
    }
    case AbelianGroup::Kind::field_additive:
      return {field_element_from_json(g.field(), j, path)};
    case AbelianGroup::Kind::product:
      if (!j.is_array() || j.size() != 2) throw SchemaError(path, "expected a pair [left, right]");
      return g.pair(element_from_json(g.left(), j[0], path + "/0"), element_from_json(g.right(), j[1], path + "/1"));
  }
  return {};
}

Json subgroup_to_json(const Subgroup& n) {
  switch (n.kind()) {
    case Subgroup::Kind::trivial:
      return Json{{"kind", "trivial"}};
    case Subgroup::Kind::left_factor:
      return Json{{"kind", "left_factor"}};
    case Subgroup::Kind::explicit_elements: {
      Json els = Json::array();
      for (auto x : n.elements()) els.push_back(element_to_json(n.group(), x));
      return Json{{"kind", "elements"}, {"elements", els}};
    }
  }
  return {};
}

Subgroup subgroup_from_json(const AbelianGroup& g, const Json& j, const std::string& path) {
  const auto& kind = member(j, "kind", path);
  if (!kind.is_string()) throw SchemaError(path + "/kind", "expected a string");
  const auto k = kind.get<std::string>();
  if (k == "trivial") return Subgroup::trivial(g);
  if (k == "left_factor") {
    if (g.kind() != AbelianGroup::Kind::product) throw SchemaError(path, "left_factor needs a product group");
    return Subgroup::left_factor(g);
  }
  if (k == "elements") {
    const auto& els = array_member(j, "elements", path);
    std::vector<GroupElem> out;
    for (std::size_t i = 0; i < els.size(); ++i) out.push_back(element_from_json(g, els[i], idx(path + "/elements", i)));
    return rethrow_as_schema(path, [&] { return Subgroup::from_elements(g, std::move(out)); });
  }
  throw SchemaError(path + "/kind", "unknown subgroup kind '" + k + "'");
}

namespace {

Json blocks_to_json(const AbelianGroup& g, const std::vector<Block>& blocks) {
  Json out = Json::array();
  for (const auto& b : blocks) {
    Json jb = Json::array();
    for (auto x : b) jb.push_back(element_to_json(g, x));
    out.push_back(std::move(jb));
  }
  return out;
}

std::vector<Block> blocks_from_json(const AbelianGroup& g, const Json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected an array of blocks");
  std::vector<Block> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array()) throw SchemaError(idx(path, i), "expected an array");
    Block b;
    for (std::size_t a = 0; a < j[i].size(); ++a) b.push_back(element_from_json(g, j[i][a], idx(idx(path, i), a)));
    out.push_back(std::move(b));
  }
  return out;
}

}  // namespace

Json sdf_to_json(const StrongDifferenceFamily& sdf) {
  return Json{{"group", group_to_json(sdf.group())},
              {"k", sdf.k()},
              {"mu", sdf.mu()},
              {"blocks", blocks_to_json(sdf.group(), sdf.blocks())}};
}

StrongDifferenceFamily sdf_from_json(const Json& j) {
  auto g = group_from_json(member(j, "group", ""), "/group");
  const auto k = static_cast<unsigned>(uint_member(j, "k", ""));
  const auto mu = uint_member(j, "mu", "");
  auto blocks = blocks_from_json(g, member(j, "blocks", ""), "/blocks");
  return rethrow_as_schema("/blocks", [&] { return StrongDifferenceFamily(g, std::move(blocks), k, mu); });
}

Json df_to_json(const RelativeDifferenceFamily& df) {
  return Json{{"group", group_to_json(df.group())},
              {"subgroup", subgroup_to_json(df.subgroup())},
              {"k", df.k()},
              {"lambda", df.lambda()},
              {"blocks", blocks_to_json(df.group(), df.blocks())}};
}

RelativeDifferenceFamily df_from_json(const Json& j) {
  auto g = group_from_json(member(j, "group", ""), "/group");
  auto n = subgroup_from_json(g, member(j, "subgroup", ""), "/subgroup");
  const auto k = static_cast<unsigned>(uint_member(j, "k", ""));
  const auto lambda = uint_member(j, "lambda", "");
  auto blocks = blocks_from_json(g, member(j, "blocks", ""), "/blocks");
  return RelativeDifferenceFamily(g, n, std::move(blocks), k, lambda);
}

Json design_to_json(const Design& design) {
  return Json{{"v", design.v}, {"k", design.k}, {"lambda", design.lambda}, {"blocks", design.blocks}};
}

namespace {

std::vector<Point> points_from_json(const Json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected an array of points");
  std::vector<Point> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    auto v = as_uint(j[i], idx(path, i));
    if (v > UINT32_MAX) throw SchemaError(idx(path, i), "point out of range");
    out.push_back(static_cast<Point>(v));
  }
  return out;
}

Design design_header(const Json& j) {
  const auto v = uint_member(j, "v", "");
  if (v > UINT32_MAX) throw SchemaError("/v", "too many points");
  return Design{static_cast<std::uint32_t>(v), static_cast<unsigned>(uint_member(j, "k", "")),
                uint_member(j, "lambda", ""), {}};
}

}  // namespace

Design design_from_json(const Json& j) {
  auto d = design_header(j);
  const auto& blocks = array_member(j, "blocks", "");
  for (std::size_t i = 0; i < blocks.size(); ++i) d.blocks.push_back(points_from_json(blocks[i], idx("/blocks", i)));
  return d;
}

void write_design_jsonl(std::ostream& out, const Design& design) {
  out << Json{{"v", design.v}, {"k", design.k}, {"lambda", design.lambda}, {"block_count", design.blocks.size()}}.dump()
      << '\n';
  for (const auto& b : design.blocks) out << Json(b).dump() << '\n';
}

Design read_design(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") != std::string::npos) break;
  }
  std::string first = line;
  Json head;
  bool single_line = true;
  try {
    head = Json::parse(first);
  } catch (const nlohmann::json::parse_error&) {
    single_line = false;
  }
  if (!single_line || head.contains("blocks")) {
    std::stringstream rest;
    rest << first << '\n' << in.rdbuf();
    return design_from_json(parse_json(rest.str()));
  }
  auto d = design_header(head);
  std::size_t block = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Json jb;
    try {
      jb = Json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw SchemaError("line " + std::to_string(line_no), std::string("invalid JSON: ") + e.what());
    }
    d.blocks.push_back(points_from_json(jb, "/blocks/" + std::to_string(block++)));
  }
  if (head.contains("block_count") && uint_member(head, "block_count", "") != d.blocks.size())
    throw SchemaError("/block_count", "header announces " + std::to_string(uint_member(head, "block_count", "")) +
                                          " blocks, found " + std::to_string(d.blocks.size()));
  return d;
}

Json lift_input_to_json(const LiftInput& input) {
  Json phi = Json::array();
  for (const auto& b : input.phi_blocks) {
    Json jb = Json::array();
    for (auto x : b) jb.push_back(field_element_to_json(input.field, x));
    phi.push_back(std::move(jb));
  }
  return Json{{"group", group_to_json(input.group)},
              {"field", field_to_json(input.field)},
              {"e", input.e},
              {"d", input.d},
              {"lambda", input.lambda},
              {"F_blocks", blocks_to_json(input.group, input.f_blocks)},
              {"Phi_blocks", phi}};
}

LiftInput lift_input_from_json(const Json& j) {
  auto g = group_from_json(member(j, "group", ""), "/group");
  auto fq = field_from_json(member(j, "field", ""), "/field");
  auto f_blocks = blocks_from_json(g, member(j, "F_blocks", ""), "/F_blocks");
  const auto& jp = array_member(j, "Phi_blocks", "");
  std::vector<std::vector<FieldElem>> phi;
  for (std::size_t i = 0; i < jp.size(); ++i) {
    if (!jp[i].is_array()) throw SchemaError(idx("/Phi_blocks", i), "expected an array");
    std::vector<FieldElem> b;
    for (std::size_t a = 0; a < jp[i].size(); ++a)
      b.push_back(field_element_from_json(fq, jp[i][a], idx(idx("/Phi_blocks", i), a)));
    phi.push_back(std::move(b));
  }
  return LiftInput{g,
                   fq,
                   uint_member(j, "e", ""),
                   uint_member(j, "d", ""),
                   uint_member(j, "lambda", ""),
                   std::move(f_blocks),
                   std::move(phi)};
}

Json sdf_report_to_json(const SdfReport& r, const StrongDifferenceFamily& sdf) {
  Json j{{"ok", r.ok},
         {"group", sdf.group().describe()},
         {"k", sdf.k()},
         {"mu", sdf.mu()},
         {"mu_observed", r.mu_observed ? Json(*r.mu_observed) : Json(nullptr)},
         {"mu_even", r.mu_even},
         {"divisibility", r.divisibility}};
  if (r.first_violation) {
    j["first_violation"] = {{"element", element_to_json(sdf.group(), r.first_violation->element)},
                            {"observed", r.first_violation->observed},
                            {"expected", r.first_violation->expected}};
  }
  return j;
}

Json df_report_to_json(const DfReport& r, const RelativeDifferenceFamily& df) {
  Json j{{"ok", r.ok},
         {"v", df.group().order()},
         {"n", df.subgroup().order()},
         {"k", df.k()},
         {"lambda", df.lambda()},
         {"blocks", df.blocks().size()},
         {"block_count_matches", r.block_count_matches}};
  if (r.first_violation) {
    j["first_violation"] = {{"element", element_to_json(df.group(), r.first_violation->element)},
                            {"observed", r.first_violation->observed},
                            {"expected", r.first_violation->expected}};
  }
  return j;
}

Json design_report_to_json(const DesignReport& r) {
  Json j{{"ok", r.ok}};
  if (r.first_violation) {
    const auto& v = *r.first_violation;
    Json fv{{"kind", to_string(v.kind)}};
    if (v.kind == DesignViolation::Kind::pair_coverage) {
      fv["pair"] = {v.first, v.second};
    } else if (v.kind != DesignViolation::Kind::block_count) {
      fv["block"] = v.block;
    }
    fv["observed"] = v.observed;
    fv["expected"] = v.expected;
    j["first_violation"] = fv;
  }
  return j;
}

Json bound_to_json(const BoundQuery& b) {
  return Json{{"d", b.d},
              {"m", b.m},
              {"U", b.u.str()},
              {"Q_decimal", b.decimal(6)},
              {"Q_floor", b.q_floor.str()},
              {"q_threshold", b.threshold.str()}};
}

Json dh_table_to_json(const SymbolicDhTable& table, const PaleyScheme& scheme) {
  Json rows = Json::object();
  for (const auto& row : table.rows) {
    Json entries = Json::array();
    for (const auto& e : row.entries) entries.push_back(e.to_string());
    rows[scheme.field.format(row.h)] = entries;
  }
  return Json{{"p", table.p}, {"variant", to_string(table.variant)}, {"rows", rows}};
}

SearchProblem problem_from_json(const Json& j) {
  const auto p = uint_member(j, "p", "");
  SchemeVariant variant = SchemeVariant::quarter;
  if (j.contains("variant")) {
    if (!j["variant"].is_string()) throw SchemaError("/variant", "expected a string");
    variant = rethrow_as_schema("/variant", [&] { return scheme_variant_from_string(j["variant"].get<std::string>()); });
  }
  std::optional<FiniteField> field;
  if (j.contains("field") && !j["field"].is_null()) field = field_from_json(j["field"], "/field");
  if (j.contains("q")) {
    const auto q = uint_member(j, "q", "");
    if (field && field->order() != q) throw SchemaError("/q", "field order differs from q");
    if (!field) field = rethrow_as_schema("/q", [&] { return FiniteField::of_order(q); });
  }
  if (!field) throw SchemaError("/q", "missing");
  const auto d = uint_member(j, "d", "");
  const auto lambda = uint_member(j, "lambda", "");
  return rethrow_as_schema("", [&] { return SearchProblem::make(p, variant, *field, d, lambda); });
}

Json problem_to_json(const SearchProblem& problem) {
  return Json{{"p", problem.scheme.p},
              {"variant", to_string(problem.scheme.variant)},
              {"q", problem.field.order()},
              {"field", field_to_json(problem.field)},
              {"d", problem.d},
              {"lambda", problem.lambda}};
}

Json search_result_to_json(const SearchProblem& problem, const SearchResult& r) {
  Json witness = nullptr;
  if (r.status == SearchStatus::found) {
    witness = Json::object();
    for (std::size_t i = 0; i < r.witness.size(); ++i)
      witness[symbol_name(problem.scheme.first_symbol + static_cast<unsigned>(i))] =
          field_element_to_json(problem.field, r.witness[i]);
  }
  Json j{{"status", to_string(r.status)}, {"witness", witness}, {"nodes", r.nodes}, {"seconds", r.seconds}};
  if (!r.detail.empty()) j["detail"] = r.detail;
  return j;
}

}  // namespace diff_forge
