#include "diff_forge/paley.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "diff_forge/error.hpp"
#include "diff_forge/number_theory.hpp"

namespace diff_forge {

namespace {

FiniteField odd_prime_power_field(std::uint64_t p) {
  if (p % 2 == 0) throw InvalidArgument("Paley constructions need an odd prime power, got " + std::to_string(p));
  if (!as_prime_power(p)) throw InvalidArgument(std::to_string(p) + " is not a prime power");
  return FiniteField::of_order(p);
}

std::vector<FieldElem> nonzero_squares(const FiniteField& field) {
  std::set<FieldElem> squares;
  for (FieldElem x = 1; x < field.order(); ++x) squares.insert(field.mul(x, x));
  return {squares.begin(), squares.end()};
}

}  // namespace

StrongDifferenceFamily paley_sdf(std::uint64_t p, PaleyType type) {
  auto field = odd_prime_power_field(p);
  if (type == PaleyType::second && p % 4 != 3)
    throw InvalidArgument("second type Paley multiset needs p = 3 mod 4, got " + std::to_string(p));
  Block block{{0}};
  if (type == PaleyType::second) block.push_back({0});
  for (auto s : nonzero_squares(field)) {
    block.push_back({s});
    block.push_back({s});
  }
  const auto k = static_cast<unsigned>(block.size());
  const std::uint64_t mu = type == PaleyType::first ? p - 1 : p + 1;
  return StrongDifferenceFamily(AbelianGroup::field_additive(field), {std::move(block)}, k, mu);
}

std::string to_string(SchemeVariant v) {
  switch (v) {
    case SchemeVariant::quarter:
      return "quarter";
    case SchemeVariant::half_first:
      return "half-first";
    case SchemeVariant::half_second:
      return "half-second";
  }
  return "quarter";
}

SchemeVariant scheme_variant_from_string(const std::string& s) {
  if (s == "quarter") return SchemeVariant::quarter;
  if (s == "half-first") return SchemeVariant::half_first;
  if (s == "half-second") return SchemeVariant::half_second;
  throw InvalidArgument("unknown scheme variant '" + s + "' (expected quarter, half-first or half-second)");
}

std::uint64_t PaleyScheme::dh_size() const noexcept {
  switch (variant) {
    case SchemeVariant::quarter:
      return (p - 1) / 4;
    case SchemeVariant::half_first:
      return (p - 1) / 2;
    case SchemeVariant::half_second:
      return (p + 1) / 2;
  }
  return 0;
}

std::vector<unsigned> PaleyScheme::symbols() const {
  std::vector<unsigned> out(symbol_count);
  for (unsigned i = 0; i < symbol_count; ++i) out[i] = first_symbol + i;
  return out;
}

PaleyScheme build_scheme(std::uint64_t p, SchemeVariant variant) {
  auto field = odd_prime_power_field(p);
  if (variant == SchemeVariant::quarter && p % 4 != 1)
    throw InvalidArgument("quarter scheme needs p = 1 mod 4, got " + std::to_string(p));
  if (variant == SchemeVariant::half_second && p % 4 != 3)
    throw InvalidArgument("half-second scheme needs p = 3 mod 4, got " + std::to_string(p));

  const FieldElem delta = field.mul(field.primitive_element(), field.primitive_element());
  PaleyScheme s{p, variant, field, delta, {}, {}, 1, 0};
  const Gauss one{1, 0}, minus_one{-1, 0}, xi{0, 1}, minus_xi{0, -1};

  if (variant == SchemeVariant::quarter) {
    const unsigned m = static_cast<unsigned>((p - 1) / 4);
    s.symbol_count = m;
    s.f.push_back(0);
    s.phi.emplace_back();
    FieldElem power = 1;
    for (unsigned i = 1; i <= m; ++i) {
      power = field.mul(power, delta);
      const FieldElem minus = field.neg(power);
      s.f.insert(s.f.end(), {power, power, minus, minus});
      s.phi.insert(s.phi.end(), {LinearForm::of(i, one), LinearForm::of(i, minus_one), LinearForm::of(i, xi),
                                 LinearForm::of(i, minus_xi)});
    }
  } else {
    const unsigned m = static_cast<unsigned>((p - 1) / 2);
    if (variant == SchemeVariant::half_second) {
      s.first_symbol = 0;
      s.symbol_count = m + 1;
      s.f.insert(s.f.end(), {0, 0});
      s.phi.insert(s.phi.end(), {LinearForm::of(0, one), LinearForm::of(0, minus_one)});
    } else {
      s.symbol_count = m;
      s.f.push_back(0);
      s.phi.emplace_back();
    }
    FieldElem power = 1;
    for (unsigned i = 1; i <= m; ++i) {
      power = field.mul(power, delta);
      s.f.insert(s.f.end(), {power, power});
      s.phi.insert(s.phi.end(), {LinearForm::of(i, one), LinearForm::of(i, minus_one)});
    }
  }
  return s;
}

SymbolicDhTable symbolic_dh(const PaleyScheme& scheme) {
  const auto& field = scheme.field;
  const auto p = scheme.p;
  const auto group = scheme.unit_group();
  const auto unit_list = units(group);

  std::vector<std::vector<LinearForm>> t(p);
  const auto k = scheme.block_size();
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      if (a == b) continue;
      auto diff = scheme.phi[a] - scheme.phi[b];
      if (diff.is_zero()) throw std::logic_error("scheme template produces a zero difference");
      t[field.sub(scheme.f[a], scheme.f[b])].push_back(std::move(diff));
    }
  }

  std::vector<std::vector<LinearForm>> d(p);
  for (FieldElem h = 0; h < p; ++h) {
    std::map<LinearForm, std::uint64_t> exact;
    for (const auto& e : t[h]) ++exact[e];
    std::map<LinearForm, std::uint64_t> orbit_total;
    for (const auto& [form, count] : exact) orbit_total[normalize(form, group)] += count;
    for (const auto& [rep, total] : orbit_total) {
      if (total % unit_list.size() != 0)
        throw std::logic_error("differences at h=" + field.format(h) + " are not a union of unit orbits");
      const auto mult = total / unit_list.size();
      for (auto u : unit_list) {
        auto it = exact.find(rep.scaled(u));
        if (it == exact.end() || it->second != mult)
          throw std::logic_error("differences at h=" + field.format(h) + " are not a union of unit orbits");
      }
      d[h].insert(d[h].end(), mult, rep);
    }
    std::sort(d[h].begin(), d[h].end());
  }

  SymbolicDhTable table{p, scheme.variant, {}, std::vector<std::size_t>(p, 0)};
  for (FieldElem h = 0; h < p; ++h) {
    const FieldElem minus = field.neg(h);
    if (d[h] != d[minus]) throw std::logic_error("D_h differs from D_{-h} at h=" + field.format(h));
    if (h <= minus) {
      table.row_of[h] = table.rows.size();
      table.row_of[minus] = table.rows.size();
      table.rows.push_back({h, d[h]});
    }
  }
  return table;
}

namespace {

void check_assignment(const PaleyScheme& scheme, std::span<const FieldElem> assignment, const FiniteField& fq) {
  if (assignment.size() != scheme.symbol_count)
    throw InvalidArgument("expected " + std::to_string(scheme.symbol_count) + " symbol values, got " +
                          std::to_string(assignment.size()));
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    if (assignment[i] == 0 || !fq.contains(assignment[i]))
      throw InvalidArgument(symbol_name(scheme.first_symbol + static_cast<unsigned>(i)) +
                            " must be a nonzero element of " + fq.describe());
  }
}

}  // namespace

std::vector<std::vector<FieldElem>> evaluate_dh(const SymbolicDhTable& table, const PaleyScheme& scheme,
                                                const FiniteField& fq, std::span<const FieldElem> assignment,
                                                FieldElem xi) {
  check_assignment(scheme, assignment, fq);
  std::vector<std::vector<FieldElem>> out;
  out.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    std::vector<FieldElem> values;
    values.reserve(row.entries.size());
    for (const auto& e : row.entries) {
      auto v = e.evaluate(fq, assignment, scheme.first_symbol, xi);
      if (v == 0)
        throw InvalidArgument("entry " + e.to_string() + " of D_" + scheme.field.format(row.h) + " evaluates to 0");
      values.push_back(v);
    }
    out.push_back(std::move(values));
  }
  return out;
}

bool transversal_check(std::span<const FieldElem> values, const FiniteField& fq, std::uint64_t d,
                       std::uint64_t lambda) {
  if (values.size() != d * lambda) return false;
  std::vector<std::uint64_t> counts(d, 0);
  for (auto v : values) {
    if (v == 0) return false;
    if (++counts[fq.cyclo_index(d, v)] > lambda) return false;
  }
  return std::all_of(counts.begin(), counts.end(), [&](auto c) { return c == lambda; });
}

std::vector<std::pair<FieldElem, FieldElem>> assemble_block(const PaleyScheme& scheme, const FiniteField& fq,
                                                            std::span<const FieldElem> assignment, FieldElem xi) {
  check_assignment(scheme, assignment, fq);
  std::vector<std::pair<FieldElem, FieldElem>> out;
  out.reserve(scheme.block_size());
  for (std::size_t a = 0; a < scheme.block_size(); ++a)
    out.emplace_back(scheme.f[a], scheme.phi[a].evaluate(fq, assignment, scheme.first_symbol, xi));
  return out;
}

}  // namespace diff_forge
