#include "diff_forge/lifting.hpp"

#include <algorithm>
#include <map>

#include "diff_forge/error.hpp"
#include "diff_forge/paley.hpp"

namespace diff_forge {

namespace {

void check_parameters(const LiftInput& in) {
  const auto q = in.field.order();
  if (in.e == 0 || (q - 1) % in.e != 0)
    throw InvalidArgument("e = " + std::to_string(in.e) + " does not divide q-1 = " + std::to_string(q - 1));
  if (in.d == 0 || in.e % in.d != 0)
    throw InvalidArgument("d = " + std::to_string(in.d) + " does not divide e = " + std::to_string(in.e));
  if (in.lambda == 0) throw InvalidArgument("lambda must be positive");
  if (in.f_blocks.empty()) throw InvalidArgument("lift input has no blocks");
  if (in.f_blocks.size() != in.phi_blocks.size())
    throw InvalidArgument(std::to_string(in.f_blocks.size()) + " F-blocks but " +
                          std::to_string(in.phi_blocks.size()) + " Phi-blocks");
  const auto k = in.k();
  for (std::size_t i = 0; i < in.f_blocks.size(); ++i) {
    if (in.f_blocks[i].size() != k || in.phi_blocks[i].size() != k)
      throw InvalidArgument("block " + std::to_string(i) + " does not have " + std::to_string(k) + " entries");
    for (auto x : in.f_blocks[i]) {
      if (!in.group.contains(x)) throw InvalidArgument("F-block entry outside " + in.group.describe());
    }
    for (auto y : in.phi_blocks[i]) {
      if (!in.field.contains(y)) throw InvalidArgument("Phi-block entry outside " + in.field.describe());
    }
  }
}

}  // namespace

std::uint64_t LiftInput::required_mu() const { return lambda * d * (field.order() - 1) / e; }

StrongDifferenceFamily LiftInput::sdf() const { return StrongDifferenceFamily(group, f_blocks, k(), required_mu()); }

bool DhAnalysis::factored() const { return first_unfactored() == nullptr; }

const DhFactor* DhAnalysis::first_unfactored() const {
  for (const auto& r : rows) {
    if (!r.factored) return &r;
  }
  return nullptr;
}

DhAnalysis compute_dh(const LiftInput& input) {
  check_parameters(input);
  const auto& g = input.group;
  const auto& fq = input.field;
  DhAnalysis out;
  out.rows.resize(g.order());
  for (std::uint64_t h = 0; h < g.order(); ++h) out.rows[h].h = {h};

  for (std::size_t i = 0; i < input.f_blocks.size(); ++i) {
    const auto& f = input.f_blocks[i];
    const auto& phi = input.phi_blocks[i];
    for (std::size_t a = 0; a < f.size(); ++a) {
      for (std::size_t b = 0; b < f.size(); ++b) {
        if (a != b) out.rows[g.sub(f[a], f[b]).code].t.push_back(fq.sub(phi[a], phi[b]));
      }
    }
  }

  const auto orbit_size = (fq.order() - 1) / input.e;
  std::vector<FieldElem> c0;
  for (std::uint64_t j = 0; j < orbit_size; ++j) c0.push_back(fq.omega_pow(static_cast<std::int64_t>(input.e * j)));

  for (auto& row : out.rows) {
    std::sort(row.t.begin(), row.t.end());
    std::map<FieldElem, std::uint64_t> left;
    for (auto x : row.t) ++left[x];
    row.factored = true;
    if (left.count(0)) {
      row.factored = false;
      row.failure = "difference 0 occurs";
      continue;
    }
    while (!left.empty()) {
      const FieldElem x = left.begin()->first;
      for (auto c : c0) {
        const FieldElem y = fq.mul(x, c);
        auto it = left.find(y);
        if (it == left.end()) {
          row.factored = false;
          row.failure = "orbit of " + fq.format(x) + " is incomplete (missing " + fq.format(y) + ")";
          break;
        }
        if (--it->second == 0) left.erase(it);
      }
      if (!row.factored) break;
      row.d.push_back(x);
    }
  }
  return out;
}

std::vector<std::uint64_t> class_counts(const std::vector<FieldElem>& values, const FiniteField& field,
                                        std::uint64_t d) {
  std::vector<std::uint64_t> counts(d, 0);
  for (auto v : values) {
    if (v != 0) ++counts[field.cyclo_index(d, v)];
  }
  return counts;
}

std::vector<Block> lifted_blocks(const LiftInput& input) {
  check_parameters(input);
  const auto fg = AbelianGroup::field_additive(input.field);
  const auto gq = AbelianGroup::product(input.group, fg);
  std::vector<Block> out;
  for (std::size_t i = 0; i < input.f_blocks.size(); ++i) {
    Block b;
    for (std::size_t j = 0; j < input.f_blocks[i].size(); ++j)
      b.push_back(gq.pair(input.f_blocks[i][j], {input.phi_blocks[i][j]}));
    out.push_back(std::move(b));
  }
  return out;
}

RelativeDifferenceFamily lift(const LiftInput& input) {
  const auto analysis = compute_dh(input);
  const auto& fq = input.field;
  if (const auto* bad = analysis.first_unfactored())
    throw LiftError("T_h does not factor at h=" + input.group.format(bad->h) + ": " + bad->failure);
  for (const auto& row : analysis.rows) {
    if (!transversal_check(row.d, fq, input.d, input.lambda)) {
      std::string counts;
      for (auto c : class_counts(row.d, fq, input.d)) counts += (counts.empty() ? "" : ",") + std::to_string(c);
      throw LiftError("D_h at h=" + input.group.format(row.h) + " is not a " + std::to_string(input.lambda) +
                      "-transversal (class counts " + counts + ")");
    }
  }

  const auto gq = AbelianGroup::product(input.group, AbelianGroup::field_additive(fq));
  const auto base = lifted_blocks(input);
  for (std::size_t i = 0; i < base.size(); ++i) {
    auto sorted = base[i];
    std::sort(sorted.begin(), sorted.end());
    if (auto it = std::adjacent_find(sorted.begin(), sorted.end()); it != sorted.end())
      throw LiftError("lifted block " + std::to_string(i) + " repeats " + gq.format(*it));
  }

  const auto reps = fq.representative_system(input.e, input.d);
  std::vector<Block> blocks;
  blocks.reserve(base.size() * reps.size());
  for (const auto& b : base) {
    for (auto s : reps) {
      Block scaled;
      scaled.reserve(b.size());
      for (auto x : b) {
        auto [l, r] = gq.split(x);
        scaled.push_back(gq.pair(l, {fq.mul(r.code, s)}));
      }
      blocks.push_back(std::move(scaled));
    }
  }
  return RelativeDifferenceFamily(gq, Subgroup::left_factor(gq), std::move(blocks), input.k(), input.lambda);
}

RelativeDifferenceFamily double_lambda(const RelativeDifferenceFamily& df) { return repeat(df, 2); }

}  // namespace diff_forge
