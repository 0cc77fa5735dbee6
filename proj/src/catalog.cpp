#include "diff_forge/catalog.hpp"

#include <initializer_list>

namespace diff_forge {

namespace {

Block cyclic_block(std::uint64_t n, std::initializer_list<std::int64_t> values) {
  Block b;
  for (auto v : values) b.push_back({static_cast<std::uint64_t>(((v % static_cast<std::int64_t>(n)) + n) % n)});
  return b;
}

std::vector<FieldElem> field_values(const FiniteField& fq, std::initializer_list<std::int64_t> values) {
  std::vector<FieldElem> out;
  for (auto v : values) out.push_back(fq.from_integer(v));
  return out;
}

std::vector<FieldElem> scaled(const FiniteField& fq, const std::vector<FieldElem>& phi, FieldElem c) {
  std::vector<FieldElem> out;
  for (auto x : phi) out.push_back(fq.mul(x, c));
  return out;
}

// Zero is written as kZero; everything else is an exponent of omega.
constexpr std::int64_t kZero = -1;

std::vector<FieldElem> omega_values(const FiniteField& fq, std::initializer_list<std::int64_t> exponents) {
  std::vector<FieldElem> out;
  for (auto k : exponents) out.push_back(k == kZero ? 0 : fq.omega_pow(k));
  return out;
}

StrongDifferenceFamily cyclic_sdf(std::uint64_t n, unsigned k, std::uint64_t mu,
                                  std::initializer_list<std::initializer_list<std::int64_t>> blocks) {
  std::vector<Block> out;
  for (auto b : blocks) out.push_back(cyclic_block(n, b));
  return StrongDifferenceFamily(AbelianGroup::cyclic(n), std::move(out), k, mu);
}

StrongDifferenceFamily sdf_63_7() {
  return cyclic_sdf(63, 7, 2, {{0, 4, 15, 23, 37, 58, 58}, {0, 1, 3, 7, 13, 25, 39}, {0, 1, 3, 11, 18, 34, 47}});
}

StrongDifferenceFamily sdf_27_9() {
  return cyclic_sdf(27, 9, 8,
                    {{0, 3, 3, 8, 8, 17, 17, 23, 23}, {0, 1, 2, 3, 19, 4, 5, 8, 12}, {0, 1, 2, 3, 19, 6, 11, 13, 17}});
}

StrongDifferenceFamily sdf_45_9() {
  return cyclic_sdf(45, 9, 8,
                    {{0, 2, 2, 15, 15, 23, 23, 33, 33},
                     {0, 1, 4, 5, 6, 7, 13, 22, 33},
                     {0, 1, 4, 5, 6, 7, 13, 22, 33},
                     {0, 2, 5, 11, 21, 25, 28, 36, 40},
                     {0, 2, 5, 11, 21, 25, 28, 36, 40}});
}

StrongDifferenceFamily sdf_63_8() {
  const std::initializer_list<std::int64_t> a = {0, 1, 3, 7, 19, 34, 42, 53};
  const std::initializer_list<std::int64_t> b = {0, 1, 4, 6, 26, 36, 43, 51};
  return cyclic_sdf(63, 8, 8, {{20, 20, -20, -20, 29, 29, -29, -29}, a, a, a, a, b, b, b, b});
}

StrongDifferenceFamily sdf_81_9() {
  const std::initializer_list<std::int64_t> a = {0, 1, 4, 6, 17, 18, 38, 63, 72};
  const std::initializer_list<std::int64_t> b = {0, 2, 7, 27, 30, 38, 53, 59, 69};
  return cyclic_sdf(81, 9, 8, {{0, 4, 4, -4, -4, 37, 37, -37, -37}, a, a, a, a, b, b, b, b});
}

LiftInput make_input(const StrongDifferenceFamily& sdf, FiniteField fq, std::uint64_t e, std::uint64_t d,
                     std::uint64_t lambda, std::vector<std::vector<FieldElem>> phi) {
  return LiftInput{sdf.group(), std::move(fq), e, d, lambda, sdf.blocks(), std::move(phi)};
}

DfParameters params_for(const LiftInput& in, std::uint64_t lambda) {
  return {in.group.order() * in.field.order(), in.group.order(), in.k(), lambda};
}

LiftEntry lemma_2_3() {
  FiniteField f11(11);
  auto in = make_input(sdf_63_7(), f11, 10, 2, 1,
                       {field_values(f11, {0, 3, 5, 6, 8, 1, 10}), field_values(f11, {0, 2, 4, 6, 1, 10, 8}),
                        field_values(f11, {0, 4, 7, 9, 2, 3, 5})});
  auto p = params_for(in, 1);
  return {"lemma-2.3", std::move(in), p, {2, CompositionVariant::on_cosets_plus_infinity, 64, 2, std::nullopt}};
}

LiftEntry lemma_2_7(std::uint64_t q) {
  FiniteField fq(q);
  std::vector<std::vector<FieldElem>> phi;
  if (q == 17) {
    phi = {field_values(fq, {0, 1, 16, 2, 15, 3, 14, 5, 12}), field_values(fq, {0, 1, 2, 7, 11, 10, 5, 14, 16}),
           field_values(fq, {0, 16, 15, 10, 6, 3, 2, 12, 13})};
  } else {
    phi = {field_values(fq, {0, 1, 28, 2, 27, 3, 26, 4, 25}), field_values(fq, {0, 1, 2, 4, 11, 15, 5, 13, 21}),
           field_values(fq, {0, 28, 27, 25, 18, 11, 19, 10, 22})};
  }
  auto in = make_input(sdf_27_9(), fq, q - 1, 2, 4, std::move(phi));
  auto p = params_for(in, 4);
  return {"lemma-2.7-q" + std::to_string(q), std::move(in), p,
          {1, CompositionVariant::on_cosets, 27, 4, std::nullopt}};
}

LiftEntry lemma_2_11() {
  FiniteField f17(17);
  auto b2 = field_values(f17, {0, 1, 2, 3, 6, 9, 4, 11, 15});
  auto b4 = field_values(f17, {0, 3, 8, 6, 12, 7, 9, 2, 13});
  const auto minus = f17.from_integer(-1);
  auto in = make_input(sdf_45_9(), f17, 8, 2, 2,
                       {field_values(f17, {0, 1, -1, 2, -2, 3, -3, 5, -5}), b2, scaled(f17, b2, minus), b4,
                        scaled(f17, b4, minus)});
  auto p = params_for(in, 2);
  return {"lemma-2.11", std::move(in), p, {1, CompositionVariant::on_cosets, 45, 2, std::nullopt}};
}

LiftEntry lemma_2_12() {
  FiniteField f41(41);
  auto b2 = field_values(f41, {0, 1, 7, 21, 12, 15, 24, 4, 34});
  auto b4 = field_values(f41, {0, 3, 31, 32, 15, 9, 40, 25, 35});
  const auto minus = f41.from_integer(-1);
  auto in = make_input(sdf_45_9(), f41, 20, 4, 1,
                       {field_values(f41, {0, 1, -1, 2, -2, 3, -3, 6, -6}), b2, scaled(f41, b2, minus), b4,
                        scaled(f41, b4, minus)});
  auto p = params_for(in, 1);
  return {"lemma-2.12", std::move(in), p, {2, CompositionVariant::on_cosets, 45, 2, std::nullopt}};
}

LiftEntry lemma_2_16(std::uint64_t n) {
  FiniteField f25(5, 2, std::vector<std::uint64_t>{3, 2, 1});
  const auto xi = f25.omega_pow(6);
  const auto minus = f25.from_integer(-1);
  const std::vector<FieldElem> units = {minus, xi, f25.neg(xi)};
  std::vector<FieldElem> b1, b2, b6;
  StrongDifferenceFamily sdf = n == 63 ? sdf_63_8() : sdf_81_9();
  if (n == 63) {
    b1 = omega_values(f25, {0, 12, 6, 18, 1, 13, 7, 19});
    b2 = omega_values(f25, {kZero, 0, 1, 2, 3, 4, 7, 10});
    b6 = omega_values(f25, {kZero, 1, 4, 20, 14, 12, 15, 17});
  } else {
    b1 = omega_values(f25, {kZero, 0, 12, 6, 18, 1, 13, 7, 19});
    b2 = omega_values(f25, {kZero, 0, 1, 2, 3, 4, 5, 7, 8});
    b6 = omega_values(f25, {kZero, 0, 4, 17, 2, 18, 8, 10, 14});
  }
  std::vector<std::vector<FieldElem>> phi = {b1, b2};
  for (auto u : units) phi.push_back(scaled(f25, b2, u));
  phi.push_back(b6);
  for (auto u : units) phi.push_back(scaled(f25, b6, u));
  auto in = make_input(sdf, f25, 6, 2, 1, std::move(phi));
  auto p = params_for(in, 1);
  DesignRecipe recipe = n == 63 ? DesignRecipe{1, CompositionVariant::on_cosets_plus_infinity, 64, 1, 8}
                                : DesignRecipe{1, CompositionVariant::on_cosets, 81, 1, 9};
  return {"lemma-2.16-p" + std::to_string(n), std::move(in), p, recipe};
}

bool tag_matches(const std::string& tag, const std::string& key) {
  if (key.empty()) return false;
  if (tag == key || tag == "lemma-" + key) return true;
  const std::string prefix = "lemma-" + key + "-";
  const std::string bare = key + "-";
  return tag.starts_with(prefix) || (key.starts_with("lemma-") && tag.starts_with(bare));
}

}  // namespace

const std::vector<SdfEntry>& sdf_catalog() {
  static const std::vector<SdfEntry> entries = {
      {"lemma-2.2", sdf_63_7()},      {"lemma-2.6", sdf_27_9()},       {"lemma-2.10", sdf_45_9()},
      {"lemma-2.15-p63", sdf_63_8()}, {"lemma-2.15-p81", sdf_81_9()},
  };
  return entries;
}

const std::vector<LiftEntry>& lift_catalog() {
  static const std::vector<LiftEntry> entries = {lemma_2_3(),  lemma_2_7(17),    lemma_2_7(29),   lemma_2_11(),
                                                 lemma_2_12(), lemma_2_16(63), lemma_2_16(81)};
  return entries;
}

std::vector<const SdfEntry*> find_sdf(const std::string& key) {
  std::vector<const SdfEntry*> out;
  for (const auto& e : sdf_catalog()) {
    if (tag_matches(e.tag, key)) out.push_back(&e);
  }
  return out;
}

std::vector<const LiftEntry*> find_lift(const std::string& key) {
  std::vector<const LiftEntry*> out;
  for (const auto& e : lift_catalog()) {
    if (tag_matches(e.tag, key)) out.push_back(&e);
  }
  return out;
}

}  // namespace diff_forge
