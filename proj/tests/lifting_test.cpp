#include <doctest.h>

#include <algorithm>
#include <map>

#include "diff_forge/catalog.hpp"
#include "diff_forge/error.hpp"
#include "diff_forge/lifting.hpp"
#include "support.hpp"

using namespace diff_forge;

namespace {

bool right_is_zero(const LiftInput& in, const oracle::Coords& c) {
  const auto left_dims = oracle::moduli(in.group).size();
  for (std::size_t i = left_dims; i < c.size(); ++i)
    if (c[i] != 0) return false;
  return true;
}

}  // namespace

TEST_SUITE("lifting") {

TEST_CASE("catalog contents") {
  CHECK(sdf_catalog().size() == 5);
  CHECK(lift_catalog().size() == 7);
  const auto& l23 = find_lift("lemma-2.3").at(0)->input;
  REQUIRE(l23.f_blocks.size() == 3);
  const std::vector<std::uint64_t> f{0, 4, 15, 23, 37, 58, 58};
  const std::vector<FieldElem> phi{0, 3, 5, 6, 8, 1, 10};
  for (std::size_t i = 0; i < f.size(); ++i) {
    CHECK(l23.f_blocks[0][i].code == f[i]);
    CHECK(l23.phi_blocks[0][i] == phi[i]);
  }
  CHECK(find_lift("2.7").size() == 2);
  CHECK(find_lift("2.16").size() == 2);
  CHECK(find_lift("2.16-p81").size() == 1);
  CHECK(find_lift("2.1").empty());
  CHECK(find_sdf("2.15").size() == 2);
}

TEST_CASE("lemma 2.16 over GF(25) uses the printed omega powers") {
  const auto& in = find_lift("2.16-p63").at(0)->input;
  CHECK(in.field.order() == 25);
  CHECK(in.field.modulus() == std::vector<std::uint64_t>{3, 2, 1});
  const auto& b1 = in.phi_blocks.at(0);
  const std::vector<FieldElem> expected{in.field.omega_pow(0),  in.field.omega_pow(12), in.field.omega_pow(6),
                                        in.field.omega_pow(18), in.field.omega_pow(1),  in.field.omega_pow(13),
                                        in.field.omega_pow(7),  in.field.omega_pow(19)};
  CHECK(b1 == expected);
}

TEST_CASE("every catalog lift verifies twice") {
  for (const auto& e : lift_catalog()) {
    CAPTURE(e.tag);
    const auto& in = e.input;
    auto analysis = compute_dh(in);
    CHECK(analysis.factored());
    const auto orbit = (in.field.order() - 1) / in.e;
    for (const auto& row : analysis.rows) {
      CHECK(row.t.size() == row.d.size() * orbit);
      CHECK(class_counts(row.d, in.field, in.d) == std::vector<std::uint64_t>(in.d, in.lambda));
    }
    auto df = lift(in);
    CHECK(df.group().order() == e.expected.v);
    CHECK(df.subgroup().order() == e.expected.n);
    CHECK(df.k() == e.expected.k);
    CHECK(df.lambda() == in.lambda);
    auto r = verify_df(df);
    CHECK(r.ok);
    CHECK(r.block_count_matches);
    CHECK(df.blocks().size() == in.f_blocks.size() * (in.e / in.d));
    for (const auto& b : df.blocks()) {
      std::vector<GroupElem> s(b);
      std::sort(s.begin(), s.end());
      CHECK(std::adjacent_find(s.begin(), s.end()) == s.end());
    }
    CHECK(oracle::is_df(df.blocks(), df.group(), df.subgroup().order(), in.lambda,
                        [&](const oracle::Coords& c) { return right_is_zero(in, c); }));
  }
}

TEST_CASE("expected parameters") {
  struct Want {
    const char* tag;
    std::uint64_t v, n;
    unsigned k;
    std::uint64_t blocks;
  };
  const Want wants[] = {{"2.3", 693, 63, 7, 15},        {"2.7-q17", 459, 27, 9, 24}, {"2.7-q29", 783, 27, 9, 42},
                        {"2.11", 765, 45, 9, 20},       {"2.12", 1845, 45, 9, 25},   {"2.16-p63", 1575, 63, 8, 27},
                        {"2.16-p81", 2025, 81, 9, 27}};
  for (const auto& w : wants) {
    CAPTURE(w.tag);
    const auto* e = find_lift(w.tag).at(0);
    auto df = lift(e->input);
    CHECK(df.group().order() == w.v);
    CHECK(df.subgroup().order() == w.n);
    CHECK(df.k() == w.k);
    CHECK(df.blocks().size() == w.blocks);
    CHECK(df.expected_block_count() == w.blocks);
  }
}

TEST_CASE("mu identity on every catalog entry") {
  for (const auto& e : lift_catalog()) {
    CAPTURE(e.tag);
    const auto& in = e.input;
    const std::uint64_t mu = in.lambda * in.d * (in.field.order() - 1) / in.e;
    CHECK(in.required_mu() == mu);
    auto r = verify_sdf(in.sdf());
    CHECK(r.ok);
    CHECK(r.mu_observed == mu);
    CHECK(oracle::is_sdf(in.f_blocks, in.group, mu));
  }
}

TEST_CASE("lemma 2.3 D_h are representative systems of the squares") {
  const auto& in = find_lift("2.3").at(0)->input;
  auto analysis = compute_dh(in);
  for (const auto& row : analysis.rows) {
    // e = q - 1, so the orbits are singletons and D_h = T_h.
    CHECK(row.d == row.t);
    CHECK(row.d.size() == 2);
    CHECK(class_counts(row.d, in.field, 2) == std::vector<std::uint64_t>{1, 1});
  }
}

TEST_CASE("lemma 2.11 D_h are 2-transversals") {
  const auto& in = find_lift("2.11").at(0)->input;
  auto analysis = compute_dh(in);
  REQUIRE(analysis.factored());
  for (const auto& row : analysis.rows) CHECK(class_counts(row.d, in.field, 2) == std::vector<std::uint64_t>{2, 2});
}

TEST_CASE("single block [0,0] with companions (0,1)") {
  LiftInput in{AbelianGroup::cyclic(1), FiniteField(7), 6, 1, 1, {{{0}, {0}}}, {{0, 1}}};
  auto analysis = compute_dh(in);
  CHECK(analysis.rows.at(0).t == std::vector<FieldElem>{1, 6});
}

TEST_CASE("compute_dh reproduces the lifted difference tally") {
  for (const auto& e : lift_catalog()) {
    CAPTURE(e.tag);
    const auto& in = e.input;
    auto analysis = compute_dh(in);
    auto df = lift(in);
    const auto& g = df.group();
    // Tally of the expanded family, grouped by the G coordinate.
    std::map<std::pair<std::uint64_t, FieldElem>, std::uint64_t> observed;
    for (const auto& b : df.blocks())
      for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) {
          if (i == j) continue;
          auto [l, r] = g.split(g.sub(b[i], b[j]));
          ++observed[{l.code, r.code}];
        }
    std::map<std::pair<std::uint64_t, FieldElem>, std::uint64_t> predicted;
    for (const auto& row : analysis.rows)
      for (auto t : row.t)
        for (auto s : in.field.representative_system(in.e, in.d)) ++predicted[{row.h.code, in.field.mul(t, s)}];
    CHECK(observed == predicted);
  }
}

TEST_CASE("doubling") {
  const auto* e = find_lift("2.12").at(0);
  auto df = lift(e->input);
  auto two = double_lambda(df);
  CHECK(two.lambda() == 2);
  CHECK(two.blocks().size() == 2 * df.blocks().size());
  CHECK(verify_df(two).ok);
  auto t1 = difference_multiset(df.blocks(), df.group());
  auto t2 = difference_multiset(two.blocks(), two.group());
  for (std::size_t i = 0; i < t1.counts().size(); ++i) CHECK(t2.counts()[i] == 2 * t1.counts()[i]);
}

TEST_CASE("lift rejects inputs that break the hypotheses") {
  auto in = find_lift("2.3").at(0)->input;
  auto bad = in;
  bad.phi_blocks[0][1] = bad.field.add(bad.phi_blocks[0][1], 1);
  CHECK_THROWS_AS(lift(bad), LiftError);
  auto analysis = compute_dh(bad);
  CHECK(analysis.factored());  // e = q - 1 always factors; the transversal fails
  bad = in;
  bad.phi_blocks[0][6] = bad.phi_blocks[0][5];  // (58,1) twice
  CHECK_THROWS_AS(lift(bad), LiftError);
  bad = in;
  bad.d = 3;
  CHECK_THROWS_AS(lift(bad), InvalidArgument);
  // Unfactorable: lemma 2.11 has e = 8 < q - 1.
  auto in11 = find_lift("2.11").at(0)->input;
  in11.phi_blocks[0][1] = in11.field.add(in11.phi_blocks[0][1], 1);
  auto a11 = compute_dh(in11);
  CHECK_FALSE(a11.factored());
  REQUIRE(a11.first_unfactored());
  CHECK_FALSE(a11.first_unfactored()->failure.empty());
  CHECK_THROWS_AS(lift(in11), LiftError);
}

}  // TEST_SUITE
