#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "diff_forge/error.hpp"
#include "diff_forge/number_theory.hpp"
#include "diff_forge/paley.hpp"
#include "support.hpp"

using namespace diff_forge;

namespace {

std::vector<std::uint64_t> odd_prime_powers(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 3; n <= limit; n += 2)
    if (as_prime_power(n)) out.push_back(n);
  return out;
}

std::vector<LinearForm> normalized(const std::vector<std::string>& printed, UnitGroup g) {
  std::vector<LinearForm> out;
  for (const auto& s : printed) out.push_back(normalize(LinearForm::parse(s), g));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<LinearForm> sorted(std::vector<LinearForm> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::map<FormType, int> type_counts(const DhRow& row) {
  std::map<FormType, int> c;
  for (const auto& e : row.entries) ++c[classify(e)];
  return c;
}

unsigned top_symbol(const LinearForm& f) { return f.terms().front().symbol; }

}  // namespace

TEST_SUITE("paley") {

TEST_CASE("small Paley multisets") {
  auto s = paley_sdf(3, PaleyType::first);
  CHECK(s.blocks().at(0) == Block{{0}, {1}, {1}});
  CHECK(s.mu() == 2);
  s = paley_sdf(3, PaleyType::second);
  CHECK(s.blocks().at(0) == Block{{0}, {0}, {1}, {1}});
  CHECK(s.mu() == 4);
  s = paley_sdf(13, PaleyType::first);
  CHECK(s.k() == 13);
  CHECK(s.mu() == 12);
  CHECK(std::count(s.blocks()[0].begin(), s.blocks()[0].end(), GroupElem{0}) == 1);
  CHECK_THROWS_AS(paley_sdf(13, PaleyType::second), InvalidArgument);
  CHECK_THROWS_AS(paley_sdf(15, PaleyType::first), InvalidArgument);
}

TEST_CASE("Paley generators verify for odd prime powers up to 199") {
  for (auto p : odd_prime_powers(199)) {
    auto first = paley_sdf(p, PaleyType::first);
    CHECK_MESSAGE(verify_sdf(first).ok, p);
    CHECK(first.mu() == p - 1);
    CHECK(oracle::is_sdf(first.blocks(), first.group(), p - 1));
    if (p % 4 == 3) {
      auto second = paley_sdf(p, PaleyType::second);
      CHECK_MESSAGE(verify_sdf(second).ok, p);
      CHECK(second.k() == p + 1);
      CHECK(oracle::is_sdf(second.blocks(), second.group(), p + 1));
    }
  }
}

TEST_CASE("scheme shapes") {
  auto s13 = build_scheme(13, SchemeVariant::quarter);
  CHECK(s13.delta == 4);
  const std::vector<FieldElem> f13{0, 4, 4, 9, 9, 3, 3, 10, 10, 12, 12, 1, 1};
  CHECK(s13.f == f13);
  CHECK(s13.phi.at(1) == LinearForm::parse("y1"));
  CHECK(s13.phi.at(2) == LinearForm::parse("-y1"));
  CHECK(s13.phi.at(3) == LinearForm::parse("y1xi"));
  CHECK(s13.phi.at(4) == LinearForm::parse("-y1xi"));
  CHECK(s13.symbol_count == 3);

  auto s5 = build_scheme(5, SchemeVariant::quarter);
  const auto d = s5.delta;
  CHECK(s5.f == std::vector<FieldElem>{0, d, d, 5 - d, 5 - d});
  CHECK(s5.symbols() == std::vector<unsigned>{1});

  auto s3 = build_scheme(3, SchemeVariant::half_second);
  CHECK(s3.f == std::vector<FieldElem>{0, 0, 1, 1});
  CHECK(s3.phi == std::vector<LinearForm>{LinearForm::parse("y"), LinearForm::parse("-y"), LinearForm::parse("y1"),
                                          LinearForm::parse("-y1")});
  CHECK(s3.symbols() == std::vector<unsigned>{0, 1});

  CHECK_THROWS_AS(build_scheme(7, SchemeVariant::quarter), InvalidArgument);
  CHECK_THROWS_AS(build_scheme(13, SchemeVariant::half_second), InvalidArgument);
}

TEST_CASE("the p = 13 table matches the printed one") {
  auto scheme = build_scheme(13, SchemeVariant::quarter);
  auto table = symbolic_dh(scheme);
  const std::vector<std::vector<std::string>> printed{
      {"2y1", "2y2", "2y3"},
      {"y2-y1", "y2+y1", "y3"},
      {"y3(1-xi)", "y3-y2xi", "y3+y2xi"},
      {"y2", "y3-y1xi", "y3+y1xi"},
      {"y1", "y3-y2", "y3+y2"},
      {"y1(1-xi)", "y3-y1", "y3+y1"},
      {"y2(1-xi)", "y2-y1xi", "y2+y1xi"},
  };
  REQUIRE(table.rows.size() == printed.size());
  for (std::size_t h = 0; h < printed.size(); ++h) {
    CHECK(table.rows[h].h == h);
    CHECK_MESSAGE(sorted(table.rows[h].entries) == normalized(printed[h], UnitGroup::gaussian), "h=" << h);
  }
}

TEST_CASE("the p = 17 table matches the printed one") {
  auto scheme = build_scheme(17, SchemeVariant::quarter);
  auto table = symbolic_dh(scheme);
  const std::vector<std::vector<std::string>> printed{
      {"2y1", "2y2", "2y3", "2y4"},
      {"y1(1-xi)", "y4", "y4-y3", "y4+y3"},
      {"y3", "y3-y2", "y3+y2", "y4(1-xi)"},
      {"y4-y2", "y4+y2", "y4-y3xi", "y4+y3xi"},
      {"y2", "y2-y1", "y2+y1", "y3(1-xi)"},
      {"y2-y1xi", "y2+y1xi", "y4-y2xi", "y4+y2xi"},
      {"y3-y1", "y3+y1", "y3-y2xi", "y3+y2xi"},
      {"y3-y1xi", "y3+y1xi", "y4-y1", "y4+y1"},
      {"y1", "y2(1-xi)", "y4-y1xi", "y4+y1xi"},
  };
  REQUIRE(table.rows.size() == printed.size());
  for (std::size_t h = 0; h < printed.size(); ++h)
    CHECK_MESSAGE(sorted(table.rows[h].entries) == normalized(printed[h], UnitGroup::gaussian), "h=" << h);
}

TEST_CASE("p = 5 quarter table") {
  auto scheme = build_scheme(5, SchemeVariant::quarter);
  auto table = symbolic_dh(scheme);
  REQUIRE(table.rows.size() == 3);
  CHECK(table.rows[0].entries == std::vector<LinearForm>{LinearForm::parse("2y1")});
  for (std::size_t i = 1; i < table.rows.size(); ++i) CHECK(table.rows[i].entries.size() == 1);
}

TEST_CASE("structure of quarter tables") {
  for (auto p : odd_prime_powers(101)) {
    if (p % 4 != 1) continue;
    CAPTURE(p);
    auto scheme = build_scheme(p, SchemeVariant::quarter);
    auto table = symbolic_dh(scheme);
    const auto& fp = scheme.field;
    const std::size_t size = (p - 1) / 4;

    // D_0 = 2 * {y_1, ..., y_(p-1)/4}.
    std::set<unsigned> doubled;
    for (const auto& e : table.row(0).entries) {
      CHECK(classify(e) == FormType::twice);
      doubled.insert(top_symbol(e));
    }
    CHECK(doubled.size() == size);

    std::map<LinearForm, int> mixed_seen;
    for (const auto& row : table.rows) {
      if (row.h == 0) continue;
      CAPTURE(row.h);
      CHECK(row.entries.size() == size);
      CHECK(table.row(fp.neg(row.h)).h == row.h);
      auto c = type_counts(row);
      const int mixed = c[FormType::sum] + c[FormType::xi_sum];
      CHECK(c[FormType::other] == 0);
      CHECK(c[FormType::twice] == 0);
      const bool square = fp.cyclo_index(2, row.h) == 0;
      if (p % 8 == 5) {
        if (square) {
          CHECK(c[FormType::unit] == 1);
          CHECK(c[FormType::one_minus_xi] == 0);
        } else {
          CHECK(c[FormType::one_minus_xi] == 1);
          CHECK(c[FormType::unit] == 0);
        }
        CHECK(mixed == static_cast<int>((p - 5) / 4));
      } else {
        if (square) {
          CHECK(c[FormType::unit] == 1);
          CHECK(c[FormType::one_minus_xi] == 1);
          CHECK(mixed == static_cast<int>((p - 9) / 4));
          unsigned unit_sym = 0, omx_sym = 0;
          for (const auto& e : row.entries) {
            if (classify(e) == FormType::unit) unit_sym = top_symbol(e);
            if (classify(e) == FormType::one_minus_xi) omx_sym = top_symbol(e);
          }
          CHECK((unit_sym == omx_sym) == (p % 3 == 0));
        } else {
          CHECK(mixed == static_cast<int>(size));
        }
      }
      for (const auto& e : row.entries) {
        const auto t = classify(e);
        if (t == FormType::sum || t == FormType::xi_sum) ++mixed_seen[e];
      }
    }
    for (const auto& [form, n] : mixed_seen) CHECK_MESSAGE(n == 1, form.to_string());
  }
}

TEST_CASE("structure of half tables") {
  for (auto p : odd_prime_powers(101)) {
    CAPTURE(p);
    for (auto variant : {SchemeVariant::half_first, SchemeVariant::half_second}) {
      if (variant == SchemeVariant::half_second && p % 4 != 3) continue;
      auto scheme = build_scheme(p, variant);
      auto table = symbolic_dh(scheme);
      const std::size_t size = variant == SchemeVariant::half_first ? (p - 1) / 2 : (p + 1) / 2;
      CHECK(scheme.dh_size() == size);
      std::set<unsigned> doubled;
      for (const auto& e : table.row(0).entries) {
        CHECK(classify(e) == FormType::twice);
        doubled.insert(top_symbol(e));
      }
      CHECK(doubled.size() == size);
      for (const auto& row : table.rows) {
        if (row.h == 0) continue;
        CHECK(row.entries.size() == size);
        for (const auto& e : row.entries) {
          const auto t = classify(e);
          if (variant == SchemeVariant::half_first)
            CHECK((t == FormType::sum || t == FormType::unit));
          else
            CHECK((t == FormType::sum || t == FormType::anchored));
        }
      }
    }
  }
}

TEST_CASE("transversal checks") {
  FiniteField f13(13);
  const std::vector<FieldElem> a{1, 2}, b{1, 3}, c{1, 2, 3};
  CHECK(transversal_check(a, f13, 2, 1));
  CHECK_FALSE(transversal_check(b, f13, 2, 1));
  CHECK_FALSE(transversal_check(c, f13, 2, 1));
  const std::vector<FieldElem> z{0, 1};
  CHECK_FALSE(transversal_check(z, f13, 2, 1));
}

TEST_CASE("evaluated D_h reproduce the positional differences of the lifted block") {
  struct Case {
    std::uint64_t p;
    SchemeVariant variant;
    std::uint64_t q;
  };
  const Case cases[] = {
      {5, SchemeVariant::quarter, 13},     {13, SchemeVariant::quarter, 13},  {13, SchemeVariant::quarter, 37},
      {17, SchemeVariant::quarter, 17},    {17, SchemeVariant::quarter, 41},  {9, SchemeVariant::quarter, 25},
      {25, SchemeVariant::quarter, 29},    {5, SchemeVariant::half_first, 11}, {7, SchemeVariant::half_first, 19},
      {9, SchemeVariant::half_first, 27},  {3, SchemeVariant::half_second, 7}, {7, SchemeVariant::half_second, 31},
      {11, SchemeVariant::half_second, 49},
  };
  std::mt19937_64 rng(2024);
  for (const auto& c : cases) {
    CAPTURE(c.p);
    CAPTURE(c.q);
    auto scheme = build_scheme(c.p, c.variant);
    auto table = symbolic_dh(scheme);
    auto fq = FiniteField::of_order(c.q);
    const auto& fp = scheme.field;
    const FieldElem xi = c.variant == SchemeVariant::quarter ? fq.primitive_fourth_root() : 0;
    std::vector<FieldElem> unit_values{1, fq.neg(1)};
    if (xi) {
      unit_values.push_back(xi);
      unit_values.push_back(fq.neg(xi));
    }
    std::uniform_int_distribution<FieldElem> pick(1, c.q - 1);
    for (int trial = 0; trial < 25; ++trial) {
      std::vector<FieldElem> y(scheme.symbols().size());
      for (auto& v : y) v = pick(rng);
      std::vector<std::vector<FieldElem>> dh;
      try {
        dh = evaluate_dh(table, scheme, fq, y, xi);
      } catch (const InvalidArgument&) {
        continue;  // some entry vanished for this random choice
      }
      const auto block = assemble_block(scheme, fq, y, xi);
      std::map<FieldElem, std::multiset<FieldElem>> t;
      for (std::size_t a = 0; a < block.size(); ++a)
        for (std::size_t b = 0; b < block.size(); ++b)
          if (a != b) t[fp.sub(block[a].first, block[b].first)].insert(fq.sub(block[a].second, block[b].second));
      for (FieldElem h = 0; h < fp.order(); ++h) {
        std::multiset<FieldElem> expected;
        for (auto v : dh[table.row_of[h]])
          for (auto u : unit_values) expected.insert(fq.mul(u, v));
        CHECK(t[h] == expected);
        CHECK(t[h] == t[fp.neg(h)]);
      }
      std::multiset<FieldElem> d0(dh[0].begin(), dh[0].end()), twice;
      for (auto v : y) twice.insert(fq.add(v, v));
      CHECK(d0 == twice);
    }
  }
}

TEST_CASE("evaluate_dh rejects zeros") {
  auto scheme = build_scheme(13, SchemeVariant::quarter);
  auto table = symbolic_dh(scheme);
  FiniteField f13(13);
  const auto xi = f13.primitive_fourth_root();
  const std::vector<FieldElem> zero{1, 0, 2};
  CHECK_THROWS_AS(evaluate_dh(table, scheme, f13, zero, xi), InvalidArgument);
  const std::vector<FieldElem> equal{1, 1, 2};  // y2 - y1 vanishes
  CHECK_THROWS_AS(evaluate_dh(table, scheme, f13, equal, xi), InvalidArgument);
}

}  // TEST_SUITE
