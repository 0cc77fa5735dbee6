#include "diff_forge/design.hpp"

#include <algorithm>

#include "diff_forge/error.hpp"

namespace diff_forge {

std::string to_string(DesignViolation::Kind kind) {
  switch (kind) {
    case DesignViolation::Kind::block_size:
      return "block-size";
    case DesignViolation::Kind::point_range:
      return "point-range";
    case DesignViolation::Kind::repeated_point:
      return "repeated-point";
    case DesignViolation::Kind::pair_coverage:
      return "pair-coverage";
    case DesignViolation::Kind::block_count:
      return "block-count";
  }
  return "unknown";
}

namespace {

// Index of the unordered pair {a, b}, a < b, in a packed upper triangle.
inline std::uint64_t pair_index(std::uint64_t v, std::uint64_t a, std::uint64_t b) {
  return a * v - a * (a + 1) / 2 + (b - a - 1);
}

}  // namespace

DesignReport verify_design(const Design& design) {
  DesignReport report;
  const std::uint64_t v = design.v;
  for (std::size_t i = 0; i < design.blocks.size(); ++i) {
    const auto& block = design.blocks[i];
    if (block.size() != design.k) {
      report.first_violation = DesignViolation{DesignViolation::Kind::block_size, i, 0, 0, block.size(), design.k};
      return report;
    }
    for (auto x : block) {
      if (x >= v) {
        report.first_violation = DesignViolation{DesignViolation::Kind::point_range, i, x, 0, x, v};
        return report;
      }
    }
    auto sorted = block;
    std::sort(sorted.begin(), sorted.end());
    if (auto it = std::adjacent_find(sorted.begin(), sorted.end()); it != sorted.end()) {
      report.first_violation = DesignViolation{DesignViolation::Kind::repeated_point, i, *it, *it, 2, 1};
      return report;
    }
  }

  if (v >= 2) {
    std::vector<std::uint32_t> cover(v * (v - 1) / 2, 0);
    for (const auto& block : design.blocks) {
      for (std::size_t a = 0; a < block.size(); ++a) {
        for (std::size_t b = a + 1; b < block.size(); ++b) {
          auto x = std::min(block[a], block[b]);
          auto y = std::max(block[a], block[b]);
          ++cover[pair_index(v, x, y)];
        }
      }
    }
    for (std::uint64_t a = 0; a + 1 < v; ++a) {
      for (std::uint64_t b = a + 1; b < v; ++b) {
        auto c = cover[pair_index(v, a, b)];
        if (c != design.lambda) {
          report.first_violation = DesignViolation{DesignViolation::Kind::pair_coverage, 0, static_cast<Point>(a),
                                                   static_cast<Point>(b), c, design.lambda};
          return report;
        }
      }
    }
  }

  // Implied by exact pair coverage when k >= 2; reported for k < 2.
  const std::uint64_t kk = std::uint64_t{design.k} * (design.k - 1);
  if (kk > 0) {
    const std::uint64_t expected = design.lambda * v * (v - 1) / kk;
    if (design.blocks.size() != expected) {
      report.first_violation =
          DesignViolation{DesignViolation::Kind::block_count, 0, 0, 0, design.blocks.size(), expected};
      return report;
    }
  }
  report.ok = true;
  return report;
}

Design trivial_design(std::uint32_t n, std::uint64_t lambda) {
  Design d{n, n, lambda, {}};
  std::vector<Point> all(n);
  for (std::uint32_t i = 0; i < n; ++i) all[i] = i;
  d.blocks.assign(lambda, all);
  return d;
}

Design affine_plane(const FiniteField& field) {
  const auto q = field.order();
  if (q * q > UINT32_MAX) throw InvalidArgument("affine plane too large");
  Design d{static_cast<std::uint32_t>(q * q), static_cast<unsigned>(q), 1, {}};
  d.blocks.reserve(q * q + q);
  auto point = [q](FieldElem x, FieldElem y) { return static_cast<Point>(x * q + y); };
  for (FieldElem slope = 0; slope < q; ++slope) {
    for (FieldElem c = 0; c < q; ++c) {
      std::vector<Point> line;
      line.reserve(q);
      for (FieldElem x = 0; x < q; ++x) line.push_back(point(x, field.add(field.mul(slope, x), c)));
      d.blocks.push_back(std::move(line));
    }
  }
  for (FieldElem c = 0; c < q; ++c) {
    std::vector<Point> line;
    line.reserve(q);
    for (FieldElem y = 0; y < q; ++y) line.push_back(point(c, y));
    d.blocks.push_back(std::move(line));
  }
  return d;
}

Design compose_design(const RelativeDifferenceFamily& df, const Design& ingredient, CompositionVariant variant) {
  const auto& g = df.group();
  const auto n = df.subgroup().order();
  const bool with_infinity = variant == CompositionVariant::on_cosets_plus_infinity;
  const std::uint64_t needed_v = with_infinity ? n + 1 : n;
  if (ingredient.v != needed_v)
    throw InvalidArgument("ingredient has " + std::to_string(ingredient.v) + " points, composition needs " +
                          std::to_string(needed_v));
  if (ingredient.k != df.k()) throw InvalidArgument("ingredient block size differs from the family's k");
  if (ingredient.lambda != df.lambda()) throw InvalidArgument("ingredient lambda differs from the family's lambda");
  const std::uint64_t total = g.order() + (with_infinity ? 1 : 0);
  if (total > UINT32_MAX) throw InvalidArgument("design too large");

  Design out{static_cast<std::uint32_t>(total), df.k(), df.lambda(), {}};
  for (const auto& block : develop_df(df)) {
    std::vector<Point> pts;
    pts.reserve(block.size());
    for (auto x : block) pts.push_back(static_cast<Point>(x.code));
    out.blocks.push_back(std::move(pts));
  }

  const auto members = df.subgroup().elements();
  const auto infinity = static_cast<Point>(g.order());
  std::vector<bool> covered(g.order(), false);
  for (std::uint64_t r = 0; r < g.order(); ++r) {
    if (covered[r]) continue;
    std::vector<Point> coset_points;
    coset_points.reserve(needed_v);
    for (auto m : members) {
      auto x = g.add({r}, m);
      covered[x.code] = true;
      coset_points.push_back(static_cast<Point>(x.code));
    }
    if (with_infinity) coset_points.push_back(infinity);
    for (const auto& block : ingredient.blocks) {
      std::vector<Point> pts;
      pts.reserve(block.size());
      for (auto i : block) {
        if (i >= coset_points.size()) throw InvalidArgument("ingredient point out of range");
        pts.push_back(coset_points[i]);
      }
      out.blocks.push_back(std::move(pts));
    }
  }
  return out;
}

}  // namespace diff_forge
