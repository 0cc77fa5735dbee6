#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "diff_forge/finite_field.hpp"

namespace diff_forge {

/// Canonical encoding of a group element. For Z_n it is the residue, for the
/// additive group of F_q the field code, and for a product L x R it is
/// l * |R| + r. Enumeration order of a group is increasing code order.
struct GroupElem {
  std::uint64_t code = 0;
  friend auto operator<=>(const GroupElem&, const GroupElem&) = default;
};

/// Finite abelian group: Z_n, (F_q, +), or a direct product of two groups.
class AbelianGroup {
 public:
  enum class Kind { cyclic, field_additive, product };

  static AbelianGroup cyclic(std::uint64_t n);
  static AbelianGroup field_additive(const FiniteField& field);
  static AbelianGroup product(const AbelianGroup& left, const AbelianGroup& right);

  Kind kind() const noexcept { return node_->kind; }
  std::uint64_t order() const noexcept { return node_->order; }
  bool contains(GroupElem x) const noexcept { return x.code < node_->order; }

  GroupElem zero() const noexcept { return {0}; }
  GroupElem add(GroupElem a, GroupElem b) const noexcept;
  GroupElem neg(GroupElem a) const noexcept;
  GroupElem sub(GroupElem a, GroupElem b) const noexcept;

  /// Every element once, in canonical order.
  std::vector<GroupElem> enumerate() const;

  // Product accessors; only valid when kind() == product.
  const AbelianGroup& left() const;
  const AbelianGroup& right() const;
  std::pair<GroupElem, GroupElem> split(GroupElem x) const;
  GroupElem pair(GroupElem l, GroupElem r) const;

  // Field accessor; only valid when kind() == field_additive.
  const FiniteField& field() const;

  std::string describe() const;
  std::string format(GroupElem x) const;

  bool operator==(const AbelianGroup& other) const;

 private:
  struct Node {
    Kind kind;
    std::uint64_t order;
    std::shared_ptr<const FiniteField> field;
    std::shared_ptr<const AbelianGroup> left;
    std::shared_ptr<const AbelianGroup> right;
  };
  explicit AbelianGroup(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

/// Subgroup N of a group G, represented by a descriptor with membership
/// testing rather than by materialising its elements.
class Subgroup {
 public:
  enum class Kind { trivial, left_factor, explicit_elements };

  /// {0}.
  static Subgroup trivial(const AbelianGroup& g);
  /// L x {0} inside a product L x R.
  static Subgroup left_factor(const AbelianGroup& g);
  /// Arbitrary subgroup given by its elements; closure is checked.
  static Subgroup from_elements(const AbelianGroup& g, std::vector<GroupElem> elements);

  Kind kind() const noexcept { return kind_; }
  std::uint64_t order() const noexcept { return order_; }
  bool contains(GroupElem x) const;
  /// Elements of N in canonical order of G.
  std::vector<GroupElem> elements() const;

  const AbelianGroup& group() const noexcept { return group_; }

 private:
  Subgroup(AbelianGroup g, Kind kind, std::uint64_t order, std::vector<GroupElem> elements)
      : group_(std::move(g)), kind_(kind), order_(order), elements_(std::move(elements)) {}

  AbelianGroup group_;
  Kind kind_;
  std::uint64_t order_;
  std::vector<GroupElem> elements_;  // sorted; explicit_elements only
};

}  // namespace diff_forge
