#include "diff_forge/group.hpp"

#include <algorithm>
#include <sstream>

#include "diff_forge/error.hpp"

namespace diff_forge {

AbelianGroup AbelianGroup::cyclic(std::uint64_t n) {
  if (n == 0) throw InvalidArgument("cyclic group order must be positive");
  return AbelianGroup(std::make_shared<Node>(Node{Kind::cyclic, n, nullptr, nullptr, nullptr}));
}

AbelianGroup AbelianGroup::field_additive(const FiniteField& field) {
  return AbelianGroup(std::make_shared<Node>(
      Node{Kind::field_additive, field.order(), std::make_shared<const FiniteField>(field), nullptr, nullptr}));
}

AbelianGroup AbelianGroup::product(const AbelianGroup& left, const AbelianGroup& right) {
  return AbelianGroup(std::make_shared<Node>(Node{Kind::product, left.order() * right.order(), nullptr,
                                                  std::make_shared<const AbelianGroup>(left),
                                                  std::make_shared<const AbelianGroup>(right)}));
}

GroupElem AbelianGroup::add(GroupElem a, GroupElem b) const noexcept {
  switch (node_->kind) {
    case Kind::cyclic: {
      auto s = a.code + b.code;
      return {s >= node_->order ? s - node_->order : s};
    }
    case Kind::field_additive:
      return {node_->field->add(a.code, b.code)};
    case Kind::product: {
      const auto n = node_->right->order();
      auto l = node_->left->add({a.code / n}, {b.code / n});
      auto r = node_->right->add({a.code % n}, {b.code % n});
      return {l.code * n + r.code};
    }
  }
  return {};
}

GroupElem AbelianGroup::neg(GroupElem a) const noexcept {
  switch (node_->kind) {
    case Kind::cyclic:
      return {a.code == 0 ? 0 : node_->order - a.code};
    case Kind::field_additive:
      return {node_->field->neg(a.code)};
    case Kind::product: {
      const auto n = node_->right->order();
      auto l = node_->left->neg({a.code / n});
      auto r = node_->right->neg({a.code % n});
      return {l.code * n + r.code};
    }
  }
  return {};
}

GroupElem AbelianGroup::sub(GroupElem a, GroupElem b) const noexcept {
  switch (node_->kind) {
    case Kind::cyclic:
      return {a.code >= b.code ? a.code - b.code : a.code + node_->order - b.code};
    case Kind::field_additive:
      return {node_->field->sub(a.code, b.code)};
    case Kind::product: {
      const auto n = node_->right->order();
      auto l = node_->left->sub({a.code / n}, {b.code / n});
      auto r = node_->right->sub({a.code % n}, {b.code % n});
      return {l.code * n + r.code};
    }
  }
  return {};
}

std::vector<GroupElem> AbelianGroup::enumerate() const {
  std::vector<GroupElem> out(node_->order);
  for (std::uint64_t i = 0; i < node_->order; ++i) out[i] = {i};
  return out;
}

const AbelianGroup& AbelianGroup::left() const {
  if (node_->kind != Kind::product) throw InvalidArgument("not a product group");
  return *node_->left;
}

const AbelianGroup& AbelianGroup::right() const {
  if (node_->kind != Kind::product) throw InvalidArgument("not a product group");
  return *node_->right;
}

std::pair<GroupElem, GroupElem> AbelianGroup::split(GroupElem x) const {
  const auto n = right().order();
  return {{x.code / n}, {x.code % n}};
}

GroupElem AbelianGroup::pair(GroupElem l, GroupElem r) const { return {l.code * right().order() + r.code}; }

const FiniteField& AbelianGroup::field() const {
  if (node_->kind != Kind::field_additive) throw InvalidArgument("not a field-additive group");
  return *node_->field;
}

std::string AbelianGroup::describe() const {
  switch (node_->kind) {
    case Kind::cyclic:
      return "Z_" + std::to_string(node_->order);
    case Kind::field_additive:
      return "F_" + std::to_string(node_->order);
    case Kind::product:
      return node_->left->describe() + " x " + node_->right->describe();
  }
  return {};
}

std::string AbelianGroup::format(GroupElem x) const {
  switch (node_->kind) {
    case Kind::cyclic:
      return std::to_string(x.code);
    case Kind::field_additive:
      return node_->field->format(x.code);
    case Kind::product: {
      auto [l, r] = split(x);
      return "(" + node_->left->format(l) + "," + node_->right->format(r) + ")";
    }
  }
  return {};
}

bool AbelianGroup::operator==(const AbelianGroup& other) const {
  if (node_ == other.node_) return true;
  if (kind() != other.kind() || order() != other.order()) return false;
  switch (node_->kind) {
    case Kind::cyclic:
      return true;
    case Kind::field_additive:
      return *node_->field == *other.node_->field;
    case Kind::product:
      return *node_->left == *other.node_->left && *node_->right == *other.node_->right;
  }
  return false;
}

Subgroup Subgroup::trivial(const AbelianGroup& g) { return Subgroup(g, Kind::trivial, 1, {}); }

Subgroup Subgroup::left_factor(const AbelianGroup& g) {
  return Subgroup(g, Kind::left_factor, g.left().order(), {});
}

Subgroup Subgroup::from_elements(const AbelianGroup& g, std::vector<GroupElem> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  if (elements.empty() || elements.front() != g.zero())
    throw InvalidArgument("subgroup must contain the identity");
  for (auto x : elements) {
    if (!g.contains(x)) throw InvalidArgument("subgroup element outside the group");
  }
  if (g.order() % elements.size() != 0) throw InvalidArgument("subgroup order does not divide group order");
  for (auto a : elements) {
    for (auto b : elements) {
      if (!std::binary_search(elements.begin(), elements.end(), g.sub(a, b)))
        throw InvalidArgument("element set is not closed under subtraction");
    }
  }
  auto order = elements.size();
  return Subgroup(g, Kind::explicit_elements, order, std::move(elements));
}

bool Subgroup::contains(GroupElem x) const {
  switch (kind_) {
    case Kind::trivial:
      return x.code == 0;
    case Kind::left_factor:
      return group_.split(x).second.code == 0;
    case Kind::explicit_elements:
      return std::binary_search(elements_.begin(), elements_.end(), x);
  }
  return false;
}

std::vector<GroupElem> Subgroup::elements() const {
  switch (kind_) {
    case Kind::trivial:
      return {group_.zero()};
    case Kind::left_factor: {
      std::vector<GroupElem> out;
      out.reserve(order_);
      for (std::uint64_t l = 0; l < order_; ++l) out.push_back(group_.pair({l}, {0}));
      return out;
    }
    case Kind::explicit_elements:
      return elements_;
  }
  return {};
}

}  // namespace diff_forge
