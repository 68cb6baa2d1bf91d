#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

namespace convolab {

using Element = std::size_t;
using CayleyTable = std::vector<std::vector<Element>>;

enum class GroupKind { Cyclic, ElementaryAbelian2, Dihedral, Quaternion8, Symmetric, Product, Table };

/// Description of a group to construct; mirrors the group JSON schema.
struct GroupSpec {
  GroupKind kind = GroupKind::Cyclic;
  std::size_t n = 1;  // cyclic, dihedral, symmetric
  std::size_t k = 1;  // elementary_abelian_2
  std::vector<GroupSpec> factors;
  CayleyTable table;

  static GroupSpec cyclic(std::size_t n);
  static GroupSpec elementary_abelian_2(std::size_t k);
  static GroupSpec dihedral(std::size_t n);
  static GroupSpec quaternion8();
  static GroupSpec symmetric(std::size_t n);
  static GroupSpec product(std::vector<GroupSpec> factors);
  static GroupSpec raw(CayleyTable table);

  /// Order implied by the parameters, computed without building the table.
  std::size_t expected_order() const;
  std::string name() const;

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

/// A finite group given by a validated Cayley table over dense indices 0..n-1.
/// Built-in constructors always place the identity at index 0.
class FiniteGroup {
 public:
  std::size_t order() const { return cayley_.size(); }
  Element mul(Element a, Element b) const { return cayley_[a][b]; }
  Element inverse(Element a) const { return inverse_[a]; }
  Element identity() const { return identity_; }
  const CayleyTable& cayley() const { return cayley_; }
  const std::string& label() const { return label_; }
  const std::string& element_label(Element a) const { return element_labels_.at(a); }
  const GroupSpec& spec() const { return spec_; }

  bool is_abelian() const { return abelian_; }
  /// Every element squares to the identity.
  bool is_involutive() const { return involutive_; }

  /// Throws Error(OutOfRange) if a is not an element index.
  void check_element(Element a) const;

  friend std::shared_ptr<const FiniteGroup> make_group(const GroupSpec& spec);

 private:
  FiniteGroup(GroupSpec spec, CayleyTable table, std::vector<std::string> labels);

  GroupSpec spec_;
  CayleyTable cayley_;
  std::vector<Element> inverse_;
  Element identity_ = 0;
  std::string label_;
  std::vector<std::string> element_labels_;
  bool abelian_ = true;
  bool involutive_ = true;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// Builds and validates a group. Raw tables are checked for closure, the
/// Latin-square property, an identity and associativity before acceptance.
/// Throws Error(TableInvalid) or Error(SpecOutOfRange).
GroupPtr make_group(const GroupSpec& spec);

/// Validates a raw table; throws Error(TableInvalid) naming the failed axiom.
void validate_table(const CayleyTable& table);

/// Same group (pointer identity or identical tables).
bool same_group(const FiniteGroup& a, const FiniteGroup& b);

/// Sorted, duplicate-free set of elements of one group.
class ElementSet {
 public:
  ElementSet(GroupPtr group, std::vector<Element> elements);

  const GroupPtr& group() const { return group_; }
  const std::vector<Element>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool contains(Element a) const;

  friend bool operator==(const ElementSet& a, const ElementSet& b) {
    return a.elements_ == b.elements_ && same_group(*a.group_, *b.group_);
  }

 private:
  GroupPtr group_;
  std::vector<Element> elements_;
};

/// An ElementSet known to contain the identity and be closed under products
/// and inverses.
class Subgroup {
 public:
  /// Throws Error(SupportNotClosed) if the set is not a subgroup.
  explicit Subgroup(ElementSet set);

  const ElementSet& set() const { return set_; }
  std::size_t size() const { return set_.size(); }

  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.set_ == b.set_; }

 private:
  ElementSet set_;
};

bool is_subgroup(const ElementSet& set);

/// Smallest k >= 1 with g^k = e.
std::size_t element_order(const FiniteGroup& group, Element g);

/// AB = {xy : x in A, y in B}. Throws Error(GroupMismatch).
ElementSet set_product(const ElementSet& a, const ElementSet& b);

/// All subgroups, sorted by size and then lexicographically.
/// Throws Error(SpecOutOfRange) above the subgroup-enumeration cap.
std::vector<Subgroup> enumerate_subgroups(const GroupPtr& group);

/// Subgroup generated by a set of elements.
ElementSet generated_subgroup(const GroupPtr& group, const std::vector<Element>& generators);

/// Named groups used by batch scenarios: cyclic, elementary abelian, dihedral,
/// quaternion, symmetric and a few direct products, all of order <= max_order.
std::vector<GroupSpec> builtin_catalog(std::size_t max_order);

}  // namespace convolab
