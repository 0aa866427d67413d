#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fuskit/bitset.hpp"

namespace fuskit {

using Point = std::uint32_t;
using ElementId = std::uint32_t;
inline constexpr ElementId kNoElement = ~ElementId{0};

/// Permutation of {0..degree-1} in one-line notation. Products compose left
/// to right: (a * b)[i] == b[a[i]], so x^g = g^-1 x g is the right action.
class Perm {
 public:
  Perm() = default;
  explicit Perm(std::vector<Point> images);

  static Perm identity(std::size_t degree);
  /// Cycles given as point lists, e.g. {{0, 1, 2, 3}, {4, 5}}.
  static Perm from_cycles(std::size_t degree, const std::vector<std::vector<Point>>& cycles);

  std::size_t degree() const { return images_.size(); }
  Point operator[](std::size_t i) const { return images_[i]; }
  const std::vector<Point>& images() const { return images_; }
  bool is_identity() const;

  Perm inverse() const;
  friend Perm operator*(const Perm& a, const Perm& b);

  std::string to_cycle_string() const;

  friend auto operator<=>(const Perm&, const Perm&) = default;
  friend bool operator==(const Perm&, const Perm&) = default;

 private:
  std::vector<Point> images_;
};

class Group;
class Subgroup;
using GroupPtr = std::shared_ptr<const Group>;

/// Order cap for enumeration; FUSKIT_ORDER_CAP overrides the default 20000.
std::size_t default_order_cap();

/// A finite permutation group with every element enumerated. Elements are
/// sorted lexicographically by image array, so the identity is always id 0
/// and ids are reproducible for a given generating set's closure.
class Group {
 public:
  static GroupPtr from_generators(std::size_t degree, std::vector<Perm> gens, std::string name,
                                  std::size_t order_cap = default_order_cap());

  std::size_t order() const { return elements_.size(); }
  std::size_t degree() const { return degree_; }
  const std::string& name() const { return name_; }
  const std::vector<Perm>& generators() const { return generators_; }

  const Perm& element(ElementId id) const { return elements_[id]; }
  const std::vector<Perm>& elements() const { return elements_; }
  std::optional<ElementId> find(const Perm& perm) const;
  ElementId id_of(const Perm& perm) const;

  ElementId mul(ElementId a, ElementId b) const;
  ElementId inv(ElementId a) const { return inverse_[a]; }
  /// x^g = g^-1 x g.
  ElementId conj(ElementId x, ElementId g) const { return mul(inverse_[g], mul(x, g)); }
  /// [a, b] = a^-1 b^-1 a b.
  ElementId commutator(ElementId a, ElementId b) const {
    return mul(mul(inverse_[a], inverse_[b]), mul(a, b));
  }
  std::size_t element_order(ElementId a) const { return element_order_[a]; }
  bool is_abelian() const;

  /// Structural identity: same degree and the same element list.
  bool same_as(const Group& other) const;

  /// Smallest subgroup containing the given elements.
  Bitset closure(std::span<const ElementId> gens) const;

 private:
  Group() = default;

  std::size_t degree_ = 0;
  std::string name_;
  std::vector<Perm> generators_;
  std::vector<Perm> elements_;
  std::vector<ElementId> inverse_;
  std::vector<std::uint32_t> element_order_;
  std::vector<ElementId> mul_table_;  // empty when order exceeds the table cap
};

/// Subset of a parent group's elements that is closed under the group law.
class Subgroup {
 public:
  Subgroup() = default;
  /// Unchecked: `members` must already be a subgroup.
  Subgroup(GroupPtr parent, Bitset members)
      : parent_(std::move(parent)), members_(std::move(members)) {}

  /// Validates closure; throws NotASubgroup.
  static Subgroup checked(GroupPtr parent, Bitset members);
  static Subgroup whole(GroupPtr parent);
  static Subgroup trivial(GroupPtr parent);
  static Subgroup generated(GroupPtr parent, std::span<const ElementId> gens);

  const GroupPtr& parent() const { return parent_; }
  const Group& group() const { return *parent_; }
  const Bitset& members() const { return members_; }
  std::size_t order() const { return members_.count(); }
  bool contains(ElementId x) const { return members_.test(x); }
  /// other <= *this.
  bool contains(const Subgroup& other) const { return other.members_.is_subset_of(members_); }
  bool is_trivial() const { return order() == 1; }
  bool is_whole() const { return order() == parent_->order(); }
  std::vector<ElementId> elements() const { return members_.indices(); }

  bool same_parent(const Subgroup& other) const;

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.members_ == b.members_ && a.same_parent(b);
  }
  /// Canonical order: by order, then lexicographically by member list.
  friend bool operator<(const Subgroup& a, const Subgroup& b) {
    auto oa = a.order(), ob = b.order();
    if (oa != ob) return oa < ob;
    return a.members_ < b.members_;
  }

 private:
  GroupPtr parent_;
  Bitset members_;
};

struct SubgroupHash {
  std::size_t operator()(const Subgroup& s) const { return s.members().hash(); }
};

/// Injective homomorphism between subgroups (possibly of different parents).
/// `images` is indexed by the domain parent's element ids and holds
/// kNoElement off the domain.
class GroupHom {
 public:
  GroupHom() = default;
  GroupHom(Subgroup domain, Subgroup codomain, std::vector<ElementId> images)
      : domain_(std::move(domain)), codomain_(std::move(codomain)), images_(std::move(images)) {}

  static GroupHom identity(const Subgroup& s);
  static GroupHom inclusion(const Subgroup& from, const Subgroup& into);

  const Subgroup& domain() const { return domain_; }
  const Subgroup& codomain() const { return codomain_; }
  const std::vector<ElementId>& images() const { return images_; }
  ElementId operator()(ElementId x) const { return images_[x]; }

  Subgroup image() const;
  Subgroup image_of(const Subgroup& sub) const;
  GroupHom restrict_to(const Subgroup& sub) const;
  GroupHom with_codomain(Subgroup codomain) const;
  /// Inverse of the isomorphism onto the image.
  GroupHom inverse() const;
  bool is_identity() const;

  /// `first` then `second` (left-to-right composition).
  friend GroupHom compose(const GroupHom& first, const GroupHom& second);

  friend bool operator==(const GroupHom& a, const GroupHom& b) {
    return a.domain_ == b.domain_ && a.codomain_.same_parent(b.codomain_) && a.images_ == b.images_;
  }

 private:
  Subgroup domain_;
  Subgroup codomain_;
  std::vector<ElementId> images_;
};

}  // namespace fuskit
