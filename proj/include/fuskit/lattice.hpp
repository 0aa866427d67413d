#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "fuskit/group.hpp"

namespace fuskit {

class Lattice;
using LatticePtr = std::shared_ptr<const Lattice>;

/// All subgroups of a group, in canonical order (by order, then member list).
/// Index 0 is the trivial subgroup and the last index is the whole group.
/// Normalizers, centralizers and covering relations are filled on first use.
class Lattice {
 public:
  static LatticePtr build(GroupPtr group, std::size_t order_cap = default_order_cap());

  const GroupPtr& group() const { return group_; }
  std::size_t size() const { return subs_.size(); }
  const Subgroup& operator[](std::size_t i) const { return subs_[i]; }
  const std::vector<Subgroup>& subgroups() const { return subs_; }
  std::size_t whole_index() const { return subs_.size() - 1; }

  std::optional<std::size_t> find(const Bitset& members) const;
  /// Throws NotASubgroup when `members` is not in the lattice.
  std::size_t index_of(const Bitset& members) const;
  std::size_t index_of(const Subgroup& s) const { return index_of(s.members()); }

  const std::vector<ElementId>& generators(std::size_t i) const { return gens_[i]; }

  /// Indices of the maximal proper subgroups of subgroup i.
  const std::vector<std::size_t>& maximal_subgroups(std::size_t i) const;
  /// N_G(H) and C_G(H) in the lattice's group.
  const Bitset& normalizer(std::size_t i) const;
  const Bitset& centralizer(std::size_t i) const;
  /// Indices j with subgroup j <= subgroup i, ascending.
  std::vector<std::size_t> below(std::size_t i) const;
  /// Indices j with subgroup j >= subgroup i, ascending.
  std::vector<std::size_t> above(std::size_t i) const;

  Lattice(const Lattice&) = delete;
  Lattice& operator=(const Lattice&) = delete;

 private:
  Lattice() = default;
  void fill_local() const;

  GroupPtr group_;
  std::vector<Subgroup> subs_;
  std::vector<std::vector<ElementId>> gens_;
  std::unordered_map<Bitset, std::size_t, BitsetHash> index_;

  mutable std::once_flag local_once_;
  mutable std::vector<std::vector<std::size_t>> maximal_;
  mutable std::vector<Bitset> normalizer_;
  mutable std::vector<Bitset> centralizer_;
};

/// Every subgroup of H (as subgroups of H's parent), canonically ordered,
/// found by layered cyclic extension.
std::vector<Subgroup> enumerate_subgroups(const Subgroup& h, std::size_t order_cap = default_order_cap());

/// All subgroups of G.
std::vector<Subgroup> subgroups(const GroupPtr& g, std::size_t order_cap = default_order_cap());

/// A short generating set, picked greedily in ascending element order.
std::vector<ElementId> generators_of(const Subgroup& h);

}  // namespace fuskit
