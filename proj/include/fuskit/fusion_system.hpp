#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fuskit/group.hpp"
#include "fuskit/lattice.hpp"

namespace fuskit {

/// An isomorphism stored in a table: images indexed by the carrier group's
/// element ids, kNoElement off the domain. The domain is the table bucket.
using Images = std::vector<ElementId>;

struct Iso {
  std::uint32_t codomain = 0;  // lattice index
  Images images;

  friend auto operator<=>(const Iso&, const Iso&) = default;
  friend bool operator==(const Iso&, const Iso&) = default;
};

/// An isomorphism with both ends spelled out as lattice indices.
struct IsoRef {
  std::uint32_t domain = 0;
  std::uint32_t codomain = 0;
  Images images;
};

/// Iso sets between pairs of subgroups of a carrier Q <= P, where P is the
/// group whose lattice is shared. Buckets are indexed by domain and sorted by
/// (codomain, images).
class IsoTable {
 public:
  const LatticePtr& lattice() const { return lattice_; }
  const GroupPtr& group() const { return lattice_->group(); }
  std::size_t carrier_index() const { return carrier_; }
  const Subgroup& carrier() const { return (*lattice_)[carrier_]; }
  std::size_t p() const { return p_; }
  const std::string& provenance() const { return provenance_; }

  /// Lattice indices of the subgroups of the carrier, ascending.
  const std::vector<std::size_t>& objects() const { return objects_; }
  bool is_object(std::size_t i) const { return in_carrier_[i]; }

  std::span<const Iso> isos_from(std::size_t i) const { return buckets_[i]; }
  std::span<const Iso> isos(std::size_t i, std::size_t j) const;
  bool contains(std::size_t i, std::size_t j, const Images& m) const;
  std::size_t iso_count() const;
  /// Lattice indices F-isomorphic to i (including i), ascending.
  std::vector<std::size_t> iso_class(std::size_t i) const;

  GroupHom to_hom(std::size_t domain, const Iso& iso) const;
  /// Locates an injective hom between subgroups of the carrier group as an
  /// (iso onto image) reference.
  IsoRef locate(const GroupHom& h) const;

  /// Every stored iso as (domain, codomain, images), in canonical order.
  std::vector<IsoRef> all_isos() const;

  /// Same carrier group, same carrier and identical tables.
  bool same_table(const IsoTable& other) const;
  bool same_carrier_group(const IsoTable& other) const;

 protected:
  IsoTable(LatticePtr lattice, std::size_t carrier, std::size_t p, std::string provenance,
           std::vector<std::vector<Iso>> buckets);

  LatticePtr lattice_;
  std::size_t carrier_ = 0;
  std::size_t p_ = 0;
  std::string provenance_;
  std::vector<std::size_t> objects_;
  std::vector<bool> in_carrier_;
  std::vector<std::vector<Iso>> buckets_;
};

class FusionSystem;
class PreFusionSystem;

/// Table data used while constructing a system.
struct TableDraft {
  LatticePtr lattice;
  std::size_t carrier = 0;
  std::size_t p = 0;
  std::string provenance;
  std::vector<std::vector<Iso>> buckets;  // need not be sorted or deduplicated
};

/// A prefusion system: iso sets with no closure requirement. Composition is
/// partial and never completed implicitly.
class PreFusionSystem : public IsoTable {
 public:
  explicit PreFusionSystem(TableDraft draft);
};

/// A fusion system on a p-group: contains all carrier conjugations and is
/// closed under composition, inverses and restriction.
class FusionSystem : public IsoTable {
 public:
  /// Trusts that the draft already satisfies the closure invariants.
  static FusionSystem from_closed(TableDraft draft);

  /// Ambient finite group when built by fusion_from_group.
  const GroupPtr& source_group() const { return source_group_; }
  void set_source_group(GroupPtr g) { source_group_ = std::move(g); }

  /// Cached saturation verdict.
  bool saturated() const;

  PreFusionSystem as_prefusion() const;

 private:
  explicit FusionSystem(TableDraft draft);

  GroupPtr source_group_;
  struct Cache;
  std::shared_ptr<Cache> cache_;
};

/// Conjugation isos theta_g (g in the carrier) on every subgroup of the carrier.
std::vector<std::vector<Iso>> inner_buckets(const LatticePtr& lattice, std::size_t carrier);

/// Closes a set of isos under inverses, restriction to subgroups and
/// composition, starting from the carrier's inner isos and `seeds`.
FusionSystem close_fusion(const LatticePtr& lattice, std::size_t carrier, std::size_t p,
                          std::string provenance, const std::vector<IsoRef>& seeds);

/// F_P(G) for P = sylow(G, p), realised as a standalone p-group.
FusionSystem fusion_from_group(const GroupPtr& g, std::size_t p);
/// F_P(P) on an existing lattice (on the given carrier).
FusionSystem inner_fusion(const LatticePtr& lattice, std::size_t carrier, std::size_t p);

/// The system generated by F_P(P) and the seed homs (each replaced by its iso
/// onto its image).
FusionSystem fusion_generated(const LatticePtr& lattice, std::size_t p, const std::vector<GroupHom>& seeds);
FusionSystem fusion_generated(const GroupPtr& p_group, std::size_t p, const std::vector<GroupHom>& seeds);

/// Entrywise intersection. Throws DifferentCarrier.
FusionSystem fusion_intersect(const FusionSystem& a, const FusionSystem& b);

/// Isos of F between subgroups of S (S <= carrier), as a system on S.
FusionSystem restrict_system(const FusionSystem& f, std::size_t s);

/// Hom_F(Q, R): isos onto subgroups of R followed by inclusion.
std::vector<GroupHom> hom_set(const IsoTable& f, std::size_t q, std::size_t r);
std::vector<GroupHom> hom_set(const IsoTable& f, const Subgroup& q, const Subgroup& r);

/// Aut_F(Q) as image arrays.
std::vector<Images> aut_maps(const IsoTable& f, std::size_t q);
/// Aut_P(Q) for P the carrier: conjugations by N_P(Q), deduplicated and sorted.
std::vector<Images> inner_aut_maps(const IsoTable& f, std::size_t q);

/// N_P(Q) and C_P(Q) with P the carrier.
Subgroup carrier_normalizer(const IsoTable& f, std::size_t q);
Subgroup carrier_centralizer(const IsoTable& f, std::size_t q);

Subgroup n_phi(const FusionSystem& f, const GroupHom& phi);
Subgroup n_phi(const IsoTable& f, const IsoRef& phi);
bool is_fully_normalized(const IsoTable& f, std::size_t q);
bool is_saturated(const FusionSystem& f);
/// Saturation with the first violated condition described in `why`.
bool check_saturation(const FusionSystem& f, std::string* why);

/// Moves F along an iso theta whose domain is the carrier. The target lattice
/// is built for theta's codomain parent unless supplied.
FusionSystem transport(const FusionSystem& f, const GroupHom& theta, LatticePtr target = nullptr);

/// Throws DifferentCarrier when the carriers differ.
bool fusion_equal(const IsoTable& a, const IsoTable& b);

/// Finite permutation-group model of Aut_F(Q) acting on the positions of Q's
/// sorted element list; maps[k] is the automorphism behind group element k.
struct AutGroup {
  GroupPtr group;
  std::vector<Images> maps;
  std::vector<ElementId> members;  // sorted elements of Q

  Subgroup subgroup_of(const std::vector<Images>& subset) const;
  std::vector<Images> maps_of(const Subgroup& s) const;
};
AutGroup automorphism_group(const IsoTable& f, std::size_t q);
AutGroup automorphism_group(const Subgroup& q, const std::vector<Images>& maps);

}  // namespace fuskit
