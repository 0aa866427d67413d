#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "fuskit/group.hpp"

namespace fuskit {

/// Extends generator images multiplicatively. `gen_images` pairs ids of the
/// domain's parent with ids of the codomain's parent.
/// Throws DoesNotGenerate, NotAHomomorphism, ImageEscapesCodomain, NotInjective.
GroupHom hom_build(const Subgroup& domain, const Subgroup& codomain,
                   const std::vector<std::pair<ElementId, ElementId>>& gen_images);

/// theta_g : x -> g^-1 x g from Q into R. Throws ConjugateEscapes.
GroupHom conjugation_hom(ElementId g, const Subgroup& q, const Subgroup& r);

/// Same as conjugation_hom but lands exactly on Q^g.
GroupHom conjugation_iso(ElementId g, const Subgroup& q);

inline constexpr std::size_t kIsomorphismCap = 512;

/// Visits isomorphisms A -> B in a deterministic order until `visit` returns
/// false. Throws OrderCapExceeded above `cap`.
void for_each_isomorphism(const Subgroup& a, const Subgroup& b,
                          const std::function<bool(const GroupHom&)>& visit,
                          std::size_t cap = kIsomorphismCap);

std::optional<GroupHom> isomorphism_search(const Subgroup& a, const Subgroup& b,
                                           std::size_t cap = kIsomorphismCap);
std::optional<GroupHom> isomorphism_search(const GroupPtr& g, const GroupPtr& h,
                                           std::size_t cap = kIsomorphismCap);

/// Every automorphism of A.
std::vector<GroupHom> automorphisms(const Subgroup& a, std::size_t cap = kIsomorphismCap);

}  // namespace fuskit
