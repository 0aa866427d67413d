#pragma once

#include <cstddef>
#include <vector>

#include "fuskit/fusion_system.hpp"

namespace fuskit {

/// F_Q(Q) on the lattice of F's carrier group.
FusionSystem inner_system(const IsoTable& f, std::size_t q);

/// N_P^K(Q): elements of N_P(Q) inducing an automorphism of Q that lies in K.
Subgroup k_normalizer(const IsoTable& f, std::size_t q, const std::vector<Images>& k);

/// N_F^K(Q). K must be a subgroup of Aut_F(Q) (NotASubgroupOfAut otherwise).
FusionSystem k_normalizer_system(const FusionSystem& f, std::size_t q, const std::vector<Images>& k);
/// N_F(Q), i.e. K = Aut_F(Q).
FusionSystem normalizer_system(const FusionSystem& f, std::size_t q);
/// C_F(Q), i.e. K = 1.
FusionSystem centralizer_system(const FusionSystem& f, std::size_t q);

/// E must be a subsystem of F on a strongly F-closed subgroup
/// (CarrierNotStronglyClosed otherwise).
bool is_invariant(const FusionSystem& f, const FusionSystem& e);
bool is_frattini(const FusionSystem& f, const FusionSystem& e);
/// Every alpha conjugates E into itself: alpha^-1 phi alpha is in E.
bool aut_F_acts_on(const FusionSystem& e, const std::vector<Images>& alphas);
bool is_normal_subsystem(const FusionSystem& f, const FusionSystem& e);

/// Aut(F): automorphisms alpha of the carrier with transport(F, alpha) = F.
std::vector<GroupHom> fusion_automorphisms(const FusionSystem& f);
/// E normal in F and stable under every alpha in Aut(F). Throws NotNormal.
bool is_characteristic(const FusionSystem& f, const FusionSystem& e);

}  // namespace fuskit
