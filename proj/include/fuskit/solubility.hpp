#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "fuskit/fusion_system.hpp"

namespace fuskit {

struct SolubilityReport {
  std::vector<Subgroup> tower;  // 1 = T_0 < T_1 < ... (preimages of O_p of the successive quotients)
  bool p_soluble = false;
  std::optional<std::size_t> p_length;
  bool constrained = false;
};

/// T_{i+1} = preimage of O_p(F/T_i) until the tower stalls. Throws NotSaturated.
SolubilityReport o_p_tower(const FusionSystem& f);

/// C_P(O_p(F)) <= O_p(F). Throws NotSaturated.
bool is_constrained(const FusionSystem& f);

/// O_p'(G) = 1, C_G(O_p(G)) <= O_p(G), and F_P(G) matches F along some
/// isomorphism of Sylow subgroups. Throws SylowMismatch.
bool is_model(const GroupPtr& g, const FusionSystem& f);

/// (C_p x C_p) : SL_2(p) as affine maps v -> vM + t on the p^2 points of F_p^2,
/// point index x + p*y.
GroupPtr qd_group(std::size_t p);

/// No subquotient H/N is isomorphic to Qd(p).
bool is_qdp_free_group(const GroupPtr& g, std::size_t p);

/// F equals the system generated by N_F(J(P)) and C_F(Omega_1(Z(P))).
/// Throws NotSaturated.
bool thompson_factorization_holds(const FusionSystem& f);

/// Aut_F(O_p(F)) is p-soluble as a finite group.
bool aut_of_op_is_p_soluble(const FusionSystem& f);

}  // namespace fuskit
