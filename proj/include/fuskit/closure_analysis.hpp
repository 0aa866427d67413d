#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "fuskit/fusion_system.hpp"

namespace fuskit {

struct SubgroupClassification {
  Subgroup subgroup;
  bool fully_normalized = false;
  bool centric = false;
  bool radical = false;
  bool weakly_closed = false;
  bool strongly_closed = false;
  bool normal_in_F = false;
};

bool is_centric(const IsoTable& f, std::size_t q);
/// O_p(Aut_F(Q)) = Inn(Q), with O_p taken in the finite group Aut_F(Q).
bool is_radical(const IsoTable& f, std::size_t q);
bool is_weakly_closed(const IsoTable& f, std::size_t q);
bool is_strongly_closed(const IsoTable& f, std::size_t q);

SubgroupClassification classify(const FusionSystem& f, std::size_t q);

/// Fully normalized, centric and radical subgroups, ascending.
std::vector<std::size_t> fncr_subgroups(const FusionSystem& f);

/// Normality of Q in a saturated F: strongly closed and inside every fully
/// normalized centric radical subgroup. For an unsaturated F this throws
/// NotSaturated when `strict`, otherwise falls back to N_F(Q) = F.
bool is_normal_subgroup(const FusionSystem& f, std::size_t q, bool strict = true);
/// N_F(Q) = F, straight from the definition.
bool is_normal_by_definition(const FusionSystem& f, std::size_t q);

/// The largest normal subgroup. Throws NotSaturated.
Subgroup o_p(const FusionSystem& f);

/// Largest Z <= Z(P) with C_F(Z) = F. Throws NotSaturated, CenterJoinFailure.
Subgroup center_of_fusion(const FusionSystem& f);

enum class SeriesMode { kStrong, kWeak };

/// Greedy central series of Q whose terms are strongly (or weakly) closed;
/// nullopt when none exists. Weak mode also requires Q strongly closed.
/// Throws NotSaturated.
std::optional<std::vector<Subgroup>> strongly_closed_central_series(const FusionSystem& f, std::size_t q,
                                                                    SeriesMode mode);

struct AlperinGenerator {
  std::size_t subgroup = 0;
  std::vector<Images> automorphisms;
};

/// Fully normalized centric radical subgroups with their F-automorphisms.
/// Throws NotSaturated.
std::vector<AlperinGenerator> alperin_generators(const FusionSystem& f);

/// The system generated by the restrictions of the Alperin automorphisms.
FusionSystem alperin_regenerate(const FusionSystem& f);

struct AlperinStep {
  std::size_t subgroup = 0;  // S_i
  Images automorphism;       // phi_i in Aut_F(S_i)
  std::size_t from = 0;      // Q_{i-1}
  std::size_t to = 0;        // Q_i
};

/// phi = (phi_1 ... phi_n)|_Q with each phi_i an automorphism of a fully
/// normalized centric radical subgroup. Throws NotSaturated,
/// MorphismNotInSystem, DecompositionNotFound.
std::vector<AlperinStep> alperin_decompose(const FusionSystem& f, const IsoRef& phi);

}  // namespace fuskit
