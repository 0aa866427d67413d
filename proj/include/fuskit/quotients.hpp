#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fuskit/fusion_system.hpp"
#include "fuskit/subgroup_ops.hpp"

namespace fuskit {

/// Carrier of the quotient P/Q (P the carrier of F) with its lattice.
struct QuotientContext {
  QuotientGroup quotient;
  LatticePtr lattice;
  std::size_t kernel = 0;  // lattice index of Q in F's lattice

  /// Lattice index (in the quotient lattice) of RQ/Q for R in F's lattice.
  std::size_t image_index(const Subgroup& r) const;
  /// Induced iso RQ/Q -> (R phi)Q/Q of an iso R -> R phi of F.
  IsoRef induced(const IsoTable& f, const IsoRef& phi) const;
};

/// Throws NotNormalInP unless Q is normal in the carrier.
QuotientContext quotient_context(const IsoTable& f, std::size_t q);

/// F/Q: induced maps of isos R -> S with Q <= R and Q phi = Q.
FusionSystem factor_system(const FusionSystem& f, std::size_t q);
FusionSystem factor_system(const FusionSystem& f, const QuotientContext& ctx);

/// bar F_Q: induced maps of every iso of F. Throws NotStronglyClosed.
PreFusionSystem bar_system(const FusionSystem& f, std::size_t q);
PreFusionSystem bar_system(const FusionSystem& f, const QuotientContext& ctx);

/// <bar F_Q>, the closure of bar F_Q under composition.
FusionSystem generated_bar(const FusionSystem& f, std::size_t q);
FusionSystem generated_bar(const FusionSystem& f, const QuotientContext& ctx);

struct FusionWitness {
  std::string kind;  // "missing-conjugation", "missing-restriction", "missing-inverse", "missing-composite"
  std::vector<IsoRef> maps;
  std::string description;
};

struct FusionCheck {
  bool is_fusion = true;
  std::optional<FusionWitness> witness;
};

/// Axiom check of a prefusion system with the first failure in canonical order.
FusionCheck prefusion_is_fusion(const IsoTable& pre);

enum class QuotientTarget { kGeneratedBar, kFactor };

struct FusionSystemMorphism {
  FusionSystem source;
  FusionSystem target;
  GroupHom carrier;  // P -> P', not necessarily injective
  Subgroup kernel;
};

/// True iff every iso of `source` maps, through `carrier`, to an iso of `target`.
bool satisfies_functor_condition(const FusionSystem& source, const FusionSystem& target, const GroupHom& carrier);

/// The natural map F -> <bar F_Q> or F -> F/Q. Throws NotStronglyClosed,
/// ImageNotAFusionSystem.
FusionSystemMorphism quotient_morphism(const FusionSystem& f, std::size_t q, QuotientTarget target);

struct ClosureTransferPart {
  std::string name;
  std::vector<std::size_t> upstairs;    // F-lattice indices
  std::vector<std::size_t> downstairs;  // quotient-lattice indices
  bool holds = true;
};

struct ClosureTransferReport {
  std::vector<ClosureTransferPart> parts;
  bool holds() const;
};

/// Parts (i) and (ii): weak closure through the quotient; (iii) and (iv):
/// strong closure, computed only for saturated F. Throws NotStronglyClosed;
/// with `require_saturated` also NotSaturated.
ClosureTransferReport closure_transfer(const FusionSystem& f, std::size_t q, bool require_saturated = true);

/// The image E Q/Q of a subsystem E (on R) in <bar F_Q>, as a system on RQ/Q.
FusionSystem image_in_quotient(const FusionSystem& e, const QuotientContext& ctx);

/// E Q/Q is isomorphic to E/(R cap Q) along the coset-correspondence iso.
bool verify_second_iso(const FusionSystem& f, std::size_t q, const FusionSystem& e);
/// (F/Q)/(R/Q) is isomorphic to F/R along the canonical iso.
bool verify_third_iso(const FusionSystem& f, std::size_t q, std::size_t r);

/// F/Q = N_F(Q)/Q, exposed as an optional check.
bool local_determination_holds(const FusionSystem& f, std::size_t q);

}  // namespace fuskit
