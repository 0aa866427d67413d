#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "fuskit/group.hpp"

namespace fuskit {

bool is_prime(std::size_t n);
/// Largest power of p dividing n.
std::size_t p_part(std::size_t n, std::size_t p);
bool is_p_power(std::size_t n, std::size_t p);
std::vector<std::size_t> prime_divisors(std::size_t n);

bool is_p_group(const Subgroup& h, std::size_t p);
/// Q normal in H (Q <= H is required).
bool is_normal_in(const Subgroup& q, const Subgroup& h);

Subgroup intersect(const Subgroup& a, const Subgroup& b);
Subgroup join(const Subgroup& a, const Subgroup& b);
/// AB as a set; throws ProductNotASubgroup unless AB = BA.
Subgroup set_product(const Subgroup& a, const Subgroup& b);

Subgroup center(const Subgroup& h);
/// N_H(Q) and C_H(Q); Q need not lie in H.
Subgroup normalizer(const Subgroup& h, const Subgroup& q);
Subgroup centralizer(const Subgroup& h, const Subgroup& q);
/// [A, B] = <[a, b] : a in A, b in B>.
Subgroup commutator_subgroup(const Subgroup& a, const Subgroup& b);
/// Subgroup generated by the elements of H of order dividing p.
Subgroup omega1(const Subgroup& h, std::size_t p);
/// J(H): generated by the abelian subgroups of H of maximal order.
Subgroup thompson_subgroup(const Subgroup& h);
/// A Sylow p-subgroup of H, grown greedily from 1 through p-elements of the
/// normalizer in ascending element order.
Subgroup sylow(const Subgroup& h, std::size_t p);
/// O_p(H): the largest normal p-subgroup.
Subgroup core_p(const Subgroup& h, std::size_t p);
/// O_p'(H): the largest normal subgroup of order prime to p.
Subgroup core_pprime(const Subgroup& h, std::size_t p);
/// <S^H>.
Subgroup normal_closure(const Subgroup& h, const Subgroup& s);
/// Conjugacy classes of H under H-conjugation, as sorted id lists ordered by
/// smallest member.
std::vector<std::vector<ElementId>> conjugacy_classes(const Subgroup& h);

/// 1 = Z_0 <= Z_1 <= ... up to the hypercenter (stops when the series stalls).
std::vector<Subgroup> upper_central_series(const Subgroup& q);

/// Preimage in H of Z(H/N), i.e. {x in H : [x, H] <= N}. N must be normal in H.
Subgroup center_modulo(const Subgroup& h, const Subgroup& n);

bool is_p_soluble_group(const Subgroup& h, std::size_t p);

enum class SubgroupKind {
  kCenter,
  kNormalizer,
  kCentralizer,
  kCommutator,
  kOmega1,
  kThompsonJ,
  kSylow,
  kCoreP,
  kCorePPrime,
  kJoin,
  kSetProduct,
};

struct SubgroupArgs {
  std::optional<Subgroup> a;
  std::optional<Subgroup> b;
  std::size_t p = 0;
};

/// Dispatcher over the constructions above, evaluated in the whole group G.
/// Subgroup arguments must belong to G (NotASubgroup otherwise).
Subgroup standard_subgroup(const GroupPtr& g, SubgroupKind kind, const SubgroupArgs& args = {});

/// G/N realised through the right-multiplication action of H on the right
/// cosets Nx, cosets numbered by their smallest element.
struct QuotientGroup {
  GroupPtr group;
  /// Indexed by the parent's element ids; kNoElement outside H.
  std::vector<ElementId> projection;
  Subgroup source;
  Subgroup kernel;

  Subgroup image(const Subgroup& s) const;
  /// Full preimage in H of a subgroup of the quotient.
  Subgroup preimage(const Subgroup& s) const;
  /// The projection as a homomorphism source -> quotient.
  GroupHom as_hom() const;
};

/// Throws NotNormal unless N is normal in H.
QuotientGroup quotient_group(const Subgroup& h, const Subgroup& n);
QuotientGroup quotient_group(const GroupPtr& g, const Subgroup& n);

}  // namespace fuskit
