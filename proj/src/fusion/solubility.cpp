#include "fuskit/solubility.hpp"

#include <algorithm>

#include "fuskit/closure_analysis.hpp"
#include "fuskit/error.hpp"
#include "fuskit/homomorphism.hpp"
#include "fuskit/quotients.hpp"
#include "fuskit/subgroup_ops.hpp"
#include "fuskit/subsystems.hpp"

namespace fuskit {

SolubilityReport o_p_tower(const FusionSystem& f) {
  if (!f.saturated()) throw Error(ErrorCode::kNotSaturated, "O_p tower needs a saturated system");
  const auto& lat = *f.lattice();
  SolubilityReport rep;
  rep.tower.push_back(lat[0]);
  while (!(rep.tower.back() == f.carrier())) {
    auto ctx = quotient_context(f, lat.index_of(rep.tower.back()));
    auto fq = factor_system(f, ctx);
    auto next = ctx.quotient.preimage(o_p(fq));
    if (next == rep.tower.back()) break;
    rep.tower.push_back(std::move(next));
  }
  rep.p_soluble = rep.tower.back() == f.carrier();
  if (rep.p_soluble) rep.p_length = rep.tower.size() - 1;
  rep.constrained = is_constrained(f);
  return rep;
}

bool is_constrained(const FusionSystem& f) {
  auto o = o_p(f);
  return o.contains(centralizer(f.carrier(), o));
}

bool is_model(const GroupPtr& g, const FusionSystem& f) {
  const auto p = f.p();
  auto fg = fusion_from_group(g, p);
  if (fg.carrier().order() != f.carrier().order())
    throw Error(ErrorCode::kSylowMismatch, "Sylow subgroups have different orders");
  bool any_iso = false;
  bool matches = false;
  for_each_isomorphism(
      fg.carrier(), f.carrier(),
      [&](const GroupHom& theta) {
        any_iso = true;
        matches = transport(fg, theta, f.lattice()).same_table(f);
        return !matches;
      },
      std::max(kIsomorphismCap, f.carrier().order()));
  if (!any_iso) throw Error(ErrorCode::kSylowMismatch, "Sylow subgroups are not isomorphic");

  const auto whole = Subgroup::whole(g);
  if (!core_pprime(whole, p).is_trivial()) return false;
  auto op = core_p(whole, p);
  if (!op.contains(centralizer(whole, op))) return false;
  return matches;
}

GroupPtr qd_group(std::size_t p) {
  if (!is_prime(p)) throw Error(ErrorCode::kValidationError, "Qd(p) needs a prime");
  const auto n = p * p;
  auto affine = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t d, std::size_t tx, std::size_t ty) {
    // (x, y) -> (x, y) [[a, b], [c, d]] + (tx, ty)
    std::vector<Point> im(n);
    for (std::size_t y = 0; y < p; ++y)
      for (std::size_t x = 0; x < p; ++x) {
        auto nx = (x * a + y * c + tx) % p;
        auto ny = (x * b + y * d + ty) % p;
        im[x + p * y] = static_cast<Point>(nx + p * ny);
      }
    return Perm(std::move(im));
  };
  std::vector<Perm> gens{affine(1, 1, 0, 1, 0, 0), affine(1, 0, 1, 1, 0, 0), affine(1, 0, 0, 1, 1, 0)};
  return Group::from_generators(n, std::move(gens), "Qd" + std::to_string(p));
}

bool is_qdp_free_group(const GroupPtr& g, std::size_t p) {
  const auto target = p * p * p * (p * p - 1);
  if (g->order() < target || g->order() % target != 0) return true;
  auto qd = qd_group(p);
  const auto subs = subgroups(g);
  for (const auto& h : subs) {
    if (h.order() % target != 0) continue;
    const auto n_order = h.order() / target;
    for (const auto& n : subs) {
      if (n.order() != n_order || !h.contains(n) || !is_normal_in(n, h)) continue;
      auto quot = quotient_group(h, n);
      if (isomorphism_search(quot.group, qd, std::max(kIsomorphismCap, target))) return false;
    }
  }
  return true;
}

bool thompson_factorization_holds(const FusionSystem& f) {
  if (!f.saturated()) throw Error(ErrorCode::kNotSaturated, "Thompson factorization needs a saturated system");
  const auto& lat = *f.lattice();
  const auto& pc = f.carrier();
  auto nj = normalizer_system(f, lat.index_of(thompson_subgroup(pc)));
  auto cz = centralizer_system(f, lat.index_of(omega1(center(pc), f.p())));
  auto seeds = nj.all_isos();
  auto more = cz.all_isos();
  seeds.insert(seeds.end(), more.begin(), more.end());
  return close_fusion(f.lattice(), f.carrier_index(), f.p(), "thompson", seeds).same_table(f);
}

bool aut_of_op_is_p_soluble(const FusionSystem& f) {
  auto op = o_p(f);
  auto aut = automorphism_group(f, f.lattice()->index_of(op));
  return is_p_soluble_group(Subgroup::whole(aut.group), f.p());
}

}  // namespace fuskit
