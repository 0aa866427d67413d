#include "fuskit/subsystems.hpp"

#include <set>

#include "fuskit/closure_analysis.hpp"
#include "fuskit/error.hpp"
#include "fuskit/homomorphism.hpp"
#include "fuskit/subgroup_ops.hpp"

namespace fuskit {

namespace {

void require_same_group(const IsoTable& f, const IsoTable& e) {
  if (!f.group()->same_as(*e.group()))
    throw Error(ErrorCode::kDifferentCarrier, "subsystem lives on a different group");
}

void require_strongly_closed_carrier(const IsoTable& f, const IsoTable& e) {
  require_same_group(f, e);
  if (!is_strongly_closed(f, e.carrier_index()))
    throw Error(ErrorCode::kCarrierNotStronglyClosed, "subsystem carrier is not strongly closed");
}

Bitset image_of(const Group& g, const Subgroup& dom, const Images& im) {
  Bitset b(g.order());
  dom.members().for_each([&](std::size_t x) { b.set(im[x]); });
  return b;
}

}  // namespace

FusionSystem inner_system(const IsoTable& f, std::size_t q) { return inner_fusion(f.lattice(), q, f.p()); }

Subgroup k_normalizer(const IsoTable& f, std::size_t q, const std::vector<Images>& k) {
  const auto& lat = *f.lattice();
  const auto& g = *lat.group();
  const auto qelems = lat[q].elements();
  const std::set<Images> kset(k.begin(), k.end());
  Bitset out(g.order());
  carrier_normalizer(f, q).members().for_each([&](std::size_t x) {
    Images im(g.order(), kNoElement);
    for (auto y : qelems) im[y] = g.conj(y, static_cast<ElementId>(x));
    if (kset.count(im)) out.set(x);
  });
  return Subgroup(lat.group(), std::move(out));
}

FusionSystem k_normalizer_system(const FusionSystem& f, std::size_t q, const std::vector<Images>& k) {
  const auto& lat = *f.lattice();
  const auto& g = *lat.group();
  const auto& qs = lat[q];
  if (!f.is_object(q)) throw Error(ErrorCode::kNotASubgroup, "K-normalizer needs a subgroup of the carrier");

  std::set<Images> kset;
  for (const auto& a : k) {
    Images r(g.order(), kNoElement);
    qs.members().for_each([&](std::size_t x) { r[x] = a[x]; });
    if (!f.contains(q, q, r)) throw Error(ErrorCode::kNotASubgroupOfAut, "K contains a map outside Aut_F(Q)");
    kset.insert(std::move(r));
  }
  Images id(g.order(), kNoElement);
  qs.members().for_each([&](std::size_t x) { id[x] = static_cast<ElementId>(x); });
  if (!kset.count(id)) throw Error(ErrorCode::kNotASubgroupOfAut, "K does not contain the identity");
  for (const auto& a : kset)
    for (const auto& b : kset) {
      Images c(g.order(), kNoElement);
      qs.members().for_each([&](std::size_t x) { c[x] = b[a[x]]; });
      if (!kset.count(c)) throw Error(ErrorCode::kNotASubgroupOfAut, "K is not closed under composition");
    }

  const auto carrier = k_normalizer(f, q, {kset.begin(), kset.end()});
  const auto ci = lat.index_of(carrier);
  TableDraft d{f.lattice(), ci, f.p(), "k-normalizer", {}};
  d.buckets.resize(lat.size());
  std::vector<std::set<Iso>> found(lat.size());
  const auto objects = lat.below(ci);
  std::set<std::size_t> overgroups;
  for (auto s : objects) overgroups.insert(lat.index_of(join(lat[s], qs)));
  for (auto t : overgroups) {
    for (const auto& psi : f.isos_from(t)) {
      Images r(g.order(), kNoElement);
      qs.members().for_each([&](std::size_t x) { r[x] = psi.images[x]; });
      if (!kset.count(r)) continue;
      for (auto s : objects) {
        if (!lat[t].contains(lat[s])) continue;
        Images im(g.order(), kNoElement);
        lat[s].members().for_each([&](std::size_t x) { im[x] = psi.images[x]; });
        const auto image = image_of(g, lat[s], im);
        if (!image.is_subset_of(carrier.members())) continue;
        found[s].insert(Iso{static_cast<std::uint32_t>(lat.index_of(image)), std::move(im)});
      }
    }
  }
  for (std::size_t i = 0; i < lat.size(); ++i) d.buckets[i].assign(found[i].begin(), found[i].end());
  return FusionSystem::from_closed(std::move(d));
}

FusionSystem normalizer_system(const FusionSystem& f, std::size_t q) {
  return k_normalizer_system(f, q, aut_maps(f, q));
}

FusionSystem centralizer_system(const FusionSystem& f, std::size_t q) {
  const auto& lat = *f.lattice();
  Images id(lat.group()->order(), kNoElement);
  lat[q].members().for_each([&](std::size_t x) { id[x] = static_cast<ElementId>(x); });
  return k_normalizer_system(f, q, {id});
}

bool is_invariant(const FusionSystem& f, const FusionSystem& e) {
  require_strongly_closed_carrier(f, e);
  const auto& lat = *f.lattice();
  const auto& g = *lat.group();
  for (auto r : e.objects()) {
    for (const auto& phi : e.isos_from(r)) {
      const auto t = lat.index_of(join(lat[r], lat[phi.codomain]));
      for (const auto& psi : f.isos_from(t)) {
        // psi^-1 phi psi : R psi -> R' psi, (x psi) -> (x phi) psi.
        Images m(g.order(), kNoElement);
        Bitset from(g.order()), to(g.order());
        lat[r].members().for_each([&](std::size_t x) {
          m[psi.images[x]] = psi.images[phi.images[x]];
          from.set(psi.images[x]);
          to.set(m[psi.images[x]]);
        });
        if (!e.contains(lat.index_of(from), lat.index_of(to), m)) return false;
      }
    }
  }
  return true;
}

bool is_frattini(const FusionSystem& f, const FusionSystem& e) {
  require_strongly_closed_carrier(f, e);
  const auto& lat = *f.lattice();
  const auto& g = *lat.group();
  const auto qi = e.carrier_index();
  const auto auts = aut_maps(f, qi);
  for (auto r : e.objects()) {
    for (const auto& phi : f.isos_from(r)) {
      bool factors = false;
      for (const auto& a : auts) {
        // beta : R alpha -> R phi, (x alpha) -> x phi.
        Images beta(g.order(), kNoElement);
        Bitset from(g.order());
        lat[r].members().for_each([&](std::size_t x) {
          beta[a[x]] = phi.images[x];
          from.set(a[x]);
        });
        if (e.contains(lat.index_of(from), phi.codomain, beta)) {
          factors = true;
          break;
        }
      }
      if (!factors) return false;
    }
  }
  return true;
}

bool aut_F_acts_on(const FusionSystem& e, const std::vector<Images>& alphas) {
  const auto& lat = *e.lattice();
  const auto& g = *lat.group();
  for (const auto& a : alphas) {
    for (auto r : e.objects()) {
      for (const auto& phi : e.isos_from(r)) {
        Images m(g.order(), kNoElement);
        Bitset from(g.order()), to(g.order());
        lat[r].members().for_each([&](std::size_t x) {
          m[a[x]] = a[phi.images[x]];
          from.set(a[x]);
          to.set(m[a[x]]);
        });
        if (!e.contains(lat.index_of(from), lat.index_of(to), m)) return false;
      }
    }
  }
  return true;
}

bool is_normal_subsystem(const FusionSystem& f, const FusionSystem& e) {
  return is_invariant(f, e) && e.saturated();
}

std::vector<GroupHom> fusion_automorphisms(const FusionSystem& f) {
  std::vector<GroupHom> out;
  for (const auto& a : automorphisms(f.carrier()))
    if (transport(f, a, f.lattice()).same_table(f)) out.push_back(a);
  return out;
}

bool is_characteristic(const FusionSystem& f, const FusionSystem& e) {
  if (!is_normal_subsystem(f, e)) throw Error(ErrorCode::kNotNormal, "characteristic test needs a normal subsystem");
  const auto& q = e.carrier();
  for (const auto& a : fusion_automorphisms(f)) {
    if (!(a.image_of(q) == q)) return false;
    auto moved = transport(e, a.restrict_to(q).with_codomain(f.carrier()), e.lattice());
    if (!moved.same_table(e)) return false;
  }
  return true;
}

}  // namespace fuskit
