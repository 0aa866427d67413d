#include "fuskit/fusion_system.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <set>

#include "fuskit/error.hpp"
#include "fuskit/subgroup_ops.hpp"

namespace fuskit {

namespace {

void normalize(std::vector<Iso>& bucket) {
  std::sort(bucket.begin(), bucket.end());
  bucket.erase(std::unique(bucket.begin(), bucket.end()), bucket.end());
}

Bitset image_bits(const Group& g, const Subgroup& dom, const Images& im) {
  Bitset b(g.order());
  dom.members().for_each([&](std::size_t x) { b.set(im[x]); });
  return b;
}

Images compose_images(const Subgroup& dom, const Images& first, const Images& second) {
  Images out(first.size(), kNoElement);
  dom.members().for_each([&](std::size_t x) { out[x] = second[first[x]]; });
  return out;
}

Images inverse_images(const Subgroup& dom, const Images& im) {
  Images out(im.size(), kNoElement);
  dom.members().for_each([&](std::size_t x) { out[im[x]] = static_cast<ElementId>(x); });
  return out;
}

Images restrict_images(const Subgroup& sub, const Images& im) {
  Images out(im.size(), kNoElement);
  sub.members().for_each([&](std::size_t x) { out[x] = im[x]; });
  return out;
}

}  // namespace

IsoTable::IsoTable(LatticePtr lattice, std::size_t carrier, std::size_t p, std::string provenance,
                   std::vector<std::vector<Iso>> buckets)
    : lattice_(std::move(lattice)),
      carrier_(carrier),
      p_(p),
      provenance_(std::move(provenance)),
      buckets_(std::move(buckets)) {
  buckets_.resize(lattice_->size());
  for (auto& b : buckets_) normalize(b);
  in_carrier_.assign(lattice_->size(), false);
  const auto& c = (*lattice_)[carrier_];
  for (std::size_t i = 0; i <= carrier_; ++i) {
    if (c.contains((*lattice_)[i])) {
      in_carrier_[i] = true;
      objects_.push_back(i);
    }
  }
}

std::span<const Iso> IsoTable::isos(std::size_t i, std::size_t j) const {
  const auto& b = buckets_[i];
  auto lo = std::lower_bound(b.begin(), b.end(), j,
                             [](const Iso& iso, std::size_t k) { return iso.codomain < k; });
  auto hi = std::upper_bound(lo, b.end(), j, [](std::size_t k, const Iso& iso) { return k < iso.codomain; });
  return {b.data() + (lo - b.begin()), static_cast<std::size_t>(hi - lo)};
}

bool IsoTable::contains(std::size_t i, std::size_t j, const Images& m) const {
  Iso key{static_cast<std::uint32_t>(j), m};
  return std::binary_search(buckets_[i].begin(), buckets_[i].end(), key);
}

std::size_t IsoTable::iso_count() const {
  std::size_t n = 0;
  for (const auto& b : buckets_) n += b.size();
  return n;
}

std::vector<std::size_t> IsoTable::iso_class(std::size_t i) const {
  std::vector<std::size_t> out;
  for (const auto& iso : buckets_[i])
    if (out.empty() || out.back() != iso.codomain) out.push_back(iso.codomain);
  if (out.empty()) out.push_back(i);
  return out;
}

GroupHom IsoTable::to_hom(std::size_t domain, const Iso& iso) const {
  return GroupHom((*lattice_)[domain], (*lattice_)[iso.codomain], iso.images);
}

IsoRef IsoTable::locate(const GroupHom& h) const {
  const auto& g = *group();
  if (!h.domain().same_parent(carrier()) || !h.codomain().same_parent(carrier()))
    throw Error(ErrorCode::kMorphismNotInSystem, "morphism is not between subgroups of the carrier group");
  IsoRef ref;
  ref.domain = static_cast<std::uint32_t>(lattice_->index_of(h.domain()));
  ref.codomain = static_cast<std::uint32_t>(lattice_->index_of(image_bits(g, h.domain(), h.images())));
  ref.images = restrict_images(h.domain(), h.images());
  return ref;
}

std::vector<IsoRef> IsoTable::all_isos() const {
  std::vector<IsoRef> out;
  for (std::size_t i = 0; i < buckets_.size(); ++i)
    for (const auto& iso : buckets_[i]) out.push_back({static_cast<std::uint32_t>(i), iso.codomain, iso.images});
  return out;
}

bool IsoTable::same_carrier_group(const IsoTable& other) const {
  return group()->same_as(*other.group()) && carrier_ == other.carrier_;
}

bool IsoTable::same_table(const IsoTable& other) const {
  return same_carrier_group(other) && buckets_ == other.buckets_;
}

PreFusionSystem::PreFusionSystem(TableDraft d)
    : IsoTable(std::move(d.lattice), d.carrier, d.p, std::move(d.provenance), std::move(d.buckets)) {}

struct FusionSystem::Cache {
  std::once_flag once;
  bool saturated = false;
};

FusionSystem::FusionSystem(TableDraft d)
    : IsoTable(std::move(d.lattice), d.carrier, d.p, std::move(d.provenance), std::move(d.buckets)),
      cache_(std::make_shared<Cache>()) {}

FusionSystem FusionSystem::from_closed(TableDraft draft) { return FusionSystem(std::move(draft)); }

bool FusionSystem::saturated() const {
  std::call_once(cache_->once, [this] { cache_->saturated = check_saturation(*this, nullptr); });
  return cache_->saturated;
}

PreFusionSystem FusionSystem::as_prefusion() const {
  return PreFusionSystem(TableDraft{lattice_, carrier_, p_, provenance_, buckets_});
}

std::vector<std::vector<Iso>> inner_buckets(const LatticePtr& lattice, std::size_t carrier) {
  const auto& lat = *lattice;
  const auto& g = *lat.group();
  const auto& c = lat[carrier];
  const auto celems = c.elements();
  std::vector<std::vector<Iso>> buckets(lat.size());
  for (std::size_t i = 0; i < lat.size(); ++i) {
    const auto& q = lat[i];
    if (!c.contains(q)) continue;
    const auto qelems = q.elements();
    std::set<Iso> found;
    for (auto x : celems) {
      Images im(g.order(), kNoElement);
      Bitset b(g.order());
      for (auto y : qelems) {
        im[y] = g.conj(y, x);
        b.set(im[y]);
      }
      found.insert(Iso{static_cast<std::uint32_t>(lat.index_of(b)), std::move(im)});
    }
    buckets[i].assign(found.begin(), found.end());
  }
  return buckets;
}

FusionSystem close_fusion(const LatticePtr& lattice, std::size_t carrier, std::size_t p, std::string provenance,
                          const std::vector<IsoRef>& seeds) {
  const auto& lat = *lattice;
  const auto& g = *lat.group();
  const std::size_t n = lat.size();
  std::vector<std::set<Iso>> table(n);
  // into[j] lists (domain, iso) pairs with codomain j.
  std::vector<std::vector<std::pair<std::uint32_t, Images>>> into(n);
  auto inner = inner_buckets(lattice, carrier);
  for (std::size_t i = 0; i < n; ++i) {
    for (auto& iso : inner[i]) {
      into[iso.codomain].emplace_back(static_cast<std::uint32_t>(i), iso.images);
      table[i].insert(std::move(iso));
    }
  }
  std::deque<IsoRef> work(seeds.begin(), seeds.end());
  while (!work.empty()) {
    IsoRef cur = std::move(work.front());
    work.pop_front();
    Iso key{cur.codomain, cur.images};
    if (table[cur.domain].count(key)) continue;
    const auto& dom = lat[cur.domain];
    table[cur.domain].insert(key);
    into[cur.codomain].emplace_back(cur.domain, cur.images);

    work.push_back({cur.codomain, cur.domain, inverse_images(dom, cur.images)});
    for (auto m : lat.maximal_subgroups(cur.domain)) {
      auto im = restrict_images(lat[m], cur.images);
      auto cod = static_cast<std::uint32_t>(lat.index_of(image_bits(g, lat[m], im)));
      work.push_back({static_cast<std::uint32_t>(m), cod, std::move(im)});
    }
    for (const auto& next : table[cur.codomain])
      work.push_back({cur.domain, next.codomain, compose_images(dom, cur.images, next.images)});
    for (const auto& [k, prev] : into[cur.domain])
      work.push_back({k, cur.codomain, compose_images(lat[k], prev, cur.images)});
  }
  TableDraft d{lattice, carrier, p, std::move(provenance), {}};
  d.buckets.resize(n);
  for (std::size_t i = 0; i < n; ++i) d.buckets[i].assign(table[i].begin(), table[i].end());
  return FusionSystem::from_closed(std::move(d));
}

FusionSystem inner_fusion(const LatticePtr& lattice, std::size_t carrier, std::size_t p) {
  return FusionSystem::from_closed(TableDraft{lattice, carrier, p, "inner", inner_buckets(lattice, carrier)});
}

FusionSystem fusion_from_group(const GroupPtr& g, std::size_t p) {
  if (!is_prime(p)) throw Error(ErrorCode::kValidationError, "p must be prime");
  const auto syl = sylow(Subgroup::whole(g), p);
  std::vector<Perm> gens;
  for (auto x : generators_of(syl)) gens.push_back(g->element(x));
  auto pg = Group::from_generators(g->degree(), std::move(gens), g->name() + "_Syl" + std::to_string(p));
  auto lattice = Lattice::build(pg);
  const auto& lat = *lattice;
  const auto& P = *pg;

  std::vector<ElementId> to_g(P.order());
  std::vector<ElementId> to_p(g->order(), kNoElement);
  for (ElementId x = 0; x < P.order(); ++x) {
    to_g[x] = g->id_of(P.element(x));
    to_p[to_g[x]] = x;
  }
  std::vector<std::vector<Iso>> buckets(lat.size());
  for (std::size_t i = 0; i < lat.size(); ++i) {
    const auto qelems = lat[i].elements();
    std::set<Iso> found;
    for (ElementId x = 0; x < g->order(); ++x) {
      Images im(P.order(), kNoElement);
      Bitset b(P.order());
      bool inside = true;
      for (auto y : qelems) {
        auto z = to_p[g->conj(to_g[y], x)];
        if (z == kNoElement) {
          inside = false;
          break;
        }
        im[y] = z;
        b.set(z);
      }
      if (!inside) continue;
      found.insert(Iso{static_cast<std::uint32_t>(lat.index_of(b)), std::move(im)});
    }
    buckets[i].assign(found.begin(), found.end());
  }
  auto f = FusionSystem::from_closed(TableDraft{lattice, lat.whole_index(), p, "from-group", std::move(buckets)});
  f.set_source_group(g);
  return f;
}

FusionSystem fusion_generated(const LatticePtr& lattice, std::size_t p, const std::vector<GroupHom>& seeds) {
  const auto& lat = *lattice;
  const auto whole = Subgroup::whole(lat.group());
  std::vector<IsoRef> refs;
  for (const auto& h : seeds) {
    if (!h.domain().same_parent(whole) || !h.codomain().same_parent(whole))
      throw Error(ErrorCode::kNotASubgroup, "seed morphism is not between subgroups of the carrier");
    IsoRef r;
    r.domain = static_cast<std::uint32_t>(lat.index_of(h.domain()));
    r.codomain = static_cast<std::uint32_t>(lat.index_of(h.image()));
    r.images = restrict_images(h.domain(), h.images());
    refs.push_back(std::move(r));
  }
  return close_fusion(lattice, lat.whole_index(), p, seeds.empty() ? "inner" : "generated", refs);
}

FusionSystem fusion_generated(const GroupPtr& p_group, std::size_t p, const std::vector<GroupHom>& seeds) {
  return fusion_generated(Lattice::build(p_group), p, seeds);
}

FusionSystem fusion_intersect(const FusionSystem& a, const FusionSystem& b) {
  if (!a.same_carrier_group(b))
    throw Error(ErrorCode::kDifferentCarrier, "intersection needs systems on the same carrier");
  TableDraft d{a.lattice(), a.carrier_index(), a.p(), "intersection", {}};
  d.buckets.resize(a.lattice()->size());
  for (std::size_t i = 0; i < d.buckets.size(); ++i) {
    auto ra = a.isos_from(i);
    auto rb = b.isos_from(i);
    std::set_intersection(ra.begin(), ra.end(), rb.begin(), rb.end(), std::back_inserter(d.buckets[i]));
  }
  return FusionSystem::from_closed(std::move(d));
}

FusionSystem restrict_system(const FusionSystem& f, std::size_t s) {
  const auto& lat = *f.lattice();
  if (!f.is_object(s)) throw Error(ErrorCode::kNotASubgroup, "restriction target is not inside the carrier");
  TableDraft d{f.lattice(), s, f.p(), "restricted", {}};
  d.buckets.resize(lat.size());
  const auto& sub = lat[s];
  for (std::size_t i = 0; i < lat.size(); ++i) {
    if (!sub.contains(lat[i])) continue;
    for (const auto& iso : f.isos_from(i))
      if (sub.contains(lat[iso.codomain])) d.buckets[i].push_back(iso);
  }
  return FusionSystem::from_closed(std::move(d));
}

std::vector<GroupHom> hom_set(const IsoTable& f, std::size_t q, std::size_t r) {
  const auto& lat = *f.lattice();
  std::vector<GroupHom> out;
  if (!f.is_object(q) || !f.is_object(r)) return out;
  for (const auto& iso : f.isos_from(q))
    if (lat[r].contains(lat[iso.codomain])) out.emplace_back(lat[q], lat[r], iso.images);
  return out;
}

std::vector<GroupHom> hom_set(const IsoTable& f, const Subgroup& q, const Subgroup& r) {
  return hom_set(f, f.lattice()->index_of(q), f.lattice()->index_of(r));
}

std::vector<Images> aut_maps(const IsoTable& f, std::size_t q) {
  std::vector<Images> out;
  for (const auto& iso : f.isos(q, q)) out.push_back(iso.images);
  return out;
}

Subgroup carrier_normalizer(const IsoTable& f, std::size_t q) {
  const auto& lat = *f.lattice();
  return Subgroup(lat.group(), lat.normalizer(q) & f.carrier().members());
}

Subgroup carrier_centralizer(const IsoTable& f, std::size_t q) {
  const auto& lat = *f.lattice();
  return Subgroup(lat.group(), lat.centralizer(q) & f.carrier().members());
}

std::vector<Images> inner_aut_maps(const IsoTable& f, std::size_t q) {
  const auto& lat = *f.lattice();
  const auto& g = *lat.group();
  const auto qelems = lat[q].elements();
  std::set<Images> found;
  carrier_normalizer(f, q).members().for_each([&](std::size_t x) {
    Images im(g.order(), kNoElement);
    for (auto y : qelems) im[y] = g.conj(y, static_cast<ElementId>(x));
    found.insert(std::move(im));
  });
  return {found.begin(), found.end()};
}

Subgroup n_phi(const IsoTable& f, const IsoRef& phi) {
  const auto& lat = *f.lattice();
  const auto& g = *lat.group();
  const auto& q = lat[phi.domain];
  const auto qelems = q.elements();
  const auto inner_r = inner_aut_maps(f, phi.codomain);
  const std::set<Images> inner_set(inner_r.begin(), inner_r.end());
  Bitset out(g.order());
  carrier_normalizer(f, phi.domain).members().for_each([&](std::size_t x) {
    // (g^x)phi as a map on R = Q phi.
    Images m(g.order(), kNoElement);
    for (auto y : qelems) m[phi.images[y]] = phi.images[g.conj(y, static_cast<ElementId>(x))];
    if (inner_set.count(m)) out.set(x);
  });
  return Subgroup(lat.group(), std::move(out));
}

Subgroup n_phi(const FusionSystem& f, const GroupHom& phi) {
  auto ref = f.locate(phi);
  if (!f.contains(ref.domain, ref.codomain, ref.images))
    throw Error(ErrorCode::kMorphismNotInSystem, "n_phi needs a morphism of the system");
  return n_phi(static_cast<const IsoTable&>(f), ref);
}

bool is_fully_normalized(const IsoTable& f, std::size_t q) {
  const auto own = carrier_normalizer(f, q).order();
  for (auto r : f.iso_class(q))
    if (carrier_normalizer(f, r).order() > own) return false;
  return true;
}

bool check_saturation(const FusionSystem& f, std::string* why) {
  const auto& lat = *f.lattice();
  const auto s = f.carrier_index();
  const auto aut_s = f.isos(s, s).size();
  const auto inn_s = lat[s].order() / center(lat[s]).order();
  if (inn_s != p_part(aut_s, f.p())) {
    if (why) *why = "Aut_P(P) of order " + std::to_string(inn_s) + " is not Sylow in Aut_F(P) of order " +
                    std::to_string(aut_s);
    return false;
  }
  std::vector<char> fully(lat.size(), 0);
  for (auto i : f.objects()) fully[i] = is_fully_normalized(f, i) ? 1 : 0;
  for (auto i : f.objects()) {
    const auto& q = lat[i];
    for (const auto& iso : f.isos_from(i)) {
      if (!fully[iso.codomain]) continue;
      IsoRef ref{static_cast<std::uint32_t>(i), iso.codomain, iso.images};
      auto n = n_phi(f, ref);
      auto ni = lat.index_of(n);
      bool extends = false;
      for (const auto& ext : f.isos_from(ni)) {
        bool agrees = true;
        q.members().for_each([&](std::size_t x) { agrees = agrees && ext.images[x] == iso.images[x]; });
        if (agrees) {
          extends = true;
          break;
        }
      }
      if (!extends) {
        if (why)
          *why = "a morphism from subgroup " + std::to_string(i) + " onto fully normalized subgroup " +
                 std::to_string(iso.codomain) + " does not extend to N_phi";
        return false;
      }
    }
  }
  return true;
}

bool is_saturated(const FusionSystem& f) { return f.saturated(); }

FusionSystem transport(const FusionSystem& f, const GroupHom& theta, LatticePtr target) {
  const auto& lat = *f.lattice();
  if (!(theta.domain() == f.carrier()))
    throw Error(ErrorCode::kNotAnIsomorphism, "transport needs a map defined on the carrier");
  const auto img = theta.image();
  if (img.order() != f.carrier().order())
    throw Error(ErrorCode::kNotAnIsomorphism, "transport map is not injective");
  if (!target) {
    if (theta.codomain().parent()->same_as(*lat.group()))
      target = f.lattice();
    else
      target = Lattice::build(theta.codomain().parent());
  }
  const auto& tl = *target;
  const auto& tg = *tl.group();
  const auto& th = theta.images();
  Images back(tg.order(), kNoElement);
  f.carrier().members().for_each([&](std::size_t x) { back[th[x]] = static_cast<ElementId>(x); });
  std::vector<std::size_t> moved(lat.size(), 0);
  for (auto i : f.objects()) moved[i] = tl.index_of(theta.image_of(lat[i]));
  TableDraft d{target, tl.index_of(img), f.p(), f.provenance(), {}};
  d.buckets.resize(tl.size());
  for (auto i : f.objects()) {
    const auto& q = lat[i];
    for (const auto& iso : f.isos_from(i)) {
      Images im(tg.order(), kNoElement);
      q.members().for_each([&](std::size_t x) { im[th[x]] = th[iso.images[x]]; });
      d.buckets[moved[i]].push_back(Iso{static_cast<std::uint32_t>(moved[iso.codomain]), std::move(im)});
    }
  }
  return FusionSystem::from_closed(std::move(d));
}

bool fusion_equal(const IsoTable& a, const IsoTable& b) {
  if (!a.same_carrier_group(b)) throw Error(ErrorCode::kDifferentCarrier, "systems live on different carriers");
  return a.same_table(b);
}

AutGroup automorphism_group(const Subgroup& q, const std::vector<Images>& maps) {
  AutGroup out;
  out.members = q.elements();
  const auto n = out.members.size();
  std::vector<std::uint32_t> pos(q.group().order(), 0);
  for (std::size_t k = 0; k < n; ++k) pos[out.members[k]] = static_cast<std::uint32_t>(k);
  std::vector<Perm> gens;
  for (const auto& m : maps) {
    std::vector<Point> im(n);
    for (std::size_t k = 0; k < n; ++k) im[k] = pos[m[out.members[k]]];
    gens.emplace_back(std::move(im));
  }
  out.group = Group::from_generators(n, std::move(gens), "Aut");
  const auto& g = *out.group;
  out.maps.resize(g.order());
  for (ElementId e = 0; e < g.order(); ++e) {
    Images m(q.group().order(), kNoElement);
    const auto& perm = g.element(e);
    for (std::size_t k = 0; k < n; ++k) m[out.members[k]] = out.members[perm[k]];
    out.maps[e] = std::move(m);
  }
  return out;
}

AutGroup automorphism_group(const IsoTable& f, std::size_t q) {
  return automorphism_group((*f.lattice())[q], aut_maps(f, q));
}

Subgroup AutGroup::subgroup_of(const std::vector<Images>& subset) const {
  Bitset b(group->order());
  for (const auto& m : subset) {
    auto it = std::find(maps.begin(), maps.end(), m);
    if (it == maps.end()) throw Error(ErrorCode::kNotASubgroupOfAut, "map is not an automorphism in the group");
    b.set(static_cast<std::size_t>(it - maps.begin()));
  }
  return Subgroup::checked(group, std::move(b));
}

std::vector<Images> AutGroup::maps_of(const Subgroup& s) const {
  std::vector<Images> out;
  s.members().for_each([&](std::size_t x) { out.push_back(maps[x]); });
  return out;
}

}  // namespace fuskit
