#include "fuskit/closure_analysis.hpp"

#include <functional>
#include <map>
#include <stdexcept>

#include "fuskit/error.hpp"
#include "fuskit/subgroup_ops.hpp"
#include "fuskit/subsystems.hpp"

namespace fuskit {

namespace {

void require_saturated(const FusionSystem& f, const char* what) {
  if (!f.saturated()) throw Error(ErrorCode::kNotSaturated, std::string(what) + " needs a saturated system");
}

// Inn(Q): conjugation by the elements of Q.
std::vector<Images> inn_maps(const IsoTable& f, std::size_t q) {
  const auto& lat = *f.lattice();
  const auto& g = *lat.group();
  const auto qelems = lat[q].elements();
  std::vector<Images> out;
  for (auto x : qelems) {
    Images im(g.order(), kNoElement);
    for (auto y : qelems) im[y] = g.conj(y, x);
    out.push_back(std::move(im));
  }
  return out;
}

// Join of every object below `top` satisfying `pred`.
Subgroup join_of(const IsoTable& f, const Subgroup& top, const std::function<bool(std::size_t)>& pred) {
  const auto& lat = *f.lattice();
  Subgroup acc = lat[0];
  for (auto i : f.objects())
    if (top.contains(lat[i]) && !acc.contains(lat[i]) && pred(i)) acc = join(acc, lat[i]);
  return acc;
}

}  // namespace

bool is_centric(const IsoTable& f, std::size_t q) {
  const auto& lat = *f.lattice();
  for (auto r : f.iso_class(q))
    if (!lat[r].contains(carrier_centralizer(f, r))) return false;
  return true;
}

bool is_radical(const IsoTable& f, std::size_t q) {
  auto aut = automorphism_group(f, q);
  auto inn = aut.subgroup_of(inn_maps(f, q));
  auto op = core_p(Subgroup::whole(aut.group), f.p());
  return op == inn;
}

bool is_weakly_closed(const IsoTable& f, std::size_t q) {
  auto cls = f.iso_class(q);
  return cls.size() == 1 && cls[0] == q;
}

bool is_strongly_closed(const IsoTable& f, std::size_t q) {
  const auto& lat = *f.lattice();
  if (!f.is_object(q)) return false;
  const auto& sub = lat[q];
  for (auto r : f.objects()) {
    if (!sub.contains(lat[r])) continue;
    for (const auto& iso : f.isos_from(r))
      if (!sub.contains(lat[iso.codomain])) return false;
  }
  return true;
}

SubgroupClassification classify(const FusionSystem& f, std::size_t q) {
  SubgroupClassification c;
  c.subgroup = (*f.lattice())[q];
  c.fully_normalized = is_fully_normalized(f, q);
  c.centric = is_centric(f, q);
  c.radical = is_radical(f, q);
  c.weakly_closed = is_weakly_closed(f, q);
  c.strongly_closed = is_strongly_closed(f, q);
  c.normal_in_F = is_normal_subgroup(f, q, false);
  return c;
}

std::vector<std::size_t> fncr_subgroups(const FusionSystem& f) {
  std::vector<std::size_t> out;
  for (auto i : f.objects())
    if (is_centric(f, i) && is_fully_normalized(f, i) && is_radical(f, i)) out.push_back(i);
  return out;
}

bool is_normal_by_definition(const FusionSystem& f, std::size_t q) {
  return normalizer_system(f, q).same_table(f);
}

bool is_normal_subgroup(const FusionSystem& f, std::size_t q, bool strict) {
  if (!f.saturated()) {
    if (strict) throw Error(ErrorCode::kNotSaturated, "normality criterion needs a saturated system");
    return is_normal_by_definition(f, q);
  }
  if (!is_strongly_closed(f, q)) return false;
  const auto& lat = *f.lattice();
  for (auto s : fncr_subgroups(f))
    if (!lat[s].contains(lat[q])) return false;
  return true;
}

Subgroup o_p(const FusionSystem& f) {
  require_saturated(f, "O_p(F)");
  const auto& lat = *f.lattice();
  Subgroup inter = f.carrier();
  for (auto s : fncr_subgroups(f)) inter = intersect(inter, lat[s]);
  auto acc = join_of(f, inter, [&](std::size_t i) { return is_strongly_closed(f, i); });
  if (!is_strongly_closed(f, lat.index_of(acc)))
    throw std::logic_error("join of strongly closed subgroups is not strongly closed");
  return acc;
}

Subgroup center_of_fusion(const FusionSystem& f) {
  require_saturated(f, "Z(F)");
  const auto& lat = *f.lattice();
  const auto zp = center(f.carrier());
  auto qualifies = [&](std::size_t i) { return centralizer_system(f, i).same_table(f); };
  auto acc = join_of(f, zp, qualifies);
  if (!qualifies(lat.index_of(acc)))
    throw Error(ErrorCode::kCenterJoinFailure, "join of subgroups with C_F(Z) = F does not qualify");
  return acc;
}

std::optional<std::vector<Subgroup>> strongly_closed_central_series(const FusionSystem& f, std::size_t q,
                                                                    SeriesMode mode) {
  require_saturated(f, "central series");
  const auto& lat = *f.lattice();
  const auto& top = lat[q];
  if (mode == SeriesMode::kWeak && !is_strongly_closed(f, q)) return std::nullopt;
  auto closed = [&](std::size_t i) {
    return mode == SeriesMode::kStrong ? is_strongly_closed(f, i) : is_weakly_closed(f, i);
  };
  std::vector<Subgroup> series{lat[0]};
  while (!(series.back() == top)) {
    auto bound = center_modulo(top, series.back());
    auto next = join_of(f, bound, closed);
    if (!closed(lat.index_of(next))) throw std::logic_error("join of closed subgroups is not closed");
    if (next == series.back()) return std::nullopt;
    series.push_back(std::move(next));
  }
  return series;
}

std::vector<AlperinGenerator> alperin_generators(const FusionSystem& f) {
  require_saturated(f, "Alperin generators");
  std::vector<AlperinGenerator> out;
  for (auto s : fncr_subgroups(f)) out.push_back({s, aut_maps(f, s)});
  return out;
}

FusionSystem alperin_regenerate(const FusionSystem& f) {
  std::vector<IsoRef> seeds;
  for (const auto& gen : alperin_generators(f))
    for (const auto& a : gen.automorphisms)
      seeds.push_back({static_cast<std::uint32_t>(gen.subgroup), static_cast<std::uint32_t>(gen.subgroup), a});
  return close_fusion(f.lattice(), f.carrier_index(), f.p(), "alperin", seeds);
}

std::vector<AlperinStep> alperin_decompose(const FusionSystem& f, const IsoRef& phi) {
  require_saturated(f, "Alperin decomposition");
  if (!f.contains(phi.domain, phi.codomain, phi.images))
    throw Error(ErrorCode::kMorphismNotInSystem, "decomposition target is not a morphism of the system");
  const auto& lat = *f.lattice();
  const auto& g = *lat.group();
  const auto gens = alperin_generators(f);
  const auto& q = lat[phi.domain];

  struct Node {
    std::size_t at;
    Images map;  // Q -> lat[at]
    std::size_t parent;
    AlperinStep step;
  };
  std::vector<Node> nodes;
  std::map<std::pair<std::size_t, Images>, std::size_t> seen;
  Images id(g.order(), kNoElement);
  q.members().for_each([&](std::size_t x) { id[x] = static_cast<ElementId>(x); });
  nodes.push_back({phi.domain, id, 0, {}});
  seen.emplace(std::make_pair(std::size_t{phi.domain}, id), 0);

  for (std::size_t head = 0; head < nodes.size(); ++head) {
    if (nodes[head].at == phi.codomain && nodes[head].map == phi.images) {
      std::vector<AlperinStep> steps;
      for (auto k = head; k != 0; k = nodes[k].parent) steps.push_back(nodes[k].step);
      return {steps.rbegin(), steps.rend()};
    }
    const auto at = nodes[head].at;
    for (const auto& gen : gens) {
      if (!lat[gen.subgroup].contains(lat[at])) continue;
      for (const auto& a : gen.automorphisms) {
        Images m(g.order(), kNoElement);
        Bitset img(g.order());
        q.members().for_each([&](std::size_t x) {
          m[x] = a[nodes[head].map[x]];
          img.set(m[x]);
        });
        auto to = lat.index_of(img);
        auto key = std::make_pair(to, m);
        if (seen.count(key)) continue;
        seen.emplace(key, nodes.size());
        nodes.push_back({to, std::move(m), head, AlperinStep{gen.subgroup, a, at, to}});
      }
    }
  }
  throw Error(ErrorCode::kDecompositionNotFound, "no Alperin decomposition found");
}

}  // namespace fuskit
