#include "fuskit/homomorphism.hpp"

#include <algorithm>

#include "fuskit/error.hpp"
#include "fuskit/lattice.hpp"
#include "fuskit/subgroup_ops.hpp"

namespace fuskit {

namespace {

// Walks the Cayley graph of <gens> and checks every edge against the images.
// Returns the map (indexed by ids of `from`) or nullopt on an inconsistent edge.
std::optional<std::vector<ElementId>> extend(const Group& from, const Group& to,
                                             const std::vector<ElementId>& gens,
                                             const std::vector<ElementId>& images,
                                             std::vector<ElementId>* visited = nullptr) {
  std::vector<ElementId> map(from.order(), kNoElement);
  std::vector<ElementId> queue{0};
  map[0] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const auto x = queue[head];
    for (std::size_t j = 0; j < gens.size(); ++j) {
      const auto y = from.mul(x, gens[j]);
      const auto v = to.mul(map[x], images[j]);
      if (map[y] == kNoElement) {
        map[y] = v;
        queue.push_back(y);
      } else if (map[y] != v) {
        return std::nullopt;
      }
    }
  }
  if (visited) *visited = std::move(queue);
  return map;
}

// A generating set chosen greedily by largest closure, ties by smallest id.
std::vector<ElementId> compact_generators(const Subgroup& a) {
  const auto& g = a.group();
  std::vector<ElementId> gens;
  Bitset cur(g.order());
  cur.set(0);
  const auto elems = a.elements();
  while (cur.count() < a.order()) {
    ElementId best = kNoElement;
    std::size_t best_size = 0;
    Bitset best_set;
    for (auto x : elems) {
      if (cur.test(x)) continue;
      gens.push_back(x);
      auto c = g.closure(gens);
      gens.pop_back();
      auto sz = c.count();
      if (sz > best_size) {
        best = x;
        best_size = sz;
        best_set = std::move(c);
      }
    }
    gens.push_back(best);
    cur = std::move(best_set);
  }
  return gens;
}

// (element order, conjugacy class size) for every member.
std::vector<std::pair<std::size_t, std::size_t>> invariants(const Subgroup& a) {
  std::vector<std::pair<std::size_t, std::size_t>> inv(a.group().order(), {0, 0});
  for (const auto& cls : conjugacy_classes(a))
    for (auto x : cls) inv[x] = {a.group().element_order(x), cls.size()};
  return inv;
}

}  // namespace

GroupHom hom_build(const Subgroup& domain, const Subgroup& codomain,
                   const std::vector<std::pair<ElementId, ElementId>>& gen_images) {
  const auto& dg = domain.group();
  const auto& cg = codomain.group();
  std::vector<ElementId> gens, images;
  for (auto [x, y] : gen_images) {
    if (x >= dg.order() || !domain.contains(x))
      throw Error(ErrorCode::kDoesNotGenerate, "generator lies outside the domain");
    if (y >= cg.order()) throw Error(ErrorCode::kImageEscapesCodomain, "image id out of range");
    gens.push_back(x);
    images.push_back(y);
  }
  if (dg.closure(gens) != domain.members())
    throw Error(ErrorCode::kDoesNotGenerate, "listed elements do not generate the domain");
  auto map = extend(dg, cg, gens, images);
  if (!map) throw Error(ErrorCode::kNotAHomomorphism, "generator images violate a relation");
  Bitset seen(cg.order());
  std::size_t distinct = 0;
  bool escapes = false;
  domain.members().for_each([&](std::size_t x) {
    auto y = (*map)[x];
    if (!codomain.contains(y)) escapes = true;
    if (!seen.test(y)) {
      seen.set(y);
      ++distinct;
    }
  });
  if (escapes) throw Error(ErrorCode::kImageEscapesCodomain, "image is not contained in the codomain");
  if (distinct != domain.order()) throw Error(ErrorCode::kNotInjective, "homomorphism has a nontrivial kernel");
  return GroupHom(domain, codomain, std::move(*map));
}

GroupHom conjugation_hom(ElementId g, const Subgroup& q, const Subgroup& r) {
  const auto& grp = q.group();
  std::vector<ElementId> im(grp.order(), kNoElement);
  bool ok = true;
  q.members().for_each([&](std::size_t x) {
    auto y = grp.conj(static_cast<ElementId>(x), g);
    if (!r.contains(y)) ok = false;
    im[x] = y;
  });
  if (!ok) throw Error(ErrorCode::kConjugateEscapes, "conjugate of the domain is not contained in the codomain");
  return GroupHom(q, r, std::move(im));
}

GroupHom conjugation_iso(ElementId g, const Subgroup& q) {
  const auto& grp = q.group();
  std::vector<ElementId> im(grp.order(), kNoElement);
  Bitset img(grp.order());
  q.members().for_each([&](std::size_t x) {
    auto y = grp.conj(static_cast<ElementId>(x), g);
    im[x] = y;
    img.set(y);
  });
  return GroupHom(q, Subgroup(q.parent(), std::move(img)), std::move(im));
}

void for_each_isomorphism(const Subgroup& a, const Subgroup& b,
                          const std::function<bool(const GroupHom&)>& visit, std::size_t cap) {
  if (a.order() > cap || b.order() > cap)
    throw Error(ErrorCode::kOrderCapExceeded, "isomorphism search above order " + std::to_string(cap));
  if (a.order() != b.order()) return;
  const auto& ga = a.group();
  const auto& gb = b.group();
  const auto gens = compact_generators(a);
  const auto inv_a = invariants(a);
  const auto inv_b = invariants(b);
  const auto belems = b.elements();
  std::vector<std::vector<ElementId>> candidates(gens.size());
  for (std::size_t j = 0; j < gens.size(); ++j)
    for (auto y : belems)
      if (inv_b[y] == inv_a[gens[j]]) candidates[j].push_back(y);

  std::vector<ElementId> images(gens.size());
  bool stop = false;
  std::function<void(std::size_t)> dfs = [&](std::size_t level) {
    if (stop) return;
    std::vector<ElementId> prefix_gens(gens.begin(), gens.begin() + static_cast<std::ptrdiff_t>(level) + 1);
    for (auto y : candidates[level]) {
      images[level] = y;
      std::vector<ElementId> prefix_images(images.begin(), images.begin() + static_cast<std::ptrdiff_t>(level) + 1);
      std::vector<ElementId> visited;
      auto map = extend(ga, gb, prefix_gens, prefix_images, &visited);
      if (!map) continue;
      Bitset seen(gb.order());
      bool injective = true;
      for (auto x : visited) {
        auto v = (*map)[x];
        if (seen.test(v)) {
          injective = false;
          break;
        }
        seen.set(v);
      }
      if (!injective) continue;
      if (level + 1 == gens.size()) {
        if (!visit(GroupHom(a, b, std::move(*map)))) {
          stop = true;
          return;
        }
      } else {
        dfs(level + 1);
        if (stop) return;
      }
    }
  };
  if (gens.empty()) {
    visit(GroupHom::identity(a).with_codomain(b));
    return;
  }
  dfs(0);
}

std::optional<GroupHom> isomorphism_search(const Subgroup& a, const Subgroup& b, std::size_t cap) {
  if (a == b) {
    if (a.order() > cap) throw Error(ErrorCode::kOrderCapExceeded, "isomorphism search above order " + std::to_string(cap));
    return GroupHom::identity(a);
  }
  std::optional<GroupHom> out;
  for_each_isomorphism(
      a, b,
      [&](const GroupHom& h) {
        out = h;
        return false;
      },
      cap);
  return out;
}

std::optional<GroupHom> isomorphism_search(const GroupPtr& g, const GroupPtr& h, std::size_t cap) {
  return isomorphism_search(Subgroup::whole(g), Subgroup::whole(h), cap);
}

std::vector<GroupHom> automorphisms(const Subgroup& a, std::size_t cap) {
  std::vector<GroupHom> out;
  for_each_isomorphism(
      a, a,
      [&](const GroupHom& h) {
        out.push_back(h);
        return true;
      },
      cap);
  return out;
}

}  // namespace fuskit
