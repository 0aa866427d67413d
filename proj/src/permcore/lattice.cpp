#include "fuskit/lattice.hpp"

#include <algorithm>
#include <numeric>

#include "fuskit/error.hpp"

namespace fuskit {

std::vector<ElementId> generators_of(const Subgroup& h) {
  const auto& g = h.group();
  std::vector<ElementId> gens;
  Bitset cur(g.order());
  cur.set(0);
  h.members().for_each([&](std::size_t x) {
    if (!cur.test(x)) {
      gens.push_back(static_cast<ElementId>(x));
      cur = g.closure(gens);
    }
  });
  return gens;
}

namespace {

struct Found {
  Bitset members;
  std::vector<ElementId> gens;
};

std::vector<Found> enumerate_with_gens(const Subgroup& h, std::size_t order_cap) {
  const auto& g = h.group();
  if (h.order() > order_cap) {
    throw Error(ErrorCode::kOrderCapExceeded,
                "subgroup enumeration of order " + std::to_string(h.order()) + " exceeds cap");
  }
  std::vector<Found> found;
  std::unordered_map<Bitset, std::size_t, BitsetHash> seen;
  Bitset triv(g.order());
  triv.set(0);
  found.push_back({triv, {}});
  seen.emplace(triv, 0);
  const auto elems = h.elements();

  for (std::size_t head = 0; head < found.size(); ++head) {
    // Copy: `found` may reallocate while we extend it.
    const Bitset base = found[head].members;
    const std::vector<ElementId> base_gens = found[head].gens;
    const auto base_elems = base.indices();
    Bitset handled = base;
    for (auto x : elems) {
      if (handled.test(x)) continue;
      // <H, x> = <H, hx> for every h in H, and = <H, x^k> for k prime to |x|.
      const auto ord = g.element_order(x);
      ElementId pw = x;
      for (std::size_t k = 1; k < ord; ++k) {
        if (std::gcd(k, static_cast<std::size_t>(ord)) == 1)
          for (auto b : base_elems) handled.set(g.mul(b, pw));
        pw = g.mul(pw, x);
      }
      auto gens = base_gens;
      gens.push_back(x);
      Bitset k = g.closure(gens);
      if (seen.find(k) == seen.end()) {
        seen.emplace(k, found.size());
        found.push_back({std::move(k), std::move(gens)});
      }
    }
  }
  std::sort(found.begin(), found.end(), [](const Found& a, const Found& b) {
    auto oa = a.members.count(), ob = b.members.count();
    if (oa != ob) return oa < ob;
    return a.members < b.members;
  });
  return found;
}

}  // namespace

std::vector<Subgroup> enumerate_subgroups(const Subgroup& h, std::size_t order_cap) {
  std::vector<Subgroup> out;
  for (auto& f : enumerate_with_gens(h, order_cap)) out.emplace_back(h.parent(), std::move(f.members));
  return out;
}

std::vector<Subgroup> subgroups(const GroupPtr& g, std::size_t order_cap) {
  return enumerate_subgroups(Subgroup::whole(g), order_cap);
}

LatticePtr Lattice::build(GroupPtr group, std::size_t order_cap) {
  std::shared_ptr<Lattice> lat(new Lattice());
  lat->group_ = group;
  auto found = enumerate_with_gens(Subgroup::whole(group), order_cap);
  lat->subs_.reserve(found.size());
  lat->gens_.reserve(found.size());
  for (std::size_t i = 0; i < found.size(); ++i) {
    lat->index_.emplace(found[i].members, i);
    lat->subs_.emplace_back(group, std::move(found[i].members));
    lat->gens_.push_back(std::move(found[i].gens));
  }
  return lat;
}

std::optional<std::size_t> Lattice::find(const Bitset& members) const {
  auto it = index_.find(members);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Lattice::index_of(const Bitset& members) const {
  auto i = find(members);
  if (!i) throw Error(ErrorCode::kNotASubgroup, "member set is not a subgroup of " + group_->name());
  return *i;
}

void Lattice::fill_local() const {
  std::call_once(local_once_, [this] {
    const auto& g = *group_;
    const std::size_t n = subs_.size();
    normalizer_.assign(n, Bitset(g.order()));
    centralizer_.assign(n, Bitset(g.order()));
    for (std::size_t i = 0; i < n; ++i) {
      const auto& gens = gens_[i];
      for (std::size_t x = 0; x < g.order(); ++x) {
        bool norm = true, cent = true;
        for (auto s : gens) {
          auto c = g.conj(s, static_cast<ElementId>(x));
          if (c != s) cent = false;
          if (!subs_[i].contains(c)) {
            norm = false;
            break;
          }
        }
        if (norm) normalizer_[i].set(x);
        if (norm && cent) centralizer_[i].set(x);
      }
    }
    maximal_.assign(n, {});
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<std::size_t> proper;
      for (std::size_t i = 0; i < j; ++i)
        if (subs_[i].order() < subs_[j].order() && subs_[j].contains(subs_[i])) proper.push_back(i);
      // Descending order: a maximal element is not below any larger candidate.
      for (auto it = proper.rbegin(); it != proper.rend(); ++it) {
        bool covered = false;
        for (auto m : maximal_[j])
          if (subs_[m].contains(subs_[*it])) {
            covered = true;
            break;
          }
        if (!covered) maximal_[j].push_back(*it);
      }
      std::sort(maximal_[j].begin(), maximal_[j].end());
    }
  });
}

const std::vector<std::size_t>& Lattice::maximal_subgroups(std::size_t i) const {
  fill_local();
  return maximal_[i];
}

const Bitset& Lattice::normalizer(std::size_t i) const {
  fill_local();
  return normalizer_[i];
}

const Bitset& Lattice::centralizer(std::size_t i) const {
  fill_local();
  return centralizer_[i];
}

std::vector<std::size_t> Lattice::below(std::size_t i) const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j <= i; ++j)
    if (subs_[i].contains(subs_[j])) out.push_back(j);
  return out;
}

std::vector<std::size_t> Lattice::above(std::size_t i) const {
  std::vector<std::size_t> out;
  for (std::size_t j = i; j < subs_.size(); ++j)
    if (subs_[j].contains(subs_[i])) out.push_back(j);
  return out;
}

}  // namespace fuskit
