#include "fuskit/group.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "fuskit/error.hpp"

namespace fuskit {

namespace {

constexpr std::size_t kMulTableCap = 4096;

struct PermHash {
  std::size_t operator()(const Perm& p) const {
    std::size_t h = 1469598103934665603ULL;
    for (auto x : p.images()) h = (h ^ x) * 1099511628211ULL;
    return h;
  }
};

}  // namespace

Perm::Perm(std::vector<Point> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    auto x = images_[i];
    if (x >= images_.size() || seen[x]) {
      throw Error(ErrorCode::kNotAPermutation,
                  "image " + std::to_string(x) + " at position " + std::to_string(i) +
                      " is out of range or repeated");
    }
    seen[x] = true;
  }
}

Perm Perm::identity(std::size_t degree) {
  std::vector<Point> im(degree);
  std::iota(im.begin(), im.end(), Point{0});
  return Perm(std::move(im));
}

Perm Perm::from_cycles(std::size_t degree, const std::vector<std::vector<Point>>& cycles) {
  std::vector<Point> im(degree);
  std::iota(im.begin(), im.end(), Point{0});
  for (const auto& cyc : cycles) {
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      if (cyc[i] >= degree) throw Error(ErrorCode::kNotAPermutation, "cycle point out of range");
      im[cyc[i]] = cyc[(i + 1) % cyc.size()];
    }
  }
  return Perm(std::move(im));
}

bool Perm::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

Perm Perm::inverse() const {
  Perm r;
  r.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) r.images_[images_[i]] = static_cast<Point>(i);
  return r;
}

Perm operator*(const Perm& a, const Perm& b) {
  Perm r;
  r.images_.resize(a.images_.size());
  for (std::size_t i = 0; i < a.images_.size(); ++i) r.images_[i] = b.images_[a.images_[i]];
  return r;
}

std::string Perm::to_cycle_string() const {
  std::ostringstream os;
  std::vector<bool> done(images_.size(), false);
  bool any = false;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (done[i] || images_[i] == i) continue;
    any = true;
    os << '(';
    std::size_t j = i;
    bool first = true;
    while (!done[j]) {
      done[j] = true;
      if (!first) os << ' ';
      os << j;
      first = false;
      j = images_[j];
    }
    os << ')';
  }
  if (!any) return "()";
  return os.str();
}

std::size_t default_order_cap() {
  if (const char* env = std::getenv("FUSKIT_ORDER_CAP")) {
    char* end = nullptr;
    auto v = std::strtoull(env, &end, 10);
    if (end != env && v > 0) return static_cast<std::size_t>(v);
  }
  return 20000;
}

GroupPtr Group::from_generators(std::size_t degree, std::vector<Perm> gens, std::string name,
                                std::size_t order_cap) {
  for (const auto& g : gens) {
    if (g.degree() != degree) {
      throw Error(ErrorCode::kNotAPermutation,
                  "generator of degree " + std::to_string(g.degree()) + " in a group of degree " +
                      std::to_string(degree));
    }
  }
  std::shared_ptr<Group> grp(new Group());
  grp->degree_ = degree;
  grp->name_ = std::move(name);
  grp->generators_ = std::move(gens);

  // Orbit closure of the identity under right multiplication by generators.
  std::unordered_set<Perm, PermHash> seen;
  std::vector<Perm> queue;
  queue.push_back(Perm::identity(degree));
  seen.insert(queue.back());
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (const auto& g : grp->generators_) {
      Perm next = queue[head] * g;
      if (seen.insert(next).second) {
        if (seen.size() > order_cap) {
          throw Error(ErrorCode::kOrderCapExceeded,
                      "group '" + grp->name_ + "' exceeds order cap " + std::to_string(order_cap));
        }
        queue.push_back(std::move(next));
      }
    }
  }
  std::sort(queue.begin(), queue.end());
  grp->elements_ = std::move(queue);
  const std::size_t n = grp->elements_.size();

  grp->inverse_.resize(n);
  for (std::size_t i = 0; i < n; ++i) grp->inverse_[i] = grp->id_of(grp->elements_[i].inverse());

  if (n <= kMulTableCap) {
    // Right-multiplication by generators, then fill each row along a BFS
    // spanning tree of the Cayley graph.
    const std::size_t k = grp->generators_.size();
    std::vector<ElementId> gen_ids(k);
    for (std::size_t j = 0; j < k; ++j) gen_ids[j] = grp->id_of(grp->generators_[j]);
    std::vector<ElementId> right(n * k);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t j = 0; j < k; ++j)
        right[x * k + j] = grp->id_of(grp->elements_[x] * grp->generators_[j]);
    std::vector<ElementId> parent(n, kNoElement), via(n, 0), bfs;
    bfs.push_back(0);
    parent[0] = 0;
    for (std::size_t head = 0; head < bfs.size(); ++head) {
      auto y = bfs[head];
      for (std::size_t j = 0; j < k; ++j) {
        auto z = right[y * k + j];
        if (parent[z] == kNoElement) {
          parent[z] = y;
          via[z] = static_cast<ElementId>(j);
          bfs.push_back(z);
        }
      }
    }
    grp->mul_table_.assign(n * n, 0);
    for (std::size_t x = 0; x < n; ++x) {
      ElementId* row = &grp->mul_table_[x * n];
      row[0] = static_cast<ElementId>(x);
      for (std::size_t h = 1; h < bfs.size(); ++h) {
        auto y = bfs[h];
        row[y] = right[row[parent[y]] * k + via[y]];
      }
    }
  }

  grp->element_order_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t ord = 1;
    ElementId cur = static_cast<ElementId>(i);
    while (cur != 0) {
      cur = grp->mul(cur, static_cast<ElementId>(i));
      ++ord;
    }
    grp->element_order_[i] = ord;
  }
  return grp;
}

std::optional<ElementId> Group::find(const Perm& perm) const {
  auto it = std::lower_bound(elements_.begin(), elements_.end(), perm);
  if (it == elements_.end() || *it != perm) return std::nullopt;
  return static_cast<ElementId>(it - elements_.begin());
}

ElementId Group::id_of(const Perm& perm) const {
  auto id = find(perm);
  if (!id) throw Error(ErrorCode::kNotASubgroup, "permutation " + perm.to_cycle_string() + " not in group");
  return *id;
}

ElementId Group::mul(ElementId a, ElementId b) const {
  if (!mul_table_.empty()) return mul_table_[static_cast<std::size_t>(a) * elements_.size() + b];
  return id_of(elements_[a] * elements_[b]);
}

bool Group::is_abelian() const {
  for (const auto& a : generators_)
    for (const auto& b : generators_)
      if (a * b != b * a) return false;
  return true;
}

bool Group::same_as(const Group& other) const {
  return this == &other || (degree_ == other.degree_ && elements_ == other.elements_);
}

Bitset Group::closure(std::span<const ElementId> gens) const {
  Bitset out(order());
  std::vector<ElementId> queue{0};
  out.set(0);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (auto g : gens) {
      auto z = mul(queue[head], g);
      if (!out.test(z)) {
        out.set(z);
        queue.push_back(z);
      }
    }
  }
  return out;
}

Subgroup Subgroup::checked(GroupPtr parent, Bitset members) {
  const auto& g = *parent;
  if (members.size() != g.order() || !members.test(0))
    throw Error(ErrorCode::kNotASubgroup, "member set lacks the identity or has the wrong size");
  auto elems = members.indices();
  for (auto a : elems) {
    if (!members.test(g.inv(a))) throw Error(ErrorCode::kNotASubgroup, "not closed under inverses");
    for (auto b : elems)
      if (!members.test(g.mul(a, b)))
        throw Error(ErrorCode::kNotASubgroup, "not closed under multiplication");
  }
  return Subgroup(std::move(parent), std::move(members));
}

Subgroup Subgroup::whole(GroupPtr parent) {
  Bitset b(parent->order());
  for (std::size_t i = 0; i < parent->order(); ++i) b.set(i);
  return Subgroup(std::move(parent), std::move(b));
}

Subgroup Subgroup::trivial(GroupPtr parent) {
  Bitset b(parent->order());
  b.set(0);
  return Subgroup(std::move(parent), std::move(b));
}

Subgroup Subgroup::generated(GroupPtr parent, std::span<const ElementId> gens) {
  auto members = parent->closure(gens);
  return Subgroup(std::move(parent), std::move(members));
}

bool Subgroup::same_parent(const Subgroup& other) const {
  if (parent_ == other.parent_) return true;
  if (!parent_ || !other.parent_) return false;
  return parent_->same_as(*other.parent_);
}

GroupHom GroupHom::identity(const Subgroup& s) {
  std::vector<ElementId> im(s.group().order(), kNoElement);
  s.members().for_each([&](std::size_t x) { im[x] = static_cast<ElementId>(x); });
  return GroupHom(s, s, std::move(im));
}

GroupHom GroupHom::inclusion(const Subgroup& from, const Subgroup& into) {
  auto h = identity(from);
  return h.with_codomain(into);
}

Subgroup GroupHom::image() const {
  Bitset b(codomain_.group().order());
  domain_.members().for_each([&](std::size_t x) { b.set(images_[x]); });
  return Subgroup(codomain_.parent(), std::move(b));
}

Subgroup GroupHom::image_of(const Subgroup& sub) const {
  Bitset b(codomain_.group().order());
  sub.members().for_each([&](std::size_t x) { b.set(images_[x]); });
  return Subgroup(codomain_.parent(), std::move(b));
}

GroupHom GroupHom::restrict_to(const Subgroup& sub) const {
  std::vector<ElementId> im(images_.size(), kNoElement);
  sub.members().for_each([&](std::size_t x) { im[x] = images_[x]; });
  return GroupHom(sub, codomain_, std::move(im));
}

GroupHom GroupHom::with_codomain(Subgroup codomain) const {
  return GroupHom(domain_, std::move(codomain), images_);
}

GroupHom GroupHom::inverse() const {
  auto img = image();
  std::vector<ElementId> im(codomain_.group().order(), kNoElement);
  domain_.members().for_each([&](std::size_t x) { im[images_[x]] = static_cast<ElementId>(x); });
  return GroupHom(img, domain_, std::move(im));
}

bool GroupHom::is_identity() const {
  bool ok = domain_.same_parent(codomain_);
  domain_.members().for_each([&](std::size_t x) { ok = ok && images_[x] == x; });
  return ok;
}

GroupHom compose(const GroupHom& first, const GroupHom& second) {
  std::vector<ElementId> im(first.images_.size(), kNoElement);
  first.domain_.members().for_each([&](std::size_t x) { im[x] = second.images_[first.images_[x]]; });
  return GroupHom(first.domain_, second.codomain_, std::move(im));
}

}  // namespace fuskit
