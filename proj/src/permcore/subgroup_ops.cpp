#include "fuskit/subgroup_ops.hpp"

#include <algorithm>
#include <functional>

#include "fuskit/error.hpp"
#include "fuskit/lattice.hpp"

namespace fuskit {

bool is_prime(std::size_t n) {
  if (n < 2) return false;
  for (std::size_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::size_t p_part(std::size_t n, std::size_t p) {
  if (n == 0 || p < 2) throw Error(ErrorCode::kValidationError, "p_part needs n >= 1 and p >= 2");
  std::size_t r = 1;
  while (n % p == 0) {
    n /= p;
    r *= p;
  }
  return r;
}

bool is_p_power(std::size_t n, std::size_t p) { return n >= 1 && p_part(n, p) == n; }

std::vector<std::size_t> prime_divisors(std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

namespace {

void require_same_parent(const Subgroup& a, const Subgroup& b) {
  if (!a.same_parent(b)) throw Error(ErrorCode::kNotASubgroup, "subgroups belong to different groups");
}

// Largest M >= N, M normal in H, with |M/N| satisfying `accept`; N must be
// normal in H. Built as the join of N with every normal closure <x^H> whose
// image modulo N is acceptable.
Subgroup largest_normal_mod(const Subgroup& h, const Subgroup& n,
                            const std::function<bool(std::size_t)>& accept) {
  const auto& g = h.group();
  Subgroup acc = n;
  for (const auto& cls : conjugacy_classes(h)) {
    const ElementId x = cls.front();
    if (acc.contains(x)) continue;
    // Order of xN.
    std::size_t ord = 1;
    ElementId cur = x;
    while (!n.contains(cur)) {
      cur = g.mul(cur, x);
      ++ord;
    }
    if (!accept(ord)) continue;
    Subgroup closure = Subgroup::generated(h.parent(), cls);
    Subgroup c = join(closure, n);
    if (accept(c.order() / n.order())) acc = join(acc, c);
  }
  return acc;
}

}  // namespace

bool is_p_group(const Subgroup& h, std::size_t p) { return is_p_power(h.order(), p); }

bool is_normal_in(const Subgroup& q, const Subgroup& h) {
  require_same_parent(q, h);
  if (!h.contains(q)) return false;
  const auto& g = q.group();
  const auto qgens = generators_of(q);
  const auto hgens = generators_of(h);
  for (auto s : qgens)
    for (auto x : hgens)
      if (!q.contains(g.conj(s, x))) return false;
  return true;
}

Subgroup intersect(const Subgroup& a, const Subgroup& b) {
  require_same_parent(a, b);
  return Subgroup(a.parent(), a.members() & b.members());
}

Subgroup join(const Subgroup& a, const Subgroup& b) {
  require_same_parent(a, b);
  if (a.contains(b)) return a;
  if (b.contains(a)) return b;
  auto gens = generators_of(a);
  for (auto x : generators_of(b)) gens.push_back(x);
  return Subgroup::generated(a.parent(), gens);
}

Subgroup set_product(const Subgroup& a, const Subgroup& b) {
  auto j = join(a, b);
  auto expected = a.order() * b.order() / intersect(a, b).order();
  if (j.order() != expected)
    throw Error(ErrorCode::kProductNotASubgroup, "AB != BA, so the set product is not a subgroup");
  return j;
}

Subgroup center(const Subgroup& h) { return centralizer(h, h); }

Subgroup normalizer(const Subgroup& h, const Subgroup& q) {
  require_same_parent(h, q);
  const auto& g = h.group();
  const auto qgens = generators_of(q);
  Bitset out(g.order());
  h.members().for_each([&](std::size_t x) {
    for (auto s : qgens)
      if (!q.contains(g.conj(s, static_cast<ElementId>(x)))) return;
    out.set(x);
  });
  return Subgroup(h.parent(), std::move(out));
}

Subgroup centralizer(const Subgroup& h, const Subgroup& q) {
  require_same_parent(h, q);
  const auto& g = h.group();
  const auto qgens = generators_of(q);
  Bitset out(g.order());
  h.members().for_each([&](std::size_t x) {
    for (auto s : qgens)
      if (g.mul(s, static_cast<ElementId>(x)) != g.mul(static_cast<ElementId>(x), s)) return;
    out.set(x);
  });
  return Subgroup(h.parent(), std::move(out));
}

Subgroup commutator_subgroup(const Subgroup& a, const Subgroup& b) {
  require_same_parent(a, b);
  const auto& g = a.group();
  std::vector<ElementId> comms;
  Bitset seen(g.order());
  a.members().for_each([&](std::size_t x) {
    b.members().for_each([&](std::size_t y) {
      auto c = g.commutator(static_cast<ElementId>(x), static_cast<ElementId>(y));
      if (!seen.test(c)) {
        seen.set(c);
        comms.push_back(c);
      }
    });
  });
  return Subgroup::generated(a.parent(), comms);
}

Subgroup omega1(const Subgroup& h, std::size_t p) {
  const auto& g = h.group();
  std::vector<ElementId> gens;
  h.members().for_each([&](std::size_t x) {
    if (g.element_order(static_cast<ElementId>(x)) == p) gens.push_back(static_cast<ElementId>(x));
  });
  return Subgroup::generated(h.parent(), gens);
}

Subgroup thompson_subgroup(const Subgroup& h) {
  const auto& g = h.group();
  std::vector<Subgroup> abelian;
  std::size_t best = 0;
  for (auto& s : enumerate_subgroups(h)) {
    auto gens = generators_of(s);
    bool ab = true;
    for (std::size_t i = 0; ab && i < gens.size(); ++i)
      for (std::size_t j = i + 1; ab && j < gens.size(); ++j)
        ab = g.mul(gens[i], gens[j]) == g.mul(gens[j], gens[i]);
    if (!ab) continue;
    best = std::max(best, s.order());
    abelian.push_back(std::move(s));
  }
  Subgroup acc = Subgroup::trivial(h.parent());
  for (const auto& s : abelian)
    if (s.order() == best) acc = join(acc, s);
  return acc;
}

Subgroup sylow(const Subgroup& h, std::size_t p) {
  const auto& g = h.group();
  Subgroup cur = Subgroup::trivial(h.parent());
  const auto target = p_part(h.order(), p);
  while (cur.order() < target) {
    auto norm = normalizer(h, cur);
    bool grown = false;
    for (auto x : norm.elements()) {
      if (cur.contains(x) || !is_p_power(g.element_order(x), p)) continue;
      std::vector<ElementId> one{x};
      cur = join(cur, Subgroup::generated(h.parent(), one));
      grown = true;
      break;
    }
    if (!grown) throw std::logic_error("sylow: maximal p-subgroup below the Sylow order");
  }
  return cur;
}

Subgroup core_p(const Subgroup& h, std::size_t p) {
  return largest_normal_mod(h, Subgroup::trivial(h.parent()),
                            [p](std::size_t n) { return is_p_power(n, p); });
}

Subgroup core_pprime(const Subgroup& h, std::size_t p) {
  return largest_normal_mod(h, Subgroup::trivial(h.parent()),
                            [p](std::size_t n) { return n % p != 0; });
}

Subgroup normal_closure(const Subgroup& h, const Subgroup& s) {
  require_same_parent(h, s);
  const auto& g = h.group();
  std::vector<ElementId> gens;
  Bitset seen(g.order());
  const auto sgens = generators_of(s);
  h.members().for_each([&](std::size_t x) {
    for (auto y : sgens) {
      auto c = g.conj(y, static_cast<ElementId>(x));
      if (!seen.test(c)) {
        seen.set(c);
        gens.push_back(c);
      }
    }
  });
  return Subgroup::generated(h.parent(), gens);
}

std::vector<std::vector<ElementId>> conjugacy_classes(const Subgroup& h) {
  const auto& g = h.group();
  const auto hgens = generators_of(h);
  Bitset done(g.order());
  std::vector<std::vector<ElementId>> out;
  h.members().for_each([&](std::size_t x0) {
    if (done.test(x0)) return;
    std::vector<ElementId> cls{static_cast<ElementId>(x0)};
    done.set(x0);
    for (std::size_t head = 0; head < cls.size(); ++head) {
      for (auto s : hgens) {
        auto c = g.conj(cls[head], s);
        if (!done.test(c)) {
          done.set(c);
          cls.push_back(c);
        }
      }
    }
    std::sort(cls.begin(), cls.end());
    out.push_back(std::move(cls));
  });
  return out;
}

Subgroup center_modulo(const Subgroup& h, const Subgroup& n) {
  const auto& g = h.group();
  const auto hgens = generators_of(h);
  Bitset out(g.order());
  h.members().for_each([&](std::size_t x) {
    for (auto s : hgens)
      if (!n.contains(g.commutator(static_cast<ElementId>(x), s))) return;
    out.set(x);
  });
  return Subgroup(h.parent(), std::move(out));
}

std::vector<Subgroup> upper_central_series(const Subgroup& q) {
  std::vector<Subgroup> series{Subgroup::trivial(q.parent())};
  for (;;) {
    auto next = center_modulo(q, series.back());
    if (next == series.back()) break;
    series.push_back(std::move(next));
  }
  return series;
}

bool is_p_soluble_group(const Subgroup& h, std::size_t p) {
  Subgroup n = Subgroup::trivial(h.parent());
  while (n.order() < h.order()) {
    auto m = largest_normal_mod(h, n, [p](std::size_t k) { return k % p != 0; });
    auto m2 = largest_normal_mod(h, m, [p](std::size_t k) { return is_p_power(k, p); });
    if (m2 == n) return false;
    n = std::move(m2);
  }
  return true;
}

Subgroup standard_subgroup(const GroupPtr& g, SubgroupKind kind, const SubgroupArgs& args) {
  const Subgroup whole = Subgroup::whole(g);
  auto arg = [&](const std::optional<Subgroup>& s, const char* what) -> const Subgroup& {
    if (!s) throw Error(ErrorCode::kNotASubgroup, std::string("missing subgroup argument ") + what);
    if (!s->same_parent(whole))
      throw Error(ErrorCode::kNotASubgroup, std::string("argument ") + what + " is not a subgroup of " + g->name());
    return *s;
  };
  auto prime = [&] {
    if (!is_prime(args.p)) throw Error(ErrorCode::kValidationError, "a prime p is required");
    return args.p;
  };
  switch (kind) {
    case SubgroupKind::kCenter: return center(whole);
    case SubgroupKind::kNormalizer: return normalizer(whole, arg(args.a, "Q"));
    case SubgroupKind::kCentralizer: return centralizer(whole, arg(args.a, "Q"));
    case SubgroupKind::kCommutator: return commutator_subgroup(arg(args.a, "A"), arg(args.b, "B"));
    case SubgroupKind::kOmega1: return omega1(whole, prime());
    case SubgroupKind::kThompsonJ: return thompson_subgroup(whole);
    case SubgroupKind::kSylow: return sylow(whole, prime());
    case SubgroupKind::kCoreP: return core_p(whole, prime());
    case SubgroupKind::kCorePPrime: return core_pprime(whole, prime());
    case SubgroupKind::kJoin: return join(arg(args.a, "A"), arg(args.b, "B"));
    case SubgroupKind::kSetProduct: return set_product(arg(args.a, "A"), arg(args.b, "B"));
  }
  throw std::logic_error("unknown subgroup kind");
}

Subgroup QuotientGroup::image(const Subgroup& s) const {
  Bitset b(group->order());
  s.members().for_each([&](std::size_t x) { b.set(projection[x]); });
  return Subgroup(group, std::move(b));
}

Subgroup QuotientGroup::preimage(const Subgroup& s) const {
  Bitset b(source.group().order());
  source.members().for_each([&](std::size_t x) {
    if (s.contains(projection[x])) b.set(x);
  });
  return Subgroup(source.parent(), std::move(b));
}

GroupHom QuotientGroup::as_hom() const { return GroupHom(source, Subgroup::whole(group), projection); }

QuotientGroup quotient_group(const Subgroup& h, const Subgroup& n) {
  require_same_parent(h, n);
  if (!is_normal_in(n, h)) throw Error(ErrorCode::kNotNormal, "the kernel is not normal in the source");
  const auto& g = h.group();
  std::vector<ElementId> coset_of(g.order(), kNoElement);
  std::vector<ElementId> reps;
  const auto nel = n.elements();
  h.members().for_each([&](std::size_t x) {
    if (coset_of[x] != kNoElement) return;
    auto c = static_cast<ElementId>(reps.size());
    reps.push_back(static_cast<ElementId>(x));
    for (auto y : nel) coset_of[g.mul(y, static_cast<ElementId>(x))] = c;
  });
  const std::size_t k = reps.size();
  auto action = [&](ElementId x) {
    std::vector<Point> im(k);
    for (std::size_t c = 0; c < k; ++c) im[c] = coset_of[g.mul(reps[c], x)];
    return Perm(std::move(im));
  };
  std::vector<Perm> gens;
  for (auto x : generators_of(h)) gens.push_back(action(x));
  auto qname = g.name() + "/" + std::to_string(n.order());
  auto qg = Group::from_generators(k, std::move(gens), std::move(qname));
  std::vector<ElementId> proj(g.order(), kNoElement);
  // The action only depends on the coset, so compute it once per coset.
  std::vector<ElementId> coset_image(k, kNoElement);
  h.members().for_each([&](std::size_t x) {
    auto c = coset_of[x];
    if (coset_image[c] == kNoElement) coset_image[c] = qg->id_of(action(static_cast<ElementId>(x)));
    proj[x] = coset_image[c];
  });
  return QuotientGroup{qg, std::move(proj), h, n};
}

QuotientGroup quotient_group(const GroupPtr& g, const Subgroup& n) {
  return quotient_group(Subgroup::whole(g), n);
}

}  // namespace fuskit
