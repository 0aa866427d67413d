#include "fuskit/quotients.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "fuskit/closure_analysis.hpp"
#include "fuskit/error.hpp"
#include "fuskit/subsystems.hpp"

namespace fuskit {

namespace {

void require_strongly_closed(const IsoTable& f, std::size_t q) {
  if (!is_strongly_closed(f, q)) throw Error(ErrorCode::kNotStronglyClosed, "quotient needs a strongly closed subgroup");
}

std::string describe(const IsoRef& m) {
  return std::to_string(m.domain) + "->" + std::to_string(m.codomain);
}

IsoRef compose_ref(const Lattice& lat, const IsoRef& a, const Images& b, std::uint32_t cod) {
  IsoRef out{a.domain, cod, Images(a.images.size(), kNoElement)};
  lat[a.domain].members().for_each([&](std::size_t x) { out.images[x] = b[a.images[x]]; });
  return out;
}

// The coset-correspondence map between two quotient carriers: for each x in
// `src`, from.projection[x] -> to.projection[x]. Throws when not a bijection.
GroupHom correspondence(const QuotientGroup& from, const Subgroup& dom, const QuotientGroup& to, const Subgroup& src) {
  const auto& fg = *from.group;
  Images im(fg.order(), kNoElement);
  src.members().for_each([&](std::size_t x) {
    auto a = from.projection[x];
    auto b = to.projection[x];
    if (im[a] != kNoElement && im[a] != b) throw std::logic_error("coset correspondence is not well defined");
    im[a] = b;
  });
  GroupHom h(dom, Subgroup::whole(to.group), std::move(im));
  if (h.image().order() != dom.order() || dom.order() != to.group->order())
    throw std::logic_error("coset correspondence is not a bijection");
  return h;
}

}  // namespace

std::size_t QuotientContext::image_index(const Subgroup& r) const { return lattice->index_of(quotient.image(r)); }

IsoRef QuotientContext::induced(const IsoTable& f, const IsoRef& phi) const {
  const auto& lat = *f.lattice();
  const auto& qg = *quotient.group;
  IsoRef out;
  out.domain = static_cast<std::uint32_t>(image_index(lat[phi.domain]));
  out.codomain = static_cast<std::uint32_t>(image_index(lat[phi.codomain]));
  out.images.assign(qg.order(), kNoElement);
  lat[phi.domain].members().for_each([&](std::size_t x) {
    auto a = quotient.projection[x];
    auto b = quotient.projection[phi.images[x]];
    if (out.images[a] != kNoElement && out.images[a] != b)
      throw Error(ErrorCode::kNotStronglyClosed, "morphism does not induce a map on the quotient");
    out.images[a] = b;
  });
  return out;
}

QuotientContext quotient_context(const IsoTable& f, std::size_t q) {
  const auto& lat = *f.lattice();
  if (!f.is_object(q) || !is_normal_in(lat[q], f.carrier()))
    throw Error(ErrorCode::kNotNormalInP, "quotient needs a subgroup normal in the carrier");
  auto quotient = quotient_group(f.carrier(), lat[q]);
  auto qlat = Lattice::build(quotient.group);
  return QuotientContext{std::move(quotient), std::move(qlat), q};
}

FusionSystem factor_system(const FusionSystem& f, std::size_t q) { return factor_system(f, quotient_context(f, q)); }

FusionSystem factor_system(const FusionSystem& f, const QuotientContext& ctx) {
  const auto& lat = *f.lattice();
  const auto& qs = lat[ctx.kernel];
  TableDraft d{ctx.lattice, ctx.lattice->whole_index(), f.p(), "factor", {}};
  d.buckets.resize(ctx.lattice->size());
  for (auto r : f.objects()) {
    if (!lat[r].contains(qs)) continue;
    for (const auto& iso : f.isos_from(r)) {
      bool keeps = true;
      qs.members().for_each([&](std::size_t x) { keeps = keeps && qs.contains(iso.images[x]); });
      if (!keeps) continue;
      auto ind = ctx.induced(f, {static_cast<std::uint32_t>(r), iso.codomain, iso.images});
      d.buckets[ind.domain].push_back(Iso{ind.codomain, std::move(ind.images)});
    }
  }
  return FusionSystem::from_closed(std::move(d));
}

PreFusionSystem bar_system(const FusionSystem& f, std::size_t q) {
  require_strongly_closed(f, q);
  return bar_system(f, quotient_context(f, q));
}

PreFusionSystem bar_system(const FusionSystem& f, const QuotientContext& ctx) {
  require_strongly_closed(f, ctx.kernel);
  TableDraft d{ctx.lattice, ctx.lattice->whole_index(), f.p(), "bar", {}};
  d.buckets.resize(ctx.lattice->size());
  for (const auto& phi : f.all_isos()) {
    auto ind = ctx.induced(f, phi);
    d.buckets[ind.domain].push_back(Iso{ind.codomain, std::move(ind.images)});
  }
  return PreFusionSystem(std::move(d));
}

FusionSystem generated_bar(const FusionSystem& f, std::size_t q) {
  require_strongly_closed(f, q);
  return generated_bar(f, quotient_context(f, q));
}

FusionSystem generated_bar(const FusionSystem& f, const QuotientContext& ctx) {
  auto bar = bar_system(f, ctx);
  return close_fusion(ctx.lattice, ctx.lattice->whole_index(), f.p(), "generated-bar", bar.all_isos());
}

FusionCheck prefusion_is_fusion(const IsoTable& pre) {
  const auto& lat = *pre.lattice();
  const auto& g = *lat.group();
  auto fail = [](std::string kind, std::vector<IsoRef> maps, std::string text) {
    return FusionCheck{false, FusionWitness{std::move(kind), std::move(maps), std::move(text)}};
  };
  auto inner = inner_buckets(pre.lattice(), pre.carrier_index());
  for (auto i : pre.objects())
    for (const auto& iso : inner[i])
      if (!pre.contains(i, iso.codomain, iso.images)) {
        IsoRef m{static_cast<std::uint32_t>(i), iso.codomain, iso.images};
        return fail("missing-conjugation", {m}, "conjugation " + describe(m) + " is missing");
      }
  for (const auto& a : pre.all_isos()) {
    for (auto m : lat.maximal_subgroups(a.domain)) {
      IsoRef r{static_cast<std::uint32_t>(m), 0, Images(g.order(), kNoElement)};
      Bitset img(g.order());
      lat[m].members().for_each([&](std::size_t x) {
        r.images[x] = a.images[x];
        img.set(a.images[x]);
      });
      r.codomain = static_cast<std::uint32_t>(lat.index_of(img));
      if (!pre.contains(r.domain, r.codomain, r.images))
        return fail("missing-restriction", {a, r}, "restriction " + describe(r) + " of " + describe(a) + " is missing");
    }
  }
  for (const auto& a : pre.all_isos()) {
    IsoRef inv{a.codomain, a.domain, Images(g.order(), kNoElement)};
    lat[a.domain].members().for_each([&](std::size_t x) { inv.images[a.images[x]] = static_cast<ElementId>(x); });
    if (!pre.contains(inv.domain, inv.codomain, inv.images))
      return fail("missing-inverse", {a}, "inverse of " + describe(a) + " is missing");
  }
  for (const auto& a : pre.all_isos()) {
    for (const auto& b : pre.isos_from(a.codomain)) {
      auto c = compose_ref(lat, a, b.images, b.codomain);
      if (!pre.contains(c.domain, c.codomain, c.images)) {
        IsoRef bref{a.codomain, b.codomain, b.images};
        return fail("missing-composite", {a, bref},
                    "composite " + describe(a) + " then " + describe(bref) + " is missing");
      }
    }
  }
  return {};
}

bool satisfies_functor_condition(const FusionSystem& source, const FusionSystem& target, const GroupHom& carrier) {
  const auto& lat = *source.lattice();
  const auto& tlat = *target.lattice();
  const auto& tg = *tlat.group();
  for (const auto& phi : source.all_isos()) {
    Images m(tg.order(), kNoElement);
    bool defined = true;
    lat[phi.domain].members().for_each([&](std::size_t x) {
      auto a = carrier(static_cast<ElementId>(x));
      auto b = carrier(phi.images[x]);
      if (m[a] != kNoElement && m[a] != b) defined = false;
      m[a] = b;
    });
    if (!defined) return false;
    auto dom = tlat.find(carrier.image_of(lat[phi.domain]).members());
    auto cod = tlat.find(carrier.image_of(lat[phi.codomain]).members());
    if (!dom || !cod || !target.contains(*dom, *cod, m)) return false;
  }
  return true;
}

FusionSystemMorphism quotient_morphism(const FusionSystem& f, std::size_t q, QuotientTarget target) {
  require_strongly_closed(f, q);
  auto ctx = quotient_context(f, q);
  auto image = generated_bar(f, ctx);
  if (target == QuotientTarget::kFactor) {
    auto factor = factor_system(f, ctx);
    if (!bar_system(f, ctx).same_table(factor))
      throw Error(ErrorCode::kImageNotAFusionSystem, "bar image does not coincide with the factor system");
    image = std::move(factor);
  }
  auto carrier = ctx.quotient.as_hom();
  if (!satisfies_functor_condition(f, image, carrier))
    throw Error(ErrorCode::kNotAFunctor, "projection does not carry morphisms into the target");
  return FusionSystemMorphism{f, std::move(image), std::move(carrier), (*f.lattice())[q]};
}

bool ClosureTransferReport::holds() const {
  return std::all_of(parts.begin(), parts.end(), [](const ClosureTransferPart& p) { return p.holds; });
}

ClosureTransferReport closure_transfer(const FusionSystem& f, std::size_t q, bool require_saturated) {
  require_strongly_closed(f, q);
  const bool saturated = f.saturated();
  if (require_saturated && !saturated)
    throw Error(ErrorCode::kNotSaturated, "strong-closure transfer needs a saturated system");
  const auto& lat = *f.lattice();
  auto ctx = quotient_context(f, q);
  auto fq = factor_system(f, ctx);

  auto bijection = [&](const char* name, auto closed_up, auto closed_down) {
    ClosureTransferPart part{name, {}, {}, true};
    std::set<std::size_t> images;
    for (auto r : f.objects())
      if (lat[r].contains(lat[q]) && closed_up(f, r)) {
        part.upstairs.push_back(r);
        images.insert(ctx.image_index(lat[r]));
      }
    for (auto s : fq.objects())
      if (closed_down(fq, s)) part.downstairs.push_back(s);
    part.holds = images.size() == part.upstairs.size() &&
                 std::equal(images.begin(), images.end(), part.downstairs.begin(), part.downstairs.end());
    return part;
  };
  auto images_closed = [&](const char* name, auto closed_up, auto closed_down) {
    ClosureTransferPart part{name, {}, {}, true};
    for (auto r : f.objects())
      if (closed_up(f, r)) {
        part.upstairs.push_back(r);
        auto s = ctx.image_index(lat[r]);
        part.downstairs.push_back(s);
        part.holds = part.holds && closed_down(fq, s);
      }
    return part;
  };
  auto weak = [](const IsoTable& t, std::size_t i) { return is_weakly_closed(t, i); };
  auto strong = [](const IsoTable& t, std::size_t i) { return is_strongly_closed(t, i); };

  ClosureTransferReport report;
  report.parts.push_back(bijection("i", weak, weak));
  report.parts.push_back(images_closed("ii", weak, weak));
  if (saturated) {
    report.parts.push_back(bijection("iii", strong, strong));
    report.parts.push_back(images_closed("iv", strong, strong));
  }
  return report;
}

FusionSystem image_in_quotient(const FusionSystem& e, const QuotientContext& ctx) {
  std::vector<IsoRef> seeds;
  for (const auto& phi : e.all_isos()) seeds.push_back(ctx.induced(e, phi));
  return close_fusion(ctx.lattice, ctx.image_index(e.carrier()), e.p(), "image", seeds);
}

bool verify_second_iso(const FusionSystem& f, std::size_t q, const FusionSystem& e) {
  const auto& lat = *f.lattice();
  require_strongly_closed(f, q);
  auto ctx = quotient_context(f, q);
  auto up = image_in_quotient(e, ctx);
  const auto rq = intersect(e.carrier(), lat[q]);
  auto ectx = quotient_context(e, lat.index_of(rq));
  auto down = factor_system(e, ectx);
  auto theta = correspondence(ctx.quotient, up.carrier(), ectx.quotient, e.carrier());
  return transport(up, theta, ectx.lattice).same_table(down);
}

bool verify_third_iso(const FusionSystem& f, std::size_t q, std::size_t r) {
  const auto& lat = *f.lattice();
  require_strongly_closed(f, q);
  require_strongly_closed(f, r);
  if (!lat[r].contains(lat[q])) throw Error(ErrorCode::kNotASubgroup, "third isomorphism needs Q <= R");
  auto c1 = quotient_context(f, q);
  auto fq = factor_system(f, c1);
  auto c2 = quotient_context(fq, c1.image_index(lat[r]));
  auto fqr = factor_system(fq, c2);
  auto c3 = quotient_context(f, r);
  auto fr = factor_system(f, c3);

  const auto& top = *c2.quotient.group;
  Images im(top.order(), kNoElement);
  f.carrier().members().for_each([&](std::size_t x) {
    auto a = c2.quotient.projection[c1.quotient.projection[x]];
    auto b = c3.quotient.projection[x];
    if (im[a] != kNoElement && im[a] != b) throw std::logic_error("canonical map is not well defined");
    im[a] = b;
  });
  GroupHom theta(Subgroup::whole(c2.quotient.group), Subgroup::whole(c3.quotient.group), std::move(im));
  if (theta.image().order() != top.order() || top.order() != c3.quotient.group->order()) return false;
  return transport(fqr, theta, c3.lattice).same_table(fr);
}

bool local_determination_holds(const FusionSystem& f, std::size_t q) {
  auto ctx = quotient_context(f, q);
  return factor_system(f, ctx).same_table(factor_system(normalizer_system(f, q), ctx));
}

}  // namespace fuskit
