#include "fuskit/verify.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "fuskit/closure_analysis.hpp"
#include "fuskit/error.hpp"
#include "fuskit/homomorphism.hpp"
#include "fuskit/quotients.hpp"
#include "fuskit/solubility.hpp"
#include "fuskit/subgroup_ops.hpp"
#include "fuskit/subsystems.hpp"

namespace fuskit::verify {

using io::Json;

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::kValidationError, what); }

std::vector<std::size_t> prime_list(const Json& j, const std::string& field) {
  if (!j.is_array()) throw Error(ErrorCode::kParseError, "field '" + field + "': expected an array of primes");
  std::vector<std::size_t> out;
  for (const auto& x : j) {
    if (!x.is_number_unsigned() || !is_prime(x.get<std::size_t>())) invalid(field + ": " + x.dump() + " is not a prime");
    out.push_back(x.get<std::size_t>());
  }
  return out;
}

// ---------------------------------------------------------------------------
// One fusion system under test.

struct Case {
  Case(const CorpusEntry* e, std::size_t prime, FusionSystem system) : entry(e), p(prime), f(std::move(system)) {}

  const CorpusEntry* entry;
  std::size_t p;
  FusionSystem f;
  GroupPtr group;  // ambient finite group, when there is one
  std::map<std::string, std::size_t> named;
  bool shipped_model = false;

  const Lattice& lat() const { return *f.lattice(); }

  bool strongly(std::size_t i) const { return strongly_.at(i); }
  bool weakly(std::size_t i) const { return weakly_.at(i); }
  std::vector<std::size_t> strongly_closed() const {
    std::vector<std::size_t> out;
    for (auto i : f.objects())
      if (strongly_[i]) out.push_back(i);
    return out;
  }
  bool normal_def(std::size_t i) const {
    if (!normal_[i]) normal_[i] = is_normal_by_definition(f, i) ? 1 : 0;
    return *normal_[i] == 1;
  }
  /// F_Q(Q) normal in F; false when Q is not strongly closed.
  bool inner_normal(std::size_t i) const {
    if (!inner_[i]) inner_[i] = strongly_[i] && is_normal_subsystem(f, inner_system(f, i)) ? 1 : 0;
    return *inner_[i] == 1;
  }
  const SolubilityReport& tower() const {
    if (!tower_) tower_ = o_p_tower(f);
    return *tower_;
  }

  void prepare() {
    const auto n = lat().size();
    strongly_.assign(n, false);
    weakly_.assign(n, false);
    for (auto i : f.objects()) {
      strongly_[i] = is_strongly_closed(f, i);
      weakly_[i] = is_weakly_closed(f, i);
    }
    normal_.assign(n, std::nullopt);
    inner_.assign(n, std::nullopt);
  }

  std::vector<bool> strongly_, weakly_;
  mutable std::vector<std::optional<int>> normal_, inner_;
  mutable std::optional<SolubilityReport> tower_;
};

Json sub_json(const Subgroup& s) { return Json(s.elements()); }
Json sub_json(const Case& c, std::size_t i) { return sub_json(c.lat()[i]); }

Json iso_json(const Lattice& lat, std::size_t dom, const Images& im, std::size_t cod) {
  std::vector<ElementId> img;
  for (auto x : lat[dom].elements()) img.push_back(im[x]);
  return Json{{"domain", lat[dom].elements()}, {"codomain", lat[cod].elements()}, {"images", img}};
}

std::string order_str(const Case& c, std::size_t i) { return "|Q| = " + std::to_string(c.lat()[i].order()); }

// ---------------------------------------------------------------------------
// Result bookkeeping.

class Recorder {
 public:
  Recorder(TheoremResult& result, const Case& c, const std::string& corpus_label)
      : result_(result), case_(c), label_(corpus_label) {}

  void pass() {
    ++result_.instances;
    ++result_.passes;
  }
  void fail(std::string detail, Json data = Json::object()) {
    ++result_.instances;
    Witness w;
    w.entry = case_.entry->name;
    w.p = case_.p;
    w.detail = std::move(detail);
    w.data = std::move(data);
    if (!w.data.contains("system")) w.data["system"] = io::system_to_json(case_.f);
    w.replay = "fuskit verify " + label_ + " --theorem " + result_.id + " --entry " + case_.entry->name;
    result_.failures.push_back(std::move(w));
  }
  /// Records one instance; `explain` runs only on failure.
  void check(bool ok, const std::function<std::pair<std::string, Json>()>& explain) {
    if (ok) {
      pass();
      return;
    }
    auto [detail, data] = explain();
    fail(std::move(detail), std::move(data));
  }
  void check(bool ok, const std::string& detail, Json data = Json::object()) {
    if (ok)
      pass();
    else
      fail(detail, std::move(data));
  }

 private:
  TheoremResult& result_;
  const Case& case_;
  const std::string& label_;
};

using Suite = std::function<void(const Case&, Recorder&, std::mt19937_64&)>;

// ---------------------------------------------------------------------------
// Suites.

void closure_soundness(const Case& c, Recorder& r, std::mt19937_64& rng) {
  const auto& f = c.f;
  const auto& lat = c.lat();
  auto check = prefusion_is_fusion(f);
  r.check(check.is_fusion, [&] {
    return std::pair{"stored table violates " + check.witness->kind + ": " + check.witness->description, Json::object()};
  });
  for (const auto& iso : f.all_isos()) {
    const auto& q = lat[iso.domain];
    auto n = n_phi(f, iso);
    auto lower = join(q, carrier_centralizer(f, iso.domain));
    auto upper = carrier_normalizer(f, iso.domain);
    r.check(n.contains(lower) && upper.contains(n), [&] {
      return std::pair{std::string("N_phi outside [Q C_P(Q), N_P(Q)]"),
                       Json{{"morphism", iso_json(lat, iso.domain, iso.images, iso.codomain)}}};
    });
  }
  if (c.group) r.check(f.saturated(), "system of a finite group is not saturated");

  auto inter = fusion_intersect(f, inner_fusion(f.lattice(), f.carrier_index(), f.p()));
  r.check(prefusion_is_fusion(inter).is_fusion && inter.same_table(inner_fusion(f.lattice(), f.carrier_index(), f.p())),
          "intersection with the inner system is not the inner system");

  auto autos = automorphisms(f.carrier(), std::max(kIsomorphismCap, f.carrier().order()));
  if (!autos.empty()) {
    const auto& theta = autos[std::uniform_int_distribution<std::size_t>(0, autos.size() - 1)(rng)];
    auto moved = transport(f, theta);
    r.check(moved.saturated() == f.saturated(), [&] {
      std::vector<ElementId> im;
      for (auto x : f.carrier().elements()) im.push_back(theta(x));
      return std::pair{std::string("transport changed the saturation verdict"), Json{{"automorphism", im}}};
    });
  }
}

void expected_values(const Case& c, Recorder& r, std::mt19937_64&) {
  auto it = c.entry->expected.find(c.p);
  if (it == c.entry->expected.end()) return;
  const auto& f = c.f;
  const auto& lat = c.lat();
  auto named = [&](const Json& name) {
    auto n = c.named.find(name.get<std::string>());
    if (n == c.named.end()) invalid("expected value refers to unknown subgroup " + name.dump());
    return n->second;
  };
  for (const auto& [key, spec] : it->second.items()) {
    const auto& want = spec.at("value");
    Json got;
    if (key == "sylow_order") {
      got = f.carrier().order();
    } else if (key == "subgroup_count") {
      got = f.objects().size();
    } else if (key == "class_count") {
      std::set<std::size_t> reps;
      for (auto i : f.objects()) reps.insert(f.iso_class(i).front());
      got = reps.size();
    } else if (key == "iso_count") {
      got = f.iso_count();
    } else if (key == "aut_p_order") {
      got = aut_maps(f, f.carrier_index()).size();
    } else if (key == "saturated") {
      got = f.saturated();
    } else if (key == "o_p_order") {
      got = o_p(f).order();
    } else if (key == "tower") {
      got = Json::array();
      for (const auto& t : c.tower().tower) got.push_back(t.order());
    } else if (key == "p_soluble") {
      got = c.tower().p_soluble;
    } else if (key == "p_length") {
      got = c.tower().p_length ? Json(*c.tower().p_length) : Json(nullptr);
    } else if (key == "constrained") {
      got = is_constrained(f);
    } else if (key == "model_candidate") {
      got = c.group ? is_model(c.group, f) : false;
    } else if (key == "group_p_soluble") {
      got = c.group && is_p_soluble_group(Subgroup::whole(c.group), c.p);
    } else if (key == "strongly_closed") {
      got = Json::object();
      for (const auto& [name, v] : want.items()) got[name] = c.strongly(named(Json(name)));
    } else if (key == "bar_is_fusion") {
      got = prefusion_is_fusion(bar_system(f, named(spec.at("by")))).is_fusion;
    } else if (key == "intersection") {
      const auto q = named(spec.at("of").at(0));
      const auto rr = named(spec.at("of").at(1));
      const auto s = lat.index_of(intersect(lat[q], lat[rr]));
      auto e = fusion_intersect(restrict_system(inner_fusion(f.lattice(), q, c.p), s),
                                restrict_system(inner_fusion(f.lattice(), rr, c.p), s));
      got = Json{{"carrier_order", e.carrier().order()},
                 {"aut_order", aut_maps(e, s).size()},
                 {"saturated", e.saturated()}};
    } else {
      r.fail("unknown expected key '" + key + "'");
      continue;
    }
    r.check(got == want, [&] {
      return std::pair{key + ": expected " + want.dump() + ", computed " + got.dump(),
                       Json{{"key", key}, {"expected", want}, {"computed", got}}};
    });
  }
}

void theorem_a(const Case& c, Recorder& r, std::mt19937_64&) {
  for (auto q : c.f.objects()) {
    const bool lhs = c.normal_def(q);
    const bool rhs = c.inner_normal(q);
    r.check(lhs == rhs, [&] {
      return std::pair{order_str(c, q) + ": N_F(Q) = F is " + (lhs ? "true" : "false") + " but F_Q(Q) normal is " +
                           (rhs ? "true" : "false"),
                       Json{{"Q", sub_json(c, q)}}};
    });
  }
}

void theorem_c(const Case& c, Recorder& r, std::mt19937_64&) {
  for (auto q : c.f.objects()) {
    const bool v1 = c.normal_def(q);
    const bool v2 = c.inner_normal(q);
    const bool v3 = is_normal_subgroup(c.f, q);
    const bool v4 = strongly_closed_central_series(c.f, q, SeriesMode::kStrong).has_value();
    const bool v5 = c.strongly(q) && strongly_closed_central_series(c.f, q, SeriesMode::kWeak).has_value();
    r.check(v1 == v2 && v1 == v3 && v1 == v4 && v1 == v5, [&] {
      return std::pair{order_str(c, q) + ": criteria disagree",
                       Json{{"Q", sub_json(c, q)}, {"criteria", {v1, v2, v3, v4, v5}}}};
    });
  }
}

void theorem_b(const Case& c, Recorder& r, std::mt19937_64&) {
  const auto& f = c.f;
  const auto& lat = c.lat();
  auto conjugate_join = [&](std::size_t rr) {
    Subgroup s = lat[rr];
    for (auto i : f.iso_class(rr)) s = join(s, lat[i]);
    return lat.index_of(s);
  };
  for (auto q : f.objects()) {
    if (!c.inner_normal(q)) continue;
    // E = F_Q(Q): N_E(R) = E exactly when R is normal in Q.
    for (auto rr : lat.below(q)) {
      if (!is_normal_in(lat[rr], lat[q])) continue;
      auto s = conjugate_join(rr);
      r.check(c.normal_def(s), [&] {
        return std::pair{std::string("F is not N_F(S) for S the join of the conjugates of R"),
                         Json{{"Q", sub_json(c, q)}, {"R", sub_json(c, rr)}, {"S", sub_json(c, s)}}};
      });
    }
  }
  for (auto rr : f.objects()) {
    if (!c.normal_def(rr)) continue;
    auto s = conjugate_join(rr);
    r.check(c.normal_def(s), "E = F: join of conjugates of a normal subgroup is not normal",
            Json{{"R", sub_json(c, rr)}, {"S", sub_json(c, s)}});
  }
}

void theorem_d(const Case& c, Recorder& r, std::mt19937_64&) {
  const auto sc = c.strongly_closed();
  for (std::size_t a = 0; a < sc.size(); ++a) {
    auto ctx = quotient_context(c.f, sc[a]);
    auto fq = factor_system(c.f, ctx);
    for (std::size_t b = a; b < sc.size(); ++b) {
      const auto& q = c.lat()[sc[a]];
      const auto& rr = c.lat()[sc[b]];
      auto qr = set_product(q, rr);
      const bool product = c.strongly(c.lat().index_of(qr));
      const bool image = is_strongly_closed(fq, ctx.image_index(rr));
      r.check(product && image, [&] {
        return std::pair{std::string(product ? "image of R in F/Q is not strongly closed" : "QR is not strongly closed"),
                         Json{{"Q", sub_json(q)}, {"R", sub_json(rr)}}};
      });
    }
  }
}

void theorem_e(const Case& c, Recorder& r, std::mt19937_64&) {
  if (!c.tower().p_soluble) return;
  r.check(is_constrained(c.f), "p-soluble system is not constrained", Json{{"O_p", sub_json(o_p(c.f))}});
}

void theorem_f(const Case& c, Recorder& r, std::mt19937_64&) {
  if (!c.shipped_model || !c.group || !is_constrained(c.f)) return;
  r.check(is_model(c.group, c.f), "shipped model group fails the model conditions");
  const bool group_side = is_p_soluble_group(Subgroup::whole(c.group), c.p);
  const bool fusion_side = aut_of_op_is_p_soluble(c.f);
  r.check(group_side == fusion_side, "model p-solubility " + std::string(group_side ? "true" : "false") +
                                         " but Aut_F(O_p(F)) p-solubility " + (fusion_side ? "true" : "false"));
}

/// Saturated subsystems used as test instances: inner systems of every
/// subgroup and normalizers of fully normalized subgroups.
std::vector<std::pair<std::string, FusionSystem>> sample_subsystems(const Case& c) {
  std::vector<std::pair<std::string, FusionSystem>> out;
  for (auto s : c.f.objects()) {
    out.emplace_back("inner", inner_system(c.f, s));
    if (is_fully_normalized(c.f, s)) out.emplace_back("normalizer", normalizer_system(c.f, s));
  }
  return out;
}

void second_iso(const Case& c, Recorder& r, std::mt19937_64&) {
  const auto subs = sample_subsystems(c);
  for (auto q : c.strongly_closed())
    for (const auto& [kind, e] : subs)
      r.check(verify_second_iso(c.f, q, e), [&] {
        return std::pair{"second isomorphism fails for the " + kind + " subsystem",
                         Json{{"Q", sub_json(c, q)}, {"E_carrier", sub_json(e.carrier())}, {"E_kind", kind}}};
      });
}

void third_iso(const Case& c, Recorder& r, std::mt19937_64&) {
  const auto sc = c.strongly_closed();
  for (auto q : sc)
    for (auto rr : sc)
      if (c.lat()[rr].contains(c.lat()[q]))
        r.check(verify_third_iso(c.f, q, rr), "third isomorphism fails",
                Json{{"Q", sub_json(c, q)}, {"R", sub_json(c, rr)}});
}

void quotient_saturation(const Case& c, Recorder& r, std::mt19937_64&) {
  for (auto q : c.f.objects())
    if (c.weakly(q))
      r.check(factor_system(c.f, q).saturated(), "F/Q is not saturated for weakly closed Q", Json{{"Q", sub_json(c, q)}});
}

void saturated_quotient(const Case& c, Recorder& r, std::mt19937_64&) {
  for (auto q : c.strongly_closed()) {
    auto ctx = quotient_context(c.f, q);
    auto factor = factor_system(c.f, ctx);
    auto bar = bar_system(c.f, ctx);
    auto check = prefusion_is_fusion(bar);
    r.check(check.is_fusion && bar.same_table(factor) && generated_bar(c.f, ctx).same_table(factor), [&] {
      Json data{{"Q", sub_json(c, q)}};
      if (check.witness) {
        Json maps = Json::array();
        for (const auto& m : check.witness->maps) maps.push_back(iso_json(*ctx.lattice, m.domain, m.images, m.codomain));
        data["morphisms"] = maps;
      }
      return std::pair{check.is_fusion ? std::string("bar F_Q differs from F/Q")
                                       : "bar F_Q is not a fusion system: " + check.witness->description,
                       data};
    });
  }
}

void closure_transfer_suite(const Case& c, Recorder& r, std::mt19937_64&) {
  for (auto q : c.strongly_closed()) {
    auto rep = closure_transfer(c.f, q);
    for (const auto& part : rep.parts)
      r.check(part.holds, "closure transfer part (" + part.name + ") fails",
              Json{{"Q", sub_json(c, q)}, {"upstairs", part.upstairs}, {"downstairs", part.downstairs}});
  }
}

void kernel_strongly_closed(const Case& c, Recorder& r, std::mt19937_64&) {
  for (auto q : c.strongly_closed())
    for (auto target : {QuotientTarget::kFactor, QuotientTarget::kGeneratedBar}) {
      auto m = quotient_morphism(c.f, q, target);
      const bool ok = is_strongly_closed(c.f, c.lat().index_of(m.kernel)) &&
                      satisfies_functor_condition(m.source, m.target, m.carrier);
      r.check(ok, "kernel of the quotient morphism is not strongly closed", Json{{"Q", sub_json(c, q)}});
    }
}

void centrelift(const Case& c, Recorder& r, std::mt19937_64&) {
  const auto& lat = c.lat();
  const auto z = center_of_fusion(c.f);
  for (auto zi : lat.below(lat.index_of(z))) {
    if (!c.strongly(zi)) continue;
    auto ctx = quotient_context(c.f, zi);
    auto fz = factor_system(c.f, ctx);
    for (auto q : c.f.objects()) {
      if (!lat[q].contains(lat[zi]) || !is_normal_in(lat[q], c.f.carrier())) continue;
      const bool up = c.normal_def(q);
      const bool down = is_normal_by_definition(fz, ctx.image_index(lat[q]));
      r.check(up == down, "normality of Q and of Q/Z disagree", Json{{"Z", sub_json(c, zi)}, {"Q", sub_json(c, q)}});
    }
  }
}

void charnormal(const Case& c, Recorder& r, std::mt19937_64&) {
  const auto& lat = c.lat();
  for (auto q2 : c.f.objects()) {
    if (q2 == c.f.carrier_index() || !c.inner_normal(q2)) continue;
    auto e2 = inner_system(c.f, q2);
    const auto alphas = aut_maps(c.f, q2);
    for (auto q : lat.below(q2)) {
      if (!is_normal_in(lat[q], lat[q2])) continue;
      auto e = inner_system(c.f, q);
      if (!is_normal_subsystem(e2, e) || !aut_F_acts_on(e, alphas)) continue;
      const bool ok = c.strongly(q) && is_normal_subsystem(c.f, e);
      r.check(ok, "E normal in E' normal in F with Aut_F(Q') acting, but E is not normal in F",
              Json{{"E_carrier", sub_json(c, q)}, {"E2_carrier", sub_json(c, q2)}});
    }
  }
}

/// N_F^K(Q) for fully normalized Q and K normal in Aut_F(Q).
struct KNormalizer {
  std::size_t q;
  std::size_t k_order;
  FusionSystem nk;
};

std::vector<KNormalizer> k_normalizers(const Case& c) {
  std::vector<KNormalizer> out;
  for (auto q : c.f.objects()) {
    if (!is_fully_normalized(c.f, q)) continue;
    auto aut = automorphism_group(c.f, q);
    const auto whole = Subgroup::whole(aut.group);
    for (const auto& k : subgroups(aut.group)) {
      if (!is_normal_in(k, whole)) continue;
      out.push_back({q, k.order(), k_normalizer_system(c.f, q, aut.maps_of(k))});
    }
  }
  return out;
}

void centnormalnorm(const Case& c, Recorder& r, std::mt19937_64&) {
  for (const auto& kn : k_normalizers(c)) {
    auto n = normalizer_system(c.f, kn.q);
    const bool ok = is_strongly_closed(n, kn.nk.carrier_index()) && is_normal_subsystem(n, kn.nk);
    r.check(ok, "N_F^K(Q) is not normal in N_F(Q)", Json{{"Q", sub_json(c, kn.q)}, {"K_order", kn.k_order}});
  }
}

void knormalizer_saturation(const Case& c, Recorder& r, std::mt19937_64&) {
  for (const auto& kn : k_normalizers(c))
    r.check(kn.nk.saturated(), "N_F^K(Q) is not saturated", Json{{"Q", sub_json(c, kn.q)}, {"K_order", kn.k_order}});
}

/// Pairs E normal in F' used by the O_p suites: (F, F_Q(Q)) and
/// (N_F(Q), N_F^K(Q)).
std::vector<std::pair<FusionSystem, FusionSystem>> normal_pairs(const Case& c) {
  std::vector<std::pair<FusionSystem, FusionSystem>> out;
  for (auto q : c.f.objects())
    if (c.inner_normal(q)) out.emplace_back(c.f, inner_system(c.f, q));
  for (auto& kn : k_normalizers(c)) {
    auto n = normalizer_system(c.f, kn.q);
    if (is_strongly_closed(n, kn.nk.carrier_index()) && is_normal_subsystem(n, kn.nk))
      out.emplace_back(std::move(n), std::move(kn.nk));
  }
  return out;
}

void normalop(const Case& c, Recorder& r, std::mt19937_64&) {
  for (const auto& [big, e] : normal_pairs(c)) {
    auto lhs = intersect(o_p(big), e.carrier());
    auto rhs = o_p(e);
    r.check(lhs == rhs, "O_p(F) meet Q differs from O_p(E)",
            Json{{"F_carrier", sub_json(big.carrier())}, {"E_carrier", sub_json(e.carrier())}});
  }
}

void solublesimple(const Case& c, Recorder& r, std::mt19937_64&) {
  const auto op = o_p(c.f);
  for (const auto& [big, e] : normal_pairs(c))
    r.check(o_p(big).contains(o_p(e)), "O_p(E) is not inside O_p(F)",
            Json{{"F_carrier", sub_json(big.carrier())}, {"E_carrier", sub_json(e.carrier())}});
  for (auto q : c.f.objects())
    if (is_prime(c.lat()[q].order()) && c.inner_normal(q))
      r.check(op.contains(c.lat()[q]), "normal F_Q(Q) of prime order outside O_p(F)", Json{{"Q", sub_json(c, q)}});
}

void opequalz(const Case& c, Recorder& r, std::mt19937_64&) {
  const auto z = center_of_fusion(c.f);
  const auto op = o_p(c.f);
  r.check(op.contains(z), "Z(F) is not inside O_p(F)");
  auto ctx = quotient_context(c.f, c.lat().index_of(z));
  auto fz = factor_system(c.f, ctx);
  r.check(ctx.quotient.preimage(o_p(fz)) == op, "preimage of O_p(F/Z(F)) differs from O_p(F)",
          Json{{"Z", sub_json(z)}, {"O_p", sub_json(op)}});
}

void weakcentralimpstrong(const Case& c, Recorder& r, std::mt19937_64&) {
  const auto& lat = c.lat();
  for (auto q : c.strongly_closed()) {
    const auto zq = center(lat[q]);
    for (auto zi : lat.below(lat.index_of(zq)))
      if (c.weakly(zi))
        r.check(c.strongly(zi), "weakly closed central subgroup of Q is not strongly closed",
                Json{{"Q", sub_json(c, q)}, {"Z", sub_json(c, zi)}});
  }
}

void fqqnormalimpstrongcentral(const Case& c, Recorder& r, std::mt19937_64&) {
  const auto& lat = c.lat();
  for (auto q : c.f.objects()) {
    if (!c.inner_normal(q)) continue;
    const auto autos = automorphisms(lat[q], std::max(kIsomorphismCap, lat[q].order()));
    for (auto s : lat.below(q)) {
      const bool characteristic =
          std::all_of(autos.begin(), autos.end(), [&](const GroupHom& a) { return a.image_of(lat[s]) == lat[s]; });
      if (characteristic)
        r.check(c.strongly(s), "characteristic subgroup of Q is not strongly closed",
                Json{{"Q", sub_json(c, q)}, {"S", sub_json(c, s)}});
    }
  }
}

void psoluble_closure(const Case& c, Recorder& r, std::mt19937_64&) {
  const bool soluble = c.tower().p_soluble;
  if (soluble) {
    for (auto q : c.strongly_closed())
      r.check(o_p_tower(factor_system(c.f, q)).p_soluble, "F/Q is not p-soluble", Json{{"Q", sub_json(c, q)}});
    for (const auto& kn : k_normalizers(c))
      r.check(o_p_tower(kn.nk).p_soluble, "N_F^K(Q) is not p-soluble",
              Json{{"Q", sub_json(c, kn.q)}, {"K_order", kn.k_order}});
  }
  // E = F_{O_p}(O_p) is always p-soluble, so F/O_p(F) p-soluble forces F p-soluble.
  const auto op = c.lat().index_of(o_p(c.f));
  const bool top = o_p_tower(factor_system(c.f, op)).p_soluble;
  r.check(!top || soluble, "F/O_p(F) is p-soluble but F is not");
}

void psoluble_group_constrained(const Case& c, Recorder& r, std::mt19937_64&) {
  if (!c.group) return;
  const auto g = Subgroup::whole(c.group);
  if (!is_p_soluble_group(g, c.p) || !core_pprime(g, c.p).is_trivial()) return;
  const auto op = core_p(g, c.p);
  r.check(op.contains(centralizer(g, op)), "C_G(O_p(G)) is not inside O_p(G)");
}

void qdp_free(const Case& c, Recorder& r, std::mt19937_64&) {
  if (!c.group || !is_p_soluble_group(Subgroup::whole(c.group), c.p) || !is_qdp_free_group(c.group, c.p)) return;
  const auto& tower = c.tower();
  r.check(tower.p_soluble, "system of a Qd(p)-free p-soluble group has a trivial O_p step");
}

void thompson_factorization(const Case& c, Recorder& r, std::mt19937_64&) {
  if (c.p == 2 || !c.group || !is_qdp_free_group(c.group, c.p)) return;
  r.check(thompson_factorization_holds(c.f), "F differs from the system generated by N_F(J(P)) and C_F(Omega_1(Z(P)))");
}

void alperin(const Case& c, Recorder& r, std::mt19937_64&) {
  r.check(alperin_regenerate(c.f).same_table(c.f), "Alperin generators do not regenerate F");
  for (const auto& iso : c.f.all_isos()) {
    bool ok = true;
    std::string why;
    try {
      auto steps = alperin_decompose(c.f, iso);
      (void)steps;
    } catch (const Error& e) {
      ok = false;
      why = e.what();
    }
    r.check(ok, [&] {
      return std::pair{"no Alperin decomposition: " + why,
                       Json{{"morphism", iso_json(c.lat(), iso.domain, iso.images, iso.codomain)}}};
    });
  }
}

void normalifffrattini(const Case& c, Recorder& r, std::mt19937_64&) {
  for (auto q : c.strongly_closed()) {
    const auto alphas = aut_maps(c.f, q);
    std::vector<std::pair<std::string, FusionSystem>> es;
    es.emplace_back("inner", inner_system(c.f, q));
    es.emplace_back("restriction", restrict_system(c.f, q));
    for (const auto& [kind, e] : es) {
      const bool lhs = is_invariant(c.f, e);
      const bool rhs = aut_F_acts_on(e, alphas) && is_frattini(c.f, e);
      r.check(lhs == rhs, "invariance and Frattini criterion disagree for the " + kind + " subsystem",
              Json{{"Q", sub_json(c, q)}, {"invariant", lhs}});
    }
  }
}

struct SuiteDef {
  const char* id;
  bool needs_saturated;
  void (*run)(const Case&, Recorder&, std::mt19937_64&);
};

const std::vector<SuiteDef>& suites() {
  static const std::vector<SuiteDef> defs = {
      {"alperin", true, alperin},
      {"centnormalnorm", true, centnormalnorm},
      {"centrelift", true, centrelift},
      {"charnormal", true, charnormal},
      {"closure-soundness", false, closure_soundness},
      {"closure-transfer", true, closure_transfer_suite},
      {"expected-values", false, expected_values},
      {"fqqnormalimpstrongcentral", true, fqqnormalimpstrongcentral},
      {"kernel-strongly-closed", true, kernel_strongly_closed},
      {"knormalizer-saturation", true, knormalizer_saturation},
      {"normalifffrattini", true, normalifffrattini},
      {"normalop", true, normalop},
      {"opequalz", true, opequalz},
      {"psoluble-closure", true, psoluble_closure},
      {"psoluble-group-constrained", false, psoluble_group_constrained},
      {"qdp-free", true, qdp_free},
      {"quotient-saturation", true, quotient_saturation},
      {"saturated-quotient", true, saturated_quotient},
      {"second-iso", true, second_iso},
      {"solublesimple", true, solublesimple},
      {"theorem-A", true, theorem_a},
      {"theorem-B", true, theorem_b},
      {"theorem-C", true, theorem_c},
      {"theorem-D", true, theorem_d},
      {"theorem-E", true, theorem_e},
      {"theorem-F", true, theorem_f},
      {"third-iso", true, third_iso},
      {"thompson-factorization", true, thompson_factorization},
      {"weakcentralimpstrong", true, weakcentralimpstrong},
  };
  return defs;
}

Case build_case(const CorpusEntry& entry, std::size_t p) {
  auto spec = entry_spec(entry, p);
  Case c(&entry, p, io::build_system(spec));
  if (spec.mode == io::SpecMode::kFromGroup) c.group = spec.group;
  if (spec.ambient) c.group = spec.ambient;
  for (const auto& [name, gens] : spec.subgroups) c.named[name] = io::subgroup_index(c.f.lattice(), gens);
  c.shipped_model = std::find(entry.models.begin(), entry.models.end(), p) != entry.models.end();
  c.prepare();
  return c;
}

Json witness_json(const Witness& w) {
  return Json{{"entry", w.entry}, {"p", w.p}, {"detail", w.detail}, {"data", w.data}, {"replay", w.replay}};
}

}  // namespace

// ---------------------------------------------------------------------------

CorpusEntry entry_from_json(const Json& j, const std::filesystem::path& path) {
  if (!j.is_object()) throw Error(ErrorCode::kParseError, path.string() + ": expected an object");
  CorpusEntry e;
  e.path = path;
  e.raw = j;
  auto name = j.find("name");
  if (name == j.end() || !name->is_string()) throw Error(ErrorCode::kParseError, "field 'name': expected a string");
  e.name = name->get<std::string>();
  auto primes = j.find("primes");
  if (primes == j.end()) throw Error(ErrorCode::kParseError, "field 'primes': missing");
  e.primes = prime_list(*primes, "primes");
  if (auto m = j.find("models"); m != j.end()) e.models = prime_list(*m, "models");
  if (auto ex = j.find("expected"); ex != j.end()) {
    if (!ex->is_object()) throw Error(ErrorCode::kParseError, "field 'expected': expected an object");
    for (const auto& [key, block] : ex->items()) {
      std::size_t p = 0;
      try {
        p = std::stoul(key);
      } catch (const std::exception&) {
        throw Error(ErrorCode::kParseError, "field 'expected': key '" + key + "' is not a prime");
      }
      if (std::find(e.primes.begin(), e.primes.end(), p) == e.primes.end())
        invalid(e.name + ": expected values for untested prime " + key);
      if (!block.is_object()) throw Error(ErrorCode::kParseError, "field 'expected." + key + "': expected an object");
      for (const auto& [k, v] : block.items()) {
        if (!v.is_object() || !v.contains("value"))
          throw Error(ErrorCode::kParseError, "field 'expected." + key + "." + k + "': expected {\"value\", ...}");
        auto prov = v.find("provenance");
        if (prov == v.end() || !prov->is_string() ||
            (*prov != kProvenancePublished && *prov != kProvenanceOracle))
          invalid(e.name + ": expected value '" + k + "' lacks a provenance marker");
      }
      e.expected[p] = block;
    }
  }
  return e;
}

CorpusEntry load_entry(const std::filesystem::path& path) { return entry_from_json(io::read_json_file(path), path); }

std::vector<CorpusEntry> load_corpus(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw Error(ErrorCode::kParseError, dir.string() + " is not a directory");
  std::vector<CorpusEntry> out;
  for (const auto& de : std::filesystem::directory_iterator(dir))
    if (de.is_regular_file() && de.path().extension() == ".json") out.push_back(load_entry(de.path()));
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  for (std::size_t i = 1; i < out.size(); ++i)
    if (out[i].name == out[i - 1].name) invalid("duplicate corpus entry name " + out[i].name);
  return out;
}

io::FusionSpec entry_spec(const CorpusEntry& entry, std::size_t p) {
  Json j = entry.raw;
  for (const char* k : {"name", "primes", "models", "expected"}) j.erase(k);
  j["p"] = p;
  return io::fusion_spec_from_json(j, entry.path.parent_path());
}

bool Report::ok() const {
  return std::all_of(theorems.begin(), theorems.end(), [](const auto& t) { return t.failures.empty(); });
}

std::vector<std::string> theorem_ids() {
  std::vector<std::string> out;
  for (const auto& s : suites()) out.emplace_back(s.id);
  return out;
}

Report run_verification(const std::filesystem::path& dir, const Options& options) {
  return run_verification(load_corpus(dir), options, dir.string());
}

Report run_verification(const std::vector<CorpusEntry>& corpus, const Options& options,
                        const std::string& corpus_label) {
  const auto& defs = suites();
  if (options.theorem &&
      std::none_of(defs.begin(), defs.end(), [&](const auto& s) { return s.id == *options.theorem; }))
    invalid("unknown theorem id '" + *options.theorem + "'");
  if (options.entry &&
      std::none_of(corpus.begin(), corpus.end(), [&](const auto& e) { return e.name == *options.entry; }))
    invalid("no corpus entry named '" + *options.entry + "'");

  Report report;
  if (corpus.empty()) return report;
  std::vector<const SuiteDef*> selected;
  for (const auto& s : defs)
    if (!options.theorem || s.id == *options.theorem) selected.push_back(&s);
  for (const auto* s : selected) report.theorems.push_back(TheoremResult{s->id, 0, 0, {}, 0});

  for (const auto& entry : corpus) {
    if (options.entry && entry.name != *options.entry) continue;
    for (auto p : entry.primes) {
      const auto c = build_case(entry, p);
      for (std::size_t k = 0; k < selected.size(); ++k) {
        const auto* s = selected[k];
        auto& result = report.theorems[k];
        if (s->needs_saturated && !c.f.saturated()) continue;
        std::mt19937_64 rng(options.seed ^ std::hash<std::string>{}(entry.name + "/" + std::to_string(p)));
        Recorder rec(result, c, corpus_label);
        const auto start = std::chrono::steady_clock::now();
        try {
          s->run(c, rec, rng);
        } catch (const std::exception& e) {
          rec.fail(std::string("error: ") + e.what());
        }
        result.elapsed_ms +=
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      }
    }
  }
  return report;
}

Json report_to_json(const Report& report, bool timing) {
  Json theorems = Json::array();
  for (const auto& t : report.theorems) {
    Json failures = Json::array();
    for (const auto& w : t.failures) failures.push_back(witness_json(w));
    Json jt{{"id", t.id}, {"instances", t.instances}, {"passes", t.passes}, {"failures", std::move(failures)}};
    if (timing) jt["elapsed_ms"] = t.elapsed_ms;
    theorems.push_back(std::move(jt));
  }
  return Json{{"version", 1}, {"theorems", std::move(theorems)}};
}

std::string report_to_json_text(const Report& report, bool timing) {
  return R"({"version":1,"theorems":)" + report_to_json(report, timing)["theorems"].dump() + "}";
}

Report report_from_json(const Json& j) {
  if (!j.is_object() || j.value("version", 0) != 1)
    throw Error(ErrorCode::kParseError, "field 'version': expected report version 1");
  Report report;
  try {
    for (const auto& jt : j.at("theorems")) {
      TheoremResult t;
      t.id = jt.at("id").get<std::string>();
      t.instances = jt.at("instances").get<std::size_t>();
      t.passes = jt.at("passes").get<std::size_t>();
      t.elapsed_ms = jt.value("elapsed_ms", 0.0);
      for (const auto& jw : jt.at("failures"))
        t.failures.push_back(Witness{jw.at("entry").get<std::string>(), jw.at("p").get<std::size_t>(),
                                     jw.at("detail").get<std::string>(), jw.at("data"),
                                     jw.at("replay").get<std::string>()});
      report.theorems.push_back(std::move(t));
    }
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("malformed report: ") + e.what());
  }
  return report;
}

std::string report_to_text(const Report& report, bool timing) {
  std::ostringstream out;
  for (const auto& t : report.theorems) {
    out << t.id << ": " << t.passes << "/" << t.instances << " passed, " << t.failures.size() << " failed";
    if (timing) out << " (" << static_cast<long long>(t.elapsed_ms) << " ms)";
    out << "\n";
    for (const auto& w : t.failures) out << "  FAIL " << w.entry << " p=" << w.p << ": " << w.detail << "\n    replay: " << w.replay << "\n";
  }
  return out.str();
}

}  // namespace fuskit::verify
