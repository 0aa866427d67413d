#include "fuskit/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "fuskit/catalog.hpp"
#include "fuskit/error.hpp"
#include "fuskit/homomorphism.hpp"
#include "fuskit/quotients.hpp"
#include "fuskit/subgroup_ops.hpp"

namespace fuskit::io {

namespace {

[[noreturn]] void parse_fail(const std::string& field, const std::string& what) {
  throw Error(ErrorCode::kParseError, "field '" + field + "': " + what);
}

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::kValidationError, what); }

const Json& member(const Json& j, const char* key, const std::string& ctx) {
  if (!j.is_object()) parse_fail(ctx, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) parse_fail(ctx.empty() ? key : ctx + "." + key, "missing");
  return *it;
}

std::size_t as_size(const Json& j, const std::string& field) {
  if (!j.is_number_integer() || j.get<long long>() < 0) parse_fail(field, "expected a non-negative integer");
  return j.get<std::size_t>();
}

std::vector<ElementId> id_list(const Json& j, const std::string& field) {
  if (!j.is_array()) parse_fail(field, "expected an array of element ids");
  std::vector<ElementId> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(static_cast<ElementId>(as_size(j[i], field + "[" + std::to_string(i) + "]")));
  return out;
}

Perm perm_from(const Json& j, const std::string& field, std::optional<std::size_t> degree) {
  if (!j.is_array()) parse_fail(field, "expected an array of images");
  std::vector<Point> im;
  std::vector<bool> seen(j.size(), false);
  for (std::size_t i = 0; i < j.size(); ++i) {
    auto x = as_size(j[i], field + "[" + std::to_string(i) + "]");
    if (x < seen.size()) {
      if (seen[x]) parse_fail(field, "image " + std::to_string(x) + " repeated");
      seen[x] = true;
    }
    im.push_back(static_cast<Point>(x));
  }
  if (degree && im.size() != *degree)
    invalid(field + ": generator has " + std::to_string(im.size()) + " images, degree is " + std::to_string(*degree));
  for (auto x : im)
    if (x >= im.size()) invalid(field + ": image " + std::to_string(x) + " out of range");
  return Perm(std::move(im));
}

Bitset bits_of(const Group& g, const std::vector<ElementId>& ids, const std::string& field) {
  Bitset b(g.order());
  for (auto x : ids) {
    if (x >= g.order()) invalid(field + ": element id " + std::to_string(x) + " out of range");
    b.set(x);
  }
  return b;
}

std::size_t require_subgroup(const Lattice& lat, const Bitset& b, const std::string& field) {
  auto i = lat.find(b);
  if (!i) invalid(field + " is not a subgroup");
  return *i;
}

TableDraft draft_from_json(const Json& j) {
  auto fmt = member(j, "format", "");
  if (!fmt.is_string() || fmt.get<std::string>() != "fuskit-system") parse_fail("format", "expected 'fuskit-system'");
  auto version = as_size(member(j, "version", ""), "version");
  if (version != 1) parse_fail("version", "unsupported version " + std::to_string(version));
  auto group = group_from_json(member(j, "group", ""));
  auto p = as_size(member(j, "p", ""), "p");
  if (!is_prime(p)) invalid("p = " + std::to_string(p) + " is not prime");
  const auto& prov = member(j, "provenance", "");
  if (!prov.is_string()) parse_fail("provenance", "expected a string");
  auto lattice = Lattice::build(group);
  const auto& lat = *lattice;
  const auto& g = *group;
  auto carrier = require_subgroup(lat, bits_of(g, id_list(member(j, "carrier", ""), "carrier"), "carrier"), "carrier");
  if (!is_p_group(lat[carrier], p)) invalid("carrier is not a p-group");

  TableDraft d{lattice, carrier, p, prov.get<std::string>(), {}};
  d.buckets.resize(lat.size());
  const auto& isos = member(j, "isos", "");
  if (!isos.is_array()) parse_fail("isos", "expected an array");
  for (std::size_t k = 0; k < isos.size(); ++k) {
    const auto field = "isos[" + std::to_string(k) + "]";
    const auto& e = isos[k];
    auto dom_ids = id_list(member(e, "domain", field), field + ".domain");
    auto cod_ids = id_list(member(e, "codomain", field), field + ".codomain");
    auto img = id_list(member(e, "images", field), field + ".images");
    auto dom = require_subgroup(lat, bits_of(g, dom_ids, field + ".domain"), field + ".domain");
    auto cod = require_subgroup(lat, bits_of(g, cod_ids, field + ".codomain"), field + ".codomain");
    if (!lat[carrier].contains(lat[dom]) || !lat[carrier].contains(lat[cod]))
      invalid(field + " leaves the carrier");
    const auto elems = lat[dom].elements();
    if (img.size() != elems.size()) invalid(field + ": image count does not match the domain");
    Images m(g.order(), kNoElement);
    Bitset hit(g.order());
    for (std::size_t i = 0; i < elems.size(); ++i) {
      if (img[i] >= g.order() || !lat[cod].contains(img[i])) invalid(field + ": image outside the codomain");
      m[elems[i]] = img[i];
      hit.set(img[i]);
    }
    if (!(hit == lat[cod].members())) invalid(field + " is not a bijection onto its codomain");
    for (auto x : elems)
      for (auto y : elems)
        if (m[g.mul(x, y)] != g.mul(m[x], m[y])) invalid(field + " is not a homomorphism");
    d.buckets[dom].push_back(Iso{static_cast<std::uint32_t>(cod), std::move(m)});
  }
  return d;
}

}  // namespace

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json parse_json(std::string_view text, const std::string& where) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorCode::kParseError,
                where + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON");
  }
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParseError, "cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str(), path.string());
}

Json perm_to_json(const Perm& perm) { return Json(perm.images()); }

Json group_to_json(const Group& g) {
  Json gens = Json::array();
  for (const auto& x : g.generators()) gens.push_back(perm_to_json(x));
  return Json{{"name", g.name()}, {"degree", g.degree()}, {"generators", std::move(gens)}};
}

GroupPtr group_from_json(const Json& j) {
  const auto& name = member(j, "name", "group");
  if (!name.is_string()) parse_fail("group.name", "expected a string");
  auto degree = as_size(member(j, "degree", "group"), "group.degree");
  const auto& gens = member(j, "generators", "group");
  if (!gens.is_array()) parse_fail("group.generators", "expected an array");
  std::vector<Perm> perms;
  for (std::size_t i = 0; i < gens.size(); ++i)
    perms.push_back(perm_from(gens[i], "group.generators[" + std::to_string(i) + "]", degree));
  return Group::from_generators(degree, std::move(perms), name.get<std::string>());
}

GroupPtr resolve_group(const Json& ref, const std::filesystem::path& base) {
  if (ref.is_object()) return group_from_json(ref);
  if (!ref.is_string()) parse_fail("group", "expected a group object, catalog name or file path");
  const auto s = ref.get<std::string>();
  const auto names = catalog_names();
  if (std::find(names.begin(), names.end(), s) != names.end()) return catalog_group(s);
  return group_from_json(read_json_file(base / s));
}

std::vector<Perm> perms_from_json(const Json& j, const std::string& field) {
  if (!j.is_array()) parse_fail(field, "expected an array of permutations");
  std::vector<Perm> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(perm_from(j[i], field + "[" + std::to_string(i) + "]", {}));
  return out;
}

FusionSpec fusion_spec_from_json(const Json& j, const std::filesystem::path& base) {
  FusionSpec spec;
  spec.group = resolve_group(member(j, "group", ""), base);
  spec.p = as_size(member(j, "p", ""), "p");
  if (!is_prime(spec.p)) invalid("p = " + std::to_string(spec.p) + " is not prime");
  if (auto it = j.find("mode"); it != j.end()) {
    if (*it == "from-group")
      spec.mode = SpecMode::kFromGroup;
    else if (*it == "generated")
      spec.mode = SpecMode::kGenerated;
    else
      parse_fail("mode", "expected 'from-group' or 'generated'");
  }
  if (auto it = j.find("ambient"); it != j.end() && !it->is_null()) spec.ambient = resolve_group(*it, base);
  if (auto it = j.find("seed_morphisms"); it != j.end()) {
    if (!it->is_array()) parse_fail("seed_morphisms", "expected an array");
    for (std::size_t k = 0; k < it->size(); ++k) {
      const auto field = "seed_morphisms[" + std::to_string(k) + "]";
      SeedMorphism s;
      s.domain_gens = perms_from_json(member((*it)[k], "domain_gens", field), field + ".domain_gens");
      s.images = perms_from_json(member((*it)[k], "images", field), field + ".images");
      if (s.domain_gens.size() != s.images.size()) invalid(field + ": generator and image counts differ");
      spec.seeds.push_back(std::move(s));
    }
  }
  if (spec.mode == SpecMode::kFromGroup && !spec.seeds.empty())
    invalid("seed morphisms need mode 'generated'");
  if (auto it = j.find("subgroups"); it != j.end()) {
    if (!it->is_object()) parse_fail("subgroups", "expected an object");
    for (const auto& [k, v] : it->items()) spec.subgroups[k] = perms_from_json(v, "subgroups." + k);
  }
  return spec;
}

FusionSpec load_fusion_spec(const std::filesystem::path& path) {
  return fusion_spec_from_json(read_json_file(path), path.parent_path());
}

std::size_t subgroup_index(const LatticePtr& lattice, const std::vector<Perm>& gens) {
  const auto& g = *lattice->group();
  std::vector<ElementId> ids;
  for (const auto& x : gens) {
    auto id = x.degree() == g.degree() ? g.find(x) : std::nullopt;
    if (!id) invalid("permutation " + x.to_cycle_string() + " is not an element of " + g.name());
    ids.push_back(*id);
  }
  return lattice->index_of(Subgroup::generated(lattice->group(), ids));
}

FusionSystem build_system(const FusionSpec& spec) {
  if (spec.mode == SpecMode::kFromGroup) {
    auto f = fusion_from_group(spec.group, spec.p);
    if (spec.ambient) invalid("'ambient' is only meaningful for generated systems");
    return f;
  }
  if (!is_p_group(Subgroup::whole(spec.group), spec.p)) invalid(spec.group->name() + " is not a p-group");
  auto lattice = Lattice::build(spec.group);
  const auto whole = Subgroup::whole(spec.group);
  std::vector<GroupHom> homs;
  for (std::size_t k = 0; k < spec.seeds.size(); ++k) {
    const auto& s = spec.seeds[k];
    std::vector<std::pair<ElementId, ElementId>> pairs;
    std::vector<ElementId> dom;
    for (std::size_t i = 0; i < s.domain_gens.size(); ++i) {
      auto a = spec.group->find(s.domain_gens[i]);
      auto b = spec.group->find(s.images[i]);
      if (!a || !b) invalid("seed morphism " + std::to_string(k) + " uses a permutation outside the group");
      dom.push_back(*a);
      pairs.emplace_back(*a, *b);
    }
    try {
      homs.push_back(hom_build(Subgroup::generated(spec.group, dom), whole, pairs));
    } catch (const Error& e) {
      invalid("seed morphism " + std::to_string(k) + ": " + e.what());
    }
  }
  auto f = fusion_generated(lattice, spec.p, homs);
  if (spec.ambient) f.set_source_group(spec.ambient);
  return f;
}

Json system_to_json(const IsoTable& f) {
  const auto& lat = *f.lattice();
  Json isos = Json::array();
  for (const auto& iso : f.all_isos()) {
    const auto dom = lat[iso.domain].elements();
    std::vector<ElementId> img;
    for (auto x : dom) img.push_back(iso.images[x]);
    isos.push_back(Json{{"domain", dom}, {"codomain", lat[iso.codomain].elements()}, {"images", img}});
  }
  return Json{{"format", "fuskit-system"},
              {"version", 1},
              {"group", group_to_json(*f.group())},
              {"p", f.p()},
              {"carrier", f.carrier().elements()},
              {"provenance", f.provenance()},
              {"isos", std::move(isos)}};
}

PreFusionSystem prefusion_from_json(const Json& j) { return PreFusionSystem(draft_from_json(j)); }

FusionSystem system_from_json(const Json& j) {
  auto d = draft_from_json(j);
  auto check = prefusion_is_fusion(PreFusionSystem(d));
  if (!check.is_fusion) invalid("not a fusion system: " + check.witness->description);
  return FusionSystem::from_closed(std::move(d));
}

}  // namespace fuskit::io
