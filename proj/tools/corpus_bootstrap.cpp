// Stamps derived-oracle expected values into corpus entries.
//
//   corpus_bootstrap CORPUS_DIR            rewrite every entry's expected block
//   corpus_bootstrap --groups CORPUS_DIR   write catalog groups to CORPUS_DIR/groups
//
// Values with provenance "published" are left untouched.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>

#include <CLI11.hpp>

#include "fuskit/catalog.hpp"
#include "fuskit/error.hpp"
#include "fuskit/io.hpp"
#include "fuskit/verify.hpp"
#include "oracle/oracle.hpp"

namespace {

using fuskit::io::Json;

Json derived(Json value) { return Json{{"value", std::move(value)}, {"provenance", fuskit::verify::kProvenanceOracle}}; }

std::size_t log_p(std::size_t n, std::size_t p) {
  std::size_t k = 0;
  for (; n > 1; n /= p) ++k;
  return k;
}

oracle::Map extend(const fuskit::Group& g, const fuskit::io::SeedMorphism& s) {
  oracle::Map m{{0, 0}};
  std::vector<std::pair<fuskit::ElementId, fuskit::ElementId>> gens;
  for (std::size_t i = 0; i < s.domain_gens.size(); ++i) gens.emplace_back(g.id_of(s.domain_gens[i]), g.id_of(s.images[i]));
  std::vector<fuskit::ElementId> queue{0};
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (auto [x, y] : gens) {
      auto a = g.mul(queue[i], x);
      auto b = g.mul(m.at(queue[i]), y);
      if (m.emplace(a, b).second) queue.push_back(a);
    }
  return m;
}

Json group_block(const fuskit::Group& g, std::size_t p) {
  const auto sylow = oracle::greedy_sylow(g, p);
  const auto n = oracle::count(sylow);
  const auto tower = oracle::op_tower(g, sylow, p);
  const bool soluble = tower.back() == sylow;
  const auto& op = tower.size() > 1 ? tower[1] : tower[0];
  const oracle::Members all(g.order(), true);
  const auto g_op = oracle::core(g, sylow);
  const auto g_opp = oracle::o_pprime(g, p);

  Json orders = Json::array();
  for (const auto& t : tower) orders.push_back(oracle::count(t));
  Json b;
  b["sylow_order"] = derived(n);
  b["subgroup_count"] = derived(oracle::subgroups_within(g, sylow, log_p(n, p)).size());
  b["class_count"] = derived(oracle::fusion_class_count(g, sylow));
  b["iso_count"] = derived(oracle::group_iso_count(g, sylow));
  b["aut_p_order"] = derived(oracle::aut_p_order(g, sylow));
  b["o_p_order"] = derived(oracle::count(op));
  b["tower"] = derived(orders);
  b["p_soluble"] = derived(soluble);
  b["p_length"] = derived(soluble ? Json(tower.size() - 1) : Json(nullptr));
  b["constrained"] = derived(oracle::subset(oracle::centralizer(g, sylow, op), op));
  b["model_candidate"] = derived(oracle::count(g_opp) == 1 && oracle::subset(oracle::centralizer(g, all, g_op), g_op));
  b["group_p_soluble"] = derived(oracle::group_is_p_soluble(g, p));
  return b;
}

Json generated_block(const fuskit::io::FusionSpec& spec) {
  const auto& g = *spec.group;
  std::vector<oracle::Map> seeds;
  for (const auto& s : spec.seeds) seeds.push_back(extend(g, s));
  const auto gens = log_p(g.order(), spec.p);
  const auto isos = oracle::generated_isos(g, seeds, gens);
  // Classes: union-find over the domains and images of the isos.
  std::map<oracle::Members, oracle::Members> parent;
  std::function<oracle::Members(const oracle::Members&)> find = [&](const oracle::Members& x) {
    auto it = parent.find(x);
    if (it == parent.end() || it->second == x) return x;
    return it->second = find(it->second);
  };
  for (const auto& m : isos) {
    oracle::Members d(g.order(), false), i(g.order(), false);
    for (const auto& [a, b] : m) {
      d[a] = true;
      i[b] = true;
    }
    parent.emplace(d, d);
    parent.emplace(i, i);
    auto rd = find(d), ri = find(i);
    if (rd != ri) parent[rd] = ri;
  }
  std::set<oracle::Members> roots;
  for (const auto& [k, v] : parent) roots.insert(find(k));

  Json b;
  b["sylow_order"] = derived(g.order());
  b["subgroup_count"] = derived(oracle::subgroups_within(g, oracle::Members(g.order(), true), gens).size());
  b["class_count"] = derived(roots.size());
  b["iso_count"] = derived(isos.size());
  return b;
}

void stamp(const std::filesystem::path& path) {
  auto j = fuskit::io::read_json_file(path);
  auto entry = fuskit::verify::entry_from_json(j, path);
  Json expected = j.value("expected", Json::object());
  for (auto p : entry.primes) {
    auto spec = fuskit::verify::entry_spec(entry, p);
    Json block = spec.mode == fuskit::io::SpecMode::kFromGroup ? group_block(*spec.group, p) : generated_block(spec);
    auto key = std::to_string(p);
    Json merged = expected.value(key, Json::object());
    for (auto it = merged.begin(); it != merged.end();)
      it = it->value("provenance", "") == fuskit::verify::kProvenanceOracle ? merged.erase(it) : std::next(it);
    for (auto& [k, v] : block.items())
      if (!merged.contains(k)) merged[k] = v;
    expected[key] = merged;
  }
  j["expected"] = expected;
  std::ofstream(path) << fuskit::io::dump(j);
  std::cout << "stamped " << entry.name << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stamp oracle-derived expected values into corpus entries"};
  std::string dir;
  bool groups = false;
  app.add_flag("--groups", groups, "Write the catalog groups to DIR/groups instead");
  app.add_option("dir", dir, "Corpus directory")->required();
  CLI11_PARSE(app, argc, argv);
  try {
    if (groups) {
      std::filesystem::create_directories(std::filesystem::path(dir) / "groups");
      for (const auto& name : fuskit::catalog_names())
        std::ofstream(std::filesystem::path(dir) / "groups" / (name + ".json"))
            << fuskit::io::dump(fuskit::io::group_to_json(*fuskit::catalog_group(name)));
      return 0;
    }
    std::vector<std::filesystem::path> paths;
    for (const auto& de : std::filesystem::directory_iterator(dir))
      if (de.is_regular_file() && de.path().extension() == ".json") paths.push_back(de.path());
    std::sort(paths.begin(), paths.end());
    for (const auto& p : paths) stamp(p);
  } catch (const fuskit::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return 0;
}
