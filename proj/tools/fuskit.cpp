#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "fuskit/closure_analysis.hpp"
#include "fuskit/error.hpp"
#include "fuskit/io.hpp"
#include "fuskit/lattice.hpp"
#include "fuskit/quotients.hpp"
#include "fuskit/solubility.hpp"
#include "fuskit/subgroup_ops.hpp"
#include "fuskit/verify.hpp"

namespace {

using fuskit::io::Json;

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

fuskit::FusionSystem load_system(const std::string& path) {
  auto j = fuskit::io::read_json_file(path);
  if (j.is_object() && j.contains("format")) return fuskit::io::system_from_json(j);
  return fuskit::io::build_system(fuskit::io::fusion_spec_from_json(j, std::filesystem::path(path).parent_path()));
}

std::size_t parse_subgroup(const fuskit::FusionSystem& f, const std::string& text, const std::string& flag) {
  auto gens = fuskit::io::perms_from_json(fuskit::io::parse_json(text, flag), flag);
  auto i = fuskit::io::subgroup_index(f.lattice(), gens);
  if (!f.is_object(i)) throw fuskit::Error(fuskit::ErrorCode::kValidationError, flag + " is not inside the carrier");
  return i;
}

Json elements(const fuskit::Subgroup& s) { return Json(s.elements()); }

void emit(const Json& j, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << fuskit::io::dump(j);
    return;
  }
  std::ofstream file(out);
  if (!file) throw fuskit::Error(fuskit::ErrorCode::kParseError, "cannot write " + out);
  file << fuskit::io::dump(j);
}

int group_info(const std::string& path) {
  auto g = fuskit::io::group_from_json(fuskit::io::read_json_file(path));
  const auto whole = fuskit::Subgroup::whole(g);
  Json sylow = Json::object();
  for (auto p : fuskit::prime_divisors(g->order())) sylow[std::to_string(p)] = fuskit::p_part(g->order(), p);
  Json j{{"name", g->name()},
         {"degree", g->degree()},
         {"order", g->order()},
         {"abelian", g->is_abelian()},
         {"center_order", fuskit::center(whole).order()},
         {"subgroup_count", fuskit::Lattice::build(g)->size()},
         {"sylow_orders", sylow}};
  emit(j, "");
  return kOk;
}

struct CheckFlags {
  bool saturated = false;
  bool closure = false;
  std::string normal;
  bool op = false;
  bool constrained = false;
  bool psoluble = false;
  bool thompson = false;
};

int fusion_check(const std::string& path, const CheckFlags& flags) {
  const auto f = load_system(path);
  const auto& lat = *f.lattice();
  Json j{{"group", f.group()->name()}, {"p", f.p()}, {"carrier_order", f.carrier().order()}, {"iso_count", f.iso_count()}};
  const bool any = flags.closure || !flags.normal.empty() || flags.op || flags.constrained || flags.psoluble ||
                   flags.thompson;
  if (flags.saturated || !any) {
    std::string why;
    j["saturated"] = fuskit::check_saturation(f, &why);
    if (!why.empty()) j["saturation_failure"] = why;
  }
  if (flags.closure) {
    Json strong = Json::array(), weak = Json::array();
    for (auto i : f.objects()) {
      if (fuskit::is_strongly_closed(f, i)) strong.push_back(elements(lat[i]));
      if (fuskit::is_weakly_closed(f, i)) weak.push_back(elements(lat[i]));
    }
    j["strongly_closed"] = strong;
    j["weakly_closed"] = weak;
  }
  if (!flags.normal.empty()) {
    auto q = parse_subgroup(f, flags.normal, "--normal");
    j["normal"] = f.saturated() ? fuskit::is_normal_subgroup(f, q) : fuskit::is_normal_by_definition(f, q);
  }
  if (flags.op) j["o_p"] = elements(fuskit::o_p(f));
  if (flags.constrained) j["constrained"] = fuskit::is_constrained(f);
  if (flags.psoluble) {
    auto rep = fuskit::o_p_tower(f);
    Json tower = Json::array();
    for (const auto& t : rep.tower) tower.push_back(t.order());
    j["tower"] = tower;
    j["p_soluble"] = rep.p_soluble;
    j["p_length"] = rep.p_length ? Json(*rep.p_length) : Json(nullptr);
    if (f.source_group()) j["qdp_free"] = fuskit::is_qdp_free_group(f.source_group(), f.p());
  }
  if (flags.thompson) j["thompson_factorization"] = fuskit::thompson_factorization_holds(f);
  emit(j, "");
  return kOk;
}

int quotient(const std::string& path, const std::string& by, const std::string& mode, const std::string& out) {
  const auto f = load_system(path);
  const auto q = parse_subgroup(f, by, "--by");
  Json j{{"mode", mode}};
  if (mode == "factor") {
    auto fq = fuskit::factor_system(f, q);
    j["closure_status"] = "fusion-system";
    j["system"] = fuskit::io::system_to_json(fq);
  } else if (mode == "generated-bar") {
    auto fq = fuskit::generated_bar(f, q);
    j["closure_status"] = "fusion-system";
    j["system"] = fuskit::io::system_to_json(fq);
  } else {
    auto ctx = fuskit::quotient_context(f, q);
    auto bar = fuskit::bar_system(f, ctx);
    auto check = fuskit::prefusion_is_fusion(bar);
    j["closure_status"] = check.is_fusion ? "fusion-system" : "not-a-fusion-system";
    if (check.witness) {
      Json maps = Json::array();
      const auto& qlat = *ctx.lattice;
      for (const auto& m : check.witness->maps) {
        std::vector<fuskit::ElementId> img;
        for (auto x : qlat[m.domain].elements()) img.push_back(m.images[x]);
        maps.push_back(Json{{"domain", qlat[m.domain].elements()}, {"codomain", qlat[m.codomain].elements()}, {"images", img}});
      }
      j["witness"] = Json{{"kind", check.witness->kind}, {"description", check.witness->description}, {"morphisms", maps}};
    }
    j["system"] = fuskit::io::system_to_json(bar);
  }
  emit(j, out);
  return kOk;
}

int verify(const std::string& dir, const fuskit::verify::Options& options, const std::string& format, bool timing) {
  auto report = fuskit::verify::run_verification(dir, options);
  if (format == "json")
    std::cout << fuskit::verify::report_to_json_text(report, timing) << "\n";
  else
    std::cout << fuskit::verify::report_to_text(report, timing);
  return report.ok() ? kOk : kFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computation with fusion systems on finite p-groups"};
  app.require_subcommand(1);

  auto* group = app.add_subcommand("group", "Finite permutation groups")->require_subcommand(1);
  std::string group_file;
  auto* info = group->add_subcommand("info", "Summarise a group file");
  info->add_option("FILE", group_file, "Group JSON file")->required();

  auto* fusion = app.add_subcommand("fusion", "Fusion systems")->require_subcommand(1);
  std::string spec_file, out_file;
  auto* build = fusion->add_subcommand("build", "Build a fusion system from a spec");
  build->add_option("SPEC", spec_file, "Fusion spec JSON file")->required();
  build->add_option("-o,--output", out_file, "Output file (default stdout)");

  std::string system_file;
  CheckFlags flags;
  auto* check = fusion->add_subcommand("check", "Report properties of a fusion system");
  check->add_option("SYSTEM", system_file, "Serialized system or fusion spec")->required();
  check->add_flag("--saturated", flags.saturated, "Saturation");
  check->add_flag("--closure", flags.closure, "Weakly and strongly closed subgroups");
  check->add_option("--normal", flags.normal, "Normality of the subgroup generated by a JSON list of permutations");
  check->add_flag("--op", flags.op, "O_p(F)");
  check->add_flag("--constrained", flags.constrained, "Constraint");
  check->add_flag("--psoluble", flags.psoluble, "O_p tower, p-solubility and p-length");
  check->add_flag("--thompson", flags.thompson, "Thompson factorization");

  std::string quotient_file, by, mode = "factor", quotient_out;
  auto* quot = app.add_subcommand("quotient", "Quotient of a fusion system by a normal subgroup of P");
  quot->add_option("SYSTEM", quotient_file, "Serialized system or fusion spec")->required();
  quot->add_option("--by", by, "JSON list of generating permutations")->required();
  quot->add_option("--mode", mode, "factor, bar or generated-bar")
      ->check(CLI::IsMember({"factor", "bar", "generated-bar"}));
  quot->add_option("-o,--output", quotient_out, "Output file (default stdout)");

  std::string corpus_dir, format = "text", theorem, entry;
  bool timing = false;
  std::uint64_t seed = 1;
  auto* ver = app.add_subcommand("verify", "Run the theorem suites over a corpus");
  ver->add_option("CORPUS_DIR", corpus_dir, "Corpus directory")->required();
  ver->add_option("--theorem", theorem, "Run a single suite");
  ver->add_option("--entry", entry, "Restrict to one corpus entry");
  ver->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  ver->add_option("--seed", seed, "Seed for randomized instances");
  ver->add_flag("--timing", timing, "Include elapsed times");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (info->parsed()) return group_info(group_file);
    if (build->parsed()) {
      emit(fuskit::io::system_to_json(load_system(spec_file)), out_file);
      return kOk;
    }
    if (check->parsed()) return fusion_check(system_file, flags);
    if (quot->parsed()) return quotient(quotient_file, by, mode, quotient_out);
    if (ver->parsed()) {
      fuskit::verify::Options options;
      if (!theorem.empty()) options.theorem = theorem;
      if (!entry.empty()) options.entry = entry;
      options.seed = seed;
      return verify(corpus_dir, options, format, timing);
    }
  } catch (const fuskit::Error& e) {
    std::cerr << "fuskit: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
