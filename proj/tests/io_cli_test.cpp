#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "fuskit/catalog.hpp"
#include "fuskit/error.hpp"
#include "fuskit/io.hpp"
#include "fuskit/quotients.hpp"
#include "fuskit/verify.hpp"
#include "test_util.hpp"

using namespace fuskit;
using io::Json;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = testing_util::cli_path().string() + " " + args + " 2>/dev/null";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("fuskit_test_" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path write(const std::string& name, const std::string& text) const {
    auto p = path_ / name;
    std::filesystem::create_directories(p.parent_path());
    std::ofstream(p) << text;
    return p;
  }

 private:
  std::filesystem::path path_;
};

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kValidationError;
}

std::string read(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kD8 = R"({"name": "D8", "degree": 4, "generators": [[1, 2, 3, 0], [2, 1, 0, 3]]})";

}  // namespace

TEST(Parse, GroupFile) {
  auto g = io::group_from_json(io::parse_json(kD8));
  EXPECT_EQ(g->order(), 8u);
  EXPECT_EQ(g->name(), "D8");
}

TEST(Parse, GroupErrors) {
  EXPECT_EQ(code_of([] { io::group_from_json(io::parse_json(R"({"name": "x", "degree": 3, "generators": [[0, 0, 1]]})")); }),
            ErrorCode::kParseError);
  EXPECT_EQ(code_of([] { io::group_from_json(io::parse_json(R"({"name": "x", "degree": 3, "generators": [[0, 1, 5]]})")); }),
            ErrorCode::kValidationError);
  EXPECT_EQ(code_of([] { io::group_from_json(io::parse_json(R"({"name": "x", "degree": 3, "generators": [[0, 1]]})")); }),
            ErrorCode::kValidationError);
  EXPECT_EQ(code_of([] { io::group_from_json(io::parse_json(R"({"generators": []})")); }), ErrorCode::kParseError);
  try {
    io::parse_json("{\n  \"degree\": 3,\n  oops\n}");
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParseError);
    EXPECT_NE(std::string(e.what()).find("input:3:"), std::string::npos) << e.what();
  }
}

TEST(Parse, GroupRoundTrip) {
  for (const auto& name : catalog_names()) {
    auto g = catalog_group(name);
    auto j = io::group_to_json(*g);
    auto back = io::group_from_json(io::parse_json(io::dump(j)));
    EXPECT_TRUE(back->same_as(*g)) << name;
    EXPECT_EQ(io::dump(io::group_to_json(*back)), io::dump(j)) << name;
  }
}

TEST(Parse, SpecBuildsOrderSixteenExample) {
  auto spec = verify::entry_spec(verify::load_entry(testing_util::corpus_dir() / "E16.json"), 2);
  EXPECT_EQ(spec.mode, io::SpecMode::kGenerated);
  ASSERT_EQ(spec.seeds.size(), 2u);
  auto f = io::build_system(spec);
  EXPECT_EQ(f.iso_count(), 71u);
  auto a = io::subgroup_index(f.lattice(), spec.subgroups.at("A"));
  EXPECT_FALSE(prefusion_is_fusion(bar_system(f, a)).is_fusion);
}

TEST(Parse, SpecErrors) {
  TempDir dir;
  auto base = dir.path();
  EXPECT_EQ(code_of([&] { io::fusion_spec_from_json(io::parse_json(R"({"group": "S4"})"), base); }),
            ErrorCode::kParseError);
  EXPECT_EQ(code_of([&] { io::fusion_spec_from_json(io::parse_json(R"({"group": "S4", "p": 4})"), base); }),
            ErrorCode::kValidationError);
  EXPECT_EQ(code_of([&] { io::fusion_spec_from_json(io::parse_json(R"({"group": "NoSuchGroup", "p": 2})"), base); }),
            ErrorCode::kParseError);
  // Seeds must be homomorphisms.
  const char* bad = R"({"group": "C4xC2", "p": 2, "mode": "generated",
      "seed_morphisms": [{"domain_gens": [[1, 2, 3, 0, 4, 5]], "images": [[0, 1, 2, 3, 5, 4]]}]})";
  EXPECT_EQ(code_of([&] { io::build_system(io::fusion_spec_from_json(io::parse_json(bad), base)); }),
            ErrorCode::kValidationError);
}

TEST(Serialize, SystemRoundTrip) {
  for (const char* name : {"S4", "A6", "SL2_3", "Qd3"}) {
    auto g = catalog_group(name);
    for (auto p : prime_divisors(g->order())) {
      auto f = fusion_from_group(g, p);
      auto text = io::dump(io::system_to_json(f));
      auto back = io::system_from_json(io::parse_json(text));
      EXPECT_EQ(back.iso_count(), f.iso_count());
      EXPECT_EQ(io::dump(io::system_to_json(back)), text) << name << " " << p;
    }
  }
}

TEST(Serialize, RejectsBrokenTables) {
  auto f = fusion_from_group(catalog_group("S4"), 2);
  auto j = io::system_to_json(f);
  // Drop every iso except identities: conjugations go missing.
  Json isos = Json::array();
  for (const auto& iso : j["isos"])
    if (iso["domain"] == iso["codomain"] && iso["domain"] == iso["images"]) isos.push_back(iso);
  auto broken = j;
  broken["isos"] = isos;
  EXPECT_EQ(code_of([&] { io::system_from_json(broken); }), ErrorCode::kValidationError);
  auto wrong_version = j;
  wrong_version["version"] = 7;
  EXPECT_EQ(code_of([&] { io::system_from_json(wrong_version); }), ErrorCode::kParseError);
  // A non-injective map.
  auto collapsed = j;
  for (auto& iso : collapsed["isos"])
    if (iso["domain"].size() == 4) {
      iso["images"][1] = iso["images"][0];
      break;
    }
  EXPECT_THROW(io::system_from_json(collapsed), Error);
}

TEST(Verify, EmptyCorpus) {
  TempDir dir;
  auto report = verify::run_verification(dir.path(), {});
  EXPECT_TRUE(report.ok());
  EXPECT_EQ(verify::report_to_json_text(report), R"({"version":1,"theorems":[]})");
  auto r = run("verify " + dir.path().string() + " --format json");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "{\"version\":1,\"theorems\":[]}\n");
}

TEST(Verify, DeterministicAndRoundTrips) {
  auto a = verify::report_to_json(verify::run_verification(testing_util::corpus_dir(), {}));
  auto b = verify::report_to_json(verify::run_verification(testing_util::corpus_dir(), {}));
  EXPECT_EQ(a.dump(), b.dump());
  auto back = verify::report_from_json(a);
  EXPECT_EQ(verify::report_to_json(back).dump(), a.dump());
  EXPECT_EQ(a["theorems"].size(), verify::theorem_ids().size());
}

TEST(Verify, TextMatchesGolden) {
  auto report = verify::run_verification(testing_util::corpus_dir(), {});
  EXPECT_TRUE(report.ok());
  EXPECT_EQ(verify::report_to_text(report), read(std::filesystem::path(FUSKIT_GOLDEN_DIR) / "verify_corpus.txt"));
}

TEST(Verify, TheoremDOnS4) {
  verify::Options opts;
  opts.theorem = "theorem-D";
  opts.entry = "S4";
  auto report = verify::run_verification(testing_util::corpus_dir(), opts);
  ASSERT_EQ(report.theorems.size(), 1u);
  EXPECT_EQ(report.theorems[0].id, "theorem-D");
  EXPECT_TRUE(report.ok());
  EXPECT_GT(report.theorems[0].instances, 0u);
  EXPECT_LT(report.theorems[0].instances,
            verify::run_verification(testing_util::corpus_dir(), verify::Options{.theorem = "theorem-D", .entry = std::nullopt}).theorems[0].instances);
}

TEST(Verify, UnknownFilters) {
  verify::Options opts;
  opts.theorem = "theorem-Z";
  EXPECT_EQ(code_of([&] { verify::run_verification(testing_util::corpus_dir(), opts); }),
            ErrorCode::kValidationError);
  verify::Options e;
  e.entry = "nope";
  EXPECT_EQ(code_of([&] { verify::run_verification(testing_util::corpus_dir(), e); }), ErrorCode::kValidationError);
  EXPECT_EQ(run("verify " + testing_util::corpus_dir().string() + " --theorem theorem-Z").code, 2);
}

TEST(Verify, FailureCarriesReplayableWitness) {
  TempDir dir;
  auto src = io::read_json_file(testing_util::corpus_dir() / "S4.json");
  src["group"] = "S4";
  src["expected"]["2"]["iso_count"] = Json{{"value", 29}, {"provenance", "derived-oracle"}};
  dir.write("S4.json", io::dump(src));
  auto report = verify::run_verification(dir.path(), {});
  EXPECT_FALSE(report.ok());
  std::size_t failures = 0;
  for (const auto& t : report.theorems)
    for (const auto& w : t.failures) {
      ++failures;
      EXPECT_EQ(t.id, "expected-values");
      EXPECT_EQ(w.entry, "S4");
      EXPECT_EQ(w.p, 2u);
      EXPECT_NE(w.replay.find("--theorem expected-values --entry S4"), std::string::npos);
      ASSERT_TRUE(w.data.contains("system"));
      EXPECT_NO_THROW(io::system_from_json(w.data["system"]));
    }
  EXPECT_EQ(failures, 1u);
  auto json = verify::report_to_json(report);
  EXPECT_EQ(verify::report_to_json(verify::report_from_json(json)).dump(), json.dump());

  auto r = run("verify " + dir.path().string());
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("replay:"), std::string::npos);
  auto replay = run("verify " + dir.path().string() + " --theorem expected-values --entry S4");
  EXPECT_EQ(replay.code, 1);
}

TEST(Verify, ExpectedValuesNeedProvenance) {
  TempDir dir;
  auto src = io::read_json_file(testing_util::corpus_dir() / "S4.json");
  src["group"] = "S4";
  src["expected"]["2"]["iso_count"] = Json{{"value", 28}};
  dir.write("S4.json", io::dump(src));
  EXPECT_THROW(verify::load_corpus(dir.path()), Error);
}

TEST(Cli, GroupInfo) {
  TempDir dir;
  auto path = dir.write("d8.json", kD8);
  auto r = run("group info " + path.string());
  ASSERT_EQ(r.code, 0);
  auto j = io::parse_json(r.out);
  EXPECT_EQ(j["order"], 8);
  EXPECT_EQ(j["subgroup_count"], 10);
  EXPECT_EQ(j["center_order"], 2);
  EXPECT_EQ(run("group info " + dir.write("bad.json", "{nope").string()).code, 2);
  EXPECT_EQ(run("group info " + (dir.path() / "missing.json").string()).code, 2);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
}

TEST(Cli, BuildCheckAndQuotient) {
  TempDir dir;
  auto spec = dir.write("s4.json", R"({"group": "S4", "p": 2})");
  auto out = dir.path() / "s4.system.json";
  ASSERT_EQ(run("fusion build " + spec.string() + " -o " + out.string()).code, 0);
  auto sys = io::system_from_json(io::read_json_file(out));
  EXPECT_EQ(sys.iso_count(), 28u);

  auto check = run("fusion check " + out.string() + " --saturated --op --psoluble --constrained --closure");
  ASSERT_EQ(check.code, 0);
  auto j = io::parse_json(check.out);
  EXPECT_EQ(j["saturated"], true);
  EXPECT_EQ(j["o_p"].size(), 4u);
  EXPECT_EQ(j["tower"], Json::array({1, 4, 8}));
  EXPECT_EQ(j["p_length"], 2);
  EXPECT_EQ(j["constrained"], true);
  EXPECT_EQ(j["strongly_closed"].size(), 3u);

  auto from_spec = io::parse_json(run("fusion check " + spec.string() + " --psoluble --thompson").out);
  EXPECT_EQ(from_spec["qdp_free"], false);
  EXPECT_EQ(from_spec["thompson_factorization"], false);

  auto e16 = dir.write("e16.json", io::dump([] {
    auto j = io::read_json_file(testing_util::corpus_dir() / "E16.json");
    j.erase("expected");
    j.erase("primes");
    j["p"] = 2;
    j["group"] = "E16";
    return j;
  }()));
  auto bar = run("quotient " + e16.string() + " --by '[[0,1,2,3,4,5,7,6]]' --mode bar");
  ASSERT_EQ(bar.code, 0);
  auto jb = io::parse_json(bar.out);
  EXPECT_EQ(jb["closure_status"], "not-a-fusion-system");
  EXPECT_EQ(jb["witness"]["morphisms"].size(), 2u);
  EXPECT_NO_THROW(io::prefusion_from_json(jb["system"]));
  auto fac = io::parse_json(run("quotient " + e16.string() + " --by '[[0,1,2,3,4,5,7,6]]' --mode factor").out);
  EXPECT_EQ(fac["closure_status"], "fusion-system");
  EXPECT_NO_THROW(io::system_from_json(fac["system"]));
  EXPECT_EQ(run("quotient " + e16.string() + " --by '[[0,1,2,3,4,5,7,6]]' --mode sideways").code, 2);
  EXPECT_EQ(run("quotient " + e16.string() + " --by '[[1,0,2,3,4,5,6,7,8]]'").code, 2);
}

TEST(Cli, OrderCapEnvironment) {
  TempDir dir;
  auto spec = dir.write("a6.json", R"({"group": "A6", "p": 2})");
  const std::string cmd = "FUSKIT_ORDER_CAP=100 " + testing_util::cli_path().string() + " fusion check " +
                          spec.string() + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  EXPECT_EQ(WEXITSTATUS(status), 2);
}
