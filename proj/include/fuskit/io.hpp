#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "fuskit/fusion_system.hpp"

namespace fuskit::io {

using Json = nlohmann::json;

/// Canonical text: sorted keys, two-space indent, trailing newline.
std::string dump(const Json& j);
/// Parses JSON text; syntax errors become ParseError with line and column.
Json parse_json(std::string_view text, const std::string& where = "input");
Json read_json_file(const std::filesystem::path& path);

/// {"name", "degree", "generators": [[one-line images]]}.
Json group_to_json(const Group& g);
/// ParseError for malformed fields and repeated images, ValidationError for
/// out-of-range points.
GroupPtr group_from_json(const Json& j);
/// A group reference: inline object, catalog name, or path to a group file
/// (relative to `base`).
GroupPtr resolve_group(const Json& ref, const std::filesystem::path& base);

struct SeedMorphism {
  std::vector<Perm> domain_gens;
  std::vector<Perm> images;
};

enum class SpecMode { kFromGroup, kGenerated };

/// Input description of a fusion system.
struct FusionSpec {
  GroupPtr group;
  std::size_t p = 0;
  SpecMode mode = SpecMode::kFromGroup;
  GroupPtr ambient;                                   // optional
  std::vector<SeedMorphism> seeds;                    // generated mode only
  std::map<std::string, std::vector<Perm>> subgroups;  // named subgroups, by generators
};

FusionSpec fusion_spec_from_json(const Json& j, const std::filesystem::path& base);
FusionSpec load_fusion_spec(const std::filesystem::path& path);
FusionSystem build_system(const FusionSpec& spec);

/// Finds the subgroup generated by `gens` in the lattice group. The
/// permutations must be elements of that group (ValidationError otherwise).
std::size_t subgroup_index(const LatticePtr& lattice, const std::vector<Perm>& gens);
std::vector<Perm> perms_from_json(const Json& j, const std::string& field);
Json perm_to_json(const Perm& perm);

/// Serialized iso table: subgroups as sorted element-id lists, images listed
/// in the order of the domain's ids.
Json system_to_json(const IsoTable& f);
/// Validates every map and the fusion-system axioms (ValidationError).
FusionSystem system_from_json(const Json& j);
PreFusionSystem prefusion_from_json(const Json& j);

}  // namespace fuskit::io
