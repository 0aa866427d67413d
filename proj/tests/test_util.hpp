#pragma once

#include <filesystem>
#include <initializer_list>
#include <vector>

#include "fuskit/catalog.hpp"
#include "fuskit/fusion_system.hpp"
#include "fuskit/group.hpp"
#include "fuskit/lattice.hpp"
#include "oracle/oracle.hpp"

namespace testing_util {

inline std::filesystem::path corpus_dir() { return FUSKIT_CORPUS_DIR; }
inline std::filesystem::path cli_path() { return FUSKIT_CLI_PATH; }

inline fuskit::Perm cycles(std::size_t degree, const std::vector<std::vector<fuskit::Point>>& c) {
  return fuskit::Perm::from_cycles(degree, c);
}

/// Subgroup of g generated by the given permutations.
inline fuskit::Subgroup gen(const fuskit::GroupPtr& g, std::initializer_list<fuskit::Perm> perms) {
  std::vector<fuskit::ElementId> ids;
  for (const auto& x : perms) ids.push_back(g->id_of(x));
  return fuskit::Subgroup::generated(g, ids);
}

/// Lattice index in F of the subgroup generated by the given permutations.
inline std::size_t index(const fuskit::IsoTable& f, std::initializer_list<fuskit::Perm> perms) {
  return f.lattice()->index_of(gen(f.group(), perms));
}

/// Lattice index in F of a subgroup of some other group with the same points.
inline std::size_t carry(const fuskit::IsoTable& f, const fuskit::Subgroup& s) {
  fuskit::Bitset b(f.group()->order());
  for (auto x : s.elements()) b.set(f.group()->id_of(s.group().element(x)));
  return f.lattice()->index_of(b);
}

inline oracle::Members members(const fuskit::Subgroup& s) {
  oracle::Members m(s.group().order(), false);
  for (auto x : s.elements()) m[x] = true;
  return m;
}

inline fuskit::Subgroup from_members(const fuskit::GroupPtr& g, const oracle::Members& m) {
  fuskit::Bitset b(g->order());
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m[i]) b.set(i);
  return fuskit::Subgroup(g, std::move(b));
}

inline fuskit::FusionSystem group_system(const char* name, std::size_t p) {
  return fuskit::fusion_from_group(fuskit::catalog_group(name), p);
}

}  // namespace testing_util
