#include "fuskit/catalog.hpp"

#include <functional>
#include <map>

#include "fuskit/error.hpp"
#include "fuskit/solubility.hpp"

namespace fuskit {

namespace {

Perm cyc(std::size_t degree, std::vector<std::vector<Point>> cycles) { return Perm::from_cycles(degree, cycles); }

const std::map<std::string, std::function<GroupPtr()>>& table() {
  static const std::map<std::string, std::function<GroupPtr()>> t = {
      {"C2", [] { return Group::from_generators(2, {cyc(2, {{0, 1}})}, "C2"); }},
      {"C3", [] { return Group::from_generators(3, {cyc(3, {{0, 1, 2}})}, "C3"); }},
      {"C4", [] { return Group::from_generators(4, {cyc(4, {{0, 1, 2, 3}})}, "C4"); }},
      {"C5", [] { return Group::from_generators(5, {cyc(5, {{0, 1, 2, 3, 4}})}, "C5"); }},
      {"D8", [] { return Group::from_generators(4, {cyc(4, {{0, 1, 2, 3}}), cyc(4, {{0, 2}})}, "D8"); }},
      {"Q8",
       [] {
         return Group::from_generators(8, {cyc(8, {{0, 1, 3, 6}, {2, 5, 7, 4}}), cyc(8, {{0, 2, 3, 7}, {1, 4, 6, 5}})},
                                       "Q8");
       }},
      {"C4xC2", [] { return Group::from_generators(6, {cyc(6, {{0, 1, 2, 3}}), cyc(6, {{4, 5}})}, "C4xC2"); }},
      {"E16",
       [] {
         return Group::from_generators(8, {cyc(8, {{0, 1}}), cyc(8, {{2, 3}}), cyc(8, {{4, 5}}), cyc(8, {{6, 7}})},
                                       "E16");
       }},
      {"D8xC2",
       [] {
         return Group::from_generators(6, {cyc(6, {{0, 1, 2, 3}}), cyc(6, {{1, 3}}), cyc(6, {{4, 5}})}, "D8xC2");
       }},
      {"S3", [] { return Group::from_generators(3, {cyc(3, {{0, 1, 2}}), cyc(3, {{0, 1}})}, "S3"); }},
      {"S4", [] { return Group::from_generators(4, {cyc(4, {{0, 1}}), cyc(4, {{0, 1, 2, 3}})}, "S4"); }},
      {"A4", [] { return Group::from_generators(4, {cyc(4, {{0, 1, 2}}), cyc(4, {{0, 1}, {2, 3}})}, "A4"); }},
      {"SL2_3",
       [] {
         auto g = sl2_on_nonzero_vectors(3);
         return Group::from_generators(g->degree(), g->generators(), "SL2_3");
       }},
      {"A6",
       [] {
         return Group::from_generators(
             6, {cyc(6, {{0, 1, 2}}), cyc(6, {{0, 1, 3}}), cyc(6, {{0, 1, 4}}), cyc(6, {{0, 1, 5}})}, "A6");
       }},
      {"S4xC3",
       [] {
         return Group::from_generators(7, {cyc(7, {{0, 1}}), cyc(7, {{0, 1, 2, 3}}), cyc(7, {{4, 5, 6}})}, "S4xC3");
       }},
      {"Qd2", [] { return qd_group(2); }},
      {"Qd3", [] { return qd_group(3); }},
  };
  return t;
}

}  // namespace

GroupPtr sl2_on_nonzero_vectors(std::size_t p) {
  const std::size_t n = p * p - 1;
  auto point = [p](std::size_t x, std::size_t y) { return static_cast<Point>(x + p * y - 1); };
  auto act = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
    // (x, y) -> (x, y) [[a, b], [c, d]]
    std::vector<Point> im(n);
    for (std::size_t y = 0; y < p; ++y)
      for (std::size_t x = 0; x < p; ++x) {
        if (x == 0 && y == 0) continue;
        im[point(x, y)] = point((x * a + y * c) % p, (x * b + y * d) % p);
      }
    return Perm(std::move(im));
  };
  return Group::from_generators(n, {act(1, 1, 0, 1), act(1, 0, 1, 1)}, "SL2_" + std::to_string(p));
}

GroupPtr catalog_group(std::string_view name) {
  auto it = table().find(std::string(name));
  if (it == table().end()) throw Error(ErrorCode::kValidationError, "unknown group name '" + std::string(name) + "'");
  return it->second();
}

std::vector<std::string> catalog_names() {
  std::vector<std::string> out;
  for (const auto& [k, v] : table()) out.push_back(k);
  return out;
}

}  // namespace fuskit
