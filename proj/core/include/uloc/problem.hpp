#pragma once

#include <map>
#include <memory>
#include <nlohmann/json.hpp>
#include <string>
#include <variant>
#include <vector>

#include "uloc/engines.hpp"
#include "uloc/error.hpp"

namespace uloc {

struct RingDecl {
  std::string kind;  // integers, poly, path_algebra
  std::uint32_t p = 0;
  std::size_t vertices = 0;
  std::vector<std::pair<std::size_t, std::size_t>> arrows;  // 1-based

  nlohmann::json to_json() const;
};

struct FractionDecl {
  std::string numerator;
  std::string denominator;
};

// A parsed problem file. Modules and morphisms are stored in canonical form;
// the file may give them in its own coordinates.
template <class Cat>
struct Problem {
  using Module = typename Cat::Module;
  using Morphism = typename Cat::Morphism;

  RingDecl ring;
  std::shared_ptr<const Cat> cat;
  Bounds bounds;
  std::vector<std::pair<std::string, Module>> modules;
  std::vector<std::pair<std::string, Morphism>> morphisms;
  std::vector<std::pair<std::string, std::vector<std::string>>> sigma;
  std::vector<std::string> ranks;
  std::vector<std::pair<std::string, FractionDecl>> fractions;

  const Module& module(const std::string& name) const;
  const Morphism& morphism(const std::string& name) const;
  bool has_module(const std::string& name) const;
  bool has_morphism(const std::string& name) const;
  const FractionDecl& fraction(const std::string& name) const;
  // The named generator list, or the first one when name is empty.
  std::pair<std::string, std::vector<Morphism>> sigma_maps(const std::string& name) const;
  std::vector<Module> module_list() const;

  nlohmann::json to_json() const;
};

using AnyProblem = std::variant<Problem<IntegerCategory>, Problem<PolyCategory>, Problem<QuiverCategory>>;

// Parses problem text; syntax errors report line and column.
AnyProblem parse_problem(const std::string& text);
AnyProblem parse_problem(const nlohmann::json& j);
AnyProblem load_problem(const std::string& path);
Bounds parse_bounds(const nlohmann::json& j, Bounds base = {});
nlohmann::json bounds_to_json(const Bounds& b);

// Rank function names: "p:3", "rational", "generators" over the integers;
// "rational", "generators", "irreducible:<coefficients low to high>" over
// polynomials; "vertex:w1,w2,..." over path algebras.
RankFunction<IntegerCategory> parse_rank(const IntegerCategory& C, const std::string& name);
RankFunction<PolyCategory> parse_rank(const PolyCategory& C, const std::string& name);
RankFunction<QuiverCategory> parse_rank(const QuiverCategory& C, const std::string& name);

extern template struct Problem<IntegerCategory>;
extern template struct Problem<PolyCategory>;
extern template struct Problem<QuiverCategory>;

}  // namespace uloc
