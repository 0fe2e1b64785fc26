#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "uloc/commands.hpp"

using namespace uloc;
using json = nlohmann::json;

namespace {

std::string data(const std::string& name) { return std::string(ULOC_TEST_DATA) + "/" + name; }

json normalised(const AnyProblem& p) {
  return std::visit([](const auto& P) { return P.to_json(); }, p);
}

template <class E>
std::string error_of(const std::string& text) {
  try {
    parse_problem(text);
  } catch (const E& e) {
    return e.message();
  }
  ADD_FAILURE() << "no error for " << text;
  return {};
}

Report run_on(const std::string& file, std::string command, std::vector<std::string> args,
              std::string rho = {}) {
  Invocation inv;
  inv.command = std::move(command);
  inv.args = std::move(args);
  inv.rho = std::move(rho);
  return run(load_problem(data(file)), inv);
}

}  // namespace

TEST(ProblemFile, NormalisationIsIdempotent) {
  for (const char* f : {"z12.json", "a2.json", "poly.json"}) {
    json once = normalised(load_problem(data(f)));
    json twice = normalised(parse_problem(once));
    EXPECT_EQ(once.dump(), twice.dump()) << f;
  }
}

TEST(ProblemFile, UserCoordinatesAreConverted) {
  // generators e1, e2 with 2e1 = 3e2 = 0: e1 + e2 generates Z/6
  auto p = parse_problem(std::string(R"({
    "ring": "integers",
    "modules": {"N": {"relations": [[2, 0], [0, 3]], "generators": 2}, "Z6": {"cyclic": 6}},
    "morphisms": {"f": {"source": "N", "target": "Z6", "matrix": [[3], [4]]},
                  "g": {"source": "Z6", "target": "N", "matrix": [[1, 1]]}}
  })"));
  const auto& P = std::get<Problem<IntegerCategory>>(p);
  const auto& C = *P.cat;
  EXPECT_EQ(C.describe(P.module("N")), "Z/6");
  auto fg = C.compose(P.morphism("f"), P.morphism("g"));
  EXPECT_TRUE(C.equal(fg, C.identity(P.module("N"))));
}

TEST(ProblemFile, QuiverLiterals) {
  auto p = load_problem(data("a2.json"));
  const auto& P = std::get<Problem<QuiverCategory>>(p);
  const auto& C = *P.cat;
  EXPECT_EQ(P.module("X").dim(0), 2u);
  EXPECT_EQ(P.module("X").dim(1), 1u);
  const auto& a = P.morphism("alpha");
  EXPECT_TRUE(C.same_module(a.source(), C.projective(1)));
  EXPECT_TRUE(C.is_injective(a));
  EXPECT_FALSE(C.is_surjective(a));
}

TEST(ProblemFile, SyntaxErrorsCarryPosition) {
  std::ifstream in(data("bad_syntax.json"));
  std::stringstream ss;
  ss << in.rdbuf();
  auto msg = error_of<ParseError>(ss.str());
  EXPECT_EQ(msg.rfind("line 5, column 3", 0), 0u) << msg;
}

TEST(ProblemFile, UnresolvedNames) {
  EXPECT_NE(error_of<ReferenceError>(R"({"ring": "integers", "modules": {"M": {"cyclic": 4}},
      "morphisms": {"f": {"source": "M", "target": "Q", "matrix": [[1]]}}})").find("\"Q\""),
            std::string::npos);
  error_of<ReferenceError>(R"({"ring": "integers", "morphisms": {"f": {"compose": ["g", "h"]}}})");
  error_of<ReferenceError>(R"({"ring": {"kind": "path_algebra", "p": 2, "vertices": 2, "arrows": [[1, 3]]}})");
  error_of<ReferenceError>(R"({"ring": "integers", "sigma": ["nothing"]})");
}

TEST(ProblemFile, MorphismsMayReferToLaterOnes) {
  auto p = parse_problem(std::string(R"({"ring": "integers", "modules": {"Z": {"free": 1}},
      "morphisms": {"four": {"compose": ["two", "two"]},
                    "two": {"source": "Z", "target": "Z", "matrix": [[2]]}}})"));
  const auto& P = std::get<Problem<IntegerCategory>>(p);
  EXPECT_EQ(P.morphism("four").matrix()(0, 0), 4);
}

TEST(ProblemFile, BoundsAreChecked) {
  error_of<BoundViolation>(R"({"ring": "integers", "bounds": {"depth": 99}})");
  error_of<BoundViolation>(R"({"ring": "integers", "bounds": {"coeff_window": -1}})");
  error_of<ParseError>(R"({"ring": "integers", "bounds": {"speed": 1}})");
  auto p = parse_problem(std::string(R"({"ring": "integers", "bounds": {"depth": 3, "seed": 7}})"));
  const auto& b = std::get<Problem<IntegerCategory>>(p).bounds;
  EXPECT_EQ(b.depth, 3);
  EXPECT_EQ(b.seed, 7u);
}

TEST(ProblemFile, StructuralErrors) {
  error_of<ParseError>(R"({"modules": {}})");
  error_of<ParseError>(R"({"ring": "octonions"})");
  error_of<ParseError>(R"({"ring": "integers", "extras": {}})");
  error_of<ParseError>(R"({"ring": "integers", "rank": "p:x"})");
  error_of<NotPrime>(R"({"ring": "integers", "rank": "p:4"})");
  error_of<NotPrime>(R"({"ring": {"kind": "poly", "p": 6}})");
  error_of<CyclicQuiver>(R"({"ring": {"kind": "path_algebra", "p": 2, "vertices": 2, "arrows": [[1, 2], [2, 1]]}})");
  error_of<IllDefinedMorphism>(R"({"ring": "integers", "modules": {"A": {"cyclic": 2}, "Z": {"free": 1}},
      "morphisms": {"f": {"source": "A", "target": "Z", "matrix": [[1]]}}})");
}

TEST(Commands, InduceOnTwelve) {
  auto r = run_on("z12.json", "induce", {"M"});
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.data["verdict"], "yes");
  EXPECT_EQ(r.data["result"]["status"], "stabilised");
  EXPECT_EQ(r.data["result"]["describe"], "Z/3");
  EXPECT_EQ(r.data["oracle"]["agrees"], "yes");
  EXPECT_EQ(r.data["witnesses"].size(), 1u);
}

TEST(Commands, EqualFractionsHaveAWitness) {
  auto r = run_on("z12.json", "loc", {"eq", "half", "half"});
  EXPECT_EQ(r.data["verdict"], "yes");
  ASSERT_EQ(r.data["witnesses"].size(), 1u);
  EXPECT_EQ(r.data["witnesses"][0]["type"], "equality");
}

TEST(Commands, DivisionProbeModThree) {
  auto r = run_on("z12.json", "division-probe", {}, "p:3");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.data["result"]["classes"], 3);
  EXPECT_EQ(r.data["result"]["nonzero_invertible"], "yes");
}

TEST(Commands, ExitCodes) {
  EXPECT_EQ(run_on("z12.json", "trivial", {"Z6"}).exit_code, 0);
  EXPECT_EQ(run_on("z12.json", "member", {"q2"}).exit_code, 2);
  auto bad = run_on("z12.json", "induce", {"nothing"});
  EXPECT_EQ(bad.exit_code, 1);
  EXPECT_EQ(bad.data["error"], "ReferenceError");
  EXPECT_EQ(run_on("z12.json", "frobnicate", {}).exit_code, 1);
  EXPECT_EQ(run_on("z12.json", "factor", {"q"}).data["error"], "MalformedWord");
}

TEST(Commands, SummaryIsAligned) {
  auto r = run_on("z12.json", "induce", {"M"});
  std::stringstream ss(r.summary);
  std::string line;
  std::size_t col = std::string::npos;
  while (std::getline(ss, line)) {
    auto at = line.find_first_not_of(' ', line.find(' '));
    if (col == std::string::npos) col = at;
    EXPECT_EQ(at, col) << line;
  }
}
