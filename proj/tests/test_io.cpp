#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qep/errors.hpp"
#include "qep/harness.hpp"
#include "qep/io.hpp"
#include "qep/random.hpp"

using namespace qep;

TEST_CASE("matrix JSON round-trip is exact") {
  Rng rng(1);
  for (int t = 0; t < 10; ++t) {
    const Matrix M = random_hermitian(4, rng);
    const Matrix back = matrix_from_json(matrix_to_json(M));
    CHECK((M - back).cwiseAbs().maxCoeff() == 0.0);  // shortest round-trip
  }
}

TEST_CASE("state JSON round-trip re-validates identically") {
  Rng rng(2);
  for (int t = 0; t < 10; ++t) {
    const DensityOperator s = random_state(3, rng);
    const DensityOperator back = state_from_json(state_to_json(s));
    CHECK((s.matrix - back.matrix).cwiseAbs().maxCoeff() == 0.0);
    CHECK(back.trace == doctest::Approx(s.trace));
  }
}

TEST_CASE("state JSON validation failures surface as errors") {
  CHECK_THROWS_AS(state_from_json("{\"matrix\": {\"dim\": 2, \"re\": "
                                  "[[0.5,0.6],[0.6,0.5]]}, "
                                  "\"normalized\": true}"),
                  Error);
  CHECK_THROWS_AS(state_from_json("not json"), Error);
}

TEST_CASE("resolution JSON: both encodings agree") {
  const std::string by_groups =
      "{\"basis\": {\"dim\": 2, \"re\": [[1,0],[0,1]]}, "
      "\"groups\": [[1],[2]]}";
  const OrthogonalResolution a = resolution_from_json(by_groups);
  const std::string by_projectors =
      "{\"projectors\": [{\"dim\": 2, \"re\": [[1,0],[0,0]]}, "
      "{\"dim\": 2, \"re\": [[0,0],[0,1]]}]}";
  const OrthogonalResolution b = resolution_from_json(by_projectors);
  REQUIRE(a.size() == b.size());
  for (int i = 0; i < a.size(); ++i)
    CHECK((a.members[i].matrix - b.members[i].matrix).cwiseAbs().maxCoeff() <
          1e-15);
}

TEST_CASE("constraint JSON covers all four families") {
  const std::string res =
      "{\"basis\": {\"dim\": 2, \"re\": [[1,0],[0,1]]}, "
      "\"groups\": [[1],[2]]}";
  const ConstraintSet ql = constraint_from_json(
      "{\"type\": \"commutant\", \"resolution\": " + res + "}");
  CHECK(std::holds_alternative<CommutantQL>(ql));
  const ConstraintSet qj = constraint_from_json(
      "{\"type\": \"trace-pinned\", \"resolution\": " + res +
      ", \"weights\": [0.3, 0.7]}");
  CHECK(std::holds_alternative<TracePinnedQqJ>(qj));
  const ConstraintSet face = constraint_from_json(
      "{\"type\": \"face\", \"projector\": {\"dim\": 2, \"re\": "
      "[[1,0],[0,0]]}}");
  CHECK(std::holds_alternative<FaceQsL>(face));
  const ConstraintSet blk = constraint_from_json(
      "{\"type\": \"support-block\", \"projector\": {\"dim\": 2, \"re\": "
      "[[1,0],[0,0]]}}");
  CHECK(std::holds_alternative<SupportBlock>(blk));
  CHECK_THROWS_AS(constraint_from_json("{\"type\": \"nope\"}"), Error);
}

TEST_CASE("extended reals serialize infinity as the token inf") {
  CHECK(extended_to_json(ExtendedReal::infinity()) == "\"inf\"");
  CHECK(extended_to_json(ExtendedReal::finite(0.5)) == "0.5");
}

TEST_CASE("table JSON accepts both wrapped and bare forms") {
  const JointTable a =
      table_from_json("{\"table\": [[0.4, 0.2], [0.1, 0.3]]}");
  const JointTable b = table_from_json("[[0.4, 0.2], [0.1, 0.3]]");
  CHECK((a.p - b.p).cwiseAbs().maxCoeff() == 0.0);
  CHECK(a.nx() == 2);
}

TEST_CASE("harness CSV is byte-identical across runs with the same seed") {
  const HarnessReport a = verify("T8", {2}, 5, 31337);
  const HarnessReport b = verify("T8", {2}, 5, 31337);
  CHECK(report_csv(a) == report_csv(b));
  // And different with a different seed.
  const HarnessReport c = verify("T8", {2}, 5, 31338);
  CHECK(report_csv(a) != report_csv(c));
}

TEST_CASE("harness CSV is identical regardless of the job count") {
  const HarnessReport a = verify("T8", {2, 3}, 4, 7, SolverConfig{}, 1);
  const HarnessReport b = verify("T8", {2, 3}, 4, 7, SolverConfig{}, 4);
  CHECK(report_csv(a) == report_csv(b));
}

TEST_CASE("report JSON carries rows, notes and pass flags") {
  const HarnessReport r = verify("T8", {2}, 3, 99);
  const std::string j = report_to_json(r);
  CHECK(j.find("\"theorem\"") != std::string::npos);
  CHECK(j.find("support-violation") != std::string::npos);
  CHECK(j.find("\"all_pass\"") != std::string::npos);
}

TEST_CASE("unknown theorem ids are rejected") {
  CHECK_THROWS_AS(verify("T12", {2}, 1, 1), Error);
}
