#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "canonica/canon_congruence.hpp"
#include "canonica/canon_star.hpp"
#include "canonica/cli.hpp"
#include "canonica/error.hpp"
#include "canonica/json_io.hpp"
#include "support.hpp"

using namespace canonica;
using io::json;

namespace {

const std::string kTests = CANONICA_TEST_DATA;
const std::string kFix = kTests + "/fixtures/";
const std::string kData = kTests + "/data/";

struct Run {
  int code;
  std::string out, err;
  json report() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("canonica_test_" + name)).string();
}

}  // namespace

TEST_CASE("complex values") {
  CHECK(io::complex_from_json(json::parse("[1.5, -2]")) == Complex(1.5, -2.0));
  CHECK(io::complex_from_json(json::parse("3")) == Complex(3.0));
  CHECK_THROWS_AS(io::complex_from_json(json::parse("[1]")), ParseError);
  CHECK_THROWS_AS(io::complex_from_json(json::parse("\"x\"")), ParseError);
  CHECK(io::complex_to_json(Complex(0.0, 1.0)) == json::parse("[0.0, 1.0]"));
}

TEST_CASE("matrix round trip is exact") {
  gen::Rng rng(111);
  const Matrix a = gen::gaussian(3, 4, rng);
  CHECK(io::parse_matrix(io::dump(io::matrix_to_json(a))) == a);
  CHECK(io::parse_matrix("{\"rows\":0,\"cols\":0,\"data\":[]}").empty());
}

TEST_CASE("malformed matrices") {
  CHECK_THROWS_AS(io::parse_matrix("{\"rows\":2,\"cols\":2,\"data\":[[1,0]]}"), ParseError);
  CHECK_THROWS_AS(io::parse_matrix("{\"rows\":1}"), ParseError);
  CHECK_THROWS_AS(io::parse_matrix("not json"), ParseError);
  CHECK_THROWS_AS(io::read_matrix_file(kData + "bad_length.json"), ParseError);
  CHECK_THROWS_AS(io::read_matrix_file(kData + "missing.json"), ParseError);
}

TEST_CASE("form serialization round trips") {
  gen::Rng rng(112);
  CongruenceCanonicalForm f = gen::random_congruence_form(7, rng);
  const CongruenceCanonicalForm g = io::congruence_form_from_json(json::parse(io::dump(io::to_json(f))));
  CHECK(assemble_congruence(f) == assemble_congruence(g));
  StarCanonicalForm s = gen::random_star_form(6, rng);
  s.representation = StarRepresentation::triangular;
  const StarCanonicalForm t = io::star_form_from_json(json::parse(io::dump(io::to_json(s))));
  CHECK(t.representation == StarRepresentation::triangular);
  CHECK(support::rel_err(assemble_star(s), assemble_star(t)) < 1e-15);
  BlockList b;
  b.blocks = {Matrix{{1.0}}, Matrix{{0.0, 2.0}, {3.0, 0.0}}};
  CHECK(io::block_list_from_json(io::to_json(b)).assemble() == b.assemble());
}

TEST_CASE("cli canon star on J2") {
  const Run r = run({"canon", "--star", "--verify", kFix + "star_j2zero.json"});
  REQUIRE(r.code == cli::kOk);
  const json j = r.report();
  CHECK(j.at("schema") == io::kSchema);
  CHECK(j.at("command") == "canon");
  const json& two = j.at("form").at("two_by_two");
  REQUIRE(two.size() == 1);
  CHECK(two[0].at("tau").get<double>() == doctest::Approx(1.0));
  CHECK(std::abs(io::complex_from_json(two[0].at("mu"))) < 1e-14);
  CHECK(j.at("residual").get<double>() <= 1e-10);
  CHECK(j.at("verify").at("pass").get<bool>());
}

TEST_CASE("cli compare diagonal matrices") {
  const Run r = run({"compare", "--congruence", kFix + "cong_diag12.json", kFix + "cong_diag21.json"});
  REQUIRE(r.code == cli::kOk);
  CHECK(r.report().at("result").at("verdict") == "equivalent");
}

TEST_CASE("cli exit codes") {
  CHECK(run({"classify", kData + "nonsquare.json"}).code == cli::kParse);
  CHECK(run({"classify", kData + "bad_length.json"}).code == cli::kParse);
  CHECK(run({"canon", "--congruence", kData + "generic.json"}).code == cli::kPrecondition);
  CHECK(run({"canon", "--star", "--congruence", kFix + "star_j2zero.json"}).code == cli::kParse);
  CHECK(run({"canon", "--rank-rtol", "2", kFix + "star_j2zero.json"}).code == cli::kParse);
  CHECK(run({"frobnicate"}).code == cli::kParse);
  CHECK(run({"--help"}).code == cli::kOk);
  const Run e = run({"canon", "--congruence", kData + "generic.json"});
  CHECK(e.report().at("error").at("kind") == "precondition");
  CHECK_FALSE(e.err.empty());
}

TEST_CASE("cli classify and regularize") {
  const Run c = run({"classify", kData + "identity3.json"});
  REQUIRE(c.code == cli::kOk);
  const json flags = c.report().at("report").at("flags");
  CHECK(flags.at("unitary").get<bool>());
  CHECK(flags.at("involutory").get<bool>());
  const Run g = run({"regularize", "--star", kFix + "star_j2zero.json"});
  REQUIRE(g.code == cli::kOk);
  CHECK(g.report().at("reduced").at("m1") == 1);
  CHECK(g.report().at("reduced").at("m2") == 1);
}

TEST_CASE("cli simulate") {
  const Run s = run({"simulate", "--steps", "40", kData + "h2_two.json"});
  REQUIRE(s.code == cli::kOk);
  CHECK(s.report().at("classification").at("verdict") == "unbounded");
  CHECK(s.report().at("trace").at("growth") == "unbounded");
  const Run b = run({"simulate", "--steps", "10", "--x0", "[[1,0],[0,0],[0,0]]", kData + "identity3.json"});
  REQUIRE(b.code == cli::kOk);
  CHECK(b.report().at("trace").at("norms").size() == 11);
}

TEST_CASE("cli output file and determinism") {
  const std::string p1 = temp_path("a.json"), p2 = temp_path("b.json");
  for (const auto& p : {p1, p2})
    REQUIRE(run({"canon", "--star", "--triangular", "-o", p, kFix + "star_tri_h2quarter.json"}).code == cli::kOk);
  std::ifstream f1(p1), f2(p2);
  std::stringstream s1, s2;
  s1 << f1.rdbuf();
  s2 << f2.rdbuf();
  CHECK(s1.str() == s2.str());
  const json j = json::parse(s1.str());
  CHECK(j.at("form").at("representation") == "triangular");
  std::filesystem::remove(p1);
  std::filesystem::remove(p2);
}

TEST_CASE("cli unitary styles") {
  const Run r = run({"canon", "--congruence", "--style", "real_orthogonal", "--verify", kFix + "unit_ro_random.json"});
  REQUIRE(r.code == cli::kOk);
  CHECK(r.report().at("verify").at("pass").get<bool>());
  CHECK(run({"canon", "--congruence", "--style", "bogus", kFix + "unit_ro_random.json"}).code == cli::kParse);
}
