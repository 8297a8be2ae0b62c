// Copyright 2026 The k0forge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <sstream>
#include <tuple>

#include "doctest.h"
#include "k0forge/cli.hpp"
#include "k0forge/serialize.hpp"

using namespace k0forge;
using io::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(K0FORGE_TEST_DATA) + "/" + name; }

}  // namespace

TEST_CASE("fusion subcommand") {
  auto r = call({"fusion", "--p", "2", "--ell", "7"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["schema"] == 1);
  CHECK(j["ring"]["labels"] == json({"T0", "T1", "T2", "T3", "T4", "T5"}));
  CHECK(j["validation"]["ok"] == true);

  // The emitted ring decodes to the same structure constants.
  const auto f = io::decode_fusion(j["ring"]);
  const auto g = fusion::build_semisimple_fusion(2, 7);
  CHECK(f.structure_constants() == g.structure_constants());
  CHECK(f.dual() == g.dual());
  REQUIRE(f.dimension_character());
  CHECK(f.dimension_character()->values == g.dimension_character()->values);
  CHECK(io::encode(f) == j["ring"]);

  auto e = call({"fusion", "--p", "2", "--ell", "7", "--even"});
  CHECK(json::parse(e.out)["ring"]["labels"].size() == 3);
}

TEST_CASE("precondition and flag errors exit 2") {
  auto r = call({"fusion", "--p", "5", "--ell", "5"});
  CHECK(r.code == cli::kExitUsage);
  CHECK(r.err.rfind("error: ", 0) == 0);
  CHECK(r.out.empty());
  CHECK(call({"fusion", "--p", "2", "--ell", "7", "--bogus"}).code == cli::kExitUsage);
  CHECK(call({"fusion", "--p", "2"}).code == cli::kExitUsage);
  CHECK(call({}).code == cli::kExitUsage);
  CHECK(call({"gcdlemma", "--format", "xml"}).code == cli::kExitUsage);
  CHECK(call({"density", "--poly", "y^2 + 1"}).code == cli::kExitUsage);
  CHECK(call({"present", "--file", data("missing.json")}).code == cli::kExitUsage);
}

TEST_CASE("findell subcommand") {
  auto r = call({"findell", "--p", "2", "--q", "3", "--n", "1"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["ell"] == 7);
  CHECK(j["ord"] == 3);
  CHECK(j["contained"] == true);
  CHECK(j["witness_poly"].size() == 4);  // a cubic factor of Phi_7 mod 2
}

TEST_CASE("k0iso and modp subcommands") {
  auto k = call({"k0iso", "--p", "3", "--ell", "11"});
  REQUIRE(k.code == 0);
  const auto c = json::parse(k.out)["certificate"];
  CHECK(c["ok"] == true);
  CHECK((c["determinant"] == 1 || c["determinant"] == -1));

  auto m = call({"modp", "--p", "13", "--ell", "7"});
  REQUIRE(m.code == 0);
  CHECK(json::parse(m.out)["certificate"]["description"] == "F_13 x F_13 x F_13");
}

TEST_CASE("gcdlemma grid is sorted and identical across formats") {
  auto j = call({"gcdlemma", "--max-p", "7", "--max-q", "5", "--max-n", "2"});
  REQUIRE(j.code == 0);
  const auto rows = json::parse(j.out)["rows"];
  CHECK(rows.size() == 4 * 3 * 2);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    auto key = [](const json& r) { return std::tuple(r["p"].get<int>(), r["q"].get<int>(), r["n"].get<int>()); };
    CHECK(key(rows[i - 1]) < key(rows[i]));
  }
  auto csv = call({"gcdlemma", "--max-p", "7", "--max-q", "5", "--max-n", "2", "--format", "csv"});
  CHECK(csv.out.rfind("p,q,n,lhs,rhs,holds\n2,2,1,1,1,1\n", 0) == 0);
  CHECK(std::count(csv.out.begin(), csv.out.end(), '\n') == 25);
}

TEST_CASE("identical configs give identical output") {
  setenv("K0FORGE_THREADS", "1", 1);
  const auto a = call({"gcdlemma", "--max-p", "11", "--max-q", "11", "--max-n", "3"}).out;
  setenv("K0FORGE_THREADS", "4", 1);
  const auto b = call({"gcdlemma", "--max-p", "11", "--max-q", "11", "--max-n", "3"}).out;
  CHECK(a == b);
  const auto c = call({"density", "--poly", "x^2 + 1", "--primes", "500"}).out;
  setenv("K0FORGE_THREADS", "1", 1);
  CHECK(c == call({"density", "--poly", "x^2 + 1", "--primes", "500"}).out);
  unsetenv("K0FORGE_THREADS");
}

TEST_CASE("density subcommand") {
  auto r = call({"density", "--poly", "x^2 + 1", "--primes", "1000", "--format", "csv"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("prime,has_root\n2,1\n3,0\n", 0) == 0);
  auto j = json::parse(call({"density", "--poly", "x^2 + 1", "--primes", "1000"}).out);
  CHECK(j["sample_size"] == 1000);
  CHECK(j["galois_group"] == "C2");
}

TEST_CASE("present subcommand") {
  auto half = call({"present", "--file", data("z_half.json")});
  REQUIRE(half.code == 0);
  auto j = json::parse(half.out);
  CHECK(j["family"] == "localization");
  CHECK(j["versal"]["ok"] == true);
  CHECK(j["versal"]["solved"] == json({"x"}));
  for (const auto& w : j["witnesses"]) CHECK(w["checks"] == true);

  auto real = call({"present", "--file", data("real_cyclotomic_7.json")});
  REQUIRE(real.code == 0);
  CHECK(json::parse(real.out)["family"] == "monogenic");

  auto bad = call({"present", "--file", data("bad_image.json")});
  CHECK(bad.code == cli::kExitVerification);
  CHECK(bad.err.find("present(") != std::string::npos);
  CHECK(bad.err.find("versal") != std::string::npos);
}

TEST_CASE("presentation JSON round trip") {
  auto f = fusion::even_subring(fusion::build_semisimple_fusion(3, 7));
  auto p = presentation::present(presentation::BaseRing::k0(f), {"u", "v"},
                                 {presentation::parse_expression("u*v - T0"), presentation::parse_expression("12345678901234567890123*u - v")},
                                 presentation::Mode::associative);
  const auto j = io::encode(p);
  CHECK(j["rels"][1][0][0] == "12345678901234567890123");
  const auto q = io::decode_presentation(j);
  CHECK(q.relations == p.relations);
  CHECK(q.generators == p.generators);
  CHECK(q.mode == p.mode);
  CHECK(io::encode(q) == j);
  CHECK_THROWS_AS(io::decode_presentation(json::parse(R"({"base":"Q","gens":[],"rels":[]})")), PreconditionError);
  CHECK_THROWS_AS(io::decode_presentation(json::parse(R"({"base":"Z","gens":["x"],"rels":[[["y"]]]})")), PreconditionError);

  const auto m = modrep::JordanModule(5, {1, 3, 5});
  CHECK(io::decode_jordan(io::encode(m)).blocks() == m.blocks());
  CHECK(io::decode_bigint(io::encode(BigInt("-98765432109876543210"))) == BigInt("-98765432109876543210"));
}
