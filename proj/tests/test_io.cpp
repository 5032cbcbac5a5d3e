// SPDX-License-Identifier: Apache-2.0
#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "tht/error.hpp"
#include "tht/fixtures.hpp"
#include "tht/io.hpp"

using namespace tht;

namespace {

bool input_error(const Json& j) {
  try {
    instance_from_json(j);
  } catch (const Error& e) {
    return e.kind() == ErrorKind::Input;
  }
  return false;
}

}  // namespace

TEST_CASE("graph and subgraph json round trip") {
  for (const char* name : {"A", "B", "C", "D", "E"}) {
    GraphMap psi = fixture(name);
    Json j = graph_to_json(psi.domain);
    CHECK(graph_from_json(j) == psi.domain);
    CHECK(graph_from_json(Json::parse(j.dump())) == psi.domain);
    CHECK(subgraph_from_json(psi.domain, subgraph_to_json(psi.domain, psi.support)) == psi.support);
  }
  Json g = graph_to_json(fixture("E").domain);
  CHECK(g["edges"][0].contains("id"));
  CHECK(g["edges"][0].contains("from"));
  CHECK(g["edges"][0].contains("to"));
}

TEST_CASE("map json round trip including collapsing edges") {
  for (const char* name : {"A", "B", "C", "D", "E"}) {
    GraphMap psi = fixture(name);
    CHECK(map_from_json(psi.domain, psi.codomain, map_to_json(psi)) == psi);
  }
  Graph f = rose(2);
  GraphMap collapse = make_partial_map(f, {{"a", {}}, {"b", {"a+", "b-"}}}, {{"v", "v"}});
  Json j = map_to_json(collapse);
  CHECK(j["edge_images"]["a"]["at"] == "v");
  CHECK(map_from_json(f, f, j) == collapse);
}

TEST_CASE("instance forms") {
  Json alg = Json::parse(R"({"name":"A","rank":2,"basis":["a","b"],"H_generators":["a"],"images":{"a":"b"}})");
  Instance a = instance_from_json(alg);
  CHECK(a.name == "A");
  CHECK(a.psi == fixture("A"));
  CHECK(instance_to_json(a) == alg);

  Json wrapped = {{"algebraic", {{"basis", {"a", "b", "c"}}, {"H_generators", {"a", "b"}}, {"images", {{"a", "b"}, {"b", "c"}}}}}};
  CHECK(instance_from_json(wrapped).psi == fixture("C"));

  Instance e{"E", "two-cycle", fixture("E"), std::nullopt};
  Json je = instance_to_json(e);
  Instance back = instance_from_json(Json::parse(je.dump()));
  CHECK(back.psi == e.psi);
  CHECK(back.comment == "two-cycle");

  std::string path = "io_roundtrip_instance.json";
  std::ofstream(path) << je.dump(2);
  CHECK(load_instance(path).psi == e.psi);
  std::remove(path.c_str());
}

TEST_CASE("malformed instances are input errors") {
  Json good = instance_to_json({"", "", fixture("A"), std::nullopt});
  CHECK(input_error(Json::array()));
  CHECK(input_error(Json::object()));

  Json both = good;
  both["basis"] = {"a"};
  CHECK(input_error(both));

  Json bad_vertex = good;
  bad_vertex["map"]["vertex_images"]["v"] = "nowhere";
  CHECK(input_error(bad_vertex));

  Json bad_step = good;
  bad_step["map"]["edge_images"]["a"] = {"z+"};
  CHECK(input_error(bad_step));

  Json wrong_h = good;
  wrong_h["H"]["edges"] = {"a", "b"};
  CHECK(input_error(wrong_h));

  Json dangling = good;
  dangling["graph"]["edges"][0]["to"] = "w";
  CHECK(input_error(dangling));

  CHECK(input_error(Json::parse(R"({"rank":2,"basis":["a","b"],"H_generators":["ab"],"images":{"ab":"b"}})")));
  CHECK(input_error(Json::parse(R"({"rank":3,"basis":["a","b"],"H_generators":["a"],"images":{"a":"b"}})")));
  CHECK(input_error(Json::parse(R"({"basis":["a","b"],"H_generators":["a"],"images":{}})")));
  CHECK(input_error(Json::parse(R"({"basis":["a","b"],"H_generators":["a"],"images":{"a":"q"}})")));

  CHECK_THROWS_AS(load_instance("does/not/exist.json"), Error);
}

TEST_CASE("rationals and heights") {
  for (const Rational& r : {Rational(1, 16), Rational(-3, 7), Rational(0), Rational(BigInt("123456789012345678901234567890"), 7)})
    CHECK(rational_from_json(rational_to_json(r)) == r);
  Json q = rational_to_json(Rational(1, 36));
  CHECK(q["num"] == 1);
  CHECK(q["den"] == 36);
  CHECK(height_to_json(Height::finite(2))["value"] == 2);
  CHECK(height_to_json(Height::infinite())["kind"] == "infinite");
}

TEST_CASE("complex json round trip") {
  for (const char* name : {"A", "B", "C", "D", "E"}) {
    MappingTorus t = build_mapping_torus(fixture(name));
    Json j = complex_to_json(t.complex);
    CHECK(complex_from_json(Json::parse(j.dump())) == t.complex);
  }
  Certificate b = decide_negative_immersions(fixture("B"));
  REQUIRE(b.witness);
  CHECK(complex_from_json(complex_to_json(b.witness->y)) == b.witness->y);
  CHECK(complex_map_from_json(complex_map_to_json(b.witness->to_x)) == b.witness->to_x);
}

TEST_CASE("certificate, factorization and audit json") {
  Json a = certificate_to_json(decide_negative_immersions(fixture("A")), fixture("A"));
  CHECK(a["verdict"] == to_string(Certificate::Kind::NegativeImmersions));
  CHECK(a["negative_immersions"]["c"] == Json({{"num", 1}, {"den", 16}}));
  Json d = certificate_to_json(decide_negative_immersions(fixture("D")), fixture("D"));
  CHECK(d.contains("witness"));
  CHECK(d["witness"]["chi"] == 0);
  Json e = certificate_to_json(decide_negative_immersions(fixture("E")), fixture("E"));
  CHECK(e["diagnostic"].get<std::string>().find("not pi1-injective") != std::string::npos);

  Json fe = factorization_to_json(fold_to_immersion(fixture("E")));
  CHECK(fe["rank_dropping_moves"] == 1);
  CHECK(fe["pi1_injective"] == false);

  AuditReport r = audit_instance(fixture("C"), {2, 1, 0}, "C");
  Json ja = audit_to_json(r);
  CHECK(ja["ok"] == true);
  CHECK_FALSE(ja.contains("elapsed_ms"));
  CHECK(audit_to_json(r).dump() == audit_to_json(audit_instance(fixture("C"), {2, 1, 0}, "C")).dump());
}

TEST_CASE("dot export") {
  std::string f = instance_dot(fixture("A"));
  CHECK(f.find("digraph") != std::string::npos);
  CHECK(f.find("bold") != std::string::npos);
  std::string x = complex_dot(build_mapping_torus(fixture("A")).complex);
  CHECK(x.find("dashed") != std::string::npos);
}

TEST_CASE("shipped instance files match the fixtures") {
  for (const char* name : {"a", "b", "c", "d", "e"}) {
    Instance inst = load_instance(std::string(THT_DATA_DIR) + "/fix_" + name + ".json");
    std::string upper(1, static_cast<char>(name[0] - 'a' + 'A'));
    CHECK(inst.psi == fixture(upper));
    CHECK(inst.name == "FIX-" + upper);
  }
}
