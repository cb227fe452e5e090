#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "ordim/adversary.hpp"
#include "ordim/constructions.hpp"
#include "ordim/dot.hpp"
#include "ordim/json_io.hpp"
#include "ordim/solvers.hpp"

using namespace ordim;

namespace {

std::string tmp_path(const char* name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

int count_occurrences(const std::string& text, const std::string& needle) {
  int c = 0;
  for (size_t at = text.find(needle); at != std::string::npos;
       at = text.find(needle, at + needle.size()))
    ++c;
  return c;
}

}  // namespace

TEST_CASE("poset files round trip byte for byte") {
  std::vector<Poset> samples;
  samples.push_back(chain(5));
  samples.push_back(antichain(4));
  samples.push_back(standard_example(3));
  samples.push_back(kelly(4));
  samples.push_back(kelly_rec(3, 2).poset);
  samples.push_back(abstract_core(3, 2).poset);
  samples.push_back(random_poset(7, 0.4, 9));

  for (const auto& p : samples) {
    const std::string bytes = dump_canonical(poset_to_json(p));
    Poset back = poset_from_json(Json::parse(bytes));
    CHECK(p.same_order(back));
    for (int v = 0; v < p.size(); ++v) CHECK(p.label(v) == back.label(v));
    CHECK(dump_canonical(poset_to_json(back)) == bytes);
  }
}

TEST_CASE("poset files pass through disk unchanged") {
  const auto path = tmp_path("ordim_roundtrip.json");
  auto p = kelly_rec(3, 2).poset;
  write_json_file(path, poset_to_json(p));
  const std::string bytes = dump_canonical(poset_to_json(p));
  std::ifstream in(path, std::ios::binary);
  std::string on_disk((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  CHECK(on_disk == bytes);
  CHECK(poset_from_json(read_json_file(path)).same_order(p));
  std::filesystem::remove(path);
}

TEST_CASE("malformed poset files are rejected") {
  auto base = poset_to_json(standard_example(2));

  auto j = base;
  j.erase("schema_version");
  CHECK_THROWS_AS(poset_from_json(j), std::invalid_argument);

  j = base;
  j["schema_version"] = 99;
  CHECK_THROWS_AS(poset_from_json(j), std::invalid_argument);

  j = base;
  j["elements"][1]["id"] = 0;  // duplicate id
  CHECK_THROWS_AS(poset_from_json(j), std::invalid_argument);

  j = base;
  j["elements"][1]["id"] = 7;  // gap
  CHECK_THROWS_AS(poset_from_json(j), std::invalid_argument);

  j = base;
  j["elements"][0]["label"] = {"c1"};  // unknown family letter
  CHECK_THROWS_AS(poset_from_json(j), std::invalid_argument);

  j = base;
  j["elements"][0]["label"] = {"a0"};  // indexes start at one
  CHECK_THROWS_AS(poset_from_json(j), std::invalid_argument);

  j = base;
  j["covers"].push_back({1, 9});
  CHECK_THROWS_AS(poset_from_json(j), std::invalid_argument);

  j = base;
  j["covers"].push_back({0, 0});  // reflexive strict order
  CHECK_THROWS_AS(poset_from_json(j), std::invalid_argument);

  // a cover cycle collapses to x < x after closure
  j = base;
  j["covers"] = {{0, 2}, {2, 0}};
  CHECK_THROWS_AS(poset_from_json(j), std::invalid_argument);

  CHECK_THROWS_AS(read_json_file(tmp_path("ordim_missing.json")),
                  std::invalid_argument);
  const auto garbled = tmp_path("ordim_garbled.json");
  std::ofstream(garbled) << "{ not json";
  CHECK_THROWS_AS(read_json_file(garbled), std::invalid_argument);
  std::filesystem::remove(garbled);
}

TEST_CASE("realizer and boolean realizer files round trip") {
  auto p = standard_example(3);
  Budget leash{100000, 0};
  auto res = dim_exact(p, leash);
  REQUIRE(res.exact);

  auto j = realizer_to_json(res.certificate);
  auto back = realizer_from_json(Json::parse(dump_canonical(j)));
  CHECK(back == res.certificate);
  CHECK(dump_canonical(realizer_to_json(back)) == dump_canonical(j));

  auto br = kelly_boolean_realizer(5);
  auto bj = boolean_realizer_to_json(br);
  auto bback = boolean_realizer_from_json(Json::parse(dump_canonical(bj)));
  CHECK(bback.orders == br.orders);
  CHECK(bback.tau_ones == br.tau_ones);
  CHECK(dump_canonical(boolean_realizer_to_json(bback)) == dump_canonical(bj));
}

TEST_CASE("grid and box files round trip with validation") {
  GridColoring grid;
  grid.axes = {{0, 1, 2}, {0, 1}};
  grid.colors = {0, 1, 1, 0, 1, 0};
  auto j = grid_to_json(grid);
  auto back = grid_from_json(j);
  CHECK(back.axes == grid.axes);
  CHECK(back.colors == grid.colors);
  CHECK(dump_canonical(grid_to_json(back)) == dump_canonical(j));

  auto bad = j;
  bad["colors"] = {0, 1};
  CHECK_THROWS_AS(grid_from_json(bad), std::invalid_argument);
  bad = j;
  bad["axes"] = {3, -1};
  CHECK_THROWS_AS(grid_from_json(bad), std::invalid_argument);

  auto box = find_mono_box_exact(grid, 1);
  REQUIRE(box.has_value());
  auto mj = mono_box_to_json(*box);
  CHECK(mj.at("picks").get<std::vector<std::vector<int>>>() == box->picks);
  CHECK(mj.at("color").get<int>() == box->color);
}

TEST_CASE("ramsey bounds serialize with their magnitude class") {
  auto exact = ramsey_bound_to_json(pram_bound(2, 1, 3));
  CHECK(exact.at("kind") == "exact");
  CHECK(exact.at("value").get<long long>() == 5);

  auto sched = adversary_schedule(4);
  CHECK(ramsey_bound_to_json(sched.p[2]).at("kind") == "log_ten");
  CHECK(ramsey_bound_to_json(sched.p[3]).at("kind") == "astronomical");
  CHECK(ramsey_bound_to_json(sched.p[3]).contains("tower_height"));
}

TEST_CASE("tree decomposition files round trip") {
  auto td = kelly_tree_decomposition(4, 2);
  auto j = tree_decomposition_to_json(td);
  auto back = tree_decomposition_from_json(Json::parse(dump_canonical(j)));
  CHECK(back.bags == td.bags);
  CHECK(back.edges == td.edges);
  CHECK(back.width() == td.width());
  CHECK(dump_canonical(tree_decomposition_to_json(back)) == dump_canonical(j));
}

TEST_CASE("adversary runs serialize with their traces") {
  auto core = abstract_core(4, 2);
  auto good = run_adversary(core, cooperative_family(core));
  REQUIRE(good.success);
  auto j = adversary_run_to_json(good);
  CHECK(j.at("success").get<bool>());
  CHECK(j.at("certificate").at("witness").get<int>() == good.certificate.witness);
  CHECK(j.at("certificate").at("ples").get<std::vector<int>>() ==
        good.certificate.ple_indexes);
  CHECK(j.at("trace").size() == good.trace.size());
  CHECK(j.at("trace")[0].at("m").get<int>() == 1);

  auto lone = run_adversary(core, {reversing_extension(core.poset, {}).value()});
  REQUIRE_FALSE(lone.success);
  auto fj = adversary_run_to_json(lone);
  CHECK_FALSE(fj.at("success").get<bool>());
  CHECK(fj.at("failure").at("reason") == "UnreversedPair");
  CHECK(fj.at("failure").at("pair").get<std::vector<int>>() ==
        std::vector<int>{lone.failure.pair.first, lone.failure.pair.second});
}

TEST_CASE("dot export is deterministic with the expected shape") {
  auto s3 = standard_example(3);
  const std::string dot = to_dot(s3);
  CHECK(dot == to_dot(s3));
  CHECK(count_occurrences(dot, "[label=") == 6);
  CHECK(count_occurrences(dot, " -> ") == 6);
  CHECK(count_occurrences(dot, "rank=same") == 2);
  CHECK(dot.find("v0 [label=\"(a1)\"]") != std::string::npos);
  CHECK(dot.find("rankdir=BT") != std::string::npos);

  const std::string big = to_dot(kelly(6));
  CHECK(count_occurrences(big, "[label=") == 22);
  CHECK(count_occurrences(big, " -> ") == 28);

  // covers come out lower -> upper
  for (auto [x, y] : s3.covers()) CHECK(s3.less(x, y));
}
