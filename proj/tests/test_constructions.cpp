#include <catch2/catch_amalgamated.hpp>

#include <ordim/constructions.hpp>

using namespace ordim;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::MessageMatches;

namespace {

Label mk(const std::vector<std::string>& tokens) {
  Label l;
  for (const auto& t : tokens) l.push_back(parse_label_token(t));
  return l;
}

// comparabilities of one Kelly copy, spelled out family by family
bool kelly_less_oracle(const LabelToken& x, const LabelToken& y) {
  int i = x.index, j = y.index;
  switch (x.family) {
    case 'a':
      if (y.family == 'b') return i != j;
      if (y.family == 'w') return j >= i;
      if (y.family == 'z') return j <= i - 1;
      return false;
    case 'w':
      if (y.family == 'b') return j >= i + 1;
      if (y.family == 'w') return i < j;
      return false;
    case 'z':
      if (y.family == 'b') return j <= i;
      if (y.family == 'z') return i > j;
      return false;
    default:
      return false;
  }
}

}  // namespace

TEST_CASE("kelly poset matches the family-by-family oracle") {
  for (int n : {2, 3, 4, 5, 6}) {
    Poset k = kelly(n);
    REQUIRE(k.size() == 4 * n - 2);
    for (int x = 0; x < k.size(); ++x)
      for (int y = 0; y < k.size(); ++y) {
        bool expect =
            x != y && kelly_less_oracle(k.label(x)[0], k.label(y)[0]);
        INFO("n=" << n << " " << to_string(k.label(x)) << " vs "
                  << to_string(k.label(y)));
        CHECK(k.less(x, y) == expect);
      }
  }
}

TEST_CASE("kelly cover relation") {
  Poset k = kelly(3);
  CHECK(k.covers() == std::vector<std::pair<int, int>>{{0, 6},
                                                       {1, 7},
                                                       {1, 8},
                                                       {2, 9},
                                                       {6, 4},
                                                       {6, 7},
                                                       {7, 5},
                                                       {8, 3},
                                                       {9, 4},
                                                       {9, 8}});
  CHECK(static_cast<int>(kelly(5).covers().size()) == 6 * 5 - 8);
  // the longest chain climbs the whole w ladder: a1 < w1 < ... < w3 < b4
  CHECK(kelly(4).height() == 5);
  CHECK(kelly(4).minimal_elements() == std::vector<int>{0, 1, 2, 3});
  CHECK(kelly(4).maximal_elements() == std::vector<int>{4, 5, 6, 7});
  CHECK_THROWS_AS(kelly(1), std::invalid_argument);
}

TEST_CASE("recursive kelly gluing") {
  SECTION("depth one is a plain copy") {
    KellyRec k = kelly_rec(4, 1);
    CHECK(k.poset == kelly(4));
    CHECK(k.copies.size() == 1);
    CHECK(k.aliases.empty());
  }

  SECTION("one level of children") {
    KellyRec k = kelly_rec(3, 2);
    CHECK(k.poset.size() == 37);
    REQUIRE(k.copies.size() == 4);
    CHECK(k.copies[0].path.empty());
    CHECK(k.copies[1].path == std::vector<int>{1});
    CHECK(k.copies[3].path == std::vector<int>{3});

    // the glue point is the child's last b and the parent's matching a
    CHECK(k.copies[1].b[2] == k.copies[0].a[0]);
    CHECK(k.copies[2].b[2] == k.copies[0].a[1]);
    CHECK(k.poset.label(k.copies[1].b[2]) == mk({"a1"}));
    REQUIRE(k.aliases.size() == 3);
    CHECK(k.aliases[0].first == k.copies[0].a[0]);
    CHECK(k.aliases[0].second == mk({"a1", "b3"}));

    CHECK(k.poset.label(k.copies[1].a[2]) == mk({"a1", "a3"}));
    CHECK(k.poset.height() == 7);  // d copies stack their w ladders: d*n + 1

    // a child's a point reaches the parent through the glue
    int child_a = k.copies[1].a[0];
    int parent_w = k.copies[0].w[0];
    CHECK(k.poset.less(child_a, parent_w));
    // but never a sibling copy
    CHECK(k.poset.incomparable(child_a, k.copies[2].a[0]));
  }

  SECTION("sizes and heights at depth three") {
    KellyRec k = kelly_rec(2, 3);
    CHECK(k.poset.size() == 7 * 6 - 6);
    CHECK(k.copies.size() == 7);
    CHECK(k.poset.height() == 7);
  }

  SECTION("size guard") {
    CHECK_THROWS_MATCHES(kelly_rec(10, 7), std::length_error,
                         MessageMatches(ContainsSubstring("size guard")));
  }
}

TEST_CASE("structural core points") {
  KellyRec k = kelly_rec(3, 2);
  auto pts = structural_core_points(k);
  CHECK(pts.size() == 21);
  for (int id : pts) {
    char fam = k.poset.label(id).back().family;
    CHECK((fam == 'a' || fam == 'b'));
  }
  // glue points appear once, under their all-a name
  CHECK(std::count(pts.begin(), pts.end(), k.copies[0].a[0]) == 1);

  CHECK(structural_core_points(kelly_rec(4, 1)).size() == 8);
}

TEST_CASE("abstract core ground facts") {
  CorePoset c = abstract_core(3, 2);
  REQUIRE(c.poset.size() == 21);
  CHECK(c.min_count() == 9);
  CHECK(c.poset.height() == 2);

  CHECK(c.poset.label(0) == mk({"a1", "a1"}));
  CHECK(c.poset.label(9) == mk({"b1"}));
  CHECK(c.poset.label(12) == mk({"a1", "b1"}));

  CHECK(c.min_id({1, 3}) == 2);
  CHECK(c.min_coords(2) == std::vector<int>{1, 3});
  CHECK(c.max_id({2}) == 10);
  CHECK(c.max_coords(10) == std::pair<int, std::vector<int>>{1, {2}});
  CHECK(c.max_id({1, 3}) == 14);
  CHECK(c.max_coords(14) == std::pair<int, std::vector<int>>{2, {1, 3}});

  CHECK(c.poset.less(c.min_id({1, 3}), c.max_id({2})));
  CHECK(!c.poset.less(c.min_id({1, 3}), c.max_id({1, 3})));
  CHECK(c.poset.less(c.min_id({1, 3}), c.max_id({1, 1})));
  CHECK(!c.poset.less(c.min_id({2, 3}), c.max_id({1, 1})));

  // minimal and maximal sets split exactly at min_count
  auto mins = c.poset.minimal_elements();
  REQUIRE(static_cast<int>(mins.size()) == c.min_count());
  for (int v : mins) CHECK(c.is_min(v));

  SECTION("level one core is the standard example") {
    CHECK(abstract_core(4, 1).poset == standard_example(4));
  }

  SECTION("size guard") {
    CHECK_THROWS_MATCHES(abstract_core(10, 6), std::length_error,
                         MessageMatches(ContainsSubstring("size guard")));
  }
}

TEST_CASE("printed-name comparison agrees with the core order") {
  for (auto [n, d] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {2, 3}}) {
    CorePoset c = abstract_core(n, d);
    for (int u = 0; u < c.min_count(); ++u)
      for (int v = c.min_count(); v < c.poset.size(); ++v) {
        INFO("n=" << n << " d=" << d << " " << to_string(c.poset.label(u))
                  << " vs " << to_string(c.poset.label(v)));
        CHECK(c.poset.less(u, v) ==
              prop1_less(c.poset.label(u), c.poset.label(v), n, d));
        CHECK(!prop1_less(c.poset.label(v), c.poset.label(u), n, d));
      }
  }
}

TEST_CASE("malformed core labels are rejected") {
  CHECK_THROWS_MATCHES(prop1_less(mk({"w1"}), mk({"b1"}), 3, 2),
                       std::invalid_argument, MessageMatches(ContainsSubstring("malformed")));
  CHECK_THROWS_AS(prop1_less(mk({"a1", "a2", "a3"}), mk({"b1"}), 3, 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(prop1_less(mk({"a1", "a4"}), mk({"b1"}), 3, 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(prop1_less(mk({"b1", "a1"}), mk({"b1"}), 3, 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(prop1_less(mk({"a1"}), mk({"b1"}), 3, 2),
                  std::invalid_argument);
}

TEST_CASE("name comparison and gluing disagree on trailing top indexes") {
  // the printed-name rule says (a1,a3) lies below (b2); in the glued family
  // the child copy's a3 cannot reach the root's b2
  CHECK(prop1_less(mk({"a1", "a3"}), mk({"b2"}), 3, 2));
  KellyRec k = kelly_rec(3, 2);
  auto u = k.poset.find_label(mk({"a1", "a3"}));
  auto v = k.poset.find_label(mk({"b2"}));
  REQUIRE(u.has_value());
  REQUIRE(v.has_value());
  CHECK(k.poset.incomparable(*u, *v));
}

TEST_CASE("core embeds into the next recursive kelly keeping names") {
  for (auto [n, d] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {2, 3}}) {
    CoreEmbedding e = embed_core(n, d);
    REQUIRE(e.image.size() == static_cast<size_t>(e.core.poset.size()));
    for (int id = 0; id < e.core.poset.size(); ++id)
      CHECK(e.host.poset.label(e.image[id]) == e.core.poset.label(id));
  }
  // depth one: the embedding is the standard example inside the next kelly
  CoreEmbedding flat = embed_core(3, 1);
  CHECK(flat.host.poset.size() == 14);
  CHECK(flat.image == std::vector<int>{0, 1, 2, 4, 5, 6});
}
