#include <ordim/constructions.hpp>
#include <ordim/solvers.hpp>

#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"

using namespace ordim;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::MessageMatches;

namespace {

std::vector<std::pair<int, int>> pairs_of(
    std::initializer_list<std::pair<int, int>> xs) {
  return xs;
}

}  // namespace

TEST_CASE("critical pairs") {
  SECTION("standard example lists exactly the min-max twins") {
    auto cps = critical_pairs(standard_example(3));
    REQUIRE(cps == pairs_of({{0, 3}, {1, 4}, {2, 5}}));
  }
  SECTION("chains have none") {
    CHECK(critical_pairs(chain(4)).empty());
  }
  SECTION("antichains are critical in both orientations") {
    auto cps = critical_pairs(antichain(3));
    CHECK(cps.size() == 6);
    CHECK(std::count(cps.begin(), cps.end(), std::pair{0, 1}) == 1);
    CHECK(std::count(cps.begin(), cps.end(), std::pair{1, 0}) == 1);
  }
  SECTION("kelly posets keep the a-b twins critical") {
    auto p = kelly(3);
    auto cps = critical_pairs(p);
    for (int i = 1; i <= 3; ++i) {
      std::pair<int, int> want{kelly_a_id(3, i), kelly_b_id(3, i)};
      CHECK(std::count(cps.begin(), cps.end(), want) == 1);
    }
  }
}

TEST_CASE("reversing extensions") {
  auto p = standard_example(3);
  SECTION("single critical pair is reversible") {
    auto ext = reversing_extension(p, {{0, 3}});
    REQUIRE(ext.has_value());
    auto rep = validate_order(p, *ext, SeqMode::total);
    CHECK(rep.ok);
    int px = -1, py = -1;
    for (int i = 0; i < 6; ++i) {
      if ((*ext)[i] == 0) px = i;
      if ((*ext)[i] == 3) py = i;
    }
    CHECK(px > py);
  }
  SECTION("all three twins at once force a cycle") {
    CHECK_FALSE(is_reversible(p, {{0, 3}, {1, 4}, {2, 5}}));
  }
  SECTION("two twins already conflict") {
    CHECK_FALSE(is_reversible(p, {{0, 3}, {1, 4}}));
  }
  SECTION("comparable input is rejected") {
    CHECK_THROWS_MATCHES(reversing_extension(p, {{0, 4}}),
                         std::invalid_argument,
                         MessageMatches(ContainsSubstring("not incomparable")));
  }
  SECTION("no pairs gives the least extension") {
    auto ext = reversing_extension(chain(3), {});
    REQUIRE(ext.has_value());
    CHECK(*ext == std::vector<int>{0, 1, 2});
  }
}

TEST_CASE("exact dimension on pinned families") {
  Budget budget;
  SECTION("chains") {
    auto r = dim_exact(chain(5), budget);
    CHECK(r.exact);
    CHECK(r.hi == 1);
    CHECK(verify_realizer(chain(5), r.certificate).ok);
  }
  SECTION("antichains") {
    for (int n = 2; n <= 5; ++n) {
      auto p = antichain(n);
      auto r = dim_exact(p, budget);
      CHECK(r.exact);
      CHECK(r.hi == 2);
      CHECK(verify_realizer(p, r.certificate).ok);
    }
  }
  SECTION("standard examples") {
    for (int n = 2; n <= 6; ++n) {
      auto p = standard_example(n);
      auto r = dim_exact(p, budget);
      CHECK(r.exact);
      CHECK(r.hi == n);
      CHECK((int)r.certificate.size() == n);
      CHECK(verify_realizer(p, r.certificate).ok);
    }
  }
  SECTION("kelly three") {
    auto p = kelly(3);
    auto r = dim_exact(p, budget);
    CHECK(r.exact);
    CHECK(r.hi == 3);
    CHECK(verify_realizer(p, r.certificate).ok);
  }
  SECTION("kelly four") {
    auto p = kelly(4);
    auto r = dim_exact(p, budget);
    CHECK(r.exact);
    CHECK(r.hi == 4);
    CHECK(verify_realizer(p, r.certificate).ok);
  }
}

TEST_CASE("dimension of disjoint unions") {
  Budget budget;
  SECTION("two chains need two extensions") {
    auto p = disjoint_union(chain(3), chain(2));
    auto r = dim_exact(p, budget);
    CHECK(r.exact);
    CHECK(r.hi == 2);
  }
  SECTION("component maximum wins beyond two") {
    auto p = disjoint_union(standard_example(3), chain(4));
    auto r = dim_exact(p, budget);
    CHECK(r.exact);
    CHECK(r.hi == 3);
    auto q = disjoint_union(standard_example(4), standard_example(3));
    auto s = dim_exact(q, budget);
    CHECK(s.exact);
    CHECK(s.hi == 4);
  }
}

TEST_CASE("dimension agrees with the realizer-enumeration oracle") {
  Budget budget;
  SECTION("every labeled poset on up to five elements") {
    for (int n = 1; n <= 5; ++n) {
      ordim_test::for_each_labeled_poset(n, [&](const Poset& p) {
        auto r = dim_exact(p, budget);
        REQUIRE(r.exact);
        REQUIRE(r.hi == ordim_test::brute_force_dim(p));
        REQUIRE(verify_realizer(p, r.certificate).ok);
      });
    }
  }
  SECTION("seeded random posets on five and six elements") {
    for (int n = 5; n <= 6; ++n) {
      for (unsigned seed = 0; seed < 25; ++seed) {
        auto p = random_poset(n, 0.35, 1000 * n + seed);
        auto r = dim_exact(p, budget);
        REQUIRE(r.exact);
        REQUIRE(r.hi == ordim_test::brute_force_dim(p));
      }
    }
  }
}

TEST_CASE("exact local dimension on pinned families") {
  Budget budget;
  SECTION("chains collapse to one sequence") {
    auto r = ldim_exact(chain(10), budget);
    CHECK(r.exact);
    CHECK(r.hi == 1);
  }
  SECTION("antichain of five") {
    auto p = antichain(5);
    auto r = ldim_exact(p, budget);
    CHECK(r.exact);
    CHECK(r.hi == 2);
    auto rep = verify_local_realizer(p, r.certificate);
    CHECK(rep.ok);
    CHECK(rep.mu_max <= 2);
  }
  SECTION("kelly two") {
    auto p = kelly(2);
    auto r = ldim_exact(p, budget);
    CHECK(r.exact);
    CHECK(r.hi == 2);
    auto rep = verify_local_realizer(p, r.certificate);
    CHECK(rep.ok);
    CHECK(rep.mu_max <= 2);
  }
  SECTION("standard example of order three") {
    auto p = standard_example(3);
    auto r = ldim_exact(p, budget);
    CHECK(r.exact);
    CHECK(r.hi == 3);
    auto rep = verify_local_realizer(p, r.certificate);
    CHECK(rep.ok);
    CHECK(rep.mu_max <= 3);
  }
  SECTION("standard example of order two") {
    auto r = ldim_exact(standard_example(2), budget);
    CHECK(r.exact);
    CHECK(r.hi == 2);
  }
}

TEST_CASE("local dimension agrees with the catalog oracle") {
  Budget budget;
  for (int n = 1; n <= 5; ++n) {
    ordim_test::for_each_labeled_poset(n, [&](const Poset& p) {
      auto r = ldim_exact(p, budget);
      REQUIRE(r.exact);
      REQUIRE(r.hi == ordim_test::brute_force_ldim(p, p.size()));
      auto rep = verify_local_realizer(p, r.certificate);
      REQUIRE(rep.ok);
      REQUIRE(rep.mu_max <= r.hi);
    });
  }
}

TEST_CASE("local dimension of the kelly posets stays at three") {
  Budget budget;
  for (int n = 3; n <= 6; ++n) {
    auto r = ldim_exact(kelly(n), budget);
    REQUIRE(r.exact);
    CHECK(r.hi == 3);
    auto rep = verify_local_realizer(kelly(n), r.certificate);
    CHECK(rep.ok);
    CHECK(rep.mu_max <= 3);
  }
}

TEST_CASE("local dimension properties on random posets") {
  Budget budget;
  for (unsigned seed = 0; seed < 30; ++seed) {
    auto p = random_poset(7, 0.3, 4200 + seed);
    auto d = dim_exact(p, budget);
    auto l = ldim_exact(p, budget);
    REQUIRE(d.exact);
    REQUIRE(l.exact);
    CHECK(l.hi <= d.hi);
    auto ld = ldim_exact(p.dual(), budget);
    REQUIRE(ld.exact);
    CHECK(ld.hi == l.hi);
  }
}

TEST_CASE("boolean dimension decisions") {
  Budget budget;
  SECTION("standard example of order three") {
    auto p = standard_example(3);
    auto no = bdim_decide(p, 2, budget);
    CHECK(no.decided);
    CHECK_FALSE(no.yes);
    auto yes = bdim_decide(p, 3, budget);
    CHECK(yes.decided);
    CHECK(yes.yes);
    BooleanRealizer br{yes.orders, yes.tau_ones};
    CHECK(verify_boolean_realizer(p, br).ok);
  }
  SECTION("antichain of five with a single order") {
    auto p = antichain(5);
    auto r = bdim_decide(p, 1, budget);
    CHECK(r.decided);
    CHECK(r.yes);
    REQUIRE(r.orders.size() == 1);
    BooleanRealizer br{r.orders, r.tau_ones};
    CHECK(verify_boolean_realizer(p, br).ok);
  }
  SECTION("zero orders decide only relation-free ground sets") {
    CHECK(bdim_decide(antichain(3), 0, budget).yes);
    CHECK_FALSE(bdim_decide(chain(3), 0, budget).yes);
    CHECK(bdim_decide(antichain(1), 0, budget).yes);
  }
  SECTION("realizer shortcut pads the order list") {
    auto p = standard_example(4);
    auto r = bdim_decide(p, 5, budget);
    CHECK(r.decided);
    CHECK(r.yes);
    REQUIRE((int)r.orders.size() == 5);
    CHECK(r.tau_ones == std::set<std::string>{"11111"});
    BooleanRealizer br{r.orders, r.tau_ones};
    CHECK(verify_boolean_realizer(p, br).ok);
  }
  SECTION("negative order count is rejected") {
    CHECK_THROWS_AS(bdim_decide(chain(2), -1, budget), std::invalid_argument);
  }
}

TEST_CASE("budget exhaustion reports honest brackets") {
  SECTION("boolean decision gives up cleanly") {
    Budget tiny;
    tiny.limit = 5;
    auto r = bdim_decide(standard_example(3), 2, tiny);
    CHECK_FALSE(r.decided);
  }
  SECTION("dimension bracket still holds the answer") {
    Budget tiny;
    tiny.limit = 2;
    auto p = random_poset(7, 0.3, 77);
    auto r = dim_exact(p, tiny);
    Budget full;
    auto exact = dim_exact(p, full);
    REQUIRE(exact.exact);
    CHECK(r.lo <= exact.hi);
    CHECK(exact.hi <= r.hi);
    CHECK(verify_realizer(p, r.certificate).ok);
  }
}
