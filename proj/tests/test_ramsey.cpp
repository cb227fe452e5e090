#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "ordim/ramsey.hpp"

using namespace ordim;

namespace {

// Does every r-coloring of {0..size-1} repeat some color m times?
bool pigeonhole_forced(int r, int m, int size) {
  std::vector<int> coloring(size, 0);
  while (true) {
    std::vector<int> count(r, 0);
    bool hit = false;
    for (int c : coloring)
      if (++count[c] == m) hit = true;
    if (!hit) return false;
    int i = size - 1;
    while (i >= 0 && coloring[i] == r - 1) coloring[i--] = 0;
    if (i < 0) return true;
    ++coloring[i];
  }
}

GridColoring square(int rows, int cols, std::vector<int> colors) {
  GridColoring g;
  g.axes.resize(2);
  for (int i = 0; i < rows; ++i) g.axes[0].push_back(i);
  for (int j = 0; j < cols; ++j) g.axes[1].push_back(j);
  g.colors = std::move(colors);
  return g;
}

GridColoring random_grid(const std::vector<int>& sides, int r,
                         unsigned seed) {
  GridColoring g;
  g.axes.resize(sides.size());
  long long cells = 1;
  for (size_t a = 0; a < sides.size(); ++a) {
    for (int i = 0; i < sides[a]; ++i) g.axes[a].push_back(i);
    cells *= sides[a];
  }
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> pick(0, r - 1);
  for (long long i = 0; i < cells; ++i) g.colors.push_back(pick(rng));
  return g;
}

}  // namespace

TEST_CASE("pigeonhole bounds are least") {
  CHECK(pigeonhole_bound(2, 2) == 3);
  CHECK(pigeonhole_bound(2, 3) == 5);
  CHECK(pigeonhole_bound(3, 2) == 4);
  CHECK(pigeonhole_bound(1, 7) == 7);
  for (int r = 1; r <= 3; ++r)
    for (int m = 1; m <= 3; ++m) {
      int b = (int)pigeonhole_bound(r, m);
      CAPTURE(r, m, b);
      CHECK(pigeonhole_forced(r, m, b));
      if (b > 1) CHECK_FALSE(pigeonhole_forced(r, m, b - 1));
    }
  CHECK_THROWS_AS(pigeonhole_bound(0, 2), std::invalid_argument);
  CHECK_THROWS_AS(pigeonhole_bound(4, (1ll << 62)), std::overflow_error);
}

TEST_CASE("product bounds at one level match the pigeonhole") {
  for (int r = 1; r <= 4; ++r)
    for (int m = 1; m <= 4; ++m) {
      auto b = pram_bound(r, 1, m);
      REQUIRE(b.kind == RamseyBound::Kind::exact);
      CHECK(b.value == pigeonhole_bound(r, m));
    }
}

TEST_CASE("product bounds climb the recursion exactly while they fit") {
  auto b22 = pram_bound(2, 2, 2);
  REQUIRE(b22.kind == RamseyBound::Kind::exact);
  CHECK(b22.value == 9);

  // level two from a pigeonhole of 5: 2 * 2^5 + 1
  auto b23 = pram_bound(2, 2, 3);
  REQUIRE(b23.kind == RamseyBound::Kind::exact);
  CHECK(b23.value == 65);

  auto b32 = pram_bound(3, 2, 2);
  REQUIRE(b32.kind == RamseyBound::Kind::exact);
  CHECK(b32.value == 3 * 3 * 3 * 3 + 1);

  CHECK(pram_bound(2, 3, 1).value == 1);
  CHECK(pram_bound(5, 4, 1).value == 1);
  CHECK(pram_bound(1, 3, 6).value == 6);
}

TEST_CASE("product bounds degrade to exponents and then to towers") {
  // 2 * 2^(9^2) + 1 is past the integer range but its exponent is tiny
  auto b = pram_bound(2, 3, 2);
  REQUIRE(b.kind == RamseyBound::Kind::log_ten);
  CHECK(b.log10_value == Catch::Approx(81 * std::log10(2.0)).margin(0.01));
  CHECK(b.describe().find("10^") != std::string::npos);

  auto b333 = pram_bound(3, 3, 3);
  REQUIRE(b333.kind == RamseyBound::Kind::log_ten);
  CHECK(b333.log10_value > 9.13e6);
  CHECK(b333.log10_value < 9.14e6);

  auto b343 = pram_bound(3, 4, 3);
  REQUIRE(b343.kind == RamseyBound::Kind::astronomical);
  CHECK(b343.tower_height >= 1);
  CHECK(pram_bound(3, 5, 3).tower_height == b343.tower_height + 1);
  CHECK(b343.describe().find("tower") != std::string::npos);

  CHECK_THROWS_AS(pram_bound(2, 0, 2), std::invalid_argument);
}

TEST_CASE("grid validation rejects malformed colorings") {
  auto g = square(2, 2, {0, 1, 1, 0});
  g.validate(2);
  CHECK(g.color_at({0, 1}) == 1);
  CHECK(g.color_at({1, 1}) == 0);

  auto short_colors = square(2, 2, {0, 1, 1});
  CHECK_THROWS_WITH(short_colors.validate(), "coloring size mismatch");

  auto dup = square(2, 2, {0, 1, 1, 0});
  dup.axes[0] = {3, 3};
  CHECK_THROWS_WITH(dup.validate(), "duplicate axis value");

  auto wild = square(2, 2, {0, 1, 2, 0});
  CHECK_THROWS_WITH(wild.validate(2), "color out of range");
  wild.validate();  // no color budget given, any nonnegative value is fine

  CHECK_THROWS_AS(g.color_at({0}), std::invalid_argument);
  CHECK_THROWS_AS(g.color_at({0, 5}), std::out_of_range);
}

TEST_CASE("exhaustive box search finds planted boxes and proves absence") {
  // rows 0 and 2 agree on columns 1 and 2 in color 1
  auto g = square(3, 3,
                  {0, 1, 1,
                   1, 0, 0,
                   0, 1, 1});
  auto box = find_mono_box_exact(g, 2);
  REQUIRE(box.has_value());
  CHECK(box->picks == std::vector<std::vector<int>>{{0, 2}, {1, 2}});
  CHECK(box->color == 1);
  CHECK(verify_mono_box(g, *box, 2));

  MonoBox bad = *box;
  bad.picks[1] = {0, 1};
  CHECK_FALSE(verify_mono_box(g, bad, 2));
  bad = *box;
  bad.picks[0] = {2, 0};
  CHECK_FALSE(verify_mono_box(g, bad, 2));

  auto diag = square(2, 2, {0, 1, 1, 0});
  CHECK_FALSE(find_mono_box_exact(diag, 2).has_value());

  // a full box over the whole grid counts
  auto flat = square(2, 2, {1, 1, 1, 1});
  auto whole = find_mono_box_exact(flat, 2);
  REQUIRE(whole.has_value());
  CHECK(whole->color == 1);
}

TEST_CASE("single-axis extraction is the plain pigeonhole") {
  GridColoring line;
  line.axes = {{0, 1, 2, 3, 4}};
  line.colors = {0, 1, 1, 0, 1};
  auto box = extract_mono_box(line, 2, 3);
  REQUIRE(box.has_value());
  CHECK(box->picks == std::vector<std::vector<int>>{{1, 2, 4}});
  CHECK(box->color == 1);
  CHECK(verify_mono_box(line, *box, 3));

  GridColoring split;
  split.axes = {{0, 1, 2, 3}};
  split.colors = {0, 1, 1, 0};
  CHECK_FALSE(extract_mono_box(split, 2, 3).has_value());
}

TEST_CASE("extraction always succeeds at the guaranteed grid size") {
  // two colors, pairs, two axes: guaranteed from 9 on a side
  REQUIRE(pram_bound(2, 2, 2).value == 9);
  for (unsigned seed = 0; seed < 300; ++seed) {
    auto g = random_grid({9, 9}, 2, 9000 + seed);
    auto box = extract_mono_box(g, 2, 2);
    CAPTURE(seed);
    REQUIRE(box.has_value());
    CHECK(verify_mono_box(g, *box, 2));
  }
}

TEST_CASE("extraction success implies a box exists") {
  // below the guaranteed size the constructive pass may fail, but when
  // it does return a box the exhaustive search must agree one exists
  for (unsigned seed = 0; seed < 500; ++seed) {
    auto g = random_grid({4, 4}, 2, 17000 + seed);
    auto fast = extract_mono_box(g, 2, 2);
    CAPTURE(seed);
    if (fast) {
      CHECK(verify_mono_box(g, *fast, 2));
      CHECK(find_mono_box_exact(g, 2).has_value());
    }
  }
  // full sweep over one small shape: every coloring, both answers checked
  for (int mask = 0; mask < (1 << 9); ++mask) {
    std::vector<int> colors(9);
    for (int i = 0; i < 9; ++i) colors[i] = (mask >> i) & 1;
    auto g = square(3, 3, colors);
    auto fast = extract_mono_box(g, 2, 2);
    auto full = find_mono_box_exact(g, 2);
    CAPTURE(mask);
    if (fast) {
      CHECK(verify_mono_box(g, *fast, 2));
      REQUIRE(full.has_value());
    }
    if (full) CHECK(verify_mono_box(g, *full, 2));
  }
}

TEST_CASE("extraction handles three axes") {
  for (unsigned seed = 0; seed < 100; ++seed) {
    auto g = random_grid({3, 3, 3}, 2, 31000 + seed);
    auto fast = extract_mono_box(g, 2, 2);
    CAPTURE(seed);
    if (fast) {
      CHECK(verify_mono_box(g, *fast, 2));
      CHECK(find_mono_box_exact(g, 2).has_value());
    }
  }
  // a constant coloring succeeds at any arity
  auto flat = random_grid({2, 2, 2}, 2, 1);
  std::fill(flat.colors.begin(), flat.colors.end(), 1);
  auto box = extract_mono_box(flat, 2, 2);
  REQUIRE(box.has_value());
  CHECK(box->color == 1);
  CHECK(verify_mono_box(flat, *box, 2));
}

TEST_CASE("extraction is deterministic") {
  auto g = random_grid({9, 9}, 2, 424242);
  auto a = extract_mono_box(g, 2, 2);
  auto b = extract_mono_box(g, 2, 2);
  REQUIRE(a.has_value());
  REQUIRE(b.has_value());
  CHECK(a->picks == b->picks);
  CHECK(a->color == b->color);
}
