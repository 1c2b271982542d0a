#include <algorithm>
#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "kcomplete/cover_lattice.hpp"

using namespace kcomplete;
using testutil::make;

namespace {

bool covers_zeros(const MatrixSpec& m, const Cover& cover) {
  for (const Cell& z : zero_positions(m)) {
    const bool by_row = std::find(cover.rows.begin(), cover.rows.end(), z.row) != cover.rows.end();
    const bool by_col = std::find(cover.cols.begin(), cover.cols.end(), z.col) != cover.cols.end();
    if (!by_row && !by_col) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("cover order compares columns up and rows down") {
  Cover alpha{{0}, {}};
  Cover beta{{}, {0}};
  CHECK(cover_leq(alpha, beta));
  CHECK(!cover_leq(beta, alpha));
  CHECK(cover_leq(alpha, alpha));
}

TEST_CASE("rectangle of a cover sums the uncovered rates") {
  auto m = make(2, {{"0", "1"}, {"2", "3"}});
  auto r = rectangle_of(m, Cover{{0}, {}});
  CHECK(r.rows == std::vector<int>{1});
  CHECK(r.cols == std::vector<int>{0, 1});
  CHECK(r.rate == 5);
  CHECK_THROWS_AS(rectangle_of(m, Cover{{1}, {}}), std::logic_error);
}

TEST_CASE("intersection rate uses the cell-wise meet of rectangles") {
  auto m = make(2, {{"0", "1"}, {"2", "3"}});
  auto a = rectangle_of(m, Cover{{0}, {}});
  auto b = rectangle_of(m, Cover{{}, {0}});
  CHECK(intersection_rate(m, a, b) == 3);
  CHECK(intersection_rate(m, a, a) == a.rate);
}

TEST_CASE("cover enumeration finds every minimum cover exactly once") {
  auto m = make(2, {{"0", "1"}, {"2", "3"}});
  auto covers = enumerate_covers(m);
  REQUIRE(covers.size() == 2);
  for (const auto& c : covers) {
    CHECK(static_cast<int>(c.rows.size() + c.cols.size()) == m.k() - 1);
    CHECK(covers_zeros(m, c));
  }
  CHECK_THROWS_AS(enumerate_covers(make(2, {{"1", "1"}, {"1", "1"}})), HypothesisError);
  CHECK_THROWS_AS(enumerate_covers(make(1, {{"0", "1"}, {"1", "1"}})), HypothesisError);
}

TEST_CASE("diamond instance builds the four-element lattice") {
  auto m = make(3, {{"0", "1", "1"}, {"1", "0", "1"}, {"1", "1", "1"}});
  auto lat = build_lattice(m);
  REQUIRE(lat.size() == 4);
  CHECK(hasse_edges(lat.poset()).size() == 4);
  CHECK(enumerate_chains(lat.poset()).size() == 11);
  CHECK(lat.element(lat.bottom()).cover.cols.empty());
  CHECK(lat.element(lat.top()).cover.rows.empty());
  // meet and join closure, computed through cover parts
  for (int a = 0; a < lat.size(); ++a)
    for (int b = 0; b < lat.size(); ++b) {
      Cover meet{detail::set_union(lat.element(a).cover.rows, lat.element(b).cover.rows),
                 detail::set_intersect(lat.element(a).cover.cols, lat.element(b).cover.cols)};
      Cover join{detail::set_intersect(lat.element(a).cover.rows, lat.element(b).cover.rows),
                 detail::set_union(lat.element(a).cover.cols, lat.element(b).cover.cols)};
      auto find = [&](const Cover& c) {
        for (int i = 0; i < lat.size(); ++i)
          if (lat.element(i).cover == c) return true;
        return false;
      };
      CHECK(find(meet));
      CHECK(find(join));
    }
}

TEST_CASE("top cover rows are exactly the forced rows") {
  auto m = make(3, {{"0", "0", "1"}, {"1", "1", "0"}, {"1", "1", "1"}});
  auto lat = build_lattice(m);
  CHECK(lat.element(lat.top()).cover.rows == forced_rows(m));
  CHECK(forced_rows(m) == std::vector<int>{0});
}

TEST_CASE("meet rate agrees with the rectangle intersection") {
  auto m = make(2, {{"0", "1"}, {"2", "3"}});
  auto lat = build_lattice(m);
  REQUIRE(lat.size() == 2);
  CHECK(lat.meet_rate(0, 1) == 3);
  CHECK(lat.meet_rate(lat.bottom(), lat.bottom()) == lat.element(lat.bottom()).rect.rate);
}

TEST_CASE("k-1 zeros in one row force a single cover") {
  auto m = make(2, {{"0", "0"}, {"1", "1"}});
  auto lat = build_lattice(m);
  REQUIRE(lat.size() == 1);
  CHECK(lat.bottom() == lat.top());
  CHECK(lat.element(0).cover.rows == std::vector<int>{0});
  CHECK(lat.element(0).rect.rate == 2);
}
