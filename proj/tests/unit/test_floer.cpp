#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "twistkit/errors.hpp"
#include "twistkit/floer.hpp"

using namespace twistkit;
using namespace twistkit::floer;

namespace {

std::set<Cell> support(const BigradedPage& page) {
  std::set<Cell> out;
  for (const auto& [c, d] : page.entries) out.insert(c);
  return out;
}

// Random page with up to `cells` cells in a small box and dimensions 1..2.
BigradedPage random_page(std::mt19937_64& rng, int cells) {
  std::uniform_int_distribution<int> coord(0, 3);
  std::uniform_int_distribution<int> dim(1, 2);
  BigradedPage page;
  for (int i = 0; i < cells; ++i) {
    const Cell c{coord(rng), coord(rng)};
    if (page.dim(c) == 0) page.add(c, dim(rng));
  }
  return page;
}

}  // namespace

TEST_CASE("E1 pages") {
  CHECK(support(e1_page(clean::compute_circles(2))) == std::set<Cell>{{1, 1}, {1, 2}, {2, 2}, {2, 3}});
  CHECK(support(e1_page(clean::compute_circles(1))) == std::set<Cell>{{1, 1}, {1, 2}});
  const BigradedPage p3 = e1_page(clean::compute_circles(3));
  CHECK(p3.dim({3, 3}) == 1);
  CHECK(p3.dim({3, 4}) == 1);
  for (int r = 1; r <= 6; ++r) {
    const BigradedPage page = e1_page(clean::compute_circles(r));
    std::set<Cell> expected;
    for (int p = 1; p <= r; ++p) {
      expected.insert({p, p});
      expected.insert({p, p + 1});
    }
    CHECK(support(page) == expected);
    CHECK(page.total_dimension() == 2 * r);
  }
}

TEST_CASE("E1 refuses tables that are not clean-circle tables") {
  clean::IntersectionTable bad = clean::compute_circles(2);
  bad.circles[1].radius = 2 * std::numbers::pi;
  CHECK_THROWS_AS(e1_page(bad), Refusal);
  clean::IntersectionTable unshifted = clean::compute_circles(2);
  unshifted.circles[0].index_prime = 0;
  CHECK_THROWS_AS(e1_page(unshifted), Refusal);
  clean::CleanReport failed;
  failed.pass = false;
  failed.circles.push_back({});
  CHECK_THROWS_AS(e1_page(clean::compute_circles(1), failed), Refusal);
}

TEST_CASE("differential degrees") {
  CHECK(differential_degree(1) == Cell{-1, 0});
  CHECK(differential_degree(2) == Cell{-2, 1});
  for (int d = 1; d <= 20; ++d) {
    const Cell deg = differential_degree(d);
    CHECK(deg.first + deg.second == -1);
  }
  CHECK_THROWS_AS(differential_degree(0), DegenerateInput);
}

TEST_CASE("survivors on the E1 page") {
  for (int r = 1; r <= 6; ++r) {
    const BigradedPage page = e1_page(clean::compute_circles(r));
    CHECK(survives_to_infinity(page, {1, 1}).survives);
    CHECK(survives_to_infinity(page, {r, r + 1}).survives);
  }
  const BigradedPage p2 = e1_page(clean::compute_circles(2));
  const SurvivalVerdict v = survives_to_infinity(p2, {2, 2});
  CHECK_FALSE(v.survives);
  REQUIRE_FALSE(v.threats.empty());
  CHECK(v.threats.front().d == 1);
  CHECK(v.threats.front().target == Cell{1, 2});
  CHECK(survives_to_infinity(p2, {2, 3}).survives);
  CHECK_THROWS_AS(survives_to_infinity(p2, {5, 5}), VacuousInput);
  CHECK(max_differential_page(p2) == 4);

  // Every arrow considered has the bidegree of its page.
  for (const Threat& t : v.threats) {
    CHECK(Cell{t.target.first - t.source.first, t.target.second - t.source.second} == differential_degree(t.d));
  }
}

TEST_CASE("nonvanishing") {
  const Nonvanishing one = hf_nonvanishing(1);
  CHECK(one.nonzero);
  CHECK(one.witnesses == std::vector<Cell>{{1, 1}, {1, 2}});
  const Nonvanishing four = hf_nonvanishing(4);
  CHECK(four.nonzero);
  CHECK(four.witnesses == std::vector<Cell>{{1, 1}, {4, 5}});
  CHECK_FALSE(hf_nonvanishing(0).nonzero);
}

TEST_CASE("two-level rank identity") {
  CHECK(rank_feasibility_t2(4, 2) == std::set<std::pair<int, int>>{{2, 0}});
  CHECK(rank_feasibility_t2(0, 2) == std::set<std::pair<int, int>>{{0, 0}, {1, 1}, {2, 2}});
  CHECK(rank_feasibility_t2(6, 2).empty());
  CHECK_THROWS_AS(rank_feasibility_t2(-1, 2), DegenerateInput);
}

TEST_CASE("parity") {
  CHECK_FALSE(parity_check(e1_page(clean::compute_circles(2))).odd);
  CHECK(parity_check(e1_page(clean::compute_circles(2))).total == 4);
  CHECK_FALSE(parity_check(BigradedPage{}).odd);
  BigradedPage single;
  single.add({0, 0}, 1);
  CHECK(parity_check(single).odd);
  CHECK(survives_to_infinity(single, {0, 0}).survives);
}

TEST_CASE("GF(2) rank") {
  auto row = [](const std::string& bits) { return boost::dynamic_bitset<>(bits); };
  CHECK(gf2_rank({row("110"), row("011"), row("101")}) == 2);
  CHECK(gf2_rank({row("100"), row("010"), row("001")}) == 3);
  CHECK(gf2_rank({}) == 0);
}

TEST_CASE("exhaustive survivor soundness on the E1 pages") {
  for (int r = 1; r <= 4; ++r) {
    const BigradedPage page = e1_page(clean::compute_circles(r));
    const EnumerationResult e = enumerate_boundary_operators(chain_model(page));
    CHECK(e.complexes >= 1);
    for (const auto& [cell, d] : page.entries) {
      const SurvivalVerdict v = survives_to_infinity(page, cell);
      if (v.survives) CHECK(e.min_homology.at(cell.first + cell.second) >= 1);
    }
  }
}

TEST_CASE("survivor lower bounds hold on random pages") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const BigradedPage page = random_page(rng, 5);
    const std::vector<Generator> gens = chain_model(page);
    EnumerationResult e;
    try {
      e = enumerate_boundary_operators(gens);
    } catch (const DegenerateInput&) {
      continue;
    }
    std::map<int, int> guaranteed;
    for (const auto& [cell, d] : page.entries) {
      guaranteed[cell.first + cell.second] += survives_to_infinity(page, cell).lower_bound;
    }
    for (const auto& [k, g] : guaranteed) CHECK(e.min_homology.at(k) >= g);
  }
}
