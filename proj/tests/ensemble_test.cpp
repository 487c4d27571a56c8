#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

#include "doctest.h"
#include "graphcx/codec.hpp"
#include "graphcx/ensemble.hpp"
#include "support/oracles.hpp"

using namespace graphcx;

namespace {

std::vector<std::uint64_t> sorted_omegas(const EnumerationResult& r) {
  std::vector<std::uint64_t> out;
  for (const auto& rec : r.records) out.push_back(rec.omega);
  std::sort(out.begin(), out.end());
  return out;
}

bool connected(const Graph& g) {
  const std::size_t n = g.order();
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    for (std::size_t u = 0; u < n; ++u)
      if (!seen[u] && g.has_edge(u, v)) seen[u] = true, stack.push_back(u);
  }
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

}  // namespace

TEST_CASE("enumeration counts classes and partitions the link fields") {
  const std::vector<std::size_t> classes{1, 1, 2, 4, 11, 34, 156, 1044};
  for (std::size_t n = 0; n <= 7; ++n) {
    const auto r = enumerate_graphs(n);
    CAPTURE(n);
    CHECK(r.records.size() == classes[n]);
    std::uint64_t total = 0;
    for (const auto& rec : r.records) {
      total += rec.omega;
      CHECK(rec.omega * rec.aut_order == oracle::factorial(n));
      CHECK(encode(rec.representative) == canonical_form(rec.representative).description);
    }
    CHECK(total == (std::uint64_t{1} << pair_count(n)));
  }
}

TEST_CASE("three- and four-node omega values") {
  CHECK(sorted_omegas(enumerate_graphs(3)) == std::vector<std::uint64_t>{1, 1, 3, 3});
  CHECK(sorted_omegas(enumerate_graphs(4)) == std::vector<std::uint64_t>{1, 1, 3, 3, 4, 4, 6, 6, 12, 12, 12});
}

TEST_CASE("enumeration agrees with brute-force canonical dedup") {
  for (std::size_t n = 1; n <= 6; ++n) {
    std::map<CanonicalForm, std::uint64_t> expected;
    for (std::uint64_t f = 0; f < (std::uint64_t{1} << pair_count(n)); ++f)
      ++expected[canonical_form(Graph::from_link_word(n, f))];
    const auto r = enumerate_graphs(n);
    REQUIRE(r.records.size() == expected.size());
    for (const auto& rec : r.records) CHECK(expected.at(canonical_form(rec.representative)) == rec.omega);
  }
}

TEST_CASE("enumeration guard") {
  CHECK_THROWS_AS(enumerate_graphs(9), std::length_error);
  EnumerateOptions small;
  small.max_n = 5;
  CHECK_THROWS_AS(enumerate_graphs(6, small), std::length_error);
}

TEST_CASE("Erdos-Renyi graphs") {
  CHECK(er_random(12, 0.0, 1) == empty_graph(12));
  CHECK(er_random(12, 1.0, 1) == complete_graph(12));
  CHECK(er_random(20, 0.3, 9) == er_random(20, 0.3, 9));
  CHECK(er_random(20, 0.3, 9) != er_random(20, 0.3, 10));
  double sum = 0;
  for (std::uint64_t s = 0; s < 1000; ++s) sum += static_cast<double>(er_random(10, 0.5, s).link_count());
  CHECK(std::abs(sum / 1000 - 22.5) <= 1.0);
  CHECK_THROWS_AS(er_random(5, 1.5, 1), std::invalid_argument);
  CHECK_THROWS_AS(er_random(5, -0.1, 1), std::invalid_argument);
}

TEST_CASE("preferential attachment graphs") {
  for (std::size_t m = 1; m <= 6; ++m) CHECK(ba_random(m + 1, m, 3) == complete_graph(m + 1));
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto tree = ba_random(50, 1, s);
    CHECK(tree.link_count() == 49);
    CHECK(connected(tree));
  }
  const auto g = ba_random(60, 3, 2);
  CHECK(g.link_count() == 3 + 57 * 3);
  CHECK(ba_random(60, 3, 2) == g);
  CHECK_THROWS_AS(ba_random(5, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(ba_random(5, 5, 1), std::invalid_argument);

  // Rank-order check: the top degrees of BA graphs exceed those of ER graphs
  // with the same link count.
  double ba_top = 0, er_top = 0;
  for (std::uint64_t s = 0; s < 30; ++s) {
    const auto ba = ba_random(200, 2, s);
    const double p = static_cast<double>(ba.link_count()) / static_cast<double>(pair_count(200));
    const auto er = er_random(200, p, s + 1000);
    auto db = degree_sequence(ba), de = degree_sequence(er);
    std::sort(db.rbegin(), db.rend());
    std::sort(de.rbegin(), de.rend());
    for (std::size_t k = 0; k < 5; ++k) {
      ba_top += static_cast<double>(db[k]);
      er_top += static_cast<double>(de[k]);
    }
  }
  CHECK(ba_top > 1.5 * er_top);
}

TEST_CASE("correlation and least squares") {
  const std::vector<double> x{1, 2, 3, 4, 5};
  const std::vector<double> up{3, 5, 7, 9, 11};
  const std::vector<double> down{10, 8, 6, 4, 2};
  const std::vector<double> flat{4, 4, 4, 4, 4};
  auto c = correlate(x, up);
  CHECK(c.r == doctest::Approx(1.0));
  CHECK(c.slope == doctest::Approx(2.0));
  CHECK(c.intercept == doctest::Approx(1.0));
  c = correlate(x, down);
  CHECK(c.r == doctest::Approx(-1.0));
  CHECK(c.slope == doctest::Approx(-2.0));
  c = correlate(x, flat);
  CHECK(c.r == 0.0);
  CHECK(c.slope == 0.0);
  CHECK(c.intercept == 4.0);
  CHECK_THROWS_AS(correlate(flat, x), std::invalid_argument);
  CHECK_THROWS_AS(correlate(std::vector<double>{1}, std::vector<double>{1}), std::invalid_argument);

  std::vector<ExperimentRow> rows(3);
  rows[0].odc = 0, rows[0].compression_error = 0.3;
  rows[1].odc = 1, rows[1].compression_error = 0.2;
  rows[2].odc = 2, rows[2].compression_error = 0.1;
  c = correlate(rows, "odc", "compression_error");
  CHECK(c.r == doctest::Approx(-1.0));
  CHECK_THROWS_AS(correlate(rows, "odc", "colour"), std::invalid_argument);
}

TEST_CASE("small sweep experiment") {
  ExperimentOptions o;
  o.n = 7;
  o.max_links = 3;
  o.sample_count = 12;
  o.seed = 5;
  const auto rows = sparse_sweep_experiment(o);
  std::size_t sparse = 0, sampled = 0;
  double sparse_err = 0, sampled_err = 0;
  for (const auto& r : rows) {
    CHECK(r.n == 7);
    CHECK(r.C_z <= r.C + 1 + 1e-12);
    CHECK(r.compression_error == doctest::Approx((r.C - r.C_z) / r.C));
    CHECK(r.omega * r.aut_order == 5040);
    if (r.source == RowSource::exhaustive_sparse) {
      ++sparse;
      sparse_err += r.compression_error;
      CHECK(r.links <= 3);
    } else {
      ++sampled;
      sampled_err += r.compression_error;
      CHECK(r.links > 3);
    }
  }
  // Classes with 0..3 links on 7 nodes: 1 + 1 + 2 + 5.
  CHECK(sparse == 9);
  CHECK(sampled == 12);
  CHECK(sparse_err / 9 > sampled_err / 12);
  std::vector<std::string> ids;
  for (const auto& r : rows) ids.push_back(r.id);
  std::sort(ids.begin(), ids.end());
  CHECK(std::adjacent_find(ids.begin(), ids.end()) == ids.end());
  // Sampled rows agree with a direct computation.
  for (const auto& r : rows)
    if (r.source == RowSource::random_sample) {
      const auto g = Graph::from_link_word(7, std::stoull(r.id.substr(1), nullptr, 16));
      CHECK(r.C == doctest::Approx(complexity(g)));
      CHECK(r.C_z == doctest::Approx(zcomplexity(g, o.variant)));
      CHECK(r.odc == doctest::Approx(offdiagonal_complexity(g)));
    }
  CHECK(sparse_sweep_experiment(o).size() == rows.size());
}
