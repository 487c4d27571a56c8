// Acceptance suite: one PASS/FAIL line per criterion. Pass criterion
// numbers as arguments to run a subset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "graphcx/canon.hpp"
#include "graphcx/codec.hpp"
#include "graphcx/ensemble.hpp"
#include "graphcx/measures.hpp"
#include "graphcx/rle.hpp"
#include "support/oracles.hpp"

using namespace graphcx;

namespace {

constexpr auto kImplicit = GrammarVariant::implicit_final_len;
constexpr auto kExplicit = GrammarVariant::explicit_len;

unsigned cores() { return std::max(1u, std::thread::hardware_concurrency()); }

// Accumulates failures; the first few are kept for the report line.
struct Check {
  std::size_t failures = 0;
  std::vector<std::string> notes;
  std::string detail;

  void expect(bool ok, const std::string& what) {
    if (ok) return;
    ++failures;
    if (notes.size() < 3) notes.push_back(what);
  }
};

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// (omega, C) pairs of every class, sorted, against a table.
void check_table(Check& c, std::size_t n, std::vector<std::pair<std::uint64_t, double>> expected) {
  const auto classes = enumerate_graphs(n);
  std::vector<std::pair<std::uint64_t, double>> got;
  for (const auto& rec : classes.records) {
    const Graph& g = rec.representative;
    const double cx = complexity(g);
    c.expect(BigCount(rec.omega) == omega(g), "enumerated omega differs from canon");
    c.expect(rec.omega == oracle::relabeled_fields(g).size(), "omega differs from distinct relabelings");
    got.emplace_back(rec.omega, cx);
  }
  c.expect(got.size() == expected.size(), std::to_string(got.size()) + " classes");
  std::sort(got.begin(), got.end());
  std::sort(expected.begin(), expected.end());
  for (std::size_t i = 0; i < std::min(got.size(), expected.size()); ++i) {
    c.expect(got[i].first == expected[i].first, "omega " + std::to_string(got[i].first));
    c.expect(near(got[i].second, expected[i].second, 0.005),
             "C " + fmt(got[i].second) + " vs " + fmt(expected[i].second));
  }
  std::ostringstream d;
  d << got.size() << " classes, omega {";
  for (std::size_t i = 0; i < got.size(); ++i) d << (i ? "," : "") << got[i].first;
  d << "}";
  c.detail = d.str();
}

void criterion1(Check& c) { check_table(c, 3, {{1, 7}, {3, 5.42}, {3, 5.42}, {1, 7}}); }

void criterion2(Check& c) {
  check_table(c, 4,
              {{1, 11}, {1, 11}, {6, 8.42}, {6, 8.42}, {12, 7.42}, {12, 7.42}, {3, 9.42}, {3, 9.42},
               {12, 7.42}, {4, 9}, {4, 9}});
  // Complements pair the classes off with equal omega and C.
  const auto classes = enumerate_graphs(4);
  std::map<CanonicalForm, std::uint64_t> by_form;
  for (const auto& rec : classes.records) by_form[canonical_form(rec.representative)] = rec.omega;
  std::size_t pairs = 0;
  for (const auto& rec : classes.records) {
    const Graph h = complement(rec.representative);
    const auto it = by_form.find(canonical_form(h));
    c.expect(it != by_form.end(), "complement class missing");
    if (it == by_form.end()) continue;
    c.expect(it->second == rec.omega, "complement omega differs");
    c.expect(complexity(h) == complexity(rec.representative), "complement C differs");
    ++pairs;
  }
  c.detail += ", " + std::to_string(pairs) + " complement matches";
}

void criterion3(Check& c) {
  for (std::size_t n = 2; n <= 32; ++n) {
    const double top = static_cast<double>(n * (n + 1) / 2 + 1);
    c.expect(complexity(empty_graph(n)) == top, "empty n=" + std::to_string(n));
    c.expect(complexity(complete_graph(n)) == top, "full n=" + std::to_string(n));
  }
  c.detail = "n = 2..32";
}

void criterion4(Check& c) {
  const auto d = Description::parse("1111110101010101010101");
  const auto z = compress(d, 3, kExplicit);
  c.expect(z.bits().to_string() == "111011000001010", "bits " + z.bits().to_string());
  c.expect(z.size() == 15, "length " + std::to_string(z.size()));
  c.expect(decompress(z) == d, "round trip");
  c.expect(oracle::decode_stream(z.bits().to_string(), false) == d.to_string(), "reference decoder");
  c.detail = z.bits().to_string() + " (" + std::to_string(z.size()) + " bits)";
}

void criterion5(Check& c) {
  const Graph g = empty_graph(5);
  const double cx = complexity(g);
  const double cz = zcomplexity(g, kImplicit);
  c.expect(cx == 16.0, "C " + fmt(cx));
  c.expect(cz == 13.0, "C_z " + fmt(cz));
  c.expect(oracle::zcomplexity(g, true) == 13.0, "reference C_z");
  c.detail = "C=" + fmt(cx) + " C_z=" + fmt(cz) + " (implicit-final-len); explicit-len C_z=" +
             fmt(zcomplexity(g, kExplicit));
}

void criterion6(Check& c) {
  std::size_t graphs = 0;
  auto one = [&](const Graph& g) {
    const BigCount om = omega(g);
    const auto descriptions = all_descriptions(g);
    const std::uint64_t brute = oracle::aut_count(g);
    c.expect(om == descriptions.size(), "omega vs descriptions");
    c.expect(automorphism_order(g) == brute, "aut vs brute force");
    c.expect(BigCount(oracle::factorial(g.order()) / brute) == om, "omega vs n!/aut");
    ++graphs;
  };
  for (std::size_t n = 0; n <= 6; ++n)
    for (std::uint64_t f = 0; f < (std::uint64_t{1} << pair_count(n)); ++f) one(Graph::from_link_word(n, f));
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 200; ++t) one(oracle::random_graph(rng, 7, 0.15 + 0.7 * (t % 8) / 7.0));
  c.detail = std::to_string(graphs) + " graphs";
}

// Shared between criteria 7 and 9.
std::vector<EnumerationResult> enumerations;

void criterion7(Check& c) {
  const std::vector<std::size_t> counts{1, 2, 4, 11, 34, 156, 1044, 12346};
  enumerations.clear();
  std::string detail;
  for (std::size_t n = 1; n <= 8; ++n) {
    auto r = enumerate_graphs(n);
    BigCount total = 0;
    for (const auto& rec : r.records) total += rec.omega;
    c.expect(total == BigCount(1) << pair_count(n), "sum omega at n=" + std::to_string(n));
    c.expect(r.records.size() == counts[n - 1], "class count at n=" + std::to_string(n));
    detail += (n > 1 ? "," : "") + std::to_string(r.records.size());
    enumerations.push_back(std::move(r));
  }
  c.detail = "classes " + detail + "; sum omega = 2^L";
}

// Shared between criteria 8 and 9: C_z - C per class for n <= 6.
double worst_gap_small = -1e9;

void criterion8(Check& c) {
  std::size_t classes = 0;
  double worst = 0;
  for (auto v : {kExplicit, kImplicit})
    for (std::size_t n = 1; n <= 6; ++n)
      for (std::size_t l = 0; l <= pair_count(n); ++l)
        for (const auto& [form, cls] : zcomplexity_class_sweep(n, l, v)) {
          const Graph g = decode(form.description);
          ZOptions o;
          o.method = ZMethod::relabelings;
          const double m2 = zcomplexity(g, v, o);
          worst = std::max(worst, std::abs(m2 - cls.c_z));
          c.expect(std::abs(m2 - cls.c_z) <= 1e-9, "method gap " + fmt(m2 - cls.c_z));
          worst_gap_small = std::max(worst_gap_small, cls.c_z - complexity_from_omega(n, cls.omega));
          ++classes;
        }
  c.detail = std::to_string(classes) + " (variant, n, l, class) cases, max |m1 - m2| = " + fmt(worst);
}

void criterion9(Check& c) {
  if (enumerations.size() != 8) {
    Check dummy;
    criterion7(dummy);
  }
  double worst = -1e9;
  std::size_t graphs = 0;
  // n <= 7: method 1 class sweeps in both grammars, checking coverage of
  // every link field.
  for (auto v : {kExplicit, kImplicit})
    for (std::size_t n = 1; n <= 7; ++n) {
      BigCount covered = 0;
      std::size_t classes = 0;
      for (std::size_t l = 0; l <= pair_count(n); ++l)
        for (const auto& [form, cls] : zcomplexity_class_sweep(n, l, v, cores())) {
          const double gap = cls.c_z - complexity_from_omega(n, cls.omega);
          worst = std::max(worst, gap);
          c.expect(gap <= 1 + 1e-12, "C_z - C = " + fmt(gap) + " at n=" + std::to_string(n));
          covered += cls.omega;
          ++classes;
        }
      c.expect(covered == BigCount(1) << pair_count(n), "coverage at n=" + std::to_string(n));
      c.expect(classes == enumerations[n - 1].records.size(), "class count at n=" + std::to_string(n));
      graphs += classes;
    }
  // n = 8: every class by method 2 in the reproduction grammar.
  ZOptions o;
  o.method = ZMethod::relabelings;
  o.jobs = cores();
  for (const auto& rec : enumerations[7].records) {
    const double gap = zcomplexity(rec.representative, kImplicit, o) - complexity_from_omega(8, rec.omega);
    worst = std::max(worst, gap);
    c.expect(gap <= 1 + 1e-12, "C_z - C = " + fmt(gap) + " at n=8");
    ++graphs;
  }
  if (worst_gap_small > -1e9) {
    worst = std::max(worst, worst_gap_small);
    c.expect(worst_gap_small <= 1 + 1e-12, "criterion 8 classes exceed C + 1");
  }
  c.detail = std::to_string(graphs) + " class evaluations, max C_z - C = " + fmt(worst);
}

void criterion10(Check& c) {
  for (std::size_t n = 2; n <= 8; ++n)
    c.expect(offdiagonal_complexity(complete_graph(n)) == 0.0, "K" + std::to_string(n));
  for (std::size_t n = 3; n <= 12; ++n)
    c.expect(offdiagonal_complexity(cycle_graph(n)) == 0.0, "C" + std::to_string(n));
  c.expect(offdiagonal_complexity(star_graph(4)) == 0.0, "star");
  const double p4 = offdiagonal_complexity(path_graph(4));
  c.expect(near(p4, 0.9183, 1e-3), "P4 " + fmt(p4));
  c.expect(near(p4, oracle::offdiagonal(path_graph(4)), 1e-12), "P4 reference");
  c.detail = "K2..K8, C3..C12, star 0; P4 = " + fmt(p4);
}

void criterion11(Check& c) {
  ExperimentOptions o;
  o.jobs = cores();
  const auto t0 = std::chrono::steady_clock::now();
  const auto rows = sparse_sweep_experiment(o);
  const double minutes = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / 60;
  c.expect(minutes <= 30, "took " + fmt(minutes) + " min, over the 30 min budget");
  std::vector<double> err[2];
  std::size_t wrong_links = 0;
  for (const auto& r : rows) {
    const bool sparse = r.source == RowSource::exhaustive_sparse;
    err[sparse ? 0 : 1].push_back(r.compression_error);
    if (sparse != (r.links <= o.max_links)) ++wrong_links;
  }
  c.expect(wrong_links == 0, "row in the wrong group");
  // Classes of 10-node graphs with 0..6 links.
  c.expect(err[0].size() == 1 + 1 + 2 + 5 + 11 + 26 + 66, std::to_string(err[0].size()) + " sparse classes");
  c.expect(err[1].size() == o.sample_count, std::to_string(err[1].size()) + " samples");
  const double r = correlate(rows, "odc", "compression_error").r;
  c.expect(near(r, -0.87, 0.15), "r = " + fmt(r));

  auto mean = [](const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
  };
  auto sd = [&](const std::vector<double>& v) {
    const double m = mean(v);
    double s = 0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
  };
  const double m0 = mean(err[0]), m1 = mean(err[1]);
  const double s0 = sd(err[0]), s1 = sd(err[1]);
  // Separated: the sparse mean sits above every plausible random-group mean
  // and vice versa, i.e. more than one standard deviation of each group.
  c.expect(m0 - m1 > std::max(s0, s1), "group means " + fmt(m0) + " vs " + fmt(m1));
  c.detail = "r = " + fmt(r) + ", mean compression error sparse " + fmt(m0) + " (sd " + fmt(s0) + ") vs random " +
             fmt(m1) + " (sd " + fmt(s1) + ")";
}

void criterion12(Check& c) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::size_t> order(1, 10);
  std::uniform_real_distribution<double> density(0.0, 1.0);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = order(rng);
    const Graph g = oracle::random_graph(rng, n, density(rng));
    const Graph h = complement(g);
    c.expect(std::abs(complexity(g) - complexity(h)) <= 1e-9, "C differs from its complement");
    c.expect(canonical_form(complement(h)) == canonical_form(g), "double complement changes the class");
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    c.expect(canonical_form(complement(relabel(g, perm))) == canonical_form(h), "complement after relabeling");
  }
  c.detail = "1000 graphs, n <= 10";
}

struct Criterion {
  int id;
  const char* title;
  std::function<void(Check&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "three-node omega and C", criterion1},
      {2, "four-node omega, C and complement pairs", criterion2},
      {3, "empty and full graphs reach n(n+1)/2 + 1", criterion3},
      {4, "worked compression example", criterion4},
      {5, "five-node empty graph C and C_z", criterion5},
      {6, "omega and |Aut| against brute force", criterion6},
      {7, "enumeration partitions 2^L fields", criterion7},
      {8, "zcomplexity methods agree", criterion8},
      {9, "C_z <= C + 1", criterion9},
      {10, "offdiagonal complexity of regular graphs and P4", criterion10},
      {11, "ten-node correlation experiment", criterion11},
      {12, "complement invariance", criterion12},
  };
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));

  int failed = 0;
  for (const auto& crit : all) {
    if (!wanted.empty() && !wanted.count(crit.id)) continue;
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      crit.run(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = c.failures == 0;
    failed += !ok;
    std::printf("criterion %2d %s  %s: %s [%.1fs]", crit.id, ok ? "PASS" : "FAIL", crit.title, c.detail.c_str(),
                secs);
    if (!ok) {
      std::printf(" (%zu failures:", c.failures);
      for (const auto& note : c.notes) std::printf(" %s;", note.c_str());
      std::printf(")");
    }
    std::printf("\n");
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
