#include "graphcx/measures.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

#include "graphcx/codec.hpp"
#include "graphcx/relabel_sweep.hpp"
#include "label_swap.hpp"
#include "parallel.hpp"

namespace graphcx {

std::size_t max_complexity(std::size_t n) noexcept { return n * (n + 1) / 2 + 1; }

double complexity_from_omega(std::size_t n, const BigCount& omega) {
  return static_cast<double>(max_complexity(n)) - log2_exact(omega);
}

double complexity(const Graph& g) { return complexity_from_omega(g.order(), omega(g)); }

double derived_entropy(const Graph& g) { return log2_exact(omega(g)); }

double compression_error(double c, double c_z) { return (c - c_z) / c; }

std::uint64_t ZetaHistogram::total() const noexcept {
  std::uint64_t t = 0;
  for (auto c : counts) t += c;
  return t;
}

double ZetaHistogram::zcomplexity() const {
  const std::size_t cap = max_complexity(n);
  BigCount sum = 0;
  for (std::size_t z = 0; z < counts.size(); ++z)
    if (counts[z] != 0) sum += BigCount(counts[z]) << (cap - std::min(z, cap));
  if (sum == 0) throw std::domain_error("zcomplexity of an empty histogram");
  return static_cast<double>(cap + 1) - log2_exact(sum);
}

void ZetaHistogram::merge(const ZetaHistogram& other) {
  if (counts.size() < other.counts.size()) counts.resize(other.counts.size(), 0);
  for (std::size_t z = 0; z < other.counts.size(); ++z) counts[z] += other.counts[z];
}

BigCount binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigCount r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

ZMethod method_selector(std::size_t n, std::size_t links) {
  return binomial(pair_count(n), links) < factorial(n) ? ZMethod::link_fields : ZMethod::relabelings;
}

namespace {

// Pascal's triangle up to 64; C(64, 32) still fits.
struct BinomialTable {
  std::array<std::array<std::uint64_t, 65>, 65> c{};
  BinomialTable() {
    for (std::size_t n = 0; n <= 64; ++n) {
      c[n][0] = 1;
      for (std::size_t k = 1; k <= n; ++k) c[n][k] = c[n - 1][k - 1] + (k <= n - 1 ? c[n - 1][k] : 0);
    }
  }
};
const BinomialTable kBinomial;

// The rank-th word with k set bits in increasing numeric order.
std::uint64_t unrank_combination(std::uint64_t rank, std::size_t k, std::size_t len) {
  std::uint64_t word = 0;
  std::size_t top = len;
  for (std::size_t i = k; i > 0; --i) {
    std::size_t c = top;
    while (c > 0 && kBinomial.c[c - 1][i] > rank) --c;
    --c;  // largest c with C(c, i) <= rank
    word |= std::uint64_t{1} << c;
    rank -= kBinomial.c[c][i];
    top = c;
  }
  return word;
}

inline std::uint64_t next_combination(std::uint64_t x) {
  const std::uint64_t c = x & (~x + 1);
  const std::uint64_t r = x + c;
  return (((r ^ x) >> 2) / c) | r;
}

// Walks all link words of length len with k ones, split into chunks over
// the workers: visit(word, worker) for each.
template <class Visit>
void for_each_combination(std::size_t len, std::size_t k, unsigned jobs, Visit&& visit) {
  const std::uint64_t total = kBinomial.c[len][k];
  const unsigned workers = jobs == 0 ? 1 : jobs;
  const std::uint64_t chunks = workers == 1 ? 1 : std::min<std::uint64_t>(total, std::uint64_t{workers} * 16);
  detail::parallel_for(static_cast<std::size_t>(chunks), workers, [&](std::size_t chunk, unsigned worker) {
    const std::uint64_t begin = total / chunks * chunk + std::min<std::uint64_t>(chunk, total % chunks);
    const std::uint64_t end = begin + total / chunks + (chunk < total % chunks ? 1 : 0);
    if (begin == end) return;
    std::uint64_t word = k == 0 ? 0 : unrank_combination(begin, k, len);
    for (std::uint64_t i = begin; i < end; ++i) {
      visit(word, worker);
      if (i + 1 < end) word = next_combination(word);
    }
  });
}

void check_link_field_guard(std::size_t n, std::size_t links, const ZOptions& options) {
  const BigCount fields = binomial(pair_count(n), links);
  if (fields > options.max_link_fields)
    throw std::length_error("link-field sweep over " + fields.str() + " fields exceeds the limit of " +
                            std::to_string(options.max_link_fields));
}

ZetaHistogram histogram_by_link_fields(const Graph& g, GrammarVariant variant, const ZOptions& options) {
  const std::size_t n = g.order();
  const std::size_t len = pair_count(n);
  const std::size_t links = g.link_count();
  const std::size_t cap = max_complexity(n);
  check_link_field_guard(n, links, options);
  ZetaHistogram hist(n);
  if (len <= 64) {
    const std::uint64_t target = Canonizer{}.canonical_word(n, g.link_field().to_word());
    const unsigned workers = options.jobs == 0 ? 1 : options.jobs;
    std::vector<ZetaHistogram> partial(workers, ZetaHistogram(n));
    std::vector<std::unique_ptr<Canonizer>> canon(workers);
    std::vector<std::unique_ptr<ZetaKernel>> kernel(workers);
    for_each_combination(len, links, workers, [&](std::uint64_t word, unsigned w) {
      if (!canon[w]) {
        canon[w] = std::make_unique<Canonizer>();
        kernel[w] = std::make_unique<ZetaKernel>(n, variant);
      }
      if (canon[w]->canonical_word(n, word) == target) ++partial[w].counts[(*kernel[w])(word, cap)];
    });
    for (const auto& p : partial) hist.merge(p);
    return hist;
  }
  // Wide link fields: walk index combinations directly.
  const CanonicalForm target = canonical_form(g);
  std::vector<std::size_t> pos(links);
  for (std::size_t i = 0; i < links; ++i) pos[i] = i;
  while (true) {
    BitString field(len);
    for (auto p : pos) field.set(p);
    const Graph h(n, field);
    if (canonical_form(h) == target) ++hist.counts[std::min(zeta(encode(h), variant), cap)];
    std::size_t i = links;
    while (i > 0 && pos[i - 1] == len - links + i - 1) --i;
    if (i == 0) break;
    ++pos[i - 1];
    for (std::size_t j = i; j < links; ++j) pos[j] = pos[j - 1] + 1;
  }
  return hist;
}

ZetaHistogram histogram_by_relabelings(const Graph& g, GrammarVariant variant, const ZOptions& options) {
  const std::size_t n = g.order();
  if (n > std::min<std::size_t>(options.max_relabel_nodes, 11))
    throw std::length_error("relabeling sweep over " + std::to_string(n) + " nodes exceeds the limit of " +
                            std::to_string(std::min<std::size_t>(options.max_relabel_nodes, 11)));
  const unsigned workers = options.jobs == 0 ? 1 : options.jobs;
  RelabelingTally tally;
  if (workers == 1 || n < 2) {
    RelabelingSweep(n, variant).run(g, tally);
  } else {
    std::vector<RelabelingTally> partial(workers);
    std::vector<std::unique_ptr<RelabelingSweep>> sweeps(workers);
    detail::parallel_for(n, workers, [&](std::size_t first, unsigned w) {
      if (!sweeps[w]) sweeps[w] = std::make_unique<RelabelingSweep>(n, variant);
      sweeps[w]->run(g, partial[w], first);
    });
    for (const auto& p : partial) tally.merge(p);
  }
  ZetaHistogram hist(n);
  // Each distinct description appears once per automorphism.
  for (std::size_t z = 0; z < tally.counts.size() && z < hist.counts.size(); ++z)
    hist.counts[z] = tally.counts[z] / tally.stabilizer;
  return hist;
}

}  // namespace

ZetaHistogram zeta_histogram(const Graph& g, GrammarVariant variant, const ZOptions& options) {
  const std::size_t n = g.order();
  if (n == 0) {
    // The lone description "0" has no compressed form and sits at the cap.
    ZetaHistogram hist(0);
    ++hist.counts[max_complexity(0)];
    return hist;
  }
  ZMethod method = options.method;
  if (method == ZMethod::automatic) {
    method = method_selector(n, g.link_count());
    // Fall back to the other method when the preferred one is out of reach.
    if (method == ZMethod::relabelings && n > std::min<std::size_t>(options.max_relabel_nodes, 11))
      method = ZMethod::link_fields;
  }
  return method == ZMethod::link_fields ? histogram_by_link_fields(g, variant, options)
                                        : histogram_by_relabelings(g, variant, options);
}

double zcomplexity(const Graph& g, GrammarVariant variant, const ZOptions& options) {
  return zeta_histogram(g, variant, options).zcomplexity();
}

std::map<CanonicalForm, ClassZeta> zcomplexity_class_sweep(std::size_t n, std::size_t links, GrammarVariant variant,
                                                           unsigned jobs) {
  const std::size_t len = pair_count(n);
  if (len > 64) throw std::length_error("class sweep needs n(n-1)/2 <= 64");
  if (links > len) throw std::invalid_argument("link count exceeds the number of node pairs");
  const std::uint64_t fields = kBinomial.c[len][links];
  if (fields > (std::uint64_t{1} << 34)) throw std::length_error("class sweep over more than 2^34 link fields");
  const std::size_t cap = max_complexity(n);
  const std::uint64_t n_factorial = factorial(n).convert_to<std::uint64_t>();
  const unsigned workers = jobs == 0 ? 1 : jobs;

  // Fields are indexed by their rank among words with `links` ones. The
  // first unseen field opens a class; walking its relabelings marks the
  // rest, so each class is canonized once and each field scored once.
  auto rank = [&](std::uint64_t word) {
    std::uint64_t r = 0;
    for (std::size_t i = 1; word != 0; ++i, word &= word - 1)
      r += kBinomial.c[static_cast<std::size_t>(std::countr_zero(word))][i];
    return r;
  };
  std::vector<std::uint64_t> seen((fields + 63) / 64, 0);
  const detail::LabelSwapTables swaps(n);
  Canonizer canon;
  std::vector<std::unique_ptr<ZetaKernel>> kernels(workers);
  std::vector<std::uint64_t> orbit;
  std::map<CanonicalForm, ClassZeta> out;

  std::uint64_t word = links == 0 ? 0 : (links == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << links) - 1);
  for (std::uint64_t r = 0; r < fields; ++r, word = r < fields ? next_combination(word) : word) {
    if ((seen[r >> 6] >> (r & 63)) & 1u) continue;
    const CanonResult cr = canon.run(Graph::from_link_word(n, word));
    const std::uint64_t expected = n_factorial / cr.aut_order.convert_to<std::uint64_t>();
    orbit.clear();
    swaps.for_each_relabeling(word, [&](std::uint64_t w) {
      const std::uint64_t k = rank(w);
      std::uint64_t& slot = seen[k >> 6];
      const std::uint64_t bit = std::uint64_t{1} << (k & 63);
      if (!(slot & bit)) {
        slot |= bit;
        orbit.push_back(w);
      }
      return orbit.size() < expected;
    });
    if (orbit.size() != expected) throw std::logic_error("orbit size disagrees with the automorphism group order");

    std::vector<ZetaHistogram> partial(workers, ZetaHistogram(n));
    const std::size_t chunks = workers == 1 ? 1 : std::min<std::size_t>(orbit.size(), workers * 8);
    detail::parallel_for(chunks, workers, [&](std::size_t chunk, unsigned w) {
      if (!kernels[w]) kernels[w] = std::make_unique<ZetaKernel>(n, variant);
      for (std::size_t i = chunk; i < orbit.size(); i += chunks) ++partial[w].counts[(*kernels[w])(orbit[i], cap)];
    });
    ClassZeta entry;
    entry.histogram = ZetaHistogram(n);
    for (const auto& p : partial) entry.histogram.merge(p);
    entry.omega = expected;
    entry.c_z = entry.histogram.zcomplexity();
    out.emplace(cr.form, std::move(entry));
  }
  return out;
}

DegreeCorrelationMatrix::DegreeCorrelationMatrix(const Graph& g) {
  const auto degree = degree_sequence(g);
  std::size_t top = 0;
  for (auto d : degree) top = std::max(top, d);
  size_ = g.order() == 0 ? 0 : top + 1;
  cells_.assign(size_ * size_, 0);
  for (auto [i, j] : g.edges()) {
    const auto lo = std::min(degree[i], degree[j]);
    const auto hi = std::max(degree[i], degree[j]);
    ++cells_[lo * size_ + hi];
    ++total_;
  }
}

std::uint64_t DegreeCorrelationMatrix::entry(std::size_t k, std::size_t l) const {
  if (k > l) std::swap(k, l);
  if (l >= size_) return 0;
  return cells_[k * size_ + l];
}

std::vector<std::uint64_t> DegreeCorrelationMatrix::diagonal_sums() const {
  std::vector<std::uint64_t> a(size_, 0);
  for (std::size_t k = 0; k < size_; ++k)
    for (std::size_t l = k; l < size_; ++l) a[l - k] += cells_[k * size_ + l];
  return a;
}

double offdiagonal_complexity(const Graph& g) {
  const DegreeCorrelationMatrix m(g);
  if (m.total() == 0) return 0.0;
  double h = 0.0;
  const double total = static_cast<double>(m.total());
  for (auto a : m.diagonal_sums()) {
    if (a == 0 || a == m.total()) continue;
    const double p = static_cast<double>(a) / total;
    h -= p * std::log2(p);
  }
  return h;
}

ComplexityReport complexity_report(const Graph& g, std::optional<GrammarVariant> variant, const ZOptions& options) {
  ComplexityReport r;
  r.n = g.order();
  r.links = g.link_count();
  r.aut_order = automorphism_order(g);
  r.omega = factorial(r.n) / r.aut_order;
  r.C = complexity_from_omega(r.n, r.omega);
  r.odc = offdiagonal_complexity(g);
  if (variant) {
    r.C_z = zcomplexity(g, *variant, options);
    r.compression_error = compression_error(r.C, *r.C_z);
  }
  return r;
}

}  // namespace graphcx
