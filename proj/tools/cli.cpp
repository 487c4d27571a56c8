#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "CLI11.hpp"
#include "graphcx/canon.hpp"
#include "graphcx/codec.hpp"
#include "graphcx/csv.hpp"
#include "graphcx/ensemble.hpp"
#include "graphcx/measures.hpp"
#include "graphcx/rle.hpp"

namespace graphcx::cli {

namespace {

// Node bound for n!-sized relabeling sweeps; --max-n may raise it to 11.
constexpr std::size_t kRelabelBound = 10;
constexpr std::size_t kEnumerateBound = 8;

struct Flags {
  std::string input;
  std::optional<std::size_t> n, links, w, m, max_n;
  std::optional<double> p;
  std::uint64_t seed = 1;
  std::string variant = "implicit-final-len";
  std::string method = "auto";
  std::optional<unsigned> jobs;
  bool csv = false;
  std::size_t max_fields = 200'000'000;
  std::size_t samples = 740;
  std::string output;
  bool progress = false;
  bool zeta = false;
  bool edge_list = false;
};

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string hex_id(char prefix, std::uint64_t word) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%c%llx", prefix, static_cast<unsigned long long>(word));
  return buf;
}

unsigned all_cores() { return std::max(1u, std::thread::hardware_concurrency()); }
unsigned jobs_or(const Flags& f, unsigned fallback) { return f.jobs ? std::max(1u, *f.jobs) : fallback; }

bool is_generator(const std::string& s) { return s == "er" || s == "ba"; }

Graph generate(const Flags& f) {
  if (!f.n) throw std::invalid_argument(f.input + " generator needs -n");
  if (f.input == "er") {
    if (!f.p) throw std::invalid_argument("er generator needs -p");
    if (f.m) throw std::invalid_argument("-m belongs to the ba generator");
    return er_random(*f.n, *f.p, f.seed);
  }
  if (!f.m) throw std::invalid_argument("ba generator needs -m");
  if (f.p) throw std::invalid_argument("-p belongs to the er generator");
  return ba_random(*f.n, *f.m, f.seed);
}

// A graph argument is a description bitstring, a generator name (er, ba)
// with its flags, or an edge-list file.
Graph load_graph(const Flags& f) {
  if (is_generator(f.input)) return generate(f);
  if (f.p || f.m) throw std::invalid_argument("-p and -m only apply to er/ba generator input");
  if (!f.input.empty() && f.input.find_first_not_of("01") == std::string::npos)
    return decode(Description::parse(f.input));
  std::ifstream in(f.input);
  if (!in)
    throw std::invalid_argument("graph input '" + f.input +
                                "' is neither a description bitstring, a generator (er, ba) nor a readable file");
  return read_edge_list(in);
}

GrammarVariant variant_of(const Flags& f) { return parse_variant(f.variant); }

ZOptions z_options(const Flags& f) {
  ZOptions o;
  o.method = f.method == "1" ? ZMethod::link_fields : f.method == "2" ? ZMethod::relabelings : ZMethod::automatic;
  o.jobs = jobs_or(f, 1);
  o.max_link_fields = f.max_fields;
  o.max_relabel_nodes = f.max_n.value_or(kRelabelBound);
  return o;
}

void print_report_csv(std::ostream& out, const Graph& g, const ComplexityReport& r) {
  write_csv_header(out);
  write_csv_row(out, encode(g).to_string(), r, "input");
}

int cmd_complexity(const Flags& f, std::ostream& out) {
  const Graph g = load_graph(f);
  const auto r = complexity_report(g);
  if (f.csv) {
    print_report_csv(out, g, r);
    return 0;
  }
  out << "n=" << r.n << " links=" << r.links << " C=" << fixed(r.C, 2) << " omega=" << r.omega
      << " aut=" << r.aut_order << '\n';
  return 0;
}

int cmd_zcomplexity(const Flags& f, std::ostream& out) {
  const Graph g = load_graph(f);
  const auto r = complexity_report(g, variant_of(f), z_options(f));
  if (f.csv) {
    print_report_csv(out, g, r);
    return 0;
  }
  out << "n=" << r.n << " links=" << r.links << " C=" << fixed(r.C, 2) << " C_z=" << fixed(*r.C_z, 2)
      << " compression_error=" << fixed(*r.compression_error, 4) << " variant=" << f.variant << '\n';
  return 0;
}

int cmd_odc(const Flags& f, std::ostream& out) {
  const Graph g = load_graph(f);
  const auto r = complexity_report(g);
  if (f.csv) {
    print_report_csv(out, g, r);
    return 0;
  }
  out << "OdC=" << fixed(r.odc, 4) << '\n';
  return 0;
}

int cmd_canon(const Flags& f, std::ostream& out) {
  const Graph g = load_graph(f);
  const auto cr = canonical_labeling(g);
  out << "canonical=" << cr.form.description.to_string() << " aut=" << cr.aut_order
      << " omega=" << factorial(g.order()) / cr.aut_order << " labeling=";
  for (std::size_t i = 0; i < cr.labeling.size(); ++i) out << (i ? "," : "") << cr.labeling[i];
  out << '\n';
  return 0;
}

int cmd_compress(const Flags& f, std::ostream& out) {
  const Description d = encode(load_graph(f));
  const auto variant = variant_of(f);
  std::optional<CompressedDescription> best;
  if (f.w) {
    best = compress(d, *f.w, variant);
  } else {
    for (auto w : legal_wordsizes(d.node_count())) {
      auto c = compress(d, w, variant);
      if (!best || c.size() < best->size()) best = std::move(c);
    }
  }
  if (decompress(*best) != d) throw std::logic_error("compressed stream does not decode to the input");
  out << "bits=" << best->bits().to_string() << '\n'
      << "fields=" << best->to_field_string() << '\n'
      << "w=" << best->wordsize() << " variant=" << to_string(variant) << " zeta=" << best->size()
      << " input=" << d.size() << '\n';
  return 0;
}

int cmd_enumerate(const Flags& f, std::ostream& out) {
  EnumerateOptions eo;
  eo.max_n = f.max_n.value_or(kEnumerateBound);
  const std::size_t n = *f.n;
  const auto result = enumerate_graphs(n, eo);
  const auto variant = variant_of(f);
  ZOptions zo = z_options(f);
  zo.jobs = jobs_or(f, all_cores());
  zo.max_relabel_nodes = kRelabelBound;

  if (f.csv) write_csv_header(out);
  std::uint64_t total = 0;
  std::size_t shown = 0;
  for (const auto& rec : result.records) {
    const Graph& g = rec.representative;
    if (f.links && g.link_count() != *f.links) continue;
    ComplexityReport r;
    r.n = n;
    r.links = g.link_count();
    r.aut_order = rec.aut_order;
    r.omega = rec.omega;
    r.C = complexity_from_omega(n, rec.omega);
    r.odc = offdiagonal_complexity(g);
    if (f.zeta) {
      r.C_z = zcomplexity(g, variant, zo);
      r.compression_error = compression_error(r.C, *r.C_z);
    }
    total += rec.omega;
    ++shown;
    if (f.csv) {
      write_csv_row(out, hex_id('e', g.link_field().to_word()), r, "enumeration");
      continue;
    }
    out << encode(g).to_string() << " links=" << r.links << " omega=" << r.omega << " aut=" << r.aut_order
        << " C=" << fixed(r.C, 2);
    if (r.C_z) out << " C_z=" << fixed(*r.C_z, 2);
    out << '\n';
  }
  if (!f.csv) out << "classes=" << shown << " sum_omega=" << total << '\n';
  return 0;
}

std::ostream* progress_stream = nullptr;

void show_progress(std::size_t done, std::size_t total) {
  *progress_stream << "progress " << done << '/' << total << '\n' << std::flush;
}

void print_summary(std::ostream& out, const std::vector<ExperimentRow>& rows) {
  std::size_t count[2] = {0, 0};
  double err[2] = {0, 0}, odc[2] = {0, 0};
  for (const auto& r : rows) {
    const int k = r.source == RowSource::exhaustive_sparse ? 0 : 1;
    ++count[k];
    err[k] += r.compression_error;
    odc[k] += r.odc;
  }
  out << "rows=" << rows.size() << " exhaustive-sparse=" << count[0] << " random-sample=" << count[1] << '\n';
  for (int k = 0; k < 2; ++k) {
    if (count[k] == 0) continue;
    const double c = static_cast<double>(count[k]);
    out << (k == 0 ? "exhaustive-sparse" : "random-sample") << ": mean compression_error="
        << format_number(err[k] / c) << " mean odc=" << format_number(odc[k] / c) << '\n';
  }
  if (rows.size() >= 2) {
    const auto c = correlate(rows, "odc", "compression_error");
    out << "pearson r(odc, compression_error)=" << format_number(c.r) << " slope=" << format_number(c.slope)
        << " intercept=" << format_number(c.intercept) << '\n';
  }
}

int cmd_sweep(const Flags& f, std::ostream& out, std::ostream& err) {
  ExperimentOptions o;
  o.n = f.n.value_or(10);
  o.max_links = f.links.value_or(6);
  o.sample_count = f.samples;
  o.seed = f.seed;
  o.variant = variant_of(f);
  o.jobs = jobs_or(f, all_cores());
  const std::size_t bound = f.max_n.value_or(kRelabelBound);
  if (o.sample_count > 0 && o.n > bound)
    throw std::length_error("sampled graphs are scored over n! relabelings; n=" + std::to_string(o.n) +
                            " exceeds the bound of " + std::to_string(bound));
  if (f.progress) {
    progress_stream = &err;
    o.progress = show_progress;
  }
  const auto rows = sparse_sweep_experiment(o);
  if (!f.output.empty()) {
    std::ofstream file(f.output);
    if (!file) throw std::runtime_error("cannot write " + f.output);
    write_experiment_csv(file, rows);
  }
  if (f.csv)
    write_experiment_csv(out, rows);
  else
    print_summary(out, rows);
  return 0;
}

int cmd_gen(const Flags& f, std::ostream& out) {
  const Graph g = generate(f);
  if (f.edge_list)
    write_edge_list(out, g);
  else
    out << encode(g).to_string() << '\n';
  return 0;
}

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  while (!s.empty() && s.back() == ' ') s.pop_back();
  return s;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Information-content complexity measures of undirected graphs.", "graphcx"};
  app.require_subcommand(1);
  Flags f;
  const std::vector<std::string> variants{"explicit-len", "implicit-final-len"};

  auto graph_input = [&](CLI::App* s) {
    s->add_option("graph", f.input, "Description bitstring, edge-list file, or er/ba with -n/-p/-m/--seed")
        ->required();
    s->add_option("-n", f.n, "Node count for a generator");
    s->add_option("-p", f.p, "Link probability (er)");
    s->add_option("-m", f.m, "Links per new node (ba)");
    s->add_option("--seed", f.seed, "Generator seed");
  };
  auto variant = [&](CLI::App* s) {
    s->add_option("--variant", f.variant, "Block grammar")->check(CLI::IsMember(variants));
  };
  auto zeta_flags = [&](CLI::App* s) {
    variant(s);
    s->add_option("--method", f.method, "1: link fields, 2: relabelings, auto: cheaper of the two")
        ->check(CLI::IsMember({"1", "2", "auto"}));
    s->add_option("--max-fields", f.max_fields, "Link-field guard for method 1");
  };

  auto* complexity = app.add_subcommand("complexity", "C, omega and |Aut| of a graph");
  graph_input(complexity);
  complexity->add_flag("--csv", f.csv, "CSV row output");

  auto* zcomplexity = app.add_subcommand("zcomplexity", "Compression-based complexity C_z");
  graph_input(zcomplexity);
  zeta_flags(zcomplexity);
  zcomplexity->add_option("--jobs", f.jobs, "Worker threads (default 1)");
  zcomplexity->add_option("--max-n", f.max_n, "Node bound for method 2 (default 10, at most 11)");
  zcomplexity->add_flag("--csv", f.csv, "CSV row output");

  auto* odc = app.add_subcommand("odc", "Offdiagonal complexity");
  graph_input(odc);
  odc->add_flag("--csv", f.csv, "CSV row output");

  auto* canon = app.add_subcommand("canon", "Canonical description and |Aut|");
  graph_input(canon);

  auto* compress_cmd = app.add_subcommand("compress", "Run-length compress a description");
  graph_input(compress_cmd);
  variant(compress_cmd);
  compress_cmd->add_option("-w", f.w, "Wordsize (default: the best legal one)");

  auto* enumerate = app.add_subcommand("enumerate", "All isomorphism classes on n nodes");
  enumerate->add_option("-n", f.n, "Node count")->required();
  enumerate->add_option("-l", f.links, "Only classes with this many links");
  enumerate->add_option("--max-n", f.max_n, "Enumeration bound (default 8, the hard limit)");
  enumerate->add_flag("--zeta", f.zeta, "Also compute C_z per class");
  zeta_flags(enumerate);
  enumerate->add_option("--jobs", f.jobs, "Worker threads for C_z (default: all cores)");
  enumerate->add_flag("--csv", f.csv, "CSV output");

  auto* sweep = app.add_subcommand("sweep", "Sparse-class sweep plus random denser samples");
  sweep->add_option("-n", f.n, "Node count (default 10)");
  sweep->add_option("-l", f.links, "Largest link count swept exhaustively (default 6)");
  sweep->add_option("--samples", f.samples, "Random graphs above the sparse range (default 740)");
  sweep->add_option("--seed", f.seed, "Sampling seed");
  variant(sweep);
  sweep->add_option("--jobs", f.jobs, "Worker threads (default: all cores)");
  sweep->add_option("--max-n", f.max_n, "Node bound for sampled graphs (default 10, at most 11)");
  sweep->add_option("-o,--output", f.output, "Also write the CSV to this file");
  sweep->add_flag("--progress", f.progress, "Report progress on stderr");
  sweep->add_flag("--csv", f.csv, "CSV to stdout instead of the summary");

  auto* gen = app.add_subcommand("gen", "Generate a random graph");
  gen->add_option("kind", f.input, "er or ba")->required()->check(CLI::IsMember({"er", "ba"}));
  gen->add_option("-n", f.n, "Node count")->required();
  gen->add_option("-p", f.p, "Link probability (er)");
  gen->add_option("-m", f.m, "Links per new node (ba)");
  gen->add_option("--seed", f.seed, "Generator seed");
  gen->add_flag("--edges", f.edge_list, "Print an edge list instead of a description");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "graphcx: " << one_line(e.what()) << '\n';
    return 2;
  }

  const auto* cmd = app.get_subcommands().front();
  const std::string name = cmd->get_name();
  try {
    if (name == "complexity") return cmd_complexity(f, out);
    if (name == "zcomplexity") return cmd_zcomplexity(f, out);
    if (name == "odc") return cmd_odc(f, out);
    if (name == "canon") return cmd_canon(f, out);
    if (name == "compress") return cmd_compress(f, out);
    if (name == "enumerate") return cmd_enumerate(f, out);
    if (name == "sweep") return cmd_sweep(f, out, err);
    return cmd_gen(f, out);
  } catch (const std::length_error& e) {
    std::string hint = "raise with --max-n";
    if (name == "zcomplexity") hint = "raise with --max-n (method 2, at most 11) or --max-fields (method 1)";
    if (name == "enumerate") hint = "--max-n cannot exceed 8";
    err << "graphcx " << name << ": " << one_line(e.what()) << "; " << hint << '\n';
  } catch (const std::exception& e) {
    err << "graphcx " << name << ": " << one_line(e.what()) << '\n';
  }
  return 1;
}

}  // namespace graphcx::cli
