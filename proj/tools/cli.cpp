#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "bench.hpp"
#include "sknet/sknet.hpp"

namespace sknet::cli {

namespace {

struct Options {
  std::string input;
  std::string output;
  bool directed = false;
  bool bipartite = false;
  std::size_t threads = 0;
  std::uint64_t seed = 0;

  double damping = 0.85;
  std::size_t iterations = 100;
  std::optional<double> tolerance;
  std::string restart_file;
  double alpha = 0.1;
  std::size_t depth = 10;
  double resolution = 1.0;
  std::string labels_file;
  std::string dendrogram_file;
  std::size_t n_clusters = 2;
  std::size_t min_size = 1;
  std::size_t dim = 16;
  double gamma = 0.0;
  std::size_t rank = 2;
  std::string seeds_file;
  std::string method = "pagerank";
  std::string source;
  bool louvain_colors = false;
  double width = 440;
  double height = 340;
  std::vector<std::size_t> sizes;
  double p_in = 0.1;
  double p_out = 0.01;
  std::string format;
  std::string name;
  std::string cache_dir;
  std::string url_template;
  bool offline = false;
  std::vector<std::string> algorithms = kBenchAlgorithms;
  std::size_t repeats = 3;
  std::string tsv_file;
};

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

void emit(const Options& o, const std::string& content, std::ostream& out) {
  if (o.output.empty() || o.output == "-") {
    out << content;
    return;
  }
  write_file_atomically(o.output, [&](std::ostream& f) { f << content; });
}

std::string graph_name(const std::string& input) {
  if (input.rfind("builtin:", 0) == 0) return input.substr(8);
  return std::filesystem::path(input).stem().string();
}

AnyGraph load_input(const Options& o) {
  if (o.input.rfind("builtin:", 0) == 0) return builtin(o.input.substr(8));
  if (!std::filesystem::exists(o.input)) throw Error("input file not found: " + o.input);
  ParseOptions p;
  p.directed = o.directed;
  p.bipartite = o.bipartite;
  return load_graph(o.input, p);
}

Graph load_graph_input(const Options& o) { return as_graph(load_input(o)); }

// node<TAB>value pairs; '#' and '%' lines are comments.
std::vector<std::pair<std::string, std::string>> read_pairs(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#' || line[0] == '%') continue;
    std::istringstream fields(line);
    std::string a, b;
    if (!(fields >> a >> b)) throw ParseError("expected node and value", line_no);
    out.emplace_back(a, b);
  }
  return out;
}

std::size_t node_id(const Graph& g, const std::string& label) {
  const auto id = g.find(label);
  if (!id) throw LookupError("unknown node '" + label + "'");
  return *id;
}

std::int64_t parse_int(const std::string& s) {
  std::size_t used = 0;
  const long long v = std::stoll(s, &used);
  if (used != s.size()) throw ParameterError("not an integer: '" + s + "'");
  return v;
}

Partition read_labels(const Graph& g, const std::string& path) {
  std::vector<std::int64_t> labels(g.n_nodes(), Partition::kUnknownLabel);
  for (const auto& [node, label] : read_pairs(path)) {
    labels[node_id(g, node)] = parse_int(label);
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0) throw ParameterError("node '" + g.label(i) + "' has no label");
  }
  Partition p;
  p.n_clusters = static_cast<std::size_t>(*std::max_element(labels.begin(), labels.end()) + 1);
  p.labels = std::move(labels);
  return p;
}

Dendrogram read_dendrogram_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return read_dendrogram(in);
}

std::string labels_tsv(const Graph& g, const Partition& p) {
  std::ostringstream out;
  for (std::size_t i = 0; i < p.size(); ++i) out << g.label(i) << '\t' << p.labels[i] << '\n';
  return out.str();
}

std::string scores_tsv(const Graph& g, const std::vector<double>& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) out += g.label(i) + '\t' + fmt(s[i]) + '\n';
  return out;
}

std::string paths_tsv(const Graph& g, const PathResult& r) {
  std::ostringstream out;
  for (std::size_t v = 0; v < r.dist.size(); ++v) {
    out << g.label(v) << '\t';
    if (r.reachable(v)) {
      out << fmt(r.dist[v]) << '\t' << g.label(static_cast<std::size_t>(r.pred[v]));
    } else {
      out << "inf\t-";
    }
    out << '\n';
  }
  return out.str();
}

std::string singular_header(const std::vector<double>& s) {
  std::string out = "# singular_values";
  for (double x : s) out += '\t' + fmt(x);
  return out + '\n';
}

void append_rows(std::string& out, const std::string& side,
                 const std::vector<std::string>& labels, const Eigen::MatrixXd& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (!side.empty()) out += side + '\t';
    out += labels[static_cast<std::size_t>(i)];
    for (Eigen::Index c = 0; c < m.cols(); ++c) out += '\t' + fmt(m(i, c));
    out += '\n';
  }
}

std::string graph_bytes(const AnyGraph& g, const std::string& format) {
  std::ostringstream out;
  if (format == "sknb") {
    write_binary(g, out);
  } else {
    write_edge_list(g, out);
  }
  return out.str();
}

std::string output_format(const Options& o) {
  if (!o.format.empty()) return o.format;
  return std::filesystem::path(o.output).extension() == ".sknb" ? "sknb" : "tsv";
}

std::string info(const AnyGraph& any) {
  std::ostringstream out;
  const CsrMatrix* m = nullptr;
  if (const auto* b = std::get_if<BipartiteGraph>(&any)) {
    out << "type\tbipartite\nn_rows\t" << b->n_rows() << "\nn_cols\t" << b->n_cols()
        << "\nm\t" << b->n_edges() << '\n';
    m = &b->biadjacency();
  } else {
    const Graph& g = std::get<Graph>(any);
    out << "type\t" << (g.directed() ? "directed" : "undirected") << "\nn\t" << g.n_nodes()
        << "\nm\t" << g.n_edges() << '\n';
    m = &g.adjacency();
  }
  out << "nnz\t" << m->nnz() << "\nindex_bytes\t" << (m->indices().wide() ? 8 : 4)
      << "\nmemory_bytes\t" << m->memory_bytes() << '\n';
  return out.str();
}

std::string svg_graph_command(const Options& o) {
  const Graph g = load_graph_input(o);
  SpectralParams sp;
  sp.dim = 2;
  sp.gamma = o.gamma;
  sp.seed = o.seed;
  const Layout layout = layout_from_embedding(spectral_embedding(g, sp));
  std::optional<Partition> labels;
  if (!o.labels_file.empty()) {
    labels = read_labels(g, o.labels_file);
  } else if (o.louvain_colors) {
    LouvainParams lp;
    lp.seed = o.seed;
    lp.resolution = o.resolution;
    labels = louvain(g, lp);
  }
  SvgStyle style;
  style.width = o.width;
  style.height = o.height;
  return svg_graph(g, layout, labels, style);
}

std::string svg_dendrogram_command(const Options& o) {
  SvgStyle style;
  style.width = o.width;
  style.height = o.height;
  if (!o.dendrogram_file.empty()) {
    return svg_dendrogram(read_dendrogram_file(o.dendrogram_file), style);
  }
  if (o.input.empty()) throw ParameterError("either --dendrogram or --input is required");
  const Graph g = load_graph_input(o);
  const Agglomeration agg = agglomerate(g);
  std::vector<std::string> names;
  for (std::size_t v : agg.leaf_nodes) names.push_back(g.label(v));
  return svg_dendrogram(agg.dendrogram, style, names);
}

std::string hierarchy_command(const Options& o) {
  const Graph g = load_graph_input(o);
  const Agglomeration agg = agglomerate(g);
  std::ostringstream out;
  if (agg.restricted()) {
    out << "# leaves";
    for (std::size_t v : agg.leaf_nodes) out << '\t' << g.label(v);
    out << '\n';
  }
  if (o.min_size > 1) {
    const CompressedDendrogram c = compress(agg.dendrogram, o.min_size);
    for (std::size_t k = 0; k < c.groups.size(); ++k) {
      out << "# group " << k;
      for (std::size_t leaf : c.groups[k]) out << '\t' << g.label(agg.leaf_nodes[leaf]);
      out << '\n';
    }
    write_dendrogram(out, c.dendrogram);
  } else {
    write_dendrogram(out, agg.dendrogram);
  }
  return out.str();
}

std::string classify_command(const Options& o) {
  const Graph g = load_graph_input(o);
  SeedLabels seeds;
  for (const auto& [node, label] : read_pairs(o.seeds_file)) {
    seeds[node_id(g, node)] = parse_int(label);
  }
  Partition p;
  if (o.method == "pagerank") {
    p = pagerank_classifier(g, seeds, o.damping, o.iterations);
  } else {
    p = label_propagation(g, seeds, o.iterations);
  }
  return labels_tsv(g, p);
}

std::string pagerank_command(const Options& o) {
  const Graph g = load_graph_input(o);
  PageRankParams p;
  p.damping = o.damping;
  p.iterations = o.iterations;
  p.tolerance = o.tolerance;
  if (!o.restart_file.empty()) {
    p.restart.assign(g.n_nodes(), 0.0);
    double total = 0.0;
    for (const auto& [node, weight] : read_pairs(o.restart_file)) {
      const double w = std::stod(weight);
      p.restart[node_id(g, node)] += w;
      total += w;
    }
    if (!(total > 0.0)) throw ParameterError("restart weights must have a positive sum");
    for (double& x : p.restart) x /= total;
  }
  return scores_tsv(g, pagerank(g, p));
}

std::string bench_command(const Options& o) {
  BenchOptions b;
  b.algorithms = o.algorithms;
  b.repeats = o.repeats;
  b.iterations = o.iterations;
  b.dim = o.dim;
  b.resolution = o.resolution;
  b.seed = o.seed;
  const BenchReport report = run_bench(load_graph_input(o), graph_name(o.input), b);
  const std::string tsv = format_report_tsv(report);
  if (!o.tsv_file.empty()) {
    write_file_atomically(o.tsv_file, [&](std::ostream& f) { f << tsv; });
  }
  return format_report(report) + "\n" + tsv;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Sparse graph analysis toolkit", "sknet"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--threads", o.threads, "Worker threads (0: hardware default)");

  std::map<std::string, CLI::App*> subs;
  auto add = [&](const std::string& name, const std::string& help) {
    CLI::App* s = app.add_subcommand(name, help);
    subs[name] = s;
    return s;
  };
  auto input = [&](CLI::App* s, bool required = true) {
    auto* opt = s->add_option("-i,--input", o.input,
                              "Edge list or SKNB file, or builtin:NAME");
    if (required) opt->required();
    s->add_flag("--directed", o.directed, "Parse an edge list as directed");
    s->add_flag("--bipartite", o.bipartite, "Parse an edge list as bipartite");
  };
  auto output = [&](CLI::App* s) {
    s->add_option("-o,--output", o.output, "Output file (default: stdout)");
  };
  auto io = [&](CLI::App* s) {
    input(s);
    output(s);
  };
  auto seed = [&](CLI::App* s) { s->add_option("--seed", o.seed, "Random seed"); };

  io(add("info", "Print graph size and storage footprint"));

  auto* pr = add("pagerank", "PageRank scores");
  io(pr);
  pr->add_option("--damping", o.damping, "Damping factor")->check(CLI::Range(0.0, 1.0));
  pr->add_option("--iters", o.iterations, "Power iterations");
  pr->add_option("--tol", o.tolerance, "Stop early below this L1 change");
  pr->add_option("--restart", o.restart_file, "TSV node<TAB>weight restart distribution")
      ->check(CLI::ExistingFile);

  auto* ht = add("hits", "Hub and authority scores");
  io(ht);
  ht->add_option("--iters", o.iterations, "Iterations");

  auto* kz = add("katz", "Truncated Katz centrality");
  io(kz);
  kz->add_option("--alpha", o.alpha, "Attenuation factor");
  kz->add_option("--depth", o.depth, "Number of path lengths summed");

  io(add("harmonic", "Harmonic centrality"));

  auto* lv = add("louvain", "Louvain communities");
  io(lv);
  seed(lv);
  lv->add_option("--resolution", o.resolution, "Modularity resolution");

  auto* md = add("modularity", "Modularity of a labeling");
  io(md);
  md->add_option("--labels", o.labels_file, "TSV node<TAB>cluster")
      ->required()
      ->check(CLI::ExistingFile);
  md->add_option("--resolution", o.resolution, "Modularity resolution");

  auto* hi = add("hierarchy", "Agglomerative dendrogram as TSV");
  io(hi);
  hi->add_option("--min-size", o.min_size, "Collapse subtrees smaller than this");

  auto* ct = add("cut", "Cut a dendrogram into k clusters");
  ct->add_option("--dendrogram", o.dendrogram_file, "Dendrogram TSV")
      ->required()
      ->check(CLI::ExistingFile);
  ct->add_option("-k,--clusters", o.n_clusters, "Number of clusters")->required();
  output(ct);

  auto* sp = add("spectral", "Spectral embedding");
  io(sp);
  seed(sp);
  sp->add_option("--dim", o.dim, "Embedding dimension");
  sp->add_option("--gamma", o.gamma, "Regularization");
  sp->add_option("--tol", o.tolerance, "Eigenpair residual tolerance");

  auto* sv = add("svd", "Truncated SVD of the adjacency matrix");
  io(sv);
  seed(sv);
  sv->add_option("--rank", o.rank, "Number of singular triplets");

  auto* gs = add("gsvd", "SVD of the degree-normalized biadjacency matrix");
  io(gs);
  seed(gs);
  gs->add_option("--rank", o.rank, "Number of singular triplets");

  auto* cl = add("classify", "Semi-supervised node classification");
  io(cl);
  cl->add_option("--seeds", o.seeds_file, "TSV node<TAB>label")
      ->required()
      ->check(CLI::ExistingFile);
  cl->add_option("--method", o.method, "pagerank or propagation")
      ->check(CLI::IsMember({"pagerank", "propagation"}));
  cl->add_option("--damping", o.damping, "Damping factor")->check(CLI::Range(0.0, 1.0));
  cl->add_option("--iters", o.iterations, "Iterations");

  for (const std::string name : {"bfs", "dijkstra"}) {
    auto* s = add(name, name == "bfs" ? "Hop distances from a source"
                                      : "Weighted distances from a source");
    io(s);
    s->add_option("--source", o.source, "Source node")->required();
  }
  io(add("components", "Weakly connected components"));
  io(add("scc", "Strongly connected components"));

  auto* sg = add("svg-graph", "Render the graph with a spectral layout");
  io(sg);
  seed(sg);
  sg->add_option("--labels", o.labels_file, "Color by TSV node<TAB>cluster")
      ->check(CLI::ExistingFile);
  sg->add_flag("--louvain", o.louvain_colors, "Color by Louvain communities");
  sg->add_option("--gamma", o.gamma, "Layout regularization");
  sg->add_option("--width", o.width, "Canvas width");
  sg->add_option("--height", o.height, "Canvas height");

  auto* sd = add("svg-dendrogram", "Render a dendrogram");
  input(sd, false);
  output(sd);
  sd->add_option("--dendrogram", o.dendrogram_file, "Dendrogram TSV")
      ->check(CLI::ExistingFile);
  sd->add_option("--width", o.width, "Canvas width");
  sd->add_option("--height", o.height, "Canvas height");

  auto* sb = add("sbm", "Sample a stochastic block model");
  output(sb);
  seed(sb);
  sb->add_option("--sizes", o.sizes, "Block sizes")->required()->delimiter(',');
  sb->add_option("--p-in", o.p_in, "Within-block edge probability");
  sb->add_option("--p-out", o.p_out, "Between-block edge probability");
  sb->add_option("--format", o.format, "tsv or sknb (default: from extension)")
      ->check(CLI::IsMember({"tsv", "sknb"}));

  auto* ft = add("fetch", "Download a Konect dataset into the cache");
  ft->add_option("name", o.name, "Dataset name")->required();
  output(ft);
  ft->add_option("--cache-dir", o.cache_dir, "Cache directory (default: $SKNET_DATA_DIR)");
  ft->add_option("--url-template", o.url_template, "URL with {name} placeholder");
  ft->add_flag("--offline", o.offline, "Only use the cache");
  ft->add_option("--format", o.format, "tsv or sknb")->check(CLI::IsMember({"tsv", "sknb"}));

  auto* cv = add("convert", "Convert between edge list and SKNB");
  input(cv);
  cv->add_option("-o,--output", o.output, "Output file")->required();
  cv->add_option("--format", o.format, "tsv or sknb (default: from extension)")
      ->check(CLI::IsMember({"tsv", "sknb"}));

  auto* bn = add("bench", "Time louvain, pagerank, hits and spectral");
  io(bn);
  seed(bn);
  bn->add_option("--algos", o.algorithms, "Algorithms to run")
      ->delimiter(',')
      ->check(CLI::IsMember(kBenchAlgorithms));
  bn->add_option("--repeats", o.repeats, "Repeats per algorithm")->check(CLI::PositiveNumber);
  bn->add_option("--iters", o.iterations, "PageRank and HITS iterations");
  bn->add_option("--dim", o.dim, "Spectral dimension");
  bn->add_option("--resolution", o.resolution, "Louvain resolution");
  bn->add_option("--tsv", o.tsv_file, "Also write the TSV report here");

  try {
    std::vector<std::string> rest(args.rbegin(), args.rend());
    if (!rest.empty()) rest.pop_back();
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    if (code == 0) return kExitOk;
    return kExitUsage;
  }

  try {
    set_num_threads(o.threads);
    const std::string cmd = app.get_subcommands().front()->get_name();
    std::string result;
    if (cmd == "info") {
      result = info(load_input(o));
    } else if (cmd == "pagerank") {
      result = pagerank_command(o);
    } else if (cmd == "hits") {
      const Graph g = load_graph_input(o);
      HitsParams p;
      p.iterations = o.iterations;
      const HitsScores s = hits(g, p);
      for (std::size_t i = 0; i < g.n_nodes(); ++i) {
        result += g.label(i) + '\t' + fmt(s.hubs[i]) + '\t' + fmt(s.authorities[i]) + '\n';
      }
    } else if (cmd == "katz") {
      const Graph g = load_graph_input(o);
      result = scores_tsv(g, katz(g, o.alpha, o.depth));
    } else if (cmd == "harmonic") {
      const Graph g = load_graph_input(o);
      result = scores_tsv(g, harmonic_centrality(g));
    } else if (cmd == "louvain") {
      const Graph g = load_graph_input(o);
      LouvainParams p;
      p.resolution = o.resolution;
      p.seed = o.seed;
      const LouvainResult r = louvain_run(g, p);
      result = "# modularity\t" + fmt(r.modularity) + '\n' + labels_tsv(g, r.partition);
    } else if (cmd == "modularity") {
      const Graph g = load_graph_input(o);
      result = fmt(modularity(g, read_labels(g, o.labels_file), o.resolution)) + '\n';
    } else if (cmd == "hierarchy") {
      result = hierarchy_command(o);
    } else if (cmd == "cut") {
      const Partition p = cut_straight(read_dendrogram_file(o.dendrogram_file), o.n_clusters);
      for (std::size_t i = 0; i < p.size(); ++i) {
        result += std::to_string(i) + '\t' + std::to_string(p.labels[i]) + '\n';
      }
    } else if (cmd == "spectral") {
      const Graph g = load_graph_input(o);
      SpectralParams p;
      p.dim = o.dim;
      p.gamma = o.gamma;
      p.seed = o.seed;
      if (o.tolerance) p.tol = *o.tolerance;
      const EmbeddingMatrix e = spectral_embedding(g, p);
      result = "# eigenvalues";
      for (double x : e.spectrum) result += '\t' + fmt(x);
      result += '\n';
      std::vector<std::string> labels;
      for (std::size_t i = 0; i < g.n_nodes(); ++i) labels.push_back(g.label(i));
      append_rows(result, "", labels, e.coords);
    } else if (cmd == "svd" || cmd == "gsvd") {
      const AnyGraph any = load_input(o);
      std::vector<std::string> row_labels, col_labels;
      const CsrMatrix* m = nullptr;
      if (const auto* b = std::get_if<BipartiteGraph>(&any)) {
        m = &b->biadjacency();
        for (std::size_t i = 0; i < b->n_rows(); ++i) row_labels.push_back(b->row_label(i));
        for (std::size_t j = 0; j < b->n_cols(); ++j) col_labels.push_back(b->col_label(j));
      } else {
        const Graph& g = std::get<Graph>(any);
        m = &g.adjacency();
        for (std::size_t i = 0; i < g.n_nodes(); ++i) row_labels.push_back(g.label(i));
        col_labels = row_labels;
      }
      const SvdResult r = cmd == "svd" ? truncated_svd(*m, o.rank, o.seed)
                                       : gsvd(*m, o.rank, o.seed);
      result = singular_header(r.s);
      append_rows(result, "row", row_labels, r.u);
      append_rows(result, "col", col_labels, r.v);
    } else if (cmd == "classify") {
      result = classify_command(o);
    } else if (cmd == "bfs" || cmd == "dijkstra") {
      const Graph g = load_graph_input(o);
      const std::size_t s = node_id(g, o.source);
      result = paths_tsv(g, cmd == "bfs" ? bfs(g, s) : dijkstra(g, s));
    } else if (cmd == "components") {
      const Graph g = load_graph_input(o);
      result = labels_tsv(g, connected_components(g));
    } else if (cmd == "scc") {
      const Graph g = load_graph_input(o);
      result = labels_tsv(g, strongly_connected_components(g));
    } else if (cmd == "svg-graph") {
      result = svg_graph_command(o);
    } else if (cmd == "svg-dendrogram") {
      result = svg_dendrogram_command(o);
    } else if (cmd == "sbm") {
      const Graph g = generate_sbm(SbmParams::planted(o.sizes, o.p_in, o.p_out, o.seed));
      result = graph_bytes(g, output_format(o));
    } else if (cmd == "fetch") {
      KonectOptions k;
      if (!o.url_template.empty()) k.url_template = o.url_template;
      k.allow_network = !o.offline;
      const std::filesystem::path dir =
          o.cache_dir.empty() ? default_data_dir() : std::filesystem::path(o.cache_dir);
      const AnyGraph g = load_konect(o.name, dir, k);
      if (o.output.empty()) {
        result = info(g);
      } else {
        result = graph_bytes(g, output_format(o));
      }
    } else if (cmd == "convert") {
      result = graph_bytes(load_input(o), output_format(o));
    } else if (cmd == "bench") {
      result = bench_command(o);
    }
    emit(o, result, out);
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

}  // namespace sknet::cli
