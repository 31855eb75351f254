#include <openssl/evp.h>

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gwdict/gwdict.hpp"
#include "json.hpp"

namespace {

using gwdict::InvalidInput;
using Json = nlohmann::json;

constexpr const char* kVersion = "1.0.0";

struct Settings {
  std::string graph;
  std::string signal;
  std::string out;
  std::string dict = "pc";
  std::string strategy = "best";
  std::string metric = "hops";
  std::string budgets;
  std::string sigma;
  std::string family;
  std::string model = "pc";
  std::string kind;
  std::size_t bandwidth = 1;
  std::size_t trials = 20;
  std::size_t pieces = 2;
  std::size_t nodes = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  double radius = 0.0;
  double probability = 0.0;
  double noise = 0.0;
  std::optional<double> tol;
  std::uint64_t seed = 1;
  bool raw = false;
  bool distinct = false;
  bool arbitrary = false;
};

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return {};
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr);
  std::vector<char> buf(1 << 16);
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), md, &len);
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return os.str();
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ','))
    if (!gwdict::detail::trim(item).empty()) out.emplace_back(gwdict::detail::trim(item));
  return out;
}

std::vector<std::size_t> parse_budgets(const std::string& s) {
  std::vector<std::size_t> out;
  for (const auto& f : split_list(s)) {
    const auto v = gwdict::detail::parse_index(f);
    if (!v || *v == 0) throw InvalidInput("bad budget '" + f + "'");
    out.push_back(*v);
  }
  return out;
}

std::vector<double> parse_reals(const std::string& s, const char* what) {
  std::vector<double> out;
  for (const auto& f : split_list(s)) {
    const auto v = gwdict::detail::parse_double(f);
    if (!v) throw InvalidInput(std::string("bad ") + what + " '" + f + "'");
    out.push_back(*v);
  }
  return out;
}

gwdict::DistanceMetric parse_metric(const std::string& s) {
  if (s == "hops") return gwdict::DistanceMetric::kHops;
  if (s == "inverse_weight") return gwdict::DistanceMetric::kInverseWeight;
  throw InvalidInput("unknown metric '" + s + "' (expected hops or inverse_weight)");
}

Json label_json(const std::string& label) {
  if (const auto v = gwdict::detail::parse_index(label)) return *v;
  return label;
}

Json nodes_json(std::span<const gwdict::NodeId> nodes, const std::vector<std::string>& labels) {
  Json a = Json::array();
  for (auto v : nodes) a.push_back(label_json(labels[v]));
  return a;
}

gwdict::LoadedGraph load_graph(const Settings& s) {
  if (s.graph.empty()) throw InvalidInput("--graph is required");
  return gwdict::read_edge_list_file(s.graph);
}

void require_connected(const gwdict::LoadedGraph& lg) {
  const gwdict::Graph& g = lg.graph;
  if (g.size() == 0) throw InvalidInput("graph has no nodes");
  if (gwdict::is_connected(g)) return;
  const auto comps = gwdict::component_lists(g, std::vector<char>(g.size(), 1));
  std::ostringstream os;
  os << "graph is disconnected (" << comps.size() << " components):";
  for (std::size_t c = 0; c < comps.size() && c < 8; ++c) {
    os << " {";
    for (std::size_t i = 0; i < comps[c].size() && i < 6; ++i) os << (i ? "," : "") << lg.labels[comps[c][i]];
    if (comps[c].size() > 6) os << ",...";
    os << "}";
  }
  if (comps.size() > 8) os << " ...";
  throw InvalidInput(os.str());
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write '" + path + "'");
  out << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// Prints to stdout when no output path is given.
void emit(const std::string& path, const std::string& text) {
  if (path.empty())
    std::cout << text;
  else
    write_text(path, text);
}

std::string prefix_or(const Settings& s, const char* fallback) { return s.out.empty() ? fallback : s.out; }

Json tree_json(const gwdict::PartitionTree& tree, const std::vector<std::string>& labels) {
  Json nodes = Json::array();
  for (std::size_t id = 0; id < tree.size(); ++id) {
    const auto& t = tree.node(id);
    Json n;
    n["id"] = id;
    n["level"] = t.level;
    n["piece"] = nodes_json(t.piece.nodes(), labels);
    n["parent"] = t.parent ? Json(*t.parent) : Json(nullptr);
    n["left"] = t.left ? Json(*t.left) : Json(nullptr);
    n["right"] = t.right ? Json(*t.right) : Json(nullptr);
    if (!t.is_leaf()) {
      n["boundary_component_size"] = t.boundary_component_size;
      n["repaired"] = t.repaired;
      n["fallback"] = t.fallback;
    }
    nodes.push_back(std::move(n));
  }
  Json j;
  j["graph_size"] = tree.graph_size();
  j["depth"] = tree.depth();
  j["node_count"] = tree.size();
  j["repair_count"] = tree.repair_count();
  j["nodes"] = std::move(nodes);
  return j;
}

std::shared_ptr<const gwdict::PartitionTree> make_tree(const gwdict::Graph& g, const Settings& s) {
  return std::make_shared<const gwdict::PartitionTree>(gwdict::decompose(g, {parse_metric(s.metric)}));
}

gwdict::Dictionary make_dictionary(const gwdict::Graph& g, const Settings& s,
                                   std::shared_ptr<const gwdict::PartitionTree>& tree) {
  if (s.dict == "pc" || s.dict == "ps" || s.dict == "wavelet") tree = make_tree(g, s);
  if (s.dict == "pc") return gwdict::build_pc_dict(tree);
  if (s.dict == "ps") return gwdict::build_ps_dict(g, tree, s.bandwidth);
  if (s.dict == "wavelet") return gwdict::wavelet_dictionary(tree);
  if (s.dict == "gft") return gwdict::fourier_dictionary(g);
  if (s.dict == "delta") return gwdict::delta_dictionary(g.size());
  throw InvalidInput("unknown dictionary '" + s.dict + "' (expected pc, ps, gft, delta or wavelet)");
}

// ---- commands ------------------------------------------------------------

std::vector<std::string> cmd_partition(const Settings& s) {
  const auto lg = load_graph(s);
  if (lg.graph.size() < 2) throw InvalidInput("graph too small: bisection needs at least 2 nodes");
  require_connected(lg);
  const auto b = gwdict::bisect(lg.graph, {parse_metric(s.metric)});
  const auto cert = gwdict::verify_bisection(lg.graph, b);
  Json j;
  j["left"] = nodes_json(b.left.nodes(), lg.labels);
  j["right"] = nodes_json(b.right.nodes(), lg.labels);
  j["hubs"] = {label_json(lg.labels[b.hubs.first]), label_json(lg.labels[b.hubs.second])};
  j["hub_distance"] = b.hubs.distance;
  j["median"] = b.median;
  j["metric"] = s.metric;
  Json c;
  c["left_connected"] = cert.left_connected;
  c["right_connected"] = cert.right_connected;
  c["covers"] = cert.covers;
  c["balance_gap"] = cert.gap;
  c["boundary_component_size"] = b.boundary_component_size;
  c["bound"] = cert.bound;
  c["repaired"] = cert.repaired;
  c["fallback"] = cert.fallback;
  c["violations"] = cert.violations;
  c["ok"] = cert.ok();
  j["certificate"] = std::move(c);
  emit(s.out, dump(j));
  if (!cert.ok()) throw gwdict::InvariantViolation("bisection certificate failed: " + cert.violations.front());
  return s.out.empty() ? std::vector<std::string>{} : std::vector<std::string>{s.out};
}

std::vector<std::string> cmd_wavelets(const Settings& s) {
  const auto lg = load_graph(s);
  require_connected(lg);
  const auto tree = gwdict::decompose(lg.graph, {parse_metric(s.metric)});
  const gwdict::WaveletBasis w(tree);
  const std::string prefix = prefix_or(s, "wavelets");
  std::ostringstream trip;
  gwdict::write_triplets(trip, w.columns());
  Json j = tree_json(tree, lg.labels);
  Json cols = Json::array();
  for (std::size_t k = 0; k < w.size(); ++k) cols.push_back(w.column_node(k));
  j["column_tree_node"] = std::move(cols);
  j["nnz"] = w.columns().nnz(0.0);
  write_text(prefix + ".triplets.csv", trip.str());
  write_text(prefix + ".tree.json", dump(j));
  return {prefix + ".triplets.csv", prefix + ".tree.json"};
}

std::vector<std::string> cmd_dict(const Settings& s) {
  const auto lg = load_graph(s);
  require_connected(lg);
  if (s.kind != "pc" && s.kind != "ps") throw InvalidInput("dictionary kind must be pc or ps");
  auto tree = make_tree(lg.graph, s);
  const gwdict::Dictionary d =
      s.kind == "pc" ? gwdict::build_pc_dict(tree) : gwdict::build_ps_dict(lg.graph, tree, s.bandwidth);
  const std::string prefix = prefix_or(s, s.kind.c_str());
  std::ostringstream trip;
  if (s.raw && s.kind == "pc")
    gwdict::write_triplets(trip, gwdict::raw_indicator_atoms(*tree));
  else
    gwdict::write_triplets(trip, d.atoms());
  const auto st = gwdict::dict_stats(d);
  Json atoms = Json::array();
  for (std::size_t i = 0; i < d.atom_count(); ++i) {
    const auto& info = d.info(i);
    atoms.push_back({{"atom", i}, {"tree_node", *info.tree_node}, {"level", info.level},
                     {"spectral_index", info.spectral_index}});
  }
  Json j;
  j["kind"] = s.kind;
  j["bandwidth"] = d.bandwidth();
  j["normalized"] = !(s.raw && s.kind == "pc");
  j["atom_count"] = st.atom_count;
  j["nnz"] = st.nnz;
  j["coherence"] = st.coherence;
  j["atoms"] = std::move(atoms);
  j["tree"] = tree_json(*tree, lg.labels);
  write_text(prefix + ".atoms.csv", trip.str());
  write_text(prefix + ".manifest.json", dump(j));
  return {prefix + ".atoms.csv", prefix + ".manifest.json"};
}

std::vector<std::string> cmd_approx(const Settings& s) {
  const auto lg = load_graph(s);
  require_connected(lg);
  if (s.signal.empty()) throw InvalidInput("--signal is required");
  const gwdict::Vector x = gwdict::read_signal_file(s.signal, lg.labels);
  if (gwdict::squared_norm(x) == 0.0) throw InvalidInput("signal is identically zero");
  std::shared_ptr<const gwdict::PartitionTree> tree;
  const gwdict::Dictionary d = make_dictionary(lg.graph, s, tree);
  auto budgets = s.budgets.empty() ? std::vector<std::size_t>{} : parse_budgets(s.budgets);
  if (budgets.empty())
    for (std::size_t b = 1; b <= std::min<std::size_t>(lg.graph.size(), 32); ++b) budgets.push_back(b);
  const auto strategy = gwdict::parse_strategy(s.strategy);
  const auto curve = gwdict::approximation_curve(d, x, budgets, strategy);

  std::ostringstream csv;
  csv << "budget,nmse,snr_db,method\n";
  Json rows = Json::array();
  for (const auto& p : curve) {
    csv << p.budget << ',' << gwdict::detail::format_double(p.nmse) << ','
        << gwdict::detail::format_double(p.snr_db) << ',' << p.method << '\n';
    rows.push_back({{"budget", p.budget}, {"nmse", p.nmse}, {"snr_db", p.snr_db}, {"method", p.method}});
  }
  Json j;
  j["dictionary"] = {{"kind", s.dict}, {"bandwidth", d.bandwidth()}, {"atom_count", d.atom_count()}};
  j["strategy"] = s.strategy;
  j["nodes"] = lg.graph.size();
  j["cut_count"] = gwdict::cut_count(lg.graph, x);
  if (tree) {
    j["depth"] = tree->depth();
    j["pc_sparsity_bound"] = std::min(gwdict::pc_sparsity_bound(lg.graph, *tree, x), lg.graph.size());
  }
  j["curve"] = std::move(rows);
  const std::string prefix = prefix_or(s, "approx");
  write_text(prefix + ".csv", csv.str());
  write_text(prefix + ".json", dump(j));
  return {prefix + ".csv", prefix + ".json"};
}

std::vector<std::string> cmd_localize(const Settings& s) {
  const auto lg = load_graph(s);
  require_connected(lg);
  std::shared_ptr<const gwdict::PartitionTree> tree;
  const gwdict::Dictionary d = make_dictionary(lg.graph, s, tree);
  if (!tree) tree = make_tree(lg.graph, s);
  gwdict::LocalizationOptions opts;
  if (!s.sigma.empty()) opts.sigmas = parse_reals(s.sigma, "noise level");
  opts.trials = s.trials;
  opts.seed = s.seed;
  opts.arbitrary_pieces = s.arbitrary;
  opts.fixed_tol = s.tol;
  const auto points = gwdict::localization_sweep(lg.graph, *tree, d, opts);
  std::ostringstream csv;
  csv << "sigma,snr_in,snr_out\n";
  Json rows = Json::array();
  for (const auto& p : points) {
    csv << gwdict::detail::format_double(p.sigma) << ',' << gwdict::detail::format_double(p.snr_in) << ','
        << gwdict::detail::format_double(p.snr_out) << '\n';
    rows.push_back({{"sigma", p.sigma}, {"snr_in", p.snr_in}, {"snr_out", p.snr_out}});
  }
  Json j;
  j["dictionary"] = {{"kind", s.dict}, {"bandwidth", d.bandwidth()}, {"atom_count", d.atom_count()}};
  j["trials"] = s.trials;
  j["seed"] = s.seed;
  j["pieces"] = s.arbitrary ? "arbitrary" : "tree";
  j["stopping"] = s.tol ? "tol" : "discrepancy";
  j["points"] = std::move(rows);
  const std::string prefix = prefix_or(s, "localize");
  write_text(prefix + ".csv", csv.str());
  write_text(prefix + ".json", dump(j));
  return {prefix + ".csv", prefix + ".json"};
}

std::vector<std::string> cmd_synth_graph(const Settings& s) {
  const auto family = gwdict::parse_graph_family(s.family);
  gwdict::GraphParams p;
  p.nodes = s.nodes;
  p.rows = s.rows;
  p.cols = s.cols;
  p.radius = s.radius;
  p.probability = s.probability;
  const gwdict::Graph g = gwdict::gen_graph(family, p, s.seed);
  const std::string path = s.out.empty() ? "graph.tsv" : s.out;
  std::ostringstream os;
  gwdict::write_edge_list(os, g);
  Json j;
  j["family"] = std::string(gwdict::to_string(family));
  j["seed"] = s.seed;
  j["parameters"] = {{"nodes", p.nodes}, {"rows", p.rows}, {"cols", p.cols},
                     {"radius", p.radius}, {"probability", p.probability}};
  j["node_count"] = g.size();
  j["edge_count"] = g.edge_count();
  write_text(path, os.str());
  write_text(path + ".json", dump(j));
  return {path, path + ".json"};
}

std::vector<std::string> cmd_synth_signal(const Settings& s) {
  const auto lg = load_graph(s);
  require_connected(lg);
  const gwdict::Graph& g = lg.graph;
  if (s.pieces < 1 || s.pieces > g.size()) throw InvalidInput("--pieces must lie in 1..N");
  gwdict::Rng rng(s.seed);
  gwdict::Rng pieces_rng = rng.split(0);
  gwdict::Rng values_rng = rng.split(1);
  gwdict::Rng noise_rng = rng.split(2);
  std::optional<gwdict::PartitionTree> tree;
  gwdict::Partition part;
  if (s.arbitrary) {
    part = gwdict::gen_arbitrary_pieces(g, s.pieces, pieces_rng);
  } else {
    tree = gwdict::decompose(g, {parse_metric(s.metric)});
    part = gwdict::gen_pieces(*tree, s.pieces, pieces_rng);
  }
  gwdict::Vector x;
  Json j;
  if (s.model == "pc") {
    const auto sig = gwdict::gen_pc(part, values_rng, s.distinct);
    x = sig.values;
    j["piece_values"] = sig.piece_values;
  } else if (s.model == "pbl") {
    const auto sig = gwdict::gen_pbl(g, part, s.bandwidth, values_rng);
    x = sig.values;
    j["bandwidth"] = s.bandwidth;
    j["coefficients"] = sig.coefficients;
  } else {
    throw InvalidInput("unknown signal model '" + s.model + "' (expected pc or pbl)");
  }
  const gwdict::Vector y = gwdict::add_noise(x, s.noise, noise_rng);
  Json pieces = Json::array();
  for (const auto& p : part.pieces) pieces.push_back(nodes_json(p.nodes(), lg.labels));
  j["model"] = s.model;
  j["seed"] = s.seed;
  j["noise_sigma"] = s.noise;
  j["pieces"] = std::move(pieces);
  j["piece_mode"] = s.arbitrary ? "arbitrary" : "tree";
  if (!s.arbitrary) j["tree_nodes"] = part.tree_node;
  j["cut_count"] = gwdict::cut_count(g, x);
  const std::string path = s.out.empty() ? "signal.csv" : s.out;
  std::ostringstream os;
  gwdict::write_signal(os, y);
  write_text(path, os.str());
  write_text(path + ".json", dump(j));
  if (s.noise > 0.0) {
    std::ostringstream clean;
    gwdict::write_signal(clean, x);
    write_text(path + ".clean", clean.str());
    return {path, path + ".json", path + ".clean"};
  }
  return {path, path + ".json"};
}

std::vector<std::string> cmd_eig(const Settings& s) {
  const auto lg = load_graph(s);
  const auto e = gwdict::sym_eig(gwdict::laplacian(lg.graph));
  std::ostringstream os;
  gwdict::write_eigenpairs_csv(os, e);
  emit(s.out, os.str());
  return s.out.empty() ? std::vector<std::string>{} : std::vector<std::string>{s.out};
}

void write_manifest(const std::string& command, const Settings& s, const std::vector<std::string>& outputs,
                    const std::vector<std::string>& argv, double seconds) {
  Json inputs = Json::object();
  for (const std::string* path : {&s.graph, &s.signal})
    if (!path->empty()) inputs[*path] = sha256_file(*path);
  Json j;
  j["command"] = command;
  j["arguments"] = argv;
  j["seed"] = s.seed;
  j["inputs"] = std::move(inputs);
  j["outputs"] = outputs;
  j["tool_version"] = kVersion;
  j["wall_clock_seconds"] = seconds;
  j["threads"] = gwdict::thread_count();
  const std::string text = dump(j);
  if (s.out.empty())
    std::cerr << text;
  else
    write_text(s.out + ".run.json", text);
}

}  // namespace

int main(int argc, char** argv) {
  Settings s;
  CLI::App app{"Multiresolution graph wavelets, dictionaries and sparse approximation"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  auto common = [&](CLI::App* c) {
    c->add_option("--out", s.out, "Output path or prefix");
    c->add_option("--seed", s.seed, "Random seed");
  };
  auto with_graph = [&](CLI::App* c) {
    c->add_option("--graph", s.graph, "Edge-list file")->required();
    c->add_option("--metric", s.metric, "Hub distance: hops or inverse_weight");
    common(c);
  };

  auto* partition = app.add_subcommand("partition", "Bisect a connected graph; print both sides and the certificate");
  with_graph(partition);

  auto* wavelets = app.add_subcommand("wavelets", "Build the wavelet basis; write triplets and a tree description");
  with_graph(wavelets);

  auto* dict = app.add_subcommand("dict", "Build a pc or ps dictionary; write atoms and a manifest");
  dict->add_option("kind", s.kind, "pc or ps")->required()->check(CLI::IsMember({"pc", "ps"}));
  dict->add_option("--bandwidth", s.bandwidth, "Atoms per piece (ps)");
  dict->add_flag("--raw", s.raw, "Write unnormalized indicators (pc)");
  with_graph(dict);

  auto* approx = app.add_subcommand("approx", "Approximation error against coefficient budget");
  approx->add_option("--signal", s.signal, "Signal file")->required();
  approx->add_option("--dict", s.dict, "pc, ps, gft, delta or wavelet");
  approx->add_option("--bandwidth", s.bandwidth, "Atoms per piece (ps)");
  approx->add_option("--budgets", s.budgets, "Comma-separated budgets");
  approx->add_option("--strategy", s.strategy, "best, nla or omp");
  with_graph(approx);

  auto* localize = app.add_subcommand("localize", "Denoise one-piece signals; SNR per noise level");
  localize->add_option("--dict", s.dict, "pc, ps, gft, delta or wavelet");
  localize->add_option("--bandwidth", s.bandwidth, "Atoms per piece (ps)");
  localize->add_option("--sigma", s.sigma, "Comma-separated noise levels relative to the peak");
  localize->add_option("--trials", s.trials, "Trials per noise level");
  localize->add_option("--tol", s.tol, "Fixed relative residual instead of the discrepancy rule");
  localize->add_flag("--arbitrary-pieces", s.arbitrary, "Grow pieces by random BFS instead of the tree");
  with_graph(localize);

  auto* synth = app.add_subcommand("synth", "Generate graphs and signals");
  synth->require_subcommand(1);
  auto* synth_graph = synth->add_subcommand("graph", "Write a synthetic graph edge list");
  synth_graph->add_option("--family", s.family, "path, ring, grid, star, random_geometric, erdos_renyi")->required();
  synth_graph->add_option("--nodes", s.nodes, "Node count");
  synth_graph->add_option("--rows", s.rows, "Grid rows");
  synth_graph->add_option("--cols", s.cols, "Grid columns");
  synth_graph->add_option("--radius", s.radius, "Geometric connection radius");
  synth_graph->add_option("--probability", s.probability, "Erdos-Renyi edge probability");
  common(synth_graph);
  auto* synth_signal = synth->add_subcommand("signal", "Write a piecewise-constant or piecewise-bandlimited signal");
  synth_signal->add_option("--model", s.model, "pc or pbl");
  synth_signal->add_option("--pieces", s.pieces, "Number of pieces");
  synth_signal->add_option("--bandwidth", s.bandwidth, "Bandwidth (pbl)");
  synth_signal->add_option("--sigma", s.noise, "Gaussian noise standard deviation");
  synth_signal->add_flag("--distinct", s.distinct, "Pairwise distinct piece values (pc)");
  synth_signal->add_flag("--arbitrary-pieces", s.arbitrary, "Grow pieces by random BFS instead of the tree");
  with_graph(synth_signal);

  auto* eig = app.add_subcommand("eig", "Laplacian eigenpairs as CSV");
  with_graph(eig);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(gwdict::ExitCode::kInvalidInput);
  }

  const std::vector<std::string> args(argv + 1, argv + argc);
  const auto start = std::chrono::steady_clock::now();
  std::string command;
  try {
    std::vector<std::string> outputs;
    if (partition->parsed()) {
      command = "partition";
      outputs = cmd_partition(s);
    } else if (wavelets->parsed()) {
      command = "wavelets";
      outputs = cmd_wavelets(s);
    } else if (dict->parsed()) {
      command = "dict";
      outputs = cmd_dict(s);
    } else if (approx->parsed()) {
      command = "approx";
      outputs = cmd_approx(s);
    } else if (localize->parsed()) {
      command = "localize";
      outputs = cmd_localize(s);
    } else if (synth_graph->parsed()) {
      command = "synth graph";
      outputs = cmd_synth_graph(s);
    } else if (synth_signal->parsed()) {
      command = "synth signal";
      outputs = cmd_synth_signal(s);
    } else if (eig->parsed()) {
      command = "eig";
      outputs = cmd_eig(s);
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_manifest(command, s, outputs, args, seconds);
  } catch (const gwdict::Error& e) {
    std::cerr << "gwdict " << command << ": " << e.what() << '\n';
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    std::cerr << "gwdict " << command << ": internal error: " << e.what() << '\n';
    return static_cast<int>(gwdict::ExitCode::kInvariantViolation);
  }
  return 0;
}
