// SPDX-License-Identifier: MIT
#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "ymx/action.hpp"
#include "ymx/channel.hpp"
#include "ymx/errors.hpp"
#include "ymx/lattice.hpp"
#include "ymx/master_loop.hpp"
#include "ymx/montecarlo.hpp"
#include "ymx/state_sum.hpp"
#include "ymx/surface.hpp"
#include "ymx/version.hpp"
#include "ymx/weingarten.hpp"

namespace ymx::cli {

namespace {

using json = nlohmann::ordered_json;

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json rational_json(const Rational& q) { return {{"value", num(to_double(q))}, {"exact", rational_string(q)}}; }

json complex_json(std::complex<double> z) { return {{"re", num(z.real())}, {"im", num(z.imag())}}; }

struct Config {
  std::string command;
  std::string lattice_file;
  int d = 2;
  std::string extents = "1,1";
  std::string tree = "bfs";
  std::string loops_file;
  std::string loops_inline;
  std::string action = "wilson";
  double coupling = 1.0;
  int N = 2;
  int box = -1;
  double floor = 1e-14;
  long samples = 1000000;
  std::uint64_t seed = 42;
  int threads = 1;
  bool metropolis = false;
  long thermalization = 1000;
  double step = 1.0;
  std::string output;
  // masterloop
  std::string mode = "coefficient";
  std::string edge;
  std::string alpha;
  int configs = 50;
  // surface, wg
  std::string spec_file;
  std::string words;
  std::string labels;
  bool coarse = false;
  int n = 2;
  std::string csv;
  // crosscheck, epe
  int kmax = 10;
  double tolerance = 1e-6;
};

json config_json(const Config& c) {
  json j;
  j["command"] = c.command;
  if (!c.lattice_file.empty()) {
    j["lattice"] = c.lattice_file;
  } else {
    j["d"] = c.d;
    j["extents"] = c.extents;
  }
  j["tree"] = c.tree;
  if (!c.loops_file.empty()) j["loops"] = c.loops_file;
  if (!c.loops_inline.empty()) j["loop"] = c.loops_inline;
  j["action"] = c.action;
  j["coupling"] = num(c.coupling);
  j["N"] = c.N;
  j["box"] = c.box;
  j["floor"] = num(c.floor);
  j["samples"] = c.samples;
  j["seed"] = c.seed;
  j["threads"] = c.threads;
  j["metropolis"] = c.metropolis;
  j["thermalization"] = c.thermalization;
  j["step"] = num(c.step);
  j["mode"] = c.mode;
  j["edge"] = c.edge;
  j["alpha"] = c.alpha;
  j["configs"] = c.configs;
  j["spec"] = c.spec_file;
  j["words"] = c.words;
  j["labels"] = c.labels;
  j["coarse"] = c.coarse;
  j["n"] = c.n;
  j["kmax"] = c.kmax;
  j["tolerance"] = num(c.tolerance);
  return j;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ValidationError("expected comma-separated integers, got '" + text + "'");
    }
  }
  return out;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

struct Problem {
  Lattice lattice;
  GaugeFixing gauge;
};

Problem load_lattice(const Config& c) {
  int d = c.d;
  std::vector<int> extents;
  std::string tree = c.tree;
  json explicit_tree;
  if (!c.lattice_file.empty()) {
    const json j = read_json_file(c.lattice_file);
    if (!j.contains("d") || !j.contains("extents")) throw ValidationError("lattice file needs 'd' and 'extents'");
    d = j.at("d").get<int>();
    extents = j.at("extents").get<std::vector<int>>();
    if (j.contains("tree")) {
      if (j["tree"].is_string()) {
        tree = j["tree"].get<std::string>();
      } else {
        explicit_tree = j["tree"];
      }
    }
  } else {
    extents = parse_int_list(c.extents);
  }
  Lattice lattice = build_lattice(d, extents);
  GaugeFixing gauge;
  if (!explicit_tree.is_null()) {
    gauge = make_gauge(lattice, explicit_tree.get<std::vector<int>>());
  } else if (tree == "bfs") {
    gauge = make_gauge(lattice, spanning_tree(lattice, 0, TreeStrategy::BreadthFirst));
  } else if (tree == "dfs") {
    gauge = make_gauge(lattice, spanning_tree(lattice, 0, TreeStrategy::DepthFirst));
  } else {
    throw ValidationError("tree must be bfs, dfs or an explicit edge list");
  }
  return {std::move(lattice), std::move(gauge)};
}

LoopWord parse_loop_text(const std::string& text) {
  LoopWord w;
  for (const auto& tok : split(text, ' ')) w.push_back(parse_traversal(tok));
  return w;
}

LoopWord parse_loop_json(const json& j, const Lattice& lattice) {
  if (j.is_string()) return parse_loop_text(j.get<std::string>());
  if (j.is_array()) {
    LoopWord w;
    for (const auto& t : j) w.push_back(parse_traversal(t.get<std::string>()));
    return w;
  }
  if (j.is_object() && j.contains("plaquette")) {
    const int p = j["plaquette"].get<int>();
    if (p < 0 || p >= lattice.num_plaquettes()) throw ValidationError("plaquette id out of range");
    const LoopWord& b = lattice.plaquette(p).boundary;
    return j.value("inverse", false) ? inverse_word(b) : b;
  }
  throw ValidationError("a loop is a traversal string, a traversal array, or {\"plaquette\": p}");
}

std::vector<LoopWord> load_loops(const Config& c, const Lattice& lattice) {
  std::vector<LoopWord> loops;
  if (!c.loops_file.empty()) {
    const json j = read_json_file(c.loops_file);
    const json& list = j.is_object() ? j.at("loops") : j;
    if (!list.is_array()) throw ValidationError("loops must be an array");
    for (const auto& l : list) loops.push_back(parse_loop_json(l, lattice));
  }
  for (const auto& text : split(c.loops_inline, ';')) loops.push_back(parse_loop_text(text));
  for (const auto& w : loops) lattice.check_loop(w);
  return loops;
}

json loops_json(const std::vector<LoopWord>& loops) {
  json a = json::array();
  for (const auto& w : loops) a.push_back(loop_string(w));
  return a;
}

ActionSpec make_action(const Config& c) {
  ActionSpec a;
  a.kind = parse_action_kind(c.action);
  a.coupling = c.coupling;
  if (!(c.coupling > 0)) throw ValidationError("coupling must be positive");
  return a;
}

void check_N(int N) {
  if (N < 1) throw ValidationError("N must be positive");
}

HighestWeight parse_weight(const std::string& text, int N) {
  const auto sig = parse_int_list(text);
  if (static_cast<int>(sig.size()) != N) throw ValidationError("signature '" + text + "' must have N entries");
  for (std::size_t i = 1; i < sig.size(); ++i)
    if (sig[i] > sig[i - 1]) throw ValidationError("signature '" + text + "' must be nonincreasing");
  return HighestWeight::from_signature(sig);
}

PlaquetteDecoration parse_decoration(const std::string& text, const Lattice& lattice, int N) {
  PlaquetteDecoration alpha(lattice.num_plaquettes(), HighestWeight::trivial(N));
  if (text.empty()) return alpha;
  const auto parts = split(text, ';');
  if (static_cast<int>(parts.size()) != lattice.num_plaquettes())
    throw ValidationError("alpha needs one signature per plaquette, separated by ';'");
  for (std::size_t p = 0; p < parts.size(); ++p) alpha[p] = parse_weight(parts[p], N);
  return alpha;
}

int parse_edge(const std::string& text, const Lattice& lattice) {
  std::string t = text;
  if (!t.empty() && (t[0] == '+' || t[0] == '-')) t = t.substr(1);
  if (t.size() < 2 || t[0] != 'e') throw ValidationError("edge must look like e7");
  const auto v = parse_int_list(t.substr(1));
  if (v.size() != 1 || v[0] < 0 || v[0] >= lattice.num_edges()) throw ValidationError("edge id out of range");
  return v[0];
}

McOptions mc_options(const Config& c) {
  McOptions o;
  o.threads = c.threads;
  o.metropolis = c.metropolis;
  o.thermalization = c.thermalization;
  o.step = c.step;
  return o;
}

json mc_json(const McEstimate& e) {
  return {{"value", complex_json(e.value)},
          {"stderr", num(e.stderr)},
          {"stderr_real", num(e.stderr_real)},
          {"stderr_imag", num(e.stderr_imag)},
          {"samples", e.samples},
          {"seed", e.seed},
          {"ess_fraction", num(e.ess_fraction)},
          {"tau_int", num(e.tau_int)}};
}

// Words use single-letter names; a letter followed by ^-1 (or uppercase) is inverted.
WordSpec parse_word_spec(const Config& c) {
  WordSpec spec;
  std::vector<std::string> word_texts;
  std::vector<std::string> label_texts;
  int N = c.N;
  if (!c.spec_file.empty()) {
    const json j = read_json_file(c.spec_file);
    N = j.value("N", N);
    for (const auto& w : j.at("words")) word_texts.push_back(w.get<std::string>());
    if (j.contains("labels")) {
      for (const auto& l : j["labels"]) {
        std::string s;
        for (std::size_t i = 0; i < l.size(); ++i) s += (i ? "," : "") + std::to_string(l[i].get<int>());
        label_texts.push_back(s);
      }
    }
  } else {
    word_texts = split(c.words, ';');
    label_texts = split(c.labels, ';');
  }
  check_N(N);
  if (word_texts.empty()) throw ValidationError("no words given");
  std::map<std::string, int> ids;
  for (const auto& text : word_texts) {
    Word w;
    for (const auto& tok : split(text, ' ')) {
      std::string name = tok;
      int exponent = 1;
      if (name.size() > 3 && name.substr(name.size() - 3) == "^-1") {
        name = name.substr(0, name.size() - 3);
        exponent = -1;
      }
      if (name.empty()) throw ValidationError("empty letter in word '" + text + "'");
      auto it = ids.find(name);
      if (it == ids.end()) it = ids.emplace(name, static_cast<int>(ids.size())).first;
      w.push_back({it->second, exponent});
    }
    spec.words.push_back(w);
  }
  if (label_texts.empty()) {
    spec.labels.assign(spec.words.size(), HighestWeight::fundamental(N));
  } else {
    if (label_texts.size() != spec.words.size()) throw ValidationError("one label per word is required");
    for (const auto& l : label_texts) spec.labels.push_back(parse_weight(l, N));
  }
  validate(spec);
  return spec;
}

json cmd_lattice_describe(const Config& c) {
  const auto [lattice, gauge] = load_lattice(c);
  json j;
  j["dimension"] = lattice.dimension();
  j["extents"] = lattice.extents();
  json vs = json::array();
  for (int v = 0; v < lattice.num_vertices(); ++v) vs.push_back({{"id", v}, {"coords", lattice.coords(v)}});
  j["vertices"] = vs;
  json es = json::array();
  for (int e = 0; e < lattice.num_edges(); ++e) {
    const auto& ed = lattice.edge(e);
    es.push_back({{"id", e},
                  {"name", "e" + std::to_string(e)},
                  {"tail", ed.tail},
                  {"head", ed.head},
                  {"axis", ed.axis},
                  {"tree", static_cast<bool>(gauge.in_tree[e])}});
  }
  j["edges"] = es;
  json ps = json::array();
  for (int p = 0; p < lattice.num_plaquettes(); ++p) {
    const auto& pl = lattice.plaquette(p);
    ps.push_back({{"id", p},
                  {"base", pl.base},
                  {"axes", {pl.axis_i, pl.axis_j}},
                  {"boundary", loop_string(pl.boundary)},
                  {"gauge_fixed", loop_string(gauge_fix_word(pl.boundary, gauge))}});
  }
  j["plaquettes"] = ps;
  j["tree"] = gauge.tree;
  j["non_tree"] = gauge.non_tree;
  return j;
}

json cmd_statesum(const Config& c) {
  check_N(c.N);
  const auto [lattice, gauge] = load_lattice(c);
  const auto loops = load_loops(c, lattice);
  const auto r = wilson_expectation_statesum(lattice, gauge, loops, make_action(c), c.N, Truncation{c.box, c.floor});
  return {{"loops", loops_json(loops)},
          {"value", num(r.value)},
          {"numerator", num(r.numerator)},
          {"denominator", num(r.denominator)},
          {"shell", num(r.shell)},
          {"box", r.box},
          {"decorations", r.decorations},
          {"balanced", r.balanced}};
}

json cmd_spinfoam(const Config& c) {
  check_N(c.N);
  const auto [lattice, gauge] = load_lattice(c);
  const auto loops = load_loops(c, lattice);
  json j;
  j["loops"] = loops_json(loops);
  if (!c.alpha.empty()) {
    const auto alpha = parse_decoration(c.alpha, lattice, c.N);
    const double sf = spin_foam_sum(lattice, gauge, loops, alpha);
    const auto top = topological_coeff(lattice, gauge, loops, alpha);
    j["spin_foam_sum"] = num(sf);
    j["topological_coeff"] = top.is_exact ? rational_json(top.exact) : json{{"value", num(top.value)}};
    j["difference"] = num(std::abs(sf - top.value));
    return j;
  }
  const auto r = defect_ratio(lattice, gauge, loops, make_action(c), c.N, Truncation{c.box, c.floor});
  j["value"] = num(r.value);
  j["z_loops"] = num(r.z_loops);
  j["z_background"] = num(r.z_background);
  j["shell"] = num(r.shell);
  j["defect_support"] = r.defect_support;
  j["decorations"] = r.decorations;
  j["balanced"] = r.balanced;
  return j;
}

json cmd_mc(const Config& c) {
  check_N(c.N);
  const auto [lattice, gauge] = load_lattice(c);
  const auto loops = load_loops(c, lattice);
  const auto e = mc_lattice_expectation(lattice, loops, make_action(c), c.N, c.samples, c.seed, mc_options(c));
  json j = mc_json(e);
  j["loops"] = loops_json(loops);
  return j;
}

json cmd_masterloop(const Config& c) {
  check_N(c.N);
  const auto [lattice, gauge] = load_lattice(c);
  const auto loops = load_loops(c, lattice);
  json j;
  j["loops"] = loops_json(loops);
  if (c.mode == "pointwise") {
    const int e = parse_edge(c.edge, lattice);
    double worst = 0.0;
    json rows = json::array();
    for (int k = 0; k < c.configs; ++k) {
      Rng rng(c.seed, static_cast<std::uint64_t>(k));
      Configuration U;
      for (int i = 0; i < lattice.num_edges(); ++i) U.push_back(haar_sample(c.N, rng));
      const auto r = loop_laplacian_pointwise(loops, e, U);
      worst = std::max(worst, r.difference);
      rows.push_back({{"direct", complex_json(r.direct)}, {"surgery", complex_json(r.surgery)}, {"difference", num(r.difference)}});
    }
    j["configurations"] = rows;
    j["max_difference"] = num(worst);
  } else if (c.mode == "coefficient") {
    const auto alpha = parse_decoration(c.alpha, lattice, c.N);
    std::vector<int> edges;
    if (c.edge.empty()) {
      for (int e = 0; e < lattice.num_edges(); ++e) edges.push_back(e);
    } else {
      edges.push_back(parse_edge(c.edge, lattice));
    }
    json per_edge = json::array();
    double worst = 0.0;
    for (int e : edges) {
      const auto r = master_equation_residual(lattice, gauge, loops, alpha, e);
      worst = std::max(worst, r.residual);
      json terms = json::array();
      for (const auto& t : r.terms) {
        json a = json::array();
        for (const auto& w : t.alpha) a.push_back(w.str());
        terms.push_back({{"kind", t.kind},
                         {"coefficient", rational_string(t.coefficient)},
                         {"family", loops_json(t.family)},
                         {"alpha", a},
                         {"value", t.value.is_exact ? rational_json(t.value.exact) : json{{"value", num(t.value.value)}}}});
      }
      json row{{"edge", "e" + std::to_string(e)}, {"residual", num(r.residual)}, {"is_exact", r.is_exact}, {"terms", terms}};
      if (r.is_exact) row["exact_residual"] = rational_string(r.exact);
      per_edge.push_back(row);
    }
    j["edges"] = per_edge;
    j["max_residual"] = num(worst);
  } else if (c.mode == "wilson") {
    const auto r = wilson_master_residual(lattice, loops, c.coupling, c.N, c.samples, c.seed, mc_options(c));
    j["residual"] = num(r.residual);
    j["stderr"] = num(r.stderr);
    j["sigma"] = num(r.stderr > 0 ? std::abs(r.residual) / r.stderr : 0.0);
    j["samples"] = r.samples;
    j["terms"] = r.terms;
  } else {
    throw ValidationError("mode must be pointwise, coefficient or wilson");
  }
  return j;
}

json cmd_surface(const Config& c) {
  const WordSpec spec = parse_word_spec(c);
  SurfaceExpansionOptions opts;
  opts.coarse = c.coarse;
  const auto r = surface_expansion(spec, opts);
  json classes = json::array();
  for (const auto& cls : r.classes) {
    classes.push_back({{"key", cls.key},
                       {"omega", rational_string(cls.omega)},
                       {"chi", cls.chi},
                       {"h", cls.h},
                       {"boundary", cls.boundary},
                       {"faces", {{"P", cls.faces_P}, {"G", cls.faces_G}, {"H", cls.faces_H}, {"C", cls.faces_C}}},
                       {"members", cls.members}});
  }
  json words = json::array();
  for (const auto& w : spec.words) words.push_back(word_string(w));
  return {{"words", words}, {"total", rational_json(r.total)}, {"terms", r.terms}, {"classes", classes}};
}

json cmd_wg(const Config& c) {
  check_N(c.N);
  if (c.n < 0 || c.n > 8) throw ValidationError("n must be in [0, 8]");
  const auto& table = wg_table(c.n, c.N);
  json rows = json::array();
  std::ofstream csv;
  if (!c.csv.empty()) {
    csv.open(c.csv);
    if (!csv) throw ValidationError("cannot write " + c.csv);
    csv << "cycle_type,wg,value\n";
  }
  for (const auto& [mu, v] : table.values()) {
    rows.push_back({{"cycle_type", mu.str()}, {"wg", rational_string(v)}, {"value", num(to_double(v))}});
    if (csv) csv << '"' << mu.str() << "\"," << rational_string(v) << ',' << num(to_double(v)) << '\n';
  }
  return {{"n", c.n}, {"N", c.N}, {"table", rows}};
}

struct CrossRow {
  std::string engine;
  double value = 0.0;
  double uncertainty = 0.0;  // truncation shell or standard error
  bool stochastic = false;
};

int cmd_crosscheck(const Config& c, json& j) {
  check_N(c.N);
  const auto [lattice, gauge] = load_lattice(c);
  const auto loops = load_loops(c, lattice);
  const ActionSpec action = make_action(c);
  const Truncation trunc{c.box, c.floor};
  std::vector<CrossRow> rows;
  const auto ss = wilson_expectation_statesum(lattice, gauge, loops, action, c.N, trunc);
  rows.push_back({"statesum", ss.value, ss.shell, false});
  const auto sf = defect_ratio(lattice, gauge, loops, action, c.N, trunc);
  rows.push_back({"spinfoam", sf.value, sf.shell, false});
  if (action.kind == ActionKind::Wilson) {
    EpeOptions eo;
    eo.kmax = c.kmax;
    const auto epe = epe_wilson_expectation(lattice, gauge, loops, c.coupling, c.N, eo);
    rows.push_back({"epe", epe.value, epe.shell, false});
  }
  McOptions mo = mc_options(c);
  if (action.kind == ActionKind::HeatKernel) mo.metropolis = true;
  const auto mc = mc_lattice_expectation(lattice, loops, action, c.N, c.samples, c.seed, mo);
  rows.push_back({"mc", mc.value.real(), mc.stderr_real, true});

  bool pass = true;
  json comparisons = json::array();
  const CrossRow& ref = rows.front();
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const CrossRow& r = rows[i];
    const double diff = std::abs(r.value - ref.value);
    const double tol = r.stochastic ? 3.0 * r.uncertainty + ref.uncertainty : c.tolerance + ref.uncertainty + r.uncertainty;
    const bool ok = diff <= tol;
    pass = pass && ok;
    comparisons.push_back({{"engines", ref.engine + " vs " + r.engine},
                           {"difference", num(diff)},
                           {"tolerance", num(tol)},
                           {"pass", ok}});
  }
  json table = json::array();
  for (const auto& r : rows)
    table.push_back({{"engine", r.engine}, {"value", num(r.value)}, {r.stochastic ? "stderr" : "shell", num(r.uncertainty)}});
  j["loops"] = loops_json(loops);
  j["engines"] = table;
  j["comparisons"] = comparisons;
  j["pass"] = pass;
  return pass ? kOk : kCrosscheckFailure;
}

void add_lattice_options(CLI::App* app, Config& c) {
  app->add_option("--lattice", c.lattice_file, "Lattice JSON file {\"d\":2,\"extents\":[1,1],\"tree\":\"bfs\"}");
  app->add_option("--d", c.d, "Dimension when no lattice file is given")->capture_default_str();
  app->add_option("--extents", c.extents, "Comma-separated extents when no lattice file is given")->capture_default_str();
  app->add_option("--tree", c.tree, "Spanning tree strategy: bfs or dfs")->capture_default_str();
}

void add_loop_options(CLI::App* app, Config& c) {
  app->add_option("--loops", c.loops_file, "Loops JSON file {\"loops\":[\"+e0 +e3 -e1 -e0\", {\"plaquette\":0}]}");
  app->add_option("--loop", c.loops_inline, "Inline loops, traversals separated by spaces, loops by ';'");
}

void add_action_options(CLI::App* app, Config& c) {
  app->add_option("--action", c.action, "wilson or heat")->capture_default_str();
  app->add_option("--beta,--t,--coupling", c.coupling, "Coupling: beta for Wilson, t for heat kernel")->capture_default_str();
}

void add_truncation_options(CLI::App* app, Config& c) {
  app->add_option("--box", c.box, "Label box |lambda+|+|lambda-| per plaquette (-1: 3 for N>=2, 20 for N=1)")
      ->capture_default_str();
  app->add_option("--floor", c.floor, "Relative weight floor for decorations")->capture_default_str();
}

void add_mc_options(CLI::App* app, Config& c) {
  app->add_option("--samples", c.samples, "Monte Carlo samples")->capture_default_str();
  app->add_option("--seed", c.seed, "Random seed")->capture_default_str();
  app->add_flag("--metropolis", c.metropolis, "Use the Metropolis updater instead of Haar reweighting");
  app->add_option("--thermalization", c.thermalization, "Metropolis thermalization sweeps")->capture_default_str();
  app->add_option("--step", c.step, "Metropolis proposal scale")->capture_default_str();
}

int default_threads() {
  if (const char* env = std::getenv("YMX_THREADS")) {
    const int t = std::atoi(env);
    if (t > 0) return t;
  }
  return 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  c.threads = default_threads();
  CLI::App app{"Exact and Monte Carlo engines for Wilson loop expectations in lattice gauge theory"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));
  app.add_option("--threads", c.threads, "Thread cap (default from YMX_THREADS)")->capture_default_str();
  app.add_option("--output,-o", c.output, "Also write the JSON result to this file");

  auto* statesum = app.add_subcommand("statesum", "Character-expansion state sum for E[W_L]");
  add_lattice_options(statesum, c);
  add_loop_options(statesum, c);
  add_action_options(statesum, c);
  add_truncation_options(statesum, c);
  statesum->add_option("--N", c.N, "Rank of U(N)")->capture_default_str();

  auto* spinfoam = app.add_subcommand("spinfoam", "Spin-foam defect ratio, or the amplitude sum for one decoration");
  add_lattice_options(spinfoam, c);
  add_loop_options(spinfoam, c);
  add_action_options(spinfoam, c);
  add_truncation_options(spinfoam, c);
  spinfoam->add_option("--N", c.N, "Rank of U(N)")->capture_default_str();
  spinfoam->add_option("--alpha", c.alpha, "Signatures per plaquette, e.g. '1,0;0,0'");

  auto* mc = app.add_subcommand("mc", "Monte Carlo estimate of E[W_L]");
  add_lattice_options(mc, c);
  add_loop_options(mc, c);
  add_action_options(mc, c);
  add_mc_options(mc, c);
  mc->add_option("--N", c.N, "Rank of U(N)")->capture_default_str();

  auto* master = app.add_subcommand("masterloop", "Master loop equation residuals");
  add_lattice_options(master, c);
  add_loop_options(master, c);
  add_mc_options(master, c);
  master->add_option("--mode", c.mode, "pointwise, coefficient or wilson")->capture_default_str();
  master->add_option("--edge", c.edge, "Active edge, e.g. e7 (coefficient mode: all edges when omitted)");
  master->add_option("--N", c.N, "Rank of U(N)")->capture_default_str();
  master->add_option("--beta", c.coupling, "Wilson coupling")->capture_default_str();
  master->add_option("--alpha", c.alpha, "Signatures per plaquette, e.g. '1,0;0,0' (default trivial)");
  master->add_option("--configs", c.configs, "Random configurations in pointwise mode")->capture_default_str();

  auto* surface = app.add_subcommand("surface", "Surface expansion of a word integral");
  surface->add_option("--spec", c.spec_file, "Word spec JSON {\"N\":2,\"words\":[\"x y x^-1 y^-1\"],\"labels\":[[1,0]]}");
  surface->add_option("--words", c.words, "Words separated by ';', letters by spaces, x^-1 for inverses");
  surface->add_option("--labels", c.labels, "Signatures per word separated by ';' (default fundamental)");
  surface->add_option("--N", c.N, "Rank of U(N)")->capture_default_str();
  surface->add_flag("--coarse", c.coarse, "Group classes by (chi, b, h) only");

  auto* wg = app.add_subcommand("wg", "Weingarten function table");
  wg->add_option("--n", c.n, "Number of letters")->capture_default_str();
  wg->add_option("--N", c.N, "Rank of U(N)")->capture_default_str();
  wg->add_option("--csv", c.csv, "Also write the table as CSV");

  auto* describe = app.add_subcommand("lattice-describe", "List vertices, edges and plaquettes");
  add_lattice_options(describe, c);

  auto* cross = app.add_subcommand("crosscheck", "Run all applicable engines on one problem and compare");
  add_lattice_options(cross, c);
  add_loop_options(cross, c);
  add_action_options(cross, c);
  add_truncation_options(cross, c);
  add_mc_options(cross, c);
  cross->add_option("--N", c.N, "Rank of U(N)")->capture_default_str();
  cross->add_option("--kmax", c.kmax, "Cutoff of the plaquette expansion")->capture_default_str();
  cross->add_option("--tolerance", c.tolerance, "Absolute tolerance between exact engines")->capture_default_str();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kValidation;
  }
  c.command = app.get_subcommands().front()->get_name();
  if (c.threads < 1) {
    err << "threads must be positive\n";
    return kValidation;
  }

  json result;
  int code = kOk;
  try {
    if (c.command == "statesum") {
      result = cmd_statesum(c);
    } else if (c.command == "spinfoam") {
      result = cmd_spinfoam(c);
    } else if (c.command == "mc") {
      result = cmd_mc(c);
    } else if (c.command == "masterloop") {
      result = cmd_masterloop(c);
    } else if (c.command == "surface") {
      result = cmd_surface(c);
    } else if (c.command == "wg") {
      result = cmd_wg(c);
    } else if (c.command == "lattice-describe") {
      result = cmd_lattice_describe(c);
    } else {
      code = cmd_crosscheck(c, result);
    }
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << '\n';
    return kValidation;
  } catch (const EngineRefusal& e) {
    err << "engine refusal: " << e.what() << '\n';
    return kRefusal;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }

  json doc;
  doc["version"] = kVersion;
  doc["config"] = config_json(c);
  doc["result"] = result;
  const std::string text = doc.dump(2);
  out << text << '\n';
  if (!c.output.empty()) {
    std::ofstream f(c.output);
    if (!f) {
      err << "cannot write " << c.output << '\n';
      return kValidation;
    }
    f << text << '\n';
  }
  return code;
}

}  // namespace ymx::cli
