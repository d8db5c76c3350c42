// Command-line front end. Talks to the library exclusively through the C
// API in fbc.h; the vendor headers used here are header-only and do not
// touch library internals.
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fbc.h"

namespace {

using ordered_json = nlohmann::ordered_json;

int fail_with(int status) {
  std::fprintf(stderr, "error: %s\n", fbc_last_error());
  return status;
}

std::string read_file(const std::string& path, bool& ok) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    ok = false;
    return {};
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  ok = true;
  return ss.str();
}

struct ChannelHandle {
  fbc_channel* ptr = nullptr;
  ~ChannelHandle() { fbc_channel_free(ptr); }
};
struct CostHandle {
  fbc_cost* ptr = nullptr;
  ~CostHandle() { fbc_cost_free(ptr); }
};
struct MarkovHandle {
  fbc_markov* ptr = nullptr;
  ~MarkovHandle() { fbc_markov_free(ptr); }
};

int load_channel(const std::string& path, ChannelHandle& h) {
  bool ok = false;
  std::string text = read_file(path, ok);
  if (!ok) {
    std::fprintf(stderr, "error: cannot read %s\n", path.c_str());
    return FBC_ERR_VALIDATION;
  }
  int rc = fbc_channel_parse(text.c_str(), &h.ptr);
  if (rc != FBC_OK) return fail_with(rc);
  return FBC_OK;
}

int load_cost(const std::string& path, CostHandle& h) {
  bool ok = false;
  std::string text = read_file(path, ok);
  if (!ok) {
    std::fprintf(stderr, "error: cannot read %s\n", path.c_str());
    return FBC_ERR_VALIDATION;
  }
  int rc = fbc_cost_parse(text.c_str(), &h.ptr);
  if (rc != FBC_OK) return fail_with(rc);
  return FBC_OK;
}

void csv_escape_append(std::string& out, const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) {
    out += cell;
    return;
  }
  out += '"';
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
}

// JSON report -> key,value lines; nested values stay as compact JSON.
std::string json_to_kv_csv(const std::string& text) {
  ordered_json j = ordered_json::parse(text);
  std::string out = "key,value\n";
  for (auto it = j.begin(); it != j.end(); ++it) {
    out += it.key();
    out += ',';
    const auto& v = it.value();
    csv_escape_append(out, v.is_string() ? v.get<std::string>() : v.dump());
    out += '\n';
  }
  return out;
}

// CSV table -> {"columns": [...], "rows": [[...]]}.
std::string csv_to_json_table(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      lines.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) lines.push_back(cur);
  ordered_json j;
  ordered_json cols = ordered_json::array();
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::vector<std::string> cells;
    std::string cell;
    for (char c : lines[i]) {
      if (c == ',') {
        cells.push_back(cell);
        cell.clear();
      } else {
        cell += c;
      }
    }
    cells.push_back(cell);
    if (i == 0) {
      for (auto& s : cells) cols.push_back(s);
    } else {
      ordered_json row = ordered_json::array();
      for (auto& s : cells) row.push_back(std::strtod(s.c_str(), nullptr));
      rows.push_back(row);
    }
  }
  j["columns"] = cols;
  j["rows"] = rows;
  return j.dump(2) + "\n";
}

// format: "auto" keeps the producer's native shape.
int emit(char* produced, const std::string& format, bool native_json) {
  std::string text = produced;
  fbc_string_free(produced);
  if (format == "json" && !native_json)
    text = csv_to_json_table(text);
  else if (format == "csv" && native_json)
    text = json_to_kv_csv(text);
  std::fwrite(text.data(), 1, text.size(), stdout);
  return 0;
}

bool parse_center(const std::string& spec, int& has_center, double& center) {
  if (spec == "capacity") {
    has_center = 0;
    center = 0.0;
    return true;
  }
  char* end = nullptr;
  center = std::strtod(spec.c_str(), &end);
  if (end == spec.c_str() || *end != '\0') return false;
  has_center = 1;
  return true;
}

const char* kBsc011 = "{\"matrix\": [[0.89, 0.11], [0.11, 0.89]]}";

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-blocklength channel coding analysis"};
  app.require_subcommand(0, 1);

  std::string format = "auto";
  app.add_option("--format", format, "Output format: auto, json, or csv")
      ->check(CLI::IsMember({"auto", "json", "csv"}));
  std::string recipe;
  app.add_option("--recipe", recipe, "Preset dataset: fig-graph2, fig-graph1, gallager-limit, clt-check")
      ->check(CLI::IsMember({"fig-graph2", "fig-graph1", "gallager-limit", "clt-check"}));
  std::uint64_t seed = 0;
  bool seed_given = false;
  app.add_option("--seed", seed, "Random seed")->each([&](const std::string&) { seed_given = true; });
  double tol = 1e-10;
  app.add_option("--tol", tol, "Solver tolerance");

  // capacity
  auto* cap = app.add_subcommand("capacity", "Channel capacity with a certified bracket");
  std::string cap_channel, cap_cost;
  cap->add_option("--channel", cap_channel, "Channel JSON file")->required();
  cap->add_option("--cost", cap_cost, "Cost JSON file");

  // dispersion
  auto* disp = app.add_subcommand("dispersion", "Extremal dispersions over the capacity polytope");
  std::string disp_channel, disp_cost;
  disp->add_option("--channel", disp_channel, "Channel JSON file")->required();
  disp->add_option("--cost", disp_cost, "Cost JSON file");

  // second-order
  auto* so = app.add_subcommand("second-order", "Second-order rate or error value");
  std::string so_channel, so_cost;
  double so_eps = 0.0, so_a = 0.0;
  so->add_option("--channel", so_channel, "Channel JSON file")->required();
  so->add_option("--cost", so_cost, "Cost JSON file");
  auto* so_eps_opt = so->add_option("--eps", so_eps, "Target error in (0,1): rate answer");
  auto* so_a_opt = so->add_option("--a", so_a, "Second-order rate: error answer");
  so_eps_opt->excludes(so_a_opt);

  // markov
  auto* mk = app.add_subcommand("markov", "Additive Markov-noise channel report");
  std::string mk_noise;
  double mk_eps = 0.05;
  int mk_lag = 1;
  mk->add_option("--noise", mk_noise, "Noise transition JSON file")->required();
  mk->add_option("--eps", mk_eps, "Target error in (0,1)");
  mk->add_option("--lag-cutoff", mk_lag, "Covariance lags in the variance");

  // gaussian
  auto* ga = app.add_subcommand("gaussian", "Power-constrained Gaussian channel report");
  double ga_noise = 1.0, ga_signal = 1.0, ga_eps = 0.05;
  ga->add_option("--noise", ga_noise, "Noise power N > 0")->required();
  ga->add_option("--signal", ga_signal, "Signal power S > 0")->required();
  ga->add_option("--eps", ga_eps, "Target error in (0,1)");

  // gallager-compare
  auto* gc = app.add_subcommand("gallager-compare", "Gaussian vs exponential second-order error curves");
  double gc_v = 1.0, gc_min = -3.0, gc_max = 2.0;
  int gc_steps = 101;
  gc->add_option("--v", gc_v, "Dispersion (nats^2)")->required();
  gc->add_option("--r2-min", gc_min, "Grid start");
  gc->add_option("--r2-max", gc_max, "Grid end");
  gc->add_option("--steps", gc_steps, "Grid points");

  // gallager-limit
  auto* gl = app.add_subcommand("gallager-limit", "Scaled exponential-bound minimum along n");
  std::string gl_channel;
  double gl_r2 = -1.0;
  std::vector<long long> gl_grid = {100, 10000, 1000000};
  gl->add_option("--channel", gl_channel, "Channel JSON file")->required();
  gl->add_option("--r2", gl_r2, "Second-order rate (negative)");
  gl->add_option("--n-grid", gl_grid, "Block lengths")->delimiter(',');

  // simulate
  auto* sim = app.add_subcommand("simulate", "Information-density sampling");
  std::string sim_channel, sim_center = "capacity";
  long long sim_n = 10000;
  int sim_replicas = 10000, sim_workers = 1;
  sim->add_option("--channel", sim_channel, "Channel JSON file")->required();
  sim->add_option("--n", sim_n, "Block length");
  sim->add_option("--replicas", sim_replicas, "Replica count");
  sim->add_option("--workers", sim_workers, "Worker threads");
  sim->add_option("--center", sim_center, "Per-letter centering: 'capacity' or a number");

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Exact small-instance bound checks");
  oracle->require_subcommand(1);
  auto* od = oracle->add_subcommand("direct", "Random-code error vs tail-plus-penalty bound");
  std::string od_channel;
  long long od_n = 10, od_codebook = 4;
  double od_rate = 0.2;
  od->add_option("--channel", od_channel, "Channel JSON file")->required();
  od->add_option("--n", od_n, "Block length (<= 14)");
  od->add_option("--codebook", od_codebook, "Codebook size");
  od->add_option("--rate", od_rate, "Decoding threshold (nats per letter)");
  auto* oc = oracle->add_subcommand("converse", "Code error vs reference-tail lower bound");
  std::string oc_channel;
  long long oc_n = 8, oc_codebook = 8;
  double oc_gamma = 0.1;
  bool oc_mixture = false;
  oc->add_option("--channel", oc_channel, "Channel JSON file")->required();
  oc->add_option("--n", oc_n, "Block length (<= 14)");
  oc->add_option("--codebook", oc_codebook, "Codebook size");
  oc->add_option("--gamma", oc_gamma, "Rate slack");
  oc->add_flag("--mixture", oc_mixture, "Use the type-mixture reference");

  // example61
  auto* ex = app.add_subcommand("example61", "Four-input equidistant channel family");
  double ex_q1 = 0.3, ex_q2 = 0.2, ex_q1min = 0.05, ex_q1max = 0.45;
  int ex_steps = 41;
  bool ex_sweep = false;
  ex->add_option("--q1", ex_q1, "First parameter");
  ex->add_option("--q2", ex_q2, "Second parameter");
  ex->add_flag("--sweep", ex_sweep, "Emit the q2 = q1/2 family sweep");
  ex->add_option("--q1-min", ex_q1min, "Sweep start");
  ex->add_option("--q1-max", ex_q1max, "Sweep end");
  ex->add_option("--steps", ex_steps, "Sweep points");

  // let --format/--seed/--tol appear after the subcommand name
  for (CLI::App* s : app.get_subcommands([](const CLI::App*) { return true; })) {
    s->fallthrough();
    for (CLI::App* t : s->get_subcommands([](const CLI::App*) { return true; }))
      t->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : FBC_ERR_VALIDATION;
  }

  char* out = nullptr;
  int rc = FBC_OK;

  if (!recipe.empty()) {
    if (app.get_subcommands().size() > 0) {
      std::fprintf(stderr, "error: --recipe replaces the subcommand\n");
      return FBC_ERR_VALIDATION;
    }
    if (recipe == "fig-graph2") {
      // Curve at the binary symmetric channel's dispersion.
      ChannelHandle ch;
      rc = fbc_channel_parse(kBsc011, &ch.ptr);
      if (rc != FBC_OK) return fail_with(rc);
      char* dj = nullptr;
      rc = fbc_dispersion_json(ch.ptr, nullptr, tol, &dj);
      if (rc != FBC_OK) return fail_with(rc);
      double v = ordered_json::parse(std::string(dj)).at("v_minus").get<double>();
      fbc_string_free(dj);
      rc = fbc_gallager_compare_csv(v, -3.0, 2.0, 101, &out);
      if (rc != FBC_OK) return fail_with(rc);
      return emit(out, format, false);
    }
    if (recipe == "fig-graph1") {
      rc = fbc_example_sweep_csv(0.05, 0.45, 41, &out);
      if (rc != FBC_OK) return fail_with(rc);
      return emit(out, format, false);
    }
    if (recipe == "gallager-limit") {
      ChannelHandle ch;
      rc = fbc_channel_parse(kBsc011, &ch.ptr);
      if (rc != FBC_OK) return fail_with(rc);
      long long grid[3] = {100, 10000, 1000000};
      rc = fbc_gallager_limit_csv(ch.ptr, -1.0, grid, 3, &out);
      if (rc != FBC_OK) return fail_with(rc);
      return emit(out, format, false);
    }
    // clt-check
    ChannelHandle ch;
    rc = fbc_channel_parse(kBsc011, &ch.ptr);
    if (rc != FBC_OK) return fail_with(rc);
    std::uint64_t use_seed = seed_given ? seed : 42;
    rc = fbc_simulate_summary_json(ch.ptr, 10000, 10000, use_seed, 4, 0, 0.0, &out);
    if (rc != FBC_OK) return fail_with(rc);
    return emit(out, format, true);
  }

  if (cap->parsed()) {
    ChannelHandle ch;
    if (int s = load_channel(cap_channel, ch)) return s;
    CostHandle co;
    if (!cap_cost.empty())
      if (int s = load_cost(cap_cost, co)) return s;
    rc = fbc_capacity_json(ch.ptr, co.ptr, tol, &out);
    if (rc != FBC_OK) return fail_with(rc);
    return emit(out, format, true);
  }

  if (disp->parsed()) {
    ChannelHandle ch;
    if (int s = load_channel(disp_channel, ch)) return s;
    CostHandle co;
    if (!disp_cost.empty())
      if (int s = load_cost(disp_cost, co)) return s;
    rc = fbc_dispersion_json(ch.ptr, co.ptr, tol, &out);
    if (rc != FBC_OK) return fail_with(rc);
    return emit(out, format, true);
  }

  if (so->parsed()) {
    if (so_eps_opt->count() == 0 && so_a_opt->count() == 0) {
      std::fprintf(stderr, "error: second-order needs exactly one of --eps or --a\n");
      return FBC_ERR_VALIDATION;
    }
    ChannelHandle ch;
    if (int s = load_channel(so_channel, ch)) return s;
    CostHandle co;
    if (!so_cost.empty())
      if (int s = load_cost(so_cost, co)) return s;
    bool use_eps = so_eps_opt->count() > 0;
    rc = fbc_second_order_json(ch.ptr, co.ptr, tol, use_eps ? 1 : 0, use_eps ? so_eps : so_a,
                               &out);
    if (rc != FBC_OK) return fail_with(rc);
    return emit(out, format, true);
  }

  if (mk->parsed()) {
    bool ok = false;
    std::string text = read_file(mk_noise, ok);
    if (!ok) {
      std::fprintf(stderr, "error: cannot read %s\n", mk_noise.c_str());
      return FBC_ERR_VALIDATION;
    }
    MarkovHandle mh;
    rc = fbc_markov_parse(text.c_str(), &mh.ptr);
    if (rc != FBC_OK) return fail_with(rc);
    rc = fbc_markov_report_json(mh.ptr, mk_eps, mk_lag, &out);
    if (rc != FBC_OK) return fail_with(rc);
    return emit(out, format, true);
  }

  if (ga->parsed()) {
    rc = fbc_gaussian_report_json(ga_noise, ga_signal, ga_eps, &out);
    if (rc != FBC_OK) return fail_with(rc);
    return emit(out, format, true);
  }

  if (gc->parsed()) {
    rc = fbc_gallager_compare_csv(gc_v, gc_min, gc_max, gc_steps, &out);
    if (rc != FBC_OK) return fail_with(rc);
    return emit(out, format, false);
  }

  if (gl->parsed()) {
    ChannelHandle ch;
    if (int s = load_channel(gl_channel, ch)) return s;
    rc = fbc_gallager_limit_csv(ch.ptr, gl_r2, gl_grid.data(), gl_grid.size(), &out);
    if (rc != FBC_OK) return fail_with(rc);
    return emit(out, format, false);
  }

  if (sim->parsed()) {
    ChannelHandle ch;
    if (int s = load_channel(sim_channel, ch)) return s;
    int has_center = 0;
    double center = 0.0;
    if (!parse_center(sim_center, has_center, center)) {
      std::fprintf(stderr, "error: --center takes 'capacity' or a number\n");
      return FBC_ERR_VALIDATION;
    }
    if (format == "json") {
      rc = fbc_simulate_summary_json(ch.ptr, sim_n, sim_replicas, seed, sim_workers, has_center,
                                     center, &out);
      if (rc != FBC_OK) return fail_with(rc);
      return emit(out, "auto", true);
    }
    rc = fbc_simulate_csv(ch.ptr, sim_n, sim_replicas, seed, sim_workers, has_center, center,
                          &out);
    if (rc != FBC_OK) return fail_with(rc);
    return emit(out, "auto", false);
  }

  if (od->parsed()) {
    ChannelHandle ch;
    if (int s = load_channel(od_channel, ch)) return s;
    rc = fbc_oracle_direct_json(ch.ptr, od_n, od_codebook, od_rate, seed, &out);
    if (rc != FBC_OK) return fail_with(rc);
    return emit(out, format, true);
  }

  if (oc->parsed()) {
    ChannelHandle ch;
    if (int s = load_channel(oc_channel, ch)) return s;
    rc = fbc_oracle_converse_json(ch.ptr, oc_n, oc_codebook, oc_gamma, seed, oc_mixture ? 1 : 0,
                                  &out);
    if (rc != FBC_OK) return fail_with(rc);
    return emit(out, format, true);
  }

  if (ex->parsed()) {
    if (ex_sweep) {
      rc = fbc_example_sweep_csv(ex_q1min, ex_q1max, ex_steps, &out);
      if (rc != FBC_OK) return fail_with(rc);
      return emit(out, format, false);
    }
    rc = fbc_example_json(ex_q1, ex_q2, &out);
    if (rc != FBC_OK) return fail_with(rc);
    return emit(out, format, true);
  }

  std::fprintf(stderr, "%s\n", app.help().c_str());
  return FBC_ERR_VALIDATION;
}
