#include "fbc.h"

#include <cmath>
#include <cstring>
#include <new>
#include <optional>
#include <string>

#include "fbc/capacity.hpp"
#include "fbc/channel.hpp"
#include "fbc/dispersion.hpp"
#include "fbc/errors.hpp"
#include "fbc/example_family.hpp"
#include "fbc/gallager.hpp"
#include "fbc/gaussian.hpp"
#include "fbc/json_io.hpp"
#include "fbc/markov.hpp"
#include "fbc/normal.hpp"
#include "fbc/spectrum.hpp"

namespace {

thread_local std::string g_last_error;

int fail(int code, const char* what) {
  g_last_error = what;
  return code;
}

template <class F>
int guarded(F&& f) {
  try {
    f();
    return FBC_OK;
  } catch (const fbc::error& e) {
    return fail(static_cast<int>(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(FBC_ERR_NONCONVERGENCE, "out of memory");
  } catch (const std::exception& e) {
    return fail(FBC_ERR_NONCONVERGENCE, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

fbc::ProbabilityVector uniform_law(std::size_t n) {
  return fbc::ProbabilityVector(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

}  // namespace

struct fbc_channel {
  fbc::DiscreteChannel w;
  fbc::ProbabilityVector law;  // explicit input_law or uniform
};
struct fbc_cost {
  fbc::CostFunction c;
};
struct fbc_markov {
  fbc::MarkovNoise m;
};

extern "C" {

int fbc_channel_parse(const char* json_text, fbc_channel** out) {
  if (!json_text || !out) return fail(FBC_ERR_VALIDATION, "null argument");
  return guarded([&] {
    auto j = fbc::parse_json_text(json_text);
    fbc::DiscreteChannel w = fbc::channel_from_json(j);
    auto law = fbc::input_law_from_json(j);
    if (law && law->size() != w.input_size())
      throw fbc::dimension_mismatch("input law length does not match the channel");
    fbc::ProbabilityVector use = law ? *law : uniform_law(w.input_size());
    *out = new fbc_channel{std::move(w), std::move(use)};
  });
}

void fbc_channel_free(fbc_channel* c) { delete c; }

int fbc_cost_parse(const char* json_text, fbc_cost** out) {
  if (!json_text || !out) return fail(FBC_ERR_VALIDATION, "null argument");
  return guarded([&] {
    auto j = fbc::parse_json_text(json_text);
    *out = new fbc_cost{fbc::cost_from_json(j)};
  });
}

void fbc_cost_free(fbc_cost* c) { delete c; }

int fbc_markov_parse(const char* json_text, fbc_markov** out) {
  if (!json_text || !out) return fail(FBC_ERR_VALIDATION, "null argument");
  return guarded([&] {
    auto j = fbc::parse_json_text(json_text);
    *out = new fbc_markov{fbc::markov_from_json(j)};
  });
}

void fbc_markov_free(fbc_markov* m) { delete m; }

}  // extern "C"

namespace {

struct SolveOut {
  fbc::CapacityReport report;
  fbc::AchieverPolytope poly;
};

SolveOut solve_channel(const fbc_channel* ch, const fbc_cost* cost, double tol) {
  double t = tol > 0.0 ? tol : fbc::kDefaultSolverTol;
  SolveOut s;
  std::optional<fbc::CostFunction> c;
  if (cost) {
    c = cost->c;
    s.report = fbc::capacity_with_cost(ch->w, cost->c, t);
  } else {
    s.report = fbc::capacity(ch->w, t);
  }
  s.poly = fbc::achiever_polytope(ch->w, s.report, c);
  return s;
}

fbc::ordered_json law_json(const fbc::ProbabilityVector& p) {
  std::vector<double> v(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) v[i] = p[i];
  return fbc::ordered_json(v);
}

fbc::ordered_json capacity_json_obj(const fbc_channel* ch, const fbc_cost* cost, double tol) {
  SolveOut s = solve_channel(ch, cost, tol);
  fbc::ordered_json j;
  j["capacity"] = s.report.capacity;
  j["iterations"] = s.report.iterations;
  j["gap"] = s.report.gap;
  j["q_m"] = law_json(s.report.q_m);
  j["achiever"] = law_json(s.report.achiever);
  if (cost) {
    j["lambda"] = s.report.lambda;
    j["expected_cost"] = s.report.expected_cost;
    j["cost_cap"] = cost->c.cap();
    j["restricted_support"] = s.report.restricted_support;
  }
  return j;
}

fbc::ordered_json dispersion_json_obj(const fbc_channel* ch, const fbc_cost* cost, double tol) {
  SolveOut s = solve_channel(ch, cost, tol);
  fbc::DispersionReport d = fbc::dispersion_extremes(ch->w, s.poly);
  fbc::ordered_json j;
  j["capacity"] = s.report.capacity;
  j["v_plus"] = d.v_plus;
  j["v_minus"] = d.v_minus;
  j["p_plus"] = law_json(d.p_plus);
  j["p_minus"] = law_json(d.p_minus);
  return j;
}

// The rate answer uses V+ at eps >= 1/2 and V- below; the error answer
// uses V+ at a >= 0 and V- below. Degenerate V collapses G(a/sqrt V) to a
// step at 0.
fbc::ordered_json second_order_json_obj(const fbc_channel* ch, const fbc_cost* cost, double tol,
                                        bool use_eps, double eps_or_a) {
  SolveOut s = solve_channel(ch, cost, tol);
  fbc::DispersionReport d = fbc::dispersion_extremes(ch->w, s.poly);
  fbc::ordered_json j;
  j["capacity"] = s.report.capacity;
  j["v_plus"] = d.v_plus;
  j["v_minus"] = d.v_minus;
  if (use_eps) {
    double eps = eps_or_a;
    if (!(eps > 0.0 && eps < 1.0)) throw fbc::domain_error("eps must lie in (0,1)");
    bool plus = eps >= 0.5;
    double v = plus ? d.v_plus : d.v_minus;
    j["mode"] = "rate";
    j["eps"] = eps;
    j["selected"] = plus ? "v_plus" : "v_minus";
    j["value"] = std::sqrt(v) * fbc::normal_quantile(eps);
  } else {
    double a = eps_or_a;
    if (!std::isfinite(a)) throw fbc::domain_error("threshold must be finite");
    bool plus = a >= 0.0;
    double v = plus ? d.v_plus : d.v_minus;
    j["mode"] = "error";
    j["a"] = a;
    j["selected"] = plus ? "v_plus" : "v_minus";
    double value;
    if (v > 0.0)
      value = fbc::normal_cdf(a / std::sqrt(v));
    else
      value = a > 0.0 ? 1.0 : (a < 0.0 ? 0.0 : 0.5);
    j["value"] = value;
  }
  return j;
}

}  // namespace

extern "C" {

int fbc_capacity_json(const fbc_channel* ch, const fbc_cost* cost, double tol, char** out) {
  if (!ch || !out) return fail(FBC_ERR_VALIDATION, "null argument");
  return guarded([&] { *out = dup_string(capacity_json_obj(ch, cost, tol).dump(2) + "\n"); });
}

int fbc_dispersion_json(const fbc_channel* ch, const fbc_cost* cost, double tol, char** out) {
  if (!ch || !out) return fail(FBC_ERR_VALIDATION, "null argument");
  return guarded([&] { *out = dup_string(dispersion_json_obj(ch, cost, tol).dump(2) + "\n"); });
}

int fbc_second_order_json(const fbc_channel* ch, const fbc_cost* cost, double tol, int use_eps,
                          double eps_or_a, char** out) {
  if (!ch || !out) return fail(FBC_ERR_VALIDATION, "null argument");
  return guarded([&] {
    *out = dup_string(second_order_json_obj(ch, cost, tol, use_eps != 0, eps_or_a).dump(2) + "\n");
  });
}

int fbc_markov_report_json(const fbc_markov* m, double eps, int lag_cutoff, char** out) {
  if (!m || !out) return fail(FBC_ERR_VALIDATION, "null argument");
  return guarded([&] {
    fbc::ordered_json j;
    j["dim"] = m->m.dim();
    j["entropy_rate"] = fbc::entropy_rate(m->m);
    j["capacity"] = fbc::markov_capacity(m->m);
    j["lag_cutoff"] = lag_cutoff;
    j["variance"] = fbc::markov_variance(m->m, lag_cutoff);
    j["eps"] = eps;
    j["second_order"] = fbc::markov_second_order(m->m, eps, lag_cutoff);
    *out = dup_string(j.dump(2) + "\n");
  });
}

int fbc_gaussian_report_json(double noise, double signal, double eps, char** out) {
  if (!out) return fail(FBC_ERR_VALIDATION, "null argument");
  return guarded([&] {
    fbc::GaussianParams g(noise, signal);
    fbc::ordered_json j;
    j["noise"] = noise;
    j["signal"] = signal;
    j["capacity"] = fbc::gaussian_capacity(g);
    j["dispersion"] = fbc::gaussian_dispersion(g);
    j["eps"] = eps;
    j["second_order"] = fbc::gaussian_second_order(g, eps);
    *out = dup_string(j.dump(2) + "\n");
  });
}

int fbc_gallager_compare_csv(double v, double r2_min, double r2_max, int steps, char** out) {
  if (!out) return fail(FBC_ERR_VALIDATION, "null argument");
  return guarded([&] {
    fbc::GallagerCurve c = fbc::comparison_curve(v, r2_min, r2_max, steps);
    std::vector<std::vector<double>> rows(c.r2_grid.size());
    for (std::size_t i = 0; i < c.r2_grid.size(); ++i)
      rows[i] = {c.r2_grid[i], c.gaussian_value[i], c.gallager_bound[i]};
    *out = dup_string(fbc::csv_table({"r2", "gaussian", "gallager"}, rows));
  });
}

int fbc_gallager_limit_csv(const fbc_channel* ch, double r2, const long long* n_grid,
                           size_t n_count, char** out) {
  if (!ch || !out || (!n_grid && n_count > 0)) return fail(FBC_ERR_VALIDATION, "null argument");
  return guarded([&] {
    std::vector<long long> grid(n_grid, n_grid + n_count);
    auto pts = fbc::second_order_gallager_limit(ch->w, ch->law, r2, grid);
    std::vector<std::vector<double>> rows(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i)
      rows[i] = {static_cast<double>(pts[i].n), pts[i].scaled_min, pts[i].s_n,
                 pts[i].sqrt_n_s_n};
    *out = dup_string(fbc::csv_table({"n", "scaled_min", "s_n", "sqrt_n_s_n"}, rows));
  });
}

}  // extern "C"

namespace {

fbc::SpectrumSample run_simulation(const fbc_channel* ch, long long n, int replicas,
                                   uint64_t seed, int workers, int has_center, double center) {
  std::optional<double> c;
  if (has_center) c = center;
  fbc::ProbabilityVector ref = fbc::output_distribution(ch->w, ch->law);
  return fbc::sample_information_density(ch->w, ch->law, ref, n, replicas, seed, workers, c);
}

}  // namespace

extern "C" {

int fbc_simulate_csv(const fbc_channel* ch, long long n, int replicas, uint64_t seed, int workers,
                     int has_center, double center, char** out) {
  if (!ch || !out) return fail(FBC_ERR_VALIDATION, "null argument");
  return guarded([&] {
    fbc::SpectrumSample s = run_simulation(ch, n, replicas, seed, workers, has_center, center);
    std::vector<std::vector<double>> rows(s.values.size());
    for (std::size_t i = 0; i < s.values.size(); ++i)
      rows[i] = {static_cast<double>(i), s.values[i]};
    *out = dup_string(fbc::csv_table({"replica", "value"}, rows));
  });
}

int fbc_simulate_summary_json(const fbc_channel* ch, long long n, int replicas, uint64_t seed,
                              int workers, int has_center, double center, char** out) {
  if (!ch || !out) return fail(FBC_ERR_VALIDATION, "null argument");
  return guarded([&] {
    fbc::SpectrumSample s = run_simulation(ch, n, replicas, seed, workers, has_center, center);
    double v = fbc::unconditional_dispersion(ch->w, ch->law);
    fbc::ordered_json j;
    j["n"] = s.n;
    j["replicas"] = s.replicas;
    j["seed"] = s.seed;
    j["workers"] = workers;
    j["center"] = s.center;
    j["dispersion"] = v;
    if (v > 0.0)
      j["ks"] = fbc::ks_distance(s, std::sqrt(v));
    else
      j["ks"] = nullptr;
    *out = dup_string(j.dump(2) + "\n");
  });
}

int fbc_oracle_direct_json(const fbc_channel* ch, long long n, long long codebook_size,
                           double rate, uint64_t seed, char** out) {
  if (!ch || !out) return fail(FBC_ERR_VALIDATION, "null argument");
  return guarded([&] {
    fbc::RandomCodeTrial t = fbc::exact_random_code(ch->w, ch->law, n, codebook_size, rate, seed);
    fbc::ProbabilityVector ref = fbc::output_distribution(ch->w, ch->law);
    double tail = fbc::exact_tail(ch->w, ch->law, ref, n, rate);
    double penalty = 0.5 * static_cast<double>(codebook_size) *
                     std::exp(-static_cast<double>(n) * rate);
    fbc::ordered_json j;
    j["n"] = t.n;
    j["codebook_size"] = t.codebook_size;
    j["threshold"] = t.threshold;
    j["seed"] = t.seed;
    j["exact_error"] = t.exact_error;
    j["tail"] = tail;
    j["penalty"] = penalty;
    j["bound"] = tail + penalty;
    *out = dup_string(j.dump(2) + "\n");
  });
}

int fbc_oracle_converse_json(const fbc_channel* ch, long long n, long long codebook_size,
                             double gamma, uint64_t seed, int use_mixture, char** out) {
  if (!ch || !out) return fail(FBC_ERR_VALIDATION, "null argument");
  return guarded([&] {
    double rate = std::log(static_cast<double>(codebook_size)) / static_cast<double>(n);
    fbc::RandomCodeTrial t = fbc::exact_random_code(ch->w, ch->law, n, codebook_size, rate, seed);
    std::pair<double, double> sides;
    if (use_mixture) {
      fbc::MixtureReference ref(ch->w, n);
      sides = fbc::converse_bound_check(ch->w, t, ref, gamma);
    } else {
      sides = fbc::converse_bound_check(ch->w, t, uniform_law(ch->w.output_size()), gamma);
    }
    fbc::ordered_json j;
    j["n"] = t.n;
    j["codebook_size"] = t.codebook_size;
    j["gamma"] = gamma;
    j["seed"] = t.seed;
    j["reference"] = use_mixture ? "mixture" : "uniform";
    j["lhs"] = sides.first;
    j["rhs"] = sides.second;
    j["holds"] = sides.first >= sides.second;
    *out = dup_string(j.dump(2) + "\n");
  });
}

int fbc_example_json(double q1, double q2, char** out) {
  if (!out) return fail(FBC_ERR_VALIDATION, "null argument");
  return guarded([&] {
    fbc::ExampleInstance inst = fbc::build_example(q1, q2);
    std::vector<double> eq = fbc::verify_equidistance(inst);
    double vp = 0.0, vpp = 0.0;
    bool degenerate = inst.p1 == inst.p2;
    if (!degenerate) {
      auto ends = fbc::example_v_endpoints(inst);
      vp = ends.first;
      vpp = ends.second;
    }
    fbc::CapacityReport rep = fbc::capacity(inst.channel, 1e-10);
    fbc::ordered_json j;
    j["q1"] = inst.q1;
    j["q2"] = inst.q2;
    j["p1"] = inst.p1;
    j["p2"] = inst.p2;
    j["level"] = inst.level;
    j["equidistance"] = eq;
    j["capacity_solver"] = rep.capacity;
    j["v_p"] = vp;
    j["v_pprime"] = vpp;
    j["ordering"] = vp <= vpp ? "v_p<=v_pprime" : "v_p>v_pprime";
    j["w5"] = law_json(inst.w5);
    std::vector<std::vector<double>> m(4, std::vector<double>(4));
    for (std::size_t x = 0; x < 4; ++x)
      for (std::size_t y = 0; y < 4; ++y) m[x][y] = inst.channel(x, y);
    j["matrix"] = m;
    *out = dup_string(j.dump(2) + "\n");
  });
}

int fbc_example_sweep_csv(double q1_min, double q1_max, int steps, char** out) {
  if (!out) return fail(FBC_ERR_VALIDATION, "null argument");
  return guarded([&] {
    auto rows = fbc::example_sweep(q1_min, q1_max, steps);
    std::vector<std::vector<double>> data(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      data[i] = {rows[i].q1, rows[i].q2, rows[i].v_p, rows[i].v_pprime, rows[i].capacity};
    *out = dup_string(fbc::csv_table({"q1", "q2", "v_p", "v_pprime", "capacity"}, data));
  });
}

double fbc_normal_cdf(double x) { return fbc::normal_cdf(x); }

int fbc_normal_quantile(double p, double* out) {
  if (!out) return fail(FBC_ERR_VALIDATION, "null argument");
  return guarded([&] { *out = fbc::normal_quantile(p); });
}

const char* fbc_last_error(void) { return g_last_error.c_str(); }

void fbc_string_free(char* s) { delete[] s; }

}  // extern "C"
