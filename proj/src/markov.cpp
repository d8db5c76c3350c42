#include "fbc/markov.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>

#include "fbc/errors.hpp"
#include "fbc/normal.hpp"
#include "rng.hpp"

namespace fbc {

namespace {

// Boolean reachability closure; irreducible iff every state reaches every
// other through edges with Q > 0.
bool irreducible(const DiscreteChannel& q) {
  const std::size_t d = q.input_size();
  std::vector<std::vector<char>> reach(d, std::vector<char>(d, 0));
  for (std::size_t i = 0; i < d; ++i) {
    reach[i][i] = 1;
    for (std::size_t j = 0; j < d; ++j)
      if (q(i, j) > 0.0) reach[i][j] = 1;
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t k = 0; k < d; ++k) {
        if (!reach[i][k]) continue;
        for (std::size_t j = 0; j < d; ++j)
          if (reach[k][j] && !reach[i][j]) {
            reach[i][j] = 1;
            changed = true;
          }
      }
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (!reach[i][j]) return false;
  return true;
}

// Stationary law by power iteration on the lazy kernel (I+Q)/2, which is
// aperiodic whenever Q is irreducible and shares Q's stationary vector.
// Aitken extrapolation accelerates the geometric tail.
ProbabilityVector solve_stationary(const DiscreteChannel& q) {
  const std::size_t d = q.input_size();
  std::vector<double> p(d, 1.0 / static_cast<double>(d)), next(d), prev(d), prev2(d);
  const int max_iter = 200000;
  for (int it = 0; it < max_iter; ++it) {
    for (std::size_t j = 0; j < d; ++j) {
      double s = 0.5 * p[j];
      for (std::size_t i = 0; i < d; ++i) s += 0.5 * p[i] * q(i, j);
      next[j] = s;
    }
    double norm = std::accumulate(next.begin(), next.end(), 0.0);
    for (double& v : next) v /= norm;
    double delta = 0.0;
    for (std::size_t j = 0; j < d; ++j) delta = std::max(delta, std::fabs(next[j] - p[j]));
    prev2 = prev;
    prev = p;
    p = next;
    if (it >= 2 && (it % 16) == 0) {
      // Aitken on each coordinate; only accept if it stays a distribution.
      std::vector<double> acc(d);
      bool ok = true;
      for (std::size_t j = 0; j < d; ++j) {
        double denom = p[j] - 2.0 * prev[j] + prev2[j];
        if (std::fabs(denom) > 1e-300) {
          double num = p[j] - prev[j];
          acc[j] = p[j] - num * num / denom;
        } else {
          acc[j] = p[j];
        }
        if (!(acc[j] >= 0.0) || !std::isfinite(acc[j])) ok = false;
      }
      if (ok) {
        double s = std::accumulate(acc.begin(), acc.end(), 0.0);
        if (s > 0.0) {
          for (double& v : acc) v /= s;
          p = acc;
        }
      }
    }
    if (delta < 1e-15 && it > 4) {
      // Polish: verify the residual of p Q = p directly.
      double resid = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < d; ++i) s += p[i] * q(i, j);
        resid = std::max(resid, std::fabs(s - p[j]));
      }
      if (resid < 1e-13) return ProbabilityVector(p);
    }
  }
  throw nonconvergence("stationary distribution iteration did not converge");
}

std::size_t sample_index(const double* row, std::size_t d, double u) {
  double acc = 0.0;
  for (std::size_t j = 0; j + 1 < d; ++j) {
    acc += row[j];
    if (u < acc) return j;
  }
  return d - 1;
}

}  // namespace

MarkovNoise::MarkovNoise(std::size_t d, std::vector<std::vector<double>> transition)
    : q_(d, d, std::move(transition)), stationary_(std::vector<double>(d, 1.0 / double(d))) {
  if (d == 0) throw validation_error("noise alphabet must be nonempty");
  if (!irreducible(q_)) throw validation_error("transition matrix must be irreducible");
  stationary_ = solve_stationary(q_);
}

double entropy_rate(const MarkovNoise& noise) {
  const std::size_t d = noise.dim();
  double h = 0.0;
  for (std::size_t x = 0; x < d; ++x) {
    double hx = 0.0;
    for (std::size_t y = 0; y < d; ++y) {
      double v = noise(x, y);
      if (v > 0.0) hx -= v * std::log(v);
    }
    h += noise.stationary()[x] * hx;
  }
  return h;
}

double markov_variance(const MarkovNoise& noise, int lag_cutoff) {
  if (lag_cutoff < 0) throw validation_error("lag cutoff must be nonnegative");
  const std::size_t d = noise.dim();
  const ProbabilityVector& pi = noise.stationary();
  const double h = entropy_rate(noise);

  // Centered step surprisal f(x,y) = -ln Q(y|x) - H on edges with Q > 0.
  // Lag-0 term: E_pi,Q f^2.
  double lag0 = 0.0;
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t y = 0; y < d; ++y) {
      double v = noise(x, y);
      if (v > 0.0) {
        double f = -std::log(v) - h;
        lag0 += pi[x] * v * f * f;
      }
    }

  // cov_j = E[f(X_0,X_1) f(X_j, X_{j+1})]
  //       = sum_{x,y} pi(x) Q(y|x) f(x,y) * (Q^{j-1} g)(y)
  // where g(u) = E[f(u, X') | X_0 = u] = H(Q_u) - H. Iterate g <- Q g.
  std::vector<double> g(d);
  for (std::size_t u = 0; u < d; ++u) {
    double hu = 0.0;
    for (std::size_t y = 0; y < d; ++y) {
      double v = noise(u, y);
      if (v > 0.0) hu -= v * std::log(v);
    }
    g[u] = hu - h;
  }
  double v_total = lag0;
  std::vector<double> gj = g, tmp(d);
  for (int j = 1; j <= lag_cutoff; ++j) {
    double cov = 0.0;
    for (std::size_t x = 0; x < d; ++x)
      for (std::size_t y = 0; y < d; ++y) {
        double v = noise(x, y);
        if (v > 0.0) cov += pi[x] * v * (-std::log(v) - h) * gj[y];
      }
    v_total += 2.0 * cov;
    if (j < lag_cutoff) {
      for (std::size_t x = 0; x < d; ++x) {
        double s = 0.0;
        for (std::size_t y = 0; y < d; ++y) s += noise(x, y) * gj[y];
        tmp[x] = s;
      }
      gj = tmp;
    }
  }
  return v_total;
}

double markov_capacity(const MarkovNoise& noise) {
  return std::log(static_cast<double>(noise.dim())) - entropy_rate(noise);
}

double markov_second_order(const MarkovNoise& noise, double eps, int lag_cutoff) {
  if (!(eps > 0.0 && eps < 1.0)) throw domain_error("eps must lie in (0,1)");
  double v = markov_variance(noise, lag_cutoff);
  if (v < 1e-14) {
    if (eps == 0.5) return 0.0;
    return eps > 0.5 ? std::numeric_limits<double>::infinity()
                     : -std::numeric_limits<double>::infinity();
  }
  return std::sqrt(v) * normal_quantile(eps);
}

MarkovMcEstimate markov_variance_mc(const MarkovNoise& noise, long long n, int replicas,
                                    std::uint64_t seed) {
  if (n < 1) throw validation_error("chain length must be positive");
  if (replicas < 2) throw validation_error("need at least two replicas");
  const std::size_t d = noise.dim();
  std::vector<double> row0(d);
  for (std::size_t j = 0; j < d; ++j) row0[j] = noise.stationary()[j];
  std::vector<double> rows(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) rows[i * d + j] = noise(i, j);

  std::vector<double> sums(static_cast<std::size_t>(replicas));
  for (int r = 0; r < replicas; ++r) {
    std::uint64_t eng = replica_stream(seed, static_cast<std::uint64_t>(r));
    std::size_t cur = sample_index(row0.data(), d, uniform01(eng));
    double total = -std::log(noise.stationary()[cur]);
    for (long long t = 1; t < n; ++t) {
      std::size_t nxt = sample_index(rows.data() + cur * d, d, uniform01(eng));
      total += -std::log(rows[cur * d + nxt]);
      cur = nxt;
    }
    sums[static_cast<std::size_t>(r)] = total;
  }
  double mean = std::accumulate(sums.begin(), sums.end(), 0.0) / replicas;
  double var = 0.0;
  for (double s : sums) var += (s - mean) * (s - mean);
  var /= (replicas - 1);
  MarkovMcEstimate out;
  out.estimate = var / static_cast<double>(n);
  // Var of a sample variance under normality: 2 sigma^4 / (m-1).
  out.std_error = out.estimate * std::sqrt(2.0 / (replicas - 1));
  out.replicas = replicas;
  out.n = n;
  return out;
}

double markov_gallager_psi(const MarkovNoise& noise, long long n, double s) {
  if (n < 1) throw validation_error("block length must be positive");
  if (!(s > -1.0)) throw domain_error("s must exceed -1");
  if (s == 0.0) return 0.0;
  const std::size_t d = noise.dim();
  const double alpha = 1.0 / (1.0 + s);
  // v_y = sum over length-n state paths ending at y of Q^n(path)^alpha, with
  // the uniform initial law. Accumulate in rescaled form: keep v normalized
  // to max 1 and track log of the scale to avoid under/overflow at large n.
  std::vector<std::vector<double>> m(d, std::vector<double>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m[i][j] = std::pow(noise(i, j), alpha);
  std::vector<double> v(d), next(d);
  const double u0 = std::pow(1.0 / static_cast<double>(d), alpha);
  for (std::size_t i = 0; i < d; ++i) v[i] = u0;
  double logscale = 0.0;
  for (long long t = 1; t < n; ++t) {
    for (std::size_t j = 0; j < d; ++j) {
      double acc = 0.0;
      for (std::size_t i = 0; i < d; ++i) acc += v[i] * m[i][j];
      next[j] = acc;
    }
    double mx = *std::max_element(next.begin(), next.end());
    if (!(mx > 0.0)) throw nonconvergence("powered transition product vanished");
    for (std::size_t j = 0; j < d; ++j) next[j] /= mx;
    logscale += std::log(mx);
    v.swap(next);
  }
  double total = std::accumulate(v.begin(), v.end(), 0.0);
  double log_sum = logscale + std::log(total);
  return -s * std::log(static_cast<double>(d)) +
         (1.0 + s) / static_cast<double>(n) * log_sum;
}

}  // namespace fbc
