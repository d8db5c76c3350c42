#include "fbc/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

#include "fbc/capacity.hpp"
#include "fbc/errors.hpp"
#include "fbc/normal.hpp"
#include "rng.hpp"

namespace fbc {

namespace {

constexpr double kEnumerationGuard = 1e7;
constexpr long long kMaxExactBlockLength = 14;

double pow_count(std::size_t base, long long n) {
  double c = 1.0;
  for (long long i = 0; i < n; ++i) {
    c *= static_cast<double>(base);
    if (c > 4.0 * kEnumerationGuard) return c;
  }
  return c;
}

std::size_t sample_index(const std::vector<double>& law, double u) {
  double acc = 0.0;
  for (std::size_t j = 0; j + 1 < law.size(); ++j) {
    acc += law[j];
    if (u < acc) return j;
  }
  return law.size() - 1;
}

// Odometer step over {0..base-1}^n, least-significant digit first.
bool advance_sequence(std::vector<std::size_t>& seq, std::size_t base) {
  for (std::size_t t = 0; t < seq.size(); ++t) {
    if (++seq[t] < base) return true;
    seq[t] = 0;
  }
  return false;
}

double log_sum_exp(const std::vector<double>& terms) {
  double mx = -std::numeric_limits<double>::infinity();
  for (double t : terms) mx = std::max(mx, t);
  if (!std::isfinite(mx)) return mx;
  double acc = 0.0;
  for (double t : terms) acc += std::exp(t - mx);
  return mx + std::log(acc);
}

}  // namespace

ProductReference::ProductReference(ProbabilityVector ref, long long n) : n_(n) {
  if (n < 1) throw validation_error("block length must be positive");
  log_ref_.resize(ref.size());
  for (std::size_t y = 0; y < ref.size(); ++y)
    log_ref_[y] = ref[y] > 0.0 ? std::log(ref[y]) : -std::numeric_limits<double>::infinity();
}

double ProductReference::log_density(const std::vector<std::size_t>& y) const {
  if (static_cast<long long>(y.size()) != n_)
    throw dimension_mismatch("sequence length does not match reference");
  double s = 0.0;
  for (std::size_t t : y) {
    if (t >= log_ref_.size()) throw domain_error("sequence letter out of range");
    s += log_ref_[t];
  }
  return s;
}

MixtureReference::MixtureReference(const DiscreteChannel& w, long long n) : n_(n) {
  if (n < 1) throw validation_error("block length must be positive");
  const std::size_t nx = w.input_size();
  // Count length-n types over the input alphabet before materializing them.
  double count = 1.0;
  for (std::size_t k = 1; k < nx; ++k)
    count *= static_cast<double>(n + k) / static_cast<double>(k);
  if (count > 1e6)
    throw type_enumeration_too_large("input type class count " + std::to_string(count) +
                                     " exceeds 1e6");

  // Enumerate compositions (k_0..k_{nx-1}) of n; each yields the product
  // component (W_P)^{x n} with P = k/n.
  std::vector<long long> comp(nx, 0);
  comp[0] = n;
  auto push_component = [&](const std::vector<long long>& k) {
    std::vector<double> p(nx);
    for (std::size_t x = 0; x < nx; ++x) p[x] = static_cast<double>(k[x]) / static_cast<double>(n);
    std::vector<double> q(w.output_size(), 0.0);
    for (std::size_t x = 0; x < nx; ++x)
      for (std::size_t y = 0; y < w.output_size(); ++y) q[y] += p[x] * w(x, y);
    std::vector<double> lq(w.output_size());
    for (std::size_t y = 0; y < w.output_size(); ++y)
      lq[y] = q[y] > 0.0 ? std::log(q[y]) : -std::numeric_limits<double>::infinity();
    log_rows_.push_back(std::move(lq));
  };
  while (true) {
    push_component(comp);
    // Next composition in colex order: move one unit from the first
    // positive slot to its successor, dumping the prefix back into slot 0.
    std::size_t i = 0;
    while (i < nx && comp[i] == 0) ++i;
    if (i + 1 >= nx) break;
    long long head = comp[i];
    comp[i] = 0;
    comp[0] = head - 1;
    ++comp[i + 1];
  }

  // Final component: capacity-achieving output law.
  CapacityReport rep = capacity(w, 1e-10);
  std::vector<double> lq(w.output_size());
  for (std::size_t y = 0; y < w.output_size(); ++y)
    lq[y] = rep.q_m[y] > 0.0 ? std::log(rep.q_m[y]) : -std::numeric_limits<double>::infinity();
  log_rows_.push_back(std::move(lq));
}

double MixtureReference::log_component(std::size_t k, const std::vector<std::size_t>& y) const {
  if (k >= log_rows_.size()) throw domain_error("component index out of range");
  if (static_cast<long long>(y.size()) != n_)
    throw dimension_mismatch("sequence length does not match reference");
  double s = 0.0;
  for (std::size_t t : y) {
    if (t >= log_rows_[k].size()) throw domain_error("sequence letter out of range");
    s += log_rows_[k][t];
  }
  return s;
}

double MixtureReference::log_density(const std::vector<std::size_t>& y) const {
  std::vector<double> terms(log_rows_.size());
  for (std::size_t k = 0; k < log_rows_.size(); ++k) terms[k] = log_component(k, y);
  return log_sum_exp(terms) - std::log(static_cast<double>(log_rows_.size()));
}

SpectrumSample sample_information_density(const DiscreteChannel& w, const ProbabilityVector& p,
                                          const ProbabilityVector& ref, long long n, int replicas,
                                          std::uint64_t seed, int workers,
                                          std::optional<double> center) {
  if (p.size() != w.input_size()) throw dimension_mismatch("input law does not match channel");
  if (ref.size() != w.output_size())
    throw dimension_mismatch("reference law does not match channel output");
  if (n < 1) throw validation_error("block length must be positive");
  if (replicas < 1) throw validation_error("replica count must be positive");
  if (workers < 1) throw validation_error("worker count must be positive");
  for (std::size_t x = 0; x < w.input_size(); ++x)
    for (std::size_t y = 0; y < w.output_size(); ++y)
      if (w(x, y) > 0.0 && ref[y] == 0.0)
        throw absolute_continuity_violation("channel row " + std::to_string(x) +
                                            " puts mass outside the reference support");

  const double c = center ? *center : mutual_information(w, p);
  const std::size_t nx = w.input_size(), ny = w.output_size();

  // Per-step contribution table, centered per letter so degenerate channels
  // accumulate exact zeros rather than rounded sums.
  std::vector<double> step(nx * ny, 0.0);
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y)
      if (w(x, y) > 0.0) step[x * ny + y] = std::log(w(x, y) / ref[y]) - c;

  std::vector<double> plaw(nx);
  for (std::size_t x = 0; x < nx; ++x) plaw[x] = p[x];
  std::vector<std::vector<double>> rows(nx, std::vector<double>(ny));
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y) rows[x][y] = w(x, y);

  SpectrumSample out;
  out.n = n;
  out.center = c;
  out.replicas = replicas;
  out.seed = seed;
  out.values.resize(static_cast<std::size_t>(replicas));

  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
  auto run_block = [&](int lo, int hi) {
    for (int r = lo; r < hi; ++r) {
      std::uint64_t eng = replica_stream(seed, static_cast<std::uint64_t>(r));
      double total = 0.0;
      for (long long t = 0; t < n; ++t) {
        std::size_t x = sample_index(plaw, uniform01(eng));
        std::size_t y = sample_index(rows[x], uniform01(eng));
        total += step[x * ny + y];
      }
      out.values[static_cast<std::size_t>(r)] = total * inv_sqrt_n;
    }
  };

  int nworkers = std::min(workers, replicas);
  if (nworkers == 1) {
    run_block(0, replicas);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nworkers));
    for (int wk = 0; wk < nworkers; ++wk) {
      int lo = static_cast<int>(static_cast<long long>(replicas) * wk / nworkers);
      int hi = static_cast<int>(static_cast<long long>(replicas) * (wk + 1) / nworkers);
      pool.emplace_back(run_block, lo, hi);
    }
    for (auto& th : pool) th.join();
  }
  return out;
}

double empirical_ip(const SpectrumSample& sample, double r2) {
  if (sample.values.empty()) throw validation_error("sample is empty");
  long long below = 0;
  for (double v : sample.values)
    if (v < r2) ++below;
  return static_cast<double>(below) / static_cast<double>(sample.values.size());
}

double ks_distance(const SpectrumSample& sample, double sigma) {
  if (sample.values.empty()) throw validation_error("sample is empty");
  if (!(sigma > 0.0)) throw domain_error("sigma must be positive");
  std::vector<double> v = sample.values;
  std::sort(v.begin(), v.end());
  const double m = static_cast<double>(v.size());
  double d = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    double f = normal_cdf(v[i] / sigma);
    d = std::max(d, std::fabs(static_cast<double>(i + 1) / m - f));
    d = std::max(d, std::fabs(f - static_cast<double>(i) / m));
  }
  return d;
}

double exact_tail(const DiscreteChannel& w, const ProbabilityVector& p,
                  const ProbabilityVector& ref, long long n, double r) {
  if (p.size() != w.input_size()) throw dimension_mismatch("input law does not match channel");
  if (ref.size() != w.output_size())
    throw dimension_mismatch("reference law does not match channel output");
  if (n < 1) throw validation_error("block length must be positive");
  if (n > kMaxExactBlockLength)
    throw enumeration_too_large("exact oracles support n <= 14");
  const std::size_t nx = w.input_size(), ny = w.output_size();
  if (pow_count(nx, n) * pow_count(ny, n) > kEnumerationGuard)
    throw enumeration_too_large("joint sequence space exceeds the enumeration guard");

  std::vector<double> logw(nx * ny), logref(ny);
  for (std::size_t y = 0; y < ny; ++y)
    logref[y] = ref[y] > 0.0 ? std::log(ref[y]) : -std::numeric_limits<double>::infinity();
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y)
      logw[x * ny + y] = w(x, y) > 0.0 ? std::log(w(x, y)) : 1.0;  // sentinel, masked below

  const double thresh = r * static_cast<double>(n);
  double tail = 0.0;
  std::vector<std::size_t> xs(static_cast<std::size_t>(n), 0);
  do {
    double px = 1.0;
    for (std::size_t t = 0; t < xs.size(); ++t) px *= p[xs[t]];
    if (px == 0.0) continue;
    std::vector<std::size_t> ysq(static_cast<std::size_t>(n), 0);
    do {
      double wprob = 1.0;
      double diff = 0.0;
      bool dead = false;
      for (std::size_t t = 0; t < ysq.size(); ++t) {
        double wv = w(xs[t], ysq[t]);
        if (wv == 0.0) {
          dead = true;
          break;
        }
        wprob *= wv;
        diff += logw[xs[t] * ny + ysq[t]] - logref[ysq[t]];
      }
      if (dead) continue;
      if (diff <= thresh) tail += px * wprob;
    } while (advance_sequence(ysq, ny));
  } while (advance_sequence(xs, nx));
  return tail;
}

RandomCodeTrial exact_random_code(const DiscreteChannel& w, const ProbabilityVector& p,
                                  long long n, long long codebook_size, double r,
                                  std::uint64_t seed) {
  if (p.size() != w.input_size()) throw dimension_mismatch("input law does not match channel");
  if (n < 1) throw validation_error("block length must be positive");
  if (n > kMaxExactBlockLength)
    throw enumeration_too_large("exact oracles support n <= 14");
  if (codebook_size < 1) throw validation_error("codebook must be nonempty");
  const std::size_t nx = w.input_size(), ny = w.output_size();
  if (pow_count(ny, n) > kEnumerationGuard)
    throw enumeration_too_large("output sequence space exceeds the enumeration guard");

  RandomCodeTrial trial;
  trial.n = n;
  trial.codebook_size = codebook_size;
  trial.threshold = r;
  trial.seed = seed;

  std::vector<double> plaw(nx);
  for (std::size_t x = 0; x < nx; ++x) plaw[x] = p[x];
  trial.codewords.resize(static_cast<std::size_t>(codebook_size));
  for (long long i = 0; i < codebook_size; ++i) {
    std::uint64_t eng = replica_stream(seed, static_cast<std::uint64_t>(i));
    auto& cw = trial.codewords[static_cast<std::size_t>(i)];
    cw.resize(static_cast<std::size_t>(n));
    for (long long t = 0; t < n; ++t) cw[static_cast<std::size_t>(t)] = sample_index(plaw, uniform01(eng));
  }

  std::vector<double> q(ny, 0.0);
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y) q[y] += p[x] * w(x, y);
  std::vector<double> logq(ny);
  for (std::size_t y = 0; y < ny; ++y)
    logq[y] = q[y] > 0.0 ? std::log(q[y]) : -std::numeric_limits<double>::infinity();

  // First-claim decoding: message i owns y iff its per-sequence log ratio
  // clears n*r and no j < i already claimed y. Correct mass accumulates as
  // sum over y of W^n(y | codeword of the claiming message). A codeword with
  // W^n(y) = 0 never claims; codewords live in supp(p), so the reference
  // cannot vanish where any codeword has mass.
  const double thresh = r * static_cast<double>(n);
  double correct = 0.0;
  std::vector<std::size_t> ysq(static_cast<std::size_t>(n), 0);
  do {
    double lq = 0.0;
    for (std::size_t t = 0; t < ysq.size(); ++t) lq += logq[ysq[t]];
    for (long long i = 0; i < codebook_size; ++i) {
      const auto& cw = trial.codewords[static_cast<std::size_t>(i)];
      double wprob = 1.0;
      double lw = 0.0;
      for (std::size_t t = 0; t < ysq.size(); ++t) {
        double wv = w(cw[t], ysq[t]);
        if (wv == 0.0) {
          wprob = 0.0;
          break;
        }
        wprob *= wv;
        lw += std::log(wv);
      }
      if (wprob == 0.0) continue;
      if (lw - lq > thresh) {
        correct += wprob / static_cast<double>(codebook_size);
        break;
      }
    }
  } while (advance_sequence(ysq, ny));
  trial.exact_error = 1.0 - correct;
  return trial;
}

std::pair<double, double> converse_bound_check(const DiscreteChannel& w,
                                               const RandomCodeTrial& trial,
                                               const SequenceDistribution& qref, double gamma) {
  const std::size_t ny = w.output_size();
  const long long n = trial.n;
  if (n < 1) throw validation_error("block length must be positive");
  if (n > kMaxExactBlockLength)
    throw enumeration_too_large("exact oracles support n <= 14");
  if (pow_count(ny, n) > kEnumerationGuard)
    throw enumeration_too_large("output sequence space exceeds the enumeration guard");
  if (trial.codewords.size() != static_cast<std::size_t>(trial.codebook_size))
    throw validation_error("trial does not carry its codebook");

  const double rate = std::log(static_cast<double>(trial.codebook_size)) / static_cast<double>(n);
  const double shifted = (rate - gamma) * static_cast<double>(n);

  double tail_avg = 0.0;
  for (const auto& cw : trial.codewords) {
    if (static_cast<long long>(cw.size()) != n)
      throw dimension_mismatch("codeword length does not match trial block length");
    double tail = 0.0;
    std::vector<std::size_t> ysq(static_cast<std::size_t>(n), 0);
    do {
      double wprob = 1.0, lw = 0.0;
      for (std::size_t t = 0; t < ysq.size(); ++t) {
        double wv = w(cw[t], ysq[t]);
        if (wv == 0.0) {
          wprob = 0.0;
          break;
        }
        wprob *= wv;
        lw += std::log(wv);
      }
      if (wprob == 0.0) continue;
      // Strict inequality; +inf log ratios (reference support gaps) never
      // land in the tail.
      double lq = qref.log_density(ysq);
      if (lw - lq < shifted) tail += wprob;
    } while (advance_sequence(ysq, ny));
    tail_avg += tail / static_cast<double>(trial.codebook_size);
  }
  double rhs = tail_avg - std::exp(shifted) / static_cast<double>(trial.codebook_size);
  return {trial.exact_error, rhs};
}

std::pair<double, double> converse_bound_check(const DiscreteChannel& w,
                                               const RandomCodeTrial& trial,
                                               const ProbabilityVector& qref, double gamma) {
  if (qref.size() != w.output_size())
    throw dimension_mismatch("reference law does not match channel output");
  ProductReference ref(qref, trial.n);
  return converse_bound_check(w, trial, static_cast<const SequenceDistribution&>(ref), gamma);
}

double max_discrimination(const ProbabilityVector& p, const ProbabilityVector& q, double a) {
  if (p.size() != q.size()) throw dimension_mismatch("distributions differ in length");
  if (!(a > 0.0)) throw domain_error("the scale must be positive");
  double best = 0.0;
  for (std::size_t u = 0; u < p.size(); ++u) {
    double d = p[u] - a * q[u];
    if (d >= 0.0) best += d;
  }
  return best;
}

std::vector<ChannelDraw> draw_channel_sequences(const DiscreteChannel& w,
                                                const ProbabilityVector& p, long long n,
                                                int replicas, std::uint64_t seed) {
  if (p.size() != w.input_size()) throw dimension_mismatch("input law does not match channel");
  if (n < 1) throw validation_error("block length must be positive");
  if (replicas < 1) throw validation_error("replica count must be positive");
  const std::size_t nx = w.input_size(), ny = w.output_size();
  std::vector<double> plaw(nx);
  for (std::size_t x = 0; x < nx; ++x) plaw[x] = p[x];
  std::vector<std::vector<double>> rows(nx, std::vector<double>(ny));
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y) rows[x][y] = w(x, y);
  std::vector<ChannelDraw> out(static_cast<std::size_t>(replicas));
  for (int r = 0; r < replicas; ++r) {
    std::uint64_t eng = replica_stream(seed, static_cast<std::uint64_t>(r));
    auto& d = out[static_cast<std::size_t>(r)];
    d.x.resize(static_cast<std::size_t>(n));
    d.y.resize(static_cast<std::size_t>(n));
    for (long long t = 0; t < n; ++t) {
      std::size_t x = sample_index(plaw, uniform01(eng));
      d.x[static_cast<std::size_t>(t)] = x;
      d.y[static_cast<std::size_t>(t)] = sample_index(rows[x], uniform01(eng));
    }
  }
  return out;
}

double sequence_information(const DiscreteChannel& w, const ChannelDraw& draw,
                            const SequenceDistribution& ref, double center) {
  if (draw.x.size() != draw.y.size()) throw dimension_mismatch("draw sequences differ in length");
  const long long n = static_cast<long long>(draw.x.size());
  if (n < 1) throw validation_error("draw is empty");
  double lw = 0.0;
  for (std::size_t t = 0; t < draw.x.size(); ++t) {
    double wv = w(draw.x[t], draw.y[t]);
    if (!(wv > 0.0)) throw absolute_continuity_violation("draw leaves the channel support");
    lw += std::log(wv);
  }
  return (lw - ref.log_density(draw.y) - static_cast<double>(n) * center) /
         std::sqrt(static_cast<double>(n));
}

}  // namespace fbc
