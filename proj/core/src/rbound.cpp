#include "rittlab/rbound.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>

#include "rittlab/error.hpp"
#include "rittlab/linalg.hpp"

namespace rittlab {

namespace {

double norm_sq(std::span<const cplx> x, double p) {
  const double v = vector_norm(x, p);
  return v * v;
}

// Exact mean of ||sum eps_i x_i||^2 with eps_0 = +1, walking sign patterns in Gray-code order.
double exact_mean_sq(const std::vector<Vector>& xs, double p) {
  const std::size_t n = xs.size(), d = xs.front().size();
  Vector sum(d);
  for (const auto& x : xs)
    for (std::size_t k = 0; k < d; ++k) sum[k] += x[k];
  const std::uint64_t patterns = std::uint64_t{1} << (n - 1);
  double acc = norm_sq(sum, p);
  std::uint64_t gray = 0;
  for (std::uint64_t i = 1; i < patterns; ++i) {
    const std::uint64_t next = i ^ (i >> 1);
    const int bit = std::countr_zero(next ^ gray);  // flipped sign, among x_1..x_{n-1}
    const bool now_negative = (next >> bit) & 1U;
    const auto& x = xs[bit + 1];
    for (std::size_t k = 0; k < d; ++k) sum[k] += now_negative ? -2.0 * x[k] : 2.0 * x[k];
    gray = next;
    acc += norm_sq(sum, p);
  }
  return acc / static_cast<double>(patterns);
}

}  // namespace

RadNorm rademacher_norm(const RadSample& s) {
  if (s.vectors.empty()) throw Error(Errc::InvalidArgument, "empty Rademacher sample");
  const std::size_t d = s.vectors.front().size();
  for (const auto& x : s.vectors)
    if (x.size() != d) throw Error(Errc::InvalidArgument, "vectors differ in dimension");
  if (s.mode == RadMode::Exact) {
    if (s.vectors.size() > 20) throw Error(Errc::TooManyExact, "exact mode limited to 20 vectors",
                                           static_cast<double>(s.vectors.size()));
    return {std::sqrt(exact_mean_sq(s.vectors, s.p)), 0.0};
  }
  std::mt19937_64 rng(s.seed);
  std::bernoulli_distribution coin(0.5);
  double mean = 0.0, m2 = 0.0;
  Vector sum(d);
  for (int trial = 1; trial <= s.mc_trials; ++trial) {
    std::fill(sum.begin(), sum.end(), cplx{});
    for (const auto& x : s.vectors) {
      const double sg = coin(rng) ? 1.0 : -1.0;
      for (std::size_t k = 0; k < d; ++k) sum[k] += sg * x[k];
    }
    const double v = norm_sq(sum, s.p);
    const double delta = v - mean;
    mean += delta / trial;
    m2 += delta * (v - mean);
  }
  const double var = s.mc_trials > 1 ? m2 / (s.mc_trials - 1) : 0.0;
  const double se_mean = std::sqrt(var / s.mc_trials);
  const double value = std::sqrt(mean);
  return {value, value > 0.0 ? se_mean / (2.0 * value) : 0.0};
}

namespace {

double ratio(std::span<const Matrix> family, double p, const std::vector<std::size_t>& ops,
             const std::vector<Vector>& xs) {
  std::vector<Vector> txs;
  txs.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) txs.push_back(family[ops[i]].apply(xs[i]));
  const double den = exact_mean_sq(xs, p);
  if (!(den > 0.0)) return 0.0;
  return std::sqrt(exact_mean_sq(txs, p) / den);
}

}  // namespace

double evaluate_witness(std::span<const Matrix> family, double p, const RBoundEstimate& w) {
  return ratio(family, p, w.ops, w.vectors);
}

RBoundEstimate rbound_lower(std::span<const Matrix> family, double p, const SearchConfig& cfg) {
  if (family.empty()) throw Error(Errc::InvalidArgument, "empty family");
  const std::size_t d = family.front().dim();
  for (const auto& m : family)
    if (m.dim() != d) throw Error(Errc::InvalidArgument, "family members differ in dimension");

  RBoundEstimate best;
  best.seed = cfg.seed;
  best.family_size = family.size();

  // n = 1: operator norms, which also rank the candidates.
  std::vector<double> norms(family.size());
  std::vector<Vector> maximizers(family.size());
  for (std::size_t i = 0; i < family.size(); ++i) {
    const auto r = op_norm(family[i], p, {.restarts = 2, .seed = cfg.seed});
    norms[i] = r.value;
    maximizers[i] = r.maximizer;
  }
  std::vector<std::size_t> order(family.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return norms[a] > norms[b]; });
  {
    const std::size_t top = order.front();
    best.ops = {top};
    best.vectors = {maximizers[top]};
    best.value = ratio(family, p, best.ops, best.vectors);
  }

  const std::size_t ncand = std::min<std::size_t>(order.size(), static_cast<std::size_t>(cfg.candidate_ops));
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> pick(0, ncand - 1);
  const cplx dirs[4] = {1.0, -1.0, cplx(0, 1), cplx(0, -1)};

  for (int n = 2; n <= cfg.n_max; ++n) {
    for (int rs = 0; rs < cfg.restarts; ++rs) {
      std::vector<std::size_t> ops(n);
      std::vector<Vector> xs(n);
      for (int i = 0; i < n; ++i) {
        ops[i] = order[rs == 0 ? std::min<std::size_t>(i, ncand - 1) : pick(rng)];
        xs[i] = maximizers[ops[i]];
        for (auto& v : xs[i]) v += 0.1 * cplx(g(rng), g(rng));
      }
      double cur = ratio(family, p, ops, xs);
      double step = 0.5;
      for (int sweep = 0; sweep < cfg.ascent_sweeps && step > 1e-6; ++sweep) {
        bool improved = false;
        for (int i = 0; i < n; ++i)
          for (std::size_t k = 0; k < d; ++k)
            for (auto dir : dirs) {
              const cplx old = xs[i][k];
              xs[i][k] = old + step * dir;
              const double r = ratio(family, p, ops, xs);
              if (r > cur) {
                cur = r;
                improved = true;
              } else {
                xs[i][k] = old;
              }
            }
        if (!improved) step *= 0.5;
      }
      if (cur > best.value) {
        best.value = cur;
        best.ops = ops;
        best.vectors = xs;
      }
    }
  }
  // Report exactly what the witness evaluates to.
  best.value = evaluate_witness(family, p, best);
  return best;
}

std::vector<Matrix> ritt_family(const Matrix& t, const PeripheralSet& e, const SamplerConfig& grid) {
  std::vector<Matrix> fam;
  const Polynomial v = e.vanishing_polynomial();
  for (auto z : annulus_grid(e, grid)) {
    try {
      fam.push_back(resolvent_matrix(t, z) * v(z));
    } catch (const Error&) {
    }
  }
  return fam;
}

RBoundEstimate r_ritt_lower(const Matrix& t, const PeripheralSet& e, double p, const SamplerConfig& grid,
                            const SearchConfig& cfg) {
  const auto fd = is_ritt_e_fd(t, e);
  if (!fd.ritt) throw Error(Errc::NotRittE, fd.reason);
  const auto fam = ritt_family(t, e, grid);
  return rbound_lower(fam, p, cfg);
}

}  // namespace rittlab
