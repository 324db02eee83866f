#include "footprint/moran.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "footprint/parallel.hpp"
#include "footprint/rng.hpp"

namespace footprint {

namespace {

struct Deviations {
  std::vector<double> z;
  double ss = 0.0;  // sum of z^2
};

Deviations deviations(std::span<const double> values) {
  Deviations d;
  double mean = std::accumulate(values.begin(), values.end(), 0.0) /
                static_cast<double>(values.size());
  d.z.reserve(values.size());
  for (double v : values) {
    double zi = v - mean;
    d.z.push_back(zi);
    d.ss += zi * zi;
  }
  return d;
}

double cross_product_sum(const SpatialWeights& W, const std::vector<double>& z) {
  double s = 0.0;
  for (std::size_t i = 0; i < W.n; ++i) {
    double lag = 0.0;
    for (const auto& [j, w] : W.rows[i]) lag += w * z[j];
    s += z[i] * lag;
  }
  return s;
}

double moran_i(const SpatialWeights& W, const std::vector<double>& z, double ss) {
  return (static_cast<double>(W.n) / W.s0) * cross_product_sum(W, z) / ss;
}

double normal_two_sided_p(double z) { return std::erfc(std::abs(z) / std::sqrt(2.0)); }

}  // namespace

const char* quadrant_name(Quadrant q) {
  switch (q) {
    case Quadrant::HH:
      return "HH";
    case Quadrant::LL:
      return "LL";
    case Quadrant::HL:
      return "HL";
    case Quadrant::LH:
      return "LH";
    case Quadrant::Isolated:
      return "isolated";
  }
  return "?";
}

MoranResult global_moran(std::span<const double> values, const SpatialWeights& W,
                         int permutations, std::uint64_t seed, int jobs) {
  if (values.size() != W.n) throw DataError("value vector does not match weights");
  if (W.s0 <= 0.0) throw NumericError("empty weights");
  auto dev = deviations(values);
  if (dev.ss == 0.0) throw NumericError("zero variance");

  const auto n = static_cast<double>(W.n);
  MoranResult r;
  r.permutations = permutations;
  r.seed = seed;
  r.I = moran_i(W, dev.z, dev.ss);
  r.expected = -1.0 / (n - 1.0);

  // Randomization-assumption variance (needs n >= 4).
  if (W.n >= 4) {
    double s1 = 0.0;
    std::vector<double> col_sum(W.n, 0.0), row_sum(W.n, 0.0);
    for (std::size_t i = 0; i < W.n; ++i) {
      for (const auto& [j, w] : W.rows[i]) {
        // w_ji found by symmetry only when not row-standardized; do it the
        // general way via transpose accumulation below.
        row_sum[i] += w;
        col_sum[j] += w;
      }
    }
    // S1 = 0.5 * sum (w_ij + w_ji)^2 over ordered pairs. Build transpose map
    // lookups via a second pass: store w_ji for each (i,j).
    std::vector<std::vector<std::pair<std::uint32_t, double>>> transpose(W.n);
    for (std::uint32_t i = 0; i < W.n; ++i)
      for (const auto& [j, w] : W.rows[i]) transpose[j].emplace_back(i, w);
    for (auto& row : transpose)
      std::sort(row.begin(), row.end());
    for (std::uint32_t i = 0; i < W.n; ++i) {
      std::size_t a = 0, b = 0;
      const auto& fwd = W.rows[i];
      const auto& rev = transpose[i];
      while (a < fwd.size() || b < rev.size()) {
        std::uint32_t ja = a < fwd.size() ? fwd[a].first : std::numeric_limits<std::uint32_t>::max();
        std::uint32_t jb = b < rev.size() ? rev[b].first : std::numeric_limits<std::uint32_t>::max();
        double pair_sum;
        if (ja == jb) {
          pair_sum = fwd[a].second + rev[b].second;
          ++a, ++b;
        } else if (ja < jb) {
          pair_sum = fwd[a].second;
          ++a;
        } else {
          pair_sum = rev[b].second;
          ++b;
        }
        s1 += 0.5 * pair_sum * pair_sum;
      }
    }
    double s2 = 0.0;
    for (std::size_t i = 0; i < W.n; ++i) {
      double t = row_sum[i] + col_sum[i];
      s2 += t * t;
    }
    double s0 = W.s0;
    double sum_z4 = 0.0;
    for (double zi : dev.z) sum_z4 += zi * zi * zi * zi;
    double b2 = n * sum_z4 / (dev.ss * dev.ss);
    double num = n * ((n * n - 3.0 * n + 3.0) * s1 - n * s2 + 3.0 * s0 * s0) -
                 b2 * ((n * n - n) * s1 - 2.0 * n * s2 + 6.0 * s0 * s0);
    double den = (n - 1.0) * (n - 2.0) * (n - 3.0) * s0 * s0;
    double var = num / den - r.expected * r.expected;
    if (var > 0.0) {
      r.z_score = (r.I - r.expected) / std::sqrt(var);
      r.p_value = normal_two_sided_p(r.z_score);
    } else {
      r.z_score = std::numeric_limits<double>::quiet_NaN();
      r.p_value = std::numeric_limits<double>::quiet_NaN();
    }
  } else {
    r.z_score = std::numeric_limits<double>::quiet_NaN();
    r.p_value = std::numeric_limits<double>::quiet_NaN();
  }

  if (permutations > 0) {
    std::vector<double> perm_i(static_cast<std::size_t>(permutations));
    parallel_for(perm_i.size(), jobs, [&](std::size_t p) {
      Rng rng = Rng::stream(seed, p);
      std::vector<double> zp = dev.z;
      rng.shuffle(zp);
      perm_i[p] = moran_i(W, zp, dev.ss);
    });
    double mean = std::accumulate(perm_i.begin(), perm_i.end(), 0.0) /
                  static_cast<double>(permutations);
    double ss = 0.0;
    long extreme = 0;
    bool upper = r.I >= r.expected;
    for (double v : perm_i) {
      ss += (v - mean) * (v - mean);
      if (upper ? v >= r.I : v <= r.I) ++extreme;
    }
    r.perm_mean = mean;
    r.perm_sd = permutations > 1 ? std::sqrt(ss / static_cast<double>(permutations - 1)) : 0.0;
    r.perm_p = static_cast<double>(extreme + 1) / static_cast<double>(permutations + 1);
  } else {
    r.perm_p = std::numeric_limits<double>::quiet_NaN();
  }
  return r;
}

LisaResult local_moran(std::span<const double> values, const SpatialWeights& W, int permutations,
                       double alpha, std::uint64_t seed, int jobs) {
  if (values.size() != W.n) throw DataError("value vector does not match weights");
  if (W.s0 <= 0.0) throw NumericError("empty weights");
  auto dev = deviations(values);
  if (dev.ss == 0.0) throw NumericError("zero variance");

  const auto n = W.n;
  const double m2 = dev.ss / static_cast<double>(n);

  LisaResult result;
  result.zones.resize(n);
  result.alpha = alpha;
  result.permutations = permutations;
  result.seed = seed;

  parallel_for(n, jobs, [&](std::size_t i) {
    LisaZone& zi = result.zones[i];
    if (W.isolated(i)) {
      zi = {0.0, Quadrant::Isolated, 1.0, false};
      return;
    }
    double lag = 0.0;
    for (const auto& [j, w] : W.rows[i]) lag += w * dev.z[j];
    zi.local_i = dev.z[i] / m2 * lag;
    bool hi = dev.z[i] > 0.0;
    bool lag_hi = lag > 0.0;
    zi.quadrant = hi ? (lag_hi ? Quadrant::HH : Quadrant::HL)
                     : (lag_hi ? Quadrant::LH : Quadrant::LL);

    if (permutations <= 0) {
      zi.pseudo_p = std::numeric_limits<double>::quiet_NaN();
      zi.significant = false;
      return;
    }

    // Conditional permutation: draw the k neighbor values from the other
    // n-1 deviations. Partial Fisher-Yates with swap-undo keeps each
    // permutation O(k) regardless of n; the per-zone stream makes results
    // independent of thread scheduling.
    const auto& row = W.rows[i];
    const std::size_t k = row.size();
    std::vector<double> pool;
    pool.reserve(n - 1);
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) pool.push_back(dev.z[j]);
    std::vector<std::size_t> idx(pool.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<std::pair<std::size_t, std::size_t>> swaps;
    swaps.reserve(k);

    Rng rng = Rng::stream(seed, i);
    long extreme = 0;
    const bool upper = zi.local_i >= 0.0;
    const double zi_over_m2 = dev.z[i] / m2;
    for (int p = 0; p < permutations; ++p) {
      swaps.clear();
      double perm_lag = 0.0;
      for (std::size_t t = 0; t < k; ++t) {
        std::size_t j = t + static_cast<std::size_t>(rng.below(pool.size() - t));
        if (j != t) {
          std::swap(idx[t], idx[j]);
          swaps.emplace_back(t, j);
        }
        perm_lag += row[t].second * pool[idx[t]];
      }
      double perm_i = zi_over_m2 * perm_lag;
      if (upper ? perm_i >= zi.local_i : perm_i <= zi.local_i) ++extreme;
      for (auto it = swaps.rbegin(); it != swaps.rend(); ++it) std::swap(idx[it->first], idx[it->second]);
    }
    zi.pseudo_p = static_cast<double>(extreme + 1) / static_cast<double>(permutations + 1);
    zi.significant = zi.pseudo_p <= alpha;
  });

  return result;
}

}  // namespace footprint
