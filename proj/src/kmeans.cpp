#include "footprint/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "footprint/parallel.hpp"
#include "footprint/rng.hpp"

namespace footprint {

namespace {

double sq_dist(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t d = 0; d < a.size(); ++d) {
    double diff = a[d] - b[d];
    s += diff * diff;
  }
  return s;
}

struct LloydRun {
  std::vector<std::vector<double>> centers;
  std::vector<int> assignments;  // 0-based cluster index
  double inertia = 0.0;
  std::vector<double> trace;
};

std::vector<std::vector<double>> kmeanspp_init(const std::vector<std::vector<double>>& points,
                                               int k, Rng& rng) {
  std::vector<std::vector<double>> centers;
  centers.reserve(k);
  centers.push_back(points[rng.below(points.size())]);
  std::vector<double> d2(points.size());
  for (int c = 1; c < k; ++c) {
    double total = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      double best = std::numeric_limits<double>::max();
      for (const auto& ctr : centers) best = std::min(best, sq_dist(points[i], ctr));
      d2[i] = best;
      total += best;
    }
    std::size_t pick;
    if (total > 0.0) {
      double target = rng.uniform() * total;
      double acc = 0.0;
      pick = points.size() - 1;
      for (std::size_t i = 0; i < points.size(); ++i) {
        acc += d2[i];
        if (acc >= target) {
          pick = i;
          break;
        }
      }
    } else {
      pick = rng.below(points.size());
    }
    centers.push_back(points[pick]);
  }
  return centers;
}

LloydRun lloyd(const std::vector<std::vector<double>>& points, int k, Rng rng) {
  const std::size_t n = points.size();
  const std::size_t dim = points[0].size();
  LloydRun run;
  run.centers = kmeanspp_init(points, k, rng);
  run.assignments.assign(n, 0);

  double prev_inertia = std::numeric_limits<double>::max();
  for (int iter = 0; iter < 300; ++iter) {
    // assignment step (ties to the lowest cluster index)
    double inertia = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::max();
      int best_c = 0;
      for (int c = 0; c < k; ++c) {
        double d = sq_dist(points[i], run.centers[c]);
        if (d < best) {
          best = d;
          best_c = c;
        }
      }
      run.assignments[i] = best_c;
      inertia += best;
    }
    run.inertia = inertia;
    run.trace.push_back(inertia);
    if (prev_inertia < std::numeric_limits<double>::max()) {
      double denom = std::max(prev_inertia, 1e-300);
      if (std::abs(prev_inertia - inertia) / denom < 1e-6) break;
    }
    prev_inertia = inertia;

    // update step
    std::vector<std::vector<double>> sums(k, std::vector<double>(dim, 0.0));
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
      int c = run.assignments[i];
      ++counts[c];
      for (std::size_t d = 0; d < dim; ++d) sums[c][d] += points[i][d];
    }
    for (int c = 0; c < k; ++c) {
      if (counts[c] > 0) {
        for (std::size_t d = 0; d < dim; ++d)
          run.centers[c][d] = sums[c][d] / static_cast<double>(counts[c]);
      } else {
        // reseed an emptied cluster with the point farthest from its center
        double worst = -1.0;
        std::size_t worst_i = 0;
        for (std::size_t i = 0; i < n; ++i) {
          double d = sq_dist(points[i], run.centers[run.assignments[i]]);
          if (d > worst) {
            worst = d;
            worst_i = i;
          }
        }
        run.centers[c] = points[worst_i];
      }
    }
  }
  return run;
}

}  // namespace

ClusterModel kmeans(const std::vector<std::vector<double>>& points, int k, std::uint64_t seed,
                    int restarts, int jobs) {
  if (k < 1) throw ConfigError("kmeans: k must be >= 1");
  if (restarts < 1) throw ConfigError("kmeans: restarts must be >= 1");
  if (points.empty()) throw DataError("kmeans: no points");
  std::set<std::vector<double>> distinct(points.begin(), points.end());
  if (distinct.size() < static_cast<std::size_t>(k))
    throw DataError("kmeans: fewer distinct points than clusters");

  std::vector<LloydRun> runs(static_cast<std::size_t>(restarts));
  parallel_for(runs.size(), jobs,
               [&](std::size_t r) { runs[r] = lloyd(points, k, Rng::stream(seed, r)); });

  // best by (inertia, restart index)
  std::size_t best = 0;
  for (std::size_t r = 1; r < runs.size(); ++r)
    if (runs[r].inertia < runs[best].inertia) best = r;
  LloydRun& win = runs[best];

  // relabel 1..k by descending sum of center coordinates
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    double sa = std::accumulate(win.centers[a].begin(), win.centers[a].end(), 0.0);
    double sb = std::accumulate(win.centers[b].begin(), win.centers[b].end(), 0.0);
    if (sa != sb) return sa > sb;
    return a < b;
  });
  std::vector<int> relabel(k);  // old index -> 1-based group id
  for (int rank = 0; rank < k; ++rank) relabel[order[rank]] = rank + 1;

  ClusterModel model;
  model.k = k;
  model.seed = seed;
  model.restarts = restarts;
  model.best_restart = static_cast<int>(best);
  model.inertia = win.inertia;
  model.inertia_trace = std::move(win.trace);
  model.centers.resize(k);
  for (int c = 0; c < k; ++c) model.centers[relabel[c] - 1] = win.centers[c];
  model.assignments.resize(points.size());
  for (std::size_t i = 0; i < points.size(); ++i)
    model.assignments[i] = relabel[win.assignments[i]];
  return model;
}

std::vector<GroupProfileRow> group_profiles(const ClusterModel& model,
                                            const std::vector<std::vector<double>>& points) {
  if (model.assignments.size() != points.size())
    throw DataError("group_profiles: assignments do not cover all points");
  const std::size_t dim = points.empty() ? 0 : points[0].size();

  auto make_row = [&](int group) {
    GroupProfileRow row;
    row.group = group;
    row.mean.assign(dim, 0.0);
    row.sd.assign(dim, 0.0);
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (group != 0 && model.assignments[i] != group) continue;
      ++row.count;
      for (std::size_t d = 0; d < dim; ++d) row.mean[d] += points[i][d];
    }
    if (row.count > 0)
      for (auto& m : row.mean) m /= static_cast<double>(row.count);
    if (row.count > 1) {
      for (std::size_t i = 0; i < points.size(); ++i) {
        if (group != 0 && model.assignments[i] != group) continue;
        for (std::size_t d = 0; d < dim; ++d) {
          double diff = points[i][d] - row.mean[d];
          row.sd[d] += diff * diff;
        }
      }
      for (auto& s : row.sd) s = std::sqrt(s / static_cast<double>(row.count - 1));
    }
    return row;
  };

  std::vector<GroupProfileRow> rows;
  for (int g = 1; g <= model.k; ++g) rows.push_back(make_row(g));
  rows.push_back(make_row(0));  // Total
  return rows;
}

}  // namespace footprint
