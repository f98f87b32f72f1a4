#include "d2d/kmeans.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "d2d/errors.hpp"
#include "d2d/rforce.hpp"

namespace d2d {

namespace {

std::vector<Centroid> as_centroids(const std::vector<Point>& pts) {
  std::vector<Centroid> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back(Centroid::at(p));
  return out;
}

double within_sse(const Association& a, const std::vector<Point>& centroids,
                  const std::vector<Point>& devices) {
  double sse = 0.0;
  for (std::size_t k = 0; k < a.members.size(); ++k) {
    for (int i : a.members[k]) sse += squared_distance(devices[static_cast<std::size_t>(i)], centroids[k]);
  }
  return sse;
}

std::vector<Point> cluster_means(const Association& a, const std::vector<Point>& previous,
                                 const std::vector<Point>& devices) {
  std::vector<Point> out = previous;
  for (std::size_t k = 0; k < a.members.size(); ++k) {
    if (a.members[k].empty()) continue;
    double sx = 0.0, sy = 0.0;
    for (int i : a.members[k]) {
      sx += devices[static_cast<std::size_t>(i)].x;
      sy += devices[static_cast<std::size_t>(i)].y;
    }
    const auto cnt = static_cast<double>(a.members[k].size());
    out[k] = {sx / cnt, sy / cnt};
  }
  return out;
}

}  // namespace

KMeansRun kmeans_detailed(const Scenario& s, const RadioParams& radio, const KMeansParams& params,
                          std::uint64_t seed) {
  if (params.k < 1) throw ConfigError("kmeans: k must be >= 1");
  const std::vector<Point> devices = s.device_positions();
  const std::size_t k = std::min(params.k, devices.size());

  // Forgy initialisation: partial Fisher-Yates over device indices.
  std::mt19937_64 rng(seed);
  std::vector<int> order(devices.size());
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, order.size() - 1);
    std::swap(order[i], order[pick(rng)]);
  }
  std::vector<Point> centroids(k);
  for (std::size_t i = 0; i < k; ++i) centroids[i] = devices[static_cast<std::size_t>(order[i])];

  auto assign = [&](const std::vector<Point>& cs) {
    auto tmp = as_centroids(cs);
    return associate_centroids(tmp, devices, params.delta_sr, params.execution);
  };

  KMeansRun run;
  Association current = assign(centroids);
  run.sse_history.push_back(within_sse(current, centroids, devices));

  for (std::size_t it = 0; it < params.max_iters; ++it) {
    run.iterations = it + 1;
    centroids = cluster_means(current, centroids, devices);
    const double sse_keep = within_sse(current, centroids, devices);
    Association next = assign(centroids);
    if (next.centroid_of == current.centroid_of) {
      run.sse_history.push_back(sse_keep);
      break;
    }
    const double sse_next = within_sse(next, centroids, devices);
    if (sse_next > sse_keep) {
      run.sse_history.push_back(sse_keep);
      break;
    }
    current = std::move(next);
    run.sse_history.push_back(sse_next);
  }

  std::vector<Centroid> final_centroids = as_centroids(centroids);
  HeadMapping mapping = phase2_map_centroids(final_centroids, devices, current);
  const auto ap_of_head = phase3_associate_aps(s, mapping.heads, params.delta_lr);
  run.solution = prune_to_link_budget(s, radio, std::move(mapping.head_of), mapping.heads, ap_of_head);
  run.centroids = std::move(centroids);
  return run;
}

ClusterSolution kmeans_cluster(const Scenario& s, const RadioParams& radio, std::size_t k,
                               int delta_sr, int delta_lr, std::uint64_t seed) {
  KMeansParams p;
  p.k = k;
  p.delta_sr = delta_sr;
  p.delta_lr = delta_lr;
  return kmeans_detailed(s, radio, p, seed).solution;
}

}  // namespace d2d
