#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "d2d/errors.hpp"
#include "d2d/metrics.hpp"
#include "d2d/objective.hpp"
#include "d2d/rforce.hpp"
#include "support.hpp"

using namespace d2d;

namespace {

std::vector<Centroid> centroids_at(const std::vector<Point>& pts) {
  std::vector<Centroid> cs;
  for (const auto& p : pts) cs.push_back(Centroid::at(p));
  return cs;
}

}  // namespace

TEST_CASE("association: single centroid takes everything under capacity") {
  auto cs = centroids_at({{50, 50}});
  const std::vector<Point> ds{{1, 1}, {2, 2}, {3, 3}};
  const auto a = associate_centroids(cs, ds, 10);
  CHECK(a.members[0] == std::vector<int>{0, 1, 2});
  CHECK(cs[0].degree == 3);
}

TEST_CASE("association: nearest centroid wins") {
  auto cs = centroids_at({{0, 0}, {10, 0}});
  const std::vector<Point> ds{{1, 0}};
  const auto a = associate_centroids(cs, ds, 10);
  CHECK(a.centroid_of[0] == 0);
}

TEST_CASE("association: capacity binds in index order") {
  auto cs = centroids_at({{0, 0}});
  const std::vector<Point> ds{{5, 0}, {1, 0}, {2, 0}};
  const auto a = associate_centroids(cs, ds, 2);
  CHECK(a.members[0] == std::vector<int>{0, 1});
  CHECK(a.centroid_of[2] == kNone);
}

TEST_CASE("association: full centroid spills to the next nearest") {
  auto cs = centroids_at({{0, 0}, {10, 0}});
  const std::vector<Point> ds{{1, 0}, {2, 0}, {3, 0}};
  for (auto ex : {Execution::Serial, Execution::Parallel}) {
    const auto a = associate_centroids(cs, ds, 2, ex);
    CHECK(a.centroid_of == std::vector<int>{0, 0, 1});
    CHECK(cs[0].degree == 2);
    CHECK(cs[1].degree == 1);
  }
}

TEST_CASE("phase 1: lone centroid settles on a symmetric cluster") {
  // Four equally reliable devices symmetric about (50,50), 0.1 m off centre.
  const std::vector<Point> ds{{49.9, 49.9}, {50.1, 49.9}, {49.9, 50.1}, {50.1, 50.1}};
  const std::vector<double> rel(4, 1.0);
  RForceParams p;
  p.k_centroids = 1;
  const double spread = std::hypot(0.1, 0.1);
  for (const Point start : {Point{10, 80}, Point{95, 3}, Point{50, 0}, Point{0, 50}}) {
    const auto r = phase1(ds, rel, centroids_at({start}), p);
    CHECK(distance(r.centroids[0].position(), {50, 50}) <= p.eta + spread);
  }
}

TEST_CASE("phase 1: zero reliability leaves pure repulsion") {
  const std::vector<Point> ds{{10, 10}, {20, 20}, {30, 30}};
  const std::vector<double> rel(3, 0.0);
  RForceParams p;
  p.k_centroids = 2;
  p.max_iters = 200;
  double last = 0.0;
  bool widening = true;
  auto obs = [&](const Phase1Step& st) {
    const double d = distance(st.centroids[0].position(), st.centroids[1].position());
    if (d <= last) widening = false;
    last = d;
  };
  const auto r = phase1(ds, rel, centroids_at({{40, 50}, {60, 50}}), p, obs);
  CHECK(widening);
  CHECK(r.iterations == p.max_iters);
  CHECK_FALSE(r.converged);
  CHECK(last == doctest::Approx(20.0 + 2 * 0.4 * 200));
}

TEST_CASE("phase 1: identical inputs give identical trajectories") {
  GenerateOptions g;
  g.n_devices = 120;
  g.seed = 3;
  const auto s = generate_scenario(g);
  RForceParams p;
  std::vector<std::vector<Point>> a, b;
  auto rec = [](std::vector<std::vector<Point>>& out) {
    return [&out](const Phase1Step& st) {
      std::vector<Point> snap;
      for (const auto& c : st.centroids) snap.push_back(c.position());
      out.push_back(snap);
    };
  };
  phase1(s, RadioParams{}, p, 17, rec(a));
  phase1(s, RadioParams{}, p, 17, rec(b));
  CHECK(a == b);
  CHECK_FALSE(a.empty());
}

TEST_CASE("phase 1: stability rule stops an orbiting centroid") {
  const std::vector<Point> ds{{50, 50}};
  const std::vector<double> rel{1.0};
  RForceParams p;
  p.k_centroids = 1;
  const auto r = phase1(ds, rel, centroids_at({{20, 50}}), p);
  CHECK(r.converged);
  CHECK(r.iterations < 200);
  CHECK(distance(r.centroids[0].position(), {50, 50}) <= p.eta);
}

TEST_CASE("phase 1: serial and parallel runs agree") {
  GenerateOptions g;
  g.n_devices = 300;
  g.seed = 8;
  const auto s = generate_scenario(g);
  RForceParams serial, parallel;
  parallel.execution = Execution::Parallel;
  const auto a = phase1(s, RadioParams{}, serial, 5);
  const auto b = phase1(s, RadioParams{}, parallel, 5);
  CHECK(a.iterations == b.iterations);
  CHECK(a.association.centroid_of == b.association.centroid_of);
  for (std::size_t k = 0; k < a.centroids.size(); ++k) CHECK(a.centroids[k].position() == b.centroids[k].position());
}

TEST_CASE("phase 2: centroid on top of a device claims it") {
  std::vector<Point> ds;
  for (int i = 0; i < 8; ++i) ds.push_back({10.0 * i, 5});
  auto cs = centroids_at({ds[5]});
  const auto a = associate_centroids(cs, ds, 10);
  const auto m = phase2_map_centroids(cs, ds, a);
  CHECK(m.heads == std::vector<int>{5});
  for (int i = 0; i < 8; ++i) CHECK(m.head_of[static_cast<std::size_t>(i)] == 5);
}

TEST_CASE("phase 2: sequential claiming") {
  const std::vector<Point> ds{{0, 0}, {-1, 0}, {10, 0}};
  auto cs = centroids_at({{0.4, 0}, {-0.3, 0}});
  const auto a = associate_centroids(cs, ds, 10);
  const auto m = phase2_map_centroids(cs, ds, a);
  // Both centroids are nearest device 0; the first claims it, the second falls back to device 1.
  CHECK(m.heads == std::vector<int>{0, 1});
  CHECK(m.head_of == std::vector<int>{0, 1, 0});
}

TEST_CASE("phase 2: one centroid per device makes every device a head") {
  const std::vector<Point> ds{{5, 5}, {20, 40}, {70, 10}, {90, 90}};
  auto cs = centroids_at(ds);
  const auto a = associate_centroids(cs, ds, 10);
  const auto m = phase2_map_centroids(cs, ds, a);
  CHECK(m.heads == std::vector<int>{0, 1, 2, 3});
  for (int i = 0; i < 4; ++i) CHECK(m.head_of[static_cast<std::size_t>(i)] == i);
}

TEST_CASE("phase 2: more centroids than devices skips the surplus") {
  const std::vector<Point> ds{{5, 5}};
  auto cs = centroids_at({{0, 0}, {9, 9}});
  const auto a = associate_centroids(cs, ds, 10);
  const auto m = phase2_map_centroids(cs, ds, a);
  CHECK(m.heads == std::vector<int>{0});
  CHECK(m.skipped_centroids == 1);
}

TEST_CASE("phase 3: single AP under capacity takes every head") {
  const auto s = testing::make_scenario({{10, 10}, {80, 20}, {40, 90}}, {{50, 50}});
  const std::vector<int> heads{0, 1, 2};
  CHECK(phase3_associate_aps(s, heads, 30) == std::vector<int>{0, 0, 0});
}

TEST_CASE("phase 3: strictly nearer AP wins") {
  const auto s = testing::make_scenario({{20, 50}}, {{25, 50}, {75, 50}});
  const std::vector<int> heads{0};
  CHECK(phase3_associate_aps(s, heads, 30) == std::vector<int>{0});
}

TEST_CASE("phase 3: capacity keeps the nearest heads") {
  const auto s = testing::make_scenario({{80, 50}, {60, 50}, {70, 50}}, {{50, 50}});
  const std::vector<int> heads{0, 1, 2};  // at 30, 10 and 20 m
  CHECK(phase3_associate_aps(s, heads, 2) == std::vector<int>{kNone, 0, 0});
}

TEST_CASE("phase 3: a full AP spills heads to the next AP") {
  const auto s = testing::make_scenario({{30, 50}, {32, 50}}, {{25, 50}, {75, 50}});
  const std::vector<int> heads{0, 1};
  CHECK(phase3_associate_aps(s, heads, 1) == std::vector<int>{0, 1});
}

TEST_CASE("outage rescue serves leftovers as lone heads under capacity") {
  const auto s = testing::make_scenario({{50, 50}, {60, 50}, {70, 50}}, {{50, 50}});
  ClusterSolution sol;
  sol.head_of = {0, kNone, kNone};
  sol.heads = {0};
  sol.ap_of_head = {0};
  ClusterSolution one = sol;
  CHECK(rescue_outage_devices(s, RadioParams{}, one, 2) == 1);
  CHECK(one.head_of == std::vector<int>{0, 1, kNone});
  CHECK(one.ap_of_head == std::vector<int>{0, 0});
  CHECK(rescue_outage_devices(s, RadioParams{}, sol, 30) == 2);
  CHECK(sol.outage().empty());
}

TEST_CASE("outage rescue skips devices out of long-range reach") {
  auto s = testing::make_scenario({{0, 0}, {1, 1}}, {{100, 100}});
  ClusterSolution sol;
  sol.head_of = {kNone, kNone};
  CHECK(rescue_outage_devices(s, RadioParams{}, sol, 30) == 0);
  CHECK(sol.heads.empty());
}

TEST_CASE("twelve devices, three clusters, reliable heads") {
  double head_rel = 0.0, all_rel = 0.0;
  std::size_t head_n = 0, all_n = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    GenerateOptions g;
    g.n_devices = 12;
    g.seed = seed;
    const auto s = generate_scenario(g);
    RForceParams p;
    p.k_centroids = 3;
    p.rescue_outage = false;
    const auto run = run_rforce_detailed(s, RadioParams{}, p, seed * 31);
    CHECK(run.solution.heads.size() <= 3);
    CHECK(run.k == 3);
    const auto rel = device_reliabilities(s, 0.3);
    for (int h : run.solution.heads) head_rel += rel[static_cast<std::size_t>(h)];
    head_n += run.solution.heads.size();
    all_rel += std::accumulate(rel.begin(), rel.end(), 0.0);
    all_n += rel.size();
  }
  REQUIRE(head_n > 0);
  CHECK(head_rel / static_cast<double>(head_n) >= all_rel / static_cast<double>(all_n));
}

TEST_CASE("single device network") {
  const auto s = testing::make_scenario({{30, 40}}, {{50, 50}});
  const auto sol = run_rforce(s, RadioParams{}, RForceParams{}, 1);
  CHECK(sol.heads == std::vector<int>{0});
  CHECK(sol.head_of == std::vector<int>{0});
  CHECK(sol.ap_of_head == std::vector<int>{0});
}

TEST_CASE("all devices unreliable: failure cost equals member count") {
  GenerateOptions g;
  g.n_devices = 80;
  g.battery_lo = 0.0;
  g.battery_hi = 0.3;
  g.seed = 4;
  const auto s = generate_scenario(g);
  const auto sol = run_rforce(s, RadioParams{}, RForceParams{}, 9);
  const auto rel = device_reliabilities(s, 0.3);
  int members = 0;
  for (int h : sol.heads) members += static_cast<int>(sol.members_of(h).size());
  CHECK(failure_cost(sol, rel).total == doctest::Approx(members));
  CHECK(members > 0);
}

TEST_CASE("default centroid count") {
  CHECK(default_centroid_count(200, 10) == 20);
  CHECK(default_centroid_count(201, 10) == 21);
  CHECK(default_centroid_count(1, 10) == 1);
  CHECK(default_centroid_count(0, 10) == 1);
}

TEST_CASE("K sweep keeps the lowest objective") {
  GenerateOptions g;
  g.n_devices = 100;
  g.seed = 12;
  const auto s = generate_scenario(g);
  const RadioParams radio;
  RForceParams p;
  const auto best = run_rforce_k_sweep(s, radio, p, 20.0, 6);
  const double best_obj = objective_value(best.solution, s, radio, 20.0);
  CHECK(best.k >= 8);
  CHECK(best.k <= 12);
  for (std::size_t k = 8; k <= 12; ++k) {
    p.k_centroids = k;
    const auto run = run_rforce_detailed(s, radio, p, 6);
    CHECK(best_obj <= objective_value(run.solution, s, radio, 20.0));
  }
}

TEST_CASE("invalid parameters are rejected") {
  RForceParams p;
  p.lambda = 0.0;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p = {};
  p.eta = 0.0;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p = {};
  p.max_iters = 0;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p = {};
  p.delta_sr = 0;
  CHECK_THROWS_AS(p.validate(), ConfigError);
}
