#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "d2d/radio.hpp"
#include "d2d/scenario.hpp"

namespace d2d {

inline constexpr int kNone = -1;

/// Common output of every clustering algorithm.
///
/// `head_of[i]` is the head that serves device i over a short-range link,
/// `i` itself when i is a head (served over a long-range link), or kNone
/// when i is in outage. `ap_of_head[h]` is aligned with `heads`.
struct ClusterSolution {
  std::vector<int> head_of;
  std::vector<int> heads;
  std::vector<int> ap_of_head;

  std::size_t n_devices() const { return head_of.size(); }
  bool is_head(int i) const { return head_of[static_cast<std::size_t>(i)] == i; }

  /// Devices with no reception link, ascending.
  std::vector<int> outage() const;
  /// Short-range members served by head h, ascending (h excluded).
  std::vector<int> members_of(int h) const;
  /// Member count per device; zero for non-heads.
  std::vector<int> member_counts() const;
  /// AP serving head h, kNone if h is not a head or unassigned.
  int ap_of(int h) const;

  friend bool operator==(const ClusterSolution&, const ClusterSolution&) = default;
};

/// Builds a solution from a head mapping and head-to-AP association, then
/// drops every link that cannot carry traffic:
///   - heads without an AP, or whose long-range SNR is below threshold,
///     go to outage together with their members;
///   - members whose short-range SNR is below threshold go to outage.
ClusterSolution prune_to_link_budget(const Scenario& s, const RadioParams& radio,
                                     std::vector<int> head_of, const std::vector<int>& heads,
                                     const std::vector<int>& ap_of_head);

std::string solution_to_json(const ClusterSolution& sol);
/// Parses and checks structural consistency (sizes, index ranges, outage list).
ClusterSolution solution_from_json(std::string_view text);

void save_solution(const ClusterSolution& sol, const std::filesystem::path& path);
ClusterSolution load_solution(const std::filesystem::path& path);

}  // namespace d2d
