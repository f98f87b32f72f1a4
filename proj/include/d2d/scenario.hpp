#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "d2d/geometry.hpp"

namespace d2d {

struct Device {
  int id = 0;
  double x = 0.0;
  double y = 0.0;
  double battery_frac = 1.0;  // E_i / E
  double rating = 1.0;        // historical cooperation rating

  Point position() const { return {x, y}; }
  friend bool operator==(const Device&, const Device&) = default;
};

struct AccessPoint {
  int id = 0;
  double x = 0.0;
  double y = 0.0;
  double tx_power = 10.0;  // watts

  Point position() const { return {x, y}; }
  friend bool operator==(const AccessPoint&, const AccessPoint&) = default;
};

/// Immutable snapshot of a deployment. Shared freely between concurrent runs.
struct Scenario {
  double area_width = 100.0;
  double area_height = 100.0;
  std::vector<Device> devices;
  std::vector<AccessPoint> aps;
  std::uint64_t seed = 0;  // 0 when hand-authored

  std::size_t n_devices() const { return devices.size(); }
  std::size_t n_aps() const { return aps.size(); }
  std::vector<Point> device_positions() const;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

struct GenerateOptions {
  std::size_t n_devices = 200;
  std::size_t n_aps = 1;
  double area_width = 100.0;
  double area_height = 100.0;
  double battery_lo = 0.1;
  double battery_hi = 0.9;
  double ap_tx_power = 10.0;
  std::uint64_t seed = 1;
};

/// Uniform device placement and uniform battery levels; ratings are 1.
/// APs sit on the cell centers of a near-square grid (a single AP at the
/// center of the area). Identical options give bit-identical scenarios.
Scenario generate_scenario(const GenerateOptions& options);

/// Cell-center grid with ceil(sqrt(m)) columns, filled row by row.
std::vector<AccessPoint> grid_ap_layout(std::size_t n_aps, double width, double height,
                                        double tx_power);

/// Throws ValidationError on the first broken invariant.
void validate(const Scenario& scenario);

std::string scenario_to_json(const Scenario& scenario);
Scenario scenario_from_json(std::string_view text);

void save_scenario(const Scenario& scenario, const std::filesystem::path& path);
Scenario load_scenario(const std::filesystem::path& path);

}  // namespace d2d
