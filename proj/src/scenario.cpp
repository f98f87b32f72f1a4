#include "d2d/scenario.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "d2d/errors.hpp"
#include "d2d/json_util.hpp"

namespace d2d {

using json_util::json;

std::vector<Point> Scenario::device_positions() const {
  std::vector<Point> out;
  out.reserve(devices.size());
  for (const auto& d : devices) out.push_back(d.position());
  return out;
}

std::vector<AccessPoint> grid_ap_layout(std::size_t n_aps, double width, double height,
                                        double tx_power) {
  std::vector<AccessPoint> aps;
  if (n_aps == 0) return aps;
  const auto cols = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n_aps))));
  const std::size_t rows = (n_aps + cols - 1) / cols;
  const double cell_w = width / static_cast<double>(cols);
  const double cell_h = height / static_cast<double>(rows);
  aps.reserve(n_aps);
  for (std::size_t m = 0; m < n_aps; ++m) {
    const std::size_t r = m / cols;
    const std::size_t c = m % cols;
    aps.push_back({static_cast<int>(m), (static_cast<double>(c) + 0.5) * cell_w,
                   (static_cast<double>(r) + 0.5) * cell_h, tx_power});
  }
  return aps;
}

Scenario generate_scenario(const GenerateOptions& o) {
  if (!(o.area_width > 0.0) || !(o.area_height > 0.0)) {
    throw ConfigError("scenario area must have positive width and height");
  }
  if (o.n_devices < 1) throw ConfigError("at least one device is required");
  if (o.n_aps < 1) throw ConfigError("at least one access point is required");
  if (!(0.0 <= o.battery_lo && o.battery_lo <= o.battery_hi && o.battery_hi <= 1.0)) {
    throw ConfigError("battery range must satisfy 0 <= lo <= hi <= 1");
  }
  if (!(o.ap_tx_power > 0.0)) throw ConfigError("AP transmit power must be positive");

  std::mt19937_64 rng(o.seed);
  std::uniform_real_distribution<double> ux(0.0, o.area_width);
  std::uniform_real_distribution<double> uy(0.0, o.area_height);
  std::uniform_real_distribution<double> ub(o.battery_lo, o.battery_hi);

  Scenario s;
  s.area_width = o.area_width;
  s.area_height = o.area_height;
  s.seed = o.seed;
  s.devices.reserve(o.n_devices);
  for (std::size_t i = 0; i < o.n_devices; ++i) {
    Device d;
    d.id = static_cast<int>(i);
    d.x = ux(rng);
    d.y = uy(rng);
    // A degenerate range must reproduce the bound exactly.
    d.battery_frac = o.battery_lo == o.battery_hi ? o.battery_lo : ub(rng);
    d.rating = 1.0;
    s.devices.push_back(d);
  }
  s.aps = grid_ap_layout(o.n_aps, o.area_width, o.area_height, o.ap_tx_power);
  return s;
}

namespace {

bool in_unit(double v) { return v >= 0.0 && v <= 1.0; }

template <typename T>
void check_ids(const std::vector<T>& items, const char* what) {
  std::vector<bool> seen(items.size(), false);
  for (std::size_t i = 0; i < items.size(); ++i) {
    const int id = items[i].id;
    if (id >= 0 && static_cast<std::size_t>(id) < items.size()) {
      if (seen[static_cast<std::size_t>(id)]) {
        throw ValidationError(std::string("duplicate ") + what + " id " + std::to_string(id));
      }
      seen[static_cast<std::size_t>(id)] = true;
    }
  }
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (items[i].id != static_cast<int>(i)) {
      throw ValidationError(std::string(what) + " ids must be listed as 0.." +
                            std::to_string(items.size() - 1) + " in order; found " +
                            std::to_string(items[i].id) + " at position " + std::to_string(i));
    }
  }
}

}  // namespace

void validate(const Scenario& s) {
  if (!(s.area_width > 0.0) || !(s.area_height > 0.0)) {
    throw ValidationError("area must have positive width and height");
  }
  if (s.devices.empty()) throw ValidationError("scenario has no devices");
  if (s.aps.empty()) throw ValidationError("scenario has no access points");
  check_ids(s.devices, "device");
  check_ids(s.aps, "access point");

  auto inside = [&](double x, double y) {
    return x >= 0.0 && x <= s.area_width && y >= 0.0 && y <= s.area_height;
  };
  for (const auto& d : s.devices) {
    const std::string tag = "device " + std::to_string(d.id);
    if (!inside(d.x, d.y)) throw ValidationError(tag + ": position outside the area");
    if (!in_unit(d.battery_frac)) throw ValidationError(tag + ": battery_frac outside [0,1]");
    if (!in_unit(d.rating)) throw ValidationError(tag + ": rating outside [0,1]");
  }
  for (const auto& ap : s.aps) {
    const std::string tag = "access point " + std::to_string(ap.id);
    if (!inside(ap.x, ap.y)) throw ValidationError(tag + ": position outside the area");
    if (!(ap.tx_power > 0.0)) throw ValidationError(tag + ": tx_power must be positive");
  }
}

std::string scenario_to_json(const Scenario& s) {
  json doc;
  doc["area_width"] = s.area_width;
  doc["area_height"] = s.area_height;
  doc["seed"] = s.seed;
  json devices = json::array();
  for (const auto& d : s.devices) {
    devices.push_back({{"id", d.id},
                       {"x", d.x},
                       {"y", d.y},
                       {"battery_frac", d.battery_frac},
                       {"rating", d.rating}});
  }
  json aps = json::array();
  for (const auto& ap : s.aps) {
    aps.push_back({{"id", ap.id}, {"x", ap.x}, {"y", ap.y}, {"tx_power", ap.tx_power}});
  }
  doc["devices"] = std::move(devices);
  doc["aps"] = std::move(aps);
  return doc.dump(2) + "\n";
}

Scenario scenario_from_json(std::string_view text) {
  using namespace json_util;
  const json doc = parse_document(text, "scenario");
  require_keys(doc, {"area_width", "area_height", "seed", "devices", "aps"}, "");

  Scenario s;
  s.area_width = get_number(doc, "area_width", "");
  s.area_height = get_number(doc, "area_height", "");
  s.seed = get_unsigned_or(doc, "seed", 0, "");

  const json& devices = require(doc, "devices", "");
  if (!devices.is_array()) throw ParseError("devices: expected an array");
  for (std::size_t i = 0; i < devices.size(); ++i) {
    const std::string where = "devices[" + std::to_string(i) + "]";
    const json& d = devices[i];
    require_keys(d, {"id", "x", "y", "battery_frac", "rating"}, where);
    Device dev;
    dev.id = static_cast<int>(get_integer(d, "id", where));
    dev.x = get_number(d, "x", where);
    dev.y = get_number(d, "y", where);
    dev.battery_frac = get_number(d, "battery_frac", where);
    dev.rating = get_number_or(d, "rating", 1.0, where);
    s.devices.push_back(dev);
  }

  const json& aps = require(doc, "aps", "");
  if (!aps.is_array()) throw ParseError("aps: expected an array");
  for (std::size_t i = 0; i < aps.size(); ++i) {
    const std::string where = "aps[" + std::to_string(i) + "]";
    const json& a = aps[i];
    require_keys(a, {"id", "x", "y", "tx_power"}, where);
    AccessPoint ap;
    ap.id = static_cast<int>(get_integer(a, "id", where));
    ap.x = get_number(a, "x", where);
    ap.y = get_number(a, "y", where);
    ap.tx_power = get_number(a, "tx_power", where);
    s.aps.push_back(ap);
  }

  validate(s);
  return s;
}

void save_scenario(const Scenario& s, const std::filesystem::path& path) {
  validate(s);
  json_util::write_file(path, scenario_to_json(s));
}

Scenario load_scenario(const std::filesystem::path& path) {
  return scenario_from_json(json_util::read_file(path));
}

}  // namespace d2d
