#include "d2d/radio.hpp"

#include <algorithm>
#include <cmath>

#include "d2d/errors.hpp"

namespace d2d {

void RadioParams::validate() const {
  if (!(ap_tx_power > 0.0) || !(dev_tx_power > 0.0)) {
    throw ConfigError("radio: transmit powers must be positive");
  }
  if (!(noise > 0.0)) throw ConfigError("radio: noise must be positive");
  if (!(bandwidth > 0.0)) throw ConfigError("radio: bandwidth must be positive");
  if (!(ref_distance > 0.0)) throw ConfigError("radio: ref_distance must be positive");
  if (!(ref_gain > 0.0)) throw ConfigError("radio: ref_gain must be positive");
  if (!(pathloss_exponent >= 2.0)) throw ConfigError("radio: pathloss_exponent must be >= 2");
  if (!(beta >= 0.0 && beta < 1.0)) throw ConfigError("radio: beta must lie in [0,1)");
  if (!(snr_min_lr >= 0.0) || !(snr_min_sr >= 0.0)) {
    throw ConfigError("radio: SNR thresholds must be non-negative");
  }
}

double received_power(double tx_power, double distance, const RadioParams& p) {
  const double d = std::max(distance, p.ref_distance);
  return tx_power * p.ref_gain * std::pow(d / p.ref_distance, -p.pathloss_exponent);
}

double snr(double received, const RadioParams& p) { return received / p.noise; }

double bitrate(double snr_value, const RadioParams& p) {
  return p.bandwidth * std::log2(1.0 + snr_value);
}

double device_reliability(double battery_frac, double rating, double beta) {
  const double headroom = (battery_frac - beta) / (1.0 - beta);
  return rating * std::clamp(headroom, 0.0, 1.0);
}

std::vector<double> device_reliabilities(const Scenario& s, double beta) {
  std::vector<double> out;
  out.reserve(s.devices.size());
  for (const auto& d : s.devices) out.push_back(device_reliability(d.battery_frac, d.rating, beta));
  return out;
}

double lr_power(const Scenario& s, int ap, int dev, const RadioParams& p) {
  const auto& a = s.aps[static_cast<std::size_t>(ap)];
  const auto& d = s.devices[static_cast<std::size_t>(dev)];
  return received_power(a.tx_power, distance(a.position(), d.position()), p);
}

double sr_power(const Scenario& s, int from, int to, const RadioParams& p) {
  const auto& a = s.devices[static_cast<std::size_t>(from)];
  const auto& b = s.devices[static_cast<std::size_t>(to)];
  return received_power(p.dev_tx_power, distance(a.position(), b.position()), p);
}

}  // namespace d2d
