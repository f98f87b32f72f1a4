#pragma once

#include <vector>

#include "d2d/scenario.hpp"

namespace d2d {

/// Link-budget configuration. Defaults reproduce the reference network
/// parameters; the propagation constants (exponent, reference gain and
/// distance) and the channel bandwidth are this project's choices.
struct RadioParams {
  double ap_tx_power = 10.0;      // W
  double dev_tx_power = 0.22;     // W
  double noise = 1e-9;            // W
  double bandwidth = 20e6;        // Hz
  double pathloss_exponent = 3.0;
  double ref_gain = 1e-4;         // gain at ref_distance
  double ref_distance = 1.0;      // m
  double snr_min_lr = 1.0;        // linear
  double snr_min_sr = 1.0;        // linear
  double beta = 0.3;              // battery threshold fraction

  /// Throws ConfigError when an invariant is broken.
  void validate() const;
};

/// Log-distance law: tx * G0 * (max(d, d0) / d0)^-alpha.
double received_power(double tx_power, double distance, const RadioParams& p);

double snr(double received, const RadioParams& p);

/// Shannon rate W * log2(1 + snr) in bits per second.
double bitrate(double snr_value, const RadioParams& p);

/// Battery headroom above the threshold, normalised to [0,1], scaled by rating.
/// Zero at or below the threshold, equal to the rating at full charge.
double device_reliability(double battery_frac, double rating, double beta);

std::vector<double> device_reliabilities(const Scenario& s, double beta);

/// Power received by device `dev` from access point `ap`.
double lr_power(const Scenario& s, int ap, int dev, const RadioParams& p);

/// Power received by device `to` from device `from` over a D2D link.
double sr_power(const Scenario& s, int from, int to, const RadioParams& p);

}  // namespace d2d
