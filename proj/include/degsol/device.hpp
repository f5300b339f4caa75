#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <json.hpp>

#include "degsol/core.hpp"

namespace degsol {

// Logical-level model of the channel-array switch: an array of gated channels
// over a slab, each carrying current (bit 1) unless its gate field confines
// the carriers (bit 0). The only physics input is the confinement latency.
struct DeviceConfig {
  std::int64_t n_channels = 1;
  double channel_width_m = 100e-9;
  double slab_width_m = 1e-2;
  double r0_m = 1e-7;
  double e_on_v_per_m = 3.292e3;  // latency just under one picosecond
  double q_c = 1.602176634e-19;
  double clock_period_s = 1e-12;

  double latency_s() const;      // localization_time(r0, E_on, q)
  void validate() const;         // throws InvalidConfig naming the invariant

  nlohmann::json to_json() const;
  static DeviceConfig from_json(const nlohmann::json& j);
};

// Peak bit rate: every channel delivers one bit per clock period.
double throughput(const DeviceConfig& config);

struct ScheduleEntry {
  double time_s = 0.0;
  std::int64_t channel = 0;
  bool on = false;
};

enum class DeviceEventKind { voltage_change, settled, missed_bit };

struct DeviceEvent {
  double time_s = 0.0;
  std::int64_t channel = 0;
  DeviceEventKind kind = DeviceEventKind::voltage_change;
  int bit = 0;  // target bit for changes/misses, settled bit otherwise
};

// Deterministic single-timeline simulator. Gate changes take latency_s() to
// settle; a channel sampled mid-transition reads its previous settled bit.
class Device {
 public:
  explicit Device(DeviceConfig config);

  const DeviceConfig& config() const { return config_; }
  double now() const { return now_; }

  // Queues future gate changes; times must be non-decreasing and >= now().
  void apply_schedule(std::span<const ScheduleEntry> schedule);

  // Advances the timeline, executing queued changes; returns the events that
  // occurred inside the window.
  std::vector<DeviceEvent> step(double dt);

  // Output bit of a channel at a past (already simulated) instant.
  int bit_at(std::int64_t channel, double time_s) const;

  // n_channels x n_samples bit matrix.
  std::vector<std::vector<int>> readout(
      std::span<const double> sample_times) const;

  const std::vector<DeviceEvent>& event_log() const { return log_; }

 private:
  struct Transition {
    double time_s;
    bool on;
    int carried_bit;  // settled bit visible while this transition completes
  };

  void check_channel(std::int64_t channel) const;

  DeviceConfig config_;
  double latency_;
  double now_ = 0.0;
  std::vector<std::vector<Transition>> history_;
  std::vector<bool> settle_pending_;
  std::vector<ScheduleEntry> pending_;
  std::size_t next_pending_ = 0;
  std::vector<DeviceEvent> log_;
};

}  // namespace degsol
