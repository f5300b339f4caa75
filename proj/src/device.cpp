#include "degsol/device.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "degsol/dynamics.hpp"
#include "degsol/errors.hpp"

namespace degsol {

double DeviceConfig::latency_s() const {
  return localization_time(r0_m, e_on_v_per_m, q_c);
}

void DeviceConfig::validate() const {
  if (n_channels < 1) throw InvalidConfig("n_channels must be >= 1");
  if (!(channel_width_m > 0.0))
    throw InvalidConfig("channel_width_m must be positive");
  if (!(slab_width_m > 0.0)) throw InvalidConfig("slab_width_m must be positive");
  if (!(r0_m > 0.0)) throw InvalidConfig("r0_m must be positive");
  if (!(e_on_v_per_m > 0.0))
    throw InvalidConfig("e_on_v_per_m must be positive");
  if (!(q_c > 0.0)) throw InvalidConfig("q_c must be positive");
  if (!(clock_period_s > 0.0))
    throw InvalidConfig("clock_period_s must be positive");
  const auto capacity =
      static_cast<std::int64_t>(std::floor(slab_width_m / channel_width_m));
  if (n_channels > capacity)
    throw InvalidConfig("n_channels exceeds floor(slab_width / channel_width) = " +
                        std::to_string(capacity));
  if (clock_period_s < latency_s())
    throw InvalidConfig("clock_period_s is below the switching latency " +
                        format_double(latency_s()));
}

nlohmann::json DeviceConfig::to_json() const {
  return {{"n_channels", n_channels},
          {"channel_width_m", channel_width_m},
          {"slab_width_m", slab_width_m},
          {"r0_m", r0_m},
          {"e_on_v_per_m", e_on_v_per_m},
          {"q_c", q_c},
          {"clock_period_s", clock_period_s}};
}

DeviceConfig DeviceConfig::from_json(const nlohmann::json& j) {
  DeviceConfig c;
  c.n_channels = j.value("n_channels", c.n_channels);
  c.channel_width_m = j.value("channel_width_m", c.channel_width_m);
  c.slab_width_m = j.value("slab_width_m", c.slab_width_m);
  c.r0_m = j.value("r0_m", c.r0_m);
  c.e_on_v_per_m = j.value("e_on_v_per_m", c.e_on_v_per_m);
  c.q_c = j.value("q_c", c.q_c);
  c.clock_period_s = j.value("clock_period_s", c.clock_period_s);
  return c;
}

double throughput(const DeviceConfig& config) {
  config.validate();
  return static_cast<double>(config.n_channels) / config.clock_period_s;
}

Device::Device(DeviceConfig config) : config_(config) {
  config_.validate();
  latency_ = config_.latency_s();
  // All gates off and settled: every channel starts at bit 1.
  history_.assign(static_cast<std::size_t>(config_.n_channels),
                  {{-std::numeric_limits<double>::infinity(), false, 1}});
  settle_pending_.assign(static_cast<std::size_t>(config_.n_channels), false);
}

void Device::check_channel(std::int64_t channel) const {
  if (channel < 0 || channel >= config_.n_channels)
    throw UnknownChannel("channel " + std::to_string(channel) +
                         " outside 0.." + std::to_string(config_.n_channels - 1));
}

void Device::apply_schedule(std::span<const ScheduleEntry> schedule) {
  double last = -std::numeric_limits<double>::infinity();
  for (const auto& entry : schedule) {
    check_channel(entry.channel);
    if (entry.time_s < last)
      throw Error("apply_schedule: times must be non-decreasing");
    if (entry.time_s < now_)
      throw Error("apply_schedule: entry in the simulated past");
    last = entry.time_s;
    // Merge into the not-yet-executed queue, after equal-time entries.
    const auto it = std::upper_bound(
        pending_.begin() + static_cast<std::ptrdiff_t>(next_pending_),
        pending_.end(), entry.time_s,
        [](double t, const ScheduleEntry& s) { return t < s.time_s; });
    pending_.insert(it, entry);
  }
}

std::vector<DeviceEvent> Device::step(double dt) {
  if (!(dt > 0.0)) throw Error("step: dt must be positive");
  const double target = now_ + dt;
  const std::size_t log_start = log_.size();

  while (true) {
    // Next queued gate change inside the window.
    double change_time = std::numeric_limits<double>::infinity();
    if (next_pending_ < pending_.size())
      change_time = pending_[next_pending_].time_s;

    // Next pending settle event.
    double settle_time = std::numeric_limits<double>::infinity();
    std::int64_t settle_channel = -1;
    for (std::int64_t c = 0; c < config_.n_channels; ++c) {
      if (!settle_pending_[static_cast<std::size_t>(c)]) continue;
      const double ts =
          history_[static_cast<std::size_t>(c)].back().time_s + latency_;
      if (ts < settle_time) {
        settle_time = ts;
        settle_channel = c;
      }
    }

    const double next = std::min(change_time, settle_time);
    if (next > target) break;

    if (settle_time <= change_time) {
      auto& hist = history_[static_cast<std::size_t>(settle_channel)];
      const int bit = hist.back().on ? 0 : 1;
      settle_pending_[static_cast<std::size_t>(settle_channel)] = false;
      log_.push_back({settle_time, settle_channel, DeviceEventKind::settled, bit});
      continue;
    }

    const ScheduleEntry entry = pending_[next_pending_++];
    auto& hist = history_[static_cast<std::size_t>(entry.channel)];
    const Transition& last = hist.back();
    if (entry.on == last.on) continue;  // no-op, gate already in that state

    const bool settled = entry.time_s >= last.time_s + latency_;
    const int visible = settled ? (last.on ? 0 : 1) : last.carried_bit;
    if (!settled) {
      // The previous target bit never reached the output.
      log_.push_back({entry.time_s, entry.channel, DeviceEventKind::missed_bit,
                      last.on ? 0 : 1});
    }
    hist.push_back({entry.time_s, entry.on, visible});
    settle_pending_[static_cast<std::size_t>(entry.channel)] = true;
    log_.push_back({entry.time_s, entry.channel,
                    DeviceEventKind::voltage_change, entry.on ? 0 : 1});
  }

  now_ = target;
  return {log_.begin() + static_cast<std::ptrdiff_t>(log_start), log_.end()};
}

int Device::bit_at(std::int64_t channel, double time_s) const {
  check_channel(channel);
  if (time_s > now_)
    throw Error("bit_at: time " + format_double(time_s) +
                " beyond simulated span");
  const auto& hist = history_[static_cast<std::size_t>(channel)];
  const Transition* active = &hist.front();
  for (const auto& tr : hist) {
    if (tr.time_s <= time_s) active = &tr;
  }
  if (time_s >= active->time_s + latency_) return active->on ? 0 : 1;
  return active->carried_bit;
}

std::vector<std::vector<int>> Device::readout(
    std::span<const double> sample_times) const {
  std::vector<std::vector<int>> bits(
      static_cast<std::size_t>(config_.n_channels));
  for (std::int64_t c = 0; c < config_.n_channels; ++c) {
    auto& row = bits[static_cast<std::size_t>(c)];
    row.reserve(sample_times.size());
    for (double t : sample_times) row.push_back(bit_at(c, t));
  }
  return bits;
}

}  // namespace degsol
