// 1-D region environment: a quality value per region, switching over time
// according to a step-indexed schedule, plus service-node profit production.
#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "msad/graph.hpp"

namespace msad {

struct ScheduleEntry {
  int start_step = 0;
  std::vector<double> qualities;  // one value per region
};

class Environment {
 public:
  Environment(int num_regions, std::vector<ScheduleEntry> schedule)
      : num_regions_(num_regions), schedule_(std::move(schedule)) {
    if (num_regions_ < 1) throw std::invalid_argument("num_regions must be >= 1");
    if (schedule_.empty()) throw std::invalid_argument("schedule must not be empty");
    if (schedule_.front().start_step != 0)
      throw std::invalid_argument("schedule must start at step 0");
    int prev = -1;
    for (const ScheduleEntry& e : schedule_) {
      if (e.start_step <= prev) throw std::invalid_argument("schedule steps must be increasing");
      prev = e.start_step;
      if (static_cast<int>(e.qualities.size()) != num_regions_)
        throw std::invalid_argument("schedule entry has wrong number of qualities");
      for (double q : e.qualities)
        if (!(q >= 0.0)) throw std::invalid_argument("region quality must be >= 0");
    }
  }

  int num_regions() const { return num_regions_; }
  const std::vector<ScheduleEntry>& schedule() const { return schedule_; }

  // Quality of region m (1-based) at step t: the last schedule entry that has
  // started by t.
  double quality_at(int t, int region) const {
    if (region < 1 || region > num_regions_)
      throw std::out_of_range("region index " + std::to_string(region) + " out of range");
    const ScheduleEntry* active = &schedule_.front();
    for (const ScheduleEntry& e : schedule_) {
      if (e.start_step > t) break;
      active = &e;
    }
    return active->qualities[static_cast<std::size_t>(region - 1)];
  }

 private:
  int num_regions_;
  std::vector<ScheduleEntry> schedule_;
};

// The benchmark scenario: region 1 starts out as the high-quality region, the
// highest-numbered region takes over at t = period, and the environment
// switches back at t = 2 * period.
inline Environment make_left_right_left(int num_regions, int period, double high_q, double low_q) {
  std::vector<double> left(static_cast<std::size_t>(num_regions), low_q);
  std::vector<double> right(left);
  left.front() = high_q;
  right.back() = high_q;
  return Environment(num_regions, {{0, left}, {period, right}, {2 * period, left}});
}

inline Environment make_static_left(int num_regions, double high_q, double low_q) {
  std::vector<double> left(static_cast<std::size_t>(num_regions), low_q);
  left.front() = high_q;
  return Environment(num_regions, {{0, left}});
}

// Profit produced by a service node in one step: resident assets times the
// average quality of the regions it supports (an asset covering several
// regions splits its time between them). Assets in transit produce nothing.
inline double service_profit(const NodeState& node, const Environment& env, int t) {
  if (node.kind != NodeKind::Service)
    throw std::invalid_argument("service_profit called on a decision node");
  if (node.regions.empty())
    throw std::invalid_argument("service node supports no regions");
  double sum = 0.0;
  for (int r : node.regions) sum += env.quality_at(t, r);
  return node.resident_assets * (sum / static_cast<double>(node.regions.size()));
}

inline double system_profit(const SystemGraph& g, const Environment& env, int t) {
  double sum = 0.0;
  g.for_each_node([&](NodeId, const NodeState& st) {
    if (st.kind == NodeKind::Service) sum += service_profit(st, env, t);
  });
  return sum;
}

}  // namespace msad
