#pragma once

#include <span>
#include <string>
#include <vector>

#include "lgtrack/metrics.hpp"
#include "lgtrack/simulator.hpp"
#include "lgtrack/tracker.hpp"

namespace lgtrack::sim {

/// One configuration of the component switches.
struct Toggle {
  std::string name;
  bool acmn = false;
  bool acm = false;
  FeatureMode feature = FeatureMode::EMA;
  bool nsa = false;

  TrackerConfig apply(TrackerConfig base) const;
};

/// Averages over seeds; counts become means.
struct AblationRow {
  Toggle toggle;
  double mota = 0.0;
  double idf1 = 0.0;
  double idsw = 0.0;
  double fp = 0.0;
  double fn = 0.0;
  std::vector<MetricsReport> per_seed;
};

/// The eight on/off combinations of (acmn, acm, sda), all-off first and
/// all-on last.
std::vector<Toggle> toggle_grid();

/// toggle_grid() plus the 1/s_det noise-scaling row and the DA feature row.
std::vector<Toggle> standard_grid();

/// Runs every (scenario x toggle) cell on up to `threads` worker threads and
/// averages per toggle. Output order follows `grid` and does not depend on
/// the thread count.
std::vector<AblationRow> ablate(std::span<const ScenarioSpec> scenarios, std::span<const Toggle> grid,
                                const TrackerConfig& base, unsigned threads = 0);

/// Tab-separated table with a header row.
std::string format_ablation_table(std::span<const AblationRow> rows);

}  // namespace lgtrack::sim
