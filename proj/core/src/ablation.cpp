#include "lgtrack/ablation.hpp"

#include <atomic>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>

namespace lgtrack::sim {

TrackerConfig Toggle::apply(TrackerConfig base) const {
  base.acmn_enabled = acmn;
  base.acm_enabled = acm;
  base.feature.mode = feature;
  base.nsa_scaling = nsa;
  return base;
}

std::vector<Toggle> toggle_grid() {
  std::vector<Toggle> grid;
  for (int mask = 0; mask < 8; ++mask) {
    Toggle t;
    t.acmn = mask & 1;
    t.acm = mask & 2;
    t.feature = (mask & 4) ? FeatureMode::SDA : FeatureMode::EMA;
    t.name = mask == 0 ? "baseline" : "";
    if (t.acmn) t.name += "+acmn";
    if (t.acm) t.name += "+acm";
    if (mask & 4) t.name += "+sda";
    if (t.name.front() == '+') t.name.erase(0, 1);
    grid.push_back(std::move(t));
  }
  return grid;
}

std::vector<Toggle> standard_grid() {
  auto grid = toggle_grid();
  grid.push_back({"nsakf", false, false, FeatureMode::EMA, true});
  grid.push_back({"acmn+acm+da", true, true, FeatureMode::DA, false});
  return grid;
}

std::vector<AblationRow> ablate(std::span<const ScenarioSpec> scenarios, std::span<const Toggle> grid,
                                const TrackerConfig& base, unsigned threads) {
  std::vector<Simulation> sims;
  sims.reserve(scenarios.size());
  for (const auto& s : scenarios) sims.push_back(simulate(s));

  const std::size_t cells = grid.size() * sims.size();
  std::vector<MetricsReport> reports(cells);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (std::size_t cell = next++; cell < cells; cell = next++) {
      try {
        const auto& sim = sims[cell % sims.size()];
        const TrackerConfig cfg = grid[cell / sims.size()].apply(base);
        const auto rows = run_sequence(sim.detections, cfg);
        reports[cell] = evaluate(rows, sim.ground_truth);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(cells, 1)));
  {
    std::vector<std::jthread> pool;
    for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
    worker();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<AblationRow> rows;
  for (std::size_t t = 0; t < grid.size(); ++t) {
    AblationRow row;
    row.toggle = grid[t];
    for (std::size_t s = 0; s < sims.size(); ++s) {
      const auto& r = reports[t * sims.size() + s];
      row.per_seed.push_back(r);
      row.mota += r.mota;
      row.idf1 += r.idf1;
      row.idsw += static_cast<double>(r.idsw);
      row.fp += static_cast<double>(r.fp);
      row.fn += static_cast<double>(r.fn);
    }
    if (!sims.empty()) {
      const double n = static_cast<double>(sims.size());
      row.mota /= n;
      row.idf1 /= n;
      row.idsw /= n;
      row.fp /= n;
      row.fn /= n;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string format_ablation_table(std::span<const AblationRow> rows) {
  std::string out = "config\tacmn\tacm\tfeature\tnoise\tMOTA\tIDF1\tIDSW\tFP\tFN\n";
  char buf[256];
  for (const auto& r : rows) {
    const auto& t = r.toggle;
    const char* noise = t.acmn ? "adaptive" : (t.nsa ? "1/s_det" : "fixed");
    std::snprintf(buf, sizeof(buf), "%s\t%s\t%s\t%s\t%s\t%.4f\t%.4f\t%.2f\t%.2f\t%.2f\n", t.name.c_str(),
                  t.acmn ? "on" : "off", t.acm ? "on" : "off", to_string(t.feature), noise, r.mota,
                  r.idf1, r.idsw, r.fp, r.fn);
    out += buf;
  }
  return out;
}

}  // namespace lgtrack::sim
