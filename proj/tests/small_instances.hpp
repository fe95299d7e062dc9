#pragma once

// Random small tracking instances (up to 3 objects, up to 6 frames) for
// checking the metrics against the exhaustive oracle.

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "lgtrack/io.hpp"
#include "lgtrack/tracker.hpp"

namespace small_instances {

struct Instance {
  std::vector<lgtrack::GroundTruthRow> gt;
  std::vector<lgtrack::TrackOutput> hyp;
};

inline Instance random_instance(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> n_obj(1, 3), n_frames(1, 6);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> jitter(0.0, 2.5);
  const int objects = n_obj(rng);
  const int frames = n_frames(rng);

  // Objects start close together so identities get confused.
  std::vector<lgtrack::BBox> base;
  for (int k = 0; k < objects; ++k) base.push_back({12.0 * k + 4.0 * u(rng), 3.0 * u(rng), 20, 20});

  std::vector<int> hid(5);
  std::iota(hid.begin(), hid.end(), 1);
  std::shuffle(hid.begin(), hid.end(), rng);

  Instance inst;
  for (int f = 1; f <= frames; ++f) {
    if (u(rng) < 0.25) {
      std::uniform_int_distribution<int> pick(0, objects - 1);
      std::swap(hid[static_cast<std::size_t>(pick(rng))], hid[static_cast<std::size_t>(pick(rng))]);
    }
    for (int k = 0; k < objects; ++k) {
      const bool edge = f == 1 || f == frames;
      if (!edge && u(rng) < 0.2) continue;
      const lgtrack::BBox g{base[k].x + 3.0 * f, base[k].y, 20, 20};
      inst.gt.push_back({f, k + 1, g});
      if (u(rng) < 0.8) {
        const lgtrack::BBox h{g.x + jitter(rng), g.y + jitter(rng), 20 + jitter(rng) * 0.5, 20};
        inst.hyp.push_back({f, hid[static_cast<std::size_t>(k)], h, 1.0});
      }
    }
    if (u(rng) < 0.3) {
      const lgtrack::BBox s{12.0 * objects * u(rng), 3.0 * u(rng), 20, 20};
      inst.hyp.push_back({f, hid[4], s, 0.5});
    }
  }
  return inst;
}

}  // namespace small_instances
