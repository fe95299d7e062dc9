#include "lgtrack/metrics.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "lgtrack/assignment.hpp"
#include "lgtrack/errors.hpp"

namespace lgtrack::sim {

namespace {

// Larger than any achievable sum of valid (<= 1) costs in a frame.
constexpr double kForbidden = 1e9;

struct Item {
  int id;
  BBox box;
};

using FrameItems = std::map<int, std::vector<Item>>;

template <typename Row>
FrameItems by_frame(std::span<const Row> rows, const char* what) {
  FrameItems out;
  for (const auto& r : rows) {
    auto& items = out[r.frame];
    for (const auto& it : items) {
      if (it.id == r.id) {
        throw InvalidArgument(std::string(what) + " id " + std::to_string(r.id) +
                              " appears twice in frame " + std::to_string(r.frame));
      }
    }
    items.push_back({r.id, r.box});
  }
  for (auto& [f, items] : out) {
    std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return a.id < b.id; });
  }
  return out;
}

}  // namespace

MetricsReport evaluate(std::span<const TrackOutput> results, std::span<const GroundTruthRow> truth,
                       double iou_threshold) {
  if (truth.empty()) throw InvalidArgument("ground truth is empty");
  const FrameItems gt = by_frame(truth, "ground-truth");
  const FrameItems hyp = by_frame(results, "result");
  const int first = gt.begin()->first;
  const int last = gt.rbegin()->first;
  if (!hyp.empty() && (hyp.begin()->first < first || hyp.rbegin()->first > last)) {
    throw InvalidArgument("result frames [" + std::to_string(hyp.begin()->first) + ", " +
                          std::to_string(hyp.rbegin()->first) + "] fall outside ground-truth frames [" +
                          std::to_string(first) + ", " + std::to_string(last) + "]");
  }

  MetricsReport rep;
  std::map<int, int> last_match;  // gt id -> hypothesis id
  std::map<std::pair<int, int>, long> co_detected;
  std::map<int, long> gt_total, hyp_total;
  static const std::vector<Item> none;

  for (int f = first; f <= last; ++f) {
    const auto git = gt.find(f);
    const auto hit = hyp.find(f);
    const auto& g = git == gt.end() ? none : git->second;
    const auto& h = hit == hyp.end() ? none : hit->second;
    rep.gt_count += static_cast<long>(g.size());
    rep.pred_count += static_cast<long>(h.size());
    for (const auto& it : g) ++gt_total[it.id];
    for (const auto& it : h) ++hyp_total[it.id];

    for (const auto& gi : g) {
      for (const auto& hi : h) {
        if (iou(gi.box, hi.box) >= iou_threshold) ++co_detected[{gi.id, hi.id}];
      }
    }

    std::vector<char> g_used(g.size(), 0), h_used(h.size(), 0);
    std::vector<std::pair<int, int>> frame_matches;  // indices into g, h

    for (std::size_t i = 0; i < g.size(); ++i) {
      const auto prev = last_match.find(g[i].id);
      if (prev == last_match.end()) continue;
      for (std::size_t j = 0; j < h.size(); ++j) {
        if (h_used[j] || h[j].id != prev->second) continue;
        if (iou(g[i].box, h[j].box) >= iou_threshold) {
          g_used[i] = h_used[j] = 1;
          frame_matches.emplace_back(static_cast<int>(i), static_cast<int>(j));
        }
      }
    }

    std::vector<int> gi_free, hj_free;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (!g_used[i]) gi_free.push_back(static_cast<int>(i));
    }
    for (std::size_t j = 0; j < h.size(); ++j) {
      if (!h_used[j]) hj_free.push_back(static_cast<int>(j));
    }
    if (!gi_free.empty() && !hj_free.empty()) {
      CostMatrix c(static_cast<Eigen::Index>(gi_free.size()), static_cast<Eigen::Index>(hj_free.size()));
      for (std::size_t a = 0; a < gi_free.size(); ++a) {
        for (std::size_t b = 0; b < hj_free.size(); ++b) {
          const double v = iou(g[gi_free[a]].box, h[hj_free[b]].box);
          c(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
              v >= iou_threshold ? 1.0 - v : kForbidden;
        }
      }
      for (const auto& [a, b] : solve_assignment(c, 1.0).matches) {
        frame_matches.emplace_back(gi_free[a], hj_free[b]);
      }
    }

    for (const auto& [i, j] : frame_matches) {
      const int gid = g[i].id;
      const int hid = h[j].id;
      const auto prev = last_match.find(gid);
      if (prev != last_match.end() && prev->second != hid) ++rep.idsw;
      last_match[gid] = hid;
    }
    const long m = static_cast<long>(frame_matches.size());
    rep.matches += m;
    rep.fn += static_cast<long>(g.size()) - m;
    rep.fp += static_cast<long>(h.size()) - m;
  }

  rep.mota = 1.0 - static_cast<double>(rep.fn + rep.fp + rep.idsw) / static_cast<double>(rep.gt_count);

  std::vector<int> gt_ids, hyp_ids;
  for (const auto& [id, n] : gt_total) gt_ids.push_back(id);
  for (const auto& [id, n] : hyp_total) hyp_ids.push_back(id);
  if (!hyp_ids.empty()) {
    CostMatrix c(static_cast<Eigen::Index>(gt_ids.size()), static_cast<Eigen::Index>(hyp_ids.size()));
    for (std::size_t a = 0; a < gt_ids.size(); ++a) {
      for (std::size_t b = 0; b < hyp_ids.size(); ++b) {
        const auto it = co_detected.find({gt_ids[a], hyp_ids[b]});
        c(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
            it == co_detected.end() ? 0.0 : -static_cast<double>(it->second);
      }
    }
    const auto assignment = solve_assignment(c);
    for (const auto& [a, b] : assignment.matches) {
      rep.idtp += static_cast<long>(-c(a, b));
    }
  }
  rep.idf1 = 2.0 * static_cast<double>(rep.idtp) / static_cast<double>(rep.gt_count + rep.pred_count);
  return rep;
}

}  // namespace lgtrack::sim
