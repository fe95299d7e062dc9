#include "lgtrack/tracker.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "lgtrack/errors.hpp"

namespace lgtrack {

namespace {

constexpr double kMinConfidence = 1e-3;

}  // namespace

NoiseScaling TrackerConfig::noise_scaling() const {
  if (acmn_enabled) return NoiseScaling::Adaptive;
  return nsa_scaling ? NoiseScaling::Confidence : NoiseScaling::Fixed;
}

bool TrackerConfig::valid() const {
  return noise.valid() && cascade.valid() && feature.valid() && n_init >= 1;
}

std::size_t DetectionStream::detection_count() const {
  std::size_t n = 0;
  for (const auto& f : frames) n += f.size();
  return n;
}

bool legal_transition(TrackState from, TrackState to) {
  switch (from) {
    case TrackState::New:
      return to == TrackState::Tracked || to == TrackState::Removed;
    case TrackState::Tracked:
      return to == TrackState::Lost;
    case TrackState::Lost:
      return to == TrackState::Tracked || to == TrackState::Removed;
    case TrackState::Removed:
      return false;
  }
  return false;
}

Tracker::Tracker(TrackerConfig cfg) : cfg_(std::move(cfg)) {
  if (!cfg_.valid()) throw InvalidArgument("invalid tracker configuration");
}

void Tracker::transition(Track& t, TrackState to) {
  if (t.state == to) return;
  if (!legal_transition(t.state, to)) {
    throw std::logic_error("illegal track transition " + std::string(to_string(t.state)) + " -> " +
                           to_string(to));
  }
  if (observer_) observer_(t.id, t.state, to);
  t.state = to;
}

double Tracker::noise_factor(const Track& t) const {
  switch (cfg_.noise_scaling()) {
    case NoiseScaling::Fixed:
      return 1.0;
    case NoiseScaling::Adaptive:
      return adaptive_factor(t.last_s_det, t.n_lost, cfg_.noise.n_max, cfg_.noise.th_det);
    case NoiseScaling::Confidence:
      return 1.0 / std::max(t.last_s_det, kMinConfidence);
  }
  return 1.0;
}

void Tracker::spawn(const Detection& det, int frame) {
  Track t;
  t.id = next_id_++;
  t.kf = initiate(det.bbox, cfg_.noise);
  t.feature = det.embedding;
  t.last_s_det = det.conf.s_det;
  t.start_frame = frame;
  // Tracks born on the first processed frame are confirmed at once, so a
  // sequence's opening frame is reported.
  t.state = last_frame_ ? TrackState::New : TrackState::Tracked;
  tracks_.push_back(std::move(t));
}

std::vector<TrackOutput> Tracker::step(int frame, std::span<const Detection> detections) {
  if (last_frame_ && frame <= *last_frame_) {
    throw OrderingError("frame " + std::to_string(frame) + " does not follow frame " +
                        std::to_string(*last_frame_));
  }
  for (const auto& d : detections) {
    if (d.frame != frame) {
      throw InvalidArgument("detection for frame " + std::to_string(d.frame) +
                            " passed with frame " + std::to_string(frame));
    }
    if (!d.valid()) throw InvalidArgument("invalid detection in frame " + std::to_string(frame));
  }

  for (auto& t : tracks_) t.kf = predict(t.kf, cfg_.noise);

  std::vector<TrackView> views;
  views.reserve(tracks_.size());
  for (const auto& t : tracks_) views.push_back({t.box(), t.feature, t.state});

  const CostWeighting weighting =
      cfg_.acm_enabled ? CostWeighting::Confidence : CostWeighting::Uniform;
  const CascadeResult cascade = run_cascade(detections, views, cfg_.cascade, weighting);

  for (const auto& [d, j] : cascade.all_matches()) {
    const Detection& det = detections[d];
    Track& t = tracks_[j];
    t.last_s_det = det.conf.s_det;
    t.kf = update(t.kf, det.bbox, noise_factor(t), cfg_.noise);
    if (det.embedding) {
      if (!t.feature) {
        t.feature = det.embedding;
      } else {
        t.feature = update_feature(*t.feature, *det.embedding, select_alpha(det, cfg_.feature)).feature;
      }
    }
    ++t.hits;
    if (t.state == TrackState::Lost) {
      transition(t, TrackState::Tracked);
    } else if (t.state == TrackState::New && t.hits >= cfg_.n_init) {
      transition(t, TrackState::Tracked);
    }
    t.n_lost = 0;
  }

  for (int j : cascade.unmatched_tracks) {
    Track& t = tracks_[j];
    switch (t.state) {
      case TrackState::Tracked:
        transition(t, TrackState::Lost);
        t.n_lost = 1;
        break;
      case TrackState::Lost:
        ++t.n_lost;
        if (t.n_lost > cfg_.noise.n_max) transition(t, TrackState::Removed);
        break;
      case TrackState::New:
        transition(t, TrackState::Removed);
        break;
      case TrackState::Removed:
        break;
    }
  }
  std::erase_if(tracks_, [](const Track& t) { return t.state == TrackState::Removed; });

  for (int d : cascade.unmatched_detections) {
    if (detections[d].conf.s_det >= cfg_.cascade.th_high) spawn(detections[d], frame);
  }
  last_frame_ = frame;

  std::vector<TrackOutput> out;
  for (const auto& t : tracks_) {
    if (t.state == TrackState::Tracked) out.push_back({frame, t.id, t.box(), t.last_s_det});
  }
  std::sort(out.begin(), out.end(),
            [](const TrackOutput& a, const TrackOutput& b) { return a.id < b.id; });
  return out;
}

std::vector<TrackOutput> run_sequence(const DetectionStream& stream, const TrackerConfig& cfg) {
  Tracker tracker(cfg);
  std::vector<TrackOutput> rows;
  for (int f = 0; f < stream.frame_count(); ++f) {
    auto out = tracker.step(f + 1, stream.frames[f]);
    rows.insert(rows.end(), out.begin(), out.end());
  }
  return rows;
}

}  // namespace lgtrack
