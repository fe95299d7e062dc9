#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "lgtrack/appearance.hpp"
#include "lgtrack/association.hpp"
#include "lgtrack/geometry.hpp"
#include "lgtrack/kalman.hpp"

namespace lgtrack {

/// Which measurement-noise scaling the Kalman update uses.
enum class NoiseScaling {
  Fixed,       // alpha = 1
  Adaptive,    // adaptive_factor()
  Confidence,  // alpha = 1 / s_det, the comparison baseline
};

struct TrackerConfig {
  NoiseConfig noise;
  CascadeConfig cascade;
  FeatureUpdatePolicy feature;
  int n_init = 1;
  bool acmn_enabled = true;
  bool acm_enabled = true;
  /// Replaces the adaptive noise factor with 1 / s_det. Only consulted when
  /// acmn_enabled is false.
  bool nsa_scaling = false;

  NoiseScaling noise_scaling() const;
  bool valid() const;
};

struct Track {
  int id = 0;
  TrackState state = TrackState::New;
  KalmanState kf;
  std::optional<Embedding> feature;
  int n_lost = 0;
  int hits = 0;
  double last_s_det = 0.0;
  int start_frame = 0;

  BBox box() const { return kf.box(); }
};

/// One emitted row: a confirmed track's box in a frame.
struct TrackOutput {
  int frame = 0;
  int id = 0;
  BBox box;
  double score = 0.0;

  friend bool operator==(const TrackOutput&, const TrackOutput&) = default;
};

/// Detections grouped by frame; frames[k] holds frame k + 1 (possibly empty).
struct DetectionStream {
  std::vector<std::vector<Detection>> frames;
  /// Embedding dimension, 0 when the stream carries no embeddings.
  std::size_t embed_dim = 0;

  int frame_count() const { return static_cast<int>(frames.size()); }
  std::size_t detection_count() const;
};

/// Returns true when `from -> to` is a legal lifecycle transition.
bool legal_transition(TrackState from, TrackState to);

/// Online tracker for one sequence. Not thread-safe; separate instances are
/// independent.
class Tracker {
 public:
  using TransitionObserver = std::function<void(int id, TrackState from, TrackState to)>;

  explicit Tracker(TrackerConfig cfg);

  /// Processes one frame. `frame` must increase strictly between calls and
  /// every detection must carry it. Returns confirmed tracks sorted by id.
  std::vector<TrackOutput> step(int frame, std::span<const Detection> detections);

  /// Live tracks (Removed ones are dropped after the frame they end in).
  const std::vector<Track>& tracks() const { return tracks_; }
  const TrackerConfig& config() const { return cfg_; }

  void set_transition_observer(TransitionObserver obs) { observer_ = std::move(obs); }

 private:
  void transition(Track& t, TrackState to);
  double noise_factor(const Track& t) const;
  void spawn(const Detection& det, int frame);

  TrackerConfig cfg_;
  std::vector<Track> tracks_;
  int next_id_ = 1;
  std::optional<int> last_frame_;
  TransitionObserver observer_;
};

/// Runs a fresh tracker over every frame of `stream`.
std::vector<TrackOutput> run_sequence(const DetectionStream& stream, const TrackerConfig& cfg);

}  // namespace lgtrack
