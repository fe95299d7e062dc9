#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "lgtrack/tracker.hpp"

namespace lgtrack {

/// Header line of the detection table.
inline constexpr const char* kDetectionHeader = "frame,x,y,w,h,s_det,s_cls,s_loc";
/// Header line of the ground-truth table.
inline constexpr const char* kGroundTruthHeader = "frame,id,x,y,w,h";

/// Ground-truth box of one object in one frame.
struct GroundTruthRow {
  int frame = 0;
  int id = 0;
  BBox box;

  friend bool operator==(const GroundTruthRow&, const GroundTruthRow&) = default;
};

/// Sidecar path for a detection table: same directory and stem, `.emb` extension.
std::filesystem::path sidecar_path(const std::filesystem::path& csv);

/// Parses a detection table. Rows must be sorted by frame. Throws ParseError
/// naming the offending line.
std::vector<Detection> parse_detection_rows(std::istream& in, const std::string& source);

/// Embedding sidecar: "LGEB", u32 version 1, u32 dimension, then one record of
/// float32 values per detection row, all little-endian. Returns the records
/// as unit vectors.
std::vector<Embedding> parse_embedding_sidecar(std::istream& in, const std::string& source,
                                               std::size_t& dim);
void write_embedding_sidecar(std::ostream& out, std::span<const Embedding> records, std::size_t dim);

/// Groups rows by frame; the stream spans frames 1..max frame.
DetectionStream group_by_frame(std::vector<Detection> rows, std::size_t embed_dim = 0);

/// Reads `path` plus its sidecar, when one exists.
DetectionStream read_detections(const std::filesystem::path& path);

/// Writes the table and, when the stream carries embeddings, the sidecar.
/// Values are written in shortest round-trip form.
void write_detections(const DetectionStream& stream, const std::filesystem::path& path);
void write_detection_rows(std::ostream& out, const DetectionStream& stream);

/// MOTChallenge result lines `frame,id,x,y,w,h,conf,-1,-1,-1`, frame-major
/// then id-major, two decimals.
void write_tracks(std::ostream& out, std::span<const TrackOutput> rows);
void write_tracks(std::span<const TrackOutput> rows, const std::filesystem::path& path);
std::vector<TrackOutput> parse_tracks(std::istream& in, const std::string& source);
std::vector<TrackOutput> read_tracks(const std::filesystem::path& path);

void write_ground_truth(std::ostream& out, std::span<const GroundTruthRow> rows);
void write_ground_truth(std::span<const GroundTruthRow> rows, const std::filesystem::path& path);
std::vector<GroundTruthRow> parse_ground_truth(std::istream& in, const std::string& source);
std::vector<GroundTruthRow> read_ground_truth(const std::filesystem::path& path);

/// Shortest decimal text that parses back to exactly `v`.
std::string format_shortest(double v);

}  // namespace lgtrack
