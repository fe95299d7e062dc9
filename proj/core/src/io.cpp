#include "lgtrack/io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "lgtrack/errors.hpp"

namespace lgtrack {

namespace {

constexpr std::array<char, 4> kMagic = {'L', 'G', 'E', 'B'};
constexpr std::uint32_t kSidecarVersion = 1;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

double to_double(std::string_view s, const std::string& source, std::size_t line, const char* what) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ParseError(source, line, std::string("bad ") + what + " '" + std::string(s) + "'");
  }
  return v;
}

int to_int(std::string_view s, const std::string& source, std::size_t line, const char* what) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError(source, line, std::string("bad ") + what + " '" + std::string(s) + "'");
  }
  return v;
}

std::ifstream open_in(const std::filesystem::path& path, std::ios::openmode mode = std::ios::in) {
  std::ifstream in(path, mode);
  if (!in) throw Error("cannot open " + path.string() + " for reading");
  return in;
}

std::ofstream open_out(const std::filesystem::path& path, std::ios::openmode mode = std::ios::out) {
  std::ofstream out(path, mode);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw Error("failed writing " + path.string());
}

void put_u32(std::ostream& out, std::uint32_t v) {
  const std::array<char, 4> b = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                                 static_cast<char>((v >> 16) & 0xff),
                                 static_cast<char>((v >> 24) & 0xff)};
  out.write(b.data(), 4);
}

bool get_u32(std::istream& in, std::uint32_t& v) {
  std::array<unsigned char, 4> b{};
  if (!in.read(reinterpret_cast<char*>(b.data()), 4)) return false;
  v = static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
      (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
  return true;
}

// Skips blank lines; returns false at end of input.
bool next_line(std::istream& in, std::string& line, std::size_t& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) return true;
  }
  return false;
}

void expect_header(std::istream& in, const std::string& source, const char* header,
                   std::size_t& line_no) {
  std::string line;
  if (!next_line(in, line, line_no)) throw ParseError(source, 0, "missing header line");
  std::string normalized;
  for (auto f : split_fields(line)) {
    if (!normalized.empty()) normalized += ',';
    normalized += f;
  }
  if (normalized != header) {
    throw ParseError(source, line_no, "expected header '" + std::string(header) + "'");
  }
}

void put_fixed2(std::string& out, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  out += buf;
}

}  // namespace

std::string format_shortest(double v) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

std::filesystem::path sidecar_path(const std::filesystem::path& csv) {
  auto p = csv;
  p.replace_extension(".emb");
  return p;
}

std::vector<Detection> parse_detection_rows(std::istream& in, const std::string& source) {
  std::size_t line_no = 0;
  expect_header(in, source, kDetectionHeader, line_no);
  std::vector<Detection> rows;
  std::string line;
  int last_frame = 0;
  while (next_line(in, line, line_no)) {
    const auto f = split_fields(line);
    if (f.size() != 8) {
      throw ParseError(source, line_no, "expected 8 fields, got " + std::to_string(f.size()));
    }
    Detection d;
    d.frame = to_int(f[0], source, line_no, "frame");
    d.bbox = {to_double(f[1], source, line_no, "x"), to_double(f[2], source, line_no, "y"),
              to_double(f[3], source, line_no, "w"), to_double(f[4], source, line_no, "h")};
    d.conf = {to_double(f[5], source, line_no, "s_det"), to_double(f[6], source, line_no, "s_cls"),
              to_double(f[7], source, line_no, "s_loc")};
    if (d.frame < 1) throw ParseError(source, line_no, "frame must be >= 1");
    if (d.frame < last_frame) throw ParseError(source, line_no, "rows not sorted by frame");
    if (!d.bbox.valid()) throw ParseError(source, line_no, "box width and height must be positive");
    if (!d.conf.valid()) throw ParseError(source, line_no, "confidence outside [0,1]");
    last_frame = d.frame;
    rows.push_back(std::move(d));
  }
  return rows;
}

std::vector<Embedding> parse_embedding_sidecar(std::istream& in, const std::string& source,
                                               std::size_t& dim) {
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), 4) || magic != kMagic) {
    throw ParseError(source, 0, "missing LGEB magic");
  }
  std::uint32_t version = 0, d = 0;
  if (!get_u32(in, version) || !get_u32(in, d)) throw ParseError(source, 0, "truncated header");
  if (version != kSidecarVersion) {
    throw ParseError(source, 0, "unsupported sidecar version " + std::to_string(version));
  }
  if (d == 0) throw ParseError(source, 0, "embedding dimension is zero");
  dim = d;

  std::vector<Embedding> records;
  std::vector<char> raw(static_cast<std::size_t>(d) * 4);
  Eigen::VectorXd v(d);
  while (true) {
    in.read(raw.data(), static_cast<std::streamsize>(raw.size()));
    if (in.gcount() == 0) break;
    if (static_cast<std::size_t>(in.gcount()) != raw.size()) {
      throw ParseError(source, 0, "truncated record " + std::to_string(records.size() + 1));
    }
    for (std::uint32_t k = 0; k < d; ++k) {
      std::uint32_t bits = 0;
      for (int b = 3; b >= 0; --b) {
        bits = (bits << 8) | static_cast<unsigned char>(raw[k * 4 + static_cast<std::size_t>(b)]);
      }
      v(k) = static_cast<double>(std::bit_cast<float>(bits));
    }
    try {
      records.push_back(ensure_unit(v));
    } catch (const InvalidArgument&) {
      throw ParseError(source, 0, "record " + std::to_string(records.size() + 1) +
                                      " has zero or non-finite norm");
    }
  }
  return records;
}

void write_embedding_sidecar(std::ostream& out, std::span<const Embedding> records,
                             std::size_t dim) {
  out.write(kMagic.data(), 4);
  put_u32(out, kSidecarVersion);
  put_u32(out, static_cast<std::uint32_t>(dim));
  for (const auto& e : records) {
    if (e.dim() != dim) throw DimensionMismatch("sidecar record dimension differs from header");
    for (Eigen::Index k = 0; k < e.values().size(); ++k) {
      put_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(e.values()(k))));
    }
  }
}

DetectionStream group_by_frame(std::vector<Detection> rows, std::size_t embed_dim) {
  DetectionStream stream;
  stream.embed_dim = embed_dim;
  int max_frame = 0;
  for (const auto& d : rows) max_frame = std::max(max_frame, d.frame);
  stream.frames.resize(static_cast<std::size_t>(max_frame));
  for (auto& d : rows) stream.frames[static_cast<std::size_t>(d.frame - 1)].push_back(std::move(d));
  return stream;
}

DetectionStream read_detections(const std::filesystem::path& path) {
  auto in = open_in(path);
  auto rows = parse_detection_rows(in, path.string());
  std::size_t dim = 0;
  const auto side = sidecar_path(path);
  if (std::filesystem::exists(side)) {
    auto sin = open_in(side, std::ios::in | std::ios::binary);
    auto records = parse_embedding_sidecar(sin, side.string(), dim);
    if (records.size() != rows.size()) {
      throw ParseError(side.string(), 0,
                       "sidecar has " + std::to_string(records.size()) + " records for " +
                           std::to_string(rows.size()) + " detection rows");
    }
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i].embedding = std::move(records[i]);
  }
  return group_by_frame(std::move(rows), dim);
}

void write_detection_rows(std::ostream& out, const DetectionStream& stream) {
  std::string buf = kDetectionHeader;
  buf += '\n';
  for (const auto& frame : stream.frames) {
    for (const auto& d : frame) {
      buf += std::to_string(d.frame);
      for (double v : {d.bbox.x, d.bbox.y, d.bbox.w, d.bbox.h, d.conf.s_det, d.conf.s_cls,
                       d.conf.s_loc}) {
        buf += ',';
        buf += format_shortest(v);
      }
      buf += '\n';
    }
  }
  out << buf;
}

void write_detections(const DetectionStream& stream, const std::filesystem::path& path) {
  {
    auto out = open_out(path);
    write_detection_rows(out, stream);
    finish(out, path);
  }
  const auto side = sidecar_path(path);
  if (stream.embed_dim == 0) {
    std::filesystem::remove(side);
    return;
  }
  std::vector<Embedding> records;
  for (const auto& frame : stream.frames) {
    for (const auto& d : frame) {
      if (!d.embedding) throw InvalidArgument("stream declares embeddings but a detection has none");
      records.push_back(*d.embedding);
    }
  }
  auto out = open_out(side, std::ios::out | std::ios::binary);
  write_embedding_sidecar(out, records, stream.embed_dim);
  finish(out, side);
}

void write_tracks(std::ostream& out, std::span<const TrackOutput> rows) {
  std::vector<TrackOutput> sorted(rows.begin(), rows.end());
  std::stable_sort(sorted.begin(), sorted.end(), [](const TrackOutput& a, const TrackOutput& b) {
    return a.frame != b.frame ? a.frame < b.frame : a.id < b.id;
  });
  std::string buf;
  for (const auto& r : sorted) {
    buf += std::to_string(r.frame);
    buf += ',';
    buf += std::to_string(r.id);
    for (double v : {r.box.x, r.box.y, r.box.w, r.box.h, r.score}) {
      buf += ',';
      put_fixed2(buf, v);
    }
    buf += ",-1,-1,-1\n";
  }
  out << buf;
}

void write_tracks(std::span<const TrackOutput> rows, const std::filesystem::path& path) {
  auto out = open_out(path);
  write_tracks(out, rows);
  finish(out, path);
}

std::vector<TrackOutput> parse_tracks(std::istream& in, const std::string& source) {
  std::vector<TrackOutput> rows;
  std::string line;
  std::size_t line_no = 0;
  while (next_line(in, line, line_no)) {
    const auto f = split_fields(line);
    if (f.size() < 7) {
      throw ParseError(source, line_no, "expected at least 7 fields, got " + std::to_string(f.size()));
    }
    TrackOutput r;
    r.frame = to_int(f[0], source, line_no, "frame");
    r.id = to_int(f[1], source, line_no, "id");
    r.box = {to_double(f[2], source, line_no, "x"), to_double(f[3], source, line_no, "y"),
             to_double(f[4], source, line_no, "w"), to_double(f[5], source, line_no, "h")};
    r.score = to_double(f[6], source, line_no, "conf");
    if (r.frame < 1) throw ParseError(source, line_no, "frame must be >= 1");
    if (!r.box.valid()) throw ParseError(source, line_no, "box width and height must be positive");
    rows.push_back(r);
  }
  return rows;
}

std::vector<TrackOutput> read_tracks(const std::filesystem::path& path) {
  auto in = open_in(path);
  return parse_tracks(in, path.string());
}

void write_ground_truth(std::ostream& out, std::span<const GroundTruthRow> rows) {
  std::string buf = kGroundTruthHeader;
  buf += '\n';
  for (const auto& r : rows) {
    buf += std::to_string(r.frame);
    buf += ',';
    buf += std::to_string(r.id);
    for (double v : {r.box.x, r.box.y, r.box.w, r.box.h}) {
      buf += ',';
      buf += format_shortest(v);
    }
    buf += '\n';
  }
  out << buf;
}

void write_ground_truth(std::span<const GroundTruthRow> rows, const std::filesystem::path& path) {
  auto out = open_out(path);
  write_ground_truth(out, rows);
  finish(out, path);
}

std::vector<GroundTruthRow> parse_ground_truth(std::istream& in, const std::string& source) {
  std::size_t line_no = 0;
  expect_header(in, source, kGroundTruthHeader, line_no);
  std::vector<GroundTruthRow> rows;
  std::string line;
  while (next_line(in, line, line_no)) {
    const auto f = split_fields(line);
    if (f.size() != 6) {
      throw ParseError(source, line_no, "expected 6 fields, got " + std::to_string(f.size()));
    }
    GroundTruthRow r;
    r.frame = to_int(f[0], source, line_no, "frame");
    r.id = to_int(f[1], source, line_no, "id");
    r.box = {to_double(f[2], source, line_no, "x"), to_double(f[3], source, line_no, "y"),
             to_double(f[4], source, line_no, "w"), to_double(f[5], source, line_no, "h")};
    if (r.frame < 1) throw ParseError(source, line_no, "frame must be >= 1");
    if (!r.box.valid()) throw ParseError(source, line_no, "box width and height must be positive");
    rows.push_back(r);
  }
  return rows;
}

std::vector<GroundTruthRow> read_ground_truth(const std::filesystem::path& path) {
  auto in = open_in(path);
  return parse_ground_truth(in, path.string());
}

}  // namespace lgtrack
