#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "lgtrack/tracker.hpp"

namespace lgtrack::render {

/// 8-bit RGB raster, row-major.
struct Image {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;

  Image() = default;
  Image(int w, int h, std::uint8_t fill = 0);

  void set(int x, int y, std::array<std::uint8_t, 3> color);
  std::array<std::uint8_t, 3> at(int x, int y) const;
};

/// Binary PPM (P6, maxval 255).
Image read_ppm(const std::filesystem::path& path);
void write_ppm(const Image& img, const std::filesystem::path& path);

/// Stable color for a track id.
std::array<std::uint8_t, 3> id_color(int id);

/// Box outline of the given thickness, clipped to the image.
void draw_box(Image& img, const BBox& box, std::array<std::uint8_t, 3> color, int thickness = 2);
/// Decimal number in a 3x5 pixel font scaled by `scale`, top-left at (x, y).
void draw_number(Image& img, int x, int y, int value, std::array<std::uint8_t, 3> color, int scale = 2);

struct RenderOptions {
  int width = 1920;
  int height = 1080;
  /// Directory of frame_NNNNNN.ppm backgrounds; blank canvases when empty.
  std::filesystem::path frames_dir;
  int first_frame = 1;
  int last_frame = 0;  // 0: last frame present in the rows
};

/// Writes one frame_NNNNNN.ppm per frame into `out_dir`. Returns the number
/// of images written.
int render_tracks(std::span<const TrackOutput> rows, const std::filesystem::path& out_dir,
                  const RenderOptions& opts);

}  // namespace lgtrack::render
