#include "lgtrack/render.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <string>

#include "lgtrack/errors.hpp"

namespace lgtrack::render {

namespace {

// 3x5 glyphs for 0-9, one row per 3-bit mask (MSB = left).
constexpr std::array<std::array<std::uint8_t, 5>, 10> kDigits = {{
    {7, 5, 5, 5, 7},
    {2, 6, 2, 2, 7},
    {7, 1, 7, 4, 7},
    {7, 1, 7, 1, 7},
    {5, 5, 7, 1, 1},
    {7, 4, 7, 1, 7},
    {7, 4, 7, 5, 7},
    {7, 1, 1, 1, 1},
    {7, 5, 7, 5, 7},
    {7, 5, 7, 1, 7},
}};

std::string frame_name(int frame) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "frame_%06d.ppm", frame);
  return buf;
}

// Next whitespace-separated PPM header token, skipping comments.
std::string header_token(std::istream& in) {
  std::string tok;
  char c = 0;
  while (in.get(c)) {
    if (c == '#') {
      std::string ignored;
      std::getline(in, ignored);
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      tok += c;
      break;
    }
  }
  while (in.get(c) && !std::isspace(static_cast<unsigned char>(c))) tok += c;
  return tok;
}

}  // namespace

Image::Image(int w, int h, std::uint8_t fill)
    : width(w), height(h), rgb(static_cast<std::size_t>(w) * static_cast<std::size_t>(h) * 3, fill) {}

void Image::set(int x, int y, std::array<std::uint8_t, 3> color) {
  if (x < 0 || y < 0 || x >= width || y >= height) return;
  const std::size_t o = (static_cast<std::size_t>(y) * width + x) * 3;
  rgb[o] = color[0];
  rgb[o + 1] = color[1];
  rgb[o + 2] = color[2];
}

std::array<std::uint8_t, 3> Image::at(int x, int y) const {
  const std::size_t o = (static_cast<std::size_t>(y) * width + x) * 3;
  return {rgb[o], rgb[o + 1], rgb[o + 2]};
}

Image read_ppm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string() + " for reading");
  if (header_token(in) != "P6") throw ParseError(path.string(), 0, "not a binary PPM (P6)");
  int w = 0, h = 0, maxval = 0;
  try {
    w = std::stoi(header_token(in));
    h = std::stoi(header_token(in));
    maxval = std::stoi(header_token(in));
  } catch (const std::exception&) {
    throw ParseError(path.string(), 0, "malformed PPM header");
  }
  if (w <= 0 || h <= 0 || maxval != 255) throw ParseError(path.string(), 0, "unsupported PPM geometry");
  Image img(w, h);
  if (!in.read(reinterpret_cast<char*>(img.rgb.data()), static_cast<std::streamsize>(img.rgb.size()))) {
    throw ParseError(path.string(), 0, "truncated PPM pixel data");
  }
  return img;
}

void write_ppm(const Image& img, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << "P6\n" << img.width << ' ' << img.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(img.rgb.data()), static_cast<std::streamsize>(img.rgb.size()));
  if (!out) throw Error("failed writing " + path.string());
}

std::array<std::uint8_t, 3> id_color(int id) {
  // Golden-ratio hue walk, fixed saturation and value.
  const double hue = std::fmod(static_cast<double>(id) * 0.618033988749895, 1.0) * 6.0;
  const int sector = static_cast<int>(hue);
  const double f = hue - sector;
  const auto hi = static_cast<std::uint8_t>(240);
  const auto lo = static_cast<std::uint8_t>(60);
  const auto up = static_cast<std::uint8_t>(lo + f * (hi - lo));
  const auto down = static_cast<std::uint8_t>(hi - f * (hi - lo));
  switch (sector % 6) {
    case 0:
      return {hi, up, lo};
    case 1:
      return {down, hi, lo};
    case 2:
      return {lo, hi, up};
    case 3:
      return {lo, down, hi};
    case 4:
      return {up, lo, hi};
    default:
      return {hi, lo, down};
  }
}

void draw_box(Image& img, const BBox& box, std::array<std::uint8_t, 3> color, int thickness) {
  const int x0 = static_cast<int>(std::lround(box.x));
  const int y0 = static_cast<int>(std::lround(box.y));
  const int x1 = static_cast<int>(std::lround(box.x + box.w)) - 1;
  const int y1 = static_cast<int>(std::lround(box.y + box.h)) - 1;
  for (int t = 0; t < thickness; ++t) {
    for (int x = x0; x <= x1; ++x) {
      img.set(x, y0 + t, color);
      img.set(x, y1 - t, color);
    }
    for (int y = y0; y <= y1; ++y) {
      img.set(x0 + t, y, color);
      img.set(x1 - t, y, color);
    }
  }
}

void draw_number(Image& img, int x, int y, int value, std::array<std::uint8_t, 3> color, int scale) {
  const std::string digits = std::to_string(value);
  int cursor = x;
  for (char ch : digits) {
    if (ch < '0' || ch > '9') {
      cursor += 4 * scale;
      continue;
    }
    const auto& glyph = kDigits[static_cast<std::size_t>(ch - '0')];
    for (int row = 0; row < 5; ++row) {
      for (int col = 0; col < 3; ++col) {
        if (!(glyph[row] & (4 >> col))) continue;
        for (int dy = 0; dy < scale; ++dy) {
          for (int dx = 0; dx < scale; ++dx) img.set(cursor + col * scale + dx, y + row * scale + dy, color);
        }
      }
    }
    cursor += 4 * scale;
  }
}

int render_tracks(std::span<const TrackOutput> rows, const std::filesystem::path& out_dir,
                  const RenderOptions& opts) {
  std::map<int, std::vector<const TrackOutput*>> frames;
  int last = opts.last_frame;
  for (const auto& r : rows) {
    frames[r.frame].push_back(&r);
    if (opts.last_frame == 0) last = std::max(last, r.frame);
  }
  std::filesystem::create_directories(out_dir);
  int written = 0;
  for (int f = opts.first_frame; f <= last; ++f) {
    Image img = opts.frames_dir.empty() ? Image(opts.width, opts.height, 0)
                                        : read_ppm(opts.frames_dir / frame_name(f));
    if (const auto it = frames.find(f); it != frames.end()) {
      for (const TrackOutput* r : it->second) {
        const auto color = id_color(r->id);
        draw_box(img, r->box, color);
        draw_number(img, static_cast<int>(std::lround(r->box.x)) + 3,
                    static_cast<int>(std::lround(r->box.y)) + 4, r->id, color);
      }
    }
    write_ppm(img, out_dir / frame_name(f));
    ++written;
  }
  return written;
}

}  // namespace lgtrack::render
