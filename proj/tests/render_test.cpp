#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "lgtrack/errors.hpp"
#include "lgtrack/render.hpp"

using namespace lgtrack;
using namespace lgtrack::render;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / ("lgtrack_render_" + std::to_string(std::random_device{}()) + name);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST(RenderTest, DrawBoxOutlinesOnly) {
  Image img(50, 50);
  draw_box(img, BBox{10, 10, 20, 20}, {255, 0, 0}, 1);
  EXPECT_EQ(img.at(10, 10), (std::array<std::uint8_t, 3>{255, 0, 0}));
  EXPECT_EQ(img.at(29, 29), (std::array<std::uint8_t, 3>{255, 0, 0}));
  EXPECT_EQ(img.at(20, 20), (std::array<std::uint8_t, 3>{0, 0, 0}));
  EXPECT_EQ(img.at(5, 5), (std::array<std::uint8_t, 3>{0, 0, 0}));
}

TEST(RenderTest, DrawingClipsAtBorders) {
  Image img(20, 20);
  EXPECT_NO_THROW(draw_box(img, BBox{-10, -10, 100, 100}, {1, 2, 3}, 3));
  EXPECT_NO_THROW(draw_number(img, 15, 15, 987654, {9, 9, 9}, 4));
}

TEST(RenderTest, NumberLeavesInk) {
  Image img(40, 20);
  draw_number(img, 1, 1, 8, {200, 200, 200}, 2);
  int lit = 0;
  for (int y = 0; y < 20; ++y)
    for (int x = 0; x < 40; ++x) lit += img.at(x, y)[0] == 200;
  EXPECT_GT(lit, 10);
}

TEST(RenderTest, ColorsAreStableAndDistinct) {
  EXPECT_EQ(id_color(5), id_color(5));
  EXPECT_NE(id_color(1), id_color(2));
}

TEST(RenderTest, PpmRoundTrip) {
  const auto dir = scratch("ppm");
  Image img(7, 3);
  img.set(2, 1, {10, 20, 30});
  write_ppm(img, dir / "a.ppm");
  const Image back = read_ppm(dir / "a.ppm");
  EXPECT_EQ(back.width, 7);
  EXPECT_EQ(back.height, 3);
  EXPECT_EQ(back.rgb, img.rgb);
  fs::remove_all(dir);
}

TEST(RenderTest, RenderTracksWritesOneImagePerFrame) {
  const auto dir = scratch("frames");
  std::vector<TrackOutput> rows{{1, 1, {5, 5, 10, 20}, 1.0}, {3, 2, {30, 5, 10, 20}, 1.0}};
  RenderOptions opts;
  opts.width = 64;
  opts.height = 48;
  EXPECT_EQ(render_tracks(rows, dir / "out", opts), 3);
  EXPECT_TRUE(fs::exists(dir / "out" / "frame_000002.ppm"));
  const Image f3 = read_ppm(dir / "out" / "frame_000003.ppm");
  EXPECT_EQ(f3.width, 64);
  EXPECT_EQ(f3.at(30, 5), id_color(2));
  fs::remove_all(dir);
}

TEST(RenderTest, ReadRejectsGarbage) {
  const auto dir = scratch("bad");
  { std::ofstream(dir / "x.ppm") << "P3\n1 1\n255\n0 0 0\n"; }
  EXPECT_THROW(read_ppm(dir / "x.ppm"), Error);
  fs::remove_all(dir);
}
