#include "lgtrack/simulator.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <random>

#include "lgtrack/errors.hpp"

namespace lgtrack::sim {

namespace {

// Reflects a coordinate into [lo, hi].
double reflect(double v, double lo, double hi) {
  const double span = hi - lo;
  if (span <= 0.0) return lo;
  double t = std::fmod(v - lo, 2.0 * span);
  if (t < 0.0) t += 2.0 * span;
  return lo + (t <= span ? t : 2.0 * span - t);
}

// Float32 round trip so in-memory streams match what the sidecar stores.
Embedding quantized_unit(const Eigen::VectorXd& v) {
  Eigen::VectorXd q = normalize(v).values();
  for (Eigen::Index k = 0; k < q.size(); ++k) q(k) = static_cast<double>(static_cast<float>(q(k)));
  return ensure_unit(q);
}

Eigen::VectorXd gaussian_vector(std::mt19937_64& rng, std::size_t dim, double std) {
  std::normal_distribution<double> n(0.0, std);
  Eigen::VectorXd v(static_cast<Eigen::Index>(dim));
  for (Eigen::Index k = 0; k < v.size(); ++k) v(k) = n(rng);
  return v;
}

std::vector<ObjectSpec> draw_objects(const ScenarioSpec& spec, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<ObjectSpec> out;
  for (int k = 0; k < spec.n_objects; ++k) {
    const double h = 60.0 + 100.0 * unit(rng);
    const double w = 0.4 * h;
    const double cx = w + (spec.arena_w - 2.0 * w) * unit(rng);
    const double cy = h + (spec.arena_h - 2.0 * h) * unit(rng);
    const double speed = spec.speed_max * (0.25 + 0.75 * unit(rng));
    const double angle = 2.0 * std::numbers::pi * unit(rng);
    out.push_back({BBox::from_center(cx, cy, w, h), speed * std::cos(angle), speed * std::sin(angle)});
  }
  return out;
}

}  // namespace

void ScenarioSpec::validate() const {
  auto fail = [](const std::string& what) { throw InvalidArgument("scenario: " + what); };
  if (frame_count < 1) fail("frame_count must be >= 1");
  if (objects.empty() && n_objects < 0) fail("n_objects must be >= 0");
  if (!(arena_w > 0.0 && arena_h > 0.0)) fail("arena must have positive size");
  if (speed_max < 0.0 || jitter_std < 0.0 || box_noise_std < 0.0 || embed_noise_std < 0.0 ||
      clutter_rate < 0.0 || conf_model.cls_noise_std < 0.0 || conf_model.loc_scale < 0.0 ||
      conf_model.occluded_box_noise < 0.0) {
    fail("noise parameters must be >= 0");
  }
  if (embed_dim == 0) fail("embed_dim must be >= 1");
  const int count = objects.empty() ? n_objects : static_cast<int>(objects.size());
  for (const auto& o : objects) {
    if (!o.start.valid()) fail("object start box is invalid");
  }
  for (const auto& w : occlusions) {
    if (w.object < 1 || w.object > count) fail("occlusion names unknown object " + std::to_string(w.object));
    if (w.start < 1 || w.end > frame_count || w.start > w.end) fail("occlusion window outside [1, frame_count]");
    if (w.depth < 0.0 || w.depth > 1.0 || w.ramp < 0) fail("occlusion depth must be in [0,1], ramp >= 0");
  }
}

double occlusion_depth(const ScenarioSpec& spec, int object, int frame) {
  double depth = 0.0;
  for (const auto& w : spec.occlusions) {
    if (w.object != object || frame < w.start || frame > w.end) continue;
    const int edge = std::min(frame - w.start, w.end - frame) + 1;
    const double ramp = std::min(1.0, static_cast<double>(edge) / static_cast<double>(w.ramp + 1));
    depth = std::max(depth, w.depth * ramp);
  }
  return depth;
}

Simulation simulate(const ScenarioSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  const std::vector<ObjectSpec> objects = spec.objects.empty() ? draw_objects(spec, rng) : spec.objects;
  const std::size_t dim = spec.embed_dim;
  std::vector<Eigen::VectorXd> identity;
  for (std::size_t k = 0; k < objects.size(); ++k) identity.push_back(normalize(gaussian_vector(rng, dim, 1.0)).values());
  const double per_component = spec.embed_noise_std / std::sqrt(static_cast<double>(dim));

  Simulation out;
  out.detections.embed_dim = dim;
  out.detections.frames.resize(static_cast<std::size_t>(spec.frame_count));
  out.sources.resize(static_cast<std::size_t>(spec.frame_count));

  for (int f = 1; f <= spec.frame_count; ++f) {
    auto& frame_dets = out.detections.frames[static_cast<std::size_t>(f - 1)];
    auto& frame_src = out.sources[static_cast<std::size_t>(f - 1)];
    for (std::size_t k = 0; k < objects.size(); ++k) {
      const int id = static_cast<int>(k) + 1;
      const ObjectSpec& o = objects[k];
      const double w = o.start.w;
      const double h = o.start.h;
      const double t = f - 1;
      double cx = reflect(o.start.center_x() + o.vx * t, 0.5 * w, spec.arena_w - 0.5 * w);
      double cy = reflect(o.start.center_y() + o.vy * t, 0.5 * h, spec.arena_h - 0.5 * h);
      if (spec.jitter_std > 0.0) {
        cx += spec.jitter_std * gauss(rng);
        cy += spec.jitter_std * gauss(rng);
      }
      const BBox truth = BBox::from_center(cx, cy, w, h);
      out.ground_truth.push_back({f, id, truth});

      const double depth = occlusion_depth(spec, id, f);
      if (depth > 0.0 && unit(rng) < depth) continue;

      const double box_std = (spec.box_noise_std + spec.conf_model.occluded_box_noise * depth) * h;
      Eigen::Vector4d offset = Eigen::Vector4d::Zero();
      if (box_std > 0.0) {
        for (int i = 0; i < 4; ++i) offset(i) = box_std * gauss(rng);
      }
      const double dw = std::max(1.0, w + offset(2)) - w;
      const double dh = std::max(1.0, h + offset(3)) - h;
      offset(2) = dw;
      offset(3) = dh;

      double cls_noise = 0.0;
      if (spec.conf_model.cls_noise_std > 0.0) cls_noise = std::abs(spec.conf_model.cls_noise_std * gauss(rng));
      Detection d;
      d.frame = f;
      d.bbox = BBox::from_center(cx + offset(0), cy + offset(1), w + offset(2), h + offset(3));
      d.conf.s_cls = std::clamp(1.0 - depth - cls_noise, 0.0, 1.0);
      d.conf.s_loc = std::exp(-spec.conf_model.loc_scale * offset.norm() / h);
      d.conf.s_det = d.conf.s_cls * d.conf.s_loc;

      Eigen::VectorXd feature = identity[k];
      const double noise = per_component * (1.0 + 2.0 * depth);
      if (noise > 0.0) feature += gaussian_vector(rng, dim, noise);
      d.embedding = quantized_unit(feature);
      frame_dets.push_back(std::move(d));
      frame_src.push_back(id);
    }

    if (spec.clutter_rate > 0.0) {
      std::poisson_distribution<int> count(spec.clutter_rate);
      const int n = count(rng);
      for (int c = 0; c < n; ++c) {
        const double h = 50.0 + 100.0 * unit(rng);
        const double w = 0.4 * h;
        Detection d;
        d.frame = f;
        d.bbox = BBox::from_center(w + (spec.arena_w - 2.0 * w) * unit(rng),
                                   h + (spec.arena_h - 2.0 * h) * unit(rng), w, h);
        d.conf.s_cls = 0.1 + 0.4 * unit(rng);
        d.conf.s_loc = 0.2 + 0.6 * unit(rng);
        d.conf.s_det = d.conf.s_cls * d.conf.s_loc;
        d.embedding = quantized_unit(gaussian_vector(rng, dim, 1.0));
        frame_dets.push_back(std::move(d));
        frame_src.push_back(0);
      }
    }
  }
  return out;
}

ScenarioSpec easy_scenario(std::uint64_t seed) {
  ScenarioSpec s;
  s.seed = seed;
  s.n_objects = 3;
  s.frame_count = 100;
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int k = 0; k < 3; ++k) {
    const double h = 80.0 + 40.0 * unit(rng);
    const double cy = s.arena_h * (k + 1) / 4.0;
    const double cx = 200.0 + 300.0 * unit(rng);
    s.objects.push_back({BBox::from_center(cx, cy, 0.4 * h, h), 2.0 + 4.0 * unit(rng), 0.5 * unit(rng) - 0.25});
  }
  return s;
}

ScenarioSpec hard_scenario(std::uint64_t seed) {
  ScenarioSpec s;
  s.seed = seed;
  s.n_objects = 16;
  s.frame_count = 200;
  s.arena_w = 1280.0;
  s.arena_h = 720.0;
  s.speed_max = 5.0;
  s.jitter_std = 1.0;
  s.box_noise_std = 0.04;
  s.conf_model.cls_noise_std = 0.1;
  s.embed_noise_std = 0.8;
  s.clutter_rate = 1.0;
  std::mt19937_64 rng(seed ^ 0xda942042e4dd58b5ULL);
  std::uniform_int_distribution<int> object(1, s.n_objects);
  std::uniform_int_distribution<int> start(10, s.frame_count - 40);
  std::uniform_int_distribution<int> length(5, 25);
  std::uniform_real_distribution<double> depth(0.6, 1.0);
  for (int i = 0; i < 16; ++i) {
    const int b = start(rng);
    s.occlusions.push_back({object(rng), b, b + length(rng), depth(rng), 3});
  }
  return s;
}

ScenarioSpec occlusion_scenario(std::uint64_t seed, int hidden_frames) {
  ScenarioSpec s = easy_scenario(seed);
  s.frame_count = 40 + hidden_frames + 30;
  s.arena_w = 4000.0;
  s.box_noise_std = 0.01;
  s.embed_noise_std = 0.3;
  s.occlusions.push_back({2, 41, 40 + hidden_frames, 1.0, 0});
  return s;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

template <typename T>
T parse_number(std::string_view key, std::string_view v) {
  T out{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw InvalidArgument("bad value for " + std::string(key) + ": '" + std::string(v) + "'");
  }
  return out;
}

OcclusionWindow parse_window(std::string_view v) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto colon = v.find(':', start);
    parts.push_back(trim(v.substr(start, colon - start)));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  if (parts.size() < 3 || parts.size() > 5) {
    throw InvalidArgument("occlusion must be id:start:end[:depth[:ramp]]");
  }
  OcclusionWindow w;
  w.object = parse_number<int>("occlusion", parts[0]);
  w.start = parse_number<int>("occlusion", parts[1]);
  w.end = parse_number<int>("occlusion", parts[2]);
  if (parts.size() > 3) w.depth = parse_number<double>("occlusion", parts[3]);
  if (parts.size() > 4) w.ramp = parse_number<int>("occlusion", parts[4]);
  return w;
}

}  // namespace

void set_scenario_value(ScenarioSpec& s, std::string_view key, std::string_view value) {
  if (key == "preset") {
    const std::uint64_t seed = s.seed;
    if (value == "easy") {
      s = easy_scenario(seed);
    } else if (value == "hard") {
      s = hard_scenario(seed);
    } else if (value == "occlusion") {
      s = occlusion_scenario(seed, 25);
    } else {
      throw InvalidArgument("unknown preset '" + std::string(value) + "'");
    }
  } else if (key == "seed") {
    s.seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "n_objects") {
    s.n_objects = parse_number<int>(key, value);
    s.objects.clear();
  } else if (key == "frames") {
    s.frame_count = parse_number<int>(key, value);
  } else if (key == "arena_w") {
    s.arena_w = parse_number<double>(key, value);
  } else if (key == "arena_h") {
    s.arena_h = parse_number<double>(key, value);
  } else if (key == "speed_max") {
    s.speed_max = parse_number<double>(key, value);
  } else if (key == "jitter_std") {
    s.jitter_std = parse_number<double>(key, value);
  } else if (key == "box_noise_std") {
    s.box_noise_std = parse_number<double>(key, value);
  } else if (key == "cls_noise_std") {
    s.conf_model.cls_noise_std = parse_number<double>(key, value);
  } else if (key == "loc_scale") {
    s.conf_model.loc_scale = parse_number<double>(key, value);
  } else if (key == "occluded_box_noise") {
    s.conf_model.occluded_box_noise = parse_number<double>(key, value);
  } else if (key == "embed_dim") {
    s.embed_dim = parse_number<std::size_t>(key, value);
  } else if (key == "embed_noise_std") {
    s.embed_noise_std = parse_number<double>(key, value);
  } else if (key == "clutter_rate") {
    s.clutter_rate = parse_number<double>(key, value);
  } else if (key == "occlusion") {
    s.occlusions.push_back(parse_window(value));
  } else if (key == "clear_occlusions") {
    s.occlusions.clear();
  } else {
    throw InvalidArgument("unknown scenario key '" + std::string(key) + "'");
  }
}

ScenarioSpec parse_scenario(std::istream& in, const std::string& source) {
  ScenarioSpec s;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view body = line;
    if (const auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
    body = trim(body);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) throw ParseError(source, line_no, "expected key = value");
    try {
      set_scenario_value(s, trim(body.substr(0, eq)), trim(body.substr(eq + 1)));
    } catch (const InvalidArgument& e) {
      throw ParseError(source, line_no, e.what());
    }
  }
  try {
    s.validate();
  } catch (const InvalidArgument& e) {
    throw ParseError(source, 0, e.what());
  }
  return s;
}

ScenarioSpec read_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string() + " for reading");
  return parse_scenario(in, path.string());
}

}  // namespace lgtrack::sim
