#include "lgtrack/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>

#include "lgtrack/errors.hpp"
#include "lgtrack/io.hpp"

namespace lgtrack {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_double(std::string_view key, std::string_view v) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out)) {
    throw InvalidArgument("bad number for " + std::string(key) + ": '" + std::string(v) + "'");
  }
  return out;
}

int parse_int(std::string_view key, std::string_view v) {
  int out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw InvalidArgument("bad integer for " + std::string(key) + ": '" + std::string(v) + "'");
  }
  return out;
}

bool parse_bool(std::string_view key, std::string_view v) {
  if (v == "true" || v == "1" || v == "on") return true;
  if (v == "false" || v == "0" || v == "off") return false;
  throw InvalidArgument("bad boolean for " + std::string(key) + ": '" + std::string(v) + "'");
}

FeatureMode parse_mode(std::string_view v) {
  if (v == "ema") return FeatureMode::EMA;
  if (v == "da") return FeatureMode::DA;
  if (v == "sda") return FeatureMode::SDA;
  throw InvalidArgument("feature_mode must be ema, da or sda, got '" + std::string(v) + "'");
}

struct Binding {
  ConfigKey key;
  std::function<void(RunConfig&, std::string_view)> set;
  std::function<std::string(const RunConfig&)> get;
};

template <typename Field>
Binding number(std::string_view name, std::string_view doc, Field field) {
  return {{name, doc},
          [name, field](RunConfig& c, std::string_view v) { field(c) = parse_double(name, v); },
          [field](const RunConfig& c) { return format_shortest(field(c)); }};
}

template <typename Field>
Binding integer(std::string_view name, std::string_view doc, Field field) {
  return {{name, doc},
          [name, field](RunConfig& c, std::string_view v) { field(c) = parse_int(name, v); },
          [field](const RunConfig& c) { return std::to_string(field(c)); }};
}

template <typename Field>
Binding flag(std::string_view name, std::string_view doc, Field field) {
  return {{name, doc},
          [name, field](RunConfig& c, std::string_view v) { field(c) = parse_bool(name, v); },
          [field](const RunConfig& c) {
            return std::string(field(c) ? "true" : "false");
          }};
}

template <typename Field>
Binding text(std::string_view name, std::string_view doc, Field field) {
  return {{name, doc},
          [field](RunConfig& c, std::string_view v) { field(c) = std::string(v); },
          [field](const RunConfig& c) { return field(c); }};
}

const std::vector<Binding>& bindings() {
  static const std::vector<Binding> table = {
      text("input", "detection table to track", [](auto& c) -> auto& { return c.input; }),
      text("output", "MOT result file to write",
           [](auto& c) -> auto& { return c.output; }),
      // th_det drives both the noise factor and the DA feature weight.
      {{"th_det", "detection confidence threshold (default 0.6)"},
       [](RunConfig& c, std::string_view v) {
         c.tracker.noise.th_det = c.tracker.feature.th_det = parse_double("th_det", v);
       },
       [](const RunConfig& c) { return format_shortest(c.tracker.noise.th_det); }},
      integer("n_max", "frames a lost track is kept (default 30)",
              [](auto& c) -> auto& { return c.tracker.noise.n_max; }),
      number("sigma_pos", "position process noise per pixel of height (default 0.05)",
             [](auto& c) -> auto& { return c.tracker.noise.sigma_pos; }),
      number("sigma_vel", "velocity process noise per pixel of height (default 0.00625)",
             [](auto& c) -> auto& { return c.tracker.noise.sigma_vel; }),
      number("sigma_meas", "measurement noise per pixel of height (default 0.05)",
             [](auto& c) -> auto& { return c.tracker.noise.sigma_meas; }),
      number("th_high", "high-confidence band floor (default 0.6)",
             [](auto& c) -> auto& { return c.tracker.cascade.th_high; }),
      number("th_low", "detections below this are discarded (default 0.1)",
             [](auto& c) -> auto& { return c.tracker.cascade.th_low; }),
      number("iou_min", "minimum IoU for an accepted match (default 0.1)",
             [](auto& c) -> auto& { return c.tracker.cascade.iou_min; }),
      number("max_cost", "maximum fused cost for an accepted match (default 1.4)",
             [](auto& c) -> auto& { return c.tracker.cascade.max_cost; }),
      {{"feature_mode", "appearance update rule: ema, da or sda (default sda)"},
       [](RunConfig& c, std::string_view v) { c.tracker.feature.mode = parse_mode(v); },
       [](const RunConfig& c) { return std::string(to_string(c.tracker.feature.mode)); }},
      number("alpha_ema", "fixed blend weight in ema mode (default 0.9)",
             [](auto& c) -> auto& { return c.tracker.feature.alpha_ema; }),
      number("c", "lower bound of the dynamic blend weight (default 0.95)",
             [](auto& c) -> auto& { return c.tracker.feature.c; }),
      number("th_cls", "classification confidence threshold (default 0.75)",
             [](auto& c) -> auto& { return c.tracker.feature.th_cls; }),
      number("th_loc", "localization confidence threshold (default 0.55)",
             [](auto& c) -> auto& { return c.tracker.feature.th_loc; }),
      integer("n_init", "matches needed to confirm a new track (default 1)",
              [](auto& c) -> auto& { return c.tracker.n_init; }),
      flag("acmn", "adaptive measurement noise (default true)",
           [](auto& c) -> auto& { return c.tracker.acmn_enabled; }),
      flag("acm", "confidence-weighted cost matrix (default true)",
           [](auto& c) -> auto& { return c.tracker.acm_enabled; }),
      flag("nsakf", "scale noise by 1/s_det when acmn is off (default false)",
           [](auto& c) -> auto& { return c.tracker.nsa_scaling; }),
  };
  return table;
}

const Binding& find_binding(std::string_view key) {
  for (const auto& b : bindings()) {
    if (b.key.name == key) return b;
  }
  throw InvalidArgument("unknown config key '" + std::string(key) + "'");
}

}  // namespace

const std::vector<ConfigKey>& config_keys() {
  static const std::vector<ConfigKey> keys = [] {
    std::vector<ConfigKey> k;
    for (const auto& b : bindings()) k.push_back(b.key);
    return k;
  }();
  return keys;
}

void set_config_value(RunConfig& cfg, std::string_view key, std::string_view value) {
  find_binding(key).set(cfg, value);
}

std::string get_config_value(const RunConfig& cfg, std::string_view key) {
  return find_binding(key).get(cfg);
}

RunConfig parse_config(std::istream& in, const std::string& source, RunConfig base) {
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
      set_config_value(base, trim(body.substr(0, eq)), trim(body.substr(eq + 1)));
    } catch (const InvalidArgument& e) {
      throw ParseError(source, line_no, e.what());
    }
  }
  if (!base.tracker.valid()) throw ParseError(source, 0, "configuration values out of range");
  return base;
}

RunConfig read_config(const std::filesystem::path& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string() + " for reading");
  return parse_config(in, path.string(), std::move(base));
}

std::string format_config(const RunConfig& cfg) {
  std::string out;
  for (const auto& b : bindings()) {
    out += "# ";
    out += b.key.description;
    out += '\n';
    out += b.key.name;
    out += " = ";
    out += b.get(cfg);
    out += '\n';
  }
  return out;
}

void apply_override(RunConfig& cfg, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw InvalidArgument("override must look like key=value, got '" + std::string(assignment) + "'");
  }
  set_config_value(cfg, trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

}  // namespace lgtrack
