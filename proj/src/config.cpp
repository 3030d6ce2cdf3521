#include "socnet/config.hpp"

#include <charconv>
#include <cmath>
#include <functional>

#include "socnet/ingest.hpp"

namespace socnet {

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <typename T>
T parse_integer(std::string_view key, std::string_view v) {
    T out{};
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size() || v.empty()) {
        throw ConfigError(std::string(key), "expected an integer, got '" + std::string(v) + "'");
    }
    return out;
}

double parse_float(std::string_view key, std::string_view v) {
    double out = 0.0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size() || v.empty() || !std::isfinite(out)) {
        throw ConfigError(std::string(key), "expected a number, got '" + std::string(v) + "'");
    }
    return out;
}

bool parse_bool(std::string_view key, std::string_view v) {
    if (v == "true" || v == "1") {
        return true;
    }
    if (v == "false" || v == "0") {
        return false;
    }
    throw ConfigError(std::string(key), "expected true or false, got '" + std::string(v) + "'");
}

std::vector<int> parse_int_list(std::string_view key, std::string_view v) {
    std::vector<int> out;
    while (!v.empty()) {
        const auto comma = v.find(',');
        out.push_back(parse_integer<int>(key, trim(v.substr(0, comma))));
        if (comma == std::string_view::npos) {
            break;
        }
        v.remove_prefix(comma + 1);
    }
    if (out.empty()) {
        throw ConfigError(std::string(key), "expected a comma-separated list of integers");
    }
    return out;
}

std::string fmt(double v) { return format_double(v); }

struct Entry {
    ConfigKey doc;
    std::function<void(PipelineConfig&, std::string_view)> set;
    std::function<std::string(const PipelineConfig&)> get;
};

#define SOCNET_FLOAT(KEY, FIELD, HELP)                                                                  \
    Entry {                                                                                              \
        {KEY, "float", HELP}, [](PipelineConfig& c, std::string_view v) { c.FIELD = parse_float(KEY, v); }, \
            [](const PipelineConfig& c) { return fmt(c.FIELD); }                                        \
    }
#define SOCNET_INT(KEY, FIELD, HELP)                                                                          \
    Entry {                                                                                                    \
        {KEY, "int", HELP}, [](PipelineConfig& c, std::string_view v) { c.FIELD = parse_integer<int>(KEY, v); }, \
            [](const PipelineConfig& c) { return std::to_string(c.FIELD); }                                   \
    }

const std::vector<Entry>& entries() {
    static const std::vector<Entry> table = {
        SOCNET_FLOAT("tracker.iou_gate", tracker.iou_gate, "minimum IoU for linking a detection to a track"),
        SOCNET_INT("tracker.max_gap_frames", tracker.max_gap_frames, "frames a track may go unseen before closing"),
        SOCNET_INT("tracker.min_track_len_for_id", tracker.min_track_len_for_id,
                   "shortest track that receives an identity"),
        SOCNET_FLOAT("proximity.max_gap", proximity.max_gap, "center distance limit in mean face heights"),
        SOCNET_FLOAT("proximity.max_depth_disparity", proximity.max_depth_disparity,
                     "limit on |ln(h_a/h_b)| for proximal faces"),
        Entry{{"association.mode", "enum(video|proximal)", "sampling unit for co-occurrence"},
              [](PipelineConfig& c, std::string_view v) {
                  if (v == "video") {
                      c.association_mode = LedgerMode::VideoLevel;
                  } else if (v == "proximal") {
                      c.association_mode = LedgerMode::Proximal;
                  } else {
                      throw ConfigError("association.mode", "expected video or proximal, got '" + std::string(v) + "'");
                  }
              },
              [](const PipelineConfig& c) {
                  return std::string(c.association_mode == LedgerMode::VideoLevel ? "video" : "proximal");
              }},
        Entry{{"network.efficiency", "enum(binary|weighted)", "efficiency echoed in the command summary"},
              [](PipelineConfig& c, std::string_view v) {
                  if (v == "binary") {
                      c.efficiency = EfficiencyMode::Binary;
                  } else if (v == "weighted") {
                      c.efficiency = EfficiencyMode::Weighted;
                  } else {
                      throw ConfigError("network.efficiency", "expected binary or weighted, got '" + std::string(v) + "'");
                  }
              },
              [](const PipelineConfig& c) {
                  return std::string(c.efficiency == EfficiencyMode::Binary ? "binary" : "weighted");
              }},
        Entry{{"network.strength", "enum(in_plus_out|row_sum)", "strength convention"},
              [](PipelineConfig& c, std::string_view v) {
                  if (v == "in_plus_out") {
                      c.strength = StrengthConvention::InPlusOut;
                  } else if (v == "row_sum") {
                      c.strength = StrengthConvention::RowSum;
                  } else {
                      throw ConfigError("network.strength", "expected in_plus_out or row_sum, got '" + std::string(v) + "'");
                  }
              },
              [](const PipelineConfig& c) {
                  return std::string(c.strength == StrengthConvention::InPlusOut ? "in_plus_out" : "row_sum");
              }},
        SOCNET_FLOAT("network.eigen_tol", eigen.tol, "power iteration stopping tolerance"),
        SOCNET_INT("network.eigen_max_iter", eigen.max_iter, "power iteration cap"),
        SOCNET_FLOAT("gem.desired_edge_length", gem.desired_edge_length, "spring rest length in px"),
        SOCNET_INT("gem.max_rounds_factor", gem.max_rounds_factor, "round cap per vertex"),
        SOCNET_FLOAT("gem.initial_temperature", gem.initial_temperature, "starting vertex temperature"),
        SOCNET_FLOAT("gem.max_temperature", gem.max_temperature, "temperature ceiling"),
        SOCNET_FLOAT("gem.gravity", gem.gravity, "pull toward the barycenter"),
        SOCNET_FLOAT("gem.stop_temperature_fraction", gem.stop_temperature_fraction,
                     "stop when mean temperature < fraction * edge length"),
        Entry{{"seed", "uint", "seed for layout and synth"},
              [](PipelineConfig& c, std::string_view v) { c.seed = parse_integer<std::uint64_t>("seed", v); },
              [](const PipelineConfig& c) { return c.seed ? std::to_string(*c.seed) : std::string(); }},
        SOCNET_FLOAT("eval.iou_threshold", eval_iou_threshold, "IoU needed for a true positive"),
        SOCNET_FLOAT("eval.score_threshold", eval_score_threshold, "score cut used by the false-negative rate"),
        Entry{{"eval.ap_method", "enum(interp101|exact)", "average precision integration"},
              [](PipelineConfig& c, std::string_view v) {
                  if (v == "interp101") {
                      c.ap_method = APMethod::Interpolated101;
                  } else if (v == "exact") {
                      c.ap_method = APMethod::Exact;
                  } else {
                      throw ConfigError("eval.ap_method", "expected interp101 or exact, got '" + std::string(v) + "'");
                  }
              },
              [](const PipelineConfig& c) {
                  return std::string(c.ap_method == APMethod::Interpolated101 ? "interp101" : "exact");
              }},
        Entry{{"eval.topk", "int-list", "k values for top-k accuracy"},
              [](PipelineConfig& c, std::string_view v) { c.topk = parse_int_list("eval.topk", v); },
              [](const PipelineConfig& c) {
                  std::string s;
                  for (std::size_t i = 0; i < c.topk.size(); ++i) {
                      s += (i ? "," : "") + std::to_string(c.topk[i]);
                  }
                  return s;
              }},
        Entry{{"eval.confusion_normalize", "bool", "row-normalize the confusion matrix"},
              [](PipelineConfig& c, std::string_view v) {
                  c.confusion_normalize = parse_bool("eval.confusion_normalize", v);
              },
              [](const PipelineConfig& c) { return std::string(c.confusion_normalize ? "true" : "false"); }},
        SOCNET_INT("synth.n_individuals", synth.n_individuals, "troop size"),
        SOCNET_INT("synth.n_matrilines", synth.n_matrilines, "number of matrilines"),
        SOCNET_INT("synth.n_videos", synth.n_videos, "videos in the ledger"),
        SOCNET_INT("synth.n_frames", synth.n_frames, "frames per detection stream"),
        SOCNET_FLOAT("synth.fp_rate", synth.noise.fp_rate, "spurious box probability per frame"),
        SOCNET_FLOAT("synth.fn_rate", synth.noise.fn_rate, "per-frame drop probability of a true box"),
        SOCNET_FLOAT("synth.jitter_px", synth.noise.jitter_px, "max per-axis box displacement"),
        SOCNET_FLOAT("synth.id_confusion_rate", synth.noise.id_confusion_rate, "score mass off the true identity"),
        SOCNET_FLOAT("synth.frame_width", synth.frame.width, "frame width in px"),
        SOCNET_FLOAT("synth.frame_height", synth.frame.height, "frame height in px"),
        Entry{{"io.roster", "path", "roster CSV"},
              [](PipelineConfig& c, std::string_view v) { c.roster_path = std::string(v); },
              [](const PipelineConfig& c) { return c.roster_path; }},
        Entry{{"io.out_dir", "path", "output directory"},
              [](PipelineConfig& c, std::string_view v) { c.out_dir = std::string(v); },
              [](const PipelineConfig& c) { return c.out_dir; }},
        SOCNET_INT("jobs", jobs, "videos processed in parallel"),
    };
    return table;
}

#undef SOCNET_FLOAT
#undef SOCNET_INT

const Entry& find_entry(std::string_view key) {
    for (const auto& e : entries()) {
        if (e.doc.name == key) {
            return e;
        }
    }
    throw ConfigError(std::string(key), "unknown configuration key");
}

void require(bool ok, const char* key, const char* what) {
    if (!ok) {
        throw ConfigError(key, what);
    }
}

bool positive(double v) { return v > 0.0 && std::isfinite(v); }
bool unit(double v) { return v >= 0.0 && v <= 1.0; }

}  // namespace

const std::vector<ConfigKey>& config_keys() {
    static const std::vector<ConfigKey> keys = [] {
        std::vector<ConfigKey> out;
        for (const auto& e : entries()) {
            out.push_back(e.doc);
        }
        return out;
    }();
    return keys;
}

void apply_config_value(PipelineConfig& config, std::string_view key, std::string_view value) {
    find_entry(key).set(config, trim(value));
}

std::string config_value(const PipelineConfig& config, std::string_view key) { return find_entry(key).get(config); }

PipelineConfig parse_config(std::string_view text, PipelineConfig base) {
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        const auto line = trim(text.substr(0, nl));
        text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
        ++line_no;
        if (line.empty() || line.front() == '#') {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(std::string(line), "line " + std::to_string(line_no) + ": expected key = value");
        }
        apply_config_value(base, trim(line.substr(0, eq)), line.substr(eq + 1));
    }
    return base;
}

PipelineConfig load_config(const std::string& path) { return parse_config(read_file(path)); }

void PipelineConfig::validate() const {
    require(tracker.iou_gate > 0.0 && tracker.iou_gate <= 1.0, "tracker.iou_gate", "must lie in (0, 1]");
    require(tracker.max_gap_frames >= 0, "tracker.max_gap_frames", "must be >= 0");
    require(tracker.min_track_len_for_id >= 1, "tracker.min_track_len_for_id", "must be >= 1");
    require(positive(proximity.max_gap), "proximity.max_gap", "must be > 0");
    require(proximity.max_depth_disparity >= 0.0 && std::isfinite(proximity.max_depth_disparity),
            "proximity.max_depth_disparity", "must be >= 0");
    require(positive(eigen.tol), "network.eigen_tol", "must be > 0");
    require(eigen.max_iter >= 1, "network.eigen_max_iter", "must be >= 1");
    require(positive(gem.desired_edge_length), "gem.desired_edge_length", "must be > 0");
    require(gem.max_rounds_factor >= 1, "gem.max_rounds_factor", "must be >= 1");
    require(positive(gem.initial_temperature), "gem.initial_temperature", "must be > 0");
    require(positive(gem.max_temperature), "gem.max_temperature", "must be > 0");
    require(positive(gem.gravity), "gem.gravity", "must be > 0");
    require(positive(gem.stop_temperature_fraction), "gem.stop_temperature_fraction", "must be > 0");
    require(eval_iou_threshold > 0.0 && eval_iou_threshold <= 1.0, "eval.iou_threshold", "must lie in (0, 1]");
    require(unit(eval_score_threshold), "eval.score_threshold", "must lie in [0, 1]");
    for (const int k : topk) {
        require(k >= 1, "eval.topk", "every k must be >= 1");
    }
    require(synth.n_individuals >= 2, "synth.n_individuals", "must be >= 2");
    require(synth.n_matrilines >= 1 && synth.n_matrilines <= synth.n_individuals, "synth.n_matrilines",
            "must lie in [1, synth.n_individuals]");
    require(synth.n_videos >= 1, "synth.n_videos", "must be >= 1");
    require(synth.n_frames >= 0, "synth.n_frames", "must be >= 0");
    require(unit(synth.noise.fp_rate), "synth.fp_rate", "must lie in [0, 1]");
    require(unit(synth.noise.fn_rate), "synth.fn_rate", "must lie in [0, 1]");
    require(synth.noise.jitter_px >= 0.0, "synth.jitter_px", "must be >= 0");
    require(unit(synth.noise.id_confusion_rate), "synth.id_confusion_rate", "must lie in [0, 1]");
    require(positive(synth.frame.width), "synth.frame_width", "must be > 0");
    require(positive(synth.frame.height), "synth.frame_height", "must be > 0");
    require(jobs >= 1, "jobs", "must be >= 1");
}

}  // namespace socnet
