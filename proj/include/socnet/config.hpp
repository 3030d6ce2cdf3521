#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "socnet/error.hpp"
#include "socnet/evaluation.hpp"
#include "socnet/geometry.hpp"
#include "socnet/layout.hpp"
#include "socnet/network.hpp"
#include "socnet/synth.hpp"
#include "socnet/tracking.hpp"

namespace socnet {

/// Unknown key, malformed value or out-of-range value in a config source.
class ConfigError : public ValidationError {
public:
    ConfigError(std::string key, const std::string& what)
        : ValidationError(key + ": " + what), key_(std::move(key)) {}

    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

struct PipelineConfig {
    TrackerParams tracker;
    ProximityParams proximity;
    LedgerMode association_mode = LedgerMode::VideoLevel;
    EfficiencyMode efficiency = EfficiencyMode::Binary;  // measure echoed in command summaries
    StrengthConvention strength = StrengthConvention::InPlusOut;
    EigenOptions eigen;
    GemParams gem;
    std::optional<std::uint64_t> seed;

    double eval_iou_threshold = 0.5;
    double eval_score_threshold = 0.5;
    APMethod ap_method = APMethod::Interpolated101;
    std::vector<int> topk = {1, 5};
    bool confusion_normalize = true;

    SynthConfig synth;

    std::string roster_path;
    std::string out_dir;
    int jobs = 1;

    /// Runs every component check; failures are ConfigError naming the key.
    void validate() const;
};

struct ConfigKey {
    std::string name;
    std::string type;  // int, uint, float, bool, enum(a|b), int-list, path
    std::string help;
};

/// Every accepted key, in documentation order.
const std::vector<ConfigKey>& config_keys();

/// Applies one `key = value` assignment. Throws ConfigError for an unknown
/// key or a value that does not parse as the key's type.
void apply_config_value(PipelineConfig& config, std::string_view key, std::string_view value);

/// Flat text: one `key = value` per line, `#` starts a comment line, blank
/// lines ignored. Absent keys keep their defaults. Does not validate ranges.
PipelineConfig parse_config(std::string_view text, PipelineConfig base = {});

/// Current value of a key in config syntax.
std::string config_value(const PipelineConfig& config, std::string_view key);

PipelineConfig load_config(const std::string& path);

}  // namespace socnet
