#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "socnet/tracking.hpp"
#include "socnet/types.hpp"

namespace socnet {

struct NoiseParams {
    double fp_rate = 0.0;            // probability of one spurious box per frame
    double fn_rate = 0.0;            // per-frame drop probability of each true box
    double jitter_px = 0.0;          // max per-axis displacement of a true box from its anchor
    double id_confusion_rate = 0.0;  // score mass moved off the true identity

    void validate() const;
};

struct Troop {
    Roster roster;
    std::vector<int> matriline;      // parallel to roster
    AssociationMatrix latent_weights;
};

struct SynthScenario {
    Roster roster;
    std::vector<int> matriline;
    AssociationMatrix latent_weights;
    OccurrenceLedger ground_truth_ledger;
    std::map<std::string, std::vector<Track>> ground_truth_tracks;  // per video
    NoiseParams noise;
};

/// Individuals are assigned to matrilines round-robin. Within-matriline
/// latent weights are uniform on [0.3, 0.8], cross-matriline on [0, 0.1].
Troop generate_troop(std::uint64_t seed, int n_individuals, int n_matrilines);

/// One focal individual per video, chosen round-robin in roster order; every
/// other individual is present with probability equal to its latent weight
/// to the focal. Video ids are "v0001", "v0002", ...
OccurrenceLedger sample_ledger(const SynthScenario& scenario, int n_videos, std::uint64_t seed);

struct FrameSize {
    double width = 1920.0;
    double height = 1080.0;
};

struct SampledStream {
    DetectionStream stream;
    std::vector<Track> truth;  // one track per present individual, identity = true name
    std::size_t spurious = 0;  // number of injected false-positive boxes
};

/// Each present individual keeps a box anchored in its own grid cell (cells
/// never overlap, so boxes stay disjoint under jitter). Detections inside a
/// frame are emitted in roster order with spurious boxes last.
SampledStream sample_detection_stream(const SynthScenario& scenario, const std::string& video_id, int n_frames,
                                      std::uint64_t seed, FrameSize frame = {});

struct SynthConfig {
    std::uint64_t seed = 0;
    int n_individuals = 12;
    int n_matrilines = 3;
    int n_videos = 200;
    int n_frames = 30;
    NoiseParams noise;
    FrameSize frame;

    void validate() const;
};

struct GeneratedScenario {
    SynthScenario scenario;
    std::vector<DetectionStream> streams;  // ledger order
    std::size_t spurious = 0;
};

/// Troop, ledger and one detection stream per video, all derived from `seed`.
GeneratedScenario generate_scenario(const SynthConfig& config);

/// Spearman rank correlation with average ranks for ties.
double spearman_correlation(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace socnet
