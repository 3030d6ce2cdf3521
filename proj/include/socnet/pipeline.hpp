#pragma once

// Stage functions shared by the CLI and the Python module. Each stage is a
// pure function of its inputs and the config.

#include <cstdint>
#include <string>
#include <vector>

#include "socnet/association.hpp"
#include "socnet/config.hpp"
#include "socnet/layout.hpp"
#include "socnet/network.hpp"
#include "socnet/tracking.hpp"

namespace socnet {

/// Roster built from every class-score key in the streams, lexicographic,
/// sex unknown. Used when no roster file is supplied.
Roster roster_from_streams(const std::vector<DetectionStream>& streams);

/// build_tracks followed by fuse_identity on every track.
std::vector<Track> track_video(const DetectionStream& stream, const Roster& roster, const TrackerParams& params);

/// Groups tracks by video id in order of first appearance.
std::vector<VideoTracks> group_tracks(const std::vector<Track>& tracks);

struct AssociationStage {
    OccurrenceLedger ledger;
    std::vector<IdentityConflict> conflicts;
    OccurrenceCounts counts;
    std::vector<std::string> order;
    AssociationMatrix matrix;
};

/// Matrix rows follow the roster when one is given, else ledger_names().
AssociationStage associate(const OccurrenceLedger& ledger, const Roster* roster);
AssociationStage associate(const std::vector<VideoTracks>& videos, const Roster* roster, const PipelineConfig& config);

NetworkReport analyse(const AssociationMatrix& m, const PipelineConfig& config);

struct Rendering {
    LayoutResult layout;
    std::string svg;
    std::string dot;
};

Rendering render(const AssociationMatrix& m, const NetworkReport& report, const GemParams& gem, std::uint64_t seed);

struct PipelineResult {
    Roster roster;
    std::vector<VideoTracks> tracks;
    AssociationStage association;
    NetworkReport report;
    Rendering rendering;
};

/// Detections per video to matrix, report and drawing. Videos are tracked in
/// parallel on up to `config.jobs` threads; results keep the input order.
PipelineResult run_pipeline(const std::vector<DetectionStream>& streams, const Roster* roster,
                            const PipelineConfig& config, std::uint64_t seed);

}  // namespace socnet
