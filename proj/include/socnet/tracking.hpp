#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "socnet/geometry.hpp"
#include "socnet/types.hpp"

namespace socnet {

struct Observation {
    std::int64_t frame_index = 0;
    BBox bbox;
    double score = 0.0;
    std::optional<ClassScores> class_scores;

    bool operator==(const Observation&) const = default;
};

struct Identity {
    std::string name;
    double confidence = 0.0;

    bool operator==(const Identity&) const = default;
};

struct Track {
    std::int64_t track_id = 0;
    std::string video_id;
    std::vector<Observation> observations;  // frame_index strictly increasing
    std::optional<Identity> identity;

    std::int64_t first_frame() const { return observations.front().frame_index; }
    std::int64_t last_frame() const { return observations.back().frame_index; }

    bool operator==(const Track&) const = default;
};

struct TrackerParams {
    double iou_gate = 0.3;
    int max_gap_frames = 10;
    int min_track_len_for_id = 3;

    void validate() const;
};

/// Links detections into tracks by per-frame minimum-cost matching
/// (cost = 1 - IoU against each live track's last box). Pairs with IoU below
/// the gate are never matched. A track missing from more than
/// `max_gap_frames` consecutive frame indices is closed. Tracks are returned
/// ordered by track_id, which is assigned in order of creation.
std::vector<Track> build_tracks(const DetectionStream& stream, const TrackerParams& params);

/// Mean of the per-frame score vectors over the observations that carry
/// scores; the identity is the argmax (ties to the lexicographically smaller
/// name). Tracks shorter than `min_track_len_for_id` get no identity.
Track fuse_identity(Track track, const Roster& roster, const TrackerParams& params);

enum class LedgerMode { VideoLevel, Proximal };

struct IdentityConflict {
    std::string video_id;
    std::int64_t frame_index = 0;
    std::string name;
    std::int64_t track_a = 0;
    std::int64_t track_b = 0;

    bool operator==(const IdentityConflict&) const = default;
};

struct LedgerBuild {
    OccurrenceLedger ledger;
    std::vector<IdentityConflict> conflicts;
};

struct VideoTracks {
    std::string video_id;
    std::vector<Track> tracks;
};

/// Video-level mode: a name is present in a video iff an identified track
/// bears it. Proximal mode additionally records a dyad when some frame holds
/// both individuals' boxes in proximity, producing a pairwise ledger. Entries
/// keep the input video order.
LedgerBuild tracks_to_ledger(const std::vector<VideoTracks>& videos, LedgerMode mode, const ProximityParams& prox);

}  // namespace socnet
