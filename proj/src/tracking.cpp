#include "socnet/tracking.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "assignment.hpp"
#include "socnet/error.hpp"

namespace socnet {

void TrackerParams::validate() const {
    if (!(iou_gate > 0.0 && iou_gate <= 1.0)) {
        throw InputError("tracker.iou_gate must lie in (0, 1]");
    }
    if (max_gap_frames < 0) {
        throw InputError("tracker.max_gap_frames must be >= 0");
    }
    if (min_track_len_for_id < 1) {
        throw InputError("tracker.min_track_len_for_id must be >= 1");
    }
}

std::vector<Track> build_tracks(const DetectionStream& stream, const TrackerParams& params) {
    params.validate();
    std::vector<Track> open;
    std::vector<Track> closed;
    std::int64_t next_id = 0;
    std::int64_t prev_frame = 0;
    bool first = true;

    for (const auto& frame : stream.frames) {
        if (!first && frame.frame_index <= prev_frame) {
            throw InputError("detection stream '" + stream.video_id + "': frame_index must strictly increase");
        }
        first = false;
        prev_frame = frame.frame_index;

        // close tracks that have been unmatched for too many frames
        auto stale = std::stable_partition(open.begin(), open.end(), [&](const Track& t) {
            return frame.frame_index - t.last_frame() - 1 <= params.max_gap_frames;
        });
        std::move(stale, open.end(), std::back_inserter(closed));
        open.erase(stale, open.end());

        const auto& dets = frame.detections;
        for (const auto& d : dets) {
            require_valid(d.bbox, "detection");
        }
        const std::size_t rows = open.size();
        const std::size_t cols = dets.size();
        // exceeds any total of real costs (each <= 1), so allowed pairs are maximized first
        const double forbidden = 2.0 * static_cast<double>(std::min(rows, cols) + 1);
        std::vector<double> cost(rows * cols, forbidden);
        for (std::size_t t = 0; t < rows; ++t) {
            const BBox& last = open[t].observations.back().bbox;
            for (std::size_t d = 0; d < cols; ++d) {
                const double o = iou(last, dets[d].bbox);
                if (o >= params.iou_gate) {
                    cost[t * cols + d] = 1.0 - o;
                }
            }
        }
        const auto assignment = detail::min_cost_assignment(cost, rows, cols);
        std::vector<bool> used(cols, false);
        for (std::size_t t = 0; t < rows; ++t) {
            const long d = assignment[t];
            if (d < 0 || cost[t * cols + static_cast<std::size_t>(d)] >= forbidden) {
                continue;
            }
            const auto& det = dets[static_cast<std::size_t>(d)];
            open[t].observations.push_back({frame.frame_index, det.bbox, det.score, det.class_scores});
            used[static_cast<std::size_t>(d)] = true;
        }
        for (std::size_t d = 0; d < cols; ++d) {
            if (used[d]) {
                continue;
            }
            Track t;
            t.track_id = next_id++;
            t.video_id = stream.video_id;
            t.observations.push_back({frame.frame_index, dets[d].bbox, dets[d].score, dets[d].class_scores});
            open.push_back(std::move(t));
        }
    }
    std::move(open.begin(), open.end(), std::back_inserter(closed));
    std::sort(closed.begin(), closed.end(), [](const Track& a, const Track& b) { return a.track_id < b.track_id; });
    return closed;
}

Track fuse_identity(Track track, const Roster& roster, const TrackerParams& params) {
    params.validate();
    track.identity.reset();
    std::map<std::string, double> sums;
    std::size_t scored = 0;
    for (const auto& ob : track.observations) {
        if (!ob.class_scores) {
            continue;
        }
        ++scored;
        for (const auto& [name, s] : *ob.class_scores) {
            if (!roster.contains(name)) {
                throw InputError("track " + std::to_string(track.track_id) + ": class score for unknown individual '" +
                                 name + "'");
            }
            sums[name] += s;
        }
    }
    if (track.observations.size() < static_cast<std::size_t>(params.min_track_len_for_id) || scored == 0) {
        return track;
    }
    const std::string* best = nullptr;
    double best_sum = -1.0;
    for (const auto& [name, sum] : sums) {
        if (sum > best_sum) {  // map order: lexicographically smaller name wins ties
            best = &name;
            best_sum = sum;
        }
    }
    if (best) {
        track.identity = Identity{*best, best_sum / static_cast<double>(scored)};
    }
    return track;
}

LedgerBuild tracks_to_ledger(const std::vector<VideoTracks>& videos, LedgerMode mode, const ProximityParams& prox) {
    if (mode == LedgerMode::Proximal) {
        prox.validate();
    }
    LedgerBuild out;
    out.ledger.pairwise = mode == LedgerMode::Proximal;
    for (const auto& video : videos) {
        LedgerEntry entry;
        entry.video_id = video.video_id;
        // frame -> (name, box, track_id) of identified observations
        std::map<std::int64_t, std::vector<std::tuple<std::string, BBox, std::int64_t>>> by_frame;
        for (const auto& t : video.tracks) {
            if (!t.identity) {
                continue;
            }
            entry.present.insert(t.identity->name);
            for (const auto& ob : t.observations) {
                by_frame[ob.frame_index].emplace_back(t.identity->name, ob.bbox, t.track_id);
            }
        }
        std::set<std::tuple<std::string, std::int64_t, std::int64_t>> reported;
        for (const auto& [frame, items] : by_frame) {
            for (std::size_t a = 0; a < items.size(); ++a) {
                for (std::size_t b = a + 1; b < items.size(); ++b) {
                    const auto& [name_a, box_a, id_a] = items[a];
                    const auto& [name_b, box_b, id_b] = items[b];
                    if (name_a == name_b) {
                        const auto key = std::make_tuple(name_a, std::min(id_a, id_b), std::max(id_a, id_b));
                        if (reported.insert(key).second) {
                            out.conflicts.push_back({video.video_id, frame, name_a, std::get<1>(key),
                                                     std::get<2>(key)});
                        }
                        continue;
                    }
                    if (mode == LedgerMode::Proximal && is_proximal(box_a, box_b, prox)) {
                        entry.pairs.insert(make_pair_key(name_a, name_b));
                    }
                }
            }
        }
        out.ledger.entries.push_back(std::move(entry));
    }
    out.ledger.validate();
    return out;
}

}  // namespace socnet
