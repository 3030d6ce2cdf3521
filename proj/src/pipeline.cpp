#include "socnet/pipeline.hpp"

#include <atomic>
#include <exception>
#include <map>
#include <set>
#include <thread>

namespace socnet {

Roster roster_from_streams(const std::vector<DetectionStream>& streams) {
    std::set<std::string> names;
    for (const auto& s : streams) {
        for (const auto& f : s.frames) {
            for (const auto& d : f.detections) {
                if (d.class_scores) {
                    for (const auto& [name, _] : *d.class_scores) {
                        names.insert(name);
                    }
                }
            }
        }
    }
    Roster r;
    for (const auto& n : names) {
        r.individuals.push_back(Individual{n, Sex::Unknown, std::nullopt});
    }
    return r;
}

std::vector<Track> track_video(const DetectionStream& stream, const Roster& roster, const TrackerParams& params) {
    auto tracks = build_tracks(stream, params);
    for (auto& t : tracks) {
        t = fuse_identity(std::move(t), roster, params);
    }
    return tracks;
}

std::vector<VideoTracks> group_tracks(const std::vector<Track>& tracks) {
    std::vector<VideoTracks> out;
    std::map<std::string, std::size_t> slot;
    for (const auto& t : tracks) {
        auto [it, fresh] = slot.emplace(t.video_id, out.size());
        if (fresh) {
            out.push_back(VideoTracks{t.video_id, {}});
        }
        out[it->second].tracks.push_back(t);
    }
    return out;
}

AssociationStage associate(const OccurrenceLedger& ledger, const Roster* roster) {
    ledger.validate(roster);
    AssociationStage out;
    out.ledger = ledger;
    out.counts = count_occurrences(ledger);
    out.order = roster ? roster->names() : ledger_names(ledger);
    out.matrix = simple_ratio_matrix(out.counts, out.order);
    return out;
}

AssociationStage associate(const std::vector<VideoTracks>& videos, const Roster* roster, const PipelineConfig& config) {
    auto build = tracks_to_ledger(videos, config.association_mode, config.proximity);
    auto out = associate(build.ledger, roster);
    out.conflicts = std::move(build.conflicts);
    return out;
}

NetworkReport analyse(const AssociationMatrix& m, const PipelineConfig& config) {
    ReportOptions opts;
    opts.strength = config.strength;
    opts.eigen = config.eigen;
    return network_report(m, opts);
}

Rendering render(const AssociationMatrix& m, const NetworkReport& report, const GemParams& gem, std::uint64_t seed) {
    Rendering r;
    r.layout = gem_layout(m, gem, seed);
    r.svg = render_svg(m, r.layout, report);
    r.dot = render_dot(m, report);
    return r;
}

PipelineResult run_pipeline(const std::vector<DetectionStream>& streams, const Roster* roster,
                            const PipelineConfig& config, std::uint64_t seed) {
    config.validate();
    PipelineResult out;
    out.roster = roster ? *roster : roster_from_streams(streams);

    const std::size_t n = streams.size();
    out.tracks.resize(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                out.tracks[i] = VideoTracks{streams[i].video_id, track_video(streams[i], out.roster, config.tracker)};
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const auto threads = std::min<std::size_t>(static_cast<std::size_t>(config.jobs), n);
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
    }
    // report the first failing video in input order, whatever finished first
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }

    out.association = associate(out.tracks, roster, config);
    out.report = analyse(out.association.matrix, config);
    out.rendering = render(out.association.matrix, out.report, config.gem, seed);
    return out;
}

}  // namespace socnet
