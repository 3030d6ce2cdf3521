#pragma once

// Readers and writers for every on-disk format. All text is UTF-8; writers
// emit LF line endings and deterministic ordering so that re-runs are
// byte-identical.

#include <string>
#include <string_view>
#include <vector>

#include "socnet/association.hpp"
#include "socnet/evaluation.hpp"
#include "socnet/network.hpp"
#include "socnet/tracking.hpp"
#include "socnet/types.hpp"

namespace socnet {

// Roster CSV: name,sex,age_years (sex in female|male|unknown, "?" accepted;
// blank age allowed).
Roster parse_roster(std::string_view text);
std::string write_roster(const Roster& roster);

// COCO ground truth. Images may carry "video_id" and "frame_index"; when
// absent the video is "" and the frame index is the image id. Labels are the
// category names.
GroundTruthSet parse_ground_truth(std::string_view json_text);
std::string write_ground_truth(const GroundTruthSet& gt);

// Detection JSON-lines, one frame per line:
// {"frame_index":int,"detections":[{"bbox":[x,y,w,h],"score":f,"class_scores":{name:f}}]}
// Blank lines are skipped. When `roster` is given, class_scores keys must be
// roster names.
DetectionStream parse_detection_stream(std::string_view jsonl, const std::string& video_id,
                                       const Roster* roster = nullptr);
std::string write_detection_stream(const DetectionStream& stream);

// Track JSON-lines, one track per line.
std::vector<Track> parse_tracks(std::string_view jsonl);
std::string write_tracks(const std::vector<Track>& tracks);

// Ledger CSV. Header "video_id,present" (or "video_id,present,pairs" for a
// pairwise ledger); present = comma-joined names in one quoted cell, pairs =
// comma-joined "A|B" items.
OccurrenceLedger parse_occurrence_ledger(std::string_view text);
/// Names are written in roster order when a roster is given, else lexicographic.
std::string write_ledger(const OccurrenceLedger& ledger, const Roster* roster = nullptr);

// Association matrix CSV: header row of names (first cell ignored), then one
// row per name. Blank and 0 cells both mean no association. A table with only
// one triangle populated (or entries scattered across both) is symmetrized by
// taking the nonzero mirror cell; two differing nonzero mirrors are an error.
// Tab-separated input is accepted when the header has no commas.
AssociationMatrix parse_association_matrix(std::string_view text);
std::string write_matrix(const AssociationMatrix& m);

// NetworkReport JSON.
NetworkReport parse_report(std::string_view json_text);
std::string write_report(const NetworkReport& report);

// Counts sidecar written by `cooccur`.
std::string write_counts(const OccurrenceCounts& counts, const std::vector<std::string>& order);

// Identification samples JSON-lines: {"true_label":s,"class_scores":{name:f}}
std::vector<IdSample> parse_id_samples(std::string_view jsonl);
std::string write_id_samples(const std::vector<IdSample>& samples);

struct DetectionMetrics {
    double iou_threshold = 0.5;
    double score_threshold = 0.5;
    std::string ap_method = "interp101";
    double average_precision = 0.0;
    double false_negative_rate = 0.0;
    std::size_t predictions = 0;
    std::size_t ground_truths = 0;
    std::vector<PRPoint> curve;
};

struct IdentificationMetrics {
    std::vector<std::pair<int, double>> topk;  // (k, accuracy)
    std::size_t samples = 0;
    ConfusionMatrix confusion;
    bool normalized = true;
};

std::string write_detection_metrics(const DetectionMetrics& m);
std::string write_identification_metrics(const IdentificationMetrics& m);

/// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

std::string read_file(const std::string& path);

/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::string& path, std::string_view contents);

}  // namespace socnet
