#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "socnet/geometry.hpp"
#include "socnet/types.hpp"

namespace socnet {

struct ScoredBox {
    BBox bbox;
    double score = 0.0;
};

struct MatchPair {
    std::size_t prediction_index = 0;
    std::size_t gt_index = 0;
    double iou = 0.0;
};

struct MatchResult {
    std::vector<MatchPair> pairs;
    std::vector<std::size_t> unmatched_predictions;
    std::vector<std::size_t> unmatched_gts;
};

/// Greedy COCO-style matching: predictions in descending score order (ties by
/// input order) each take the unmatched ground truth of highest IoU at or
/// above the threshold (ties to the lower gt index).
MatchResult match_detections(std::span<const ScoredBox> preds, std::span<const BBox> gts, double iou_threshold);

/// One evaluation unit (an image). Matching never crosses images.
struct EvalImage {
    std::vector<ScoredBox> preds;
    std::vector<BBox> gts;
};

struct PRPoint {
    double recall = 0.0;
    double precision = 0.0;
    double score_threshold = 0.0;
};

/// Precision/recall after each distinct score threshold, highest first.
std::vector<PRPoint> pr_curve(std::span<const EvalImage> images, double iou_threshold);

enum class APMethod {
    Interpolated101,  // COCO: mean of max precision at recall >= r, r in {0, .01, ..., 1}
    Exact,            // area under the monotone precision envelope
};

double average_precision(std::span<const EvalImage> images, double iou_threshold,
                         APMethod method = APMethod::Interpolated101);
double average_precision(std::span<const ScoredBox> preds, std::span<const BBox> gts, double iou_threshold,
                         APMethod method = APMethod::Interpolated101);

/// FN / (FN + TP) after dropping predictions scored below `score_threshold`.
double false_negative_rate(std::span<const EvalImage> images, double iou_threshold, double score_threshold = 0.5);
double false_negative_rate(std::span<const ScoredBox> preds, std::span<const BBox> gts, double iou_threshold,
                           double score_threshold = 0.5);

struct IdSample {
    ClassScores class_scores;
    std::string true_label;

    bool operator==(const IdSample&) const = default;
};

/// Names ordered by descending score, ties lexicographic.
std::vector<std::string> ranked_labels(const ClassScores& scores);

double topk_accuracy(std::span<const IdSample> samples, int k);

struct ConfusionMatrix {
    std::vector<std::string> names;
    std::vector<double> values;  // row = true, column = predicted
    std::vector<std::size_t> row_counts;

    double operator()(std::size_t i, std::size_t j) const { return values[i * names.size() + j]; }
};

ConfusionMatrix confusion_matrix(std::span<const IdSample> samples, const Roster& roster, bool normalize);

}  // namespace socnet
