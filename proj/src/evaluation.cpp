#include "socnet/evaluation.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

#include "socnet/error.hpp"

namespace socnet {

namespace {

void check_threshold(double iou_threshold) {
    if (!(iou_threshold > 0.0 && iou_threshold <= 1.0)) {
        throw InputError("iou_threshold must lie in (0, 1]");
    }
}

struct Ranked {
    double score;
    std::size_t image;
    std::size_t index;
    bool hit;
};

// Every prediction across all images with its true/false positive status,
// sorted by descending score (ties: image order, then input order).
std::vector<Ranked> rank_predictions(std::span<const EvalImage> images, double iou_threshold,
                                     std::size_t& total_gts) {
    std::vector<Ranked> ranked;
    total_gts = 0;
    for (std::size_t im = 0; im < images.size(); ++im) {
        const auto& img = images[im];
        total_gts += img.gts.size();
        const auto match = match_detections(img.preds, img.gts, iou_threshold);
        std::vector<bool> hit(img.preds.size(), false);
        for (const auto& p : match.pairs) {
            hit[p.prediction_index] = true;
        }
        for (std::size_t k = 0; k < img.preds.size(); ++k) {
            ranked.push_back({img.preds[k].score, im, k, hit[k]});
        }
    }
    std::stable_sort(ranked.begin(), ranked.end(), [](const Ranked& a, const Ranked& b) {
        return a.score > b.score;
    });
    return ranked;
}

}  // namespace

MatchResult match_detections(std::span<const ScoredBox> preds, std::span<const BBox> gts, double iou_threshold) {
    check_threshold(iou_threshold);
    std::vector<std::size_t> order(preds.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return preds[a].score > preds[b].score; });

    MatchResult result;
    std::vector<bool> gt_taken(gts.size(), false);
    std::vector<bool> pred_matched(preds.size(), false);
    for (const auto p : order) {
        std::size_t best = gts.size();
        double best_iou = 0.0;
        for (std::size_t g = 0; g < gts.size(); ++g) {
            if (gt_taken[g]) {
                continue;
            }
            const double o = iou(preds[p].bbox, gts[g]);
            // strict '>' keeps the lower gt index on ties
            if (o >= iou_threshold && (best == gts.size() || o > best_iou)) {
                best = g;
                best_iou = o;
            }
        }
        if (best < gts.size()) {
            gt_taken[best] = true;
            pred_matched[p] = true;
            result.pairs.push_back({p, best, best_iou});
        }
    }
    for (std::size_t p = 0; p < preds.size(); ++p) {
        if (!pred_matched[p]) {
            result.unmatched_predictions.push_back(p);
        }
    }
    for (std::size_t g = 0; g < gts.size(); ++g) {
        if (!gt_taken[g]) {
            result.unmatched_gts.push_back(g);
        }
    }
    return result;
}

std::vector<PRPoint> pr_curve(std::span<const EvalImage> images, double iou_threshold) {
    std::size_t total_gts = 0;
    const auto ranked = rank_predictions(images, iou_threshold, total_gts);
    std::vector<PRPoint> curve;
    std::size_t tp = 0;
    std::size_t seen = 0;
    for (std::size_t k = 0; k < ranked.size(); ++k) {
        tp += ranked[k].hit ? 1 : 0;
        ++seen;
        // one point per distinct threshold: emit after the last prediction of a tie group
        if (k + 1 < ranked.size() && ranked[k + 1].score == ranked[k].score) {
            continue;
        }
        PRPoint pt;
        pt.score_threshold = ranked[k].score;
        pt.precision = static_cast<double>(tp) / static_cast<double>(seen);
        pt.recall = total_gts == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(total_gts);
        curve.push_back(pt);
    }
    return curve;
}

double average_precision(std::span<const EvalImage> images, double iou_threshold, APMethod method) {
    check_threshold(iou_threshold);
    std::size_t total_gts = 0;
    std::size_t total_preds = 0;
    for (const auto& img : images) {
        total_gts += img.gts.size();
        total_preds += img.preds.size();
    }
    if (total_gts == 0) {
        return total_preds == 0 ? 1.0 : 0.0;
    }
    const auto curve = pr_curve(images, iou_threshold);
    if (curve.empty()) {
        return 0.0;
    }
    // precision envelope: best precision at this recall or beyond
    std::vector<double> envelope(curve.size());
    double running = 0.0;
    for (std::size_t k = curve.size(); k-- > 0;) {
        running = std::max(running, curve[k].precision);
        envelope[k] = running;
    }
    if (method == APMethod::Interpolated101) {
        double sum = 0.0;
        std::size_t k = 0;
        for (int step = 0; step <= 100; ++step) {
            const double r = step / 100.0;
            while (k < curve.size() && curve[k].recall < r) {
                ++k;
            }
            if (k == curve.size()) {
                break;
            }
            sum += envelope[k];
        }
        return sum / 101.0;
    }
    double area = 0.0;
    double prev_recall = 0.0;
    for (std::size_t k = 0; k < curve.size(); ++k) {
        area += (curve[k].recall - prev_recall) * envelope[k];
        prev_recall = curve[k].recall;
    }
    return area;
}

double average_precision(std::span<const ScoredBox> preds, std::span<const BBox> gts, double iou_threshold,
                         APMethod method) {
    const EvalImage img{{preds.begin(), preds.end()}, {gts.begin(), gts.end()}};
    return average_precision(std::span<const EvalImage>(&img, 1), iou_threshold, method);
}

double false_negative_rate(std::span<const EvalImage> images, double iou_threshold, double score_threshold) {
    check_threshold(iou_threshold);
    std::size_t gts = 0;
    std::size_t missed = 0;
    for (const auto& img : images) {
        std::vector<ScoredBox> kept;
        for (const auto& p : img.preds) {
            if (p.score >= score_threshold) {
                kept.push_back(p);
            }
        }
        const auto match = match_detections(kept, img.gts, iou_threshold);
        gts += img.gts.size();
        missed += match.unmatched_gts.size();
    }
    return gts == 0 ? 0.0 : static_cast<double>(missed) / static_cast<double>(gts);
}

double false_negative_rate(std::span<const ScoredBox> preds, std::span<const BBox> gts, double iou_threshold,
                           double score_threshold) {
    const EvalImage img{{preds.begin(), preds.end()}, {gts.begin(), gts.end()}};
    return false_negative_rate(std::span<const EvalImage>(&img, 1), iou_threshold, score_threshold);
}

std::vector<std::string> ranked_labels(const ClassScores& scores) {
    std::vector<std::pair<std::string, double>> items(scores.begin(), scores.end());
    // map iteration is already lexicographic, so a stable sort keeps name order on ties
    std::stable_sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    std::vector<std::string> out;
    out.reserve(items.size());
    for (auto& [name, s] : items) {
        out.push_back(std::move(name));
    }
    return out;
}

double topk_accuracy(std::span<const IdSample> samples, int k) {
    if (k < 1) {
        throw InputError("top-k accuracy needs k >= 1");
    }
    if (samples.empty()) {
        throw InputError("top-k accuracy needs at least one sample");
    }
    std::size_t hits = 0;
    for (std::size_t s = 0; s < samples.size(); ++s) {
        const auto& sample = samples[s];
        if (sample.class_scores.empty()) {
            throw InputError("sample " + std::to_string(s) + " has no class scores");
        }
        if (!sample.class_scores.contains(sample.true_label)) {
            throw InputError("sample " + std::to_string(s) + ": true label '" + sample.true_label +
                             "' is absent from its score map");
        }
        const auto ranked = ranked_labels(sample.class_scores);
        const auto limit = std::min<std::size_t>(static_cast<std::size_t>(k), ranked.size());
        if (std::find(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(limit), sample.true_label) !=
            ranked.begin() + static_cast<std::ptrdiff_t>(limit)) {
            ++hits;
        }
    }
    return static_cast<double>(hits) / static_cast<double>(samples.size());
}

ConfusionMatrix confusion_matrix(std::span<const IdSample> samples, const Roster& roster, bool normalize) {
    ConfusionMatrix cm;
    cm.names = roster.names();
    const std::size_t n = cm.names.size();
    cm.values.assign(n * n, 0.0);
    cm.row_counts.assign(n, 0);
    for (std::size_t s = 0; s < samples.size(); ++s) {
        const auto& sample = samples[s];
        const auto truth = roster.index_of(sample.true_label);
        if (!truth) {
            throw InputError("sample " + std::to_string(s) + ": unknown true label '" + sample.true_label + "'");
        }
        if (sample.class_scores.empty()) {
            throw InputError("sample " + std::to_string(s) + " has no class scores");
        }
        for (const auto& [name, score] : sample.class_scores) {
            if (!roster.contains(name)) {
                throw InputError("sample " + std::to_string(s) + ": unknown class '" + name + "'");
            }
        }
        const auto predicted = *roster.index_of(ranked_labels(sample.class_scores).front());
        cm.values[*truth * n + predicted] += 1.0;
        ++cm.row_counts[*truth];
    }
    if (normalize) {
        for (std::size_t i = 0; i < n; ++i) {
            if (cm.row_counts[i] == 0) {
                continue;
            }
            for (std::size_t j = 0; j < n; ++j) {
                cm.values[i * n + j] /= static_cast<double>(cm.row_counts[i]);
            }
        }
    }
    return cm;
}

}  // namespace socnet
