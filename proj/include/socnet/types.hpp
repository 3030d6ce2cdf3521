#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "socnet/geometry.hpp"

namespace socnet {

enum class Sex { Female, Male, Unknown };

struct Individual {
    std::string name;
    Sex sex = Sex::Unknown;
    std::optional<int> age_years;  // absent when the roster leaves it blank

    bool operator==(const Individual&) const = default;
};

struct Roster {
    std::vector<Individual> individuals;

    std::vector<std::string> names() const;
    std::optional<std::size_t> index_of(const std::string& name) const;
    bool contains(const std::string& name) const { return index_of(name).has_value(); }

    /// Names unique and non-empty.
    void validate() const;

    bool operator==(const Roster&) const = default;
};

struct GtImage {
    std::int64_t image_id = 0;
    std::string video_id;
    std::int64_t frame_index = 0;
    int width = 0;
    int height = 0;
    std::string file_name;

    bool operator==(const GtImage&) const = default;
};

struct GtAnnotation {
    std::int64_t image_id = 0;
    BBox bbox;
    std::string label;

    bool operator==(const GtAnnotation&) const = default;
};

struct GroundTruthSet {
    std::vector<GtImage> images;
    std::vector<GtAnnotation> annotations;
};

/// Per-class identity scores keyed by individual name.
using ClassScores = std::map<std::string, double>;

struct Detection {
    BBox bbox;
    double score = 0.0;
    std::optional<ClassScores> class_scores;

    bool operator==(const Detection&) const = default;
};

struct Frame {
    std::int64_t frame_index = 0;
    std::vector<Detection> detections;

    bool operator==(const Frame&) const = default;
};

struct DetectionStream {
    std::string video_id;
    std::vector<Frame> frames;  // frame_index strictly increasing

    std::size_t detection_count() const;

    bool operator==(const DetectionStream&) const = default;
};

using NamePair = std::pair<std::string, std::string>;  // first < second

NamePair make_pair_key(const std::string& a, const std::string& b);

struct LedgerEntry {
    std::string video_id;
    std::set<std::string> present;
    /// Only populated in pairwise ledgers: dyads jointly recorded in the video.
    std::set<NamePair> pairs;

    bool operator==(const LedgerEntry&) const = default;
};

/// Per-video presence records. A pairwise ledger records co-occurrence
/// explicitly through `pairs` (proximity mode); otherwise every two names
/// present in the same video co-occur.
struct OccurrenceLedger {
    std::vector<LedgerEntry> entries;
    bool pairwise = false;

    void validate(const Roster* roster = nullptr) const;

    bool operator==(const OccurrenceLedger&) const = default;
};

/// Symmetric dyadic index matrix with a zero diagonal, row-major storage.
class AssociationMatrix {
public:
    AssociationMatrix() = default;
    explicit AssociationMatrix(std::vector<std::string> names);
    AssociationMatrix(std::vector<std::string> names, std::vector<double> values);

    std::size_t size() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    const std::vector<double>& values() const { return values_; }

    double operator()(std::size_t i, std::size_t j) const { return values_[i * names_.size() + j]; }

    /// Sets both mirror cells.
    void set(std::size_t i, std::size_t j, double v);

    std::optional<std::size_t> index_of(const std::string& name) const;

    std::size_t positive_dyads() const;

    /// Throws ValidationError unless symmetric (1e-12), zero diagonal, values in [0,1].
    void validate() const;

    bool operator==(const AssociationMatrix&) const = default;

private:
    std::vector<std::string> names_;
    std::vector<double> values_;
};

}  // namespace socnet
