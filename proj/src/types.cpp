#include "socnet/types.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "socnet/error.hpp"

namespace socnet {

std::vector<std::string> Roster::names() const {
    std::vector<std::string> out;
    out.reserve(individuals.size());
    for (const auto& ind : individuals) {
        out.push_back(ind.name);
    }
    return out;
}

std::optional<std::size_t> Roster::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < individuals.size(); ++i) {
        if (individuals[i].name == name) {
            return i;
        }
    }
    return std::nullopt;
}

void Roster::validate() const {
    std::unordered_set<std::string> seen;
    for (const auto& ind : individuals) {
        if (ind.name.empty()) {
            throw ValidationError("roster: empty individual name");
        }
        if (!seen.insert(ind.name).second) {
            throw ValidationError("roster: duplicate individual '" + ind.name + "'");
        }
        if (ind.age_years && *ind.age_years < 0) {
            throw ValidationError("roster: negative age for '" + ind.name + "'");
        }
    }
}

std::size_t DetectionStream::detection_count() const {
    std::size_t n = 0;
    for (const auto& f : frames) {
        n += f.detections.size();
    }
    return n;
}

NamePair make_pair_key(const std::string& a, const std::string& b) {
    return a < b ? NamePair{a, b} : NamePair{b, a};
}

void OccurrenceLedger::validate(const Roster* roster) const {
    std::unordered_set<std::string> ids;
    for (const auto& e : entries) {
        if (!ids.insert(e.video_id).second) {
            throw ValidationError("ledger: duplicate video_id '" + e.video_id + "'");
        }
        for (const auto& name : e.present) {
            if (name.empty()) {
                throw ValidationError("ledger: empty name in video '" + e.video_id + "'");
            }
            if (roster && !roster->contains(name)) {
                throw ValidationError("ledger: video '" + e.video_id + "' names unknown individual '" + name + "'");
            }
        }
        for (const auto& [a, b] : e.pairs) {
            if (!pairwise) {
                throw ValidationError("ledger: pair records in a non-pairwise ledger");
            }
            if (a >= b || !e.present.contains(a) || !e.present.contains(b)) {
                throw ValidationError("ledger: video '" + e.video_id + "' pair " + a + "|" + b +
                                      " is not an ordered pair of present individuals");
            }
        }
    }
}

AssociationMatrix::AssociationMatrix(std::vector<std::string> names)
    : names_(std::move(names)), values_(names_.size() * names_.size(), 0.0) {}

AssociationMatrix::AssociationMatrix(std::vector<std::string> names, std::vector<double> values)
    : names_(std::move(names)), values_(std::move(values)) {
    if (values_.size() != names_.size() * names_.size()) {
        throw InputError("association matrix: value count does not match n*n");
    }
}

void AssociationMatrix::set(std::size_t i, std::size_t j, double v) {
    const std::size_t n = names_.size();
    values_[i * n + j] = v;
    values_[j * n + i] = v;
}

std::optional<std::size_t> AssociationMatrix::index_of(const std::string& name) const {
    const auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - names_.begin());
}

std::size_t AssociationMatrix::positive_dyads() const {
    std::size_t count = 0;
    for (std::size_t i = 0; i < size(); ++i) {
        for (std::size_t j = i + 1; j < size(); ++j) {
            if ((*this)(i, j) > 0.0) {
                ++count;
            }
        }
    }
    return count;
}

void AssociationMatrix::validate() const {
    const std::size_t n = size();
    if (values_.size() != n * n) {
        throw ValidationError("association matrix: value count does not match n*n");
    }
    std::unordered_set<std::string> seen;
    for (const auto& name : names_) {
        if (name.empty() || !seen.insert(name).second) {
            throw ValidationError("association matrix: empty or duplicate name '" + name + "'");
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if ((*this)(i, i) != 0.0) {
            throw ValidationError("association matrix: nonzero diagonal at '" + names_[i] + "'");
        }
        for (std::size_t j = 0; j < n; ++j) {
            const double v = (*this)(i, j);
            if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
                throw ValidationError("association matrix: value outside [0,1] at (" + names_[i] + ", " +
                                      names_[j] + ")");
            }
            if (std::abs(v - (*this)(j, i)) > 1e-12) {
                throw ValidationError("association matrix: asymmetric at (" + names_[i] + ", " + names_[j] + ")");
            }
        }
    }
}

}  // namespace socnet
