#include "socnet/association.hpp"

#include <set>

namespace socnet {

std::int64_t OccurrenceCounts::individual(const std::string& name) const {
    const auto it = per_individual.find(name);
    return it == per_individual.end() ? 0 : it->second;
}

std::int64_t OccurrenceCounts::pair(const std::string& a, const std::string& b) const {
    const auto it = per_pair.find(make_pair_key(a, b));
    return it == per_pair.end() ? 0 : it->second;
}

OccurrenceCounts count_occurrences(const OccurrenceLedger& ledger) {
    OccurrenceCounts counts;
    for (const auto& e : ledger.entries) {
        for (const auto& name : e.present) {
            ++counts.per_individual[name];
        }
        if (ledger.pairwise) {
            for (const auto& p : e.pairs) {
                ++counts.per_pair[p];
            }
            continue;
        }
        for (auto a = e.present.begin(); a != e.present.end(); ++a) {
            for (auto b = std::next(a); b != e.present.end(); ++b) {
                ++counts.per_pair[{*a, *b}];
            }
        }
    }
    for (const auto& [p, x] : counts.per_pair) {
        counts.total_dyadic += x;
    }
    return counts;
}

AssociationMatrix simple_ratio_matrix(const OccurrenceCounts& counts, const std::vector<std::string>& order) {
    AssociationMatrix m(order);
    for (std::size_t i = 0; i < order.size(); ++i) {
        const auto ni = counts.individual(order[i]);
        for (std::size_t j = i + 1; j < order.size(); ++j) {
            const auto x = counts.pair(order[i], order[j]);
            const auto denom = ni + counts.individual(order[j]) - x;
            m.set(i, j, denom > 0 ? static_cast<double>(x) / static_cast<double>(denom) : 0.0);
        }
    }
    return m;
}

std::vector<std::string> ledger_names(const OccurrenceLedger& ledger) {
    std::set<std::string> names;
    for (const auto& e : ledger.entries) {
        names.insert(e.present.begin(), e.present.end());
    }
    return {names.begin(), names.end()};
}

std::vector<NamePair> unobserved_dyads(const OccurrenceCounts& counts, const std::vector<std::string>& order) {
    std::vector<NamePair> out;
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (std::size_t j = i + 1; j < order.size(); ++j) {
            if (counts.individual(order[i]) + counts.individual(order[j]) == 0) {
                out.emplace_back(order[i], order[j]);
            }
        }
    }
    return out;
}

}  // namespace socnet
