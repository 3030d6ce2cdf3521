#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "socnet/types.hpp"

namespace socnet {

struct OccurrenceCounts {
    std::map<std::string, std::int64_t> per_individual;  // N_i: videos containing i
    std::map<NamePair, std::int64_t> per_pair;           // x_ij: videos containing both
    std::int64_t total_dyadic = 0;                       // sum of x_ij

    std::int64_t individual(const std::string& name) const;
    std::int64_t pair(const std::string& a, const std::string& b) const;
};

OccurrenceCounts count_occurrences(const OccurrenceLedger& ledger);

/// Simple ratio index x_ij / (N_i + N_j - x_ij), 0 where the denominator is 0.
/// Rows follow `order`; names absent from the counts get all-zero rows.
AssociationMatrix simple_ratio_matrix(const OccurrenceCounts& counts, const std::vector<std::string>& order);

/// Matrix order used when no roster is given: lexicographic over every name
/// seen in the ledger.
std::vector<std::string> ledger_names(const OccurrenceLedger& ledger);

/// Dyads with N_i + N_j == 0 (both never observed). Their index is 0 by
/// convention but carries no evidence of avoidance.
std::vector<NamePair> unobserved_dyads(const OccurrenceCounts& counts, const std::vector<std::string>& order);

}  // namespace socnet
