#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "socnet/types.hpp"

namespace socnet {

/// How node strength is accumulated from a symmetric association matrix.
enum class StrengthConvention {
    RowSum,     // sum of the node's indices
    InPlusOut,  // row sum + column sum, i.e. twice the row sum on a symmetric matrix
};

enum class EfficiencyMode { Binary, Weighted };

struct NodeMeasures {
    std::string name;
    int degree = 0;
    double strength = 0.0;
    double eigenvector = 0.0;

    bool operator==(const NodeMeasures&) const = default;
};

struct NetworkReport {
    double density = 0.0;
    double global_efficiency_binary = 0.0;
    double global_efficiency_weighted = 0.0;
    std::vector<NodeMeasures> individuals;
    std::vector<std::string> warnings;

    bool operator==(const NetworkReport&) const = default;
};

double density(const AssociationMatrix& m);

struct DegreeStrength {
    int degree = 0;
    double strength = 0.0;
};

std::vector<DegreeStrength> degree_strength(const AssociationMatrix& m,
                                            StrengthConvention convention = StrengthConvention::InPlusOut);

struct EigenOptions {
    double tol = 1e-10;
    int max_iter = 10000;
};

struct EigenResult {
    std::vector<double> values;  // max entry scaled to 1
    double eigenvalue = 0.0;     // Rayleigh quotient of the returned vector
    int iterations = 0;
};

/// Dominant eigenvector of the weighted matrix by power iteration from the
/// uniform vector. Iterates on M + sI with s = half the largest row sum so
/// that bipartite graphs (eigenvalues +/-lambda) still converge; the shift
/// leaves eigenvectors unchanged. Throws ConvergenceError after max_iter, and
/// InputError when the matrix has no positive entry.
EigenResult eigenvector_centrality(const AssociationMatrix& m, const EigenOptions& opts = {});

/// Residual max_i |(M v)_i - lambda v_i| of a candidate eigenpair.
double eigen_residual(const AssociationMatrix& m, const std::vector<double>& v, double lambda);

/// Mean over ordered pairs of 1/d(i,j). Binary: hop counts over positive
/// edges. Weighted: shortest paths with edge length 1/index.
double global_efficiency(const AssociationMatrix& m, EfficiencyMode mode);

/// All-pairs shortest distances (infinity when unreachable) used by
/// global_efficiency.
std::vector<double> shortest_distances(const AssociationMatrix& m, EfficiencyMode mode);

struct ReportOptions {
    StrengthConvention strength = StrengthConvention::InPlusOut;
    EigenOptions eigen;
};

NetworkReport network_report(const AssociationMatrix& m, const ReportOptions& opts = {});

}  // namespace socnet
