#include "socnet/network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

#include "socnet/error.hpp"

namespace socnet {

namespace {

// Network measures accept any symmetric nonnegative matrix, not just indices
// in [0,1], so that scaled copies can be analysed.
void require_structure(const AssociationMatrix& m) {
    const std::size_t n = m.size();
    if (m.values().size() != n * n) {
        throw InputError("matrix storage does not match its name count");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (m(i, i) != 0.0) {
            throw InputError("matrix diagonal must be zero (" + m.names()[i] + ")");
        }
        for (std::size_t j = 0; j < n; ++j) {
            const double v = m(i, j);
            if (!std::isfinite(v) || v < 0.0 || v != m(j, i)) {
                throw InputError("matrix must be symmetric, finite and nonnegative (" + m.names()[i] + ", " +
                                 m.names()[j] + ")");
            }
        }
    }
}

void require_two(const AssociationMatrix& m, const char* what) {
    if (m.size() < 2) {
        throw InputError(std::string(what) + " needs at least two individuals");
    }
}

std::vector<std::vector<std::size_t>> adjacency(const AssociationMatrix& m) {
    std::vector<std::vector<std::size_t>> adj(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < m.size(); ++j) {
            if (m(i, j) > 0.0) {
                adj[i].push_back(j);
            }
        }
    }
    return adj;
}

std::size_t component_count(const AssociationMatrix& m) {
    const auto adj = adjacency(m);
    std::vector<bool> seen(m.size(), false);
    std::size_t components = 0;
    for (std::size_t s = 0; s < m.size(); ++s) {
        if (seen[s]) {
            continue;
        }
        ++components;
        std::vector<std::size_t> stack{s};
        seen[s] = true;
        while (!stack.empty()) {
            const auto u = stack.back();
            stack.pop_back();
            for (const auto v : adj[u]) {
                if (!seen[v]) {
                    seen[v] = true;
                    stack.push_back(v);
                }
            }
        }
    }
    return components;
}

}  // namespace

double density(const AssociationMatrix& m) {
    require_structure(m);
    require_two(m, "density");
    const double n = static_cast<double>(m.size());
    return static_cast<double>(m.positive_dyads()) / (n * (n - 1.0) / 2.0);
}

std::vector<DegreeStrength> degree_strength(const AssociationMatrix& m, StrengthConvention convention) {
    require_structure(m);
    std::vector<DegreeStrength> out(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        long double sum = 0.0L;
        for (std::size_t j = 0; j < m.size(); ++j) {
            if (m(i, j) > 0.0) {
                ++out[i].degree;
                sum += m(i, j);
            }
        }
        if (convention == StrengthConvention::InPlusOut) {
            sum *= 2.0L;
        }
        out[i].strength = static_cast<double>(sum);
    }
    return out;
}

double eigen_residual(const AssociationMatrix& m, const std::vector<double>& v, double lambda) {
    double worst = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        long double mv = 0.0L;
        for (std::size_t j = 0; j < m.size(); ++j) {
            mv += static_cast<long double>(m(i, j)) * v[j];
        }
        worst = std::max(worst, static_cast<double>(std::fabs(mv - static_cast<long double>(lambda) * v[i])));
    }
    return worst;
}

EigenResult eigenvector_centrality(const AssociationMatrix& m, const EigenOptions& opts) {
    require_structure(m);
    const std::size_t n = m.size();
    const double peak = m.values().empty() ? 0.0 : *std::max_element(m.values().begin(), m.values().end());
    if (!(peak > 0.0)) {
        throw InputError("eigenvector centrality needs at least one positive entry");
    }
    // Work on M / max(M): the eigenvectors are unchanged and the normalized
    // entries do not depend on a common rescaling of the input.
    std::vector<long double> a(n * n);
    long double max_row = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
        long double row = 0.0L;
        for (std::size_t j = 0; j < n; ++j) {
            a[i * n + j] = static_cast<long double>(m(i, j)) / static_cast<long double>(peak);
            row += a[i * n + j];
        }
        max_row = std::max(max_row, row);
    }
    const long double shift = max_row / 2.0L;

    std::vector<long double> v(n, 1.0L);
    std::vector<long double> next(n);
    long double diff = std::numeric_limits<long double>::infinity();
    int iter = 0;
    while (iter < opts.max_iter) {
        ++iter;
        long double top = 0.0L;
        for (std::size_t i = 0; i < n; ++i) {
            long double s = shift * v[i];
            for (std::size_t j = 0; j < n; ++j) {
                s += a[i * n + j] * v[j];
            }
            next[i] = s;
            top = std::max(top, s);
        }
        diff = 0.0L;
        for (std::size_t i = 0; i < n; ++i) {
            next[i] /= top;
            diff = std::max(diff, std::fabs(next[i] - v[i]));
        }
        v.swap(next);
        if (diff < opts.tol) {
            break;
        }
    }
    if (!(diff < opts.tol)) {
        throw ConvergenceError("eigenvector centrality did not converge in " + std::to_string(opts.max_iter) +
                                   " iterations (last step change " + std::to_string(static_cast<double>(diff)) + ")",
                               static_cast<double>(diff), iter);
    }

    EigenResult result;
    result.iterations = iter;
    result.values.resize(n);
    long double num = 0.0L;
    long double den = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
        // isolates only decay geometrically under the shift; their exact value is 0
        const bool isolated = std::none_of(a.begin() + static_cast<std::ptrdiff_t>(i * n),
                                           a.begin() + static_cast<std::ptrdiff_t>((i + 1) * n),
                                           [](long double x) { return x > 0.0L; });
        result.values[i] = isolated ? 0.0 : static_cast<double>(v[i]);
    }
    for (std::size_t i = 0; i < n; ++i) {
        long double mv = 0.0L;
        for (std::size_t j = 0; j < n; ++j) {
            mv += static_cast<long double>(m(i, j)) * result.values[j];
        }
        num += mv * result.values[i];
        den += static_cast<long double>(result.values[i]) * result.values[i];
    }
    result.eigenvalue = static_cast<double>(num / den);
    return result;
}

std::vector<double> shortest_distances(const AssociationMatrix& m, EfficiencyMode mode) {
    require_structure(m);
    const std::size_t n = m.size();
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(n * n, inf);
    const auto adj = adjacency(m);
    for (std::size_t s = 0; s < n; ++s) {
        double* d = dist.data() + s * n;
        d[s] = 0.0;
        if (mode == EfficiencyMode::Binary) {
            std::queue<std::size_t> q;
            q.push(s);
            while (!q.empty()) {
                const auto u = q.front();
                q.pop();
                for (const auto v : adj[u]) {
                    if (d[v] == inf) {
                        d[v] = d[u] + 1.0;
                        q.push(v);
                    }
                }
            }
            continue;
        }
        using Item = std::pair<long double, std::size_t>;
        std::vector<long double> best(n, std::numeric_limits<long double>::infinity());
        std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
        best[s] = 0.0L;
        pq.emplace(0.0L, s);
        while (!pq.empty()) {
            const auto [du, u] = pq.top();
            pq.pop();
            if (du > best[u]) {
                continue;
            }
            for (const auto v : adj[u]) {
                const long double cand = du + 1.0L / static_cast<long double>(m(u, v));
                if (cand < best[v]) {
                    best[v] = cand;
                    pq.emplace(cand, v);
                }
            }
        }
        for (std::size_t v = 0; v < n; ++v) {
            d[v] = static_cast<double>(best[v]);
        }
    }
    return dist;
}

double global_efficiency(const AssociationMatrix& m, EfficiencyMode mode) {
    require_two(m, "global efficiency");
    const auto dist = shortest_distances(m, mode);
    const std::size_t n = m.size();
    long double sum = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && std::isfinite(dist[i * n + j])) {
                sum += 1.0L / static_cast<long double>(dist[i * n + j]);
            }
        }
    }
    return static_cast<double>(sum / (static_cast<long double>(n) * static_cast<long double>(n - 1)));
}

NetworkReport network_report(const AssociationMatrix& m, const ReportOptions& opts) {
    require_structure(m);
    NetworkReport report;
    const std::size_t n = m.size();
    if (n >= 2) {
        report.density = density(m);
        report.global_efficiency_binary = global_efficiency(m, EfficiencyMode::Binary);
        report.global_efficiency_weighted = global_efficiency(m, EfficiencyMode::Weighted);
    } else {
        report.warnings.push_back("fewer than two individuals: density and efficiency reported as 0");
    }
    const auto ds = degree_strength(m, opts.strength);
    std::vector<double> eig(n, 0.0);
    if (m.positive_dyads() == 0) {
        report.warnings.push_back("no positive association: eigenvector centrality undefined, reported as 0");
    } else {
        eig = eigenvector_centrality(m, opts.eigen).values;
        const auto components = component_count(m);
        if (components > 1) {
            report.warnings.push_back("network has " + std::to_string(components) +
                                      " components: eigenvector centrality is near 0 outside the dominant one");
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        report.individuals.push_back({m.names()[i], ds[i].degree, ds[i].strength, eig[i]});
    }
    return report;
}

}  // namespace socnet
