#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <random>

#include "socnet/error.hpp"
#include "socnet/network.hpp"

using namespace socnet;

namespace {

std::vector<std::string> names_for(std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back("n" + std::to_string(i));
    }
    return out;
}

AssociationMatrix from_edges(std::size_t n, const std::vector<std::tuple<int, int, double>>& edges) {
    AssociationMatrix m(names_for(n));
    for (const auto& [i, j, w] : edges) {
        m.set(static_cast<std::size_t>(i), static_cast<std::size_t>(j), w);
    }
    return m;
}

// Random symmetric matrix with dyadic weights k/64 so that scaling by 10 is exact.
AssociationMatrix random_matrix(std::mt19937& gen, std::size_t n, double p, bool connected) {
    std::uniform_real_distribution<double> u(0, 1);
    std::uniform_int_distribution<int> k(1, 64);
    AssociationMatrix m(names_for(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (u(gen) < p || (connected && j == i + 1)) {
                m.set(i, j, k(gen) / 64.0);
            }
        }
    }
    return m;
}

AssociationMatrix scaled(const AssociationMatrix& m, double c) {
    auto v = m.values();
    for (auto& x : v) {
        x *= c;
    }
    return AssociationMatrix(m.names(), v);
}

// Minimum path length over every simple path (exhaustive, n <= 8).
std::vector<double> enumerate_paths(const AssociationMatrix& m, EfficiencyMode mode) {
    const std::size_t n = m.size();
    std::vector<double> best(n * n, INFINITY);
    std::vector<bool> on(n, false);
    std::function<void(std::size_t, std::size_t, long double)> walk = [&](std::size_t s, std::size_t u, long double len) {
        best[s * n + u] = std::min(best[s * n + u], static_cast<double>(len));
        on[u] = true;
        for (std::size_t v = 0; v < n; ++v) {
            if (!on[v] && m(u, v) > 0.0) {
                walk(s, v, len + (mode == EfficiencyMode::Binary ? 1.0L : 1.0L / m(u, v)));
            }
        }
        on[u] = false;
    };
    for (std::size_t s = 0; s < n; ++s) {
        walk(s, s, 0.0L);
    }
    return best;
}

// Largest root of the characteristic polynomial (Faddeev-LeVerrier) and its
// null vector by Gaussian elimination with complete pivoting.
std::vector<double> charpoly_eigenvector(const AssociationMatrix& m) {
    using LD = long double;
    const std::size_t n = m.size();
    std::vector<LD> c(n + 1, 0.0L);
    c[n] = 1.0L;
    std::vector<LD> mk(n * n, 0.0L), tmp(n * n);
    for (std::size_t k = 1; k <= n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                LD s = 0.0L;
                for (std::size_t l = 0; l < n; ++l) {
                    s += static_cast<LD>(m(i, l)) * mk[l * n + j];
                }
                tmp[i * n + j] = s + (i == j ? c[n - k + 1] : 0.0L);
            }
        }
        mk = tmp;
        LD tr = 0.0L;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t l = 0; l < n; ++l) {
                tr += static_cast<LD>(m(i, l)) * mk[l * n + i];
            }
        }
        c[n - k] = -tr / static_cast<LD>(k);
    }
    auto p = [&](LD x) {
        LD r = 0.0L;
        for (std::size_t i = n + 1; i-- > 0;) {
            r = r * x + c[i];
        }
        return r;
    };
    LD hi = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
        LD row = 0.0L;
        for (std::size_t j = 0; j < n; ++j) {
            row += m(i, j);
        }
        hi = std::max(hi, row);
    }
    hi += 1.0L;
    const int steps = 200000;
    LD x = hi, lo = hi;
    for (int s = 1; s <= steps; ++s) {
        const LD y = hi - (2.0L * hi) * s / steps;
        if ((p(y) > 0) != (p(x) > 0)) {
            lo = y;
            break;
        }
        x = y;
    }
    LD a = lo, b = x;
    for (int it = 0; it < 200; ++it) {
        const LD mid = (a + b) / 2;
        ((p(mid) > 0) == (p(b) > 0) ? b : a) = mid;
    }
    const LD lambda = (a + b) / 2;

    std::vector<LD> A(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            A[i * n + j] = m(i, j) - (i == j ? lambda : 0.0L);
        }
    }
    std::vector<std::size_t> col(n);
    for (std::size_t i = 0; i < n; ++i) {
        col[i] = i;
    }
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t pr = k, pc = k;
        for (std::size_t i = k; i < n; ++i) {
            for (std::size_t j = k; j < n; ++j) {
                if (std::fabs(A[i * n + col[j]]) > std::fabs(A[pr * n + col[pc]])) {
                    pr = i;
                    pc = j;
                }
            }
        }
        for (std::size_t j = 0; j < n; ++j) {
            std::swap(A[k * n + j], A[pr * n + j]);
        }
        std::swap(col[k], col[pc]);
        for (std::size_t i = k + 1; i < n; ++i) {
            const LD f = A[i * n + col[k]] / A[k * n + col[k]];
            for (std::size_t j = k; j < n; ++j) {
                A[i * n + col[j]] -= f * A[k * n + col[j]];
            }
        }
    }
    std::vector<LD> v(n, 0.0L);
    v[col[n - 1]] = 1.0L;  // the last pivot is the (numerically) zero one
    for (std::size_t k = n - 1; k-- > 0;) {
        LD s = 0.0L;
        for (std::size_t j = k + 1; j < n; ++j) {
            s += A[k * n + col[j]] * v[col[j]];
        }
        v[col[k]] = -s / A[k * n + col[k]];
    }
    LD top = 0.0L;
    for (const auto e : v) {
        top = std::fabs(e) > std::fabs(top) ? e : top;
    }
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = static_cast<double>(v[i] / top);
    }
    return out;
}

}  // namespace

TEST(Density, Examples) {
    AssociationMatrix full(names_for(4));
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = i + 1; j < 4; ++j) {
            full.set(i, j, 0.25);
        }
    }
    EXPECT_EQ(density(full), 1.0);
    EXPECT_EQ(density(AssociationMatrix(names_for(5))), 0.0);
    EXPECT_DOUBLE_EQ(density(from_edges(3, {{0, 1, 0.5}})), 1.0 / 3.0);
    EXPECT_THROW(density(AssociationMatrix(names_for(1))), InputError);
}

TEST(Structure, RejectsMalformedMatrices) {
    AssociationMatrix asym(names_for(2), {0.0, 0.3, 0.2, 0.0});
    EXPECT_THROW(density(asym), InputError);
    AssociationMatrix diag(names_for(2), {0.1, 0.0, 0.0, 0.0});
    EXPECT_THROW(degree_strength(diag), InputError);
    AssociationMatrix neg(names_for(2), {0.0, -0.1, -0.1, 0.0});
    EXPECT_THROW(global_efficiency(neg, EfficiencyMode::Binary), InputError);
}

TEST(DegreeStrength, Conventions) {
    const auto m = from_edges(4, {{0, 1, 0.2}, {0, 2, 0.3}});
    const auto rs = degree_strength(m, StrengthConvention::RowSum);
    EXPECT_EQ(rs[0].degree, 2);
    EXPECT_DOUBLE_EQ(rs[0].strength, 0.5);
    EXPECT_EQ(rs[3].degree, 0);
    EXPECT_EQ(rs[3].strength, 0.0);
    const auto io = degree_strength(m, StrengthConvention::InPlusOut);
    EXPECT_DOUBLE_EQ(io[0].strength, 1.0);
    EXPECT_EQ(io[0].degree, 2);
}

TEST(Eigenvector, StarGraph) {
    const auto r = eigenvector_centrality(from_edges(4, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}}));
    EXPECT_EQ(r.values[0], 1.0);
    for (int i = 1; i < 4; ++i) {
        EXPECT_NEAR(r.values[static_cast<std::size_t>(i)], 1.0 / std::sqrt(3.0), 1e-6);
    }
    EXPECT_NEAR(r.eigenvalue, std::sqrt(3.0), 1e-9);
}

TEST(Eigenvector, TwoEqualComponentsAreSymmetric) {
    const auto r = eigenvector_centrality(from_edges(4, {{0, 1, 0.5}, {2, 3, 0.5}}));
    EXPECT_EQ(r.values[0], r.values[1]);
    EXPECT_EQ(r.values[2], r.values[3]);
    EXPECT_EQ(r.values[0], r.values[2]);
}

TEST(Eigenvector, IsolateIsZeroAndMaxIsOne) {
    const auto r = eigenvector_centrality(from_edges(3, {{0, 1, 0.4}}));
    EXPECT_EQ(r.values, (std::vector<double>{1.0, 1.0, 0.0}));
}

TEST(Eigenvector, Errors) {
    EXPECT_THROW(eigenvector_centrality(AssociationMatrix(names_for(3))), InputError);
    EigenOptions tight;
    tight.max_iter = 2;
    tight.tol = 1e-15;
    const auto m = from_edges(5, {{0, 1, 0.9}, {1, 2, 0.1}, {2, 3, 0.7}, {3, 4, 0.2}});
    try {
        eigenvector_centrality(m, tight);
        FAIL() << "expected a convergence error";
    } catch (const ConvergenceError& e) {
        EXPECT_EQ(e.iterations(), 2);
        EXPECT_GT(e.residual(), 0.0);
    }
}

TEST(Eigenvector, MatchesCharacteristicPolynomialOracle) {
    std::mt19937 gen(31);
    for (int t = 0; t < 150; ++t) {
        const std::size_t n = 2 + static_cast<std::size_t>(t % 7);
        const auto m = random_matrix(gen, n, 0.5, true);
        const auto r = eigenvector_centrality(m);
        const auto oracle = charpoly_eigenvector(m);
        for (std::size_t i = 0; i < n; ++i) {
            EXPECT_NEAR(r.values[i], oracle[i], 1e-6) << "trial " << t << " node " << i;
        }
    }
}

TEST(Eigenvector, ResidualAndNonnegativity) {
    std::mt19937 gen(12);
    for (int t = 0; t < 100; ++t) {
        const auto m = random_matrix(gen, 3 + static_cast<std::size_t>(t % 30), 0.3, true);
        const EigenOptions opts;
        const auto r = eigenvector_centrality(m, opts);
        EXPECT_LE(eigen_residual(m, r.values, r.eigenvalue), 10 * opts.tol);
        EXPECT_EQ(*std::max_element(r.values.begin(), r.values.end()), 1.0);
        for (const double v : r.values) {
            EXPECT_GE(v, 0.0);
        }
    }
}

TEST(Efficiency, Examples) {
    AssociationMatrix full(names_for(5));
    for (std::size_t i = 0; i < 5; ++i) {
        for (std::size_t j = i + 1; j < 5; ++j) {
            full.set(i, j, 0.1);
        }
    }
    EXPECT_EQ(global_efficiency(full, EfficiencyMode::Binary), 1.0);
    EXPECT_NEAR(global_efficiency(full, EfficiencyMode::Weighted), 0.1, 1e-15);
    const auto path = from_edges(3, {{0, 1, 1}, {1, 2, 1}});
    EXPECT_NEAR(global_efficiency(path, EfficiencyMode::Binary), 2.5 / 3.0, 1e-12);
    EXPECT_EQ(global_efficiency(AssociationMatrix(names_for(3)), EfficiencyMode::Binary), 0.0);
    EXPECT_THROW(global_efficiency(AssociationMatrix(names_for(1)), EfficiencyMode::Binary), InputError);
    // weighted: 1/0.5 + 1/0.25 = 6 beats the direct 1/0.1 = 10
    const auto tri = from_edges(3, {{0, 1, 0.5}, {1, 2, 0.25}, {0, 2, 0.1}});
    EXPECT_DOUBLE_EQ(shortest_distances(tri, EfficiencyMode::Weighted)[2], 6.0);
}

TEST(Efficiency, DistancesMatchPathEnumeration) {
    std::mt19937 gen(8);
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = 2 + static_cast<std::size_t>(t % 7);
        const auto m = random_matrix(gen, n, 0.35, false);
        for (const auto mode : {EfficiencyMode::Binary, EfficiencyMode::Weighted}) {
            const auto d = shortest_distances(m, mode);
            const auto o = enumerate_paths(m, mode);
            for (std::size_t k = 0; k < d.size(); ++k) {
                if (std::isinf(o[k])) {
                    EXPECT_TRUE(std::isinf(d[k]));
                } else {
                    EXPECT_NEAR(d[k], o[k], 1e-12 * o[k]);
                }
            }
        }
    }
}

TEST(Efficiency, AddingAnEdgeNeverLowersBinaryEfficiency) {
    std::mt19937 gen(21);
    std::uniform_int_distribution<std::size_t> pick(0, 9);
    for (int t = 0; t < 200; ++t) {
        auto m = random_matrix(gen, 10, 0.15, false);
        const double before = global_efficiency(m, EfficiencyMode::Binary);
        std::size_t i = pick(gen), j = pick(gen);
        if (i == j) {
            continue;
        }
        m.set(i, j, 0.5);
        EXPECT_GE(global_efficiency(m, EfficiencyMode::Binary), before);
    }
}

TEST(Efficiency, AddingAnIsolateLowersEverything) {
    std::mt19937 gen(22);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = 2 + static_cast<std::size_t>(t % 10);
        const auto m = random_matrix(gen, n, 0.5, true);
        AssociationMatrix bigger(names_for(n + 1));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                bigger.set(i, j, m(i, j));
            }
        }
        EXPECT_LT(density(bigger), density(m));
        EXPECT_LT(global_efficiency(bigger, EfficiencyMode::Binary), global_efficiency(m, EfficiencyMode::Binary));
        EXPECT_LT(global_efficiency(bigger, EfficiencyMode::Weighted), global_efficiency(m, EfficiencyMode::Weighted));
    }
}

TEST(Scaling, TimesTenIsExactOnDyadicWeights) {
    std::mt19937 gen(10);
    for (int t = 0; t < 100; ++t) {
        const auto m = random_matrix(gen, 3 + static_cast<std::size_t>(t % 25), 0.3, t % 2 == 0);
        if (m.positive_dyads() == 0) {
            continue;
        }
        const auto s = scaled(m, 10.0);
        EXPECT_EQ(density(s), density(m));
        EXPECT_EQ(global_efficiency(s, EfficiencyMode::Binary), global_efficiency(m, EfficiencyMode::Binary));
        EXPECT_NEAR(global_efficiency(s, EfficiencyMode::Weighted), 10 * global_efficiency(m, EfficiencyMode::Weighted),
                    1e-12 * global_efficiency(s, EfficiencyMode::Weighted));
        const auto a = degree_strength(m), b = degree_strength(s);
        for (std::size_t i = 0; i < a.size(); ++i) {
            EXPECT_EQ(a[i].degree, b[i].degree);
            EXPECT_EQ(b[i].strength, 10.0 * a[i].strength);
        }
        EXPECT_EQ(eigenvector_centrality(s).values, eigenvector_centrality(m).values);
    }
}

TEST(Report, ZeroMatrixWarns) {
    const auto r = network_report(AssociationMatrix(names_for(3)));
    EXPECT_EQ(r.density, 0.0);
    ASSERT_EQ(r.individuals.size(), 3u);
    for (const auto& ind : r.individuals) {
        EXPECT_EQ(ind.degree, 0);
        EXPECT_EQ(ind.eigenvector, 0.0);
    }
    EXPECT_FALSE(r.warnings.empty());
}

TEST(Report, SingleEdge) {
    const auto r = network_report(from_edges(3, {{0, 2, 0.37}}));
    EXPECT_DOUBLE_EQ(r.density, 1.0 / 3.0);
    EXPECT_EQ(r.individuals[0].eigenvector, 1.0);
    EXPECT_EQ(r.individuals[2].eigenvector, 1.0);
    EXPECT_EQ(r.individuals[1].eigenvector, 0.0);
    EXPECT_EQ(r.individuals[1].name, "n1");
    EXPECT_DOUBLE_EQ(r.individuals[0].strength, 0.74);
    EXPECT_FALSE(r.warnings.empty());  // the isolate makes a second component
}

TEST(Report, RowSumOption) {
    ReportOptions o;
    o.strength = StrengthConvention::RowSum;
    const auto r = network_report(from_edges(3, {{0, 2, 0.37}}), o);
    EXPECT_DOUBLE_EQ(r.individuals[0].strength, 0.37);
}
