#include <gtest/gtest.h>

#include <random>

#include "conelab/linprog.hpp"

using namespace conelab::lp;

TEST(Simplex, TextbookMinimum) {
    // min -3x - 5y  s.t.  x <= 4, 2y <= 12, 3x + 2y <= 18
    const auto r = minimize({{1, 0}, {0, 2}, {3, 2}}, {4, 12, 18}, {-3, -5});
    ASSERT_EQ(r.status, Status::optimal);
    EXPECT_NEAR(r.objective, -36.0, 1e-12);
    EXPECT_NEAR(r.x[0], 2.0, 1e-12);
    EXPECT_NEAR(r.x[1], 6.0, 1e-12);
}

TEST(Simplex, NeedsPhaseOne) {
    // min x + y  s.t.  x + y >= 2, x - y <= 1
    const auto r = minimize({{-1, -1}, {1, -1}}, {-2, 1}, {1, 1});
    ASSERT_EQ(r.status, Status::optimal);
    EXPECT_NEAR(r.objective, 2.0, 1e-12);
    EXPECT_GE(r.x[0] + r.x[1], 2.0 - 1e-12);
}

TEST(Simplex, Infeasible) {
    const auto r = minimize({{1}, {-1}}, {1, -2}, {1});
    EXPECT_EQ(r.status, Status::infeasible);
}

TEST(Simplex, Unbounded) {
    const auto r = minimize({{1, -1}}, {1}, {-1, 0});
    EXPECT_EQ(r.status, Status::unbounded);
}

TEST(Simplex, DegenerateDoesNotCycle) {
    // Beale's cycling example, stated as a minimization.
    const auto r = minimize({{0.25, -60, -0.04, 9}, {0.5, -90, -0.02, 3}, {0, 0, 1, 0}}, {0, 0, 1},
                            {-0.75, 150, -0.02, 6});
    ASSERT_EQ(r.status, Status::optimal);
    EXPECT_NEAR(r.objective, -0.05, 1e-12);
}

TEST(Simplex, ShapeErrors) {
    EXPECT_THROW(minimize({{1, 2}}, {1, 2}, {1, 1}), std::invalid_argument);
    EXPECT_THROW(minimize({{1}}, {1}, {1, 1}), std::invalid_argument);
}

// Random small LPs against exhaustive vertex enumeration in two variables.
TEST(Simplex, MatchesVertexEnumeration2D) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> U(-3, 3);
    int solved = 0;
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<std::vector<double>> A;
        std::vector<double> b;
        for (int i = 0; i < 4; ++i) {
            A.push_back({U(rng), U(rng)});
            b.push_back(U(rng) + 2);
        }
        A.push_back({1, 1});
        b.push_back(10);  // keeps it bounded
        const std::vector<double> c{U(rng), U(rng)};
        // all constraint lines including x >= 0 and y >= 0
        auto rows = A;
        auto rhs = b;
        rows.push_back({-1, 0});
        rhs.push_back(0);
        rows.push_back({0, -1});
        rhs.push_back(0);
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = i + 1; j < rows.size(); ++j) {
                const double det = rows[i][0] * rows[j][1] - rows[i][1] * rows[j][0];
                if (std::abs(det) < 1e-9) continue;
                const double x = (rhs[i] * rows[j][1] - rows[i][1] * rhs[j]) / det;
                const double y = (rows[i][0] * rhs[j] - rhs[i] * rows[j][0]) / det;
                bool ok = true;
                for (std::size_t k = 0; k < rows.size() && ok; ++k)
                    ok = rows[k][0] * x + rows[k][1] * y <= rhs[k] + 1e-9;
                if (ok) best = std::min(best, c[0] * x + c[1] * y);
            }
        const auto r = minimize(A, b, c);
        if (std::isinf(best)) {
            EXPECT_EQ(r.status, Status::infeasible) << "trial " << trial;
        } else {
            ASSERT_EQ(r.status, Status::optimal) << "trial " << trial;
            EXPECT_NEAR(r.objective, best, 1e-8) << "trial " << trial;
            ++solved;
        }
    }
    EXPECT_GT(solved, 50);
}
