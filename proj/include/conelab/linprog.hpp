#pragma once

// Dense two-phase simplex for the small linear programs produced by the
// cone path solver. Bland's rule throughout, so it cannot cycle.

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

namespace conelab::lp {

enum class Status { optimal, infeasible, unbounded };

struct Result {
    Status status = Status::infeasible;
    double objective = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> x;
};

/// Minimize c.x subject to A x <= b and x >= 0.
///
/// A is row-major with rows.size() == b.size(); every row has c.size() entries.
class Simplex {
public:
    Simplex(const std::vector<std::vector<double>>& A, const std::vector<double>& b,
            const std::vector<double>& c, double eps = 1e-11)
        : m_(b.size()), n_(c.size()), eps_(eps), basis_(m_), nonbasis_(n_ + 1),
          tab_(m_ + 2, std::vector<double>(n_ + 2, 0.0)), cost_(c) {
        if (A.size() != m_)
            throw std::invalid_argument("lp: row count of A does not match b");
        for (std::size_t i = 0; i < m_; ++i) {
            if (A[i].size() != n_)
                throw std::invalid_argument("lp: column count of A does not match c");
            for (std::size_t j = 0; j < n_; ++j) tab_[i][j] = A[i][j];
            basis_[i] = static_cast<long>(n_ + i);
            tab_[i][n_] = -1.0;
            tab_[i][n_ + 1] = b[i];
        }
        // Internally we maximize -c.x.
        for (std::size_t j = 0; j < n_; ++j) {
            nonbasis_[j] = static_cast<long>(j);
            tab_[m_][j] = c[j];
        }
        nonbasis_[n_] = -1;
        tab_[m_ + 1][n_] = 1.0;
    }

    Result solve() {
        Result res;
        std::size_t r = 0;
        for (std::size_t i = 1; i < m_; ++i)
            if (tab_[i][n_ + 1] < tab_[r][n_ + 1]) r = i;
        if (m_ > 0 && tab_[r][n_ + 1] < -eps_) {
            // Phase one: the auxiliary column n_ enters at the most violated row.
            pivot(r, n_);
            if (!run(1) || tab_[m_ + 1][n_ + 1] < -eps_) {
                res.status = Status::infeasible;
                return res;
            }
            for (std::size_t i = 0; i < m_; ++i) {
                if (basis_[i] != -1) continue;
                std::size_t s = n_ + 1;
                for (std::size_t j = 0; j <= n_; ++j)
                    if (s == n_ + 1 || better(tab_[i][j], tab_[i][s], nonbasis_[j], nonbasis_[s]))
                        s = j;
                pivot(i, s);
            }
        }
        if (!run(0)) {
            res.status = Status::unbounded;
            return res;
        }
        res.status = Status::optimal;
        res.x.assign(n_, 0.0);
        for (std::size_t i = 0; i < m_; ++i)
            if (basis_[i] >= 0 && static_cast<std::size_t>(basis_[i]) < n_)
                res.x[static_cast<std::size_t>(basis_[i])] = tab_[i][n_ + 1];
        res.objective = 0.0;
        for (std::size_t j = 0; j < n_; ++j) res.objective += cost_[j] * res.x[j];
        return res;
    }

private:
    static bool better(double a, double b, long ia, long ib) {
        return a < b || (a == b && ia < ib);
    }

    void pivot(std::size_t r, std::size_t s) {
        const double inv = 1.0 / tab_[r][s];
        for (std::size_t i = 0; i < m_ + 2; ++i) {
            if (i == r) continue;
            const double f = tab_[i][s] * inv;
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < n_ + 2; ++j)
                if (j != s) tab_[i][j] -= tab_[r][j] * f;
            tab_[i][s] = -f;
        }
        for (std::size_t j = 0; j < n_ + 2; ++j)
            if (j != s) tab_[r][j] *= inv;
        tab_[r][s] = inv;
        std::swap(basis_[r], nonbasis_[s]);
    }

    // phase 1 optimizes the auxiliary row, phase 0 the real objective.
    bool run(int phase) {
        const std::size_t row = phase == 1 ? m_ + 1 : m_;
        for (;;) {
            std::size_t s = n_ + 1;
            for (std::size_t j = 0; j <= n_; ++j) {
                if (phase == 0 && nonbasis_[j] == -1) continue;
                // Bland: smallest index among improving columns.
                if (tab_[row][j] < -eps_ && (s == n_ + 1 || nonbasis_[j] < nonbasis_[s])) s = j;
            }
            if (s == n_ + 1) return true;
            std::size_t r = m_;
            for (std::size_t i = 0; i < m_; ++i) {
                if (tab_[i][s] <= eps_) continue;
                if (r == m_) {
                    r = i;
                    continue;
                }
                const double lhs = tab_[i][n_ + 1] / tab_[i][s];
                const double rhs = tab_[r][n_ + 1] / tab_[r][s];
                if (lhs < rhs - eps_ || (std::abs(lhs - rhs) <= eps_ && basis_[i] < basis_[r])) r = i;
            }
            if (r == m_) return false;
            pivot(r, s);
        }
    }

    std::size_t m_, n_;
    double eps_;
    std::vector<long> basis_, nonbasis_;
    std::vector<std::vector<double>> tab_;
    std::vector<double> cost_;
};

inline Result minimize(const std::vector<std::vector<double>>& A, const std::vector<double>& b,
                       const std::vector<double>& c, double eps = 1e-11) {
    return Simplex(A, b, c, eps).solve();
}

}  // namespace conelab::lp
