// Brute-force multiple-testing reference used to cross-check apply_procedure.
// Deliberately independent of the library implementation: long double
// thresholds from their textbook formulas, a stable index sort, and explicit
// enumeration of every cut rank.
#ifndef QMMC_TESTS_PROCEDURE_ORACLE_HPP
#define QMMC_TESTS_PROCEDURE_ORACLE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

#include "qmmc/procedures.hpp"

namespace oracle {

inline long double oracle_threshold(qmmc::ProcedureName name, std::size_t m, std::size_t rank,
                                    long double alpha) {
    const long double md = static_cast<long double>(m);
    const long double rd = static_cast<long double>(rank);
    switch (name) {
        case qmmc::ProcedureName::bonferroni:
            return alpha / md;
        case qmmc::ProcedureName::sidak:
            return 1.0L - std::pow(1.0L - alpha, 1.0L / static_cast<long double>(m - rank + 1));
        case qmmc::ProcedureName::holm:
        case qmmc::ProcedureName::hochberg:
            return alpha / static_cast<long double>(m - rank + 1);
        case qmmc::ProcedureName::simes:
        case qmmc::ProcedureName::bh:
            return rd * alpha / md;
        case qmmc::ProcedureName::by: {
            long double h = 0.0L;
            for (std::size_t j = m; j >= 1; --j) h += 1.0L / static_cast<long double>(j);
            return rd * alpha / (md * h);
        }
    }
    return 0.0L;
}

inline std::vector<std::size_t> oracle_reject(qmmc::ProcedureName name,
                                              const std::vector<double>& p, double alpha) {
    const std::size_t m = p.size();
    std::vector<std::size_t> result;
    if (m == 0) return result;

    const qmmc::Direction dir = qmmc::ProcedureSpec{name}.direction();
    if (dir == qmmc::Direction::single_step) {
        const long double tau = oracle_threshold(name, m, 1, alpha);
        for (std::size_t i = 0; i < m; ++i) {
            if (static_cast<long double>(p[i]) <= tau) result.push_back(i);
        }
        return result;
    }

    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return p[a] < p[b]; });

    std::size_t cut = 0;
    if (dir == qmmc::Direction::step_up) {
        for (std::size_t k = m; k >= 1; --k) {
            if (static_cast<long double>(p[order[k - 1]]) <= oracle_threshold(name, m, k, alpha)) {
                cut = k;
                break;
            }
        }
    } else {
        for (std::size_t k = 1; k <= m; ++k) {
            bool all_pass = true;
            for (std::size_t j = 1; j <= k; ++j) {
                if (!(static_cast<long double>(p[order[j - 1]]) <=
                      oracle_threshold(name, m, j, alpha))) {
                    all_pass = false;
                    break;
                }
            }
            if (all_pass) cut = k;
        }
    }

    if (cut == 0) return result;
    const double boundary = p[order[cut - 1]];
    for (std::size_t i = 0; i < m; ++i) {
        if (p[i] <= boundary) result.push_back(i);
    }
    return result;
}

}  // namespace oracle

#endif  // QMMC_TESTS_PROCEDURE_ORACLE_HPP
