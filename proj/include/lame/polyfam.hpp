#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "lame/lame_index.hpp"
#include "lame/poly.hpp"

namespace lame {

// Three-term recurrence data at one step j:
//   Phat_{j+1} = (E - b_j) Phat_j - a_j Phat_{j-1},  Phat_{-1} = 0, Phat_0 = 1.
// a_j has energy^2 units, b_j energy units; a_j > 0 for 1 <= j <= n, which is
// what makes all critical-polynomial roots real and simple.
struct RecurrencePair {
    double a = 0.0;
    double b = 0.0;
};

inline constexpr int kMaxFamilyDegree = 64;  // n+1 cap; root conditioning degrades far earlier (~40)

inline RecurrencePair recurrence_coefficients(FamilyTag family, LameIndex idx, double m, int j) {
    const int n = family_degree(family, idx);  // validates family/index
    if (j < 0 || j > n + 1)
        throw std::domain_error("recurrence_coefficients: j outside 0..n+1");
    const double tl = idx.twice_lambda();
    switch (family) {
        case FamilyTag::IntFirst:
            return {m * m * j * (2 * j - 1) * (tl - 2 * j + 1) * (tl - 2 * j + 2) / 8.0,
                    (m * tl * (tl + 2) + (2.0 - m) * (tl - 4 * j) * (tl - 4 * j)) / 8.0};
        case FamilyTag::IntSecond:
            return {m * m * j * (2 * j + 1) * (tl - 2 * j + 1) * (tl - 2 * j) / 8.0,
                    (m * tl * (tl + 2) + (2.0 - m) * (tl - 4 * j - 2) * (tl - 4 * j - 2)) / 8.0};
        default:  // Half: n = lambda - 1/2
            return {m * m * j * (2 * j - 1) * (tl - 2 * j + 2) * (tl - 2 * j + 1) / 8.0,
                    (tl * (m + tl) - 4.0 * (2.0 - m) * j * (tl - 2 * j)) / 4.0};
    }
}

// Coefficients of the equivalent recurrence for pi_j = (-1)^j P_j / j!:
//   lead_j * pi_{j+1} = (2/m)(b_j - E) pi_j - prev_j * pi_{j-1}.
// The sigma and rho rows satisfy the same relation.
struct PiStep {
    double lead = 1.0;
    double prev = 0.0;
};

inline PiStep pi_step(FamilyTag family, LameIndex idx, int j) {
    const double tl = idx.twice_lambda();
    switch (family) {
        case FamilyTag::IntFirst:
            return {(j + 1) * (tl - 2 * j - 1), (2 * j - 1) * (tl - 2 * j + 2) / 2.0};
        case FamilyTag::IntSecond:
            return {(j + 1) * (tl - 2 * j - 1), (2 * j + 1) * (tl - 2 * j) / 2.0};
        default:
            return {static_cast<double>((j + 1) * (2 * j + 1)),
                    (tl - 2 * j + 2) * (tl - 2 * j + 1) / 2.0};
    }
}

// pi_j(E) for j = 0..n; row of the coefficient matrix p_ij at E = E_i.
inline std::vector<double> pi_row(FamilyTag family, LameIndex idx, double m, double E) {
    const int n = family_degree(family, idx);
    std::vector<double> pi(n + 1);
    pi[0] = 1.0;
    double prev = 0.0;
    for (int j = 0; j < n; ++j) {
        const PiStep st = pi_step(family, idx, j);
        const double b = recurrence_coefficients(family, idx, m, j).b;
        const double next = ((2.0 / m) * (b - E) * pi[j] - st.prev * prev) / st.lead;
        prev = pi[j];
        pi[j + 1] = next;
    }
    return pi;
}

// Monic critical polynomial Phat_{n+1}(E); its roots are the family's
// algebraic energies.
inline Poly critical_polynomial(FamilyTag family, LameIndex idx, double m) {
    const int n = family_degree(family, idx);
    if (n + 1 > kMaxFamilyDegree)
        throw std::domain_error("critical_polynomial: degree cap " +
                                std::to_string(kMaxFamilyDegree) + " exceeded");
    std::vector<double> prev;         // Phat_{-1} = 0
    std::vector<double> cur = {1.0};  // Phat_0 = 1
    for (int j = 0; j <= n; ++j) {
        const RecurrencePair rc = recurrence_coefficients(family, idx, m, j);
        std::vector<double> next(cur.size() + 1, 0.0);
        for (std::size_t i = 0; i < cur.size(); ++i) {
            next[i + 1] += cur[i];
            next[i] -= rc.b * cur[i];
        }
        for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= rc.a * prev[i];
        prev = std::move(cur);
        cur = std::move(next);
    }
    return Poly(std::move(cur));
}

// Scalar evaluation of Phat_{n+1}(E) and its E-derivative, used to decide
// whether E is a root to working accuracy: the Newton correction
// |Phat/Phat'| estimates the distance to the nearest true root without being
// thrown off by the huge dynamic range of the intermediate values.
inline double critical_newton_step(FamilyTag family, LameIndex idx, double m, double E) {
    const int n = family_degree(family, idx);
    double prev = 0.0, cur = 1.0;
    double dprev = 0.0, dcur = 0.0;
    for (int j = 0; j <= n; ++j) {
        const RecurrencePair rc = recurrence_coefficients(family, idx, m, j);
        const double next = (E - rc.b) * cur - rc.a * prev;
        const double dnext = cur + (E - rc.b) * dcur - rc.a * dprev;
        prev = cur;
        cur = next;
        dprev = dcur;
        dcur = dnext;
    }
    if (dcur == 0.0) return std::abs(cur) == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return std::abs(cur / dcur);
}

// p_ij together with the folded rows sigma_ij = p_ij + p_{i,n-j} and
// rho_ij = p_ij - p_{i,n-j}.
struct CoeffTable {
    FamilyTag family = FamilyTag::IntFirst;
    LameIndex lambda{0};
    double m = 0.0;
    std::vector<double> energies;
    std::vector<std::vector<double>> p;      // rows i = 0..n, cols j = 0..n
    std::vector<std::vector<double>> sigma;  // sigma_ij
    std::vector<std::vector<double>> rho;    // rho_ij
};

inline CoeffTable coeff_table(FamilyTag family, LameIndex idx, double m,
                              const std::vector<double>& energies) {
    const int n = family_degree(family, idx);
    if (static_cast<int>(energies.size()) != n + 1)
        throw std::domain_error("coeff_table: expected " + std::to_string(n + 1) + " energies");
    // Ties are impossible (the roots are simple), but neighboring band edges
    // approach each other exponentially in lambda, so the guard only rejects
    // gaps below double-precision resolution.
    for (int i = 0; i + 1 <= n; ++i) {
        if (!(energies[i + 1] - energies[i] > 1e-13 * (1.0 + std::abs(energies[i]))))
            throw std::domain_error("coeff_table: energies must be sorted with distinct values");
    }
    for (double E : energies) {
        if (!(critical_newton_step(family, idx, m, E) <= 1e-6 * (1.0 + std::abs(E))))
            throw std::domain_error("coeff_table: energy " + std::to_string(E) +
                                    " is not a root of the critical polynomial");
    }
    CoeffTable tab;
    tab.family = family;
    tab.lambda = idx;
    tab.m = m;
    tab.energies = energies;
    tab.p.reserve(n + 1);
    for (double E : energies) tab.p.push_back(pi_row(family, idx, m, E));
    tab.sigma.assign(n + 1, std::vector<double>(n + 1));
    tab.rho.assign(n + 1, std::vector<double>(n + 1));
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) {
            tab.sigma[i][j] = tab.p[i][j] + tab.p[i][n - j];
            tab.rho[i][j] = tab.p[i][j] - tab.p[i][n - j];
        }
    return tab;
}

}  // namespace lame
