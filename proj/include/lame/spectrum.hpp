#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "lame/elliptic.hpp"
#include "lame/lame_index.hpp"
#include "lame/polyfam.hpp"

namespace lame {

// Symmetric tridiagonal (Jacobi) matrix: diag b_0..b_n, off-diagonal
// sqrt(a_1)..sqrt(a_n).  Its characteristic polynomial is the monic
// critical polynomial of the same family.
struct Tridiagonal {
    std::vector<double> diag;
    std::vector<double> off;
};

inline Tridiagonal tridiagonal_from_recurrence(FamilyTag family, LameIndex idx, double m) {
    const int n = family_degree(family, idx);
    Tridiagonal t;
    t.diag.resize(n + 1);
    t.off.resize(n);
    for (int j = 0; j <= n; ++j) {
        const RecurrencePair rc = recurrence_coefficients(family, idx, m, j);
        t.diag[j] = rc.b;
        if (j >= 1) t.off[j - 1] = std::sqrt(rc.a);
    }
    return t;
}

namespace detail {

// Number of eigenvalues strictly below x, by the Sturm sign count of the
// LDL^T pivots.
inline int sturm_count_below(const Tridiagonal& t, double x) {
    const std::size_t n = t.diag.size();
    double norm = 0.0;
    for (double d : t.diag) norm = std::max(norm, std::abs(d));
    for (double e : t.off) norm = std::max(norm, std::abs(e));
    const double pivmin = std::numeric_limits<double>::min() +
                          std::numeric_limits<double>::epsilon() * norm * norm * 1e-4;
    int count = 0;
    double q = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        q = t.diag[i] - x - (i ? t.off[i - 1] * t.off[i - 1] / q : 0.0);
        if (std::abs(q) < pivmin) q = -pivmin;
        if (q < 0.0) ++count;
    }
    return count;
}

}  // namespace detail

// Bisection on the Sturm count; converges each eigenvalue to ~1e-14 relative.
inline std::vector<double> tridiagonal_eigenvalues_bisect(const Tridiagonal& t) {
    const int n = static_cast<int>(t.diag.size());
    if (n == 0) return {};
    double lo = t.diag[0], hi = t.diag[0];
    for (int i = 0; i < n; ++i) {
        const double r = (i > 0 ? std::abs(t.off[i - 1]) : 0.0) +
                         (i < n - 1 ? std::abs(t.off[i]) : 0.0);
        lo = std::min(lo, t.diag[i] - r);
        hi = std::max(hi, t.diag[i] + r);
    }
    const double span = hi - lo;
    lo -= 1e-12 * (1.0 + std::abs(lo)) + 1e-15 * span;
    hi += 1e-12 * (1.0 + std::abs(hi)) + 1e-15 * span;
    std::vector<double> ev(n);
    for (int k = 0; k < n; ++k) {
        double a = lo, b = hi;
        for (int it = 0; it < 200 && (b - a) > 1e-14 * std::max(1.0, std::max(std::abs(a), std::abs(b))); ++it) {
            const double mid = 0.5 * (a + b);
            if (detail::sturm_count_below(t, mid) >= k + 1)
                b = mid;
            else
                a = mid;
        }
        ev[k] = 0.5 * (a + b);
    }
    return ev;
}

// Implicit-shift QL for the symmetric tridiagonal eigenproblem (eigenvalues
// only).  Falls back to Sturm bisection if a value fails to deflate.
inline std::vector<double> tridiagonal_eigenvalues(const Tridiagonal& t) {
    const int n = static_cast<int>(t.diag.size());
    if (n == 0) return {};
    std::vector<double> d = t.diag;
    std::vector<double> e = t.off;
    e.resize(n, 0.0);
    const double eps = std::numeric_limits<double>::epsilon();
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        for (;;) {
            int mm = l;
            for (; mm < n - 1; ++mm) {
                const double dd = std::abs(d[mm]) + std::abs(d[mm + 1]);
                if (std::abs(e[mm]) <= eps * dd) break;
            }
            if (mm == l) break;
            if (++iter > 60) return tridiagonal_eigenvalues_bisect(t);
            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[mm] - d[l] + e[l] / (g + std::copysign(r, g));
            double s = 1.0, c = 1.0, p = 0.0;
            bool deflated = false;
            for (int i = mm - 1; i >= l; --i) {
                double f = s * e[i];
                const double b = c * e[i];
                r = std::hypot(f, g);
                e[i + 1] = r;
                if (r == 0.0) {
                    d[i + 1] -= p;
                    e[mm] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if (deflated) continue;
            d[l] -= p;
            e[l] = g;
            e[mm] = 0.0;
        }
    }
    std::sort(d.begin(), d.end());
    return d;
}

struct SpectrumResult {
    FamilyTag family = FamilyTag::IntFirst;
    LameIndex lambda{0};
    double m = 0.0;
    std::vector<double> energies;  // ascending
};

inline std::vector<FamilyTag> families_for(LameIndex idx) {
    if (!idx.is_integer()) return {FamilyTag::Half};
    if (idx.twice_lambda() >= 2) return {FamilyTag::IntFirst, FamilyTag::IntSecond};
    return {FamilyTag::IntFirst};
}

// All algebraic band-edge energies, one SpectrumResult per valid family.
// Integer lambda yields lambda+1 plus lambda values; half-integer lambda
// yields lambda+1/2 values (each carrying a two-dimensional eigenspace).
inline std::vector<SpectrumResult> algebraic_energies(LameIndex idx, double m) {
    if (!(m > 0.0) || m > kModulusMax)
        throw std::domain_error("m: expected 0 < m < 1");
    std::vector<SpectrumResult> out;
    for (FamilyTag fam : families_for(idx)) {
        SpectrumResult r;
        r.family = fam;
        r.lambda = idx;
        r.m = m;
        r.energies = tridiagonal_eigenvalues(tridiagonal_from_recurrence(fam, idx, m));
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace lame
