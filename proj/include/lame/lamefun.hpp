#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "lame/chebyshev.hpp"
#include "lame/elliptic.hpp"
#include "lame/jet.hpp"
#include "lame/lame_index.hpp"
#include "lame/poly.hpp"
#include "lame/polyfam.hpp"
#include "lame/spectrum.hpp"

namespace lame {

enum class Branch { One, Two };

// Prefactor structure of the closed-form eigenfunctions: the eight classical
// polynomial classes for integer lambda, and the Ec/Es-type pair for
// half-integer lambda.
enum class ClassFactor { One, SnCn, CnDn, SnDn, Cn, Sn, Dn, SnCnDn, EcLike, EsLike };

inline const char* class_factor_name(ClassFactor f) {
    switch (f) {
        case ClassFactor::One: return "1";
        case ClassFactor::SnCn: return "sn*cn";
        case ClassFactor::CnDn: return "cn*dn";
        case ClassFactor::SnDn: return "sn*dn";
        case ClassFactor::Cn: return "cn";
        case ClassFactor::Sn: return "sn";
        case ClassFactor::Dn: return "dn";
        case ClassFactor::SnCnDn: return "sn*cn*dn";
        case ClassFactor::EcLike: return "Ec";
        default: return "Es";
    }
}

struct ClassTag {
    ClassFactor factor = ClassFactor::One;
    int zero_count = 0;  // zeros in (0, 2K); fills the Ince superscript r + 1/2
};

// One classified eigenfunction.  The Chebyshev coefficient rows and the
// sn^2-basis factors are stored after normalization: the polynomial factor
// (alpha) is monic and `scale` records the multiplier applied to the raw
// recurrence-convention coefficients.
struct EigenfunctionSpec {
    LameIndex lambda{0};
    double m = 0.0;
    FamilyTag family = FamilyTag::IntFirst;
    int index = 0;
    double energy = 0.0;
    ClassTag cls;
    Branch branch = Branch::One;  // meaningful for half-integer lambda only

    std::vector<double> cos_series;  // sigma-row slice
    std::vector<double> sin_series;  // rho-row slice
    double const_term = 0.0;         // p_{i,n/2}-type term where the class has one

    Poly alpha;  // polynomial factor in t = sn^2 x (monic)
    Poly beta;   // half-integer companion factor; empty for integer classes
    double scale = 1.0;
};

namespace detail {

// Even-degree Chebyshev polynomials expressed in v = t^2:
// T_{2k}, Ttilde_{2k}, U_{2k}, Utilde_{2k} all satisfy
// g_{k+1} = 2(2v - 1) g_k - g_{k-1} with kind-specific seeds.
inline std::vector<double> even_cheb_v(ChebKind kind, int k) {
    std::vector<double> prev, cur;
    switch (kind) {
        case ChebKind::T: prev = {1.0}; cur = {-1.0, 2.0}; break;
        case ChebKind::Ttilde: prev = {1.0}; cur = {-3.0, 4.0}; break;
        case ChebKind::U: prev = {1.0}; cur = {-1.0, 4.0}; break;
        case ChebKind::Utilde: prev = {2.0}; cur = {-4.0, 8.0}; break;
    }
    if (k == 0) return prev;
    for (int i = 1; i < k; ++i) {
        std::vector<double> next(cur.size() + 1, 0.0);
        for (std::size_t q = 0; q < cur.size(); ++q) {
            next[q + 1] += 4.0 * cur[q];
            next[q] -= 2.0 * cur[q];
        }
        for (std::size_t q = 0; q < prev.size(); ++q) next[q] -= prev[q];
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

inline std::vector<double> poly_pow(const std::vector<double>& base, int e) {
    std::vector<double> r = {1.0};
    for (int i = 0; i < e; ++i) r = poly_mul(r, base);
    return r;
}

// Integer case: the Chebyshev argument is cn x, so v = cn^2 = 1 - t.
inline std::vector<double> even_cheb_in_t(ChebKind kind, int k) {
    const std::vector<double> vc = even_cheb_v(kind, k);
    std::vector<double> out;
    const std::vector<double> lin = {1.0, -1.0};
    for (std::size_t q = 0; q < vc.size(); ++q)
        poly_axpy(out, vc[q], poly_pow(lin, static_cast<int>(q)));
    return out;
}

// Half-integer case: the argument is cd = cn/dn, and each series term comes
// multiplied by the matching power of dn^2 = 1 - m t, so the homogenized
// combination sum_q c_q (1-t)^q (1-mt)^{k-q} is a polynomial in t.
inline std::vector<double> homogenized_cheb_t(ChebKind kind, int k, double m) {
    const std::vector<double> vc = even_cheb_v(kind, k);
    const std::vector<double> cn2 = {1.0, -1.0};
    const std::vector<double> dn2 = {1.0, -m};
    std::vector<double> out;
    for (std::size_t q = 0; q < vc.size(); ++q)
        poly_axpy(out, vc[q],
                  poly_mul(poly_pow(cn2, static_cast<int>(q)), poly_pow(dn2, k - static_cast<int>(q))));
    return out;
}

inline Jet pow_jet(Jet base, int e) {
    Jet r(1.0);
    for (int i = 0; i < e; ++i) r = r * base;
    return r;
}

struct IntegerClassLayout {
    ClassFactor factor = ClassFactor::One;
    ChebKind kind = ChebKind::T;
    int top_degree = 0;    // Chebyshev degree of the j = 0 term
    int terms = 0;         // number of series terms
    bool has_const = false;
    int poly_degree = 0;   // degree of the sn^2-basis factor
};

inline IntegerClassLayout integer_class_layout(LameIndex idx, FamilyTag family, int index) {
    const int lam = idx.integer_lambda();
    const bool even_lambda = (lam % 2 == 0);
    const int N = even_lambda ? lam / 2 : (lam - 1) / 2;
    const bool even_index = (index % 2 == 0);
    IntegerClassLayout L;
    if (even_lambda) {
        if (family == FamilyTag::IntFirst) {
            if (even_index) L = {ClassFactor::One, ChebKind::T, 2 * N, N, true, N};
            else            L = {ClassFactor::SnCn, ChebKind::Utilde, 2 * N - 2, N, false, N - 1};
        } else {
            if (even_index) L = {ClassFactor::CnDn, ChebKind::Ttilde, 2 * N - 2, N, false, N - 1};
            // sin((2N-2j-1) am x) = sn U_{2N-2j-2}(cn): the U here is the
            // plain even-degree kind, no cn is split off
            else            L = {ClassFactor::SnDn, ChebKind::U, 2 * N - 2, N, false, N - 1};
        }
    } else {
        if (family == FamilyTag::IntFirst) {
            if (even_index) L = {ClassFactor::Cn, ChebKind::Ttilde, 2 * N, N + 1, false, N};
            else            L = {ClassFactor::Sn, ChebKind::U, 2 * N, N + 1, false, N};
        } else {
            if (even_index) L = {ClassFactor::Dn, ChebKind::T, 2 * N, N, true, N};
            else            L = {ClassFactor::SnCnDn, ChebKind::Utilde, 2 * N - 2, N, false, N - 1};
        }
    }
    return L;
}

}  // namespace detail

// --- evaluation ---------------------------------------------------------

namespace detail {

inline Jet eval_integer(const EigenfunctionSpec& s, double x, const EllipticModulus& mod) {
    const JacobiJets j = jacobi_jets(x, mod);
    const IntegerClassLayout L = integer_class_layout(s.lambda, s.family, s.index);
    Jet pre(1.0);
    switch (L.factor) {
        case ClassFactor::One: break;
        case ClassFactor::SnCn: pre = j.sn * j.cn; break;
        case ClassFactor::CnDn: pre = j.cn * j.dn; break;
        case ClassFactor::SnDn: pre = j.sn * j.dn; break;
        case ClassFactor::Cn: pre = j.cn; break;
        case ClassFactor::Sn: pre = j.sn; break;
        case ClassFactor::Dn: pre = j.dn; break;
        default: pre = j.sn * j.cn * j.dn; break;
    }
    const std::vector<double>& series = s.cos_series.empty() ? s.sin_series : s.cos_series;
    Jet acc(s.const_term);
    for (int t = 0; t < L.terms; ++t)
        acc = acc + series[t] * cheb_eval(L.kind, L.top_degree - 2 * t, j.cn);
    return pre * acc;
}

inline Jet eval_half(const EigenfunctionSpec& s, double x, const EllipticModulus& mod,
                     bool stabilized) {
    const int n = family_degree(FamilyTag::Half, s.lambda);
    const double fourK = 4.0 * mod.big_K();
    const double q = std::round(x / fourK);
    const double xr = x - fourK * q;
    const double wrap = (static_cast<long long>(q) & 1LL) ? -1.0 : 1.0;  // f(x+4K) = -f(x)

    const JacobiJets j = jacobi_jets(xr, mod);
    const Jet cd = j.cn / j.dn;
    const Jet dnp = pow_jet(j.dn, n);

    const int S = (n + 1) / 2;
    Jet acc(s.const_term);
    for (int t = 0; t < S; ++t)
        acc = acc + s.cos_series[t] * cheb_eval(ChebKind::T, n - 2 * t, cd);
    Jet su(0.0);
    for (int t = 0; t < S; ++t)
        su = su + s.sin_series[t] * cheb_eval(ChebKind::U, n - 2 * t - 1, cd);

    // Switch point for the cancellation-free square-root forms.  Both
    // representations are exact identities, but the direct one loses ~1e-8
    // in the second derivative once dn+cn drops near 1e-6, so the window is
    // kept wide enough that psi'' stays at ~1e-12.
    const double tau = 1e-3;
    Jet F;
    double branch_sign = 1.0;
    if (s.branch == Branch::One) {
        const Jet C = j.dn + j.cn;
        acc = acc + (cd - 1.0) * su;
        if (!stabilized) {
            if (std::min(std::abs(xr - 2.0 * mod.big_K()), std::abs(xr + 2.0 * mod.big_K())) < 1e-9)
                throw std::domain_error("eval: within 1e-9 of a branch-repair point with "
                                        "stabilization disabled");
            F = sqrt(C);
        } else if (C.value < tau) {
            // sqrt(dn+cn) = +- k' sn / sqrt(dn-cn); sign follows the side of the zero
            const double s1 = (xr >= 0.0) ? 1.0 : -1.0;
            F = s1 * mod.kprime() * j.sn / sqrt(j.dn - j.cn);
        } else {
            F = sqrt(C);
        }
    } else {
        const Jet D = j.dn - j.cn;
        acc = acc + (cd + 1.0) * su;
        // sign keeps the pair on the convention phi2(x) = phi1(x + 2K)
        branch_sign = (n % 2 == 0) ? -1.0 : 1.0;
        const double eps = (xr > 0.0) ? 1.0 : (xr < 0.0 ? -1.0 : 0.0);
        if (!stabilized) {
            if (std::abs(xr) < 1e-9)
                throw std::domain_error("eval: within 1e-9 of a branch-repair point with "
                                        "stabilization disabled");
            F = eps * sqrt(D);
        } else if (D.value < tau) {
            // eps sqrt(dn-cn) = k' sn / sqrt(dn+cn), smooth through sn = 0
            F = mod.kprime() * j.sn / sqrt(j.dn + j.cn);
        } else {
            F = eps * sqrt(D);
        }
    }
    return (wrap * branch_sign) * (F * dnp * acc);
}

}  // namespace detail

inline Jet eval_with_derivatives(const EigenfunctionSpec& s, double x, bool stabilized = true) {
    if (!std::isfinite(x)) throw std::domain_error("eval: x must be finite");
    const EllipticModulus mod(s.m);
    if (s.lambda.is_integer()) return detail::eval_integer(s, x, mod);
    return detail::eval_half(s, x, mod, stabilized);
}

inline double eval(const EigenfunctionSpec& s, double x) {
    return eval_with_derivatives(s, x).value;
}

// Number of sign changes of the eigenfunction on (0, 2K): dense sampling
// plus bisection refinement of each bracket.
inline int count_zeros(const EigenfunctionSpec& s) {
    if (s.lambda.is_integer())
        throw std::domain_error("count_zeros: defined for half-integer specs");
    const EllipticModulus mod(s.m);
    const double twoK = 2.0 * mod.big_K();
    const int samples = 4096;
    int count = 0;
    double prev_x = twoK / (samples + 1);
    double prev_v = eval(s, prev_x);
    for (int k = 2; k <= samples; ++k) {
        const double xk = twoK * k / (samples + 1);
        const double vk = eval(s, xk);
        if (prev_v != 0.0 && vk != 0.0 && std::signbit(prev_v) != std::signbit(vk)) {
            double a = prev_x, b = xk, va = prev_v;
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (a + b);
                const double vm = eval(s, mid);
                if (vm == 0.0) break;
                if (std::signbit(vm) == std::signbit(va)) { a = mid; va = vm; }
                else b = mid;
            }
            ++count;
        }
        if (vk != 0.0) { prev_x = xk; prev_v = vk; }
    }
    return count;
}

inline std::string ince_label(const EigenfunctionSpec& s) {
    if (s.lambda.is_integer()) return class_factor_name(s.cls.factor);
    const char* head = (s.branch == Branch::One) ? "Ec" : "Es";
    return std::string(head) + "_" + s.lambda.str() + "^" +
           std::to_string(2 * s.cls.zero_count + 1) + "/2";
}

// --- assembly -----------------------------------------------------------

namespace detail {

inline void normalize_monic(Poly& alpha, Poly& beta, std::vector<double>& cos_s,
                            std::vector<double>& sin_s, double& const_term, double& scale,
                            int expected_degree) {
    if (static_cast<int>(alpha.c.size()) < expected_degree + 1)
        alpha.c.resize(expected_degree + 1, 0.0);
    double mag = 0.0;
    for (double c : alpha.c) mag = std::max(mag, std::abs(c));
    const double lead = alpha.c[expected_degree];
    if (!(std::abs(lead) > 1e-12 * mag))
        throw std::runtime_error("eigenfunction: degenerate leading coefficient");
    scale = 1.0 / lead;
    poly_scale(alpha.c, scale);
    poly_scale(beta.c, scale);
    poly_scale(cos_s, scale);
    poly_scale(sin_s, scale);
    const_term *= scale;
    alpha.c[expected_degree] = 1.0;  // exact after division
    alpha.c.resize(expected_degree + 1);
}

inline EigenfunctionSpec make_integer_spec(LameIndex idx, double m, const CoeffTable& tab,
                                           int index) {
    const IntegerClassLayout L = integer_class_layout(idx, tab.family, index);
    EigenfunctionSpec s;
    s.lambda = idx;
    s.m = m;
    s.family = tab.family;
    s.index = index;
    s.energy = tab.energies[index];
    s.cls.factor = L.factor;
    const bool even_index = (index % 2 == 0);
    const std::vector<double>& row = even_index ? tab.sigma[index] : tab.rho[index];
    std::vector<double> series(row.begin(), row.begin() + L.terms);
    Poly alpha;
    if (L.has_const) s.const_term = tab.p[index][L.terms];  // the p_{i,N} tail of the cosine series
    for (int t = 0; t < L.terms; ++t)
        poly_axpy(alpha.c, series[t], even_cheb_in_t(L.kind, (L.top_degree - 2 * t) / 2));
    if (L.has_const) {
        if (alpha.c.empty()) alpha.c.push_back(s.const_term);
        else alpha.c[0] += s.const_term;
    }
    if (even_index) s.cos_series = std::move(series);
    else s.sin_series = std::move(series);
    normalize_monic(alpha, s.beta, s.cos_series, s.sin_series, s.const_term, s.scale,
                    L.poly_degree);
    s.alpha = std::move(alpha);
    return s;
}

inline void half_alpha_beta(int n, double m, const std::vector<double>& sig,
                            const std::vector<double>& rho, double p_half, Poly& alpha,
                            Poly& beta) {
    const std::vector<double> dn2 = {1.0, -m};
    const std::vector<double> cn2 = {1.0, -1.0};
    alpha.c.clear();
    beta.c.clear();
    if (n % 2 == 1) {
        const int r = (n - 1) / 2;
        for (int j = 0; j <= r; ++j) {
            const int k = (n - 1 - 2 * j) / 2;
            const std::vector<double> shell = poly_pow(dn2, r - k);
            poly_axpy(alpha.c, sig[j], poly_mul(shell, homogenized_cheb_t(ChebKind::Ttilde, k, m)));
            const std::vector<double> uterm = poly_mul(shell, homogenized_cheb_t(ChebKind::U, k, m));
            poly_axpy(alpha.c, rho[j], uterm);
            poly_axpy(beta.c, -rho[j], uterm);
        }
    } else {
        const int r = n / 2;
        poly_axpy(alpha.c, p_half, poly_pow(dn2, r));
        for (int j = 0; j < r; ++j) {
            const int k = (n - 2 * j) / 2;
            poly_axpy(alpha.c, sig[j],
                      poly_mul(poly_pow(dn2, r - k), homogenized_cheb_t(ChebKind::T, k, m)));
            const int ku = (n - 2 * j - 2) / 2;
            const std::vector<double> shell = poly_pow(dn2, r - 1 - ku);
            const std::vector<double> uterm = poly_mul(shell, homogenized_cheb_t(ChebKind::Utilde, ku, m));
            poly_axpy(alpha.c, rho[j], poly_mul(cn2, uterm));
            poly_axpy(beta.c, -rho[j], uterm);
        }
    }
}

}  // namespace detail

// All 2*lambda+1 classified eigenfunction specs at (lambda, m): for integer
// lambda the IntFirst specs followed by the IntSecond ones; for half-integer
// lambda a branch One / branch Two pair per energy.
inline std::vector<EigenfunctionSpec> build_eigenfunctions(LameIndex idx, double m) {
    if (!(m > 0.0) || m > kModulusMax)
        throw std::domain_error("m: expected 0 < m < 1");
    std::vector<EigenfunctionSpec> out;
    if (idx.is_integer()) {
        for (FamilyTag fam : families_for(idx)) {
            const std::vector<double> energies =
                tridiagonal_eigenvalues(tridiagonal_from_recurrence(fam, idx, m));
            const CoeffTable tab = coeff_table(fam, idx, m, energies);
            const int n = family_degree(fam, idx);
            for (int i = 0; i <= n; ++i) out.push_back(detail::make_integer_spec(idx, m, tab, i));
        }
        return out;
    }
    const FamilyTag fam = FamilyTag::Half;
    const int n = family_degree(fam, idx);
    const std::vector<double> energies =
        tridiagonal_eigenvalues(tridiagonal_from_recurrence(fam, idx, m));
    const CoeffTable tab = coeff_table(fam, idx, m, energies);
    const int S = (n + 1) / 2;
    for (int i = 0; i <= n; ++i) {
        EigenfunctionSpec s;
        s.lambda = idx;
        s.m = m;
        s.family = fam;
        s.index = i;
        s.energy = energies[i];
        s.cos_series.assign(tab.sigma[i].begin(), tab.sigma[i].begin() + S);
        s.sin_series.assign(tab.rho[i].begin(), tab.rho[i].begin() + S);
        s.const_term = (n % 2 == 0) ? tab.p[i][n / 2] : 0.0;
        detail::half_alpha_beta(n, m, s.cos_series, s.sin_series, s.const_term, s.alpha, s.beta);
        detail::normalize_monic(s.alpha, s.beta, s.cos_series, s.sin_series, s.const_term, s.scale,
                                (n % 2 == 1) ? (n - 1) / 2 : n / 2);
        s.branch = Branch::One;
        s.cls.factor = ClassFactor::EcLike;
        EigenfunctionSpec s2 = s;
        s2.branch = Branch::Two;
        s2.cls.factor = ClassFactor::EsLike;
        const int zeros = count_zeros(s);
        s.cls.zero_count = zeros;
        s2.cls.zero_count = zeros;
        out.push_back(std::move(s));
        out.push_back(std::move(s2));
    }
    return out;
}

}  // namespace lame
