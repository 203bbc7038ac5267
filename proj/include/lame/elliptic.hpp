#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "lame/jet.hpp"

namespace lame {

inline constexpr double kModulusMax = 1.0 - 1e-12;

// Complete elliptic integral of the first kind, K(k) with m = k^2, by the
// arithmetic-geometric mean: K = pi / (2 AGM(1, k')).  Quadratic convergence,
// accurate to a few ulps on the supported range.
inline double complete_K(double m) {
    if (!(m >= 0.0) || m > kModulusMax)
        throw std::domain_error("modulus m outside supported range [0, 1-1e-12]");
    double a = 1.0;
    double b = std::sqrt(1.0 - m);
    for (int it = 0; it < 64 && (a - b) > 2.0 * std::numeric_limits<double>::epsilon() * a; ++it) {
        const double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
    }
    return std::numbers::pi / (a + b);
}

struct JacobiTriple {
    double sn = 0.0;
    double cn = 1.0;
    double dn = 1.0;
};

// Parameter m with the derived quantities the rest of the library needs.
// Immutable after construction.
class EllipticModulus {
public:
    explicit EllipticModulus(double m)
        : m_(m), k_(std::sqrt(m)), kprime_(std::sqrt(1.0 - m)), big_k_(complete_K(m)) {}

    double m() const { return m_; }
    double k() const { return k_; }
    double kprime() const { return kprime_; }
    double big_K() const { return big_k_; }

private:
    double m_;
    double k_;
    double kprime_;
    double big_k_;
};

namespace detail {

// sn, cn, dn by the descending Landen (Gauss) transformation:
//   k1 = (1-k')/(1+k'),  z1 = z/(1+k1),
//   sn(z,k) = (1+k1) s1 / (1 + k1 s1^2),
//   cn(z,k) = c1 d1 / (1 + k1 s1^2),
//   dn(z,k) = (1 - k1 s1^2) / (1 + k1 s1^2)
// (DLMF 22.7.2-4), descending until m is negligible and finishing with the
// small-m expansion of A&S 16.13.
inline JacobiTriple jacobi_reduced(double x, double m, double m_floor = 1e-12) {
    double ks[48];
    int depth = 0;
    double mc = m;
    while (mc > m_floor && depth < 48) {
        const double kp = std::sqrt(1.0 - mc);
        const double k1 = (1.0 - kp) / (1.0 + kp);
        ks[depth++] = k1;
        mc = k1 * k1;
        x /= 1.0 + k1;
    }
    const double s = std::sin(x);
    const double c = std::cos(x);
    const double w = 0.25 * mc * (x - s * c);
    double sn = s - w * c;
    double cn = c + w * s;
    double dn = 1.0 - 0.5 * mc * s * s;
    for (int i = depth - 1; i >= 0; --i) {
        const double k1 = ks[i];
        const double t = k1 * sn * sn;
        const double den = 1.0 + t;
        sn = (1.0 + k1) * sn / den;
        cn = cn * dn / den;
        dn = (1.0 - t) / den;
    }
    return {sn, cn, dn};
}

}  // namespace detail

inline JacobiTriple jacobi(double x, const EllipticModulus& mod) {
    if (!std::isfinite(x)) throw std::domain_error("jacobi: x must be finite");
    const double fourK = 4.0 * mod.big_K();
    const double q = std::round(x / fourK);
    double xr = x - fourK * q;
    // fold once more with sn(y+2K) = -sn y, cn(y+2K) = -cn y so the Landen
    // cascade always runs on |y| <= K, where it is most accurate
    double flip = 1.0;
    if (std::abs(xr) > mod.big_K()) {
        xr -= std::copysign(2.0 * mod.big_K(), xr);
        flip = -1.0;
    }
    JacobiTriple t = detail::jacobi_reduced(xr, mod.m());
    t.sn *= flip;
    t.cn *= flip;
    return t;
}

// Elliptic amplitude am x, continuous on the real line with
// am(x + 4K) = am(x) + 2pi.  The branch is tracked with a period counter;
// near the cn = -1 points the sign of sn is pinned to the reduced argument
// so rounding noise in sn cannot flip the atan2 branch.
inline double jacobi_am(double x, const EllipticModulus& mod) {
    if (!std::isfinite(x)) throw std::domain_error("jacobi_am: x must be finite");
    const double fourK = 4.0 * mod.big_K();
    const double q = std::round(x / fourK);
    const double xr = x - fourK * q;
    const JacobiTriple j = jacobi(xr, mod);
    return 2.0 * std::numbers::pi * q + std::atan2(std::copysign(j.sn, xr), j.cn);
}

// Jets of sn, cn, dn at x, using sn' = cn dn, cn' = -sn dn, dn' = -m sn cn.
struct JacobiJets {
    Jet sn, cn, dn;
};

inline JacobiJets jacobi_jets(double x, const EllipticModulus& mod) {
    const JacobiTriple t = jacobi(x, mod);
    const double m = mod.m();
    const double sn = t.sn, cn = t.cn, dn = t.dn;
    return {Jet(sn, cn * dn, -sn * (dn * dn + m * cn * cn)),
            Jet(cn, -sn * dn, -cn * dn * dn + m * sn * sn * cn),
            Jet(dn, -m * sn * cn, -m * dn * (cn * cn - sn * sn))};
}

}  // namespace lame
