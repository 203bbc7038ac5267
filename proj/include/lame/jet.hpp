#pragma once

#include <cmath>

namespace lame {

// Second-order jet: a value together with its first and second derivative
// with respect to a single underlying variable. Arithmetic propagates
// derivatives exactly (forward-mode, truncated at order two).
struct Jet {
    double value = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;

    Jet() = default;
    Jet(double v) : value(v) {}
    Jet(double v, double dv, double ddv) : value(v), d1(dv), d2(ddv) {}

    // The independent variable itself: d/dx x = 1.
    static Jet variable(double x) { return Jet(x, 1.0, 0.0); }
};

inline Jet operator+(const Jet& a, const Jet& b) {
    return {a.value + b.value, a.d1 + b.d1, a.d2 + b.d2};
}

inline Jet operator-(const Jet& a, const Jet& b) {
    return {a.value - b.value, a.d1 - b.d1, a.d2 - b.d2};
}

inline Jet operator-(const Jet& a) { return {-a.value, -a.d1, -a.d2}; }

inline Jet operator*(const Jet& a, const Jet& b) {
    return {a.value * b.value,
            a.d1 * b.value + a.value * b.d1,
            a.d2 * b.value + 2.0 * a.d1 * b.d1 + a.value * b.d2};
}

inline Jet operator*(double s, const Jet& a) { return {s * a.value, s * a.d1, s * a.d2}; }
inline Jet operator*(const Jet& a, double s) { return s * a; }
inline Jet operator+(const Jet& a, double s) { return {a.value + s, a.d1, a.d2}; }
inline Jet operator+(double s, const Jet& a) { return a + s; }
inline Jet operator-(const Jet& a, double s) { return {a.value - s, a.d1, a.d2}; }
inline Jet operator-(double s, const Jet& a) { return {s - a.value, -a.d1, -a.d2}; }

inline Jet operator/(const Jet& a, const Jet& b) {
    const double v = a.value / b.value;
    const double dv = (a.d1 - v * b.d1) / b.value;
    const double ddv = (a.d2 - 2.0 * dv * b.d1 - v * b.d2) / b.value;
    return {v, dv, ddv};
}

inline Jet sqrt(const Jet& a) {
    const double s = std::sqrt(a.value);
    const double ds = a.d1 / (2.0 * s);
    return {s, ds, a.d2 / (2.0 * s) - a.d1 * a.d1 / (4.0 * a.value * s)};
}

}  // namespace lame
