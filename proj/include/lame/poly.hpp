#pragma once

#include <cstddef>
#include <vector>

namespace lame {

// Dense univariate polynomial, coefficients in ascending degree order.
// An empty coefficient list is the zero polynomial.
struct Poly {
    std::vector<double> c;

    Poly() = default;
    explicit Poly(std::vector<double> coeffs) : c(std::move(coeffs)) {}

    int degree() const { return static_cast<int>(c.size()) - 1; }

    template <class Num>
    Num operator()(Num t) const {
        Num acc(0.0);
        for (std::size_t i = c.size(); i-- > 0;) acc = acc * t + c[i];
        return acc;
    }
};

inline void poly_axpy(std::vector<double>& acc, double s, const std::vector<double>& p) {
    if (acc.size() < p.size()) acc.resize(p.size(), 0.0);
    for (std::size_t i = 0; i < p.size(); ++i) acc[i] += s * p[i];
}

inline std::vector<double> poly_mul(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<double> r(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

inline void poly_scale(std::vector<double>& a, double s) {
    for (double& x : a) x *= s;
}

}  // namespace lame
