#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "lame/lame_index.hpp"

namespace lame {

// The four ways of writing the operator as a quadratic in the sl(2)
// generators J- = d/dz, J0 = z d/dz - n/2, J+ = z^2 d/dz - n z acting on
// polynomials of degree at most n in z = sn x / cn x.
enum class Algebraization { Alg1, Alg2, Alg3, Alg4 };

inline const char* algebraization_name(Algebraization a) {
    switch (a) {
        case Algebraization::Alg1: return "Alg1";
        case Algebraization::Alg2: return "Alg2";
        case Algebraization::Alg3: return "Alg3";
        default: return "Alg4";
    }
}

struct AlgebraizationData {
    Algebraization id = Algebraization::Alg1;
    int n = 0;
    double c0 = 0.0;
    std::complex<double> cplus;   // = cminus; purely imaginary for Alg3/Alg4
    double cstar = 0.0;
};

inline FamilyTag algebraization_family(Algebraization a) {
    switch (a) {
        case Algebraization::Alg1: return FamilyTag::IntFirst;
        case Algebraization::Alg2: return FamilyTag::IntSecond;
        default: return FamilyTag::Half;
    }
}

inline AlgebraizationData algebraization_data(Algebraization alg, LameIndex idx, double m) {
    AlgebraizationData d;
    d.id = alg;
    d.n = family_degree(algebraization_family(alg), idx);  // validates alg/index pairing
    const double lam = idx.lambda();
    switch (alg) {
        case Algebraization::Alg1: d.c0 = -m * lam; break;
        case Algebraization::Alg2: d.c0 = -m * (lam + 1.0); break;
        case Algebraization::Alg3: d.cplus = {0.0, std::sqrt(1.0 - m)}; d.c0 = -m * (lam + 0.5); break;
        case Algebraization::Alg4: d.cplus = {0.0, -std::sqrt(1.0 - m)}; d.c0 = -m * (lam + 0.5); break;
    }
    // Constant chosen so the potential carries no additive term; with
    // c+ = c- either zero or +-i sqrt(1-m), the quadratic part collapses to
    // (1-m) c0^2 for every case.
    d.cstar = (1.0 - m) * d.c0 * d.c0 / (4.0 * m * m) + d.c0 * (d.n + 1) / (2.0 * m) -
              0.25 * d.n * (d.n + 2);
    return d;
}

enum class Generator { Jminus, J0, Jplus };

struct MonomialTerm {
    double coeff = 0.0;
    int power = 0;
};

// Action of a generator on z^p within the (n+1)-dimensional module.
// J+ annihilates z^n (coefficient 0 on z^{n+1}).
inline MonomialTerm generator_action(Generator g, int n, int p) {
    if (p < 0 || p > n) throw std::domain_error("generator_action: power outside 0..n");
    switch (g) {
        case Generator::Jminus: return {static_cast<double>(p), p - 1};
        case Generator::J0: return {p - 0.5 * n, p};
        default: return {static_cast<double>(p - n), p + 1};
    }
}

struct GaugeMatrix {
    int n = 0;  // module dimension is n+1
    Eigen::MatrixXcd entries;
};

namespace detail {

inline Eigen::MatrixXcd generator_matrix(Generator g, int n) {
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(n + 1, n + 1);
    for (int p = 0; p <= n; ++p) {
        const MonomialTerm t = generator_action(g, n, p);
        if (t.power >= 0 && t.power <= n) M(t.power, p) = t.coeff;
    }
    return M;
}

}  // namespace detail

// Matrix of the gauge Hamiltonian
//   -H = (1-m) J+^2 + (2-m) J0^2 + J-^2 + c+ (J+ + J-) + c0 J0 + c*
// on the monomial basis {1, z, ..., z^n}.  Real for Alg1/Alg2, complex for
// Alg3/Alg4 (whose matrices are entrywise conjugate).
inline GaugeMatrix gauge_hamiltonian_matrix(Algebraization alg, LameIndex idx, double m) {
    const AlgebraizationData d = algebraization_data(alg, idx, m);
    const int n = d.n;
    const Eigen::MatrixXcd Jm = detail::generator_matrix(Generator::Jminus, n);
    const Eigen::MatrixXcd J0 = detail::generator_matrix(Generator::J0, n);
    const Eigen::MatrixXcd Jp = detail::generator_matrix(Generator::Jplus, n);
    const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(n + 1, n + 1);
    GaugeMatrix g;
    g.n = n;
    g.entries = -((1.0 - m) * Jp * Jp + (2.0 - m) * J0 * J0 + Jm * Jm +
                  d.cplus * (Jp + Jm) + d.c0 * J0 + d.cstar * I);
    return g;
}

// Sorted real spectrum of the gauge Hamiltonian.  The eigenvalues must come
// out real despite the non-symmetric (and possibly complex) matrix; a
// violation signals an implementation bug rather than bad input.
inline std::vector<double> oracle_energies(Algebraization alg, LameIndex idx, double m) {
    const GaugeMatrix g = gauge_hamiltonian_matrix(alg, idx, m);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(g.entries, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("oracle_energies: eigensolver failed to converge");
    std::vector<double> ev(g.n + 1);
    double scale = 1.0;
    for (int i = 0; i <= g.n; ++i) scale = std::max(scale, std::abs(solver.eigenvalues()[i].real()));
    for (int i = 0; i <= g.n; ++i) {
        const std::complex<double> z = solver.eigenvalues()[i];
        if (std::abs(z.imag()) > 1e-10 * scale)
            throw std::runtime_error("oracle_energies: spectral reality violated");
        ev[i] = z.real();
    }
    std::sort(ev.begin(), ev.end());
    return ev;
}

}  // namespace lame
