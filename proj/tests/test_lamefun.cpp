#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <complex>

#include "lame/lamefun.hpp"
#include "lame/verify.hpp"

using namespace lame;

namespace {

const EigenfunctionSpec& pick(const std::vector<EigenfunctionSpec>& specs, FamilyTag fam,
                              int index, Branch br = Branch::One) {
    for (const auto& s : specs)
        if (s.family == fam && s.index == index && (s.lambda.is_integer() || s.branch == br))
            return s;
    throw std::runtime_error("spec not found");
}

void check_factor(const Poly& got, const std::vector<double>& expect, double tol = 1e-10) {
    REQUIRE(got.c.size() == expect.size());
    for (std::size_t i = 0; i < expect.size(); ++i)
        CHECK(got.c[i] == Catch::Approx(expect[i]).margin(tol));
}

}  // namespace

TEST_CASE("lambda = 1: the cn, sn, dn triplet") {
    const double m = 0.5;
    const auto specs = build_eigenfunctions(LameIndex(2), m);
    REQUIRE(specs.size() == 3);
    const EllipticModulus mod(m);

    const auto& c = pick(specs, FamilyTag::IntFirst, 0);
    CHECK(c.cls.factor == ClassFactor::Cn);
    CHECK(c.energy == Catch::Approx(1.0).margin(1e-12));
    const auto& s = pick(specs, FamilyTag::IntFirst, 1);
    CHECK(s.cls.factor == ClassFactor::Sn);
    CHECK(s.energy == Catch::Approx(1.0 + m).margin(1e-12));
    const auto& d = pick(specs, FamilyTag::IntSecond, 0);
    CHECK(d.cls.factor == ClassFactor::Dn);
    CHECK(d.energy == Catch::Approx(m).margin(1e-12));

    for (double x : {-1.3, 0.2, 0.9, 2.4}) {
        const JacobiTriple t = jacobi(x, mod);
        CHECK(eval(c, x) == Catch::Approx(t.cn).margin(1e-13));
        CHECK(eval(s, x) == Catch::Approx(t.sn).margin(1e-13));
        CHECK(eval(d, x) == Catch::Approx(t.dn).margin(1e-13));
    }
    CHECK(eval(c, mod.big_K()) == Catch::Approx(0.0).margin(1e-13));

    const Jet j0 = eval_with_derivatives(c, 0.0);
    CHECK(j0.value == Catch::Approx(1.0).margin(1e-14));
    CHECK(j0.d1 == Catch::Approx(0.0).margin(1e-14));
    CHECK(j0.d2 == Catch::Approx(-1.0).margin(1e-14));
}

TEST_CASE("lambda = 0: constant solution at E = 0") {
    const auto specs = build_eigenfunctions(LameIndex(0), 0.7);
    REQUIRE(specs.size() == 1);
    CHECK(specs[0].energy == 0.0);
    CHECK(eval(specs[0], 1.234) == Catch::Approx(1.0).margin(1e-15));
    const CheckEntry res = check_ode_residual(specs[0], 101);
    CHECK(res.measured == 0.0);
}

TEST_CASE("lambda = 2: monic factors of the even pair") {
    const double m = GENERATE(0.2, 0.5, 0.8);
    const auto specs = build_eigenfunctions(LameIndex(4), m);
    const double W = std::sqrt(m * m - m + 1);
    check_factor(pick(specs, FamilyTag::IntFirst, 0).alpha, {-(1 + m + W) / (3 * m), 1.0});
    check_factor(pick(specs, FamilyTag::IntFirst, 2).alpha, {-(1 + m - W) / (3 * m), 1.0});
    CHECK(pick(specs, FamilyTag::IntFirst, 0).cls.factor == ClassFactor::One);
    CHECK(pick(specs, FamilyTag::IntFirst, 1).cls.factor == ClassFactor::SnCn);
    check_factor(pick(specs, FamilyTag::IntFirst, 1).alpha, {1.0});
    CHECK(pick(specs, FamilyTag::IntSecond, 0).cls.factor == ClassFactor::CnDn);
    CHECK(pick(specs, FamilyTag::IntSecond, 1).cls.factor == ClassFactor::SnDn);
    check_factor(pick(specs, FamilyTag::IntSecond, 0).alpha, {1.0});
    check_factor(pick(specs, FamilyTag::IntSecond, 1).alpha, {1.0});
}

TEST_CASE("lambda = 3: all four golden factor families") {
    const double m = GENERATE(0.25, 0.75);
    const auto specs = build_eigenfunctions(LameIndex(6), m);
    const double a = std::sqrt(m * m - m + 4);
    const double b = std::sqrt(4 * m * m - 7 * m + 4);
    const double c = std::sqrt(4 * m * m - m + 1);
    check_factor(pick(specs, FamilyTag::IntFirst, 0).alpha, {-(m + 2 + a) / (5 * m), 1.0});
    check_factor(pick(specs, FamilyTag::IntFirst, 2).alpha, {-(m + 2 - a) / (5 * m), 1.0});
    check_factor(pick(specs, FamilyTag::IntFirst, 1).alpha, {-(2 * (m + 1) + b) / (5 * m), 1.0});
    check_factor(pick(specs, FamilyTag::IntFirst, 3).alpha, {-(2 * (m + 1) - b) / (5 * m), 1.0});
    check_factor(pick(specs, FamilyTag::IntSecond, 0).alpha, {-(2 * m + 1 + c) / (5 * m), 1.0});
    check_factor(pick(specs, FamilyTag::IntSecond, 2).alpha, {-(2 * m + 1 - c) / (5 * m), 1.0});
    check_factor(pick(specs, FamilyTag::IntSecond, 1).alpha, {1.0});
    CHECK(pick(specs, FamilyTag::IntSecond, 1).cls.factor == ClassFactor::SnCnDn);
}

TEST_CASE("lambda = 4: sn cn pair and the m = 1/2 quartic factors") {
    for (double m : {0.1, 0.5, 0.9}) {
        const auto specs = build_eigenfunctions(LameIndex(8), m);
        const double r = std::sqrt(4 * m * m - 9 * m + 9);
        check_factor(pick(specs, FamilyTag::IntFirst, 1).alpha, {-(2 * m + 3 + r) / (7 * m), 1.0});
        check_factor(pick(specs, FamilyTag::IntFirst, 3).alpha, {-(2 * m + 3 - r) / (7 * m), 1.0});
        const double u = std::sqrt(4 * m * m + m + 4);
        check_factor(pick(specs, FamilyTag::IntSecond, 0).alpha,
                     {-(2 * (m + 1) + u) / (7 * m), 1.0});
        check_factor(pick(specs, FamilyTag::IntSecond, 2).alpha,
                     {-(2 * (m + 1) - u) / (7 * m), 1.0});
        // c solves 7 m c^2 - (4 + 6m) c + 3 = 0, paired so that the energy
        // 5(2m+1) -+ 2 sqrt(9m^2-9m+4) satisfies E = 9 + 16m - 14 m c
        const double v = std::sqrt(9 * m * m - 9 * m + 4);
        check_factor(pick(specs, FamilyTag::IntSecond, 1).alpha,
                     {-(8 + 12 * m + 4 * v) / (28 * m), 1.0});
        check_factor(pick(specs, FamilyTag::IntSecond, 3).alpha,
                     {-(8 + 12 * m - 4 * v) / (28 * m), 1.0});
    }
    const auto specs = build_eigenfunctions(LameIndex(8), 0.5);
    const double s13 = std::sqrt(13.0);
    check_factor(pick(specs, FamilyTag::IntFirst, 0).alpha,
                 {2.0 / 7 * (4 + s13), -2.0 / 7 * (7 + s13), 1.0});
    check_factor(pick(specs, FamilyTag::IntFirst, 2).alpha, {0.4, -2.0, 1.0});
    check_factor(pick(specs, FamilyTag::IntFirst, 4).alpha,
                 {2.0 / 7 * (4 - s13), -2.0 / 7 * (7 - s13), 1.0});
}

TEST_CASE("lambda = 1/2: the square-root pair") {
    const double m = 0.5;
    const auto specs = build_eigenfunctions(LameIndex(1), m);
    REQUIRE(specs.size() == 2);
    const auto& one = pick(specs, FamilyTag::Half, 0, Branch::One);
    const auto& two = pick(specs, FamilyTag::Half, 0, Branch::Two);
    CHECK(one.energy == Catch::Approx(0.25 * (1 + m)).margin(1e-15));
    CHECK(one.cls.factor == ClassFactor::EcLike);
    CHECK(two.cls.factor == ClassFactor::EsLike);
    check_factor(one.alpha, {1.0});

    const EllipticModulus mod(m);
    const double K = mod.big_K();
    CHECK(eval(one, 0.0) == Catch::Approx(std::sqrt(2.0)).margin(1e-13));
    CHECK(eval(one, 4 * K) == Catch::Approx(-std::sqrt(2.0)).margin(1e-12));
    for (double x : {-2.1, -0.4, 0.9, 1.9}) {
        const JacobiTriple t = jacobi(x, mod);
        CHECK(eval(one, x) == Catch::Approx(std::sqrt(t.dn + t.cn)).margin(1e-12));
        // branch Two carries the magnitude sqrt(dn - cn); its overall sign is
        // fixed by the shift relation phi2(x) = phi1(x + 2K)
        CHECK(std::abs(eval(two, x)) == Catch::Approx(std::sqrt(t.dn - t.cn)).margin(1e-12));
        CHECK(eval(two, x) == Catch::Approx(eval(one, x + 2 * K)).margin(1e-12));
    }
    CHECK(count_zeros(one) == 0);
}

TEST_CASE("lambda = 3/2: golden alpha/beta pair and the closed form") {
    const double m = GENERATE(0.25, 0.5, 0.8);
    const auto specs = build_eigenfunctions(LameIndex(3), m);
    REQUIRE(specs.size() == 4);
    const double W = std::sqrt(m * m - m + 1);
    const auto& e0 = pick(specs, FamilyTag::Half, 0, Branch::One);
    const auto& e1 = pick(specs, FamilyTag::Half, 1, Branch::One);
    CHECK(e0.energy == Catch::Approx(1.25 * (m + 1) - W).margin(1e-12));
    CHECK(e1.energy == Catch::Approx(1.25 * (m + 1) + W).margin(1e-12));
    check_factor(e0.alpha, {1.0});
    check_factor(e0.beta, {(1 - m + W) / m});
    check_factor(e1.alpha, {1.0});
    check_factor(e1.beta, {(1 - m - W) / m});

    const EllipticModulus mod(m);
    for (double x : {-1.7, 0.0, 0.6, 1.2}) {
        const JacobiTriple t = jacobi(x, mod);
        const double expect = std::sqrt(t.dn + t.cn) * (t.cn + (1 - m + W) / m * t.dn);
        CHECK(eval(e0, x) == Catch::Approx(expect).margin(1e-11));
        const auto& o0 = pick(specs, FamilyTag::Half, 0, Branch::Two);
        const double sgn = (x > 0) ? 1.0 : (x < 0 ? -1.0 : 0.0);
        const double expect2 =
            sgn * std::sqrt(t.dn - t.cn) * (t.cn - (1 - m + W) / m * t.dn);
        CHECK(eval(o0, x) == Catch::Approx(expect2).margin(1e-11));
    }
}

TEST_CASE("lambda = 3/2: residual of the equation at a point") {
    const auto specs = build_eigenfunctions(LameIndex(3), 0.5);
    const auto& e0 = pick(specs, FamilyTag::Half, 0, Branch::One);
    const Jet p = eval_with_derivatives(e0, 0.9);
    const double sn = jacobi(0.9, EllipticModulus(0.5)).sn;
    const double strength = 0.5 * (1.5 * 2.5);  // m l(l+1)
    const double residual = p.d2 + (e0.energy - strength * sn * sn) * p.value;
    CHECK(std::abs(residual) <= 1e-9 * std::max(1.0, std::abs(p.value)));
}

TEST_CASE("lambda = 5/2 at m = 1/2: golden factors and zero counts") {
    const auto specs = build_eigenfunctions(LameIndex(5), 0.5);
    REQUIRE(specs.size() == 6);
    const double s7 = std::sqrt(7.0);
    const auto& e0 = pick(specs, FamilyTag::Half, 0, Branch::One);
    const auto& e1 = pick(specs, FamilyTag::Half, 1, Branch::One);
    const auto& e2 = pick(specs, FamilyTag::Half, 2, Branch::One);
    check_factor(e0.alpha, {-(7 + 2 * s7) / (5 + s7), 1.0});
    check_factor(e0.beta, {-2 * (2 + s7) / (5 + s7)});
    check_factor(e1.alpha, {-7.0 / 4, 1.0});
    check_factor(e1.beta, {2.0});
    check_factor(e2.alpha, {-(7 - 2 * s7) / (5 - s7), 1.0});
    check_factor(e2.beta, {-2 * (2 - s7) / (5 - s7)});

    // dense-sampling oracle for the zero count of the middle eigenfunction,
    // rebuilt from the closed form rather than through EigenfunctionSpec
    const EllipticModulus mod(0.5);
    const double twoK = 2 * mod.big_K();
    int oracle_zeros = 0;
    double prev = 0.0;
    for (int k = 1; k <= 8192; ++k) {
        const double x = twoK * k / 8193.0;
        const JacobiTriple t = jacobi(x, mod);
        const double v = std::sqrt(t.dn + t.cn) *
                         (t.sn * t.sn - 7.0 / 4 + 2.0 * t.cn * t.dn);
        if (k > 1 && std::signbit(v) != std::signbit(prev)) ++oracle_zeros;
        prev = v;
    }
    CHECK(count_zeros(e1) == oracle_zeros);

    // labels are distinct and weakly increasing with the energy index
    CHECK(count_zeros(e0) <= count_zeros(e1));
    CHECK(count_zeros(e1) <= count_zeros(e2));
    CHECK(ince_label(e0) != ince_label(e1));
    CHECK(ince_label(e1) != ince_label(e2));
    CHECK(ince_label(e0).substr(0, 2) == "Ec");
    CHECK(ince_label(pick(specs, FamilyTag::Half, 0, Branch::Two)).substr(0, 2) == "Es");
}

TEST_CASE("lambda = 5/2 at general m: closed form in the energy") {
    // phi1_i is proportional to sqrt(dn+cn) [A + B t + 2C cn dn] with A, B, C
    // quadratics in the energy; compare after the shared monic normalization
    const double m = GENERATE(0.3, 0.6, 0.9);
    const auto specs = build_eigenfunctions(LameIndex(5), m);
    for (int i = 0; i < 3; ++i) {
        const auto& s = pick(specs, FamilyTag::Half, i, Branch::One);
        const double E = s.energy;
        const double A = -25 - 130 * m + 87 * m * m + (104 + 40 * m) * E - 16 * E * E;
        const double B = m * (25 + 34 * m + 9 * m * m - (104 + 40 * m) * E + 16 * E * E);
        const double C = 25 + 430 * m + 21 * m * m - 8 * (13 + 11 * m) * E + 16 * E * E;
        check_factor(s.alpha, {A / B, 1.0}, 1e-9);
        check_factor(s.beta, {2 * C / B}, 1e-9);
    }
}

TEST_CASE("count_zeros rejects integer specs; labels increase for 3/2") {
    const auto integer_specs = build_eigenfunctions(LameIndex(2), 0.5);
    CHECK_THROWS_AS(count_zeros(integer_specs[0]), std::domain_error);
    const auto specs = build_eigenfunctions(LameIndex(3), 0.5);
    const int r0 = pick(specs, FamilyTag::Half, 0).cls.zero_count;
    const int r1 = pick(specs, FamilyTag::Half, 1).cls.zero_count;
    CHECK(r0 < r1);
}

TEST_CASE("branch relation, quasi-momentum and anti-periodicity") {
    for (int tl : {1, 3, 5, 7}) {
        const double m = 0.6;
        const auto specs = build_eigenfunctions(LameIndex(tl), m);
        const EllipticModulus mod(m);
        const double K = mod.big_K();
        for (std::size_t i = 0; i + 1 < specs.size(); i += 2) {
            const auto& one = specs[i];
            const auto& two = specs[i + 1];
            double mx = 1.0;
            for (int g = 0; g <= 40; ++g) {
                const double x = -2 * K + 4 * K * (g + 0.31) / 41.0;
                mx = std::max(mx, std::abs(eval(one, x)));
                CHECK(std::abs(eval(two, x) - eval(one, x + 2 * K)) <= 1e-10 * mx);
                const std::complex<double> u(eval(one, x), eval(two, x));
                const std::complex<double> us(eval(one, x + 2 * K), eval(two, x + 2 * K));
                const std::complex<double> i1(0, 1);
                CHECK(std::abs(us - (-i1) * u) <= 1e-10 * (1.0 + std::abs(u)));
                CHECK(std::abs(std::conj(us) - i1 * std::conj(u)) <= 1e-10 * (1.0 + std::abs(u)));
                CHECK(std::abs(eval(one, x + 4 * K) + eval(one, x)) <= 1e-10 * mx);
                CHECK(std::abs(eval(one, x + 8 * K) - eval(one, x)) <= 1e-10 * mx);
                // parity
                CHECK(std::abs(eval(one, -x) - eval(one, x)) <= 1e-11 * mx);
                CHECK(std::abs(eval(two, -x) + eval(two, x)) <= 1e-11 * mx);
            }
        }
    }
}

TEST_CASE("stabilized evaluation near the repair points") {
    const auto specs = build_eigenfunctions(LameIndex(3), 0.5);
    const auto& one = pick(specs, FamilyTag::Half, 0, Branch::One);
    const EllipticModulus mod(0.5);
    const double K = mod.big_K();
    // smooth across 2K: compare against a straddling central difference
    const double h = 1e-4;
    for (double base : {2 * K, -2 * K, 6 * K}) {
        const Jet at = eval_with_derivatives(one, base);
        const double cd = (eval(one, base + h) - eval(one, base - h)) / (2 * h);
        CHECK(at.d1 == Catch::Approx(cd).margin(1e-6));
    }
    // diagnostic (non-stabilized) mode rejects the immediate vicinity only
    CHECK_THROWS_AS(eval_with_derivatives(one, 2 * K + 1e-12, false), std::domain_error);
    CHECK_NOTHROW(eval_with_derivatives(one, 2 * K + 1e-4, false));
    const auto& two = pick(specs, FamilyTag::Half, 0, Branch::Two);
    CHECK_THROWS_AS(eval_with_derivatives(two, 1e-12, false), std::domain_error);
    CHECK_NOTHROW(eval_with_derivatives(two, 0.1, false));
}

TEST_CASE("even specs have vanishing derivative at the origin") {
    for (int tl : {0, 1, 4, 7}) {
        for (const auto& s : build_eigenfunctions(LameIndex(tl), 0.55)) {
            const bool even_fn =
                s.lambda.is_integer() ? (s.index % 2 == 0) : (s.branch == Branch::One);
            if (!even_fn) continue;
            CHECK(std::abs(eval_with_derivatives(s, 0.0).d1) <= 1e-13);
        }
    }
}

TEST_CASE("analytic first derivative agrees with central differences") {
    const double h = 1e-5;
    for (int tl : {2, 5, 8}) {
        const auto specs = build_eigenfunctions(LameIndex(tl), 0.4);
        const EllipticModulus mod(0.4);
        for (const auto& s : specs)
            for (int i = 0; i < 9; ++i) {
                const double x = -1.8 * mod.big_K() + 3.6 * mod.big_K() * i / 8.0;
                const Jet p = eval_with_derivatives(s, x);
                const double cd = (eval(s, x + h) - eval(s, x - h)) / (2 * h);
                CHECK(std::abs(p.d1 - cd) <= 1e-7);
            }
    }
}

TEST_CASE("integer classes: class degree bookkeeping") {
    for (int tl : {4, 6, 8, 12}) {
        const auto specs = build_eigenfunctions(LameIndex(tl), 0.4);
        CHECK(specs.size() == static_cast<std::size_t>(tl + 1));
        const int lam = tl / 2;
        const int N = (lam % 2 == 0) ? lam / 2 : (lam - 1) / 2;
        for (const auto& s : specs) {
            const int deg = s.alpha.degree();
            switch (s.cls.factor) {
                case ClassFactor::One: CHECK(deg == N); break;
                case ClassFactor::Cn:
                case ClassFactor::Sn:
                case ClassFactor::Dn: CHECK(deg == N); break;
                default: CHECK(deg == N - 1); break;
            }
            CHECK(s.alpha.c.back() == 1.0);
            CHECK(s.scale != 0.0);
        }
    }
}

TEST_CASE("chebyshev-series evaluation matches the sn^2-factor reconstruction") {
    for (int tl : {4, 6, 8}) {
        const double m = 0.35;
        const auto specs = build_eigenfunctions(LameIndex(tl), m);
        const EllipticModulus mod(m);
        for (const auto& s : specs) {
            for (double x : {-0.9, 0.3, 1.4}) {
                const JacobiTriple t = jacobi(x, mod);
                double pre = 1.0;
                switch (s.cls.factor) {
                    case ClassFactor::One: break;
                    case ClassFactor::SnCn: pre = t.sn * t.cn; break;
                    case ClassFactor::CnDn: pre = t.cn * t.dn; break;
                    case ClassFactor::SnDn: pre = t.sn * t.dn; break;
                    case ClassFactor::Cn: pre = t.cn; break;
                    case ClassFactor::Sn: pre = t.sn; break;
                    case ClassFactor::Dn: pre = t.dn; break;
                    default: pre = t.sn * t.cn * t.dn; break;
                }
                const double via_poly = pre * s.alpha(t.sn * t.sn);
                CHECK(eval(s, x) == Catch::Approx(via_poly).margin(1e-11));
            }
        }
    }
}
