#pragma once

#include <stdexcept>

#include "lame/jet.hpp"

namespace lame {

// T and U are the usual Chebyshev polynomials, T_j(cos a) = cos(ja) and
// U_{j-1}(cos a) sin a = sin(ja).  Ttilde and Utilde are the even
// polynomials T~_{2j}(t) = T_{2j+1}(t)/t and U~_{2j}(t) = U_{2j+1}(t)/t of
// degree 2j; they are evaluated by their own degree-two-step recurrence so
// that t = 0 needs no special casing.
enum class ChebKind { T, U, Ttilde, Utilde };

template <class Num>
Num cheb_eval(ChebKind kind, int degree, Num t) {
    switch (kind) {
        case ChebKind::T: {
            if (degree < 0) throw std::domain_error("cheb_eval: T requires degree >= 0");
            Num prev(1.0);
            if (degree == 0) return prev;
            Num cur = t;
            for (int k = 1; k < degree; ++k) {
                Num next = 2.0 * t * cur - prev;
                prev = cur;
                cur = next;
            }
            return cur;
        }
        case ChebKind::U: {
            if (degree == -1) return Num(0.0);  // formal U_{-1} = 0
            if (degree < -1) throw std::domain_error("cheb_eval: U requires degree >= -1");
            Num prev(1.0);
            if (degree == 0) return prev;
            Num cur = 2.0 * t;
            for (int k = 1; k < degree; ++k) {
                Num next = 2.0 * t * cur - prev;
                prev = cur;
                cur = next;
            }
            return cur;
        }
        case ChebKind::Ttilde:
        case ChebKind::Utilde: {
            if (degree < 0 || degree % 2 != 0)
                throw std::domain_error("cheb_eval: tilde kinds require even degree >= 0");
            const Num w = 4.0 * t * t - 2.0;
            Num prev = (kind == ChebKind::Ttilde) ? Num(1.0) : Num(2.0);
            if (degree == 0) return prev;
            Num cur = (kind == ChebKind::Ttilde) ? (w - 1.0) : (2.0 * w);
            for (int k = 1; 2 * k < degree; ++k) {
                Num next = w * cur - prev;
                prev = cur;
                cur = next;
            }
            return cur;
        }
    }
    throw std::logic_error("cheb_eval: bad kind");
}

// Value with d/dt and d^2/dt^2.
inline Jet cheb_eval_d(ChebKind kind, int degree, double t) {
    return cheb_eval(kind, degree, Jet::variable(t));
}

}  // namespace lame
