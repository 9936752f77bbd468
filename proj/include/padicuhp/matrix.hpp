#pragma once

// 2x2 matrices over a p-adic field and the Moebius action on P^1(K).

#include <array>

#include "padicuhp/padic.hpp"

namespace padicuhp {

// point of P^1(K): finite value or infinity
struct P1Point {
    bool inf = false;
    PadicScalar t;

    static P1Point infinity(const FieldDesc& F) {
        P1Point x;
        x.inf = true;
        x.t = PadicScalar::zero(F);
        return x;
    }
    static P1Point finite(PadicScalar v) { return P1Point{false, std::move(v)}; }
};

struct Mat2 {
    PadicScalar a, b, c, d;

    Mat2() = default;
    Mat2(PadicScalar a_, PadicScalar b_, PadicScalar c_, PadicScalar d_)
        : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {}

    static Mat2 identity(const FieldDesc& F) {
        return Mat2(PadicScalar::one(F), PadicScalar::zero(F), PadicScalar::zero(F),
                    PadicScalar::one(F));
    }
    static Mat2 from_ints(const FieldDesc& F, long long A, long long B, long long C, long long D) {
        return Mat2(PadicScalar::from_int(F, A), PadicScalar::from_int(F, B),
                    PadicScalar::from_int(F, C), PadicScalar::from_int(F, D));
    }
    static Mat2 from_rats(const FieldDesc& F, const Rat& A, const Rat& B, const Rat& C, const Rat& D) {
        return Mat2(PadicScalar::from_rat(F, A), PadicScalar::from_rat(F, B),
                    PadicScalar::from_rat(F, C), PadicScalar::from_rat(F, D));
    }

    const FieldDesc& field() const { return a.field(); }

    PadicScalar det() const { return a * d - b * c; }
    PadicScalar trace() const { return a + d; }

    long long ord_det_pi() const {
        PadicScalar D = det();
        if (D.is_zero()) throw compute_error("singular matrix");
        return D.ord_pi();
    }

    Mat2 operator*(const Mat2& o) const {
        return Mat2(a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d);
    }

    Mat2 inv() const {
        PadicScalar D = det();
        if (D.is_zero()) throw compute_error("singular matrix");
        PadicScalar Di = D.inv();
        return Mat2(d * Di, -b * Di, -c * Di, a * Di);
    }

    Mat2 scaled(const PadicScalar& s) const { return Mat2(a * s, b * s, c * s, d * s); }

    // Moebius action
    P1Point apply(const P1Point& x) const {
        if (x.inf) {
            if (c.is_zero()) return P1Point::infinity(field());
            return P1Point::finite(a / c);
        }
        PadicScalar num = a * x.t + b;
        PadicScalar den = c * x.t + d;
        if (den.is_zero()) return P1Point::infinity(field());
        return P1Point::finite(num / den);
    }
    PadicScalar apply_finite(const PadicScalar& t) const {
        P1Point r = apply(P1Point::finite(t));
        if (r.inf) throw compute_error("Moebius image is infinity");
        return r.t;
    }

    // apply with entries embedded into a larger field
    Mat2 embedded(const FieldDesc& L) const {
        return Mat2(embed(a, L), embed(b, L), embed(c, L), embed(d, L));
    }
};

} // namespace padicuhp
