#pragma once

// The multiplicative integral of f_d(t) = (t - tau1)/(t - tau2) against a
// harmonic measure, computed as a product over the depth-D ball partition
// with canonical sample points.  Values live in L^x tensor Z^r and are kept
// in (exact valuation, unit part) split form, so the ord projection is exact
// once the partition separates the two reduction points.

#include "padicuhp/measure.hpp"

namespace padicuhp {

struct MultIntegralValue {
    FieldDesc L;                   // field of the unit parts
    std::vector<Rat> val;          // exact ord_p components
    std::vector<PadicScalar> unit; // unit parts at working precision
    int guaranteed_prec = 0;       // certified p-digit precision of the units
    bool ord_certified = false;    // partition deep enough for exact ord

    int rank() const { return static_cast<int>(val.size()); }

    static MultIntegralValue identity(const FieldDesc& L, int r) {
        MultIntegralValue v;
        v.L = L;
        v.val.assign(r, Rat(0));
        v.unit.assign(r, PadicScalar::one(L));
        v.guaranteed_prec = L.N;
        v.ord_certified = true;
        return v;
    }

    MultIntegralValue operator*(const MultIntegralValue& o) const {
        if (!L.same_field(o.L) || rank() != o.rank()) throw input_error("integral value mismatch");
        MultIntegralValue r = *this;
        for (int i = 0; i < rank(); ++i) {
            r.val[i] += o.val[i];
            r.unit[i] = r.unit[i] * o.unit[i];
        }
        r.guaranteed_prec = std::min(guaranteed_prec, o.guaranteed_prec);
        r.ord_certified = ord_certified && o.ord_certified;
        return r;
    }
    MultIntegralValue inverse() const {
        MultIntegralValue r = *this;
        for (int i = 0; i < rank(); ++i) {
            r.val[i] = -r.val[i];
            r.unit[i] = r.unit[i].inv();
        }
        return r;
    }

    std::vector<Rat> ord_part() const { return val; }
    std::vector<PadicScalar> log_part() const {
        std::vector<PadicScalar> out;
        out.reserve(unit.size());
        for (size_t i = 0; i < unit.size(); ++i) {
            // val contributes log(pi)^{e val}; the Iwasawa log of the stored
            // unit covers the rest (log p = 0)
            PadicScalar lg = unit[i].iwasawa_log();
            if (L.e == 2 && val[i].numerator() != 0) {
                // reconstruct pi^{e*val} * unit before taking the logarithm
                Rat w = val[i] * Rat(L.e);
                if (w.denominator() != 1) throw compute_error("log_part: fractional pi power");
                lg = unit[i].mul_pow_pi(w.numerator()).iwasawa_log();
            }
            out.push_back(lg);
        }
        return out;
    }
    std::vector<PadicScalar> log_norm_part() const {
        std::vector<PadicScalar> out;
        out.reserve(unit.size());
        for (size_t i = 0; i < unit.size(); ++i) {
            PadicScalar ln = unit[i].log_norm();
            if (L.e == 2 && val[i].numerator() != 0) {
                Rat w = val[i] * Rat(L.e);
                if (w.denominator() != 1) throw compute_error("log_norm_part: fractional pi power");
                ln = unit[i].mul_pow_pi(w.numerator()).log_norm();
            }
            out.push_back(ln);
        }
        return out;
    }
};

enum class SampleRule { center, shifted };

struct MultIntegralOptions {
    SampleRule sample = SampleRule::center;
};

// distance between reduction points, in half-integer steps
inline Rat tree_point_distance(const BTTree& T, const TreePoint& A, const TreePoint& B) {
    auto vd = [&](const TreeVertex& x, const TreeVertex& y) { return Rat(T.distance(x, y)); };
    if (!A.mid && !B.mid) return vd(A.v, B.v);
    if (A.mid && !B.mid) {
        Rat d1 = vd(A.v, B.v), d2 = vd(A.w, B.v);
        return std::min(d1, d2) + Rat(1, 2);
    }
    if (!A.mid && B.mid) return tree_point_distance(T, B, A);
    if (A == B) return Rat(0);
    Rat best = vd(A.v, B.v);
    best = std::min(best, vd(A.v, B.w));
    best = std::min(best, vd(A.w, B.v));
    best = std::min(best, vd(A.w, B.w));
    return best + Rat(1);
}

inline MultIntegralValue mult_integral(const HarmonicMeasure& mu, const ExtPoint& tau1,
                                       const ExtPoint& tau2, long long depth,
                                       const MultIntegralOptions& opt = {}) {
    const FieldDesc& L = tau1.tau.field();
    if (!L.same_field(tau2.tau.field()))
        throw input_error("mult_integral: divisor points must share their extension");
    if (depth > mu.resolved_depth()) throw compute_error("depth exceeds measure resolution");
    const BTTree& T = mu.tree();
    int r = mu.rank();

    MultIntegralValue acc = MultIntegralValue::identity(L, r);
    long long margin = 0; // worst sampling margin, in pi_L units

    mu.for_each_partition_ball(depth, [&](const TreeEdge& e, const Ball& ball) {
        ZVec m = mu.value(e);
        if (is_zero(m)) return;
        P1Point t = T.sample_point(ball);
        PadicScalar fval;
        if (t.inf) {
            if (opt.sample == SampleRule::center) return; // f_d(inf) = 1 exactly
            // alternative finite sample just outside the complemented ball
            PadicScalar tt = scalar_of(T.field(), ball.c) +
                             PadicScalar::from_int(T.field(), T.field().p).pow_int(ball.m - 1);
            fval = (embed(tt, L) - tau1.tau) / (embed(tt, L) - tau2.tau);
        } else {
            PadicScalar tt = t.t;
            if (opt.sample == SampleRule::shifted) {
                // Teichmueller-shifted center: stays inside the same ball
                tt = tt + PadicScalar::from_int(T.field(), T.field().p).pow_int(ball.m);
            }
            PadicScalar x = embed(tt, L) - tau1.tau;
            PadicScalar y = embed(tt, L) - tau2.tau;
            margin = std::max({margin, -std::min(0LL, x.ord_pi()), -std::min(0LL, y.ord_pi())});
            fval = x / y;
        }
        Rat o = fval.ord();
        PadicScalar u = fval.mul_pow_pi(-fval.ord_pi());
        for (int i = 0; i < r; ++i) {
            if (m[i] == 0) continue;
            acc.val[i] += Rat(m[i]) * o;
            acc.unit[i] = acc.unit[i] * u.pow_int(m[i]);
        }
    });

    // certified precision of the refinement limit: sampling inside a depth-D
    // ball moves log f by O(pi^(D - c)) with c controlled by the margins
    long long tau_margin =
        std::max({0LL, -tau1.tau.ord_pi() / L.e, -tau2.tau.ord_pi() / L.e, margin / L.e});
    int method_prec = static_cast<int>(depth - 1 - 2 * tau_margin);
    int unit_prec = L.N;
    for (const auto& u : acc.unit) unit_prec = std::min(unit_prec, u.prec());
    acc.guaranteed_prec = std::min(method_prec, unit_prec);

    // ord components are exact once no partition ball contains a reduction
    // point strictly inside
    TreePoint base = TreePoint::at_vertex(TreeVertex::base());
    Rat reach = std::max(tree_point_distance(T, base, reduce_to_tree(tau1)),
                         tree_point_distance(T, base, reduce_to_tree(tau2)));
    acc.ord_certified = Rat(depth) >= reach + Rat(1);
    return acc;
}

// Remark-level invariance of the integral under gamma in Gamma for
// Gamma-invariant measures: exact in ord, p^(prec - slack) in the units.
inline bool gamma_invariance_check(const HarmonicMeasure& mu, const Mat2& g, const ExtPoint& tau1,
                                   const ExtPoint& tau2, long long depth, int slack = 2) {
    auto base = mult_integral(mu, tau1, tau2, depth);
    auto moved = mult_integral(mu, tau1.moved(g), tau2.moved(g), depth);
    if (base.ord_part() != moved.ord_part()) return false;
    int prec = std::min(base.guaranteed_prec, moved.guaranteed_prec) - slack;
    if (prec < 1) throw compute_error("gamma_invariance_check: no certified precision left");
    for (int i = 0; i < base.rank(); ++i)
        if (!PadicScalar::eq_mod(base.unit[i], moved.unit[i], Rat(prec))) return false;
    return true;
}

} // namespace padicuhp
