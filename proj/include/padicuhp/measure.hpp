#pragma once

// Z^r-valued finitely additive measures on P^1(K) stored as harmonic edge
// cocycles: mu(U_e) is attached to the oriented edge e, with mu(reverse(e)) =
// -mu(e) and zero outgoing sum at every vertex.  Evaluation on balls, the
// Gamma-action, the distance-weighted extension to divisors on the upper
// half plane, and Riemann sums against logNorm kernels.

#include <functional>
#include <map>
#include <memory>
#include <sstream>
#include <vector>

#include "padicuhp/tree.hpp"

namespace padicuhp {

using ZVec = std::vector<long long>;

inline ZVec zvec(int r) { return ZVec(r, 0); }
inline ZVec& operator+=(ZVec& a, const ZVec& b) {
    for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}
inline ZVec operator-(const ZVec& a) {
    ZVec r = a;
    for (auto& c : r) c = -c;
    return r;
}
inline bool is_zero(const ZVec& a) {
    for (auto c : a)
        if (c != 0) return false;
    return true;
}

// value of a measure on the ball U_e, indexed by the oriented edge e
class EdgeCocycle {
public:
    virtual ~EdgeCocycle() = default;
    virtual int rank() const = 0;
    virtual ZVec value(const BTTree& T, const TreeEdge& e) const = 0;
    // false certifies that the measure vanishes on U_e and on every sub-ball
    virtual bool support_meets(const BTTree& T, const TreeEdge& e) const {
        (void)T;
        (void)e;
        return true;
    }
    virtual long long resolved_depth() const { return 1LL << 40; }
};

// delta_0 - delta_infty; the harmonic measure of the standard Tate line
class TateCocycle final : public EdgeCocycle {
public:
    int rank() const override { return 1; }
    ZVec value(const BTTree& T, const TreeEdge& e) const override {
        Ball B = T.ball_of_edge(e);
        long long v = 0;
        if (contains_zero(B)) v += 1;
        if (B.cointerior) v -= 1; // contains infinity
        return {v};
    }
    bool support_meets(const BTTree& T, const TreeEdge& e) const override {
        Ball B = T.ball_of_edge(e);
        return contains_zero(B) || B.cointerior;
    }

private:
    static bool contains_zero(const Ball& B) {
        bool in = B.c.is_zero() || B.c.lo >= B.m;
        return B.cointerior ? !in : in;
    }
};

// finitely supported explicit backing within a fixed depth of the base vertex
class ExplicitCocycle final : public EdgeCocycle {
public:
    ExplicitCocycle(const BTTree& T, int rank, long long depth,
                    const std::map<TreeEdge, ZVec>& entries)
        : rank_(rank), depth_(depth) {
        for (const auto& [e, v] : entries) {
            if (static_cast<int>(v.size()) != rank_) throw input_error("measure entry rank mismatch");
            store(T, e, v);
        }
    }

    int rank() const override { return rank_; }
    long long resolved_depth() const override { return depth_; }

    ZVec value(const BTTree& T, const TreeEdge& e) const override {
        if (edge_depth(T, e) > depth_)
            throw compute_error("measure evaluated beyond its resolved depth");
        auto it = values_.find(e);
        if (it != values_.end()) return it->second;
        auto rit = values_.find(e.reversed());
        if (rit != values_.end()) return -rit->second;
        return zvec(rank_);
    }

    bool support_meets(const BTTree& T, const TreeEdge& e) const override {
        // support certified only through stored nonzero entries: an edge whose
        // subtree holds no stored mass and whose own value is zero is dead
        if (!is_zero(value(T, e))) return true;
        for (const auto& [se, sv] : values_) {
            if (is_zero(sv)) continue;
            if (subtree_contains(T, e, se.dst) || subtree_contains(T, e, se.src)) return true;
        }
        return false;
    }

private:
    static long long edge_depth(const BTTree& T, const TreeEdge& e) {
        return std::max(T.distance(TreeVertex::base(), e.src), T.distance(TreeVertex::base(), e.dst));
    }
    static bool subtree_contains(const BTTree& T, const TreeEdge& e, const TreeVertex& v) {
        // v lies strictly beyond e (on the dst side)
        return T.distance(v, e.dst) < T.distance(v, e.src);
    }
    void store(const BTTree& T, const TreeEdge& e, const ZVec& v) {
        if (edge_depth(T, e) > depth_) throw input_error("measure entry beyond depth");
        values_[e] = v;
        values_[e.reversed()] = -v;
    }

    int rank_;
    long long depth_;
    std::map<TreeEdge, ZVec> values_;
};

class SumCocycle final : public EdgeCocycle {
public:
    SumCocycle(std::shared_ptr<const EdgeCocycle> a, std::shared_ptr<const EdgeCocycle> b)
        : a_(std::move(a)), b_(std::move(b)) {
        if (a_->rank() != b_->rank()) throw input_error("measure sum: rank mismatch");
    }
    int rank() const override { return a_->rank(); }
    ZVec value(const BTTree& T, const TreeEdge& e) const override {
        ZVec v = a_->value(T, e);
        const ZVec w = b_->value(T, e);
        for (size_t i = 0; i < v.size(); ++i) v[i] += w[i];
        return v;
    }
    bool support_meets(const BTTree& T, const TreeEdge& e) const override {
        return a_->support_meets(T, e) || b_->support_meets(T, e);
    }
    long long resolved_depth() const override {
        return std::min(a_->resolved_depth(), b_->resolved_depth());
    }

private:
    std::shared_ptr<const EdgeCocycle> a_, b_;
};

class PushedCocycle final : public EdgeCocycle {
public:
    PushedCocycle(std::shared_ptr<const EdgeCocycle> base, const BTTree& T, const Mat2& g)
        : base_(std::move(base)), ginv_(g.inv()) {
        (void)T;
    }
    int rank() const override { return base_->rank(); }
    ZVec value(const BTTree& T, const TreeEdge& e) const override {
        return base_->value(T, T.act(ginv_, e));
    }
    bool support_meets(const BTTree& T, const TreeEdge& e) const override {
        return base_->support_meets(T, T.act(ginv_, e));
    }
    long long resolved_depth() const override { return base_->resolved_depth(); }

private:
    std::shared_ptr<const EdgeCocycle> base_;
    Mat2 ginv_;
};

// ---------------------------------------------------------------------------
struct ValidationReport {
    bool ok = true;
    std::string first_violation;
};

class HarmonicMeasure {
public:
    HarmonicMeasure(FieldDesc K, std::shared_ptr<const EdgeCocycle> impl)
        : tree_(std::move(K)), impl_(std::move(impl)) {}

    static HarmonicMeasure tate(const FieldDesc& K) {
        return HarmonicMeasure(K, std::make_shared<TateCocycle>());
    }
    static HarmonicMeasure explicit_backing(const FieldDesc& K, int rank, long long depth,
                                            const std::map<TreeEdge, ZVec>& entries) {
        BTTree T(K);
        return HarmonicMeasure(K, std::make_shared<ExplicitCocycle>(T, rank, depth, entries));
    }

    const BTTree& tree() const { return tree_; }
    const FieldDesc& field() const { return tree_.field(); }
    int rank() const { return impl_->rank(); }
    long long resolved_depth() const { return impl_->resolved_depth(); }
    const std::shared_ptr<const EdgeCocycle>& cocycle() const { return impl_; }

    ZVec value(const TreeEdge& e) const { return impl_->value(tree_, e); }
    bool support_meets(const TreeEdge& e) const { return impl_->support_meets(tree_, e); }

    ZVec measure_of_ball(const Ball& B) const { return value(tree_.edge_of_ball(B)); }

    HarmonicMeasure gamma_push(const Mat2& g) const {
        return HarmonicMeasure(field(), std::make_shared<PushedCocycle>(impl_, tree_, g));
    }

    HarmonicMeasure operator+(const HarmonicMeasure& o) const {
        if (!field().same_field(o.field())) throw input_error("measure sum: field mismatch");
        return HarmonicMeasure(field(), std::make_shared<SumCocycle>(impl_, o.impl_));
    }

    ValidationReport validate(long long depth) const {
        ValidationReport rep;
        tree_.for_each_vertex_within(depth, [&](const TreeVertex& v) {
            if (!rep.ok) return;
            ZVec sum = zvec(rank());
            for (const auto& w : tree_.neighbors(v)) {
                TreeEdge e(v, w);
                ZVec ve = value(e);
                ZVec vr = value(e.reversed());
                ZVec s = ve;
                s += vr;
                if (!is_zero(s)) {
                    rep.ok = false;
                    rep.first_violation = "antisymmetry fails at " + e.to_string();
                    return;
                }
                sum += ve;
            }
            if (!is_zero(sum)) {
                rep.ok = false;
                rep.first_violation = "vertex sum nonzero at " + v.to_string();
            }
        });
        return rep;
    }

    // depth-D partition of P^1(K) by outward edges, pruned to the support
    void for_each_partition_ball(long long depth,
                                 const std::function<void(const TreeEdge&, const Ball&)>& fn) const {
        if (depth < 1) throw input_error("partition depth must be >= 1");
        std::function<void(const TreeEdge&, long long)> rec = [&](const TreeEdge& e, long long level) {
            if (!impl_->support_meets(tree_, e)) return;
            if (level == depth) {
                fn(e, tree_.ball_of_edge(e));
                return;
            }
            for (const auto& e2 : tree_.forward_edges(e)) rec(e2, level + 1);
        };
        for (const auto& w : tree_.neighbors(TreeVertex::base()))
            rec(TreeEdge(TreeVertex::base(), w), 1);
    }

    // sum of c_B * mu(B) over a ball-indexed step function
    ZVec integrate_locally_constant(const std::vector<std::pair<Ball, long long>>& steps) const {
        ZVec acc = zvec(rank());
        for (const auto& [B, cB] : steps) {
            ZVec v = measure_of_ball(B);
            for (int i = 0; i < rank(); ++i) acc[i] += cB * v[i];
        }
        return acc;
    }

    // Riemann sum of logNorm((t - tau1)/(t - tau2)) against the measure; the
    // two kernel halves may live in different quadratic extensions
    std::vector<PadicScalar> integrate_log_kernel(const ExtPoint& tau1, const ExtPoint& tau2,
                                                  long long depth) const {
        if (depth > resolved_depth()) throw compute_error("depth exceeds measure resolution");
        FieldDesc B = field().base();
        std::vector<PadicScalar> acc(rank(), PadicScalar::zero(B));
        for_each_partition_ball(depth, [&](const TreeEdge& e, const Ball& ball) {
            ZVec mu = value(e);
            if (is_zero(mu)) return;
            P1Point t = tree_.sample_point(ball);
            if (t.inf) return; // kernel value 1 at infinity
            PadicScalar term = (embed(t.t, tau1.tau.field()) - tau1.tau).log_norm() -
                               (embed(t.t, tau2.tau.field()) - tau2.tau).log_norm();
            for (int i = 0; i < rank(); ++i)
                if (mu[i] != 0) acc[i] = acc[i] + term * PadicScalar::from_int(B, mu[i]);
        });
        return acc;
    }

private:
    BTTree tree_;
    std::shared_ptr<const EdgeCocycle> impl_;
};

// ---------------------------------------------------------------------------
// Divisors on the upper half plane reduced to tree points.
// ---------------------------------------------------------------------------
struct TreeDivisor {
    std::vector<std::pair<TreePoint, long long>> terms;

    long long degree() const {
        long long d = 0;
        for (const auto& [P, m] : terms) d += m;
        return d;
    }
};

using QVec = std::vector<Rat>;

inline QVec qvec(int r) { return QVec(r, Rat(0)); }
inline QVec& operator+=(QVec& a, const QVec& b) {
    for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

namespace detail_measure {

// signed path sum of the cocycle from Q to P, midpoints weighted 1/2
inline QVec pair_value(const HarmonicMeasure& mu, const TreePoint& P, const TreePoint& Q) {
    const BTTree& T = mu.tree();
    QVec acc = qvec(mu.rank());
    if (P == Q) return acc;
    auto add_edge = [&](const TreeEdge& e, const Rat& w) {
        ZVec v = mu.value(e);
        for (int i = 0; i < mu.rank(); ++i) acc[i] += Rat(v[i]) * w;
    };
    // choose inner endpoints: for a midpoint, the endpoint nearer the other
    auto inner = [&](const TreePoint& X, const TreePoint& Y) -> TreeVertex {
        if (!X.mid) return X.v;
        const TreeVertex& ref = Y.v;
        return (T.distance(X.v, ref) <= T.distance(X.w, ref)) ? X.v : X.w;
    };
    TreeVertex q_in = inner(Q, P), p_in = inner(P, Q);
    if (Q.mid) {
        // leave Q through its inner endpoint: half of (far -> inner)
        TreeVertex far = (q_in == Q.v) ? Q.w : Q.v;
        add_edge(TreeEdge(far, q_in), Rat(1, 2));
    }
    for (const auto& e : T.path_edges(q_in, p_in)) add_edge(e, Rat(1));
    if (P.mid) {
        TreeVertex far = (p_in == P.v) ? P.w : P.v;
        add_edge(TreeEdge(p_in, far), Rat(1, 2));
    }
    return acc;
}

} // namespace detail_measure

// evaluation of the measure as a functional on degree-zero divisors
inline QVec eval_on_divisor(const HarmonicMeasure& mu, const TreeDivisor& d) {
    if (d.degree() != 0) throw input_error("divisor functional needs degree zero");
    QVec acc = qvec(mu.rank());
    if (d.terms.empty()) return acc;
    const TreePoint& base = d.terms.front().first;
    for (const auto& [P, m] : d.terms) {
        if (m == 0) continue;
        QVec v = detail_measure::pair_value(mu, P, base);
        for (int i = 0; i < mu.rank(); ++i) acc[i] += Rat(m) * v[i];
    }
    return acc;
}

inline QVec eval_on_divisor(const HarmonicMeasure& mu, const ExtPoint& tau1, const ExtPoint& tau2) {
    TreeDivisor d;
    d.terms = {{reduce_to_tree(tau1), 1}, {reduce_to_tree(tau2), -1}};
    return eval_on_divisor(mu, d);
}

// vertex functions extended to Div(H) by the distance-weighted interpolation
template <typename V>
class VertexFunctional {
public:
    explicit VertexFunctional(std::function<V(const TreeVertex&)> f) : f_(std::move(f)) {}

    V at_vertex(const TreeVertex& v) const { return f_(v); }

    // value at a tree point: midpoints average the endpoint values
    template <typename Add, typename Scale>
    V at_point(const TreePoint& P, Add add, Scale scale) const {
        if (!P.mid) return f_(P.v);
        return scale(add(f_(P.v), f_(P.w)), Rat(1, 2));
    }

private:
    std::function<V(const TreeVertex&)> f_;
};

} // namespace padicuhp
