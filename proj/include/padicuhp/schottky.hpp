#pragma once

// Schottky groups in PGL_2(K) certified by ping-pong ball pairs with exact
// pairing g_i(P^1 \ B_i^-) = B_i^+, the finite quotient of the limit-set
// subtree, the universal Gamma-invariant measure, period matrices of the
// uniformized Jacobian, and L-invariants.
//
// With exact pairing the fundamental domain is the region between the 2g
// ball edges ("ports"); vertex and edge orbits are reduced by repeatedly
// applying the generator attached to the ball whose side contains the point.
// The quotient graph is the convex hull of the port sources plus one glued
// port edge per generator, so its first Betti number is the rank.

#include <optional>
#include <mutex>

#include "padicuhp/integral.hpp"

namespace padicuhp {

struct PingPongPair {
    Ball minus; // repelling side
    Ball plus;  // attracting side, equals g(complement of minus)
};

class SchottkyGroup {
public:
    SchottkyGroup(FieldDesc K, std::vector<Mat2> gens, std::vector<PingPongPair> balls)
        : K_(std::move(K)), tree_(K_), gens_(std::move(gens)), balls_(std::move(balls)) {
        if (gens_.empty()) throw input_error("schottky: no generators");
        if (balls_.size() != gens_.size()) throw input_error("schottky: ball count mismatch");
        certify();
    }

    // automatic ping-pong search from the eigenvector structure
    static std::shared_ptr<SchottkyGroup> with_auto_balls(const FieldDesc& K,
                                                          const std::vector<Mat2>& gens) {
        std::vector<PingPongPair> balls;
        BTTree T(K);
        for (const auto& g : gens) balls.push_back(search_pair(T, g, gens, balls));
        return std::make_shared<SchottkyGroup>(K, gens, balls);
    }

    const FieldDesc& field() const { return K_; }
    const BTTree& tree() const { return tree_; }
    int genus() const { return static_cast<int>(gens_.size()); }
    const std::vector<Mat2>& generators() const { return gens_; }
    const std::vector<PingPongPair>& ball_pairs() const { return balls_; }

    // port edges, oriented into their balls
    TreeEdge port(int i, int sigma) const { // sigma: +1 or -1
        const Ball& B = (sigma > 0) ? balls_[i].plus : balls_[i].minus;
        return tree_.edge_of_ball(B);
    }

    bool in_ball_side(const TreeVertex& v, const TreeEdge& port_edge) const {
        return tree_.distance(v, port_edge.dst) < tree_.distance(v, port_edge.src);
    }

    // reduce a vertex into the fundamental domain; returns the canonical
    // vertex w with v = delta * w
    std::pair<TreeVertex, Mat2> reduce_vertex(TreeVertex v) const {
        Mat2 delta = Mat2::identity(K_);
        for (int guard = 0; guard < 4096; ++guard) {
            bool moved = false;
            for (int i = 0; i < genus() && !moved; ++i) {
                if (in_ball_side(v, port(i, +1))) {
                    v = tree_.act(ginv_[i], v);
                    delta = delta * gens_[i];
                    moved = true;
                } else if (in_ball_side(v, port(i, -1))) {
                    v = tree_.act(gens_[i], v);
                    delta = delta * ginv_[i];
                    moved = true;
                }
            }
            if (!moved) return {v, delta};
        }
        throw compute_error("schottky reduction failed to terminate");
    }

    // canonical representative of the edge orbit (also resolves port edges)
    std::pair<TreeEdge, Mat2> reduce_edge(TreeEdge e) const {
        Mat2 delta = Mat2::identity(K_);
        for (int guard = 0; guard < 4096; ++guard) {
            bool moved = false;
            for (int i = 0; i < genus() && !moved; ++i) {
                TreeEdge pp = port(i, +1), pm = port(i, -1);
                if (in_ball_side(e.src, pp) && in_ball_side(e.dst, pp)) {
                    e = tree_.act(ginv_[i], e);
                    delta = delta * gens_[i];
                    moved = true;
                } else if (in_ball_side(e.src, pm) && in_ball_side(e.dst, pm)) {
                    e = tree_.act(gens_[i], e);
                    delta = delta * ginv_[i];
                    moved = true;
                }
            }
            if (!moved) break;
        }
        // a surviving minus-port edge folds onto the plus port
        for (int i = 0; i < genus(); ++i) {
            TreeEdge pm = port(i, -1);
            if (e == pm || e == pm.reversed()) {
                e = tree_.act(gens_[i], e);
                delta = delta * ginv_[i];
                break;
            }
        }
        return {e, delta};
    }

    // does the ball meet the limit set?
    bool limit_set_meets(Ball U) const {
        for (int guard = 0; guard < 4096; ++guard) {
            std::optional<std::pair<int, int>> inside;
            for (int i = 0; i < genus(); ++i) {
                const Ball& Bp = balls_[i].plus;
                const Ball& Bm = balls_[i].minus;
                if (U == Bp || U == Bm || U.contains_ball(Bp) || U.contains_ball(Bm)) return true;
                if (Bp.contains_ball(U)) inside = {i, +1};
                if (Bm.contains_ball(U)) inside = {i, -1};
            }
            if (!inside) return false;
            auto [i, sigma] = *inside;
            U = tree_.act(sigma > 0 ? ginv_[i] : gens_[i], U);
        }
        throw compute_error("limit set query failed to terminate");
    }

    bool edge_in_limit_tree(const TreeEdge& e) const {
        Ball U = tree_.ball_of_edge(e);
        return limit_set_meets(U) && limit_set_meets(U.complement());
    }

private:
    void certify() {
        for (size_t i = 0; i < gens_.size(); ++i) {
            const Mat2& g = gens_[i];
            PadicScalar det = g.det();
            if (det.is_zero()) throw input_error("schottky: singular generator");
            PadicScalar tr = g.trace();
            bool hyper = tr.is_zero() ? false : (2 * tr.ord_pi() < det.ord_pi());
            if (!hyper) throw input_error("schottky: generator is not hyperbolic");
            ginv_.push_back(g.inv());
        }
        // pairwise disjoint balls
        std::vector<Ball> all;
        for (const auto& pr : balls_) {
            all.push_back(pr.minus);
            all.push_back(pr.plus);
        }
        for (size_t i = 0; i < all.size(); ++i)
            for (size_t j = i + 1; j < all.size(); ++j)
                if (!all[i].disjoint_from(all[j]))
                    throw input_error("schottky: ping-pong balls are not disjoint");
        // exact pairing
        for (size_t i = 0; i < gens_.size(); ++i) {
            Ball img = tree_.act(gens_[i], balls_[i].minus.complement());
            if (!(img == balls_[i].plus))
                throw input_error("schottky: pairing g(P^1 - B^-) = B^+ fails");
        }
    }

    static PingPongPair search_pair(const BTTree& T, const Mat2& g, const std::vector<Mat2>& gens,
                                    const std::vector<PingPongPair>& existing) {
        const FieldDesc& K = g.field();
        PadicScalar det = g.det();
        if (det.is_zero()) throw input_error("schottky: singular generator");
        PadicScalar tr = g.trace();
        if (!(tr.is_zero() ? false : 2 * tr.ord_pi() < det.ord_pi()))
            throw input_error("schottky: generator is not hyperbolic");
        // fixed points of the Moebius action
        std::vector<P1Point> fixed;
        if (g.c.is_zero()) {
            fixed.push_back(P1Point::infinity(K));
            fixed.push_back(P1Point::finite(g.b / (g.d - g.a)));
        } else {
            PadicScalar disc = (g.a - g.d) * (g.a - g.d) +
                               PadicScalar::from_int(K, 4) * g.b * g.c;
            PadicScalar sq = disc.sqrt();
            PadicScalar two_c = PadicScalar::from_int(K, 2) * g.c;
            fixed.push_back(P1Point::finite(((g.a - g.d) + sq) / two_c));
            fixed.push_back(P1Point::finite(((g.a - g.d) - sq) / two_c));
        }
        // repelling fixed point: |g'| > 1 there
        auto deriv_ord = [&](const P1Point& x) -> long long {
            if (x.inf) { // derivative at infinity in the chart 1/t
                if (g.c.is_zero()) return g.d.ord_pi() - g.a.ord_pi();
                return -(det.ord_pi() - 2 * g.c.ord_pi());
            }
            PadicScalar den = g.c * x.t + g.d;
            return det.ord_pi() - 2 * den.ord_pi();
        };
        P1Point rep = (deriv_ord(fixed[0]) < 0) ? fixed[0] : fixed[1];
        if (deriv_ord(rep) >= 0) throw input_error("schottky: no repelling fixed point found");

        for (long long k = 1; k <= 12; ++k) {
            Ball Bm = rep.inf
                          ? Ball::complement_of(DigitVec{}, -k)
                          : Ball::interior(digits_of(rep.t, rep.t.is_zero() ? k : std::max(k, rep.t.ord_pi() + k)),
                                           rep.t.is_zero() ? k : std::max(k, rep.t.ord_pi() + k));
            Ball Bp = T.act(g, Bm.complement());
            if (!Bp.disjoint_from(Bm)) continue;
            bool ok = true;
            for (const auto& pr : existing) {
                if (!Bm.disjoint_from(pr.minus) || !Bm.disjoint_from(pr.plus) ||
                    !Bp.disjoint_from(pr.minus) || !Bp.disjoint_from(pr.plus))
                    ok = false;
            }
            (void)gens;
            if (ok) return PingPongPair{Bm, Bp};
        }
        throw input_error("schottky: ping-pong ball search failed");
    }

    FieldDesc K_;
    BTTree tree_;
    std::vector<Mat2> gens_;
    std::vector<Mat2> ginv_;
    std::vector<PingPongPair> balls_;
};

// ---------------------------------------------------------------------------
// Finite quotient of the limit-set subtree.
// ---------------------------------------------------------------------------
struct QuotientEdgeClass {
    TreeEdge rep;
    bool is_port = false;
    int gen = -1; // generator index for port classes
};

class QuotientGraph {
public:
    QuotientGraph(std::shared_ptr<const SchottkyGroup> G, long long depth_guard = 64)
        : G_(std::move(G)) {
        build(depth_guard);
    }

    const SchottkyGroup& group() const { return *G_; }
    const std::vector<TreeVertex>& vertices() const { return verts_; }
    const std::vector<QuotientEdgeClass>& edge_classes() const { return classes_; }
    const TreeVertex& base_vertex() const { return base_; }
    int betti() const {
        return static_cast<int>(classes_.size()) - static_cast<int>(verts_.size()) + 1;
    }

    // class id and orientation sign of an arbitrary tree edge; nullopt when
    // the edge does not meet the quotient (measure value zero)
    std::optional<std::pair<int, int>> classify(const TreeEdge& e) const {
        auto [red, delta] = G_->reduce_edge(e);
        (void)delta;
        auto it = lookup_.find(red);
        if (it == lookup_.end()) return std::nullopt;
        return it->second;
    }

    // crossing-count chains: chain(j)[class] = multiplicity of the class in
    // the geodesic from the base vertex to generator_j * base
    const std::vector<std::vector<long long>>& chains() const { return chains_; }

    std::string to_dot() const {
        std::ostringstream os;
        os << "digraph quotient {\n";
        for (const auto& v : verts_) os << "  \"" << v.to_string() << "\";\n";
        for (size_t c = 0; c < classes_.size(); ++c) {
            const auto& cls = classes_[c];
            auto s = G_->reduce_vertex(cls.rep.src).first;
            auto t = G_->reduce_vertex(cls.rep.dst).first;
            os << "  \"" << s.to_string() << "\" -> \"" << t.to_string() << "\" [label=\""
               << (cls.is_port ? "g" + std::to_string(cls.gen) : "t") << c << "\"];\n";
        }
        os << "}\n";
        return os.str();
    }

private:
    void build(long long depth_guard) {
        const auto& T = G_->tree();
        // hull of the port sources
        std::vector<TreeVertex> sources;
        for (int i = 0; i < G_->genus(); ++i) {
            sources.push_back(G_->port(i, +1).src);
            sources.push_back(G_->port(i, -1).src);
        }
        std::set<TreeVertex> hull;
        for (size_t a = 0; a < sources.size(); ++a)
            for (size_t b = a; b < sources.size(); ++b)
                for (const auto& v : T.geodesic(sources[a], sources[b])) hull.insert(v);
        verts_.assign(hull.begin(), hull.end());
        base_ = sources.front();
        long long diam = 0;
        for (const auto& v : verts_) diam = std::max(diam, T.distance(base_, v));
        if (diam > depth_guard) throw compute_error("quotient hull exceeds depth guard");

        // spanning-tree edges of the hull
        std::set<TreeEdge> seen;
        for (const auto& v : hull)
            for (const auto& w : T.neighbors(v)) {
                if (!hull.count(w)) continue;
                TreeEdge e(v, w);
                if (seen.count(e) || seen.count(e.reversed())) continue;
                seen.insert(e);
                classes_.push_back({e, false, -1});
            }
        // port classes
        for (int i = 0; i < G_->genus(); ++i) classes_.push_back({G_->port(i, +1), true, i});

        if (betti() != G_->genus()) throw compute_error("quotient Betti number mismatch");

        for (size_t c = 0; c < classes_.size(); ++c) {
            lookup_[classes_[c].rep] = {static_cast<int>(c), +1};
            lookup_[classes_[c].rep.reversed()] = {static_cast<int>(c), -1};
        }

        // crossing chains per generator
        chains_.assign(G_->genus(), std::vector<long long>(classes_.size(), 0));
        for (int j = 0; j < G_->genus(); ++j) {
            TreeVertex img = T.act(G_->generators()[j], base_);
            for (const auto& e : T.path_edges(base_, img)) {
                auto cls = classify(e);
                if (!cls) throw compute_error("chain edge escaped the quotient");
                chains_[j][cls->first] += cls->second;
            }
        }
    }

    std::shared_ptr<const SchottkyGroup> G_;
    std::vector<TreeVertex> verts_;
    std::vector<QuotientEdgeClass> classes_;
    std::map<TreeEdge, std::pair<int, int>> lookup_;
    std::vector<std::vector<long long>> chains_;
    TreeVertex base_;
};

// ---------------------------------------------------------------------------
// The universal Gamma-invariant measure: value on U_e is the vector of
// crossing counts of the class of e in the generator chains.
// ---------------------------------------------------------------------------
class SchottkyCocycle final : public EdgeCocycle {
public:
    explicit SchottkyCocycle(std::shared_ptr<const QuotientGraph> Q) : Q_(std::move(Q)) {}

    int rank() const override { return Q_->group().genus(); }

    ZVec value(const BTTree& T, const TreeEdge& e) const override {
        (void)T;
        {
            std::lock_guard<std::mutex> lock(mtx_);
            auto it = cache_.find(e);
            if (it != cache_.end()) return it->second;
        }
        // every orbit of the limit subtree has its representative in the
        // lookup table, so a miss certifies measure zero
        ZVec out = zvec(rank());
        auto cls = Q_->classify(e);
        if (cls)
            for (int j = 0; j < rank(); ++j) out[j] = cls->second * Q_->chains()[j][cls->first];
        std::lock_guard<std::mutex> lock(mtx_);
        cache_[e] = out;
        return out;
    }

    bool support_meets(const BTTree& T, const TreeEdge& e) const override {
        return Q_->group().limit_set_meets(T.ball_of_edge(e));
    }

private:
    std::shared_ptr<const QuotientGraph> Q_;
    mutable std::mutex mtx_;
    mutable std::map<TreeEdge, ZVec> cache_;
};

inline HarmonicMeasure universal_measure(std::shared_ptr<const QuotientGraph> Q) {
    FieldDesc K = Q->group().field();
    return HarmonicMeasure(K, std::make_shared<SchottkyCocycle>(std::move(Q)));
}

// ---------------------------------------------------------------------------
// Periods and L-invariants
// ---------------------------------------------------------------------------
struct PeriodData {
    FieldDesc L; // field of the period entries (unramified quadratic over K)
    // rows[i] = the multiplicative integral over [g_i tau] - [tau], rank g
    std::vector<MultIntegralValue> rows;
    std::vector<std::vector<long long>> ordQ; // exact integer matrix
    ExtPoint tau_base;

    int genus() const { return static_cast<int>(rows.size()); }

    bool ord_symmetric() const {
        for (size_t i = 0; i < ordQ.size(); ++i)
            for (size_t j = 0; j < ordQ.size(); ++j)
                if (ordQ[i][j] != ordQ[j][i]) return false;
        return true;
    }
    long long ord_det() const {
        // ordQ is at most a handful of rows; Laplace expansion
        std::function<long long(std::vector<std::vector<long long>>)> det =
            [&](std::vector<std::vector<long long>> M) -> long long {
            size_t n = M.size();
            if (n == 1) return M[0][0];
            long long acc = 0;
            for (size_t j = 0; j < n; ++j) {
                std::vector<std::vector<long long>> sub;
                for (size_t r = 1; r < n; ++r) {
                    std::vector<long long> row;
                    for (size_t c = 0; c < n; ++c)
                        if (c != j) row.push_back(M[r][c]);
                    sub.push_back(row);
                }
                long long term = M[0][j] * det(sub);
                acc += (j % 2 == 0) ? term : -term;
            }
            return acc;
        };
        return det(ordQ);
    }
};

// canonical Teichmueller point over the base vertex of the quotient
inline ExtPoint canonical_point_over(const SchottkyGroup& G, const TreeVertex& v) {
    const FieldDesc& K = G.field();
    FieldDesc L{K.p, 2 * K.f, 1, {}, K.N};
    PadicScalar omega = PadicScalar::generator(L).teichmuller();
    // move v* to v by the normal-form matrix [[pi^n, b],[0,1]]
    PadicScalar pin = PadicScalar::from_int(K, K.p).pow_int(v.n);
    PadicScalar b = scalar_of(K, v.b);
    Mat2 M(pin, b, PadicScalar::zero(K), PadicScalar::one(K));
    return ExtPoint(K, M.embedded(L).apply_finite(omega));
}

inline PeriodData periods(const std::shared_ptr<const QuotientGraph>& Q, long long depth) {
    const SchottkyGroup& G = Q->group();
    HarmonicMeasure mu = universal_measure(Q);
    PeriodData P;
    P.tau_base = canonical_point_over(G, Q->base_vertex());
    P.L = P.tau_base.tau.field();
    for (int i = 0; i < G.genus(); ++i) {
        ExtPoint moved = P.tau_base.moved(G.generators()[i]);
        MultIntegralValue row = mult_integral(mu, moved, P.tau_base, depth);
        if (!row.ord_certified) throw compute_error("periods: depth too small for exact ord");
        P.rows.push_back(row);
    }
    P.ordQ.assign(G.genus(), std::vector<long long>(G.genus(), 0));
    for (int i = 0; i < G.genus(); ++i)
        for (int j = 0; j < G.genus(); ++j) {
            const Rat& v = P.rows[i].val[j];
            if (v.denominator() != 1) throw compute_error("periods: non-integral valuation");
            P.ordQ[i][j] = v.numerator();
        }
    if (P.ord_det() == 0) throw compute_error("periods: degenerate ord matrix");
    return P;
}

// rational matrix inverse by Gauss-Jordan
inline std::vector<std::vector<Rat>> rat_inverse(const std::vector<std::vector<long long>>& M) {
    size_t n = M.size();
    std::vector<std::vector<Rat>> A(n, std::vector<Rat>(2 * n, Rat(0)));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) A[i][j] = Rat(M[i][j]);
        A[i][n + i] = Rat(1);
    }
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && A[piv][col] == Rat(0)) ++piv;
        if (piv == n) throw compute_error("matrix not invertible");
        std::swap(A[col], A[piv]);
        Rat d = A[col][col];
        for (auto& x : A[col]) x /= d;
        for (size_t r = 0; r < n; ++r) {
            if (r == col || A[r][col] == Rat(0)) continue;
            Rat f = A[r][col];
            for (size_t c = 0; c < 2 * n; ++c) A[r][c] -= f * A[col][c];
        }
    }
    std::vector<std::vector<Rat>> inv(n, std::vector<Rat>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) inv[i][j] = A[i][n + j];
    return inv;
}

enum class PhiKind { ord, iwasawa_log, log_norm };

struct LInvariant {
    PhiKind phi;
    FieldDesc F; // field of the matrix entries
    std::vector<std::vector<PadicScalar>> mat;
    std::vector<std::vector<Rat>> ord_inv;

    int genus() const { return static_cast<int>(mat.size()); }
};

inline std::vector<PadicScalar> apply_phi(PhiKind phi, const MultIntegralValue& v) {
    switch (phi) {
    case PhiKind::iwasawa_log:
        return v.log_part();
    case PhiKind::log_norm:
        return v.log_norm_part();
    case PhiKind::ord: {
        std::vector<PadicScalar> out;
        FieldDesc B = v.L.base();
        for (const auto& r : v.val) out.push_back(PadicScalar::from_rat(B, r));
        return out;
    }
    }
    throw input_error("unknown phi");
}

inline LInvariant l_invariant(const PeriodData& P, PhiKind phi) {
    int g = P.genus();
    LInvariant L;
    L.phi = phi;
    auto inv = rat_inverse(P.ordQ);
    L.ord_inv = inv;
    // columns of phi applied to the lattice rows
    std::vector<std::vector<PadicScalar>> phirows;
    for (int i = 0; i < g; ++i) phirows.push_back(apply_phi(phi, P.rows[i]));
    L.F = phirows[0][0].field();
    // L = phi(Q)^T * ordQ^{-1}: entry (a, b) = sum_k phi(Q)[k][a] inv[k][b]
    L.mat.assign(g, std::vector<PadicScalar>(g, PadicScalar::zero(L.F)));
    for (int a = 0; a < g; ++a)
        for (int b = 0; b < g; ++b) {
            PadicScalar acc = PadicScalar::zero(L.F);
            for (int k = 0; k < g; ++k)
                acc = acc + phirows[k][a] * PadicScalar::from_rat(L.F, inv[k][b]);
            L.mat[a][b] = acc;
        }
    return L;
}

// phi^X on a lattice lift: phi(P) - L_phi * ord(P)
inline std::vector<PadicScalar> phi_X(const PeriodData& P, const LInvariant& L,
                                      const MultIntegralValue& lift) {
    int g = P.genus();
    if (lift.rank() != g) throw input_error("phi_X: rank mismatch");
    auto phiP = apply_phi(L.phi, lift);
    std::vector<PadicScalar> out;
    for (int a = 0; a < g; ++a) {
        PadicScalar acc = phiP[a];
        for (int b = 0; b < g; ++b)
            acc = acc - L.mat[a][b] * PadicScalar::from_rat(L.F, lift.val[b]);
        out.push_back(acc);
    }
    return out;
}

// logNorm pairing of per-component Jacobian lifts against dual weight vectors
inline PadicScalar log_norm_A(const std::vector<PeriodData>& Ps,
                              const std::vector<MultIntegralValue>& lifts,
                              const std::vector<std::vector<Rat>>& weights) {
    if (Ps.size() != lifts.size() || Ps.size() != weights.size())
        throw input_error("log_norm_A: component count mismatch");
    FieldDesc B = Ps.empty() ? FieldDesc{} : Ps[0].L.base();
    PadicScalar acc = PadicScalar::zero(B);
    for (size_t i = 0; i < Ps.size(); ++i) {
        LInvariant L = l_invariant(Ps[i], PhiKind::log_norm);
        auto v = phi_X(Ps[i], L, lifts[i]);
        if (weights[i].size() != v.size()) throw input_error("log_norm_A: weight rank mismatch");
        for (size_t a = 0; a < v.size(); ++a)
            acc = acc + v[a] * PadicScalar::from_rat(B, weights[i][a]);
    }
    return acc;
}

} // namespace padicuhp
