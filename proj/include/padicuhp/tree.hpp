#pragma once

// The Bruhat-Tits tree of PGL_2(K) for K = Q_{p^f}: vertices in Iwasawa
// normal form, oriented edges, the ball U_e attached to an edge, geodesics,
// the PGL_2(K)-action and the reduction map from the p-adic upper half plane.
//
// A vertex (n, b) is the lattice class spanned by the columns of
// [[pi^n, b], [0, 1]], with b a canonical digit expansion reduced mod pi^n.
// The base vertex is v* = (0,0); the class of O + pi*O is (-1, 0), and the
// edge e* = ((-1,0) -> (0,0)) carries the ball U_{e*} = O_K.  Ends correspond
// to P^1(K): the ray toward a finite point x passes (m, x mod pi^m), the ray
// toward infinity passes (-m, 0).

#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "padicuhp/matrix.hpp"
#include "padicuhp/padic.hpp"

namespace padicuhp {

// canonical digit expansion: sum of digit(i) * pi^i over [lo, lo+len)
struct DigitVec {
    long long lo = 0;
    std::vector<long long> d; // residue-field codes, normalized at both ends

    void normalize() {
        size_t a = 0;
        while (a < d.size() && d[a] == 0) ++a;
        size_t b = d.size();
        while (b > a && d[b - 1] == 0) --b;
        lo += static_cast<long long>(a);
        d = std::vector<long long>(d.begin() + a, d.begin() + b);
        if (d.empty()) lo = 0;
    }
    bool is_zero() const { return d.empty(); }
    long long digit_at(long long i) const {
        if (i < lo || i >= lo + static_cast<long long>(d.size())) return 0;
        return d[i - lo];
    }
    DigitVec truncated(long long m) const { // value mod pi^m
        DigitVec r;
        if (is_zero() || m <= lo) return r;
        r.lo = lo;
        long long hi = std::min(lo + static_cast<long long>(d.size()), m);
        r.d.assign(d.begin(), d.begin() + (hi - lo));
        r.normalize();
        return r;
    }
    DigitVec with_digit(long long i, long long code) const {
        DigitVec r = *this;
        if (r.d.empty()) {
            r.lo = i;
            r.d = {code};
            r.normalize();
            return r;
        }
        if (i < r.lo) {
            r.d.insert(r.d.begin(), r.lo - i, 0);
            r.lo = i;
        } else if (i >= r.lo + static_cast<long long>(r.d.size())) {
            r.d.resize(i - r.lo + 1, 0);
        }
        r.d[i - r.lo] = code;
        r.normalize();
        return r;
    }
    // valuation of the difference of the two represented values
    static long long diff_ord(const DigitVec& x, const DigitVec& y, long long cap) {
        long long start = std::min(x.is_zero() ? cap : x.lo, y.is_zero() ? cap : y.lo);
        for (long long i = start; i < cap; ++i)
            if (x.digit_at(i) != y.digit_at(i)) return i;
        return cap; // equal below cap
    }
    bool operator==(const DigitVec& o) const { return lo == o.lo && d == o.d; }
    bool operator<(const DigitVec& o) const { return std::tie(lo, d) < std::tie(o.lo, o.d); }
};

// digit expansion of a scalar (plain residue lifts), positions in pi-units
inline DigitVec digits_of(const PadicScalar& x, long long upto_pi) {
    DigitVec r;
    if (x.is_zero()) return r;
    PadicScalar cur = x;
    r.lo = cur.ord_pi();
    for (long long i = r.lo; i < upto_pi; ++i) {
        if (cur.is_zero() || cur.ord_pi() > i) {
            r.d.push_back(0);
            continue;
        }
        long long code = cur.residue_code();
        r.d.push_back(code);
        cur = cur - PadicScalar::lift_residue(x.field(), code, x.field().N).mul_pow_pi(i);
    }
    r.normalize();
    return r;
}

inline PadicScalar scalar_of(const FieldDesc& F, const DigitVec& b) {
    PadicScalar acc = PadicScalar::zero(F);
    for (size_t k = 0; k < b.d.size(); ++k) {
        if (b.d[k] == 0) continue;
        acc = acc + PadicScalar::lift_residue(F, b.d[k], F.N).mul_pow_pi(b.lo + static_cast<long long>(k));
    }
    return acc;
}

// ---------------------------------------------------------------------------
struct TreeVertex {
    long long n = 0;
    DigitVec b; // reduced mod pi^n

    TreeVertex() = default;
    TreeVertex(long long level, DigitVec bb) : n(level), b(std::move(bb)) {
        b = b.truncated(n);
    }

    static TreeVertex base() { return TreeVertex(); }

    bool operator==(const TreeVertex& o) const { return n == o.n && b == o.b; }
    bool operator!=(const TreeVertex& o) const { return !(*this == o); }
    bool operator<(const TreeVertex& o) const { return std::tie(n, b) < std::tie(o.n, o.b); }

    std::string to_string() const {
        std::ostringstream os;
        os << "V(" << n << ";";
        if (b.is_zero()) {
            os << "0";
        } else {
            os << b.lo << ":";
            for (size_t i = 0; i < b.d.size(); ++i) {
                if (i) os << ",";
                os << b.d[i];
            }
        }
        os << ")";
        return os.str();
    }
    static TreeVertex parse(const std::string& s);
};

struct TreeEdge {
    TreeVertex src, dst;

    TreeEdge() = default;
    TreeEdge(TreeVertex s, TreeVertex t) : src(std::move(s)), dst(std::move(t)) {}

    TreeEdge reversed() const { return TreeEdge(dst, src); }
    bool operator==(const TreeEdge& o) const { return src == o.src && dst == o.dst; }
    bool operator<(const TreeEdge& o) const { return std::tie(src, dst) < std::tie(o.src, o.dst); }
    std::string to_string() const { return "E(" + src.to_string() + "->" + dst.to_string() + ")"; }
};

// ---------------------------------------------------------------------------
// Balls of the U_e family: interior c + pi^m O, or its complement.
// ---------------------------------------------------------------------------
struct Ball {
    bool cointerior = false;
    DigitVec c; // reduced mod pi^m
    long long m = 0;

    static Ball interior(DigitVec center, long long m) {
        Ball B;
        B.c = center.truncated(m);
        B.m = m;
        return B;
    }
    static Ball complement_of(DigitVec center, long long m) {
        Ball B = interior(std::move(center), m);
        B.cointerior = true;
        return B;
    }
    Ball complement() const {
        Ball B = *this;
        B.cointerior = !B.cointerior;
        return B;
    }
    bool operator==(const Ball& o) const {
        return cointerior == o.cointerior && m == o.m && c == o.c;
    }

    bool contains_point(const FieldDesc& K, const P1Point& x) const {
        bool in_interior;
        if (x.inf) {
            in_interior = false;
        } else {
            PadicScalar diff = x.t - scalar_of(K, c);
            in_interior = diff.is_zero() ? (diff.raw_vpi() >= m) : (diff.ord_pi() >= m);
        }
        return cointerior ? !in_interior : in_interior;
    }

    bool contains_ball(const Ball& o) const {
        if (!cointerior && !o.cointerior)
            return m <= o.m && DigitVec::diff_ord(c, o.c, m) >= m;
        if (!cointerior && o.cointerior) return false;
        if (cointerior && !o.cointerior) return interior_disjoint(Ball::interior(c, m), o);
        return o.m <= m && DigitVec::diff_ord(o.c, c, o.m) >= o.m; // complements reverse
    }
    bool disjoint_from(const Ball& o) const {
        if (!cointerior && !o.cointerior)
            return DigitVec::diff_ord(c, o.c, std::min(m, o.m)) < std::min(m, o.m);
        if (!cointerior && o.cointerior) return Ball::interior(o.c, o.m).contains_ball(*this);
        if (cointerior && !o.cointerior) return Ball::interior(c, m).contains_ball(o);
        return false; // both contain infinity
    }

private:
    static bool interior_disjoint(const Ball& A, const Ball& B) {
        return DigitVec::diff_ord(A.c, B.c, std::min(A.m, B.m)) < std::min(A.m, B.m);
    }
};

// ---------------------------------------------------------------------------
// point of the geometric realization (vertex or midpoint of an edge)
// ---------------------------------------------------------------------------
struct TreePoint {
    TreeVertex v;
    bool mid = false;
    TreeVertex w; // other endpoint when mid

    static TreePoint at_vertex(TreeVertex x) {
        TreePoint P;
        P.v = std::move(x);
        return P;
    }
    static TreePoint midpoint(TreeVertex a, TreeVertex b) {
        TreePoint P;
        P.mid = true;
        if (b < a) std::swap(a, b);
        P.v = std::move(a);
        P.w = std::move(b);
        return P;
    }
    bool operator==(const TreePoint& o) const {
        return mid == o.mid && v == o.v && (!mid || w == o.w);
    }
    std::string to_string() const {
        if (!mid) return v.to_string();
        return "M(" + v.to_string() + "," + w.to_string() + ")";
    }
};

// ---------------------------------------------------------------------------
// The tree of a ground field K = Q_{p^f}
// ---------------------------------------------------------------------------
class BTTree {
public:
    explicit BTTree(FieldDesc K) : K_(std::move(K)) {
        K_.validate();
        if (K_.e != 1) throw input_error("tree ground field must be unramified");
    }

    const FieldDesc& field() const { return K_; }
    long long residue_size() const { return detail::pow_ll(K_.p, K_.f); }

    std::vector<TreeVertex> neighbors(const TreeVertex& v) const {
        std::vector<TreeVertex> out;
        out.reserve(residue_size() + 1);
        out.emplace_back(v.n - 1, v.b.truncated(v.n - 1));
        for (long long code = 0; code < residue_size(); ++code)
            out.emplace_back(v.n + 1, v.b.with_digit(v.n, code));
        return out;
    }

    // children of dst continuing away from src (the p^f forward extensions)
    std::vector<TreeEdge> forward_edges(const TreeEdge& e) const {
        std::vector<TreeEdge> out;
        for (const auto& w : neighbors(e.dst))
            if (w != e.src) out.emplace_back(e.dst, w);
        return out;
    }

    long long distance(const TreeVertex& x, const TreeVertex& y) const {
        long long join = join_level(x, y);
        return (x.n - join) + (y.n - join);
    }

    // level of the deepest common ancestor along rays from infinity
    long long join_level(const TreeVertex& x, const TreeVertex& y) const {
        long long vd = DigitVec::diff_ord(x.b, y.b, std::min(x.n, y.n));
        return std::min(vd, std::min(x.n, y.n));
    }

    std::vector<TreeVertex> geodesic(const TreeVertex& x, const TreeVertex& y) const {
        long long join = join_level(x, y);
        std::vector<TreeVertex> path;
        for (long long m = x.n; m >= join; --m) path.emplace_back(m, x.b.truncated(m));
        for (long long m = join + 1; m <= y.n; ++m) path.emplace_back(m, y.b.truncated(m));
        return path;
    }
    std::vector<TreeEdge> path_edges(const TreeVertex& x, const TreeVertex& y) const {
        auto vs = geodesic(x, y);
        std::vector<TreeEdge> es;
        for (size_t i = 0; i + 1 < vs.size(); ++i) es.emplace_back(vs[i], vs[i + 1]);
        return es;
    }

    // ---- balls ----
    Ball ball_of_edge(const TreeEdge& e) const {
        if (e.dst.n == e.src.n + 1) return Ball::interior(e.dst.b, e.dst.n);
        if (e.dst.n == e.src.n - 1) return Ball::complement_of(e.src.b, e.src.n);
        throw input_error("ball_of_edge: not an edge");
    }
    TreeEdge edge_of_ball(const Ball& B) const {
        TreeVertex deep(B.m, B.c);
        TreeVertex up(B.m - 1, B.c.truncated(B.m - 1));
        if (!B.cointerior) return TreeEdge(up, deep);
        return TreeEdge(deep, up);
    }

    // sample point of a ball: the canonical center (infinity for co-interior)
    P1Point sample_point(const Ball& B) const {
        if (B.cointerior) return P1Point::infinity(K_);
        return P1Point::finite(scalar_of(K_, B.c));
    }

    // ---- the PGL_2(K)-action ----
    TreeVertex act(const Mat2& g, const TreeVertex& v) const {
        if (!g.field().same_field(K_)) throw input_error("act: matrix field mismatch");
        if (g.det().is_zero()) throw compute_error("act: singular matrix");
        PadicScalar pin = PadicScalar::from_int(K_, K_.p).pow_int(v.n);
        PadicScalar bv = scalar_of(K_, v.b);
        // columns of g * [[pi^n, b],[0,1]]
        PadicScalar x1 = g.a * pin, y1 = g.c * pin;
        PadicScalar x2 = g.a * bv + g.b, y2 = g.c * bv + g.d;
        // eliminate the larger bottom entry, keep the nonzero one in column 2
        if (y1.is_zero() || (!y2.is_zero() && y2.ord_pi() <= y1.ord_pi())) {
            if (y2.is_zero()) throw compute_error("act: degenerate bottom row");
            PadicScalar q = y1.is_zero() ? PadicScalar::zero(K_) : y1 / y2;
            x1 = x1 - q * x2; // y1 -> 0
        } else {
            PadicScalar q = y2 / y1;
            PadicScalar nx = x2 - q * x1;
            x2 = x1;
            y2 = y1;
            x1 = nx;
        }
        // matrix is now [[x1, x2],[0, y2]] up to column order; scale by y2
        PadicScalar alpha = x1 / y2;
        PadicScalar beta = x2 / y2;
        if (alpha.is_zero()) throw compute_error("act: precision exhausted in normal form");
        long long n2 = alpha.ord_pi();
        DigitVec b2 = digits_of(beta, n2);
        return TreeVertex(n2, b2);
    }

    TreeEdge act(const Mat2& g, const TreeEdge& e) const {
        return TreeEdge(act(g, e.src), act(g, e.dst));
    }
    Ball act(const Mat2& g, const Ball& B) const { return ball_of_edge(act(g, edge_of_ball(B))); }
    TreePoint act(const Mat2& g, const TreePoint& P) const {
        if (!P.mid) return TreePoint::at_vertex(act(g, P.v));
        return TreePoint::midpoint(act(g, P.v), act(g, P.w));
    }

    // ---- boundary of an edge chain ----
    std::map<TreeVertex, long long> boundary(const std::vector<std::pair<TreeEdge, long long>>& chain) const {
        std::map<TreeVertex, long long> out;
        for (const auto& [e, k] : chain) {
            out[e.dst] += k;
            out[e.src] -= k;
            if (out[e.dst] == 0) out.erase(e.dst);
            if (out[e.src] == 0) out.erase(e.src);
        }
        return out;
    }

    // enumerate vertices within the given distance of the base vertex
    void for_each_vertex_within(long long depth, const std::function<void(const TreeVertex&)>& fn) const {
        std::vector<TreeVertex> frontier{TreeVertex::base()};
        std::set<TreeVertex> seen{TreeVertex::base()};
        fn(TreeVertex::base());
        for (long long d = 0; d < depth; ++d) {
            std::vector<TreeVertex> next;
            for (const auto& v : frontier)
                for (const auto& w : neighbors(v))
                    if (seen.insert(w).second) {
                        fn(w);
                        next.push_back(w);
                    }
            frontier = std::move(next);
        }
    }

    std::string dot_subtree(long long depth) const {
        std::ostringstream os;
        os << "graph bttree {\n";
        std::vector<TreeVertex> frontier{TreeVertex::base()};
        std::set<TreeVertex> seen{TreeVertex::base()};
        for (long long d = 0; d < depth; ++d) {
            std::vector<TreeVertex> next;
            for (const auto& v : frontier)
                for (const auto& w : neighbors(v))
                    if (seen.insert(w).second) {
                        os << "  \"" << v.to_string() << "\" -- \"" << w.to_string() << "\";\n";
                        next.push_back(w);
                    }
            frontier = std::move(next);
        }
        os << "}\n";
        return os.str();
    }

private:
    FieldDesc K_;
};

// ---------------------------------------------------------------------------
// Points of the upper half plane over quadratic extensions of K, and the
// reduction map to the tree of K.
// ---------------------------------------------------------------------------
struct ExtPoint {
    FieldDesc K;     // ground field of the tree
    PadicScalar tau; // element of L, a quadratic extension of K

    ExtPoint() = default;
    ExtPoint(FieldDesc K_, PadicScalar t) : K(std::move(K_)), tau(std::move(t)) {
        const FieldDesc& L = tau.field();
        if (L.p != K.p) throw input_error("ExtPoint: mismatched primes");
        bool unram = (L.e == 1 && L.f % K.f == 0 && L.f > K.f);
        bool ramq = (L.e == 2 && L.f == K.f);
        bool rational = L.same_field(K);
        if (!unram && !ramq && !rational)
            throw input_error("ExtPoint: tau must lie in a supported extension of K");
    }

    ExtPoint moved(const Mat2& g) const {
        Mat2 gL = g.embedded(tau.field());
        P1Point img = gL.apply(P1Point::finite(tau));
        if (img.inf) throw compute_error("ExtPoint: Moebius image is infinity");
        return ExtPoint(K, img.t);
    }
};

// reduction of tau to the tree of K; fails if tau is indistinguishable from a
// K-point at working precision
inline TreePoint reduce_to_tree(const ExtPoint& P) {
    const FieldDesc& L = P.tau.field();
    const FieldDesc& K = P.K;
    long long eL = (L.e == 2 && L.f == K.f) ? 2 : 1;
    long long cap = L.N * eL - 2; // scan margin below full precision
    DigitVec dl = digits_of(P.tau, cap);
    long long start = P.tau.is_zero() ? 0 : std::min<long long>(dl.lo, 0);
    long long bad = cap;
    if (eL == 2) {
        for (long long i = start; i < cap; ++i)
            if (i % 2 != 0 && dl.digit_at(i) != 0) {
                bad = i;
                break;
            }
    } else {
        const auto& emb = ResidueEmbedding::get(K.p, K.f, L.f);
        for (long long i = start; i < cap; ++i) {
            long long c = dl.digit_at(i);
            if (c != 0 && !emb.in_subfield(c)) {
                bad = i;
                break;
            }
        }
    }
    if (bad >= cap) throw compute_error("reduction: tau is K-rational at working precision");

    // K-rational truncation below the first non-K digit
    DigitVec truncL = dl.truncated(bad);
    DigitVec bK;
    if (eL == 2) {
        // even positions carry (u p)^i; convert through the scalar value
        PadicScalar val = scalar_of(L, truncL);
        if (!val.is_zero() && !val.unit_b().empty()) {
            // the pi-component must vanish for a K-rational value
            for (auto c : val.unit_b())
                if (c != 0) throw compute_error("reduction: inconsistent expansion");
        }
        PadicScalar valK = val.is_zero()
                               ? PadicScalar::zero(K)
                               : PadicScalar::from_unit_coeffs(K, val.unit_a(), {}, 0, val.prec())
                                     .mul_pow_pi(val.ord_pi() / 2);
        bK = digits_of(valK, (bad + 1) / 2 + 1);
    } else {
        const auto& emb = ResidueEmbedding::get(K.p, K.f, L.f);
        bK.lo = truncL.lo;
        for (auto c : truncL.d) bK.d.push_back(c == 0 ? 0 : emb.down(c));
        bK.normalize();
    }

    if (eL == 1) return TreePoint::at_vertex(TreeVertex(bad, bK));
    if (bad % 2 == 0) return TreePoint::at_vertex(TreeVertex(bad / 2, bK));
    long long nl = (bad - 1) / 2, nh = (bad + 1) / 2;
    return TreePoint::midpoint(TreeVertex(nl, bK.truncated(nl)), TreeVertex(nh, bK.truncated(nh)));
}

// search oracle style enumeration helpers are kept in the test suite

inline TreeVertex TreeVertex::parse(const std::string& s) {
    if (s.size() < 6 || s.substr(0, 2) != "V(" || s.back() != ')')
        throw input_error("vertex parse: expected V(n;b): " + s);
    auto body = s.substr(2, s.size() - 3);
    auto semi = body.find(';');
    if (semi == std::string::npos) throw input_error("vertex parse: missing ';': " + s);
    long long n = 0;
    DigitVec b;
    try {
        n = std::stoll(body.substr(0, semi));
        std::string bs = body.substr(semi + 1);
        if (bs != "0") {
            auto colon = bs.find(':');
            long long lo = 0;
            std::string list = bs;
            if (colon != std::string::npos) {
                lo = std::stoll(bs.substr(0, colon));
                list = bs.substr(colon + 1);
            }
            b.lo = lo;
            size_t pos = 0;
            while (pos < list.size()) {
                auto comma = list.find(',', pos);
                if (comma == std::string::npos) comma = list.size();
                b.d.push_back(std::stoll(list.substr(pos, comma - pos)));
                pos = comma + 1;
            }
            b.normalize();
        }
    } catch (const std::logic_error&) {
        throw input_error("vertex parse: bad number in " + s);
    }
    return TreeVertex(n, b);
}

} // namespace padicuhp
