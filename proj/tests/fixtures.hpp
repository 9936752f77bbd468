#pragma once

// Shared builders for group packages and random test data.

#include <memory>
#include <random>

#include "padicuhp/schottky.hpp"

namespace padicuhp::fixtures {

inline FieldDesc Qpf(long long p, int f, int N = 14) { return FieldDesc{p, f, 1, {}, N}; }

// Tate group <diag(q, 1)> with its exact ping-pong pair
inline std::shared_ptr<SchottkyGroup> tate_group(const FieldDesc& K, const PadicScalar& q) {
    Mat2 g(q, PadicScalar::zero(K), PadicScalar::zero(K), PadicScalar::one(K));
    BTTree T(K);
    Ball Bm = Ball::complement_of(DigitVec{}, 0);      // P^1 - O
    Ball Bp = T.act(g, Bm.complement());               // q O
    return std::make_shared<SchottkyGroup>(K, std::vector<Mat2>{g},
                                           std::vector<PingPongPair>{{Bm, Bp}});
}

inline std::shared_ptr<SchottkyGroup> tate_group_int(const FieldDesc& K, long long q) {
    return tate_group(K, PadicScalar::from_int(K, q));
}

// rank-2 group: diag(q,1) together with its conjugate by M = [[1,-1],[1,1]]
inline std::shared_ptr<SchottkyGroup> genus2_group(const FieldDesc& K, long long q1, long long q2) {
    BTTree T(K);
    Mat2 g1 = Mat2::from_ints(K, q1, 0, 0, 1);
    Mat2 M = Mat2::from_ints(K, 1, -1, 1, 1);
    Mat2 g2 = M * Mat2::from_ints(K, q2, 0, 0, 1) * M.inv();
    Ball B1m = Ball::complement_of(DigitVec{}, 0);
    Ball B1p = T.act(g1, B1m.complement());
    Ball B2m = T.act(M, B1m);
    Ball B2p = T.act(g2, B2m.complement());
    return std::make_shared<SchottkyGroup>(K, std::vector<Mat2>{g1, g2},
                                           std::vector<PingPongPair>{{B1m, B1p}, {B2m, B2p}});
}

inline Mat2 random_integral_unimodular(const FieldDesc& K, std::mt19937_64& rng, long long box = 12) {
    std::uniform_int_distribution<long long> d(-box, box);
    for (;;) {
        Mat2 g = Mat2::from_ints(K, d(rng), d(rng), d(rng), d(rng));
        auto det = g.det();
        if (!det.is_zero() && det.ord_pi() == 0) return g;
    }
}

// random certified group: a standard package conjugated by a random
// integral unimodular matrix
inline std::shared_ptr<SchottkyGroup> random_schottky(const FieldDesc& K, int genus,
                                                      std::mt19937_64& rng) {
    BTTree T(K);
    long long p = K.p;
    std::uniform_int_distribution<long long> upick(1, p - 1);
    long long q1 = p * p * (1 + p * upick(rng));
    long long q2 = p * p * (1 + p * upick(rng));
    for (int attempt = 0; attempt < 50; ++attempt) {
        Mat2 M = random_integral_unimodular(K, rng);
        try {
            auto base = (genus == 1) ? tate_group_int(K, q1) : genus2_group(K, q1, q2);
            std::vector<Mat2> gens;
            std::vector<PingPongPair> balls;
            for (int i = 0; i < base->genus(); ++i) {
                gens.push_back(M * base->generators()[i] * M.inv());
                Ball bm = T.act(M, base->ball_pairs()[i].minus);
                Ball bp = T.act(gens.back(), bm.complement());
                balls.push_back({bm, bp});
            }
            return std::make_shared<SchottkyGroup>(K, gens, balls);
        } catch (const input_error&) {
            continue; // conjugate balls collided; try another M
        }
    }
    throw compute_error("random_schottky: no certified conjugate found");
}

// canonical unramified quadratic point reducing to the given vertex
inline ExtPoint point_over(const FieldDesc& K, const TreeVertex& v) {
    FieldDesc L{K.p, 2 * K.f, 1, {}, K.N};
    PadicScalar omega = PadicScalar::generator(L).teichmuller();
    PadicScalar pin = PadicScalar::from_int(K, K.p).pow_int(v.n);
    Mat2 M(pin, scalar_of(K, v.b), PadicScalar::zero(K), PadicScalar::one(K));
    return ExtPoint(K, M.embedded(L).apply_finite(omega));
}

// ramified quadratic point reducing to the midpoint above the given vertex
inline ExtPoint ram_point_over(const FieldDesc& K, const TreeVertex& v) {
    FieldDesc L{K.p, K.f, 2, {1}, K.N};
    PadicScalar pi = PadicScalar::uniformizer(L);
    PadicScalar pin = PadicScalar::from_int(K, K.p).pow_int(v.n);
    Mat2 M(pin, scalar_of(K, v.b), PadicScalar::zero(K), PadicScalar::one(K));
    return ExtPoint(K, M.embedded(L).apply_finite(pi));
}

// random vertex at the given distance from the base vertex
inline TreeVertex random_vertex_at(const BTTree& T, long long dist, std::mt19937_64& rng) {
    TreeVertex v = TreeVertex::base();
    TreeVertex prev = v;
    for (long long step = 0; step < dist; ++step) {
        auto nb = T.neighbors(v);
        std::vector<TreeVertex> choices;
        for (auto& w : nb)
            if (w != prev) choices.push_back(w);
        prev = v;
        v = choices[rng() % choices.size()];
    }
    return v;
}

// tau pair in a common quadratic extension, both reduction points within
// `reach` of the base vertex (so path length <= 2 * reach, ord certified at
// depth reach + 1); alternates between the unramified and ramified kinds
inline std::pair<ExtPoint, ExtPoint> random_tau_pair(const FieldDesc& K, long long reach,
                                                     std::mt19937_64& rng) {
    BTTree T(K);
    TreeVertex v1 = random_vertex_at(T, static_cast<long long>(rng() % 2), rng);
    TreeVertex v2 = random_vertex_at(T, 1 + static_cast<long long>(rng() % std::max(1LL, reach - 1)), rng);
    bool ram = (rng() % 2 == 0);
    ExtPoint t1 = ram ? ram_point_over(K, v1) : point_over(K, v1);
    ExtPoint t2 = ram ? ram_point_over(K, v2) : point_over(K, v2);
    return {t1, t2};
}

} // namespace padicuhp::fixtures
