#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"

using namespace padicuhp;
using namespace padicuhp::fixtures;

TEST_CASE("tate quotient is a 2-cycle") {
    FieldDesc K = Qpf(3, 1, 14);
    auto G = tate_group_int(K, 9);
    auto Q = std::make_shared<QuotientGraph>(G);
    REQUIRE(Q->betti() == 1);
    REQUIRE(Q->vertices().size() == 2);
    REQUIRE(Q->edge_classes().size() == 2);
}

TEST_CASE("translation length one gives a loop") {
    FieldDesc K = Qpf(3, 1, 14);
    auto G = tate_group_int(K, 3);
    REQUIRE(G->generators()[0].ord_det_pi() == 1);
    auto Q = std::make_shared<QuotientGraph>(G);
    REQUIRE(Q->betti() == 1);
    REQUIRE(Q->vertices().size() == 1);
    REQUIRE(Q->edge_classes().size() == 1);
}

TEST_CASE("non schottky input is rejected") {
    FieldDesc K = Qpf(3, 1, 14);
    // elliptic: unit determinant
    REQUIRE_THROWS_AS(SchottkyGroup::with_auto_balls(K, {Mat2::from_ints(K, 1, 1, 0, 1)}),
                      input_error);
    // overlapping ping-pong data
    BTTree T(K);
    Mat2 g = Mat2::from_ints(K, 9, 0, 0, 1);
    Ball Bm = Ball::complement_of(DigitVec{}, 0);
    REQUIRE_THROWS_AS(SchottkyGroup(K, {g}, {{Bm, Bm.complement()}}), input_error);
}

TEST_CASE("auto ball search matches explicit certification") {
    FieldDesc K = Qpf(3, 1, 14);
    auto G = SchottkyGroup::with_auto_balls(K, {Mat2::from_ints(K, 36, 0, 0, 1)});
    auto Q = std::make_shared<QuotientGraph>(G);
    REQUIRE(Q->betti() == 1);

    // conjugated generator: fixed points away from 0, infinity
    Mat2 M = Mat2::from_ints(K, 2, 1, 1, 1);
    auto Gc = SchottkyGroup::with_auto_balls(
        K, {M * Mat2::from_ints(K, 36, 0, 0, 1) * M.inv()});
    auto Qc = std::make_shared<QuotientGraph>(Gc);
    REQUIRE(Qc->betti() == 1);
}

TEST_CASE("genus 2 quotient") {
    FieldDesc K = Qpf(3, 1, 14);
    auto G = genus2_group(K, 36, 36);
    auto Q = std::make_shared<QuotientGraph>(G);
    REQUIRE(Q->betti() == 2);
    REQUIRE(Q->to_dot().find("digraph") == 0);
}

TEST_CASE("universal measure of the tate group equals the tate measure") {
    FieldDesc K = Qpf(3, 1, 14);
    auto G = tate_group_int(K, 36);
    auto Q = std::make_shared<QuotientGraph>(G);
    auto mu = universal_measure(Q);
    auto muT = HarmonicMeasure::tate(K);
    REQUIRE(mu.rank() == 1);
    const BTTree& T = mu.tree();
    T.for_each_vertex_within(3, [&](const TreeVertex& v) {
        for (const auto& w : T.neighbors(v)) {
            TreeEdge e(v, w);
            REQUIRE(mu.value(e) == muT.value(e));
        }
    });
}

TEST_CASE("universal measure is harmonic and invariant") {
    FieldDesc K = Qpf(3, 1, 14);
    for (auto G : {genus2_group(K, 36, 36), tate_group_int(K, 18)}) {
        auto Q = std::make_shared<QuotientGraph>(G);
        auto mu = universal_measure(Q);
        REQUIRE(mu.validate(5).ok);
        const BTTree& T = mu.tree();
        for (const auto& g : G->generators()) {
            auto pushed = mu.gamma_push(g);
            T.for_each_vertex_within(2, [&](const TreeVertex& v) {
                for (const auto& w : T.neighbors(v)) {
                    TreeEdge e(v, w);
                    REQUIRE(pushed.value(e) == mu.value(e));
                }
            });
        }
        // identity matrix in the cycle basis: the port class of generator j
        // is crossed once by chain j and never by the others
        for (int j = 0; j < G->genus(); ++j)
            for (size_t c = 0; c < Q->edge_classes().size(); ++c) {
                if (!Q->edge_classes()[c].is_port) continue;
                long long expect = (Q->edge_classes()[c].gen == j) ? 1 : 0;
                REQUIRE(Q->chains()[j][c] == expect);
            }
    }
}

TEST_CASE("tate periods and L-invariants") {
    FieldDesc K = Qpf(3, 1, 14);
    long long D = 9;

    auto G = tate_group_int(K, 36); // q = p^2 (1+p)
    auto Q = std::make_shared<QuotientGraph>(G);
    auto P = periods(Q, D);
    REQUIRE(P.ordQ == std::vector<std::vector<long long>>{{2}});
    // Q_11 = q up to the certified precision
    auto unit = P.rows[0].unit[0];
    REQUIRE(PadicScalar::eq_mod(unit, embed(PadicScalar::from_int(K, 4), P.L),
                                Rat(P.rows[0].guaranteed_prec)));

    auto Llog = l_invariant(P, PhiKind::iwasawa_log);
    auto expect = PadicScalar::from_int(K.base(), 4).iwasawa_log().div_int(2);
    REQUIRE(PadicScalar::eq_mod(Llog.mat[0][0], embed(expect, Llog.F), Rat(D - 2)));

    auto Lord = l_invariant(P, PhiKind::ord);
    REQUIRE(Lord.mat[0][0].coeffs_equal(PadicScalar::one(Lord.F).truncate_rel(Lord.mat[0][0].prec())));

    // q = p^2: the log L-invariant vanishes
    auto G2 = tate_group_int(K, 9);
    auto P2 = periods(std::make_shared<QuotientGraph>(G2), D);
    auto Llog2 = l_invariant(P2, PhiKind::iwasawa_log);
    REQUIRE(Llog2.mat[0][0].vanishes_mod(Rat(D - 2)));
}

TEST_CASE("genus 2 periods: symmetry and phi_X vanishing on the lattice") {
    FieldDesc K = Qpf(3, 1, 14);
    auto G = genus2_group(K, 36, 36);
    auto Q = std::make_shared<QuotientGraph>(G);
    auto P = periods(Q, 9);
    REQUIRE(P.ord_symmetric());
    REQUIRE(P.ord_det() != 0);

    for (auto kind : {PhiKind::iwasawa_log, PhiKind::log_norm}) {
        auto L = l_invariant(P, kind);
        for (int i = 0; i < P.genus(); ++i) {
            auto v = phi_X(P, L, P.rows[i]);
            for (const auto& x : v) REQUIRE(x.vanishes_mod(Rat(6)));
        }
    }

    // phi = ord annihilates every lift
    auto Lord = l_invariant(P, PhiKind::ord);
    auto mu = universal_measure(Q);
    auto t1 = point_over(K, TreeVertex::base());
    auto t2 = point_over(K, TreeVertex(1, DigitVec{}.with_digit(0, 1)));
    auto lift = mult_integral(mu, t1, t2, 7);
    for (const auto& x : phi_X(P, Lord, lift)) REQUIRE(x.vanishes_mod(Rat(8)));
}

TEST_CASE("phi_X is well defined modulo the lattice") {
    FieldDesc K = Qpf(3, 1, 14);
    auto G = tate_group_int(K, 36);
    auto Q = std::make_shared<QuotientGraph>(G);
    auto P = periods(Q, 9);
    auto L = l_invariant(P, PhiKind::iwasawa_log);
    auto mu = universal_measure(Q);
    auto t1 = point_over(K, TreeVertex(1, DigitVec{}.with_digit(0, 2)));
    auto t2 = point_over(K, TreeVertex::base());
    auto lift = mult_integral(mu, t1, t2, 8);
    auto v0 = phi_X(P, L, lift);
    auto shifted = lift * P.rows[0];
    auto v1 = phi_X(P, L, shifted);
    REQUIRE(PadicScalar::eq_mod(v0[0], v1[0], Rat(6)));
}

TEST_CASE("log_norm_A pairing") {
    FieldDesc K = Qpf(3, 1, 14);
    auto G = tate_group_int(K, 36);
    auto Q = std::make_shared<QuotientGraph>(G);
    auto P = periods(Q, 9);

    // lattice points pair to zero
    auto z = log_norm_A({P}, {P.rows[0]}, {{Rat(3)}});
    REQUIRE(z.vanishes_mod(Rat(6)));

    // scalar case: logNorm(lift) - L ord(lift), weighted
    auto mu = universal_measure(Q);
    auto t1 = point_over(K, TreeVertex(1, DigitVec{}.with_digit(0, 2)));
    auto t2 = point_over(K, TreeVertex::base());
    auto lift = mult_integral(mu, t1, t2, 8);
    auto L = l_invariant(P, PhiKind::log_norm);
    auto direct = lift.log_norm_part()[0] -
                  L.mat[0][0] * PadicScalar::from_rat(L.F, lift.val[0]);
    auto paired = log_norm_A({P}, {lift}, {{Rat(1)}});
    REQUIRE(PadicScalar::eq_mod(direct, paired, Rat(6)));

    // linearity in the point
    auto lift2 = lift * lift;
    auto paired2 = log_norm_A({P}, {lift2}, {{Rat(1)}});
    REQUIRE(PadicScalar::eq_mod(paired2, paired + paired, Rat(6)));
}

TEST_CASE("random certified groups: betti and ord exactness") {
    std::mt19937_64 rng(2024);
    for (auto p : {3LL, 5LL}) {
        FieldDesc K = Qpf(p, 1, 12);
        for (int rep = 0; rep < 3; ++rep) {
            int genus = 1 + static_cast<int>(rng() % 2);
            auto G = random_schottky(K, genus, rng);
            auto Q = std::make_shared<QuotientGraph>(G);
            REQUIRE(Q->betti() == genus);
            auto mu = universal_measure(Q);
            auto [t1, t2] = random_tau_pair(K, 3, rng);
            long long D = 5;
            auto v = mult_integral(mu, t1, t2, D);
            REQUIRE(v.ord_certified);
            auto q = eval_on_divisor(mu, t1, t2);
            std::vector<Rat> ords = v.ord_part();
            REQUIRE(ords == q);
        }
    }
}
