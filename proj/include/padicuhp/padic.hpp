#pragma once

// Fixed-precision arithmetic in Q_p, its unramified extensions Q_{p^f}, and
// ramified quadratic extensions K(pi) with pi^2 = u*p.
//
// Representation: a nonzero value is pi^v * unit, where v counts pi-powers
// (ord_p = v/e) and the unit is a coefficient vector over Z/p^prec in the
// generator g of the unramified part (plus a pi-component when e = 2).
// `prec` is the relative precision in p-digits; the absolute precision in
// pi-units is v + e*prec.  Zero carries a certified vanishing bound instead.
//
// Precision propagation: mul/inv preserve relative precision, addition works
// at the minimum absolute precision of the operands and renormalizes, the
// Iwasawa logarithm of a 1-unit keeps the input's absolute precision for
// p >= 3.  Every operation is exact modulo its stated output precision.

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "padicuhp/errors.hpp"
#include "padicuhp/rat.hpp"

namespace padicuhp {

namespace detail {

inline long long mulmod(long long a, long long b, long long m) {
    return static_cast<long long>((static_cast<__int128>(a) * b) % m);
}

inline long long pow_ll(long long b, long long e) {
    long long r = 1;
    for (; e > 0; --e) r *= b;
    return r;
}

inline long long powmod(long long a, long long e, long long m) {
    long long r = 1 % m;
    a %= m;
    if (a < 0) a += m;
    while (e > 0) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

// inverse of a unit modulo p^k via inverse mod p + Newton lifting
inline long long invmod_prime_power(long long a, long long p, long long pk) {
    a %= pk;
    if (a < 0) a += pk;
    if (a % p == 0) throw compute_error("invmod: not a unit");
    // inverse mod p by Fermat
    long long z = powmod(a % p, p - 2, p);
    long long mod = p;
    while (mod < pk) {
        mod = (mod > pk / mod) ? pk : mod * mod;
        long long t = mulmod(a % mod, z % mod, mod);
        long long corr = (2 - t) % mod;
        if (corr < 0) corr += mod;
        z = mulmod(z % mod, corr, mod);
    }
    return z % pk;
}

inline int max_prec_for(long long p) {
    // largest k with p^k < 2^62
    int k = 0;
    long long v = 1;
    while (v <= (1LL << 61) / p) {
        v *= p;
        ++k;
    }
    return k;
}

inline bool is_prime(long long n) {
    if (n < 2) return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Residue field F_{p^f}.  Elements are encoded as sum a_i p^i for the
// coefficient tuple (a_0..a_{f-1}) in the generator basis.
// ---------------------------------------------------------------------------
class FF {
public:
    FF(long long p, int f, std::vector<long long> minpoly_mod_p)
        : p_(p), f_(f), m_(std::move(minpoly_mod_p)) {}

    long long p() const { return p_; }
    int f() const { return f_; }
    long long order() const { return detail::pow_ll(p_, f_); }

    std::vector<long long> decode(long long code) const {
        std::vector<long long> a(f_, 0);
        for (int i = 0; i < f_; ++i) {
            a[i] = code % p_;
            code /= p_;
        }
        return a;
    }
    long long encode(const std::vector<long long>& a) const {
        long long c = 0;
        for (int i = f_ - 1; i >= 0; --i) c = c * p_ + (a[i] % p_ + p_) % p_;
        return c;
    }

    long long add(long long x, long long y) const {
        auto a = decode(x), b = decode(y);
        for (int i = 0; i < f_; ++i) a[i] = (a[i] + b[i]) % p_;
        return encode(a);
    }
    long long neg(long long x) const {
        auto a = decode(x);
        for (auto& c : a) c = (p_ - c) % p_;
        return encode(a);
    }
    long long sub(long long x, long long y) const { return add(x, neg(y)); }

    long long mul(long long x, long long y) const {
        auto a = decode(x), b = decode(y);
        std::vector<long long> c(2 * f_ - 1, 0);
        for (int i = 0; i < f_; ++i)
            for (int j = 0; j < f_; ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p_;
        // reduce by the monic minimal polynomial
        for (int k = 2 * f_ - 2; k >= f_; --k) {
            long long lead = c[k] % p_;
            if (lead == 0) continue;
            for (int i = 0; i < f_; ++i)
                c[k - f_ + i] = ((c[k - f_ + i] - lead * m_[i]) % p_ + p_ * p_) % p_;
            c[k] = 0;
        }
        c.resize(f_);
        return encode(c);
    }

    long long pow(long long x, long long e) const {
        long long r = 1, b = x;
        while (e > 0) {
            if (e & 1) r = mul(r, b);
            b = mul(b, b);
            e >>= 1;
        }
        return r;
    }
    long long inv(long long x) const {
        if (x == 0) throw compute_error("FF::inv of zero");
        return pow(x, order() - 2);
    }
    bool is_square(long long x) const {
        if (x == 0) return true;
        return pow(x, (order() - 1) / 2) == 1;
    }
    // smallest-code square root (brute force; fields here are tiny)
    long long sqrt(long long x) const {
        for (long long c = 0; c < order(); ++c)
            if (mul(c, c) == x) return c;
        throw compute_error("FF::sqrt: not a square");
    }
    long long frobenius(long long x) const { return pow(x, p_); }

private:
    long long p_;
    int f_;
    std::vector<long long> m_; // monic minpoly coefficients (degree < f), mod p
};

// ---------------------------------------------------------------------------
// Field descriptor
// ---------------------------------------------------------------------------
struct FieldDesc {
    long long p = 3;              // odd prime
    int f = 1;                    // unramified residue degree
    int e = 1;                    // ramification index, 1 or 2
    std::vector<long long> eis_u; // unit u with pi^2 = u*p (coeffs in g), e = 2 only
    int N = 16;                   // working-precision cap in p-digits

    void validate() const {
        if (p < 3 || !detail::is_prime(p)) throw input_error("FieldDesc: p must be an odd prime");
        if (f < 1 || f > 5) throw input_error("FieldDesc: f out of supported range");
        if (e != 1 && e != 2) throw input_error("FieldDesc: e must be 1 or 2");
        if (N < 1 || N > detail::max_prec_for(p)) throw input_error("FieldDesc: N out of range");
        if (e == 2) {
            if (eis_u.empty() || static_cast<int>(eis_u.size()) > f)
                throw input_error("FieldDesc: eisenstein unit has wrong length");
            bool unit = false;
            for (auto c : eis_u)
                if (c % p != 0) unit = true;
            if (!((eis_u[0] % p + p) % p != 0) && !unit)
                throw input_error("FieldDesc: eisenstein coefficient must be a unit");
            if ((eis_u[0] % p + p) % p == 0)
                throw input_error("FieldDesc: eisenstein unit must have unit constant term");
        }
    }

    int degree() const { return e * f; } // over Q_p
    bool same_field(const FieldDesc& o) const {
        return p == o.p && f == o.f && e == o.e && eis_u == o.eis_u;
    }
    bool operator==(const FieldDesc& o) const { return same_field(o) && N == o.N; }

    // Monic irreducible polynomial over F_p defining the unramified part:
    // first in lexicographic coefficient order, so a pure function of (p, f).
    std::vector<long long> minpoly() const; // integer coefficients in [0, p)

    FF residue_field() const {
        auto m = minpoly();
        m.resize(f); // drop leading 1
        return FF(p, f, m);
    }

    FieldDesc with_prec(int n) const {
        FieldDesc F = *this;
        F.N = n;
        return F;
    }
    FieldDesc base() const { return FieldDesc{p, 1, 1, {}, N}; }
    FieldDesc unramified_part() const { return FieldDesc{p, f, 1, {}, N}; }
};

namespace detail {

inline bool poly_irreducible_mod_p(const std::vector<long long>& m, long long p, int f) {
    // Work in R = F_p[x]/(m).  m (monic, degree f <= 5) is irreducible iff
    // x^(p^f) = x in R and x^(p^k) != x for all k < f; for f <= 5 the
    // degree-divisibility pattern makes this equivalent to the Rabin test.
    FF R(p, f, [&] {
        auto c = m;
        c.resize(f);
        return c;
    }());
    long long x = p; // code of the class of x (coefficient vector e_1)
    long long xp = x;
    for (int k = 1; k < f; ++k) {
        xp = R.pow(xp, p);
        if (xp == x) return false;
    }
    return R.pow(xp, p) == x;
}

} // namespace detail

inline std::vector<long long> FieldDesc::minpoly() const {
    static std::map<std::pair<long long, int>, std::vector<long long>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_pair(p, f);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    std::vector<long long> m(f + 1, 0);
    m[f] = 1;
    if (f == 1) {
        // x - 0; the generator is unused in the prime field
        cache[key] = m;
        return m;
    }
    long long total = detail::pow_ll(p, f);
    for (long long code = 0; code < total; ++code) {
        long long c = code;
        for (int i = 0; i < f; ++i) {
            m[i] = c % p;
            c /= p;
        }
        if (detail::poly_irreducible_mod_p(m, p, f)) {
            cache[key] = m;
            return m;
        }
    }
    throw compute_error("no irreducible polynomial found"); // unreachable
}

// ---------------------------------------------------------------------------
// PadicScalar
// ---------------------------------------------------------------------------
class PadicScalar {
public:
    static constexpr long long kInf = (1LL << 60);

    PadicScalar() : F_{}, zero_(true), vpi_(kInf), prec_(0) {}

    explicit PadicScalar(const FieldDesc& F) : F_(F), zero_(true), vpi_(kInf), prec_(0) {}

    static PadicScalar zero(const FieldDesc& F) { return PadicScalar(F); }

    // zero known only up to ord_pi >= bound
    static PadicScalar zero_at(const FieldDesc& F, long long vanish_pi) {
        PadicScalar x(F);
        x.vpi_ = vanish_pi;
        return x;
    }

    static PadicScalar from_int(const FieldDesc& F, long long n) {
        return from_rat(F, Rat(n));
    }

    static PadicScalar from_rat(const FieldDesc& F, const Rat& r) {
        F.validate();
        if (r.numerator() == 0) return zero(F);
        long long num = r.numerator(), den = r.denominator();
        long long v = 0;
        while (num % F.p == 0) {
            num /= F.p;
            ++v;
        }
        while (den % F.p == 0) {
            den /= F.p;
            --v;
        }
        PadicScalar x(F);
        x.zero_ = false;
        x.vpi_ = v * F.e;
        x.prec_ = F.N;
        long long pk = detail::pow_ll(F.p, x.prec_);
        long long u = detail::mulmod((num % pk + pk) % pk, detail::invmod_prime_power(den, F.p, pk), pk);
        x.a_.assign(F.f, 0);
        x.a_[0] = u;
        if (F.e == 2) x.b_.assign(F.f, 0);
        return x;
    }

    // unit from coefficient vectors (a + b*pi), valuation shift in pi-units
    static PadicScalar from_unit_coeffs(const FieldDesc& F, std::vector<long long> a,
                                        std::vector<long long> b, long long vpi, int prec) {
        PadicScalar x(F);
        if (prec <= 0) throw compute_error("from_unit_coeffs: no precision");
        prec = std::min(prec, F.N);
        long long pk = detail::pow_ll(F.p, prec);
        a.resize(F.f, 0);
        for (auto& c : a) c = (c % pk + pk) % pk;
        if (F.e == 2) {
            b.resize(F.f, 0);
            for (auto& c : b) c = (c % pk + pk) % pk;
        } else if (!b.empty()) {
            throw input_error("pi-component in an unramified field");
        }
        x.zero_ = false;
        x.vpi_ = vpi;
        x.prec_ = prec;
        x.a_ = std::move(a);
        x.b_ = std::move(b);
        x.renormalize();
        return x;
    }

    static PadicScalar one(const FieldDesc& F) { return from_int(F, 1); }

    static PadicScalar generator(const FieldDesc& F) {
        if (F.f == 1) throw input_error("prime field has no generator");
        PadicScalar x(F);
        x.zero_ = false;
        x.vpi_ = 0;
        x.prec_ = F.N;
        x.a_.assign(F.f, 0);
        x.a_[1] = 1;
        if (F.e == 2) x.b_.assign(F.f, 0);
        return x;
    }

    static PadicScalar uniformizer(const FieldDesc& F) {
        if (F.e == 1) return from_int(F, F.p);
        PadicScalar x(F);
        x.zero_ = false;
        x.vpi_ = 1;
        x.prec_ = F.N;
        x.a_.assign(F.f, 0);
        x.a_[0] = 1;
        x.b_.assign(F.f, 0);
        return x;
    }

    const FieldDesc& field() const { return F_; }
    bool is_zero() const { return zero_; }
    bool exactly_zero() const { return zero_ && vpi_ >= kInf; }
    int prec() const { return prec_; }

    // certified absolute precision in pi-units (coarse for zero)
    long long abs_prec_pi() const { return zero_ ? vpi_ : vpi_ + static_cast<long long>(F_.e) * prec_; }

    Rat ord() const {
        if (zero_) throw compute_error("ord of zero");
        return Rat(vpi_, F_.e);
    }
    std::optional<Rat> ord_or_inf() const {
        if (zero_) return std::nullopt;
        return Rat(vpi_, F_.e);
    }
    long long ord_pi() const {
        if (zero_) throw compute_error("ord of zero");
        return vpi_;
    }

    PadicScalar operator-() const {
        if (zero_) return *this;
        PadicScalar r = *this;
        long long pk = r.modulus();
        for (auto& c : r.a_) c = (pk - c) % pk;
        for (auto& c : r.b_) c = (pk - c) % pk;
        return r;
    }

    PadicScalar operator+(const PadicScalar& y) const {
        require_same_field(y);
        if (zero_ && y.zero_) return zero_at(F_, std::min(vpi_, y.vpi_));
        if (zero_) return y.truncate_abs_pi(vpi_);
        if (y.zero_) return truncate_abs_pi(y.vpi_);
        long long v = std::min(vpi_, y.vpi_);
        long long A = std::min(abs_prec_pi(), y.abs_prec_pi()); // abs prec of the sum
        if (A <= v) throw compute_error("addition: precision exhausted");
        int coeff_prec = static_cast<int>((A - v + F_.e - 1) / F_.e);
        coeff_prec = std::min(coeff_prec, F_.N);
        auto [xa, xb] = shifted_coeffs(*this, vpi_ - v, coeff_prec);
        auto [ya, yb] = shifted_coeffs(y, y.vpi_ - v, coeff_prec);
        long long pk = detail::pow_ll(F_.p, coeff_prec);
        for (int i = 0; i < F_.f; ++i) xa[i] = (xa[i] + ya[i]) % pk;
        for (size_t i = 0; i < xb.size(); ++i) xb[i] = (xb[i] + yb[i]) % pk;
        return make_renormalized(F_, std::move(xa), std::move(xb), v, A);
    }

    PadicScalar operator-(const PadicScalar& y) const { return *this + (-y); }

    PadicScalar operator*(const PadicScalar& y) const {
        require_same_field(y);
        if (zero_ || y.zero_) {
            long long bound = kInf;
            if (!exactly_zero() || !y.exactly_zero()) {
                long long vx = zero_ ? vpi_ : vpi_;
                long long vy = y.zero_ ? y.vpi_ : y.vpi_;
                bound = std::min(vx + vy, kInf);
            }
            return zero_at(F_, std::min(bound, kInf));
        }
        int prec = std::min(prec_, y.prec_);
        long long pk = detail::pow_ll(F_.p, prec);
        std::vector<long long> ra, rb;
        if (F_.e == 1) {
            ra = polymul(a_, y.a_, pk);
        } else {
            // (a1 + b1 pi)(a2 + b2 pi) = a1 a2 + u p b1 b2 + (a1 b2 + b1 a2) pi
            auto a1a2 = polymul(a_, y.a_, pk);
            auto b1b2 = polymul(b_, y.b_, pk);
            auto upb = polymul(b1b2, eis_coeffs(pk), pk);
            for (auto& c : upb) c = detail::mulmod(c, F_.p % pk, pk);
            ra = a1a2;
            for (int i = 0; i < F_.f; ++i) ra[i] = (ra[i] + upb[i]) % pk;
            auto a1b2 = polymul(a_, y.b_, pk);
            auto b1a2 = polymul(b_, y.a_, pk);
            rb = a1b2;
            for (int i = 0; i < F_.f; ++i) rb[i] = (rb[i] + b1a2[i]) % pk;
        }
        PadicScalar r(F_);
        r.zero_ = false;
        r.vpi_ = vpi_ + y.vpi_;
        r.prec_ = prec;
        r.a_ = std::move(ra);
        r.b_ = std::move(rb);
        // product of units is a unit: no renormalization needed, but guard
        if (r.residue_code() == 0) r.renormalize();
        return r;
    }

    PadicScalar inv() const {
        if (zero_) throw compute_error("inversion of zero");
        long long pk = modulus();
        PadicScalar r(F_);
        r.zero_ = false;
        r.vpi_ = -vpi_;
        r.prec_ = prec_;
        if (F_.e == 1) {
            r.a_ = polyinv(a_, pk);
        } else {
            // (a + b pi)^-1 = (a - b pi) / (a^2 - u p b^2)
            auto a2 = polymul(a_, a_, pk);
            auto b2 = polymul(b_, b_, pk);
            auto upb2 = polymul(b2, eis_coeffs(pk), pk);
            for (auto& c : upb2) c = detail::mulmod(c, F_.p % pk, pk);
            std::vector<long long> den(F_.f);
            for (int i = 0; i < F_.f; ++i) den[i] = ((a2[i] - upb2[i]) % pk + pk) % pk;
            auto deninv = polyinv(den, pk);
            r.a_ = polymul(a_, deninv, pk);
            auto nb = polymul(b_, deninv, pk);
            for (auto& c : nb) c = (pk - c) % pk;
            r.b_ = std::move(nb);
        }
        return r;
    }

    PadicScalar operator/(const PadicScalar& y) const { return *this * y.inv(); }

    PadicScalar pow_int(long long n) const {
        if (n == 0) return one(F_);
        if (zero_) {
            if (n < 0) throw compute_error("inversion of zero");
            return zero_at(F_, exactly_zero() ? kInf : std::min(vpi_ * n, kInf));
        }
        PadicScalar base = (n < 0) ? inv() : *this;
        unsigned long long m = (n < 0) ? static_cast<unsigned long long>(-n) : static_cast<unsigned long long>(n);
        PadicScalar r = one(F_);
        r = r.truncate_rel(base.prec_);
        while (m > 0) {
            if (m & 1) r = r * base;
            base = base * base;
            m >>= 1;
        }
        return r;
    }

    // division by a plain integer (exact p-power handling)
    PadicScalar div_int(long long n) const {
        if (n == 0) throw compute_error("division by zero integer");
        bool neg = n < 0;
        if (neg) n = -n;
        long long t = 0;
        while (n % F_.p == 0) {
            n /= F_.p;
            ++t;
        }
        PadicScalar r = *this;
        if (!r.zero_) {
            long long pk = r.modulus();
            long long ninv = detail::invmod_prime_power(n % pk, F_.p, pk);
            for (auto& c : r.a_) c = detail::mulmod(c, ninv, pk);
            for (auto& c : r.b_) c = detail::mulmod(c, ninv, pk);
        }
        if (r.vpi_ < kInf) r.vpi_ -= t * F_.e;
        return neg ? -r : r;
    }

    PadicScalar mul_pow_pi(long long k) const {
        PadicScalar r = *this;
        if (r.vpi_ < kInf) r.vpi_ += k;
        return r;
    }

    // truncations ------------------------------------------------------------
    PadicScalar truncate_rel(int prec) const {
        if (zero_ || prec >= prec_) return *this;
        if (prec <= 0) throw compute_error("truncate: no precision left");
        PadicScalar r = *this;
        long long pk = detail::pow_ll(F_.p, prec);
        r.prec_ = prec;
        for (auto& c : r.a_) c %= pk;
        for (auto& c : r.b_) c %= pk;
        return r;
    }
    PadicScalar truncate_abs_pi(long long A) const {
        if (zero_) return zero_at(F_, std::min(vpi_, A));
        if (A >= abs_prec_pi()) return *this;
        if (A <= vpi_) return zero_at(F_, A);
        int prec = static_cast<int>((A - vpi_) / F_.e);
        if (prec < 1) return zero_at(F_, A);
        return truncate_rel(prec);
    }

    // residue of the unit part as an F_{p^f} code; 0 only for zero
    long long residue_code() const {
        if (zero_) return 0;
        std::vector<long long> d(F_.f);
        for (int i = 0; i < F_.f; ++i) d[i] = a_[i] % F_.p;
        long long c = 0;
        for (int i = F_.f - 1; i >= 0; --i) c = c * F_.p + d[i];
        return c;
    }

    // Teichmueller lift of the unit part's residue
    PadicScalar teichmuller() const {
        if (zero_ || vpi_ != 0) throw compute_error("teichmuller: not a unit");
        PadicScalar t = *this;
        long long q = detail::pow_ll(F_.p, F_.f);
        int guard = 2 * (F_.e * prec_ + 2);
        for (int it = 0; it < guard; ++it) {
            PadicScalar next = t.pow_int(q);
            if (next.coeffs_equal(t)) return next;
            t = next;
        }
        throw compute_error("teichmuller iteration failed to converge");
    }

    // Iwasawa logarithm: log(p) = 0, kernel contains roots of unity
    PadicScalar iwasawa_log() const {
        if (zero_) throw compute_error("log of zero");
        // strip pi-power and Teichmueller part
        PadicScalar u = *this;
        long long w = u.vpi_;
        u.vpi_ = 0;
        PadicScalar t = u.teichmuller();
        PadicScalar one_unit = u * t.inv();
        PadicScalar res = log_one_unit(one_unit);
        if (F_.e == 2 && w != 0) {
            // log(pi) = (1/2) log(u_eis): pi^2 = u_eis * p and log(p) = 0
            PadicScalar ue = eis_scalar(res.prec());
            PadicScalar logpi = ue.iwasawa_log().div_int(2);
            res = res + logpi * from_int(F_, w);
        }
        return res;
    }

    // projection to 1-units of Q_p:  x = p^ord * teich * <x>
    PadicScalar angle() const {
        if (F_.f != 1 || F_.e != 1) throw input_error("angle: base field Q_p only");
        if (zero_) throw compute_error("angle of zero");
        PadicScalar u = *this;
        u.vpi_ = 0;
        return u * u.teichmuller().inv();
    }

    // Frobenius lift (unramified fields): the ring automorphism sending the
    // generator to its conjugate with residue g^p
    PadicScalar frobenius() const {
        if (F_.e != 1) throw input_error("frobenius: unramified fields only");
        if (F_.f == 1) return *this;
        if (zero_) return *this;
        PadicScalar r = frobenius_generator_image(F_, prec_);
        // evaluate the coefficient polynomial at the conjugate generator
        PadicScalar acc = zero(F_);
        for (int i = F_.f - 1; i >= 0; --i) acc = acc * r + from_int(F_, a_[i]);
        PadicScalar out = acc.truncate_rel(prec_);
        out.vpi_ += vpi_; // acc is a unit: Frobenius permutes nonzero residues
        return out;
    }

    // Norm down to Q_p
    PadicScalar norm_to_base() const {
        FieldDesc B = F_.base();
        if (zero_) {
            PadicScalar z(B);
            z.vpi_ = std::min(kInf, exactly_zero() ? kInf : vpi_ * F_.degree() / F_.e);
            return z;
        }
        if (F_.e == 2) return norm_to_unram().norm_to_base();
        PadicScalar prod = *this;
        PadicScalar conj = *this;
        for (int i = 1; i < F_.f; ++i) {
            conj = conj.frobenius();
            prod = prod * conj;
        }
        // Galois-stable: higher coefficients vanish exactly at working precision
        PadicScalar out(B);
        out.zero_ = false;
        out.vpi_ = prod.vpi_;
        out.prec_ = prod.prec_;
        out.a_ = {prod.a_[0]};
        for (int i = 1; i < F_.f; ++i)
            if (prod.a_[i] != 0) throw compute_error("norm: conjugate product not rational");
        return out;
    }

    // relative norm K(pi)/K: (a + b pi)(a - b pi) = a^2 - u p b^2
    PadicScalar norm_to_unram() const {
        if (F_.e != 2) throw input_error("norm_to_unram: ramified input expected");
        FieldDesc K = F_.unramified_part();
        if (zero_) {
            PadicScalar z(K);
            z.vpi_ = exactly_zero() ? kInf : vpi_;
            return z;
        }
        long long pk = modulus();
        auto a2 = polymul(a_, a_, pk);
        auto b2 = polymul(b_, b_, pk);
        auto upb2 = polymul(b2, eis_coeffs(pk), pk);
        for (auto& c : upb2) c = detail::mulmod(c, F_.p % pk, pk);
        std::vector<long long> n(F_.f);
        for (int i = 0; i < F_.f; ++i) n[i] = ((a2[i] - upb2[i]) % pk + pk) % pk;
        // x = pi^v * unit, N(pi) = -pi^2 = -u p, so N(x) = (-u p)^v N(unit)
        PadicScalar out = PadicScalar::from_unit_coeffs(K, n, {}, 0, prec_);
        PadicScalar Npi = -eis_scalar_in(K, prec_) * from_int(K, F_.p);
        return out * Npi.pow_int(vpi_);
    }

    PadicScalar log_norm() const {
        if (zero_) throw compute_error("logNorm of zero");
        return norm_to_base().iwasawa_log().div_int(F_.degree());
    }

    // square root; requires even pi-valuation and square unit residue
    PadicScalar sqrt() const {
        if (zero_) {
            if (exactly_zero()) return *this;
            throw compute_error("sqrt of inexact zero");
        }
        if (vpi_ % 2 != 0) throw compute_error("sqrt: odd valuation");
        FF R = F_.residue_field();
        long long r0 = residue_code();
        if (!R.is_square(r0)) throw compute_error("sqrt: residue is not a square");
        PadicScalar u = *this;
        u.vpi_ = 0;
        long long s0 = R.sqrt(r0);
        PadicScalar t = lift_residue(F_, s0, prec_);
        PadicScalar half = from_int(F_, 2).inv().truncate_rel(prec_);
        for (int it = 0; it < 2 * prec_ + 6; ++it) {
            PadicScalar next = (t + u / t) * half;
            if (next.coeffs_equal(t)) {
                next.vpi_ += vpi_ / 2;
                return next;
            }
            t = next;
        }
        throw compute_error("sqrt iteration failed to converge");
    }

    bool coeffs_equal(const PadicScalar& y) const {
        return zero_ == y.zero_ && vpi_ == y.vpi_ && a_ == y.a_ && b_ == y.b_ && prec_ == y.prec_;
    }

    // certified: ord_p(x - y) >= k
    static bool eq_mod(const PadicScalar& x, const PadicScalar& y, const Rat& k) {
        PadicScalar d = x - y;
        if (d.zero_) return Rat(d.vpi_, x.F_.e) >= k;
        return d.ord() >= k;
    }

    // certified vanishing: ord_p(x) >= k
    bool vanishes_mod(const Rat& k) const {
        if (zero_) return Rat(std::min(vpi_, kInf), F_.e) >= k;
        return ord() >= k;
    }

    std::string to_string() const;

    // plain lift of a residue code, with given relative precision
    static PadicScalar lift_residue(const FieldDesc& F, long long code, int prec) {
        if (code == 0) return zero(F);
        std::vector<long long> a(F.f);
        long long c = code;
        for (int i = 0; i < F.f; ++i) {
            a[i] = c % F.p;
            c /= F.p;
        }
        return from_unit_coeffs(F, a, {}, 0, prec);
    }

    static PadicScalar random_unit(const FieldDesc& F, std::mt19937_64& rng, int prec = 0) {
        if (prec <= 0) prec = F.N;
        long long pk = detail::pow_ll(F.p, prec);
        std::uniform_int_distribution<long long> d(0, pk - 1);
        std::vector<long long> a(F.f), b;
        bool unit = false;
        while (!unit) {
            for (auto& c : a) {
                c = d(rng);
                if (c % F.p != 0) unit = true;
            }
        }
        if (F.e == 2) {
            b.resize(F.f);
            for (auto& c : b) c = d(rng);
        }
        return from_unit_coeffs(F, a, b, 0, prec);
    }

    const std::vector<long long>& unit_a() const { return a_; }
    const std::vector<long long>& unit_b() const { return b_; }
    long long raw_vpi() const { return vpi_; }

private:
    FieldDesc F_;
    bool zero_;
    long long vpi_; // nonzero: valuation in pi-units; zero: certified vanishing bound
    int prec_;      // relative precision in p-digits
    std::vector<long long> a_, b_;

    long long modulus() const { return detail::pow_ll(F_.p, prec_); }

    void require_same_field(const PadicScalar& y) const {
        if (!F_.same_field(y.F_)) throw input_error("field mismatch");
    }

    std::vector<long long> eis_coeffs(long long pk) const {
        std::vector<long long> u(F_.f, 0);
        for (size_t i = 0; i < F_.eis_u.size(); ++i) u[i] = (F_.eis_u[i] % pk + pk) % pk;
        return u;
    }
    PadicScalar eis_scalar(int prec) const { return eis_scalar_in(F_, prec); }
    PadicScalar eis_scalar_in(const FieldDesc& T, int prec) const {
        std::vector<long long> u(T.f, 0);
        for (size_t i = 0; i < F_.eis_u.size() && i < u.size(); ++i) u[i] = F_.eis_u[i];
        return from_unit_coeffs(T, u, {}, 0, prec);
    }

    std::vector<long long> polymul(const std::vector<long long>& x, const std::vector<long long>& y,
                                   long long pk) const {
        if (F_.f == 1) return {detail::mulmod(x[0] % pk, y[0] % pk, pk)};
        std::vector<long long> c(2 * F_.f - 1, 0);
        for (int i = 0; i < F_.f; ++i)
            for (int j = 0; j < F_.f; ++j)
                c[i + j] = (c[i + j] + static_cast<long long>(detail::mulmod(x[i] % pk, y[j] % pk, pk))) % pk;
        auto m = F_.minpoly();
        for (int k = 2 * F_.f - 2; k >= F_.f; --k) {
            long long lead = c[k];
            if (lead == 0) continue;
            for (int i = 0; i < F_.f; ++i) {
                c[k - F_.f + i] = ((c[k - F_.f + i] - detail::mulmod(lead, m[i] % pk, pk)) % pk + pk) % pk;
            }
            c[k] = 0;
        }
        c.resize(F_.f);
        return c;
    }

    std::vector<long long> polyinv(const std::vector<long long>& x, long long pk) const {
        if (F_.f == 1) return {detail::invmod_prime_power(x[0], F_.p, pk)};
        // inverse mod p by Fermat in the residue field, then Newton lifting
        FF R = F_.residue_field();
        long long code = 0;
        for (int i = F_.f - 1; i >= 0; --i) code = code * F_.p + x[i] % F_.p;
        if (code == 0) throw compute_error("polyinv: not a unit");
        auto z0 = R.decode(R.inv(code));
        std::vector<long long> z(z0.begin(), z0.end());
        z.resize(F_.f, 0);
        long long mod = F_.p;
        while (mod < pk) {
            mod = (mod > pk / mod) ? pk : mod * mod;
            std::vector<long long> xm(F_.f), zm(F_.f);
            for (int i = 0; i < F_.f; ++i) {
                xm[i] = x[i] % mod;
                zm[i] = z[i] % mod;
            }
            long long save = pk;
            (void)save;
            auto t = polymul_mod(xm, zm, mod);
            // z <- z (2 - x z)
            std::vector<long long> corr(F_.f, 0);
            corr[0] = 2 % mod;
            for (int i = 0; i < F_.f; ++i) corr[i] = ((corr[i] - t[i]) % mod + mod) % mod;
            z = polymul_mod(zm, corr, mod);
        }
        for (auto& c : z) c %= pk;
        return z;
    }

    std::vector<long long> polymul_mod(const std::vector<long long>& x, const std::vector<long long>& y,
                                       long long mod) const {
        std::vector<long long> c(2 * F_.f - 1, 0);
        for (int i = 0; i < F_.f; ++i)
            for (int j = 0; j < F_.f; ++j)
                c[i + j] = (c[i + j] + detail::mulmod(x[i], y[j], mod)) % mod;
        auto m = F_.minpoly();
        for (int k = 2 * F_.f - 2; k >= F_.f; --k) {
            long long lead = c[k];
            if (lead == 0) continue;
            for (int i = 0; i < F_.f; ++i)
                c[k - F_.f + i] = ((c[k - F_.f + i] - detail::mulmod(lead, m[i] % mod, mod)) % mod + mod) % mod;
            c[k] = 0;
        }
        c.resize(F_.f);
        return c;
    }

    // coefficients of pi^shift * unit at given target precision
    static std::pair<std::vector<long long>, std::vector<long long>>
    shifted_coeffs(const PadicScalar& x, long long shift, int prec) {
        long long pk = detail::pow_ll(x.F_.p, prec);
        std::vector<long long> a(x.F_.f, 0), b;
        if (x.F_.e == 2) b.assign(x.F_.f, 0);
        auto xa = x.a_, xb = x.b_;
        xa.resize(x.F_.f, 0);
        if (x.F_.e == 2) xb.resize(x.F_.f, 0);
        for (auto& c : xa) c %= pk;
        for (auto& c : xb) c %= pk;
        if (x.F_.e == 1) {
            long long mult = detail::powmod(x.F_.p, shift, pk);
            for (int i = 0; i < x.F_.f; ++i) a[i] = detail::mulmod(xa[i], mult, pk);
            return {a, b};
        }
        // e = 2: multiply by pi^shift = (u p)^(shift/2) (even) times possibly pi
        long long t = shift / 2;
        bool odd = (shift % 2) != 0;
        PadicScalar dummy(x.F_);
        dummy.prec_ = prec;
        auto ue = dummy.eis_coeffs(pk);
        // compute (u p)^t as polynomial times power of p
        std::vector<long long> scale(x.F_.f, 0);
        scale[0] = detail::powmod(x.F_.p, t, pk);
        for (long long i = 0; i < t; ++i) scale = dummy.polymul_mod(scale, ue, pk);
        auto A = dummy.polymul_mod(xa, scale, pk);
        auto B = dummy.polymul_mod(xb, scale, pk);
        if (!odd) return {A, B};
        // multiply once more by pi: (A + B pi) pi = (u p B) + A pi
        auto upB = dummy.polymul_mod(B, ue, pk);
        for (auto& c : upB) c = detail::mulmod(c, x.F_.p % pk, pk);
        return {upB, A};
    }

    static PadicScalar make_renormalized(const FieldDesc& F, std::vector<long long> a,
                                         std::vector<long long> b, long long vpi, long long abs_pi) {
        PadicScalar r(F);
        r.zero_ = false;
        r.vpi_ = vpi;
        r.prec_ = static_cast<int>((abs_pi - vpi + F.e - 1) / F.e);
        r.prec_ = std::min(r.prec_, F.N);
        r.a_ = std::move(a);
        r.b_ = std::move(b);
        r.abs_cap_ = abs_pi;
        r.renormalize();
        r.abs_cap_ = 0;
        return r;
    }

    long long abs_cap_ = 0; // transient: absolute precision bound during renormalize

    void renormalize() {
        long long abs_pi = abs_cap_ > 0 ? abs_cap_ : vpi_ + static_cast<long long>(F_.e) * prec_;
        while (true) {
            if (vpi_ >= abs_pi) {
                zero_ = true;
                vpi_ = abs_pi;
                prec_ = 0;
                a_.clear();
                b_.clear();
                return;
            }
            bool a_div = true, b_div = true;
            for (auto c : a_)
                if (c % F_.p != 0) a_div = false;
            for (auto c : b_)
                if (c % F_.p != 0) b_div = false;
            if (F_.e == 1) {
                if (!a_div) break;
                for (auto& c : a_) c /= F_.p;
                vpi_ += 1;
            } else {
                // unit iff a has nonzero residue; pi | x iff p | a
                if (!a_div) break;
                // x = p a' + b pi = pi (b + (a'/u... ) pi) -- divide by pi:
                // (a + b pi)/pi = b + (a / (u p)) pi
                long long pk = detail::pow_ll(F_.p, prec_);
                auto ue = eis_coeffs(pk);
                auto ueinv = polyinv(ue, pk);
                std::vector<long long> adp(F_.f);
                for (int i = 0; i < F_.f; ++i) adp[i] = a_[i] / F_.p;
                auto newb = polymul_mod(adp, ueinv, pk);
                a_ = b_;
                b_ = std::move(newb);
                vpi_ += 1;
            }
            long long avail = abs_pi - vpi_;
            int nprec = static_cast<int>(avail / F_.e);
            if (nprec <= 0) {
                zero_ = true;
                vpi_ = abs_pi;
                prec_ = 0;
                a_.clear();
                b_.clear();
                return;
            }
            if (nprec < prec_) {
                long long pk = detail::pow_ll(F_.p, nprec);
                for (auto& c : a_) c %= pk;
                for (auto& c : b_) c %= pk;
                prec_ = nprec;
            }
        }
        // clamp stored precision to the certified absolute bound
        long long avail = abs_pi - vpi_;
        int nprec = static_cast<int>(avail / F_.e);
        if (nprec <= 0) throw compute_error("precision exhausted");
        if (nprec < prec_) {
            long long pk = detail::pow_ll(F_.p, nprec);
            for (auto& c : a_) c %= pk;
            for (auto& c : b_) c %= pk;
            prec_ = nprec;
        }
    }

    // 1-unit logarithm by the alternating series with adaptive truncation
    PadicScalar log_one_unit(const PadicScalar& u) const {
        PadicScalar z = u - one(F_).truncate_rel(u.prec());
        if (z.is_zero()) return zero_at(F_, z.vpi_);
        long long w = z.ord_pi();
        if (w < 1) throw compute_error("log: not a 1-unit");
        long long target = z.abs_prec_pi();
        PadicScalar acc = zero(F_);
        PadicScalar zk = z;
        for (long long k = 1;; ++k) {
            long long kp = 0;
            long long kk = k;
            while (kk % F_.p == 0) {
                kk /= F_.p;
                ++kp;
            }
            if (k * w - F_.e * kp >= target && k > 1) break;
            PadicScalar term = zk.div_int(k);
            if (k % 2 == 0) term = -term;
            acc = acc + term;
            zk = zk * z;
            if (k > 4 * (target + 4)) throw compute_error("log series failed to truncate");
        }
        return acc;
    }

    static PadicScalar frobenius_generator_image(const FieldDesc& F, int prec);

    friend PadicScalar embed(const PadicScalar&, const FieldDesc&);
    friend struct ScalarPacker;
};

// Newton refinement of a root of the minimal polynomial, starting from an
// initial approximation whose residue is already a root mod p.
inline PadicScalar newton_root_of_minpoly(const FieldDesc& src, const FieldDesc& target,
                                          PadicScalar x0) {
    auto m = src.minpoly();
    auto eval = [&](const PadicScalar& t) {
        PadicScalar acc = PadicScalar::zero(target);
        for (int i = static_cast<int>(m.size()) - 1; i >= 0; --i)
            acc = acc * t + PadicScalar::from_int(target, m[i]);
        return acc;
    };
    auto evald = [&](const PadicScalar& t) {
        PadicScalar acc = PadicScalar::zero(target);
        for (int i = static_cast<int>(m.size()) - 1; i >= 1; --i)
            acc = acc * t + PadicScalar::from_int(target, m[i] * i);
        return acc;
    };
    PadicScalar x = x0;
    for (int it = 0; it < 2 * target.N + 8; ++it) {
        PadicScalar fx = eval(x);
        if (fx.is_zero() && fx.raw_vpi() >= target.e * target.N) return x;
        PadicScalar next = x - fx / evald(x);
        if (next.coeffs_equal(x)) return x;
        x = next;
    }
    throw compute_error("newton root iteration failed");
}

inline PadicScalar PadicScalar::frobenius_generator_image(const FieldDesc& F, int prec) {
    struct Key {
        long long p;
        int f;
        int prec;
        bool operator<(const Key& o) const { return std::tie(p, f, prec) < std::tie(o.p, o.f, o.prec); }
    };
    static std::map<Key, PadicScalar> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    Key key{F.p, F.f, prec};
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    FieldDesc Fp = F.unramified_part().with_prec(prec);
    PadicScalar g = generator(Fp);
    PadicScalar r = newton_root_of_minpoly(Fp, Fp, g.pow_int(F.p));
    cache[key] = r;
    return r;
}

// ---------------------------------------------------------------------------
// Embeddings between supported fields (same p):
//   Q_p -> anything, Q_{p^f} -> Q_{p^f'} for f | f', K -> K(pi).
// ---------------------------------------------------------------------------
inline PadicScalar embed(const PadicScalar& x, const FieldDesc& T) {
    const FieldDesc& S = x.field();
    if (S.p != T.p) throw input_error("embed: different primes");
    if (S.same_field(T)) return x;
    if (S.e == 2) {
        if (T.e == 2 && S.f == T.f && S.eis_u == T.eis_u) return x; // same field, other N
        throw input_error("embed: cannot embed a ramified field");
    }
    if (x.is_zero()) {
        PadicScalar z(T);
        z.vpi_ = x.exactly_zero() ? PadicScalar::kInf : x.vpi_ * (T.e / S.e);
        return z;
    }
    // step 1: unramified part
    PadicScalar cur = x;
    if (S.f != T.f) {
        if (T.f % S.f != 0) throw input_error("embed: residue degree does not divide");
        FieldDesc Tu = T.unramified_part();
        // image of the source generator in the target
        PadicScalar root = [&] {
            struct Key {
                long long p;
                int fs, fd, prec;
                bool operator<(const Key& o) const {
                    return std::tie(p, fs, fd, prec) < std::tie(o.p, o.fs, o.fd, o.prec);
                }
            };
            static std::map<Key, PadicScalar> cache;
            static std::mutex mtx;
            std::lock_guard<std::mutex> lock(mtx);
            Key key{S.p, S.f, T.f, Tu.N};
            auto it = cache.find(key);
            if (it != cache.end()) return it->second;
            if (S.f == 1) {
                PadicScalar r = PadicScalar::one(Tu);
                cache[key] = r;
                return r;
            }
            // find a residue root of the source minpoly in the big residue field
            FF R = Tu.residue_field();
            auto m = S.minpoly();
            long long root_code = -1;
            for (long long c = 0; c < R.order(); ++c) {
                long long acc = 0;
                for (int i = S.f; i >= 0; --i) acc = R.add(R.mul(acc, c), (m[i] % S.p + S.p) % S.p);
                if (acc == 0) {
                    root_code = c;
                    break;
                }
            }
            if (root_code < 0) throw compute_error("embed: no residue root found");
            PadicScalar r =
                newton_root_of_minpoly(S, Tu, PadicScalar::lift_residue(Tu, root_code, Tu.N));
            cache[key] = r;
            return r;
        }();
        PadicScalar acc = PadicScalar::zero(Tu);
        long long pk = detail::pow_ll(S.p, cur.prec());
        for (int i = S.f - 1; i >= 0; --i) {
            acc = acc * root + PadicScalar::from_int(Tu, cur.a_[i] % pk).truncate_rel(cur.prec());
        }
        if (acc.is_zero()) throw compute_error("embed: unit mapped to zero");
        acc.vpi_ += cur.vpi_;
        cur = acc.truncate_rel(std::min(cur.prec(), Tu.N));
    }
    // step 2: ramification
    if (T.e == 2) {
        PadicScalar out(T);
        out.zero_ = false;
        out.vpi_ = cur.vpi_ * 2;
        out.prec_ = std::min(cur.prec_, T.N);
        long long pk = detail::pow_ll(T.p, out.prec_);
        out.a_ = cur.a_;
        out.a_.resize(T.f, 0);
        for (auto& c : out.a_) c %= pk;
        out.b_.assign(T.f, 0);
        return out;
    }
    return cur.truncate_rel(std::min(cur.prec(), T.N));
}

// ---------------------------------------------------------------------------
// Residue-level embedding F_{p^fs} -> F_{p^fd} (fs | fd): subfield membership
// and digit conversion for the reduction map.
// ---------------------------------------------------------------------------
class ResidueEmbedding {
public:
    ResidueEmbedding(long long p, int fs, int fd)
        : p_(p), fs_(fs), fd_(fd), big_(FieldDesc{p, fd, 1, {}, 2}.residue_field()),
          small_(FieldDesc{p, fs, 1, {}, 2}.residue_field()) {
        if (fd % fs != 0) throw input_error("residue embedding: fs must divide fd");
        // residue root of the small minimal polynomial inside the big field
        auto m = FieldDesc{p, fs, 1, {}, 2}.minpoly();
        root_ = -1;
        for (long long c = 0; c < big_.order(); ++c) {
            long long acc = 0;
            for (int i = fs; i >= 0; --i) acc = big_.add(big_.mul(acc, c), (m[i] % p + p) % p);
            if (acc == 0) {
                root_ = c;
                break;
            }
        }
        if (root_ < 0) throw compute_error("residue embedding: no root");
        // columns of the F_p-linear map (powers of the root)
        cols_.resize(fs_);
        long long pw = 1;
        for (int i = 0; i < fs_; ++i) {
            cols_[i] = big_.decode(pw);
            pw = big_.mul(pw, root_);
        }
    }

    bool in_subfield(long long big_code) const {
        long long x = big_code;
        for (int i = 0; i < fs_; ++i) x = big_.pow(x, p_);
        // x = code^{p^fs}
        return x == big_code;
    }

    long long up(long long small_code) const {
        auto a = small_.decode(small_code);
        long long acc = 0, pw = 1;
        for (int i = 0; i < fs_; ++i) {
            for (long long k = 0; k < a[i]; ++k) acc = big_.add(acc, pw);
            pw = big_.mul(pw, root_);
        }
        return acc;
    }

    // solve for the subfield coordinates; requires in_subfield
    long long down(long long big_code) const {
        // Gaussian elimination over F_p on the fd x fs system
        int rows = fd_, colsn = fs_;
        std::vector<std::vector<long long>> M(rows, std::vector<long long>(colsn + 1, 0));
        for (int j = 0; j < colsn; ++j)
            for (int i = 0; i < rows; ++i) M[i][j] = cols_[j][i];
        auto rhs = big_.decode(big_code);
        for (int i = 0; i < rows; ++i) M[i][colsn] = rhs[i];
        int rank = 0;
        std::vector<int> pivot_col(colsn, -1);
        for (int j = 0; j < colsn && rank < rows; ++j) {
            int piv = -1;
            for (int i = rank; i < rows; ++i)
                if (M[i][j] % p_ != 0) {
                    piv = i;
                    break;
                }
            if (piv < 0) continue;
            std::swap(M[rank], M[piv]);
            long long inv = detail::invmod_prime_power(M[rank][j], p_, p_);
            for (auto& v : M[rank]) v = v * inv % p_;
            for (int i = 0; i < rows; ++i) {
                if (i == rank || M[i][j] == 0) continue;
                long long fct = M[i][j];
                for (int k = 0; k <= colsn; ++k) M[i][k] = ((M[i][k] - fct * M[rank][k]) % p_ + p_) % p_;
            }
            pivot_col[j] = rank;
            ++rank;
        }
        std::vector<long long> sol(colsn, 0);
        for (int j = 0; j < colsn; ++j)
            if (pivot_col[j] >= 0) sol[j] = M[pivot_col[j]][colsn] % p_;
        for (int i = rank; i < rows; ++i)
            if (M[i][colsn] % p_ != 0) throw compute_error("residue down-conversion: not in subfield");
        return small_.encode(sol);
    }

    static const ResidueEmbedding& get(long long p, int fs, int fd) {
        static std::map<std::tuple<long long, int, int>, ResidueEmbedding> cache;
        static std::mutex mtx;
        std::lock_guard<std::mutex> lock(mtx);
        auto key = std::make_tuple(p, fs, fd);
        auto it = cache.find(key);
        if (it == cache.end()) it = cache.emplace(key, ResidueEmbedding(p, fs, fd)).first;
        return it->second;
    }

private:
    long long p_;
    int fs_, fd_;
    FF big_, small_;
    long long root_;
    std::vector<std::vector<long long>> cols_;
};

// ---------------------------------------------------------------------------
inline std::string PadicScalar::to_string() const {
    if (zero_) {
        if (exactly_zero()) return "0";
        return "O(pi^" + std::to_string(vpi_) + ")";
    }
    std::string s = "p^{";
    Rat v = ord();
    s += padicuhp::to_string(v);
    s += "} * (";
    bool first = true;
    auto term = [&](long long c, const std::string& sym) {
        if (c == 0) return;
        if (!first) s += " + ";
        first = false;
        s += std::to_string(c);
        if (!sym.empty()) s += "*" + sym;
    };
    for (int i = 0; i < F_.f; ++i) term(a_[i], i == 0 ? "" : (i == 1 ? "g" : "g^" + std::to_string(i)));
    for (size_t i = 0; i < b_.size(); ++i)
        term(b_[i], i == 0 ? "pi" : "g^" + std::to_string(i) + "*pi");
    if (first) s += "0";
    s += ") mod p^" + std::to_string(prec_);
    return s;
}

} // namespace padicuhp
