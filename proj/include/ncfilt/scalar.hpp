#pragma once

// Exact coefficient arithmetic: rationals, cyclotomic extensions Q(zeta_n) in
// the power basis mod the n-th cyclotomic polynomial, and prime fields F_p.
// Plus extraction of the coefficient subring D ("order" data) and reduction
// mod p. Mixed-domain arithmetic is always an error, never a coercion.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "ncfilt/errors.hpp"

namespace ncfilt {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

// ---------------------------------------------------------------------------
// small number-theory helpers
// ---------------------------------------------------------------------------

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

inline unsigned euler_phi(unsigned n) {
    unsigned result = n, m = n;
    for (unsigned p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            result -= result / p;
            while (m % p == 0) m /= p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

inline std::vector<unsigned> prime_divisors(unsigned n) {
    std::vector<unsigned> ps;
    for (unsigned p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

// ---------------------------------------------------------------------------
// cyclotomic polynomials Phi_n over Z, cached
// ---------------------------------------------------------------------------

namespace detail {

// Exact division of integer polynomials, used only where divisibility holds.
inline std::vector<cpp_int> zpoly_divide_exact(std::vector<cpp_int> num,
                                               const std::vector<cpp_int>& den) {
    const std::size_t dn = num.size() - 1, dd = den.size() - 1;
    std::vector<cpp_int> q(dn - dd + 1);
    for (std::size_t i = dn + 1; i-- > dd;) {
        cpp_int c = num[i] / den[dd];
        q[i - dd] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
    }
    return q;
}

// Coefficients of Phi_n, constant term first, monic of degree phi(n).
inline const std::vector<cpp_int>& cyclotomic_polynomial(unsigned n) {
    static std::map<unsigned, std::vector<cpp_int>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d, computed bottom-up.
    for (unsigned d = 1; d <= n; ++d) {
        if (n % d != 0 || cache.count(d)) continue;
        std::vector<cpp_int> num(d + 1);
        num[0] = -1;
        num[d] = 1;
        for (unsigned e = 1; e < d; ++e)
            if (d % e == 0) num = zpoly_divide_exact(std::move(num), cache.at(e));
        cache.emplace(d, std::move(num));
    }
    return cache.at(n);
}

// Reduce a rational polynomial (coefficients low-to-high) modulo Phi_n,
// returning exactly phi(n) coefficients.
inline std::vector<cpp_rational> reduce_mod_cyclotomic(std::vector<cpp_rational> c,
                                                       unsigned n) {
    const auto& phi = cyclotomic_polynomial(n);
    const std::size_t deg = phi.size() - 1;
    if (c.size() < deg) c.resize(deg);
    for (std::size_t i = c.size(); i-- > deg;) {
        if (c[i] == 0) continue;
        cpp_rational lead = c[i];
        c[i] = 0;
        // x^deg = -sum_{j<deg} phi[j] x^j  (Phi_n is monic)
        for (std::size_t j = 0; j < deg; ++j)
            c[i - deg + j] -= lead * cpp_rational(phi[j]);
    }
    c.resize(deg);
    return c;
}

// Rational polynomial division: returns (quotient, remainder).
inline std::pair<std::vector<cpp_rational>, std::vector<cpp_rational>>
qpoly_divmod(std::vector<cpp_rational> num, const std::vector<cpp_rational>& den) {
    auto degree = [](const std::vector<cpp_rational>& p) -> int {
        for (std::size_t i = p.size(); i-- > 0;)
            if (p[i] != 0) return static_cast<int>(i);
        return -1;
    };
    const int dd = degree(den);
    std::vector<cpp_rational> q;
    int dn = degree(num);
    if (dn >= dd) q.resize(dn - dd + 1);
    while ((dn = degree(num)) >= dd) {
        cpp_rational c = num[dn] / den[dd];
        q[dn - dd] = c;
        for (int j = 0; j <= dd; ++j) num[dn - dd + j] -= c * den[j];
    }
    return {std::move(q), std::move(num)};
}

} // namespace detail

// ---------------------------------------------------------------------------
// Scalar
// ---------------------------------------------------------------------------

enum class DomainKind { Rational, Cyclotomic, PrimeField };

struct ScalarDomain {
    DomainKind kind = DomainKind::Rational;
    unsigned cyclotomic_order = 0; // for Cyclotomic
    std::uint64_t prime = 0;       // for PrimeField

    static ScalarDomain rational() { return {}; }
    static ScalarDomain cyclotomic(unsigned n) {
        return {DomainKind::Cyclotomic, n, 0};
    }
    static ScalarDomain prime_field(std::uint64_t p) {
        return {DomainKind::PrimeField, 0, p};
    }

    bool operator==(const ScalarDomain&) const = default;

    std::string str() const {
        switch (kind) {
        case DomainKind::Rational: return "Q";
        case DomainKind::Cyclotomic:
            return "Q(zeta(" + std::to_string(cyclotomic_order) + "))";
        case DomainKind::PrimeField: return "F(" + std::to_string(prime) + ")";
        }
        return "?";
    }
};

class Scalar {
public:
    struct Cyc {
        unsigned n;
        std::vector<cpp_rational> c; // size phi(n), power basis of zeta_n
        bool operator==(const Cyc&) const = default;
    };
    struct Fp {
        std::uint64_t p;
        std::uint64_t r; // residue in [0, p)
        bool operator==(const Fp&) const = default;
    };

    Scalar() : v_(cpp_rational(0)) {}

    static Scalar rational(cpp_rational v) { return Scalar(std::move(v)); }
    static Scalar integer(long long v) { return Scalar(cpp_rational(v)); }
    static Scalar integer(const cpp_int& v) { return Scalar(cpp_rational(v)); }

    static Scalar cyclotomic(unsigned n, std::vector<cpp_rational> coeffs) {
        if (n < 3) throw DomainMismatch("cyclotomic domain requires n >= 3");
        Cyc cy{n, detail::reduce_mod_cyclotomic(std::move(coeffs), n)};
        return Scalar(std::move(cy));
    }

    static Scalar fp(std::uint64_t p, const cpp_int& v) {
        cpp_int m = v % p;
        if (m < 0) m += p;
        return Scalar(Fp{p, static_cast<std::uint64_t>(m)});
    }

    static Scalar zero(const ScalarDomain& d) {
        switch (d.kind) {
        case DomainKind::Rational: return integer(0);
        case DomainKind::Cyclotomic:
            return Scalar(Cyc{d.cyclotomic_order,
                              std::vector<cpp_rational>(euler_phi(d.cyclotomic_order))});
        case DomainKind::PrimeField: return Scalar(Fp{d.prime, 0});
        }
        return integer(0);
    }
    static Scalar one(const ScalarDomain& d) {
        Scalar s = zero(d);
        switch (d.kind) {
        case DomainKind::Rational: return integer(1);
        case DomainKind::Cyclotomic: std::get<Cyc>(s.v_).c[0] = 1; return s;
        case DomainKind::PrimeField: std::get<Fp>(s.v_).r = 1 % d.prime; return s;
        }
        return s;
    }

    ScalarDomain domain() const {
        if (std::holds_alternative<cpp_rational>(v_)) return ScalarDomain::rational();
        if (const Cyc* c = std::get_if<Cyc>(&v_))
            return ScalarDomain::cyclotomic(c->n);
        return ScalarDomain::prime_field(std::get<Fp>(v_).p);
    }

    bool is_zero() const {
        if (const cpp_rational* r = std::get_if<cpp_rational>(&v_)) return *r == 0;
        if (const Cyc* c = std::get_if<Cyc>(&v_)) {
            for (const auto& x : c->c)
                if (x != 0) return false;
            return true;
        }
        return std::get<Fp>(v_).r == 0;
    }

    bool is_one() const {
        if (const cpp_rational* r = std::get_if<cpp_rational>(&v_)) return *r == 1;
        if (const Cyc* c = std::get_if<Cyc>(&v_)) {
            if (c->c[0] != 1) return false;
            for (std::size_t i = 1; i < c->c.size(); ++i)
                if (c->c[i] != 0) return false;
            return true;
        }
        const Fp& f = std::get<Fp>(v_);
        return f.r == 1 % f.p;
    }

    // True when the value lies in the image of Z (integer rational, constant
    // integer cyclotomic, or any prime-field element).
    bool is_integer() const {
        if (const cpp_rational* r = std::get_if<cpp_rational>(&v_))
            return denominator(*r) == 1;
        if (const Cyc* c = std::get_if<Cyc>(&v_)) {
            if (denominator(c->c[0]) != 1) return false;
            for (std::size_t i = 1; i < c->c.size(); ++i)
                if (c->c[i] != 0) return false;
            return true;
        }
        return true;
    }

    // True when the value lies in Q (inside a cyclotomic domain or not).
    bool is_rational_value() const {
        if (std::holds_alternative<cpp_rational>(v_)) return true;
        if (const Cyc* c = std::get_if<Cyc>(&v_)) {
            for (std::size_t i = 1; i < c->c.size(); ++i)
                if (c->c[i] != 0) return false;
            return true;
        }
        return false;
    }

    cpp_rational rational_value() const {
        if (const cpp_rational* r = std::get_if<cpp_rational>(&v_)) return *r;
        if (const Cyc* c = std::get_if<Cyc>(&v_)) {
            if (!is_rational_value())
                throw DomainMismatch("cyclotomic value is not rational");
            return c->c[0];
        }
        throw DomainMismatch("prime-field value has no rational lift");
    }

    const Cyc& cyc() const { return std::get<Cyc>(v_); }
    const Fp& fp_value() const { return std::get<Fp>(v_); }

    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        return a.binop(b, '+');
    }
    friend Scalar operator-(const Scalar& a, const Scalar& b) {
        return a.binop(b, '-');
    }
    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        return a.binop(b, '*');
    }
    friend Scalar operator/(const Scalar& a, const Scalar& b) {
        return a * b.inverse();
    }
    Scalar operator-() const {
        Scalar r = *this;
        if (cpp_rational* q = std::get_if<cpp_rational>(&r.v_)) { *q = -*q; return r; }
        if (Cyc* c = std::get_if<Cyc>(&r.v_)) {
            for (auto& x : c->c) x = -x;
            return r;
        }
        Fp& f = std::get<Fp>(r.v_);
        if (f.r != 0) f.r = f.p - f.r;
        return r;
    }

    Scalar inverse() const {
        if (is_zero()) throw DivisionByZero("inverse of zero");
        if (const cpp_rational* r = std::get_if<cpp_rational>(&v_))
            return rational(1 / *r);
        if (const Cyc* c = std::get_if<Cyc>(&v_)) return Scalar(cyc_inverse(*c));
        const Fp& f = std::get<Fp>(v_);
        return Scalar(Fp{f.p, powmod_u64(f.r, f.p - 2, f.p)});
    }

    Scalar pow(long long e) const {
        if (e < 0) return inverse().pow(-e);
        Scalar acc = one(domain());
        Scalar base = *this;
        unsigned long long k = static_cast<unsigned long long>(e);
        while (k) {
            if (k & 1) acc = acc * base;
            base = base * base;
            k >>= 1;
        }
        return acc;
    }

    bool operator==(const Scalar& o) const { return v_ == o.v_; }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    // Total order within a common domain; used only for deterministic output.
    bool less(const Scalar& o) const {
        check_same_domain(o, "compare");
        if (const cpp_rational* r = std::get_if<cpp_rational>(&v_))
            return *r < std::get<cpp_rational>(o.v_);
        if (const Cyc* c = std::get_if<Cyc>(&v_))
            return c->c < std::get<Cyc>(o.v_).c;
        return std::get<Fp>(v_).r < std::get<Fp>(o.v_).r;
    }

    std::string str() const {
        std::ostringstream out;
        if (const cpp_rational* r = std::get_if<cpp_rational>(&v_)) {
            out << *r;
            return out.str();
        }
        if (const Cyc* c = std::get_if<Cyc>(&v_)) {
            bool first = true;
            for (std::size_t i = 0; i < c->c.size(); ++i) {
                const cpp_rational& q = c->c[i];
                if (q == 0) continue;
                cpp_rational a = q;
                if (!first) {
                    out << (a < 0 ? " - " : " + ");
                    if (a < 0) a = -a;
                }
                first = false;
                const bool unit = (a == 1 || a == -1);
                if (i == 0 || !unit) {
                    out << a;
                    if (i > 0) out << "*";
                } else if (a == -1) {
                    out << "-";
                }
                if (i > 0) {
                    out << "zeta(" << c->n << ")";
                    if (i > 1) out << "^" << i;
                }
            }
            if (first) out << "0";
            return out.str();
        }
        out << std::get<Fp>(v_).r;
        return out.str();
    }

    // Embed a value into a larger domain where a canonical embedding exists:
    //   Q -> Q(zeta(n));  zeta(k) coefficients -> Q(zeta(n)) when k | n;
    //   Q or Q(zeta(k)) -> F(p) via reduction (explicit, used by the parser
    //   when a file declares a finite scalar domain).
    Scalar embed_in(const ScalarDomain& target) const;

private:
    explicit Scalar(cpp_rational v) : v_(std::move(v)) {}
    explicit Scalar(Cyc v) : v_(std::move(v)) {}
    explicit Scalar(Fp v) : v_(v) {}

    void check_same_domain(const Scalar& o, const char* op) const {
        if (!(domain() == o.domain()))
            throw DomainMismatch(std::string("scalar ") + op + " between " +
                                 domain().str() + " and " + o.domain().str());
    }

    Scalar binop(const Scalar& o, char op) const {
        check_same_domain(o, "arithmetic");
        if (const cpp_rational* a = std::get_if<cpp_rational>(&v_)) {
            const cpp_rational& b = std::get<cpp_rational>(o.v_);
            switch (op) {
            case '+': return rational(*a + b);
            case '-': return rational(*a - b);
            default: return rational(*a * b);
            }
        }
        if (const Cyc* a = std::get_if<Cyc>(&v_)) {
            const Cyc& b = std::get<Cyc>(o.v_);
            if (op == '*') {
                std::vector<cpp_rational> conv(a->c.size() + b.c.size() - 1);
                for (std::size_t i = 0; i < a->c.size(); ++i) {
                    if (a->c[i] == 0) continue;
                    for (std::size_t j = 0; j < b.c.size(); ++j) {
                        if (b.c[j] == 0) continue;
                        conv[i + j] += a->c[i] * b.c[j];
                    }
                }
                return Scalar(Cyc{a->n, detail::reduce_mod_cyclotomic(std::move(conv), a->n)});
            }
            Cyc r = *a;
            for (std::size_t i = 0; i < r.c.size(); ++i) {
                if (op == '+')
                    r.c[i] += b.c[i];
                else
                    r.c[i] -= b.c[i];
            }
            return Scalar(std::move(r));
        }
        const Fp& a = std::get<Fp>(v_);
        const Fp& b = std::get<Fp>(o.v_);
        switch (op) {
        case '+': return Scalar(Fp{a.p, (a.r + b.r) % a.p});
        case '-': return Scalar(Fp{a.p, (a.r + a.p - b.r) % a.p});
        default: return Scalar(Fp{a.p, mulmod_u64(a.r, b.r, a.p)});
        }
    }

    static Cyc cyc_inverse(const Cyc& a) {
        // extended Euclid in Q[x] against Phi_n
        const auto& phi_z = detail::cyclotomic_polynomial(a.n);
        std::vector<cpp_rational> r0(phi_z.begin(), phi_z.end());
        std::vector<cpp_rational> r1(a.c.begin(), a.c.end());
        std::vector<cpp_rational> s0{cpp_rational(0)}, s1{cpp_rational(1)};
        auto is_zero_poly = [](const std::vector<cpp_rational>& p) {
            for (const auto& x : p)
                if (x != 0) return false;
            return true;
        };
        auto degree = [](const std::vector<cpp_rational>& p) -> int {
            for (std::size_t i = p.size(); i-- > 0;)
                if (p[i] != 0) return static_cast<int>(i);
            return -1;
        };
        while (!is_zero_poly(r1)) {
            auto [q, rem] = detail::qpoly_divmod(r0, r1);
            // s_new = s0 - q * s1
            std::vector<cpp_rational> qs(q.size() + s1.size() - 1);
            for (std::size_t i = 0; i < q.size(); ++i) {
                if (q[i] == 0) continue;
                for (std::size_t j = 0; j < s1.size(); ++j) qs[i + j] += q[i] * s1[j];
            }
            std::vector<cpp_rational> s_new(std::max(s0.size(), qs.size()));
            for (std::size_t i = 0; i < s_new.size(); ++i) {
                if (i < s0.size()) s_new[i] += s0[i];
                if (i < qs.size()) s_new[i] -= qs[i];
            }
            r0 = std::move(r1);
            r1 = std::move(rem);
            s0 = std::move(s1);
            s1 = std::move(s_new);
        }
        // r0 = gcd; Phi_n irreducible over Q so deg(gcd) = 0 for nonzero a.
        int d = degree(r0);
        if (d != 0) throw DivisionByZero("nonunit in cyclotomic field");
        cpp_rational g = r0[0];
        for (auto& x : s0) x /= g;
        return Cyc{a.n, detail::reduce_mod_cyclotomic(std::move(s0), a.n)};
    }

    std::variant<cpp_rational, Cyc, Fp> v_;
};

// ---------------------------------------------------------------------------
// root of unity; reduction mod p
// ---------------------------------------------------------------------------

// zeta_n as an exact scalar. For n <= 2 the value is rational (1 or -1), so
// no field extension is introduced.
inline Scalar mk_root_of_unity(unsigned n) {
    if (n == 0) throw ZeroParameter("root-of-unity order must be positive");
    if (n == 1) return Scalar::integer(1);
    if (n == 2) return Scalar::integer(-1);
    std::vector<cpp_rational> c(euler_phi(n));
    if (c.size() >= 2) {
        c[1] = 1;
        return Scalar::cyclotomic(n, std::move(c));
    }
    // phi(n) = 1 only for n in {1,2}
    throw ZeroParameter("unreachable cyclotomic order");
}

// Smallest residue of multiplicative order exactly n in F_p, if any.
inline std::optional<std::uint64_t> smallest_order_n_residue(unsigned n, std::uint64_t p) {
    if (n == 1) return 1 % p;
    if ((p - 1) % n != 0) return std::nullopt;
    auto qs = prime_divisors(n);
    for (std::uint64_t t = 2; t < p; ++t) {
        if (powmod_u64(t, n, p) != 1) continue;
        bool exact = true;
        for (unsigned q : qs) {
            if (powmod_u64(t, n / q, p) == 1) { exact = false; break; }
        }
        if (exact) return t;
    }
    return std::nullopt;
}

// Reduction D -> F_p. Rationals map to a b^{-1}; a cyclotomic value maps
// coefficientwise under zeta_n |-> the smallest residue of order exactly n.
inline Scalar reduce_mod_p(const Scalar& s, std::uint64_t p) {
    if (!is_prime_u64(p)) throw DomainMismatch("modulus " + std::to_string(p) + " is not prime");
    auto reduce_rat = [&](const cpp_rational& q) -> std::uint64_t {
        cpp_int den = denominator(q) % p;
        if (den == 0)
            throw DenominatorVanishes("denominator of " + Scalar::rational(q).str() +
                                      " vanishes mod " + std::to_string(p));
        cpp_int num = numerator(q) % p;
        if (num < 0) num += p;
        std::uint64_t n64 = static_cast<std::uint64_t>(num);
        std::uint64_t d64 = static_cast<std::uint64_t>(den < 0 ? den + p : den);
        return mulmod_u64(n64, powmod_u64(d64, p - 2, p), p);
    };
    const ScalarDomain d = s.domain();
    if (d.kind == DomainKind::Rational)
        return Scalar::fp(p, cpp_int(reduce_rat(s.rational_value())));
    if (d.kind == DomainKind::Cyclotomic) {
        const auto& cy = s.cyc();
        auto root = smallest_order_n_residue(cy.n, p);
        if (!root)
            throw NoRootOfUnity("F_" + std::to_string(p) + " has no element of order " +
                                std::to_string(cy.n));
        std::uint64_t acc = 0, zp = 1;
        for (std::size_t i = 0; i < cy.c.size(); ++i) {
            if (cy.c[i] != 0) acc = (acc + mulmod_u64(reduce_rat(cy.c[i]), zp, p)) % p;
            zp = mulmod_u64(zp, *root, p);
        }
        return Scalar::fp(p, cpp_int(acc));
    }
    throw DomainMismatch("reduce_mod_p input must be rational or cyclotomic");
}

inline Scalar Scalar::embed_in(const ScalarDomain& target) const {
    const ScalarDomain src = domain();
    if (src == target) return *this;
    if (target.kind == DomainKind::PrimeField) {
        if (src.kind == DomainKind::PrimeField)
            throw DomainMismatch("cannot embed " + src.str() + " in " + target.str());
        return reduce_mod_p(*this, target.prime);
    }
    if (target.kind == DomainKind::Cyclotomic) {
        const unsigned n = target.cyclotomic_order;
        if (src.kind == DomainKind::Rational) {
            std::vector<cpp_rational> c(euler_phi(n));
            c[0] = rational_value();
            return Scalar::cyclotomic(n, std::move(c));
        }
        if (src.kind == DomainKind::Cyclotomic && n % src.cyclotomic_order == 0) {
            const unsigned step = n / src.cyclotomic_order;
            const auto& cy = cyc();
            std::vector<cpp_rational> c(static_cast<std::size_t>(step) * cy.c.size());
            for (std::size_t i = 0; i < cy.c.size(); ++i) c[i * step] = cy.c[i];
            return Scalar::cyclotomic(n, std::move(c));
        }
    }
    if (target.kind == DomainKind::Rational && is_rational_value() &&
        src.kind != DomainKind::PrimeField)
        return Scalar::rational(rational_value());
    throw DomainMismatch("cannot embed " + src.str() + " in " + target.str());
}

// ---------------------------------------------------------------------------
// OrderSpec: the subring D of the coefficient field generated over Z by the
// recorded generators, with a witness expression per input coefficient.
// ---------------------------------------------------------------------------

struct OrderGenerator {
    std::string name;
    Scalar value;
    bool operator==(const OrderGenerator& o) const {
        return name == o.name && value == o.value;
    }
};

// One summand of a witness: int_coeff * zeta^zeta_pow * (1/L)^invl_pow.
struct WitnessTerm {
    cpp_int int_coeff;
    unsigned zeta_pow = 0;
    unsigned invl_pow = 0;
};

struct CoefficientWitness {
    Scalar value;
    std::vector<WitnessTerm> terms;
};

struct OrderSpec {
    std::vector<OrderGenerator> generators;
    cpp_int denominator_lcm = 1; // L; generator "1/L" present iff L > 1
    unsigned cyclotomic_order = 0; // n; generator "zeta(n)" present iff n > 0
    std::vector<CoefficientWitness> witnesses;

    bool same_generators(const OrderSpec& o) const {
        return generators.size() == o.generators.size() &&
               std::equal(generators.begin(), generators.end(), o.generators.begin());
    }

    // Evaluate a witness back to a Scalar in `dom` and compare with its value.
    bool verify(const ScalarDomain& dom) const {
        for (const auto& w : witnesses) {
            Scalar acc = Scalar::zero(dom);
            for (const auto& t : w.terms) {
                Scalar term = Scalar::integer(t.int_coeff).embed_in(dom);
                if (t.zeta_pow > 0) {
                    if (cyclotomic_order == 0) return false;
                    term = term * mk_root_of_unity(cyclotomic_order)
                                      .embed_in(dom)
                                      .pow(t.zeta_pow);
                }
                if (t.invl_pow > 0)
                    term = term * Scalar::rational(cpp_rational(1, denominator_lcm))
                                      .embed_in(dom)
                                      .pow(t.invl_pow);
                acc = acc + term;
            }
            if (!(acc == w.value)) return false;
        }
        return true;
    }
};

// Minimal order data for a finite coefficient set: integers contribute
// nothing, rationals contribute the inverse of the lcm of the denominators,
// genuinely cyclotomic values contribute zeta_n.
inline OrderSpec order_generators(const std::vector<Scalar>& coeffs) {
    OrderSpec spec;
    unsigned n = 0;
    for (const Scalar& s : coeffs) {
        const ScalarDomain d = s.domain();
        if (d.kind == DomainKind::PrimeField)
            throw DomainMismatch("order extraction over a prime field");
        if (d.kind == DomainKind::Cyclotomic) {
            if (n != 0 && n != d.cyclotomic_order)
                throw MixedCyclotomicOrders("coefficients in Q(zeta(" + std::to_string(n) +
                                            ")) and Q(zeta(" +
                                            std::to_string(d.cyclotomic_order) + "))");
            n = d.cyclotomic_order;
        }
    }
    cpp_int L = 1;
    bool needs_zeta = false;
    auto fold_denominator = [&L](const cpp_rational& q) {
        cpp_int d = denominator(q);
        L = L / gcd(L, d) * d;
    };
    for (const Scalar& s : coeffs) {
        if (s.domain().kind == DomainKind::Rational) {
            fold_denominator(s.rational_value());
        } else {
            if (!s.is_rational_value()) needs_zeta = true;
            for (const auto& q : s.cyc().c) fold_denominator(q);
        }
    }
    spec.denominator_lcm = L;
    spec.cyclotomic_order = needs_zeta ? n : 0;
    if (needs_zeta)
        spec.generators.push_back({"zeta(" + std::to_string(n) + ")", mk_root_of_unity(n)});
    if (L > 1)
        spec.generators.push_back(
            {"1/" + cpp_int(L).str(), Scalar::rational(cpp_rational(1, L))});

    for (const Scalar& s : coeffs) {
        CoefficientWitness w;
        w.value = s;
        auto push = [&](const cpp_rational& q, unsigned zpow) {
            if (q == 0) return;
            WitnessTerm t;
            t.zeta_pow = zpow;
            if (denominator(q) == 1) {
                t.int_coeff = numerator(q);
            } else {
                t.int_coeff = numerator(q) * (L / denominator(q));
                t.invl_pow = 1;
            }
            w.terms.push_back(std::move(t));
        };
        if (s.domain().kind == DomainKind::Rational) {
            push(s.rational_value(), 0);
        } else {
            const auto& cy = s.cyc().c;
            for (std::size_t i = 0; i < cy.size(); ++i)
                push(cy[i], static_cast<unsigned>(i));
        }
        spec.witnesses.push_back(std::move(w));
    }
    return spec;
}

// Whether a scalar is expressible as a Z-polynomial in the generators of
// `spec`: every denominator prime must divide L, and a non-rational value
// needs the zeta generator of the right order.
inline bool order_contains(const OrderSpec& spec, const Scalar& s) {
    if (s.domain().kind == DomainKind::PrimeField) return false;
    auto den_ok = [&](const cpp_rational& q) {
        cpp_int d = denominator(q);
        while (d > 1) {
            cpp_int g = gcd(d, spec.denominator_lcm);
            if (g == 1) return false;
            while (d % g == 0) d /= g;
        }
        return true;
    };
    if (s.domain().kind == DomainKind::Rational) return den_ok(s.rational_value());
    if (!s.is_rational_value() &&
        spec.cyclotomic_order != s.domain().cyclotomic_order)
        return false;
    for (const auto& q : s.cyc().c)
        if (!den_ok(q)) return false;
    return true;
}

} // namespace ncfilt
