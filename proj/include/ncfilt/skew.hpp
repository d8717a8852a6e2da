#pragma once

// The skew group algebra A # G: elements are finite maps (normal word, group
// element) -> scalar with (a # g)(b # h) = a g(b) # gh. Also the Reynolds
// averaging operator and invariant bases.

#include "ncfilt/automorphism.hpp"

namespace ncfilt {

class SkewPoly {
public:
    struct Key {
        unsigned group;
        Word word;
        bool operator==(const Key&) const = default;
    };
    struct KeyLess {
        const Alphabet* alpha = nullptr;
        bool operator()(const Key& a, const Key& b) const {
            if (a.group != b.group) return a.group < b.group;
            return alpha->word_less(a.word, b.word);
        }
    };
    using TermMap = std::map<Key, Scalar, KeyLess>;

    SkewPoly(AlphabetPtr alpha, ScalarDomain dom)
        : alpha_(std::move(alpha)), dom_(dom), terms_(KeyLess{alpha_.get()}) {}

    static SkewPoly zero(const AlgebraHandle& a) {
        return SkewPoly(a.alphabet(), a.domain());
    }
    // a # g with a reduced to normal form
    static SkewPoly from_poly(const AlgebraHandle& a, const Poly& p, unsigned g) {
        SkewPoly s(a.alphabet(), a.domain());
        Poly nf = a.normal_form(p);
        for (const auto& [w, c] : nf.terms()) s.add_term(g, w, c);
        return s;
    }
    static SkewPoly monomial(const AlgebraHandle& a, const Word& w, unsigned g,
                             const Scalar& c) {
        return from_poly(a, Poly::monomial(a.alphabet(), w, c), g);
    }

    const TermMap& terms() const { return terms_; }
    const AlphabetPtr& alphabet() const { return alpha_; }
    const ScalarDomain& domain() const { return dom_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    void add_term(unsigned g, const Word& w, const Scalar& c) {
        if (c.is_zero()) return;
        if (!(c.domain() == dom_))
            throw DomainMismatch("skew coefficient in " + c.domain().str());
        auto [it, inserted] = terms_.emplace(Key{g, w}, c);
        if (!inserted) {
            it->second = it->second + c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    // Component of the group element g, as a plain polynomial.
    Poly component(unsigned g) const {
        Poly p(alpha_, dom_);
        for (const auto& [k, c] : terms_)
            if (k.group == g) p.add_term(k.word, c);
        return p;
    }

    unsigned weight() const {
        unsigned m = 0;
        for (const auto& [k, c] : terms_) m = std::max(m, alpha_->word_weight(k.word));
        return m;
    }

    friend SkewPoly operator+(const SkewPoly& a, const SkewPoly& b) {
        a.check_compat(b);
        SkewPoly r = a;
        for (const auto& [k, c] : b.terms_) r.add_term(k.group, k.word, c);
        return r;
    }
    friend SkewPoly operator-(const SkewPoly& a, const SkewPoly& b) {
        a.check_compat(b);
        SkewPoly r = a;
        for (const auto& [k, c] : b.terms_) r.add_term(k.group, k.word, -c);
        return r;
    }
    friend SkewPoly operator*(const Scalar& c, const SkewPoly& p) {
        SkewPoly r(p.alpha_, p.dom_);
        for (const auto& [k, x] : p.terms_) r.add_term(k.group, k.word, c * x);
        return r;
    }

    bool operator==(const SkewPoly& o) const {
        if (!(dom_ == o.dom_) || terms_.size() != o.terms_.size()) return false;
        auto it = o.terms_.begin();
        for (const auto& [k, c] : terms_) {
            if (!(k == it->first) || !(c == it->second)) return false;
            ++it;
        }
        return true;
    }
    bool operator!=(const SkewPoly& o) const { return !(*this == o); }

    std::string str(const FiniteGroup& G) const {
        if (terms_.empty()) return "0";
        std::string s;
        bool first = true;
        for (const auto& [k, c] : terms_) {
            if (!first) s += " + ";
            first = false;
            s += "(" + c.str() + ")*" + alpha_->word_str(k.word) + "#g" +
                 std::to_string(k.group);
        }
        (void)G;
        return s;
    }

private:
    void check_compat(const SkewPoly& o) const {
        if (!(*alpha_ == *o.alpha_) || !(dom_ == o.dom_))
            throw DomainMismatch("skew polynomials from different contexts");
    }

    AlphabetPtr alpha_;
    ScalarDomain dom_;
    TermMap terms_;
};

// (a # g)(b # h) = a g(b) # gh, extended bilinearly; products reduced to
// normal form.
inline SkewPoly skew_mul(const SkewPoly& u, const SkewPoly& v, const FiniteGroup& G) {
    const AlgebraHandle& A = G.algebra();
    if (!(*u.alphabet() == *A.alphabet()) || !(*v.alphabet() == *A.alphabet()) ||
        !(u.domain() == A.domain()) || !(v.domain() == A.domain()))
        throw DomainMismatch("skew_mul arguments do not match the group's algebra");
    SkewPoly out = SkewPoly::zero(A);
    for (const auto& [ku, cu] : u.terms()) {
        for (const auto& [kv, cv] : v.terms()) {
            Poly moved = G.element(ku.group).apply(
                Poly::monomial(A.alphabet(), kv.word, Scalar::one(A.domain())));
            Poly prod = A.normal_form(
                free_mul(Poly::monomial(A.alphabet(), ku.word, Scalar::one(A.domain())),
                         moved));
            const unsigned gh = G.multiply(ku.group, kv.group);
            const Scalar c = cu * cv;
            for (const auto& [w, s] : prod.terms()) out.add_term(gh, w, c * s);
        }
    }
    return out;
}

// |G|^{-1} sum_g g(a), in normal form.
inline Poly reynolds(const FiniteGroup& G, const Poly& a) {
    if (!G.order_invertible())
        throw OrderNotInvertible("|G| = " + std::to_string(G.order()) +
                                 " is not invertible in " + G.algebra().domain().str());
    Poly acc = G.algebra().zero();
    for (unsigned i = 0; i < G.order(); ++i) acc = acc + G.element(i).apply(a);
    return G.order_scalar().inverse() * acc;
}

// Basis of the invariants inside F_n: the image of the Reynolds projector on
// the normal-word basis, echelonized in increasing monomial order.
inline std::vector<Poly> invariant_basis(const FiniteGroup& G, unsigned n) {
    const AlgebraHandle& A = G.algebra();
    std::vector<Word> words = A.basis_upto(n);
    std::map<Word, std::size_t, Poly::WordLess> coord(
        Poly::WordLess{A.alphabet().get()});
    for (std::size_t i = 0; i < words.size(); ++i) coord.emplace(words[i], i);

    linalg::SpanBuilder span(A.domain());
    std::vector<Poly> basis;
    for (const Word& w : words) {
        Poly r = reynolds(G, Poly::monomial(A.alphabet(), w, Scalar::one(A.domain())));
        if (r.is_zero()) continue;
        std::vector<Scalar> v(words.size(), Scalar::zero(A.domain()));
        for (const auto& [u, c] : r.terms()) {
            auto it = coord.find(u);
            if (it == coord.end())
                throw ConfluenceNotEstablished("Reynolds image leaves the basis range");
            v[it->second] = c;
        }
        if (span.insert(std::move(v))) basis.push_back(std::move(r));
    }
    return basis;
}

} // namespace ncfilt
