#pragma once

// Polynomials in the free algebra on an Alphabet: a finite map Word -> Scalar
// over one scalar domain, kept sorted by the monomial order with no stored
// zeros. Leading term = maximal word.

#include <map>
#include <vector>

#include "ncfilt/scalar.hpp"
#include "ncfilt/word.hpp"

namespace ncfilt {

class Poly {
public:
    struct WordLess {
        const Alphabet* alpha = nullptr;
        bool operator()(const Word& a, const Word& b) const {
            return alpha->word_less(a, b);
        }
    };
    using TermMap = std::map<Word, Scalar, WordLess>;

    Poly(AlphabetPtr alpha, ScalarDomain dom)
        : alpha_(std::move(alpha)), dom_(dom), terms_(WordLess{alpha_.get()}) {}

    static Poly zero(AlphabetPtr alpha, ScalarDomain dom) {
        return Poly(std::move(alpha), dom);
    }
    static Poly monomial(AlphabetPtr alpha, const Word& w, Scalar c) {
        Poly p(std::move(alpha), c.domain());
        p.add_term(w, std::move(c));
        return p;
    }
    static Poly constant(AlphabetPtr alpha, Scalar c) {
        return monomial(std::move(alpha), Word{}, std::move(c));
    }
    static Poly generator(AlphabetPtr alpha, GenIndex g, ScalarDomain dom) {
        return monomial(std::move(alpha), Word{g}, Scalar::one(dom));
    }

    const AlphabetPtr& alphabet() const { return alpha_; }
    const ScalarDomain& domain() const { return dom_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    // Maximal word (leading monomial); polynomial must be nonzero.
    const Word& leading_word() const {
        if (terms_.empty()) throw DomainMismatch("leading term of zero polynomial");
        return terms_.rbegin()->first;
    }
    const Scalar& leading_coeff() const {
        if (terms_.empty()) throw DomainMismatch("leading term of zero polynomial");
        return terms_.rbegin()->second;
    }

    Scalar coeff(const Word& w) const {
        auto it = terms_.find(w);
        return it == terms_.end() ? Scalar::zero(dom_) : it->second;
    }

    // Max weight over monomials; 0 for the zero polynomial.
    unsigned weight() const {
        unsigned m = 0;
        for (const auto& [w, c] : terms_) m = std::max(m, alpha_->word_weight(w));
        return m;
    }

    void add_term(const Word& w, const Scalar& c) {
        if (c.is_zero()) return;
        if (!(c.domain() == dom_))
            throw DomainMismatch("coefficient in " + c.domain().str() +
                                 " added to polynomial over " + dom_.str());
        auto [it, inserted] = terms_.emplace(w, c);
        if (!inserted) {
            it->second = it->second + c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        a.check_compat(b);
        Poly r = a;
        for (const auto& [w, c] : b.terms_) r.add_term(w, c);
        return r;
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        a.check_compat(b);
        Poly r = a;
        for (const auto& [w, c] : b.terms_) r.add_term(w, -c);
        return r;
    }
    Poly operator-() const {
        Poly r(alpha_, dom_);
        for (const auto& [w, c] : terms_) r.terms_.emplace(w, -c);
        return r;
    }
    friend Poly operator*(const Scalar& c, const Poly& p) {
        Poly r(p.alpha_, p.dom_);
        if (c.is_zero()) return r;
        for (const auto& [w, x] : p.terms_) r.add_term(w, c * x);
        return r;
    }

    bool operator==(const Poly& o) const {
        if (!(dom_ == o.dom_) || !(*alpha_ == *o.alpha_)) return false;
        if (terms_.size() != o.terms_.size()) return false;
        auto it = o.terms_.begin();
        for (const auto& [w, c] : terms_) {
            if (w != it->first || !(c == it->second)) return false;
            ++it;
        }
        return true;
    }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        bool first = true;
        // print leading term first
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            std::string cs = it->second.str();
            bool negated = false;
            if (!first && cs.size() && cs[0] == '-' && cs.find(" - ") == std::string::npos &&
                cs.find(" + ") == std::string::npos) {
                negated = true;
                cs = cs.substr(1);
            }
            if (!first) s += negated ? " - " : " + ";
            const bool unit = (cs == "1");
            const bool needs_parens = cs.find(' ') != std::string::npos;
            if (it->first.empty()) {
                s += needs_parens ? "(" + cs + ")" : cs;
            } else {
                if (!unit) {
                    s += needs_parens ? "(" + cs + ")" : cs;
                    s += "*";
                }
                s += alpha_->word_str(it->first);
            }
            first = false;
        }
        return s;
    }

private:
    void check_compat(const Poly& o) const {
        if (!(*alpha_ == *o.alpha_))
            throw DomainMismatch("polynomials over different alphabets");
        if (!(dom_ == o.dom_))
            throw DomainMismatch("polynomials over " + dom_.str() + " and " +
                                 o.dom_.str());
    }

    AlphabetPtr alpha_;
    ScalarDomain dom_;
    TermMap terms_;
};

// Free-algebra product: concatenation of words, bilinear extension.
inline Poly free_mul(const Poly& a, const Poly& b) {
    if (!(*a.alphabet() == *b.alphabet()))
        throw DomainMismatch("free_mul over different alphabets");
    if (!(a.domain() == b.domain()))
        throw DomainMismatch("free_mul over " + a.domain().str() + " and " +
                             b.domain().str());
    Poly r(a.alphabet(), a.domain());
    for (const auto& [u, cu] : a.terms())
        for (const auto& [v, cv] : b.terms()) r.add_term(word_concat(u, v), cu * cv);
    return r;
}

} // namespace ncfilt
