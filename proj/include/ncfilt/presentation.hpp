#pragma once

// Presentations (alphabet + relations + scalar domain + provenance) and
// AlgebraHandle: a presentation with an oriented, confluence-checked rewrite
// system supplying normal forms and dimension counts.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ncfilt/rewrite.hpp"

namespace ncfilt {

struct Provenance {
    std::string family;
    std::map<std::string, std::string> params; // human-readable, sorted keys
    std::optional<unsigned> gk_dim;            // known GK dimension, when recorded
};

class Presentation {
public:
    Presentation(AlphabetPtr alpha, ScalarDomain dom, std::vector<Poly> relations,
                 std::optional<Provenance> prov = std::nullopt)
        : alpha_(std::move(alpha)), dom_(dom), relations_(std::move(relations)),
          prov_(std::move(prov)) {
        validate();
    }

    const AlphabetPtr& alphabet() const { return alpha_; }
    const ScalarDomain& domain() const { return dom_; }
    const std::vector<Poly>& relations() const { return relations_; }
    const std::optional<Provenance>& provenance() const { return prov_; }

    bool has_odd_generators() const {
        for (const auto& g : alpha_->generators())
            if (g.parity == 1) return true;
        return false;
    }

    // All relation coefficients, in deterministic order.
    std::vector<Scalar> coefficient_set() const {
        std::vector<Scalar> out;
        for (const Poly& r : relations_)
            for (const auto& [w, c] : r.terms()) out.push_back(c);
        return out;
    }

    // Relations normalized monic and sorted: the canonical form used for
    // structural equality (provenance is metadata and not compared).
    std::vector<Poly> canonical_relations() const {
        std::vector<Poly> rs;
        rs.reserve(relations_.size());
        for (const Poly& r : relations_) {
            if (r.is_zero()) continue;
            rs.push_back(r.leading_coeff().inverse() * r);
        }
        std::sort(rs.begin(), rs.end(), [&](const Poly& a, const Poly& b) {
            return poly_before(a, b);
        });
        return rs;
    }

    bool operator==(const Presentation& o) const {
        if (!(*alpha_ == *o.alpha_) || !(dom_ == o.dom_)) return false;
        auto a = canonical_relations(), b = o.canonical_relations();
        if (a.size() != b.size()) return false;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] != b[i]) return false;
        return true;
    }

private:
    void validate() const {
        bool super = false;
        for (const auto& g : alpha_->generators()) super |= (g.parity == 1);
        for (std::size_t i = 0; i < relations_.size(); ++i) {
            const Poly& r = relations_[i];
            if (r.is_zero())
                throw DomainMismatch("relation " + std::to_string(i) + " is zero");
            if (!(r.domain() == dom_) || !(*r.alphabet() == *alpha_))
                throw DomainMismatch("relation " + std::to_string(i) +
                                     " lives in a different presentation context");
            if (super) {
                std::optional<unsigned> par;
                for (const auto& [w, c] : r.terms()) {
                    unsigned p = alpha_->word_parity(w);
                    if (!par) par = p;
                    else if (*par != p)
                        throw DomainMismatch("relation " + std::to_string(i) +
                                             " is not parity-homogeneous");
                }
            }
        }
    }

    bool poly_before(const Poly& a, const Poly& b) const {
        auto ia = a.terms().rbegin(), ib = b.terms().rbegin();
        for (; ia != a.terms().rend() && ib != b.terms().rend(); ++ia, ++ib) {
            if (ia->first != ib->first) return alpha_->word_less(ia->first, ib->first);
            if (!(ia->second == ib->second)) return ia->second.less(ib->second);
        }
        return a.term_count() < b.term_count();
    }

    AlphabetPtr alpha_;
    ScalarDomain dom_;
    std::vector<Poly> relations_;
    std::optional<Provenance> prov_;
};

// A presentation together with its oriented rewrite system and cached
// dimension table. Immutable after construction apart from the append-only
// caches, which are safe under concurrent readers.
class AlgebraHandle {
public:
    // Orients the relations and checks confluence up to `bound`.
    static AlgebraHandle build(Presentation pres, unsigned bound,
                               std::size_t memo_cap = default_memo_cap()) {
        auto rs = std::make_shared<RewriteSystem>(
            orient(pres.relations(), pres.alphabet(), pres.domain()));
        rs->set_status(check_confluence(*rs, bound));
        return AlgebraHandle(std::move(pres), std::move(rs), memo_cap);
    }

    const Presentation& presentation() const { return pres_; }
    const RewriteSystem& system() const { return *rs_; }
    const Rewriter& rewriter() const { return *rw_; }
    const AlphabetPtr& alphabet() const { return pres_.alphabet(); }
    const ScalarDomain& domain() const { return pres_.domain(); }

    bool confluent() const { return rs_->status().state == ConfluenceState::Confluent; }
    unsigned confluence_bound() const { return rs_->status().bound; }
    const ConfluenceReport& confluence() const { return rs_->status(); }

    Poly normal_form(const Poly& p) const { return rw_->normal_form(p); }

    std::size_t dim_upto(unsigned n) const {
        {
            std::lock_guard<std::mutex> lock(dims_->mu);
            auto it = dims_->table.find(n);
            if (it != dims_->table.end()) return it->second;
        }
        std::size_t d = ncfilt::dim_upto(*rw_, n);
        std::lock_guard<std::mutex> lock(dims_->mu);
        dims_->table.emplace(n, d);
        return d;
    }

    std::vector<Word> basis_upto(unsigned n) const { return normal_words_upto(*rw_, n); }

    Poly zero() const { return Poly::zero(pres_.alphabet(), pres_.domain()); }
    Poly constant(const Scalar& c) const { return Poly::constant(pres_.alphabet(), c); }
    Poly gen(GenIndex i) const {
        return Poly::generator(pres_.alphabet(), i, pres_.domain());
    }

private:
    struct DimCache {
        std::mutex mu;
        std::map<unsigned, std::size_t> table;
    };

    AlgebraHandle(Presentation pres, std::shared_ptr<RewriteSystem> rs,
                  std::size_t memo_cap)
        : pres_(std::move(pres)), rs_(std::move(rs)),
          rw_(std::make_shared<Rewriter>(rs_, memo_cap)),
          dims_(std::make_shared<DimCache>()) {}

    Presentation pres_;
    std::shared_ptr<RewriteSystem> rs_;
    std::shared_ptr<Rewriter> rw_;
    std::shared_ptr<DimCache> dims_;
};

} // namespace ncfilt
