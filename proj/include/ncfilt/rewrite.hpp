#pragma once

// Orientation of relations into a terminating rewrite system, normal-form
// computation (leftmost position, lowest rule index), diamond-lemma overlap
// checking up to a weight bound, and counting of irreducible words.

#include <cstdlib>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ncfilt/poly.hpp"

namespace ncfilt {

struct RewriteRule {
    Word lhs;
    Poly rhs; // every monomial strictly below lhs in the monomial order
};

struct OverlapWitness {
    std::size_t rule_i = 0;
    std::size_t rule_j = 0;
    Word word;       // the ambiguity word
    Poly difference; // nonzero difference of the two normal forms

    OverlapWitness(std::size_t i, std::size_t j, Word w, Poly d)
        : rule_i(i), rule_j(j), word(std::move(w)), difference(std::move(d)) {}
};

enum class ConfluenceState { Unchecked, Confluent, Nonconfluent };

struct ConfluenceReport {
    ConfluenceState state = ConfluenceState::Unchecked;
    unsigned bound = 0;
    std::size_t overlaps_checked = 0;
    std::optional<OverlapWitness> witness;
};

class RewriteSystem {
public:
    RewriteSystem(AlphabetPtr alpha, ScalarDomain dom, std::vector<RewriteRule> rules)
        : alpha_(std::move(alpha)), dom_(dom), rules_(std::move(rules)) {}

    const AlphabetPtr& alphabet() const { return alpha_; }
    const ScalarDomain& domain() const { return dom_; }
    const std::vector<RewriteRule>& rules() const { return rules_; }
    const ConfluenceReport& status() const { return status_; }

    bool confluent_to(unsigned weight) const {
        return status_.state == ConfluenceState::Confluent && status_.bound >= weight;
    }

    void set_status(ConfluenceReport r) { status_ = std::move(r); }

private:
    AlphabetPtr alpha_;
    ScalarDomain dom_;
    std::vector<RewriteRule> rules_;
    ConfluenceReport status_;
};

// Orient each relation about its leading monomial, normalized monic.
// Relations must have pairwise distinct leading words.
inline RewriteSystem orient(const std::vector<Poly>& relations, AlphabetPtr alpha,
                            ScalarDomain dom) {
    std::vector<RewriteRule> rules;
    for (std::size_t k = 0; k < relations.size(); ++k) {
        const Poly& r = relations[k];
        if (r.is_zero())
            throw NotOrientable("relation " + std::to_string(k) + " is zero");
        const Word lhs = r.leading_word();
        if (lhs.empty())
            throw NotOrientable("relation " + std::to_string(k) +
                                " forces a constant to zero");
        const Scalar lc = r.leading_coeff();
        // r = lc*lhs + rest  =>  lhs -> -rest/lc
        Poly rhs(alpha, dom);
        const Scalar inv = lc.inverse();
        for (const auto& [w, c] : r.terms()) {
            if (w == lhs) continue;
            rhs.add_term(w, -(inv * c));
        }
        if (!rhs.coeff(lhs).is_zero())
            throw NotOrientable("remainder of relation " + std::to_string(k) +
                                " contains its leading word");
        for (const auto& rule : rules)
            if (rule.lhs == lhs)
                throw DuplicateLhs("two relations orient onto " + alpha->word_str(lhs));
        rules.push_back(RewriteRule{lhs, std::move(rhs)});
    }
    return RewriteSystem(std::move(alpha), dom, std::move(rules));
}

// Default cap on memoized normal forms; override with NCFILT_MEMO_CAP.
inline std::size_t default_memo_cap() {
    if (const char* env = std::getenv("NCFILT_MEMO_CAP")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return std::size_t(1) << 20;
}

// Normal-form engine. Pure from the outside; the memo cache is internally
// synchronized so concurrent readers are safe.
class Rewriter {
public:
    explicit Rewriter(std::shared_ptr<const RewriteSystem> rs,
                      std::size_t memo_cap = default_memo_cap())
        : rs_(std::move(rs)), cap_(memo_cap) {}

    const RewriteSystem& system() const { return *rs_; }

    // Leftmost match position; among rules matching there, lowest index.
    std::optional<std::pair<std::size_t, std::size_t>> find_redex(const Word& w) const {
        const auto& rules = rs_->rules();
        for (std::size_t pos = 0; pos < w.size(); ++pos) {
            for (std::size_t ri = 0; ri < rules.size(); ++ri) {
                const Word& l = rules[ri].lhs;
                if (l.size() > w.size() - pos) continue;
                if (std::equal(l.begin(), l.end(), w.begin() + pos))
                    return std::make_pair(pos, ri);
            }
        }
        return std::nullopt;
    }

    Poly normal_form_word(const Word& w) const {
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = memo_.find(w);
            if (it != memo_.end()) return it->second;
        }
        Poly result(rs_->alphabet(), rs_->domain());
        auto redex = find_redex(w);
        if (!redex) {
            result.add_term(w, Scalar::one(rs_->domain()));
        } else {
            const auto [pos, ri] = *redex;
            const RewriteRule& rule = rs_->rules()[ri];
            const Word prefix(w.begin(), w.begin() + pos);
            const Word suffix(w.begin() + pos + rule.lhs.size(), w.end());
            for (const auto& [t, c] : rule.rhs.terms()) {
                Word nw = word_concat(prefix, word_concat(t, suffix));
                Poly nf = normal_form_word(nw);
                for (const auto& [u, d] : nf.terms()) result.add_term(u, c * d);
            }
        }
        {
            std::lock_guard<std::mutex> lock(mu_);
            if (memo_.size() < cap_) memo_.emplace(w, result);
        }
        return result;
    }

    Poly normal_form(const Poly& p) const {
        Poly r(rs_->alphabet(), rs_->domain());
        for (const auto& [w, c] : p.terms()) {
            Poly nf = normal_form_word(w);
            for (const auto& [u, d] : nf.terms()) r.add_term(u, c * d);
        }
        return r;
    }

    bool is_normal(const Word& w) const { return !find_redex(w).has_value(); }

private:
    std::shared_ptr<const RewriteSystem> rs_;
    std::size_t cap_;
    mutable std::mutex mu_;
    mutable std::unordered_map<Word, Poly, WordHash> memo_;
};

namespace detail {

// Exhaustive reduction that also works on force-constructed systems whose
// rules are not order-compatible: each step rewrites the maximal reducible
// monomial (leftmost position, lowest rule index there). If that monomial
// recurs, the chain witnesses P -> P + q, i.e. q is congruent to zero; the
// nonzero q is returned as the discrepancy instead of a normal form.
struct TrackedReduction {
    bool cycled = false;
    Poly value; // normal form, or the cycle discrepancy
    TrackedReduction(bool c, Poly v) : cycled(c), value(std::move(v)) {}
};

inline TrackedReduction reduce_tracking_cycles(const RewriteSystem& rs, Poly p,
                                               std::size_t max_steps = 1u << 22) {
    const auto& rules = rs.rules();
    auto find_redex_in = [&](const Word& w) -> std::optional<std::pair<std::size_t, std::size_t>> {
        for (std::size_t pos = 0; pos < w.size(); ++pos)
            for (std::size_t ri = 0; ri < rules.size(); ++ri) {
                const Word& l = rules[ri].lhs;
                if (l.size() > w.size() - pos) continue;
                if (std::equal(l.begin(), l.end(), w.begin() + pos))
                    return std::make_pair(pos, ri);
            }
        return std::nullopt;
    };
    std::unordered_map<Word, Poly, WordHash> snapshot;
    for (std::size_t step = 0; step < max_steps; ++step) {
        // maximal reducible monomial
        const Word* target = nullptr;
        std::pair<std::size_t, std::size_t> redex;
        for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
            if (auto r = find_redex_in(it->first)) {
                target = &it->first;
                redex = *r;
                break;
            }
        }
        if (!target) return TrackedReduction(false, std::move(p));
        auto seen = snapshot.find(*target);
        if (seen != snapshot.end()) return TrackedReduction(true, p - seen->second);
        const Word w = *target;
        snapshot.emplace(w, p);
        const Scalar c = p.coeff(w);
        const RewriteRule& rule = rules[redex.second];
        const Word prefix(w.begin(), w.begin() + redex.first);
        const Word suffix(w.begin() + redex.first + rule.lhs.size(), w.end());
        p.add_term(w, -c);
        for (const auto& [t, ct] : rule.rhs.terms())
            p.add_term(word_concat(prefix, word_concat(t, suffix)), c * ct);
    }
    throw Error("NonTerminating", "reduction step budget exceeded");
}

} // namespace detail

// Diamond-lemma check: every overlap ambiguity (suffix-prefix and inclusion)
// whose ambiguity word has weight <= bound must resolve. Deterministic
// enumeration order makes the first witness reproducible.
inline ConfluenceReport check_confluence(const RewriteSystem& rs, unsigned bound) {
    const auto& rules = rs.rules();
    const Alphabet& alpha = *rs.alphabet();
    ConfluenceReport report;
    report.bound = bound;

    auto reduce_once_at = [&](const Word& w, std::size_t pos, std::size_t ri) {
        const RewriteRule& rule = rules[ri];
        const Word prefix(w.begin(), w.begin() + pos);
        const Word suffix(w.begin() + pos + rule.lhs.size(), w.end());
        Poly out(rs.alphabet(), rs.domain());
        for (const auto& [t, c] : rule.rhs.terms())
            out.add_term(word_concat(prefix, word_concat(t, suffix)), c);
        return out;
    };

    auto check = [&](std::size_t i, std::size_t j, const Word& w, std::size_t pos_i,
                     std::size_t pos_j) -> bool {
        ++report.overlaps_checked;
        auto a = detail::reduce_tracking_cycles(rs, reduce_once_at(w, pos_i, i));
        if (a.cycled) {
            report.state = ConfluenceState::Nonconfluent;
            report.witness.emplace(i, j, w, std::move(a.value));
            return false;
        }
        auto b = detail::reduce_tracking_cycles(rs, reduce_once_at(w, pos_j, j));
        if (b.cycled) {
            report.state = ConfluenceState::Nonconfluent;
            report.witness.emplace(i, j, w, std::move(b.value));
            return false;
        }
        Poly diff = a.value - b.value;
        if (diff.is_zero()) return true;
        report.state = ConfluenceState::Nonconfluent;
        report.witness.emplace(i, j, w, std::move(diff));
        return false;
    };

    for (std::size_t i = 0; i < rules.size(); ++i) {
        for (std::size_t j = 0; j < rules.size(); ++j) {
            const Word& li = rules[i].lhs;
            const Word& lj = rules[j].lhs;
            // suffix of li = prefix of lj, proper on both sides:
            // w = li[0..) ++ lj[k..) with overlap length k
            for (std::size_t k = 1; k < li.size() && k < lj.size(); ++k) {
                if (!std::equal(lj.begin(), lj.begin() + k, li.end() - k)) continue;
                Word w(li.begin(), li.end());
                w.insert(w.end(), lj.begin() + k, lj.end());
                if (alpha.word_weight(w) > bound) continue;
                if (!check(i, j, w, 0, li.size() - k)) return report;
            }
            // inclusion: lj a proper subword of li
            if (i != j && lj.size() < li.size()) {
                for (std::size_t pos = 0; pos + lj.size() <= li.size(); ++pos) {
                    if (!std::equal(lj.begin(), lj.end(), li.begin() + pos)) continue;
                    if (alpha.word_weight(li) > bound) continue;
                    if (!check(i, j, li, 0, pos)) return report;
                }
            }
        }
    }
    report.state = ConfluenceState::Confluent;
    return report;
}

namespace detail {

// Longest run of weight-zero generators an irreducible word can contain.
// Guards local-finiteness: if irreducible weight-zero words can grow without
// bound, the filtration pieces are infinite-dimensional.
inline std::size_t max_weight_zero_run(const Rewriter& rw, std::size_t guard = 512) {
    const Alphabet& alpha = *rw.system().alphabet();
    std::vector<GenIndex> zero_gens;
    for (GenIndex g = 0; g < alpha.size(); ++g)
        if (alpha.gen(g).weight == 0) zero_gens.push_back(g);
    if (zero_gens.empty()) return 0;
    std::size_t best = 0;
    Word w;
    // DFS over irreducible words in the weight-zero letters only
    std::vector<std::size_t> next{0};
    while (!next.empty()) {
        std::size_t& cursor = next.back();
        if (cursor >= zero_gens.size()) {
            next.pop_back();
            if (!w.empty()) w.pop_back();
            continue;
        }
        GenIndex g = zero_gens[cursor++];
        w.push_back(g);
        bool reducible = false;
        for (const auto& rule : rw.system().rules()) {
            if (rule.lhs.size() > w.size()) continue;
            if (std::equal(rule.lhs.begin(), rule.lhs.end(), w.end() - rule.lhs.size())) {
                reducible = true;
                break;
            }
        }
        if (reducible) {
            w.pop_back();
            continue;
        }
        best = std::max(best, w.size());
        if (w.size() > guard)
            throw LocalFinitenessViolation(
                "irreducible weight-0 words exceed length " + std::to_string(guard));
        next.push_back(0);
    }
    return best;
}

} // namespace detail

// Count irreducible words of weight <= n (the normal-word basis of F_n once
// confluence is certified to weight >= 2n).
inline std::size_t dim_upto(const Rewriter& rw, unsigned n) {
    if (!rw.system().confluent_to(2 * n))
        throw ConfluenceNotEstablished("dim_upto(" + std::to_string(n) +
                                       ") requires confluence to " + std::to_string(2 * n));
    const Alphabet& alpha = *rw.system().alphabet();
    const std::size_t zrun = detail::max_weight_zero_run(rw);
    const std::size_t max_len = static_cast<std::size_t>(n) + (n + 1) * zrun;

    std::size_t count = 0;
    Word w;
    std::vector<GenIndex> stack_cursor{0};
    unsigned weight = 0;
    ++count; // empty word
    while (!stack_cursor.empty()) {
        GenIndex& cursor = stack_cursor.back();
        if (cursor >= alpha.size()) {
            stack_cursor.pop_back();
            if (!w.empty()) {
                weight -= alpha.gen(w.back()).weight;
                w.pop_back();
            }
            continue;
        }
        GenIndex g = cursor++;
        const unsigned gw = alpha.gen(g).weight;
        if (weight + gw > n || w.size() + 1 > max_len) continue;
        w.push_back(g);
        weight += gw;
        // prefix was irreducible, so only suffix-anchored matches are new
        bool reducible = false;
        for (const auto& rule : rw.system().rules()) {
            if (rule.lhs.size() > w.size()) continue;
            if (std::equal(rule.lhs.begin(), rule.lhs.end(), w.end() - rule.lhs.size())) {
                reducible = true;
                break;
            }
        }
        if (reducible) {
            weight -= gw;
            w.pop_back();
            continue;
        }
        ++count;
        stack_cursor.push_back(0);
    }
    return count;
}

// All irreducible words of weight <= n, in increasing monomial order.
inline std::vector<Word> normal_words_upto(const Rewriter& rw, unsigned n) {
    if (!rw.system().confluent_to(2 * n))
        throw ConfluenceNotEstablished("basis at weight " + std::to_string(n) +
                                       " requires confluence to " + std::to_string(2 * n));
    const Alphabet& alpha = *rw.system().alphabet();
    const std::size_t zrun = detail::max_weight_zero_run(rw);
    const std::size_t max_len = static_cast<std::size_t>(n) + (n + 1) * zrun;
    std::vector<Word> out;
    Word w;
    std::vector<GenIndex> stack_cursor{0};
    unsigned weight = 0;
    out.push_back(w);
    while (!stack_cursor.empty()) {
        GenIndex& cursor = stack_cursor.back();
        if (cursor >= alpha.size()) {
            stack_cursor.pop_back();
            if (!w.empty()) {
                weight -= alpha.gen(w.back()).weight;
                w.pop_back();
            }
            continue;
        }
        GenIndex g = cursor++;
        const unsigned gw = alpha.gen(g).weight;
        if (weight + gw > n || w.size() + 1 > max_len) continue;
        w.push_back(g);
        weight += gw;
        bool reducible = false;
        for (const auto& rule : rw.system().rules()) {
            if (rule.lhs.size() > w.size()) continue;
            if (std::equal(rule.lhs.begin(), rule.lhs.end(), w.end() - rule.lhs.size())) {
                reducible = true;
                break;
            }
        }
        if (reducible) {
            weight -= gw;
            w.pop_back();
            continue;
        }
        out.push_back(w);
        stack_cursor.push_back(0);
    }
    std::sort(out.begin(), out.end(),
              [&](const Word& a, const Word& b) { return alpha.word_less(a, b); });
    return out;
}

} // namespace ncfilt
