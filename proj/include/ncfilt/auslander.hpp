#pragma once

// The element f_G = sum_g 1#g, degree-truncated membership in the two-sided
// ideal (f_G), pertinency certificates, quotient growth series, and the
// Auslander map a#g |-> (b |-> a g(b)) with truncated injectivity checks.

#include <cmath>
#include <functional>

#include "ncfilt/skew.hpp"

namespace ncfilt {

inline SkewPoly f_G(const FiniteGroup& G) {
    SkewPoly f = SkewPoly::zero(G.algebra());
    for (unsigned i = 0; i < G.order(); ++i)
        f.add_term(i, Word{}, Scalar::one(G.algebra().domain()));
    return f;
}

// One sandwich u * f_G * v with monomial multipliers u = wu # e, v = wv # h.
// The left group component is redundant: (wu # g) f_G = (wu # e) f_G for all
// g, so the search space fixes it to the identity.
struct SandwichTerm {
    Word u_word;
    unsigned u_group = 0;
    Word v_word;
    unsigned v_group = 0;
    Scalar coeff;
};

struct MembershipWitness {
    SkewPoly target;
    std::vector<SandwichTerm> terms;
};

// Re-expand a witness through the public skew product, with no reference to
// the solver's internal assembly.
inline bool verify_membership(const MembershipWitness& w, const FiniteGroup& G) {
    const AlgebraHandle& A = G.algebra();
    SkewPoly acc = SkewPoly::zero(A);
    const SkewPoly f = f_G(G);
    for (const auto& t : w.terms) {
        SkewPoly u = SkewPoly::monomial(A, t.u_word, t.u_group, Scalar::one(A.domain()));
        SkewPoly v = SkewPoly::monomial(A, t.v_word, t.v_group, Scalar::one(A.domain()));
        acc = acc + t.coeff * skew_mul(skew_mul(u, f, G), v, G);
    }
    return acc == w.target;
}

namespace detail {

// Skew coordinate table: (group, normal word) -> row index, words of weight
// <= bound. `by_weight_desc` orders rows by word weight descending (used by
// the growth series); otherwise ascending (group, word) order.
struct SkewCoords {
    std::vector<std::pair<unsigned, Word>> rows;
    std::map<std::pair<unsigned, Word>, std::size_t> lookup_free; // filled manually

    static SkewCoords build(const FiniteGroup& G, unsigned bound, bool by_weight_desc) {
        const AlgebraHandle& A = G.algebra();
        std::vector<Word> words = A.basis_upto(bound);
        SkewCoords sc;
        for (unsigned g = 0; g < G.order(); ++g)
            for (const Word& w : words) sc.rows.emplace_back(g, w);
        if (by_weight_desc) {
            const Alphabet& alpha = *A.alphabet();
            std::stable_sort(sc.rows.begin(), sc.rows.end(),
                             [&](const auto& a, const auto& b) {
                                 return alpha.word_weight(a.second) >
                                        alpha.word_weight(b.second);
                             });
        }
        return sc;
    }

    std::size_t index_of(unsigned g, const Word& w) const {
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (rows[i].first == g && rows[i].second == w) return i;
        throw ConfluenceNotEstablished("skew element leaves the truncated basis");
    }
};

// Fast index: map keyed by (group, word)
struct SkewIndex {
    std::map<unsigned, std::map<Word, std::size_t, Poly::WordLess>> per_group;

    SkewIndex(const SkewCoords& sc, const Alphabet& alpha) {
        for (std::size_t i = 0; i < sc.rows.size(); ++i) {
            auto [g, w] = sc.rows[i];
            per_group.try_emplace(g, std::map<Word, std::size_t, Poly::WordLess>(
                                         Poly::WordLess{&alpha}));
            per_group.at(g).emplace(w, i);
        }
    }
    std::size_t at(unsigned g, const Word& w) const {
        auto git = per_group.find(g);
        if (git == per_group.end()) throw ConfluenceNotEstablished("bad group index");
        auto wit = git->second.find(w);
        if (wit == git->second.end())
            throw ConfluenceNotEstablished("skew element leaves the truncated basis");
        return wit->second;
    }
};

// Column description and its coordinate vector.
struct SandwichColumn {
    Word u_word;
    Word v_word;
    unsigned v_group;
};

// Enumerate sandwich columns in the fixed deterministic order: total weight,
// then u word, then v word, then v group. Evaluates
//   (wu # e) f_G (wv # h) = sum_m wu * m(wv) # m h.
inline void for_each_sandwich(const FiniteGroup& G, unsigned bound,
                              const std::function<void(const SandwichColumn&,
                                                       const SkewPoly&)>& fn) {
    const AlgebraHandle& A = G.algebra();
    const Alphabet& alpha = *A.alphabet();
    const ScalarDomain dom = A.domain();
    std::vector<Word> words = A.basis_upto(bound);
    // group images of each basis word, computed once
    std::vector<std::vector<Poly>> moved;
    for (unsigned m = 0; m < G.order(); ++m) {
        std::vector<Poly> row;
        row.reserve(words.size());
        for (const Word& w : words)
            row.push_back(G.element(m).apply(Poly::monomial(A.alphabet(), w, Scalar::one(dom))));
        moved.push_back(std::move(row));
    }
    // words are already sorted ascending in the monomial order
    for (unsigned s = 0; s <= bound; ++s) {
        for (const Word& wu : words) {
            const unsigned uw = alpha.word_weight(wu);
            if (uw > s) continue;
            const Poly umono = Poly::monomial(A.alphabet(), wu, Scalar::one(dom));
            for (std::size_t vi = 0; vi < words.size(); ++vi) {
                const Word& wv = words[vi];
                if (alpha.word_weight(wv) + uw != s) continue;
                std::vector<Poly> prods;
                prods.reserve(G.order());
                for (unsigned m = 0; m < G.order(); ++m)
                    prods.push_back(A.normal_form(free_mul(umono, moved[m][vi])));
                for (unsigned h = 0; h < G.order(); ++h) {
                    SkewPoly col = SkewPoly::zero(A);
                    for (unsigned m = 0; m < G.order(); ++m) {
                        const unsigned mh = G.multiply(m, h);
                        for (const auto& [w, c] : prods[m].terms()) col.add_term(mh, w, c);
                    }
                    fn(SandwichColumn{wu, wv, h}, col);
                }
            }
        }
    }
}

} // namespace detail

// Exact truncated membership: search the span of {u f_G v} with
// weight(u) + weight(v) <= bound for the target. NotFound (nullopt) only
// means "no witness within this bound".
inline std::optional<MembershipWitness> ideal_membership(const SkewPoly& target,
                                                         const FiniteGroup& G,
                                                         unsigned bound) {
    const AlgebraHandle& A = G.algebra();
    if (!A.system().confluent_to(2 * bound))
        throw ConfluenceNotEstablished("ideal_membership at bound " + std::to_string(bound) +
                                       " needs confluence to " + std::to_string(2 * bound));
    if (target.weight() > bound)
        throw ConfluenceNotEstablished("target weight exceeds the bound");

    detail::SkewCoords coords = detail::SkewCoords::build(G, bound, false);
    detail::SkewIndex index(coords, *A.alphabet());
    const std::size_t nrows = coords.rows.size();
    const ScalarDomain dom = A.domain();

    auto to_vec = [&](const SkewPoly& s) {
        std::vector<Scalar> v(nrows, Scalar::zero(dom));
        for (const auto& [k, c] : s.terms()) v[index.at(k.group, k.word)] = c;
        return v;
    };

    // phase 1: greedy pivot columns by incremental echelon
    linalg::SpanBuilder span(dom);
    std::vector<detail::SandwichColumn> pivots;
    detail::for_each_sandwich(G, bound, [&](const detail::SandwichColumn& sc,
                                            const SkewPoly& col) {
        if (col.is_zero()) return;
        if (span.insert(to_vec(col))) pivots.push_back(sc);
    });

    // phase 2: solve on the pivot columns only (free variables are zero in
    // the deterministic solution, so dropping them is exact)
    ExactMatrix mat(nrows, pivots.size(), dom);
    for (std::size_t c = 0; c < pivots.size(); ++c) {
        SkewPoly col = SkewPoly::zero(A);
        const auto& sc = pivots[c];
        for (unsigned m = 0; m < G.order(); ++m) {
            Poly moved = G.element(m).apply(
                Poly::monomial(A.alphabet(), sc.v_word, Scalar::one(dom)));
            Poly prod = A.normal_form(free_mul(
                Poly::monomial(A.alphabet(), sc.u_word, Scalar::one(dom)), moved));
            const unsigned mh = G.multiply(m, sc.v_group);
            for (const auto& [w, s] : prod.terms()) col.add_term(mh, w, s);
        }
        std::vector<Scalar> v = to_vec(col);
        for (std::size_t r = 0; r < nrows; ++r) mat.at(r, c) = v[r];
    }
    auto sol = linalg::solve(mat, to_vec(target));
    if (!sol) return std::nullopt;

    MembershipWitness w{target, {}};
    for (std::size_t c = 0; c < pivots.size(); ++c) {
        if ((*sol)[c].is_zero()) continue;
        w.terms.push_back(SandwichTerm{pivots[c].u_word, 0, pivots[c].v_word,
                                       pivots[c].v_group, (*sol)[c]});
    }
    if (!verify_membership(w, G))
        throw CertificateMismatch("internal: witness failed immediate re-expansion");
    return w;
}

// ---------------------------------------------------------------------------
// pertinency certificates
// ---------------------------------------------------------------------------

struct PertinencyEntry {
    std::string generator;
    unsigned exponent;
    MembershipWitness witness;
};

struct PertinencyCertificate {
    std::vector<PertinencyEntry> entries;
    unsigned bound = 0;
    unsigned cap = 0;
    unsigned gk_dim = 0;
    bool gk_from_provenance = false;
    bool auslander_isomorphism = false;
    std::string conclusion;
};

struct PertinencyOutcome {
    std::optional<PertinencyCertificate> certificate;
    std::string inconclusive; // nonempty iff no certificate
};

// Growth exponent of the dimension table: the known value from provenance
// when recorded, otherwise the doubling-ratio estimate
// ceil(log2(dim(b) / dim(b/2))).
inline std::pair<unsigned, bool> estimate_gk_dim(const AlgebraHandle& A, unsigned bound) {
    if (A.presentation().provenance() && A.presentation().provenance()->gk_dim)
        return {*A.presentation().provenance()->gk_dim, true};
    const unsigned b = std::max(2u, bound);
    const double hi = static_cast<double>(A.dim_upto(b));
    const double lo = static_cast<double>(A.dim_upto(b / 2));
    const double d = std::log2(hi / lo);
    return {static_cast<unsigned>(std::ceil(d - 1e-9)), false};
}

// For each algebra generator, search exponents N = 1..cap for a witness that
// x^N # e lies in (f_G). Success for every generator certifies that the
// quotient is finite-dimensional, so p(A,G) = GKdim A; with GKdim A >= 2 the
// cited criterion upgrades this to the Auslander isomorphism. A failed
// bounded search is only ever Inconclusive.
inline PertinencyOutcome pertinency_certificate(const FiniteGroup& G, unsigned cap,
                                                unsigned bound) {
    const AlgebraHandle& A = G.algebra();
    PertinencyCertificate cert;
    cert.bound = bound;
    cert.cap = cap;
    for (GenIndex i = 0; i < A.alphabet()->size(); ++i) {
        const GeneratorInfo& gen = A.alphabet()->gen(i);
        if (gen.weight == 0) continue; // group-like generators are units
        std::optional<PertinencyEntry> found;
        for (unsigned N = 1; N <= cap; ++N) {
            if (N * gen.weight > bound) break;
            SkewPoly target =
                SkewPoly::monomial(A, word_pow(i, N), 0, Scalar::one(A.domain()));
            if (target.is_zero()) continue;
            auto w = ideal_membership(target, G, bound);
            if (w) {
                found = PertinencyEntry{gen.name, N, std::move(*w)};
                break;
            }
        }
        if (!found)
            return PertinencyOutcome{std::nullopt,
                                     "no witness for any power of " + gen.name +
                                         " up to " + std::to_string(cap) + " at bound " +
                                         std::to_string(bound) +
                                         " (bounded search, not a disproof)"};
        cert.entries.push_back(std::move(*found));
    }
    auto [gk, from_prov] = estimate_gk_dim(A, A.confluence_bound() / 2);
    cert.gk_dim = gk;
    cert.gk_from_provenance = from_prov;
    cert.auslander_isomorphism = gk >= 2;
    cert.conclusion =
        "all generator powers lie in (f_G): the quotient (A#G)/(f_G) is "
        "finite-dimensional, GKdim of the quotient is 0, and p(A,G) = GKdim A = " +
        std::to_string(gk);
    if (cert.auslander_isomorphism)
        cert.conclusion += "; p >= 2, so the Auslander map is an isomorphism for this "
                           "pair by the pertinency criterion";
    return PertinencyOutcome{std::move(cert), ""};
}

// ---------------------------------------------------------------------------
// quotient growth series
// ---------------------------------------------------------------------------

struct GrowthSeries {
    std::vector<std::size_t> dims; // dim of the weight-<=n slice of the quotient
    bool gk0_evidence = false;     // eventually constant within the bound
};

inline GrowthSeries quotient_growth(const FiniteGroup& G, unsigned bound) {
    const AlgebraHandle& A = G.algebra();
    if (!A.system().confluent_to(2 * bound))
        throw ConfluenceNotEstablished("quotient_growth at bound " + std::to_string(bound) +
                                       " needs confluence to " + std::to_string(2 * bound));
    // coordinates ordered by weight descending: an echelon pivot's weight is
    // the max weight of its row, so pivots of weight <= n span the
    // intersection of the truncated ideal with the weight-<=n slice
    detail::SkewCoords coords = detail::SkewCoords::build(G, bound, true);
    detail::SkewIndex index(coords, *A.alphabet());
    const std::size_t nrows = coords.rows.size();
    const ScalarDomain dom = A.domain();
    const Alphabet& alpha = *A.alphabet();

    linalg::SpanBuilder span(dom);
    detail::for_each_sandwich(G, bound, [&](const detail::SandwichColumn&,
                                            const SkewPoly& col) {
        if (col.is_zero()) return;
        std::vector<Scalar> v(nrows, Scalar::zero(dom));
        for (const auto& [k, c] : col.terms()) v[index.at(k.group, k.word)] = c;
        span.insert(std::move(v));
    });

    GrowthSeries out;
    for (unsigned n = 0; n <= bound; ++n) {
        std::size_t pivots_le_n = 0;
        for (std::size_t lead : span.leading_coords())
            if (alpha.word_weight(coords.rows[lead].second) <= n) ++pivots_le_n;
        const std::size_t full = G.order() * A.dim_upto(n);
        out.dims.push_back(full - pivots_le_n);
    }
    out.gk0_evidence = out.dims.size() >= 2 &&
                       out.dims[out.dims.size() - 1] == out.dims[out.dims.size() - 2];
    return out;
}

// ---------------------------------------------------------------------------
// the Auslander map
// ---------------------------------------------------------------------------

// gamma(u)(b) = sum over terms a#g of u of a * g(b), in normal form.
inline Poly auslander_apply(const SkewPoly& u, const Poly& b, const FiniteGroup& G) {
    const AlgebraHandle& A = G.algebra();
    if (!(*u.alphabet() == *A.alphabet()) || !(*b.alphabet() == *A.alphabet()) ||
        !(u.domain() == A.domain()) || !(b.domain() == A.domain()))
        throw DomainMismatch("auslander_apply arguments do not match the group's algebra");
    Poly out = A.zero();
    for (const auto& [k, c] : u.terms()) {
        Poly moved = G.element(k.group).apply(b);
        out = out + c * A.normal_form(free_mul(
                            Poly::monomial(A.alphabet(), k.word, Scalar::one(A.domain())),
                            moved));
    }
    return A.normal_form(out);
}

struct InjectivityReport {
    unsigned N = 0, M = 0;
    std::size_t domain_dim = 0;
    std::size_t kernel_dim = 0;
    std::optional<SkewPoly> kernel_witness;
};

// Assemble the linear map from the weight-<=N slice of A#G into
// Hom(F_M(A), F_{N+M}(A)) via auslander_apply and report its kernel.
inline InjectivityReport truncated_injectivity(const FiniteGroup& G, unsigned N,
                                               unsigned M) {
    const AlgebraHandle& A = G.algebra();
    if (!A.system().confluent_to(2 * (N + M)))
        throw ConfluenceNotEstablished("truncated_injectivity needs confluence to " +
                                       std::to_string(2 * (N + M)));
    detail::SkewCoords cols = detail::SkewCoords::build(G, N, false);
    std::vector<Word> inputs = A.basis_upto(M);
    std::vector<Word> outputs = A.basis_upto(N + M);
    std::map<Word, std::size_t, Poly::WordLess> out_index(
        Poly::WordLess{A.alphabet().get()});
    for (std::size_t i = 0; i < outputs.size(); ++i) out_index.emplace(outputs[i], i);

    const ScalarDomain dom = A.domain();
    ExactMatrix mat(inputs.size() * outputs.size(), cols.rows.size(), dom);
    for (std::size_t c = 0; c < cols.rows.size(); ++c) {
        auto [g, w] = cols.rows[c];
        SkewPoly u = SkewPoly::monomial(A, w, g, Scalar::one(dom));
        for (std::size_t j = 0; j < inputs.size(); ++j) {
            Poly img = auslander_apply(
                u, Poly::monomial(A.alphabet(), inputs[j], Scalar::one(dom)), G);
            for (const auto& [ow, oc] : img.terms())
                mat.at(j * outputs.size() + out_index.at(ow), c) = oc;
        }
    }
    auto kernel = linalg::kernel_basis(mat);
    InjectivityReport rep;
    rep.N = N;
    rep.M = M;
    rep.domain_dim = cols.rows.size();
    rep.kernel_dim = kernel.size();
    if (!kernel.empty()) {
        SkewPoly witness = SkewPoly::zero(A);
        for (std::size_t c = 0; c < cols.rows.size(); ++c)
            if (!kernel[0][c].is_zero())
                witness.add_term(cols.rows[c].first, cols.rows[c].second, kernel[0][c]);
        rep.kernel_witness = std::move(witness);
    }
    return rep;
}

} // namespace ncfilt
