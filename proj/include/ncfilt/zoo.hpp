#pragma once

// Constructors for the algebra families handled by the workbench, associated
// graded presentations, coefficient-order extraction with reduction mod p,
// centrality witnesses over prime fields, and the congeniality report.

#include <cmath>
#include <optional>
#include <sstream>

#include "ncfilt/linsolve.hpp"
#include "ncfilt/presentation.hpp"

namespace ncfilt {

namespace detail {

inline Poly make_poly(const AlphabetPtr& a, const ScalarDomain& dom,
                      std::initializer_list<std::pair<Word, Scalar>> terms) {
    Poly p(a, dom);
    for (const auto& [w, c] : terms) p.add_term(w, c);
    return p;
}

inline std::string scalar_param(const Scalar& s) { return s.str(); }

} // namespace detail

// ---------------------------------------------------------------------------
// enveloping algebras of Lie superalgebras
// ---------------------------------------------------------------------------

// Structure constants: c[i][j][p] = coefficient of x_p in [x_i, x_j].
// Validates the grading, super skew-symmetry in the conventional form
// [x,y] = -(-1)^{|x||y|}[y,x], and the super Jacobi identity, exhaustively
// over basis triples. Note the source convention recorded in provenance: the
// sign convention used here is the one the pl(1|1) relations satisfy.
inline Presentation enveloping_super(const std::vector<std::string>& names,
                                     const std::vector<unsigned>& parities,
                                     const std::vector<std::vector<std::vector<Scalar>>>& c,
                                     const ScalarDomain& dom) {
    const std::size_t n = names.size();
    if (parities.size() != n || c.size() != n)
        throw AxiomViolation("structure constant table has wrong shape");
    for (const auto& row : c)
        if (row.size() != n)
            throw AxiomViolation("structure constant table has wrong shape");

    auto cc = [&](std::size_t i, std::size_t j, std::size_t p) -> const Scalar& {
        return c[i][j][p];
    };
    auto sign = [&](std::size_t i, std::size_t j) -> int {
        return (parities[i] & parities[j] & 1u) ? -1 : 1;
    };

    // grading: [L_a, L_b] subset L_{a+b}
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (c[i][j].size() != n)
                throw AxiomViolation("structure constant table has wrong shape");
            for (std::size_t p = 0; p < n; ++p)
                if (!cc(i, j, p).is_zero() &&
                    parities[p] != ((parities[i] + parities[j]) & 1u))
                    throw AxiomViolation("parity: [" + names[i] + "," + names[j] +
                                         "] meets " + names[p]);
        }
    // super skew-symmetry, conventional sign: [x,y] = -(-1)^{|x||y|}[y,x]
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t p = 0; p < n; ++p) {
                Scalar rhs = -cc(j, i, p);
                if (sign(i, j) < 0) rhs = -rhs;
                if (!(cc(i, j, p) == rhs))
                    throw AxiomViolation("super skew-symmetry at (" + names[i] + "," +
                                         names[j] + ")");
            }
    // super Jacobi identity on all basis triples
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t q = 0; q < n; ++q) {
                    Scalar acc = Scalar::zero(dom);
                    for (std::size_t p = 0; p < n; ++p) {
                        Scalar t1 = cc(j, k, p) * cc(i, p, q);
                        if (sign(i, k) < 0) t1 = -t1;
                        Scalar t2 = cc(k, i, p) * cc(j, p, q);
                        if (sign(j, i) < 0) t2 = -t2;
                        Scalar t3 = cc(i, j, p) * cc(k, p, q);
                        if (sign(k, j) < 0) t3 = -t3;
                        acc = acc + t1 + t2 + t3;
                    }
                    if (!acc.is_zero())
                        throw AxiomViolation("super Jacobi at (" + names[i] + "," +
                                             names[j] + "," + names[k] + ")");
                }

    std::vector<GeneratorInfo> gens;
    for (std::size_t i = 0; i < n; ++i)
        gens.push_back({names[i], 1, parities[i] & 1u, static_cast<unsigned>(i)});
    auto alpha = std::make_shared<Alphabet>(std::move(gens));

    std::vector<Poly> rels;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < j; ++i) {
            // x_j x_i - (-1)^{|i||j|} x_i x_j - [x_j, x_i]
            Poly r(alpha, dom);
            r.add_term({static_cast<GenIndex>(j), static_cast<GenIndex>(i)},
                       Scalar::one(dom));
            Scalar swap_coeff = -Scalar::one(dom);
            if (sign(i, j) < 0) swap_coeff = -swap_coeff;
            r.add_term({static_cast<GenIndex>(i), static_cast<GenIndex>(j)}, swap_coeff);
            for (std::size_t p = 0; p < n; ++p)
                r.add_term({static_cast<GenIndex>(p)}, -cc(j, i, p));
            rels.push_back(std::move(r));
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!(parities[i] & 1u)) continue;
        // odd squares: 2 y^2 - [y,y]  (characteristic-zero convention)
        Poly r(alpha, dom);
        r.add_term({static_cast<GenIndex>(i), static_cast<GenIndex>(i)},
                   Scalar::integer(2).embed_in(dom));
        for (std::size_t p = 0; p < n; ++p) r.add_term({static_cast<GenIndex>(p)}, -cc(i, i, p));
        rels.push_back(std::move(r));
    }

    Provenance prov;
    prov.family = "enveloping_super";
    prov.params["dim"] = std::to_string(n);
    prov.params["sign_convention"] = "[x,y] = -(-1)^{|x||y|}[y,x]";
    unsigned even = 0;
    for (unsigned p : parities)
        if (!(p & 1u)) ++even;
    prov.gk_dim = even;
    return Presentation(alpha, dom, std::move(rels), std::move(prov));
}

// ---------------------------------------------------------------------------
// iterated differential operator rings k[x_1][x_2; d_2]...[x_n; d_n]
// ---------------------------------------------------------------------------

// delta[k][j] = d_k(x_j) for j < k, given over a staging alphabet whose
// weights are ignored; final weights follow deg(x_1) = 1 and
// deg(x_k) = max_j deg(d_k(x_j)), floored at 1.
inline Presentation iterated_ore(const std::vector<std::string>& names,
                                 const std::vector<std::vector<Poly>>& delta,
                                 const ScalarDomain& dom) {
    const std::size_t n = names.size();
    if (delta.size() != n) throw NotADerivation("derivation table has wrong shape");
    for (std::size_t k = 0; k < n; ++k)
        if (delta[k].size() != k)
            throw NotADerivation("derivation table row " + std::to_string(k) +
                                 " has wrong shape");

    // weights, computed bottom-up from the delta supports
    std::vector<unsigned> weight(n, 1);
    for (std::size_t k = 1; k < n; ++k) {
        unsigned w = 0;
        for (std::size_t j = 0; j < k; ++j) {
            for (const auto& [word, coeff] : delta[k][j].terms()) {
                unsigned ww = 0;
                for (GenIndex g : word) {
                    if (g >= k)
                        throw NotADerivation("d_" + names[k] + "(" + names[j] +
                                             ") uses a later generator");
                    ww += weight[g];
                }
                w = std::max(w, ww);
            }
        }
        weight[k] = std::max(1u, w);
    }

    std::vector<GeneratorInfo> gens;
    for (std::size_t i = 0; i < n; ++i)
        gens.push_back({names[i], weight[i], 0, static_cast<unsigned>(i)});
    auto alpha = std::make_shared<Alphabet>(std::move(gens));

    auto remap = [&](const Poly& p) {
        Poly out(alpha, dom);
        for (const auto& [w, c] : p.terms()) out.add_term(w, c);
        return out;
    };

    // d_k extended to words by the Leibniz rule
    auto apply_delta = [&](std::size_t k, const Poly& p) {
        Poly out(alpha, dom);
        for (const auto& [w, c] : p.terms()) {
            for (std::size_t pos = 0; pos < w.size(); ++pos) {
                const Word prefix(w.begin(), w.begin() + pos);
                const Word suffix(w.begin() + pos + 1, w.end());
                for (const auto& [dw, dc] : delta[k][w[pos]].terms())
                    out.add_term(word_concat(prefix, word_concat(dw, suffix)), c * dc);
            }
        }
        return out;
    };

    std::vector<Poly> rels;
    for (std::size_t k = 1; k < n; ++k) {
        // d_k must annihilate every relation of the subring on x_1..x_k
        if (!rels.empty()) {
            RewriteSystem sub = orient(rels, alpha, dom);
            Rewriter rw(std::make_shared<RewriteSystem>(sub));
            for (std::size_t ri = 0; ri < rels.size(); ++ri) {
                Poly image = rw.normal_form(apply_delta(k, rels[ri]));
                if (!image.is_zero())
                    throw NotADerivation("d_" + names[k] + " does not annihilate relation " +
                                         std::to_string(ri) + "; remainder " + image.str());
            }
        }
        for (std::size_t j = 0; j < k; ++j) {
            Poly r(alpha, dom);
            r.add_term({static_cast<GenIndex>(k), static_cast<GenIndex>(j)}, Scalar::one(dom));
            r.add_term({static_cast<GenIndex>(j), static_cast<GenIndex>(k)}, -Scalar::one(dom));
            r = r - remap(delta[k][j]);
            rels.push_back(std::move(r));
        }
    }

    Provenance prov;
    prov.family = "iterated_ore";
    prov.params["n"] = std::to_string(n);
    for (std::size_t k = 1; k < n; ++k)
        for (std::size_t j = 0; j < k; ++j)
            prov.params["delta(" + names[k] + "," + names[j] + ")"] = delta[k][j].str();
    prov.gk_dim = static_cast<unsigned>(n);
    return Presentation(alpha, dom, std::move(rels), std::move(prov));
}

// ---------------------------------------------------------------------------
// quantized Weyl algebras
// ---------------------------------------------------------------------------

inline Presentation quantized_weyl(unsigned n, const std::vector<std::vector<Scalar>>& q,
                                   const std::vector<Scalar>& gamma,
                                   const ScalarDomain& dom) {
    if (n == 0) throw ZeroParameter("quantized Weyl rank must be positive");
    if (q.size() != n || gamma.size() != n)
        throw InvalidQMatrix("parameter shapes do not match rank " + std::to_string(n));
    const Scalar one = Scalar::one(dom);
    for (unsigned i = 0; i < n; ++i) {
        if (q[i].size() != n) throw InvalidQMatrix("q is not square");
        if (!(q[i][i] == one)) throw InvalidQMatrix("q_{ii} must be 1");
        if (gamma[i].is_zero()) throw ZeroParameter("gamma_" + std::to_string(i + 1));
        for (unsigned j = 0; j < n; ++j) {
            if (q[i][j].is_zero()) throw ZeroParameter("q entries must be units");
            if (!((q[i][j] * q[j][i]) == one))
                throw InvalidQMatrix("q_{ij} q_{ji} must be 1");
        }
    }

    // generators x_1, y_1, ..., x_n, y_n with deg(x_i) = deg(y_i) = i
    std::vector<GeneratorInfo> gens;
    for (unsigned i = 0; i < n; ++i) {
        const std::string suffix = std::to_string(i + 1);
        gens.push_back({"x" + suffix, i + 1, 0, 2 * i});
        gens.push_back({"y" + suffix, i + 1, 0, 2 * i + 1});
    }
    auto alpha = std::make_shared<Alphabet>(std::move(gens));
    auto X = [](unsigned i) { return static_cast<GenIndex>(2 * i); };
    auto Y = [](unsigned i) { return static_cast<GenIndex>(2 * i + 1); };

    std::vector<Poly> rels;
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = i + 1; j < n; ++j) {
            // y_i y_j = q_ij y_j y_i
            rels.push_back(detail::make_poly(alpha, dom,
                                             {{{Y(i), Y(j)}, one}, {{Y(j), Y(i)}, -q[i][j]}}));
            // x_i x_j = gamma_i q_ij x_j x_i
            rels.push_back(detail::make_poly(
                alpha, dom, {{{X(i), X(j)}, one}, {{X(j), X(i)}, -(gamma[i] * q[i][j])}}));
            // x_i y_j = q_ji y_j x_i          (i < j)
            rels.push_back(detail::make_poly(alpha, dom,
                                             {{{X(i), Y(j)}, one}, {{Y(j), X(i)}, -q[j][i]}}));
            // x_j y_i = gamma_i q_ij y_i x_j  (paper's i > j case, relabeled)
            rels.push_back(detail::make_poly(
                alpha, dom, {{{X(j), Y(i)}, one}, {{Y(i), X(j)}, -(gamma[i] * q[i][j])}}));
        }
    for (unsigned j = 0; j < n; ++j) {
        // x_j y_j = 1 + gamma_j y_j x_j + sum_{l<j} (gamma_l - 1) y_l x_l
        Poly r(alpha, dom);
        r.add_term({X(j), Y(j)}, one);
        r.add_term({}, -one);
        r.add_term({Y(j), X(j)}, -gamma[j]);
        for (unsigned l = 0; l < j; ++l) r.add_term({Y(l), X(l)}, -(gamma[l] - one));
        rels.push_back(std::move(r));
    }

    Provenance prov;
    prov.family = "quantized_weyl";
    prov.params["n"] = std::to_string(n);
    for (unsigned i = 0; i < n; ++i) {
        prov.params["gamma_" + std::to_string(i + 1)] = detail::scalar_param(gamma[i]);
        for (unsigned j = 0; j < n; ++j)
            if (i != j)
                prov.params["q_" + std::to_string(i + 1) + "_" + std::to_string(j + 1)] =
                    detail::scalar_param(q[i][j]);
    }
    prov.gk_dim = 2 * n;
    return Presentation(alpha, dom, std::move(rels), std::move(prov));
}

// ---------------------------------------------------------------------------
// down-up algebras A(alpha, beta, gamma)
// ---------------------------------------------------------------------------

inline Presentation down_up(const Scalar& alpha_p, const Scalar& beta, const Scalar& gamma,
                            std::optional<std::pair<Scalar, Scalar>> roots = std::nullopt) {
    const ScalarDomain dom = alpha_p.domain();
    if (beta.is_zero()) throw BetaZero("beta = 0 (the non-noetherian case)");
    if (roots) {
        const auto& [r, s] = *roots;
        if (!((r + s) == alpha_p) || !((-(r * s)) == beta))
            throw RootsInconsistent("r + s != alpha or -rs != beta");
    }
    auto alpha = std::make_shared<Alphabet>(Alphabet::with_default_precedence(
        {{"d", 1, 0, 0}, {"u", 1, 0, 0}}));
    const Scalar one = Scalar::one(dom);
    const GenIndex D = 0, U = 1;
    // d^2 u = alpha dud + beta ud^2 + gamma d
    Poly r1(alpha, dom);
    r1.add_term({D, D, U}, one);
    r1.add_term({D, U, D}, -alpha_p);
    r1.add_term({U, D, D}, -beta);
    r1.add_term({D}, -gamma);
    // d u^2 = alpha udu + beta u^2 d + gamma u
    Poly r2(alpha, dom);
    r2.add_term({D, U, U}, one);
    r2.add_term({U, D, U}, -alpha_p);
    r2.add_term({U, U, D}, -beta);
    r2.add_term({U}, -gamma);

    Provenance prov;
    prov.family = "down_up";
    prov.params["alpha"] = detail::scalar_param(alpha_p);
    prov.params["beta"] = detail::scalar_param(beta);
    prov.params["gamma"] = detail::scalar_param(gamma);
    if (roots) {
        prov.params["r"] = detail::scalar_param(roots->first);
        prov.params["s"] = detail::scalar_param(roots->second);
    }
    prov.params["filtration"] = "deg(d) = deg(u) = 1";
    prov.gk_dim = 3;
    return Presentation(alpha, dom, {std::move(r1), std::move(r2)}, std::move(prov));
}

// ---------------------------------------------------------------------------
// the filtered AS regular algebras of global dimension 2
// ---------------------------------------------------------------------------

enum class Gl2Kind { QuantumPlane, Jordan, QuantumWeyl, DeformedJordan };

inline const char* gl2_kind_name(Gl2Kind k) {
    switch (k) {
    case Gl2Kind::QuantumPlane: return "quantum_plane";
    case Gl2Kind::Jordan: return "jordan";
    case Gl2Kind::QuantumWeyl: return "quantum_weyl";
    case Gl2Kind::DeformedJordan: return "deformed_jordan";
    }
    return "?";
}

inline Presentation gl2_family(Gl2Kind kind, std::optional<Scalar> q = std::nullopt) {
    const bool needs_q = (kind == Gl2Kind::QuantumPlane || kind == Gl2Kind::QuantumWeyl);
    if (needs_q) {
        if (!q) throw ZeroParameter(std::string(gl2_kind_name(kind)) + " requires q");
        if (q->is_zero()) throw ZeroParameter("q = 0");
    }
    const ScalarDomain dom = needs_q ? q->domain() : ScalarDomain::rational();
    // The Jordan kinds orient about xy, so they take precedence y < x; the
    // quantum kinds keep x < y and orient about yx. Both give PBW bases.
    const bool jordan_like = (kind == Gl2Kind::Jordan || kind == Gl2Kind::DeformedJordan);
    auto alpha = std::make_shared<Alphabet>(
        jordan_like ? Alphabet({{"x", 1, 0, 1}, {"y", 1, 0, 0}})
                    : Alphabet({{"x", 1, 0, 0}, {"y", 1, 0, 1}}));
    const Scalar one = Scalar::one(dom);
    const GenIndex X = 0, Y = 1;
    Poly r(alpha, dom);
    switch (kind) {
    case Gl2Kind::QuantumPlane: // xy - q yx
        r.add_term({X, Y}, one);
        r.add_term({Y, X}, -*q);
        break;
    case Gl2Kind::Jordan: // yx - xy + y^2
        r.add_term({Y, X}, one);
        r.add_term({X, Y}, -one);
        r.add_term({Y, Y}, one);
        break;
    case Gl2Kind::QuantumWeyl: // xy - q yx - 1
        r.add_term({X, Y}, one);
        r.add_term({Y, X}, -*q);
        r.add_term({}, -one);
        break;
    case Gl2Kind::DeformedJordan: // yx - xy + y^2 + 1
        r.add_term({Y, X}, one);
        r.add_term({X, Y}, -one);
        r.add_term({Y, Y}, one);
        r.add_term({}, one);
        break;
    }
    Provenance prov;
    prov.family = gl2_kind_name(kind);
    if (needs_q) prov.params["q"] = detail::scalar_param(*q);
    prov.gk_dim = 2;
    return Presentation(alpha, dom, {std::move(r)}, std::move(prov));
}

// ---------------------------------------------------------------------------
// symplectic reflection algebras, rank-1 cyclic case
// ---------------------------------------------------------------------------

// G = Z/m inside SL_2 acting by diag(zeta_m, zeta_m^{-1}); every nontrivial
// element is a symplectic reflection, omega normalized so omega(x, y) = 1.
inline Presentation symplectic_reflection_rank1(unsigned m, const Scalar& t,
                                                const std::vector<Scalar>& c) {
    if (m == 0) throw ZeroParameter("group order must be positive");
    if (c.size() + 1 != m)
        throw ZeroParameter("need c(1..m-1), got " + std::to_string(c.size()) +
                            " values for m = " + std::to_string(m));
    const ScalarDomain dom = t.domain();
    const Scalar zeta = mk_root_of_unity(m).embed_in(dom);
    auto alpha = std::make_shared<Alphabet>(
        Alphabet({{"x", 1, 0, 0}, {"y", 1, 0, 1}, {"g", 0, 0, 2}}));
    const Scalar one = Scalar::one(dom);
    const GenIndex X = 0, Y = 1, G = 2;

    std::vector<Poly> rels;
    // g^m = 1
    Poly rg(alpha, dom);
    rg.add_term(word_pow(G, m), one);
    rg.add_term({}, -one);
    rels.push_back(std::move(rg));
    // g x = zeta x g ; g y = zeta^{-1} y g
    rels.push_back(detail::make_poly(alpha, dom, {{{G, X}, one}, {{X, G}, -zeta}}));
    rels.push_back(
        detail::make_poly(alpha, dom, {{{G, Y}, one}, {{Y, G}, -zeta.inverse()}}));
    // x y - y x = t + sum_i c(i) g^i
    Poly rc(alpha, dom);
    rc.add_term({X, Y}, one);
    rc.add_term({Y, X}, -one);
    rc.add_term({}, -t);
    for (unsigned i = 1; i < m; ++i) {
        Word gi = word_pow(G, i);
        rc.add_term(gi, -c[i - 1].embed_in(dom));
    }
    rels.push_back(std::move(rc));

    Provenance prov;
    prov.family = "symplectic_reflection_rank1";
    prov.params["m"] = std::to_string(m);
    prov.params["t"] = detail::scalar_param(t);
    for (unsigned i = 1; i < m; ++i)
        prov.params["c_" + std::to_string(i)] = detail::scalar_param(c[i - 1]);
    prov.params["omega"] = "omega(x,y) = 1";
    prov.gk_dim = 2;
    return Presentation(alpha, dom, std::move(rels), std::move(prov));
}

// ---------------------------------------------------------------------------
// tensor products with the product filtration
// ---------------------------------------------------------------------------

inline Presentation tensor_product(const Presentation& a1, const Presentation& a2) {
    if (!(a1.domain() == a2.domain()))
        throw DomainMismatch("tensor factors over " + a1.domain().str() + " and " +
                             a2.domain().str());
    for (const auto& g : a1.alphabet()->generators())
        if (g.parity)
            throw SuperTensorUnsupported("left factor has odd generator " + g.name);
    for (const auto& g : a2.alphabet()->generators())
        if (g.parity)
            throw SuperTensorUnsupported("right factor has odd generator " + g.name);

    const std::size_t n1 = a1.alphabet()->size(), n2 = a2.alphabet()->size();
    // precedence ranks within each factor
    auto ranks = [](const Alphabet& a) {
        std::vector<unsigned> order(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) order[i] = a.gen(static_cast<GenIndex>(i)).precedence;
        std::vector<unsigned> rank(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            unsigned r = 0;
            for (std::size_t j = 0; j < a.size(); ++j)
                if (order[j] < order[i]) ++r;
            rank[i] = r;
        }
        return rank;
    };
    std::vector<unsigned> r1 = ranks(*a1.alphabet()), r2 = ranks(*a2.alphabet());

    std::vector<GeneratorInfo> gens;
    for (std::size_t i = 0; i < n1; ++i) {
        GeneratorInfo g = a1.alphabet()->gen(static_cast<GenIndex>(i));
        g.precedence = r1[i];
        gens.push_back(std::move(g));
    }
    for (std::size_t i = 0; i < n2; ++i) {
        GeneratorInfo g = a2.alphabet()->gen(static_cast<GenIndex>(i));
        std::string name = g.name;
        auto taken = [&](const std::string& s) {
            for (const auto& h : gens)
                if (h.name == s) return true;
            return false;
        };
        while (taken(name)) name += "_2";
        g.name = name;
        g.precedence = static_cast<unsigned>(n1) + r2[i];
        gens.push_back(std::move(g));
    }
    auto alpha = std::make_shared<Alphabet>(std::move(gens));

    auto remap = [&](const Poly& p, GenIndex offset) {
        Poly out(alpha, a1.domain());
        for (const auto& [w, c] : p.terms()) {
            Word nw = w;
            for (auto& g : nw) g = static_cast<GenIndex>(g + offset);
            out.add_term(nw, c);
        }
        return out;
    };

    std::vector<Poly> rels;
    for (const Poly& r : a1.relations()) rels.push_back(remap(r, 0));
    for (const Poly& r : a2.relations()) rels.push_back(remap(r, static_cast<GenIndex>(n1)));
    const Scalar one = Scalar::one(a1.domain());
    for (std::size_t j = 0; j < n2; ++j)
        for (std::size_t i = 0; i < n1; ++i) {
            GenIndex b = static_cast<GenIndex>(n1 + j), a = static_cast<GenIndex>(i);
            rels.push_back(detail::make_poly(alpha, a1.domain(),
                                             {{{b, a}, one}, {{a, b}, -one}}));
        }

    Provenance prov;
    prov.family = "tensor_product";
    const auto* p1 = a1.provenance() ? &*a1.provenance() : nullptr;
    const auto* p2 = a2.provenance() ? &*a2.provenance() : nullptr;
    prov.params["left"] = p1 ? p1->family : "explicit";
    prov.params["right"] = p2 ? p2->family : "explicit";
    if (p1 && p2 && p1->gk_dim && p2->gk_dim) prov.gk_dim = *p1->gk_dim + *p2->gk_dim;
    return Presentation(alpha, a1.domain(), std::move(rels), std::move(prov));
}

// ---------------------------------------------------------------------------
// associated graded
// ---------------------------------------------------------------------------

// Replace each relation by its top-weight homogeneous component, then check
// dimension agreement with the filtered algebra on the certified range.
inline Presentation associated_graded(const AlgebraHandle& h) {
    if (!h.confluent())
        throw ConfluenceNotEstablished("associated_graded needs a confluent handle");
    const Presentation& p = h.presentation();
    std::vector<Poly> top;
    for (const Poly& r : p.relations()) {
        unsigned w = r.weight();
        Poly t(p.alphabet(), p.domain());
        for (const auto& [word, c] : r.terms())
            if (p.alphabet()->word_weight(word) == w) t.add_term(word, c);
        top.push_back(std::move(t));
    }
    Provenance prov;
    if (p.provenance()) prov = *p.provenance();
    prov.params["graded_from"] = prov.family.empty() ? "explicit" : prov.family;
    prov.family = "associated_graded";
    Presentation gr(p.alphabet(), p.domain(), std::move(top), std::move(prov));

    const unsigned bound = h.confluence_bound();
    AlgebraHandle gh = AlgebraHandle::build(gr, bound);
    if (!gh.confluent())
        throw GradedDimensionMismatch(
            "top-weight system is not confluent at bound " + std::to_string(bound) +
            " (non-PBW orientation)");
    for (unsigned n = 0; 2 * n <= bound; ++n) {
        if (gh.dim_upto(n) != h.dim_upto(n))
            throw GradedDimensionMismatch(
                "dim F_" + std::to_string(n) + ": filtered " + std::to_string(h.dim_upto(n)) +
                " vs graded " + std::to_string(gh.dim_upto(n)));
    }
    return gr;
}

// ---------------------------------------------------------------------------
// order extraction + reduction mod p
// ---------------------------------------------------------------------------

struct ReducedAlgebra {
    OrderSpec order;
    AlgebraHandle handle; // over F_p, confluence re-checked at the same bound
};

inline ReducedAlgebra order_and_reduce(const AlgebraHandle& h, std::uint64_t p) {
    const Presentation& pres = h.presentation();
    if (p == 2 && pres.has_odd_generators())
        throw DomainMismatch("p = 2 conflicts with the odd-square convention 2y^2 = [y,y]");
    OrderSpec spec = order_generators(pres.coefficient_set());

    const ScalarDomain fp = ScalarDomain::prime_field(p);
    std::vector<Poly> rels;
    const auto& src = pres.relations();
    for (std::size_t i = 0; i < src.size(); ++i) {
        Poly r(pres.alphabet(), fp);
        for (const auto& [w, c] : src[i].terms()) {
            const std::string where =
                " (coefficient " + c.str() + " in relation " + std::to_string(i) + ")";
            try {
                r.add_term(w, reduce_mod_p(c, p));
            } catch (const DenominatorVanishes& e) {
                throw DenominatorVanishes(e.what() + where);
            } catch (const NoRootOfUnity& e) {
                throw NoRootOfUnity(e.what() + where);
            }
        }
        if (!r.is_zero()) rels.push_back(std::move(r));
    }
    Provenance prov;
    if (pres.provenance()) prov = *pres.provenance();
    prov.params["reduced_mod"] = std::to_string(p);
    Presentation reduced(pres.alphabet(), fp, std::move(rels), std::move(prov));
    return ReducedAlgebra{std::move(spec),
                          AlgebraHandle::build(std::move(reduced), h.confluence_bound())};
}

// ---------------------------------------------------------------------------
// centrality witnesses over F_p
// ---------------------------------------------------------------------------

enum class WitnessAnsatz { PPower, Power };

struct CentralWitness {
    GenIndex generator;
    WitnessAnsatz ansatz;
    // z = sum coeff * a^exponent, exponents strictly increasing
    std::vector<std::pair<unsigned long long, Scalar>> terms;
};

// Searches for a nonzero z commuting with every generator. First pass: the
// p-polynomial ansatz z = sum alpha_i a^{p^i}, i = 1..i_max (the Jacobson
// shape). If that space is trivial, a second pass searches all powers
// z = sum beta_k a^k, k = 1..p^{i_max}; several families (roots of unity of
// order coprime to p) have central powers that are not p-th powers.
inline std::optional<CentralWitness> central_witness(const AlgebraHandle& h, GenIndex a,
                                                     unsigned i_max) {
    const ScalarDomain dom = h.domain();
    if (dom.kind != DomainKind::PrimeField)
        throw DomainMismatch("central_witness needs a prime-field algebra");
    const std::uint64_t p = dom.prime;
    unsigned long long top = 1;
    for (unsigned i = 0; i < i_max; ++i) {
        top *= p;
        if (top > (1ull << 20))
            throw CapExceeded("p^i_max too large for the witness search");
    }
    const unsigned wa = h.alphabet()->gen(a).weight;
    const unsigned long long needed = 2ull * top * std::max(1u, wa);
    if (!h.system().confluent_to(static_cast<unsigned>(needed)))
        throw ConfluenceNotEstablished("central_witness needs confluence to " +
                                       std::to_string(needed));

    const std::size_t ngens = h.alphabet()->size();
    auto solve_for = [&](const std::vector<unsigned long long>& exps)
        -> std::optional<std::vector<Scalar>> {
        // one commutator poly per (exponent, generator) pair
        std::vector<std::vector<Poly>> comms(exps.size());
        // row coordinates: union of words across all commutators, per generator
        std::vector<std::map<Word, std::size_t, Poly::WordLess>> coords(
            ngens, std::map<Word, std::size_t, Poly::WordLess>(
                       Poly::WordLess{h.alphabet().get()}));
        for (std::size_t e = 0; e < exps.size(); ++e) {
            for (std::size_t j = 0; j < ngens; ++j) {
                Word aw = word_pow(a, static_cast<unsigned>(exps[e]));
                Word left = aw, right = aw;
                left.push_back(static_cast<GenIndex>(j));
                right.insert(right.begin(), static_cast<GenIndex>(j));
                Poly c = h.rewriter().normal_form_word(left) -
                         h.rewriter().normal_form_word(right);
                for (const auto& [w, s] : c.terms())
                    coords[j].emplace(w, 0);
                comms[e].push_back(std::move(c));
            }
        }
        std::size_t nrows = 0;
        for (auto& m : coords)
            for (auto& [w, idx] : m) idx = nrows++;
        ExactMatrix mat(std::max<std::size_t>(nrows, 1), exps.size(), dom);
        for (std::size_t e = 0; e < exps.size(); ++e)
            for (std::size_t j = 0; j < ngens; ++j)
                for (const auto& [w, s] : comms[e][j].terms())
                    mat.at(coords[j].at(w), e) = s;
        auto kernel = linalg::kernel_basis(mat);
        if (kernel.empty()) return std::nullopt;
        return kernel.front();
    };

    std::vector<unsigned long long> p_powers;
    {
        unsigned long long e = 1;
        for (unsigned i = 1; i <= i_max; ++i) {
            e *= p;
            p_powers.push_back(e);
        }
    }
    if (auto sol = solve_for(p_powers)) {
        CentralWitness w{a, WitnessAnsatz::PPower, {}};
        for (std::size_t i = 0; i < p_powers.size(); ++i)
            if (!(*sol)[i].is_zero()) w.terms.emplace_back(p_powers[i], (*sol)[i]);
        return w;
    }
    std::vector<unsigned long long> all;
    for (unsigned long long k = 1; k <= top; ++k) all.push_back(k);
    if (auto sol = solve_for(all)) {
        CentralWitness w{a, WitnessAnsatz::Power, {}};
        for (std::size_t i = 0; i < all.size(); ++i)
            if (!(*sol)[i].is_zero()) w.terms.emplace_back(all[i], (*sol)[i]);
        return w;
    }
    return std::nullopt;
}

// Independent re-expansion: recompute normal_form(z g_j - g_j z) from the
// witness data alone.
inline bool verify_central_witness(const AlgebraHandle& h, const CentralWitness& w) {
    Poly z = h.zero();
    for (const auto& [e, c] : w.terms) {
        Poly pw = h.rewriter().normal_form_word(word_pow(w.generator, static_cast<unsigned>(e)));
        z = z + c * pw;
    }
    for (GenIndex j = 0; j < h.alphabet()->size(); ++j) {
        Poly gj = h.gen(j);
        Poly comm = h.normal_form(free_mul(z, gj) - free_mul(gj, z));
        if (!comm.is_zero()) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// congeniality report
// ---------------------------------------------------------------------------

struct CongenialityPrime {
    std::uint64_t p = 0;
    bool reduced = false;
    std::string failure;
    std::vector<std::pair<std::string, CentralWitness>> witnesses;
    bool pass = false;
};

struct CongenialityConditions {
    bool local_finite = false;            // (1)
    std::vector<std::size_t> dims;
    bool order_ok = false;                // (2)
    OrderSpec order;
    std::string order_failure;
    bool gr_order_ok = false;             // (3)
    OrderSpec gr_order;
    std::string gr_failure;
    double growth_slope = 0.0;            // (4), proxy only
    bool poly_growth_evidence = false;
    std::string proxy_note;
    std::vector<CongenialityPrime> primes; // (5)
    bool pass = false;                     // (1) && (2) && (3) && all primes
};

inline CongenialityConditions congeniality_report(const AlgebraHandle& h,
                                                  const std::vector<std::uint64_t>& primes,
                                                  unsigned bound, unsigned i_max = 1) {
    CongenialityConditions rep;
    rep.proxy_note = "strongly noetherian is not machine-checkable; reporting a bounded "
                     "polynomial-growth proxy only";

    // (1) local finiteness of the filtration pieces up to the bound
    try {
        for (unsigned n = 0; n <= bound; ++n) rep.dims.push_back(h.dim_upto(n));
        rep.local_finite = true;
    } catch (const Error&) {
        rep.local_finite = false;
    }

    // (2) order extraction + D-coefficients on the oriented rules (the
    // normal-word basis then has D-coefficients: constructive freeness)
    try {
        rep.order = order_generators(h.presentation().coefficient_set());
        rep.order_ok = true;
        for (const auto& rule : h.system().rules())
            for (const auto& [w, c] : rule.rhs.terms())
                if (!order_contains(rep.order, c)) {
                    rep.order_ok = false;
                    rep.order_failure = "rule coefficient " + c.str() + " lies outside D";
                }
        if (rep.order_ok && !rep.order.verify(h.domain())) {
            rep.order_ok = false;
            rep.order_failure = "witness expressions failed to re-evaluate";
        }
    } catch (const Error& e) {
        rep.order_ok = false;
        rep.order_failure = e.what();
    }

    // (3) gr order matches
    std::optional<AlgebraHandle> gr_handle;
    try {
        Presentation gr = associated_graded(h);
        gr_handle.emplace(AlgebraHandle::build(gr, h.confluence_bound()));
        rep.gr_order = order_generators(gr.coefficient_set());
        rep.gr_order_ok = true;
        for (const auto& g : rep.gr_order.generators) {
            bool found = false;
            for (const auto& bg : rep.order.generators)
                if (bg.name == g.name && bg.value == g.value) found = true;
            if (!found) {
                rep.gr_order_ok = false;
                rep.gr_failure = "gr order generator " + g.name + " not in D";
            }
        }
        for (const auto& rule : gr_handle->system().rules())
            for (const auto& [w, c] : rule.rhs.terms())
                if (!order_contains(rep.order, c)) {
                    rep.gr_order_ok = false;
                    rep.gr_failure = "gr rule coefficient " + c.str() + " lies outside D";
                }
    } catch (const Error& e) {
        rep.gr_order_ok = false;
        rep.gr_failure = e.what();
    }

    // (4) proxy: mean log-log slope of the gr dimension table on weights 3..bound
    if (gr_handle && rep.local_finite && bound >= 3) {
        double acc = 0;
        unsigned cnt = 0;
        for (unsigned n = 3; n <= bound; ++n) {
            double d = static_cast<double>(gr_handle->dim_upto(n));
            acc += std::log(d) / std::log(static_cast<double>(n));
            ++cnt;
        }
        rep.growth_slope = acc / cnt;
        rep.poly_growth_evidence =
            rep.growth_slope <= static_cast<double>(h.alphabet()->size()) + 1e-9;
    }

    // (5) reduction + PI witnesses per prime
    for (std::uint64_t p : primes) {
        CongenialityPrime cp;
        cp.p = p;
        try {
            unsigned long long top = 1;
            for (unsigned i = 0; i < i_max; ++i) top *= p;
            unsigned max_w = 1;
            for (const auto& g : h.alphabet()->generators())
                max_w = std::max(max_w, g.weight);
            const unsigned needed =
                std::max<unsigned>(h.confluence_bound(),
                                   static_cast<unsigned>(2ull * top * max_w));
            ReducedAlgebra red = order_and_reduce(h, p);
            AlgebraHandle rh = red.handle.confluence_bound() >= needed
                                   ? std::move(red.handle)
                                   : AlgebraHandle::build(red.handle.presentation(), needed);
            cp.reduced = true;
            cp.pass = true;
            for (GenIndex g = 0; g < h.alphabet()->size(); ++g) {
                auto w = central_witness(rh, g, i_max);
                if (!w || !verify_central_witness(rh, *w)) {
                    cp.pass = false;
                    cp.failure = "no verified central witness for generator " +
                                 h.alphabet()->gen(g).name;
                    break;
                }
                cp.witnesses.emplace_back(h.alphabet()->gen(g).name, std::move(*w));
            }
        } catch (const Error& e) {
            cp.reduced = false;
            cp.pass = false;
            cp.failure = e.what();
        }
        rep.primes.push_back(std::move(cp));
    }

    rep.pass = rep.local_finite && rep.order_ok && rep.gr_order_ok;
    for (const auto& cp : rep.primes) rep.pass = rep.pass && cp.pass;
    return rep;
}

} // namespace ncfilt
