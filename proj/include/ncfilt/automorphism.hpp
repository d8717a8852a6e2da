#pragma once

// Filtered automorphisms given by generator images, finite group generation
// by closure under composition, and the determinant of the induced linear map
// on the weight-1 slice.

#include <optional>
#include <unordered_map>

#include "ncfilt/linsolve.hpp"
#include "ncfilt/presentation.hpp"

namespace ncfilt {

class AutoMap {
public:
    AutoMap(AlgebraHandle algebra, std::vector<Poly> images, bool verified,
            std::optional<unsigned> order)
        : algebra_(std::move(algebra)), images_(std::move(images)), verified_(verified),
          order_(order) {}

    const AlgebraHandle& algebra() const { return algebra_; }
    const std::vector<Poly>& images() const { return images_; }
    bool verified() const { return verified_; }
    std::optional<unsigned> order() const { return order_; }

    bool is_identity() const {
        for (GenIndex i = 0; i < images_.size(); ++i) {
            if (images_[i].term_count() != 1) return false;
            const auto& [w, c] = *images_[i].terms().begin();
            if (w != Word{i} || !c.is_one()) return false;
        }
        return true;
    }

    // Substitute generator images and reduce to normal form.
    Poly apply(const Poly& p) const {
        Poly out = algebra_.zero();
        for (const auto& [w, c] : p.terms()) {
            Poly acc = algebra_.constant(Scalar::one(algebra_.domain()));
            for (GenIndex g : w) acc = algebra_.normal_form(free_mul(acc, images_[g]));
            out = out + c * acc;
        }
        return algebra_.normal_form(out);
    }

    // (this o g): x |-> this(g(x)). Matches the group law of A # G.
    AutoMap compose(const AutoMap& g) const {
        std::vector<Poly> images;
        images.reserve(images_.size());
        for (const Poly& im : g.images_) images.push_back(apply(im));
        return AutoMap(algebra_, std::move(images), verified_ && g.verified_, std::nullopt);
    }

    bool operator==(const AutoMap& o) const { return images_ == o.images_; }

    // Canonical key for closure bookkeeping.
    std::string image_key() const {
        std::string k;
        for (const Poly& im : images_) {
            k += im.str();
            k += ';';
        }
        return k;
    }

private:
    AlgebraHandle algebra_;
    std::vector<Poly> images_;
    bool verified_;
    std::optional<unsigned> order_;
};

inline AutoMap identity_automorphism(const AlgebraHandle& a) {
    std::vector<Poly> images;
    for (GenIndex i = 0; i < a.alphabet()->size(); ++i) images.push_back(a.gen(i));
    return AutoMap(a, std::move(images), true, 1);
}

// Verifies generator images: filtration-preserving (weight non-increasing per
// generator; weight-homogeneous under `strict_graded`), and every defining
// relation must map to zero in normal form. The order is found by iterated
// composition up to `order_cap`, else left unknown.
inline AutoMap mk_automorphism(const AlgebraHandle& a, std::vector<Poly> images,
                               bool strict_graded = false, unsigned order_cap = 256) {
    const Alphabet& alpha = *a.alphabet();
    if (images.size() != alpha.size())
        throw DomainMismatch("expected " + std::to_string(alpha.size()) + " images, got " +
                             std::to_string(images.size()));
    for (GenIndex i = 0; i < images.size(); ++i) {
        images[i] = a.normal_form(images[i]);
        const unsigned gw = alpha.gen(i).weight;
        for (const auto& [w, c] : images[i].terms()) {
            const unsigned ww = alpha.word_weight(w);
            if (ww > gw || (strict_graded && ww != gw))
                throw FiltrationViolated("image of " + alpha.gen(i).name + " has weight " +
                                         std::to_string(ww));
        }
    }
    AutoMap phi(a, images, false, std::nullopt);
    for (std::size_t ri = 0; ri < a.presentation().relations().size(); ++ri) {
        Poly image = phi.apply(a.presentation().relations()[ri]);
        if (!image.is_zero())
            throw RelationNotPreserved("relation " + std::to_string(ri) +
                                       " maps to nonzero normal form " + image.str());
    }
    std::optional<unsigned> order;
    {
        AutoMap power = phi;
        for (unsigned k = 1; k <= order_cap; ++k) {
            if (power.is_identity()) {
                order = k;
                break;
            }
            power = phi.compose(power);
        }
    }
    return AutoMap(a, std::move(images), true, order);
}

// Element list closed under composition, with multiplication and inverse
// tables. Index 0 is the identity.
class FiniteGroup {
public:
    static FiniteGroup generate(const std::vector<AutoMap>& gens, unsigned cap = 256) {
        if (gens.empty()) throw DomainMismatch("group generation needs at least one map");
        for (const AutoMap& g : gens) {
            if (!g.verified())
                throw DomainMismatch("group generators must be verified automorphisms");
            if (!(*g.algebra().alphabet() == *gens[0].algebra().alphabet()))
                throw DomainMismatch("group generators act on different algebras");
        }
        const AlgebraHandle& a = gens[0].algebra();
        std::vector<AutoMap> elements{identity_automorphism(a)};
        std::unordered_map<std::string, unsigned> index{{elements[0].image_key(), 0}};
        for (std::size_t cursor = 0; cursor < elements.size(); ++cursor) {
            for (const AutoMap& g : gens) {
                AutoMap next = elements[cursor].compose(g);
                std::string key = next.image_key();
                if (index.count(key)) continue;
                if (elements.size() >= cap)
                    throw CapExceeded("group closure exceeded cap " + std::to_string(cap));
                index.emplace(std::move(key), static_cast<unsigned>(elements.size()));
                elements.push_back(std::move(next));
            }
        }
        const std::size_t n = elements.size();
        std::vector<std::vector<unsigned>> mul(n, std::vector<unsigned>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                std::string key = elements[i].compose(elements[j]).image_key();
                auto it = index.find(key);
                if (it == index.end())
                    throw CapExceeded("closure is not closed; increase the cap");
                mul[i][j] = it->second;
            }
        std::vector<unsigned> inv(n);
        for (std::size_t i = 0; i < n; ++i) {
            bool found = false;
            for (std::size_t j = 0; j < n; ++j)
                if (mul[i][j] == 0) {
                    inv[i] = static_cast<unsigned>(j);
                    found = true;
                }
            if (!found) throw CapExceeded("element without inverse in closure");
        }
        return FiniteGroup(std::move(elements), std::move(mul), std::move(inv));
    }

    std::size_t order() const { return elements_.size(); }
    const AutoMap& element(unsigned i) const { return elements_.at(i); }
    unsigned multiply(unsigned i, unsigned j) const { return mul_.at(i).at(j); }
    unsigned inverse(unsigned i) const { return inv_.at(i); }
    const AlgebraHandle& algebra() const { return elements_[0].algebra(); }

    // |G| as a scalar of the coefficient domain; zero iff char divides |G|.
    Scalar order_scalar() const {
        const ScalarDomain dom = algebra().domain();
        Scalar s = Scalar::zero(dom);
        const Scalar one = Scalar::one(dom);
        for (std::size_t i = 0; i < elements_.size(); ++i) s = s + one;
        return s;
    }
    bool order_invertible() const { return !order_scalar().is_zero(); }

private:
    FiniteGroup(std::vector<AutoMap> elements, std::vector<std::vector<unsigned>> mul,
                std::vector<unsigned> inv)
        : elements_(std::move(elements)), mul_(std::move(mul)), inv_(std::move(inv)) {}

    std::vector<AutoMap> elements_;
    std::vector<std::vector<unsigned>> mul_;
    std::vector<unsigned> inv_;
};

// Determinant of the induced linear map on the span of weight-1 generators.
inline Scalar linear_determinant(const AutoMap& phi) {
    const AlgebraHandle& a = phi.algebra();
    const Alphabet& alpha = *a.alphabet();
    std::vector<GenIndex> slice;
    for (GenIndex i = 0; i < alpha.size(); ++i)
        if (alpha.gen(i).weight == 1) slice.push_back(i);
    std::vector<int> pos(alpha.size(), -1);
    for (std::size_t k = 0; k < slice.size(); ++k) pos[slice[k]] = static_cast<int>(k);

    ExactMatrix m(slice.size(), slice.size(), a.domain());
    for (std::size_t k = 0; k < slice.size(); ++k) {
        const Poly& im = phi.images()[slice[k]];
        for (const auto& [w, c] : im.terms()) {
            if (alpha.word_weight(w) == 0) continue; // affine part, not linear
            if (w.size() != 1 || pos[w[0]] < 0)
                throw NotLinearizable("image of " + alpha.gen(slice[k]).name +
                                      " has the weight-1 term " + alpha.word_str(w));
            m.at(static_cast<std::size_t>(pos[w[0]]), k) = c;
        }
    }
    if (slice.empty()) return Scalar::one(a.domain());
    return linalg::determinant(m);
}

} // namespace ncfilt
