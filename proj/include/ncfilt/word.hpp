#pragma once

// Words over a weighted, parity-tagged alphabet, and the monomial order
// (weight, then length, then left-lexicographic by generator precedence).
// The order is total and compatible with concatenation on both sides.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ncfilt/errors.hpp"

namespace ncfilt {

using GenIndex = std::uint16_t;
using Word = std::vector<GenIndex>;

struct GeneratorInfo {
    std::string name;
    unsigned weight = 1;     // filtration degree; 0 only for group-element generators
    unsigned parity = 0;     // Z_2-degree
    unsigned precedence = 0; // position in the total order on generators

    bool operator==(const GeneratorInfo&) const = default;
};

class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<GeneratorInfo> gens) : gens_(std::move(gens)) {
        for (std::size_t i = 0; i < gens_.size(); ++i) {
            for (std::size_t j = i + 1; j < gens_.size(); ++j) {
                if (gens_[i].name == gens_[j].name)
                    throw DomainMismatch("duplicate generator name " + gens_[i].name);
                if (gens_[i].precedence == gens_[j].precedence)
                    throw DomainMismatch("duplicate precedence for " + gens_[i].name +
                                         " and " + gens_[j].name);
            }
        }
    }

    // Generators with declaration-order precedence.
    static Alphabet with_default_precedence(std::vector<GeneratorInfo> gens) {
        for (std::size_t i = 0; i < gens.size(); ++i)
            gens[i].precedence = static_cast<unsigned>(i);
        return Alphabet(std::move(gens));
    }

    std::size_t size() const { return gens_.size(); }
    const GeneratorInfo& gen(GenIndex i) const { return gens_.at(i); }
    const std::vector<GeneratorInfo>& generators() const { return gens_; }

    int index_of(const std::string& name) const {
        for (std::size_t i = 0; i < gens_.size(); ++i)
            if (gens_[i].name == name) return static_cast<int>(i);
        return -1;
    }

    unsigned word_weight(const Word& w) const {
        unsigned s = 0;
        for (GenIndex i : w) s += gens_.at(i).weight;
        return s;
    }

    unsigned word_parity(const Word& w) const {
        unsigned s = 0;
        for (GenIndex i : w) s += gens_.at(i).parity;
        return s & 1u;
    }

    // Monomial order: weight, then length, then precedence-lexicographic.
    bool word_less(const Word& a, const Word& b) const {
        const unsigned wa = word_weight(a), wb = word_weight(b);
        if (wa != wb) return wa < wb;
        if (a.size() != b.size()) return a.size() < b.size();
        for (std::size_t i = 0; i < a.size(); ++i) {
            const unsigned pa = gens_[a[i]].precedence, pb = gens_[b[i]].precedence;
            if (pa != pb) return pa < pb;
        }
        return false;
    }

    std::string word_str(const Word& w) const {
        if (w.empty()) return "1";
        std::string s;
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (i) s += "*";
            s += gens_[w[i]].name;
        }
        return s;
    }

    bool operator==(const Alphabet& o) const { return gens_ == o.gens_; }

private:
    std::vector<GeneratorInfo> gens_;
};

using AlphabetPtr = std::shared_ptr<const Alphabet>;

inline Word word_concat(const Word& a, const Word& b) {
    Word r;
    r.reserve(a.size() + b.size());
    r.insert(r.end(), a.begin(), a.end());
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

inline Word word_pow(GenIndex g, unsigned e) { return Word(e, g); }

struct WordHash {
    std::size_t operator()(const Word& w) const {
        std::size_t h = 1469598103934665603ull;
        for (GenIndex g : w) {
            h ^= g + 1;
            h *= 1099511628211ull;
        }
        return h;
    }
};

} // namespace ncfilt
