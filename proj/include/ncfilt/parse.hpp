#pragma once

// The presentation file format (.alg) and the relation expression grammar:
// identifiers, `*`, `+`, `-`, `^`, scalar literals (integers, a/b, zeta(n)),
// and parentheses; whitespace insignificant. Sections are INI-like; `#`
// starts a comment. Parse errors carry line and column.

#include <fstream>

#include "ncfilt/zoo.hpp"

namespace ncfilt {

// ---------------------------------------------------------------------------
// expression parser
// ---------------------------------------------------------------------------

namespace parsedetail {

struct Cursor {
    const std::string& text;
    std::size_t pos = 0;
    int line = 1;
    int col = 1;

    explicit Cursor(const std::string& t, int line0 = 1, int col0 = 1)
        : text(t), line(line0), col(col0) {}

    bool eof() const { return pos >= text.size(); }
    char peek() const { return eof() ? '\0' : text[pos]; }
    char get() {
        char c = text[pos++];
        if (c == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        return c;
    }
    void skip_ws() {
        while (!eof() && (peek() == ' ' || peek() == '\t')) get();
    }
    [[noreturn]] void fail(const std::string& expected) const {
        throw ParseError(line, col, expected);
    }
};

// expr := term (('+'|'-') term)*
// term := factor ('*' factor)*
// factor := ('-'|'+')* primary ('^' nat)?
// primary := nat ('/' nat)? | zeta '(' nat ')' | ident | '(' expr ')'
class ExprParser {
public:
    ExprParser(Cursor& c, const AlphabetPtr& alpha, const ScalarDomain& dom,
               bool allow_generators)
        : c_(c), alpha_(alpha), dom_(dom), allow_gens_(allow_generators) {}

    Poly parse() {
        Poly p = expr();
        c_.skip_ws();
        if (!c_.eof()) c_.fail("end of expression");
        return p;
    }

private:
    Poly expr() {
        Poly acc = term();
        for (;;) {
            c_.skip_ws();
            if (c_.peek() == '+') {
                c_.get();
                acc = acc + term();
            } else if (c_.peek() == '-') {
                c_.get();
                acc = acc - term();
            } else {
                return acc;
            }
        }
    }

    Poly term() {
        Poly acc = factor();
        for (;;) {
            c_.skip_ws();
            if (c_.peek() == '*') {
                c_.get();
                acc = free_mul(acc, factor());
            } else {
                return acc;
            }
        }
    }

    Poly factor() {
        c_.skip_ws();
        bool neg = false;
        while (c_.peek() == '-' || c_.peek() == '+') {
            if (c_.get() == '-') neg = !neg;
            c_.skip_ws();
        }
        Poly p = primary();
        c_.skip_ws();
        if (c_.peek() == '^') {
            c_.get();
            long long e = natural();
            Poly acc = Poly::constant(alpha_, Scalar::one(dom_));
            for (long long i = 0; i < e; ++i) acc = free_mul(acc, p);
            p = std::move(acc);
        }
        if (neg) p = -Scalar::one(dom_) * p;
        return p;
    }

    Poly primary() {
        c_.skip_ws();
        const char ch = c_.peek();
        if (ch == '(') {
            c_.get();
            Poly p = expr();
            c_.skip_ws();
            if (c_.peek() != ')') c_.fail("')'");
            c_.get();
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            cpp_int num = integer_literal();
            c_.skip_ws();
            if (c_.peek() == '/') {
                c_.get();
                c_.skip_ws();
                if (!std::isdigit(static_cast<unsigned char>(c_.peek())))
                    c_.fail("denominator");
                cpp_int den = integer_literal();
                if (den == 0) c_.fail("nonzero denominator");
                return Poly::constant(
                    alpha_, Scalar::rational(cpp_rational(num, den)).embed_in(dom_));
            }
            return Poly::constant(alpha_, Scalar::integer(num).embed_in(dom_));
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            const int at_line = c_.line, at_col = c_.col;
            std::string id = identifier();
            if (id == "zeta") {
                c_.skip_ws();
                if (c_.peek() != '(') c_.fail("'(' after zeta");
                c_.get();
                long long n = natural();
                c_.skip_ws();
                if (c_.peek() != ')') c_.fail("')'");
                c_.get();
                return Poly::constant(
                    alpha_, mk_root_of_unity(static_cast<unsigned>(n)).embed_in(dom_));
            }
            int gi = alpha_->index_of(id);
            if (gi < 0 || !allow_gens_)
                throw UnknownGenerator("'" + id + "' at line " + std::to_string(at_line) +
                                       ", col " + std::to_string(at_col));
            return Poly::generator(alpha_, static_cast<GenIndex>(gi), dom_);
        }
        c_.fail("a scalar literal, generator, or '('");
    }

    std::string identifier() {
        std::string s;
        while (!c_.eof()) {
            char ch = c_.peek();
            if (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '\'')
                s += c_.get();
            else
                break;
        }
        return s;
    }

    cpp_int integer_literal() {
        std::string s;
        while (!c_.eof() && std::isdigit(static_cast<unsigned char>(c_.peek())))
            s += c_.get();
        return cpp_int(s);
    }

    long long natural() {
        c_.skip_ws();
        if (!std::isdigit(static_cast<unsigned char>(c_.peek()))) c_.fail("a number");
        return static_cast<long long>(integer_literal());
    }

    Cursor& c_;
    AlphabetPtr alpha_;
    ScalarDomain dom_;
    bool allow_gens_;
};

} // namespace parsedetail

inline Poly parse_expression(const std::string& text, const AlphabetPtr& alpha,
                             const ScalarDomain& dom, int line0 = 1, int col0 = 1) {
    parsedetail::Cursor c(text, line0, col0);
    return parsedetail::ExprParser(c, alpha, dom, true).parse();
}

inline Scalar parse_scalar(const std::string& text, const ScalarDomain& dom,
                           int line0 = 1, int col0 = 1) {
    static const AlphabetPtr empty = std::make_shared<Alphabet>();
    parsedetail::Cursor c(text, line0, col0);
    Poly p = parsedetail::ExprParser(c, empty, dom, false).parse();
    if (p.is_zero()) return Scalar::zero(dom);
    return p.coeff(Word{});
}

// ---------------------------------------------------------------------------
// .alg files
// ---------------------------------------------------------------------------

struct ParsedGroup {
    std::vector<std::string> generator_names;
    unsigned cap = 256;
};

struct ParsedFile {
    std::string name;
    Presentation presentation;
    // automorphism name -> one image per generator, in generator order
    std::vector<std::pair<std::string, std::vector<Poly>>> automorphisms;
    std::vector<std::pair<std::string, ParsedGroup>> groups;

    const std::vector<Poly>* automorphism(const std::string& n) const {
        for (const auto& [name, images] : automorphisms)
            if (name == n) return &images;
        return nullptr;
    }
    const ParsedGroup* group(const std::string& n) const {
        for (const auto& [name, g] : groups)
            if (name == n) return &g;
        return nullptr;
    }
};

ParsedFile parse_presentation(const std::string& text, const std::string& base_dir = "");

namespace parsedetail {

struct Line {
    int number;
    std::string text;
};

struct Section {
    std::string header; // e.g. "algebra", "automorphism neg"
    int header_line;
    std::vector<Line> lines;
};

inline std::vector<Section> split_sections(const std::string& text) {
    std::vector<Section> out;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        auto notspace = [](unsigned char c) { return !std::isspace(c); };
        auto b = std::find_if(line.begin(), line.end(), notspace);
        auto e = std::find_if(line.rbegin(), line.rend(), notspace).base();
        line = (b < e) ? std::string(b, e) : std::string();
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ParseError(lineno, 1, "']' closing the section header");
            out.push_back(Section{line.substr(1, line.size() - 2), lineno, {}});
        } else {
            if (out.empty()) throw ParseError(lineno, 1, "a [section] header first");
            out.back().lines.push_back(Line{lineno, line});
        }
    }
    return out;
}

inline std::pair<std::string, std::string> split_kv(const Line& l) {
    auto eq = l.text.find('=');
    if (eq == std::string::npos)
        throw ParseError(l.number, 1, "'key = value'");
    auto trim = [](std::string s) {
        auto notspace = [](unsigned char c) { return !std::isspace(c); };
        auto b = std::find_if(s.begin(), s.end(), notspace);
        auto e = std::find_if(s.rbegin(), s.rend(), notspace).base();
        return (b < e) ? std::string(b, e) : std::string();
    };
    return {trim(l.text.substr(0, eq)), trim(l.text.substr(eq + 1))};
}

inline std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    for (auto& x : out) {
        auto notspace = [](unsigned char c) { return !std::isspace(c); };
        auto b = std::find_if(x.begin(), x.end(), notspace);
        auto e = std::find_if(x.rbegin(), x.rend(), notspace).base();
        x = (b < e) ? std::string(b, e) : std::string();
    }
    out.erase(std::remove_if(out.begin(), out.end(),
                             [](const std::string& x) { return x.empty(); }),
              out.end());
    return out;
}

inline ScalarDomain parse_field(const std::string& s, int line) {
    if (s == "Q") return ScalarDomain::rational();
    if (s.rfind("Q(zeta(", 0) == 0 && s.size() > 9 && s.substr(s.size() - 2) == "))") {
        std::string n = s.substr(7, s.size() - 9);
        return ScalarDomain::cyclotomic(static_cast<unsigned>(std::stoul(n)));
    }
    if (s.rfind("F(", 0) == 0 && s.back() == ')') {
        std::string p = s.substr(2, s.size() - 3);
        std::uint64_t prime = std::stoull(p);
        if (!is_prime_u64(prime)) throw ParseError(line, 1, "a prime modulus in F(p)");
        return ScalarDomain::prime_field(prime);
    }
    throw ParseError(line, 1, "a field of the form Q, Q(zeta(n)), or F(p)");
}

inline Presentation build_family(const Section& fam, const ScalarDomain& dom,
                                 const std::string& base_dir);

} // namespace parsedetail

inline ParsedFile parse_presentation(const std::string& text, const std::string& base_dir) {
    using namespace parsedetail;
    std::vector<Section> sections = split_sections(text);

    const Section* algebra = nullptr;
    const Section* relations = nullptr;
    const Section* family = nullptr;
    for (const auto& s : sections) {
        if (s.header == "algebra") algebra = &s;
        else if (s.header == "relations") relations = &s;
        else if (s.header == "family") family = &s;
    }
    if (!algebra) throw ParseError(1, 1, "an [algebra] section");
    if (!!relations == !!family)
        throw ParseError(algebra->header_line, 1,
                         "exactly one of [relations] or [family]");

    std::string name = "algebra";
    std::optional<ScalarDomain> dom;
    std::vector<GeneratorInfo> gens;
    std::vector<std::string> precedence;
    for (const auto& l : algebra->lines) {
        auto [k, v] = split_kv(l);
        if (k == "name") {
            name = v;
        } else if (k == "field") {
            dom = parse_field(v, l.number);
        } else if (k == "generators") {
            for (const std::string& item : split_list(v)) {
                GeneratorInfo g;
                std::size_t c1 = item.find(':');
                g.name = item.substr(0, c1);
                if (c1 != std::string::npos) {
                    std::size_t c2 = item.find(':', c1 + 1);
                    g.weight = static_cast<unsigned>(
                        std::stoul(item.substr(c1 + 1, c2 - c1 - 1)));
                    if (c2 != std::string::npos)
                        g.parity = static_cast<unsigned>(std::stoul(item.substr(c2 + 1))) & 1u;
                }
                gens.push_back(std::move(g));
            }
        } else if (k == "precedence") {
            precedence = split_list(v);
        } else {
            throw ParseError(l.number, 1, "one of name/field/generators/precedence");
        }
    }
    if (!dom) throw ParseError(algebra->header_line, 1, "a field declaration");

    Presentation pres = [&]() -> Presentation {
        if (family) {
            if (!gens.empty())
                throw ParseError(family->header_line, 1,
                                 "no [algebra] generators together with [family] "
                                 "(the constructor defines them)");
            return build_family(*family, *dom, base_dir);
        }
        if (gens.empty())
            throw ParseError(algebra->header_line, 1, "a generators declaration");
        for (std::size_t i = 0; i < gens.size(); ++i) gens[i].precedence = static_cast<unsigned>(i);
        if (!precedence.empty()) {
            if (precedence.size() != gens.size())
                throw ParseError(algebra->header_line, 1,
                                 "a precedence list naming every generator once");
            for (std::size_t rank = 0; rank < precedence.size(); ++rank) {
                bool found = false;
                for (auto& g : gens)
                    if (g.name == precedence[rank]) {
                        g.precedence = static_cast<unsigned>(rank);
                        found = true;
                    }
                if (!found)
                    throw UnknownGenerator("'" + precedence[rank] + "' in precedence list");
            }
        }
        auto alpha = std::make_shared<Alphabet>(gens);
        std::vector<Poly> rels;
        for (const auto& l : relations->lines)
            rels.push_back(parse_expression(l.text, alpha, *dom, l.number));
        return Presentation(alpha, *dom, std::move(rels));
    }();

    ParsedFile out{name, std::move(pres), {}, {}};

    for (const auto& s : sections) {
        if (s.header.rfind("automorphism ", 0) == 0) {
            std::string aname = s.header.substr(13);
            std::vector<Poly> images(out.presentation.alphabet()->size(),
                                     Poly::zero(out.presentation.alphabet(),
                                                out.presentation.domain()));
            std::vector<bool> seen(images.size(), false);
            for (const auto& l : s.lines) {
                auto arrow = l.text.find("->");
                if (arrow == std::string::npos)
                    throw ParseError(l.number, 1, "'generator -> expression'");
                std::string gname = l.text.substr(0, arrow);
                gname.erase(std::remove_if(gname.begin(), gname.end(),
                                           [](unsigned char c) { return std::isspace(c); }),
                            gname.end());
                int gi = out.presentation.alphabet()->index_of(gname);
                if (gi < 0)
                    throw UnknownGenerator("'" + gname + "' at line " +
                                           std::to_string(l.number));
                images[gi] = parse_expression(l.text.substr(arrow + 2),
                                              out.presentation.alphabet(),
                                              out.presentation.domain(), l.number);
                seen[gi] = true;
            }
            for (std::size_t i = 0; i < seen.size(); ++i)
                if (!seen[i]) // unmentioned generators are fixed
                    images[i] = Poly::generator(out.presentation.alphabet(),
                                                static_cast<GenIndex>(i),
                                                out.presentation.domain());
            out.automorphisms.emplace_back(std::move(aname), std::move(images));
        } else if (s.header.rfind("group ", 0) == 0) {
            std::string gname = s.header.substr(6);
            ParsedGroup pg;
            for (const auto& l : s.lines) {
                auto [k, v] = split_kv(l);
                if (k == "generators") pg.generator_names = split_list(v);
                else if (k == "cap") pg.cap = static_cast<unsigned>(std::stoul(v));
                else throw ParseError(l.number, 1, "generators or cap");
            }
            for (const std::string& an : pg.generator_names)
                if (!out.automorphism(an))
                    throw UnknownGenerator("automorphism '" + an + "' named in group " +
                                           gname);
            out.groups.emplace_back(std::move(gname), std::move(pg));
        } else if (s.header != "algebra" && s.header != "relations" && s.header != "family") {
            throw ParseError(s.header_line, 1, "a known section kind");
        }
    }
    return out;
}

inline ParsedFile load_alg_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("FileNotFound", "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    std::string dir;
    if (auto slash = path.find_last_of('/'); slash != std::string::npos)
        dir = path.substr(0, slash + 1);
    return parse_presentation(ss.str(), dir);
}

namespace parsedetail {

inline AlphabetPtr staging_alphabet(const std::vector<std::string>& names) {
    std::vector<GeneratorInfo> gens;
    for (std::size_t i = 0; i < names.size(); ++i)
        gens.push_back({names[i], 1, 0, static_cast<unsigned>(i)});
    return std::make_shared<Alphabet>(Alphabet(std::move(gens)));
}

inline Presentation build_family(const Section& fam, const ScalarDomain& dom,
                                 const std::string& base_dir) {
    std::string fname;
    std::map<std::string, std::pair<std::string, int>> kv; // key -> (value, line)
    std::vector<Line> bracket_lines, delta_lines;
    for (const auto& l : fam.lines) {
        auto [k, v] = split_kv(l);
        if (k.rfind("bracket(", 0) == 0) bracket_lines.push_back(l);
        else if (k.rfind("delta(", 0) == 0) delta_lines.push_back(l);
        else if (k == "name") fname = v;
        else kv[k] = {v, l.number};
    }
    auto need = [&](const std::string& k) -> std::pair<std::string, int> {
        auto it = kv.find(k);
        if (it == kv.end())
            throw ParseError(fam.header_line, 1, "family parameter '" + k + "'");
        return it->second;
    };
    auto get_scalar = [&](const std::string& k) {
        auto [v, ln] = need(k);
        return parse_scalar(v, dom, ln);
    };
    auto maybe_scalar = [&](const std::string& k) -> std::optional<Scalar> {
        auto it = kv.find(k);
        if (it == kv.end()) return std::nullopt;
        return parse_scalar(it->second.first, dom, it->second.second);
    };

    if (fname == "quantum_plane" || fname == "quantum_weyl") {
        return gl2_family(fname == "quantum_plane" ? Gl2Kind::QuantumPlane
                                                   : Gl2Kind::QuantumWeyl,
                          get_scalar("q"));
    }
    if (fname == "jordan") return gl2_family(Gl2Kind::Jordan);
    if (fname == "deformed_jordan") return gl2_family(Gl2Kind::DeformedJordan);
    if (fname == "down_up") {
        std::optional<std::pair<Scalar, Scalar>> roots;
        auto r = maybe_scalar("r"), s = maybe_scalar("s");
        if (!!r != !!s)
            throw ParseError(fam.header_line, 1, "both roots r and s, or neither");
        if (r) roots = std::make_pair(*r, *s);
        return down_up(get_scalar("alpha"), get_scalar("beta"), get_scalar("gamma"),
                       roots);
    }
    if (fname == "quantized_weyl") {
        auto [nv, nl] = need("n");
        (void)nl;
        unsigned n = static_cast<unsigned>(std::stoul(nv));
        const Scalar one = Scalar::one(dom);
        std::vector<std::vector<Scalar>> q(n, std::vector<Scalar>(n, one));
        std::vector<Scalar> gamma;
        for (unsigned i = 1; i <= n; ++i)
            gamma.push_back(get_scalar("gamma_" + std::to_string(i)));
        for (unsigned i = 1; i <= n; ++i)
            for (unsigned j = i + 1; j <= n; ++j) {
                auto it = kv.find("q_" + std::to_string(i) + "_" + std::to_string(j));
                if (it == kv.end()) continue;
                Scalar v = parse_scalar(it->second.first, dom, it->second.second);
                q[i - 1][j - 1] = v;
                q[j - 1][i - 1] = v.inverse();
            }
        return quantized_weyl(n, q, gamma, dom);
    }
    if (fname == "symplectic_rank1") {
        auto [mv, ml] = need("m");
        (void)ml;
        unsigned m = static_cast<unsigned>(std::stoul(mv));
        std::vector<Scalar> c;
        for (unsigned i = 1; i < m; ++i) c.push_back(get_scalar("c_" + std::to_string(i)));
        return symplectic_reflection_rank1(m, get_scalar("t"), c);
    }
    if (fname == "enveloping_super") {
        std::vector<std::string> names = split_list(need("vars").first);
        std::vector<std::string> ps = split_list(need("parities").first);
        if (ps.size() != names.size())
            throw ParseError(fam.header_line, 1, "one parity per variable");
        std::vector<unsigned> parities;
        for (const auto& p : ps) parities.push_back(std::stoul(p) & 1u);
        const std::size_t n = names.size();
        auto stage = std::make_shared<Alphabet>([&] {
            std::vector<GeneratorInfo> gs;
            for (std::size_t i = 0; i < n; ++i)
                gs.push_back({names[i], 1, parities[i], static_cast<unsigned>(i)});
            return Alphabet(std::move(gs));
        }());
        std::vector<std::vector<std::vector<Scalar>>> c(
            n, std::vector<std::vector<Scalar>>(n, std::vector<Scalar>(n, Scalar::zero(dom))));
        std::vector<std::vector<bool>> given(n, std::vector<bool>(n, false));
        for (const auto& l : bracket_lines) {
            auto [k, v] = split_kv(l);
            std::string inner = k.substr(8, k.size() - 9); // bracket( ... )
            std::vector<std::string> ab = split_list(inner);
            if (ab.size() != 2) throw ParseError(l.number, 1, "bracket(a, b) = expr");
            int ia = stage->index_of(ab[0]), ib = stage->index_of(ab[1]);
            if (ia < 0 || ib < 0)
                throw UnknownGenerator("'" + inner + "' at line " + std::to_string(l.number));
            Poly expr = parse_expression(v, stage, dom, l.number);
            for (const auto& [w, coeff] : expr.terms()) {
                if (w.size() != 1)
                    throw ParseError(l.number, 1,
                                     "a linear combination of basis generators");
                c[ia][ib][w[0]] = coeff;
            }
            given[ia][ib] = true;
        }
        // fill unspecified opposite brackets by super skew-symmetry
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (!given[i][j] || given[j][i]) continue;
                const bool odd = (parities[i] & parities[j] & 1u) != 0;
                for (std::size_t p = 0; p < n; ++p) {
                    Scalar v = -c[i][j][p];
                    if (odd) v = -v;
                    c[j][i][p] = v;
                }
                given[j][i] = true;
            }
        return enveloping_super(names, parities, c, dom);
    }
    if (fname == "iterated_ore") {
        std::vector<std::string> names = split_list(need("vars").first);
        auto stage = staging_alphabet(names);
        std::vector<std::vector<Poly>> delta(names.size());
        for (std::size_t k = 0; k < names.size(); ++k)
            delta[k].assign(k, Poly::zero(stage, dom));
        for (const auto& l : delta_lines) {
            auto [key, v] = split_kv(l);
            std::string inner = key.substr(6, key.size() - 7); // delta( ... )
            std::vector<std::string> ab = split_list(inner);
            if (ab.size() != 2) throw ParseError(l.number, 1, "delta(xk, xj) = expr");
            int ik = stage->index_of(ab[0]), ij = stage->index_of(ab[1]);
            if (ik < 0 || ij < 0)
                throw UnknownGenerator("'" + inner + "' at line " + std::to_string(l.number));
            if (ij >= ik) throw ParseError(l.number, 1, "delta of a later variable");
            delta[ik][ij] = parse_expression(v, stage, dom, l.number);
        }
        return iterated_ore(names, delta, dom);
    }
    if (fname == "tensor_product") {
        std::string left = need("left").first, right = need("right").first;
        ParsedFile lf = load_alg_file(base_dir + left);
        ParsedFile rf = load_alg_file(base_dir + right);
        return tensor_product(lf.presentation, rf.presentation);
    }
    throw UnknownFamily("'" + fname + "'");
}

} // namespace parsedetail

// ---------------------------------------------------------------------------
// serialization back to .alg (round-trip form: explicit relations)
// ---------------------------------------------------------------------------

inline std::string presentation_to_alg(const Presentation& p, const std::string& name) {
    std::ostringstream out;
    out << "[algebra]\n";
    out << "name = " << name << "\n";
    out << "field = " << p.domain().str() << "\n";
    out << "generators = ";
    const auto& gens = p.alphabet()->generators();
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (i) out << ", ";
        out << gens[i].name << ":" << gens[i].weight << ":" << gens[i].parity;
    }
    out << "\n";
    bool default_prec = true;
    for (std::size_t i = 0; i < gens.size(); ++i)
        if (gens[i].precedence != i) default_prec = false;
    if (!default_prec) {
        std::vector<std::size_t> by_rank(gens.size());
        for (std::size_t i = 0; i < gens.size(); ++i) by_rank[gens[i].precedence] = i;
        out << "precedence = ";
        for (std::size_t r = 0; r < by_rank.size(); ++r) {
            if (r) out << ", ";
            out << gens[by_rank[r]].name;
        }
        out << "\n";
    }
    out << "\n[relations]\n";
    for (const Poly& r : p.canonical_relations()) out << r.str() << "\n";
    return out.str();
}

} // namespace ncfilt
