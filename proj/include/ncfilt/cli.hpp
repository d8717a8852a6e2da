#pragma once

// Command dispatch for the ncfilt tool. Every command prints one JSON
// document to the output stream. Exit codes: 0 = success / verified,
// 1 = Inconclusive / NotFound / refuted, 2 = error (usage errors go to the
// error stream).

#include <CLI11.hpp>

#include "ncfilt/report.hpp"

namespace ncfilt {
namespace cli {

namespace detail {

inline Json report_head(const std::string& command, const ParsedFile& f) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = command;
    j["algebra"] = f.name;
    return j;
}

inline AlgebraHandle build_handle(const ParsedFile& f, unsigned bound) {
    return AlgebraHandle::build(f.presentation, bound);
}

inline FiniteGroup build_group(const ParsedFile& f, const AlgebraHandle& h,
                               const std::string& name, unsigned cap_override = 0) {
    const ParsedGroup* pg = f.group(name);
    if (!pg) throw UnknownGenerator("group '" + name + "' not defined in the file");
    std::vector<AutoMap> gens;
    for (const std::string& an : pg->generator_names) {
        const std::vector<Poly>* images = f.automorphism(an);
        if (!images) throw UnknownGenerator("automorphism '" + an + "'");
        std::vector<Poly> remapped;
        for (const Poly& im : *images) {
            Poly p = h.zero();
            for (const auto& [w, c] : im.terms()) p.add_term(w, c);
            remapped.push_back(std::move(p));
        }
        gens.push_back(mk_automorphism(h, std::move(remapped)));
    }
    return FiniteGroup::generate(gens, cap_override ? cap_override : pg->cap);
}

inline AutoMap build_automorphism(const ParsedFile& f, const AlgebraHandle& h,
                                  const std::string& name) {
    const std::vector<Poly>* images = f.automorphism(name);
    if (!images) throw UnknownGenerator("automorphism '" + name + "' not defined");
    std::vector<Poly> remapped;
    for (const Poly& im : *images) {
        Poly p = h.zero();
        for (const auto& [w, c] : im.terms()) p.add_term(w, c);
        remapped.push_back(std::move(p));
    }
    return mk_automorphism(h, std::move(remapped));
}

// skew expression: additive terms `polyexpr [# groupindex]`
inline SkewPoly parse_skew_expression(const std::string& text, const AlgebraHandle& h) {
    SkewPoly acc = SkewPoly::zero(h);
    std::size_t pos = 0;
    int sign = 1;
    while (pos < text.size()) {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos >= text.size()) break;
        if (text[pos] == '+') { sign = 1; ++pos; continue; }
        if (text[pos] == '-') { sign = -sign; ++pos; continue; }
        int depth = 0;
        std::size_t start = pos;
        std::size_t hash = std::string::npos;
        while (pos < text.size()) {
            char c = text[pos];
            if (c == '(') ++depth;
            else if (c == ')') --depth;
            else if (c == '#' && depth == 0) hash = pos;
            else if ((c == '+' || c == '-') && depth == 0) break;
            ++pos;
        }
        std::string term = text.substr(start, pos - start);
        unsigned group = 0;
        std::string poly_part = term;
        if (hash != std::string::npos) {
            poly_part = text.substr(start, hash - start);
            std::string gidx = text.substr(hash + 1, pos - hash - 1);
            group = static_cast<unsigned>(std::stoul(gidx));
        }
        Poly p = parse_expression(poly_part, h.alphabet(), h.domain());
        if (sign < 0) p = -Scalar::one(h.domain()) * p;
        acc = acc + SkewPoly::from_poly(h, p, group);
        sign = 1;
    }
    return acc;
}

inline Json skew_to_json(const SkewPoly& s, const Alphabet& alpha) {
    Json terms = Json::array();
    for (const auto& [k, c] : s.terms()) {
        Json t;
        t["word"] = word_to_json(alpha, k.word);
        t["group"] = k.group;
        t["coeff"] = c.str();
        terms.push_back(std::move(t));
    }
    return terms;
}

} // namespace detail

inline int run(const std::vector<std::string>& argv, std::ostream& out,
               std::ostream& err) {
    CLI::App app{"exact workbench for filtered algebra presentations"};
    app.fallthrough(true);
    app.require_subcommand(1);
    unsigned long long seed = 0; // accepted for harness parity; reports never vary
    app.add_option("--seed", seed, "fix randomized sampling in the dev harness");

    std::string file, cert_path, group_name, auto_name, gen_name, lhs, rhs, primes_csv;
    unsigned bound = 6, upto = 6, cap = 0, imax = 1, nn = 2, mm = 2;
    std::uint64_t prime = 0;

    CLI::App* c_pbw = app.add_subcommand("check-pbw", "orient and check confluence");
    c_pbw->add_option("file", file)->required();
    c_pbw->add_option("--bound", bound);

    CLI::App* c_dims = app.add_subcommand("dims", "dimension table of filtration pieces");
    c_dims->add_option("file", file)->required();
    c_dims->add_option("--upto", upto);

    CLI::App* c_gr = app.add_subcommand("gr", "associated graded presentation");
    c_gr->add_option("file", file)->required();
    c_gr->add_option("--bound", bound);

    CLI::App* c_auto = app.add_subcommand("auto-verify", "verify an automorphism");
    c_auto->add_option("file", file)->required();
    c_auto->add_option("--auto", auto_name)->required();
    c_auto->add_option("--bound", bound);

    CLI::App* c_group = app.add_subcommand("group", "generate a finite group");
    c_group->add_option("file", file)->required();
    c_group->add_option("--group", group_name)->required();
    c_group->add_option("--cap", cap);
    c_group->add_option("--bound", bound);

    CLI::App* c_skew = app.add_subcommand("skew-mul", "multiply in A#G");
    c_skew->add_option("file", file)->required();
    c_skew->add_option("--group", group_name)->required();
    c_skew->add_option("--lhs", lhs)->required();
    c_skew->add_option("--rhs", rhs)->required();
    c_skew->add_option("--bound", bound);

    CLI::App* c_modp = app.add_subcommand("modp", "extract the order and reduce mod p");
    c_modp->add_option("file", file)->required();
    c_modp->add_option("--prime", prime)->required();
    c_modp->add_option("--bound", bound);

    CLI::App* c_central = app.add_subcommand("central-witness", "PI witness over F_p");
    c_central->add_option("file", file)->required();
    c_central->add_option("--prime", prime)->required();
    c_central->add_option("--gen", gen_name)->required();
    c_central->add_option("--imax", imax);

    CLI::App* c_cong = app.add_subcommand("congenial", "congeniality report");
    c_cong->add_option("file", file)->required();
    c_cong->add_option("--primes", primes_csv)->required();
    c_cong->add_option("--bound", bound);
    c_cong->add_option("--imax", imax);

    CLI::App* c_pert = app.add_subcommand("pertinency", "pertinency certificate");
    c_pert->add_option("file", file)->required();
    c_pert->add_option("--group", group_name)->required();
    c_pert->add_option("--cap", cap);
    c_pert->add_option("--bound", bound);

    CLI::App* c_inj = app.add_subcommand("auslander-inj", "truncated injectivity");
    c_inj->add_option("file", file)->required();
    c_inj->add_option("--group", group_name)->required();
    c_inj->add_option("-N", nn);
    c_inj->add_option("-M", mm);

    CLI::App* c_growth = app.add_subcommand("growth", "quotient growth series");
    c_growth->add_option("file", file)->required();
    c_growth->add_option("--group", group_name)->required();
    c_growth->add_option("--bound", bound);

    CLI::App* c_verify = app.add_subcommand("verify-cert", "re-verify a certificate");
    c_verify->add_option("file", file)->required();
    c_verify->add_option("cert", cert_path)->required();

    // CLI11 consumes the vector in reverse order
    std::vector<std::string> reversed(argv.rbegin(), argv.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    std::string command;
    try {
        if (c_pbw->parsed()) {
            command = "check-pbw";
            ParsedFile f = load_alg_file(file);
            RewriteSystem rs =
                orient(f.presentation.relations(), f.presentation.alphabet(),
                       f.presentation.domain());
            ConfluenceReport r = check_confluence(rs, bound);
            Json j = detail::report_head(command, f);
            Json body = confluence_to_json(r, *f.presentation.alphabet());
            for (auto& [k, v] : body.items()) j[k] = v;
            out << j.dump(2) << "\n";
            return r.state == ConfluenceState::Confluent ? 0 : 1;
        }
        if (c_dims->parsed()) {
            command = "dims";
            ParsedFile f = load_alg_file(file);
            AlgebraHandle h = detail::build_handle(f, 2 * upto);
            Json j = detail::report_head(command, f);
            j["upto"] = upto;
            std::vector<std::size_t> dims;
            for (unsigned n = 0; n <= upto; ++n) dims.push_back(h.dim_upto(n));
            j["dims"] = dims;
            out << j.dump(2) << "\n";
            return 0;
        }
        if (c_gr->parsed()) {
            command = "gr";
            ParsedFile f = load_alg_file(file);
            AlgebraHandle h = detail::build_handle(f, 2 * bound);
            Presentation gr = associated_graded(h);
            Json j = detail::report_head(command, f);
            j["graded"] = presentation_to_json(gr);
            out << j.dump(2) << "\n";
            return 0;
        }
        if (c_auto->parsed()) {
            command = "auto-verify";
            ParsedFile f = load_alg_file(file);
            AlgebraHandle h = detail::build_handle(f, 2 * bound);
            Json j = detail::report_head(command, f);
            j["automorphism"] = auto_name;
            try {
                AutoMap phi = detail::build_automorphism(f, h, auto_name);
                j["verified"] = true;
                if (phi.order()) j["order"] = *phi.order();
                else j["order"] = "unknown";
                try {
                    j["linear_determinant"] = linear_determinant(phi).str();
                } catch (const NotLinearizable&) {
                    j["linear_determinant"] = nullptr;
                }
                out << j.dump(2) << "\n";
                return 0;
            } catch (const Error& e) {
                if (e.kind() != "RelationNotPreserved" && e.kind() != "FiltrationViolated")
                    throw;
                j["verified"] = false;
                j["error"] = {{"kind", e.kind()}, {"message", e.what()}};
                out << j.dump(2) << "\n";
                return 2;
            }
        }
        if (c_group->parsed()) {
            command = "group";
            ParsedFile f = load_alg_file(file);
            AlgebraHandle h = detail::build_handle(f, 2 * bound);
            FiniteGroup G = detail::build_group(f, h, group_name, cap);
            Json j = detail::report_head(command, f);
            j["group"] = group_name;
            j["order"] = G.order();
            Json elems = Json::array();
            for (unsigned i = 0; i < G.order(); ++i) {
                Json e;
                e["index"] = i;
                Json images = Json::array();
                for (const Poly& im : G.element(i).images()) images.push_back(im.str());
                e["images"] = std::move(images);
                elems.push_back(std::move(e));
            }
            j["elements"] = std::move(elems);
            Json table = Json::array();
            for (unsigned i = 0; i < G.order(); ++i) {
                Json row = Json::array();
                for (unsigned k = 0; k < G.order(); ++k) row.push_back(G.multiply(i, k));
                table.push_back(std::move(row));
            }
            j["multiplication"] = std::move(table);
            Json inv = Json::array();
            for (unsigned i = 0; i < G.order(); ++i) inv.push_back(G.inverse(i));
            j["inverse"] = std::move(inv);
            j["order_invertible"] = G.order_invertible();
            out << j.dump(2) << "\n";
            return 0;
        }
        if (c_skew->parsed()) {
            command = "skew-mul";
            ParsedFile f = load_alg_file(file);
            AlgebraHandle h = detail::build_handle(f, 2 * bound);
            FiniteGroup G = detail::build_group(f, h, group_name);
            SkewPoly a = detail::parse_skew_expression(lhs, h);
            SkewPoly b = detail::parse_skew_expression(rhs, h);
            SkewPoly prod = skew_mul(a, b, G);
            Json j = detail::report_head(command, f);
            j["group"] = group_name;
            j["lhs"] = detail::skew_to_json(a, *h.alphabet());
            j["rhs"] = detail::skew_to_json(b, *h.alphabet());
            j["product"] = detail::skew_to_json(prod, *h.alphabet());
            out << j.dump(2) << "\n";
            return 0;
        }
        if (c_modp->parsed()) {
            command = "modp";
            ParsedFile f = load_alg_file(file);
            AlgebraHandle h = detail::build_handle(f, 2 * bound);
            ReducedAlgebra red = order_and_reduce(h, prime);
            Json j = detail::report_head(command, f);
            j["prime"] = prime;
            j["order"] = order_to_json(red.order);
            j["reduced"] = presentation_to_json(red.handle.presentation());
            j["confluence"] =
                confluence_to_json(red.handle.confluence(), *h.alphabet());
            std::vector<std::size_t> dims;
            for (unsigned n = 0; n <= bound; ++n) dims.push_back(red.handle.dim_upto(n));
            j["dims"] = dims;
            out << j.dump(2) << "\n";
            return 0;
        }
        if (c_central->parsed()) {
            command = "central-witness";
            ParsedFile f = load_alg_file(file);
            int gi = f.presentation.alphabet()->index_of(gen_name);
            if (gi < 0) throw UnknownGenerator("'" + gen_name + "'");
            unsigned long long top = 1;
            for (unsigned i = 0; i < imax; ++i) top *= prime;
            const unsigned gw =
                std::max(1u, f.presentation.alphabet()->gen(static_cast<GenIndex>(gi)).weight);
            const unsigned needed =
                std::max(12u, static_cast<unsigned>(2 * top * gw));
            AlgebraHandle h = detail::build_handle(f, needed);
            ReducedAlgebra red = order_and_reduce(h, prime);
            auto w = central_witness(red.handle, static_cast<GenIndex>(gi), imax);
            Json j = detail::report_head(command, f);
            j["prime"] = prime;
            j["generator"] = gen_name;
            j["i_max"] = imax;
            if (!w) {
                j["found"] = false;
                out << j.dump(2) << "\n";
                return 1;
            }
            j["found"] = true;
            j["witness"] = central_witness_to_json(*w, *h.alphabet());
            j["verified"] = verify_central_witness(red.handle, *w);
            out << j.dump(2) << "\n";
            return 0;
        }
        if (c_cong->parsed()) {
            command = "congenial";
            ParsedFile f = load_alg_file(file);
            std::vector<std::uint64_t> primes;
            for (const std::string& p : parsedetail::split_list(primes_csv))
                primes.push_back(std::stoull(p));
            AlgebraHandle h = detail::build_handle(f, 2 * bound);
            CongenialityConditions rep = congeniality_report(h, primes, bound, imax);
            Json j = detail::report_head(command, f);
            j["bound"] = bound;
            Json body = congeniality_to_json(rep, *h.alphabet());
            for (auto& [k, v] : body.items()) j[k] = v;
            out << j.dump(2) << "\n";
            return rep.pass ? 0 : 1;
        }
        if (c_pert->parsed()) {
            command = "pertinency";
            ParsedFile f = load_alg_file(file);
            AlgebraHandle h = detail::build_handle(f, 2 * bound);
            FiniteGroup G = detail::build_group(f, h, group_name);
            PertinencyOutcome res = pertinency_certificate(G, cap ? cap : 3, bound);
            Json j = detail::report_head(command, f);
            j["group"] = group_name;
            if (!res.certificate) {
                j["status"] = "inconclusive";
                j["reason"] = res.inconclusive;
                out << j.dump(2) << "\n";
                return 1;
            }
            Json cert = certificate_to_json(*res.certificate, f.name, group_name,
                                            f.group(group_name)->cap, *h.alphabet());
            j["status"] = "certified";
            j["certificate"] = std::move(cert);
            out << j.dump(2) << "\n";
            return 0;
        }
        if (c_inj->parsed()) {
            command = "auslander-inj";
            ParsedFile f = load_alg_file(file);
            AlgebraHandle h = detail::build_handle(f, 2 * (nn + mm));
            FiniteGroup G = detail::build_group(f, h, group_name);
            InjectivityReport r = truncated_injectivity(G, nn, mm);
            Json j = detail::report_head(command, f);
            j["group"] = group_name;
            Json body = injectivity_to_json(r, G);
            for (auto& [k, v] : body.items()) j[k] = v;
            out << j.dump(2) << "\n";
            return r.kernel_dim == 0 ? 0 : 1;
        }
        if (c_growth->parsed()) {
            command = "growth";
            ParsedFile f = load_alg_file(file);
            AlgebraHandle h = detail::build_handle(f, 2 * bound);
            FiniteGroup G = detail::build_group(f, h, group_name);
            GrowthSeries s = quotient_growth(G, bound);
            Json j = detail::report_head(command, f);
            j["group"] = group_name;
            j["bound"] = bound;
            Json body = growth_to_json(s);
            for (auto& [k, v] : body.items()) j[k] = v;
            out << j.dump(2) << "\n";
            return 0;
        }
        if (c_verify->parsed()) {
            command = "verify-cert";
            ParsedFile f = load_alg_file(file);
            std::ifstream in(cert_path);
            if (!in) throw Error("FileNotFound", "cannot open " + cert_path);
            Json cj = Json::parse(in);
            LoadedCertificate lc = certificate_from_json(cj, *f.presentation.alphabet(),
                                                         f.presentation.domain());
            if (lc.algebra != f.name)
                throw CertificateMismatch("certificate was issued for algebra '" +
                                          lc.algebra + "', file declares '" + f.name + "'");
            AlgebraHandle h = detail::build_handle(f, 2 * lc.bound);
            FiniteGroup G = detail::build_group(f, h, lc.group, lc.group_cap);
            Json j = detail::report_head(command, f);
            j["certificate"] = cert_path;
            Json entries = Json::array();
            for (const auto& [gen, exponent, terms] : lc.entries) {
                int gi = h.alphabet()->index_of(gen);
                if (gi < 0) throw UnknownGenerator("'" + gen + "' in certificate");
                SkewPoly target = SkewPoly::monomial(
                    h, word_pow(static_cast<GenIndex>(gi), exponent), 0,
                    Scalar::one(h.domain()));
                MembershipWitness w{target, terms};
                const bool ok = verify_membership(w, G);
                Json e;
                e["generator"] = gen;
                e["exponent"] = exponent;
                e["verified"] = ok;
                entries.push_back(std::move(e));
                if (!ok) {
                    j["entries"] = std::move(entries);
                    j["verified"] = false;
                    j["error"] = {{"kind", "CertificateMismatch"},
                                  {"message", "witness for " + gen +
                                                  " does not re-expand to the target"}};
                    out << j.dump(2) << "\n";
                    return 2;
                }
            }
            j["entries"] = std::move(entries);
            j["verified"] = true;
            out << j.dump(2) << "\n";
            return 0;
        }
        err << "no subcommand selected\n";
        return 2;
    } catch (const Error& e) {
        Json j;
        j["schema_version"] = kSchemaVersion;
        j["command"] = command;
        j["error"] = {{"kind", e.kind()}, {"message", e.what()}};
        out << j.dump(2) << "\n";
        return 2;
    } catch (const std::exception& e) {
        Json j;
        j["schema_version"] = kSchemaVersion;
        j["command"] = command;
        j["error"] = {{"kind", "InternalError"}, {"message", e.what()}};
        out << j.dump(2) << "\n";
        return 2;
    }
}

} // namespace cli
} // namespace ncfilt
