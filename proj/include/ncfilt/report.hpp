#pragma once

// JSON report payloads. All emitters use insertion-ordered objects and fully
// deterministic content (no timestamps, no addresses), so identical inputs
// produce byte-identical reports.

#include <json.hpp>

#include "ncfilt/auslander.hpp"
#include "ncfilt/parse.hpp"

namespace ncfilt {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

inline Json word_to_json(const Alphabet& alpha, const Word& w) {
    Json a = Json::array();
    for (GenIndex g : w) a.push_back(alpha.gen(g).name);
    return a;
}

inline Word word_from_json(const Alphabet& alpha, const Json& j) {
    Word w;
    for (const auto& item : j) {
        int i = alpha.index_of(item.get<std::string>());
        if (i < 0) throw UnknownGenerator("'" + item.get<std::string>() + "' in certificate");
        w.push_back(static_cast<GenIndex>(i));
    }
    return w;
}

inline Json confluence_to_json(const ConfluenceReport& r, const Alphabet& alpha) {
    Json j;
    switch (r.state) {
    case ConfluenceState::Unchecked: j["status"] = "unchecked"; break;
    case ConfluenceState::Confluent: j["status"] = "confluent"; break;
    case ConfluenceState::Nonconfluent: j["status"] = "nonconfluent"; break;
    }
    j["bound"] = r.bound;
    j["overlaps_checked"] = r.overlaps_checked;
    if (r.witness) {
        Json w;
        w["rule_i"] = r.witness->rule_i;
        w["rule_j"] = r.witness->rule_j;
        w["word"] = word_to_json(alpha, r.witness->word);
        w["difference"] = r.witness->difference.str();
        j["witness"] = std::move(w);
    }
    return j;
}

inline Json order_to_json(const OrderSpec& spec) {
    Json j;
    j["base"] = "Z";
    Json gens = Json::array();
    for (const auto& g : spec.generators) {
        Json e;
        e["name"] = g.name;
        e["value"] = g.value.str();
        gens.push_back(std::move(e));
    }
    j["generators"] = std::move(gens);
    Json wit = Json::array();
    for (const auto& w : spec.witnesses) {
        Json e;
        e["coefficient"] = w.value.str();
        Json terms = Json::array();
        for (const auto& t : w.terms) {
            Json tt;
            tt["int"] = t.int_coeff.str();
            tt["zeta_pow"] = t.zeta_pow;
            tt["inv_pow"] = t.invl_pow;
            terms.push_back(std::move(tt));
        }
        e["expression"] = std::move(terms);
        wit.push_back(std::move(e));
    }
    j["witnesses"] = std::move(wit);
    return j;
}

inline Json presentation_to_json(const Presentation& p) {
    Json j;
    j["field"] = p.domain().str();
    Json gens = Json::array();
    for (const auto& g : p.alphabet()->generators()) {
        Json e;
        e["name"] = g.name;
        e["weight"] = g.weight;
        e["parity"] = g.parity;
        e["precedence"] = g.precedence;
        gens.push_back(std::move(e));
    }
    j["generators"] = std::move(gens);
    Json rels = Json::array();
    for (const Poly& r : p.canonical_relations()) rels.push_back(r.str());
    j["relations"] = std::move(rels);
    if (p.provenance()) {
        Json prov;
        prov["family"] = p.provenance()->family;
        Json params;
        for (const auto& [k, v] : p.provenance()->params) params[k] = v;
        prov["params"] = std::move(params);
        if (p.provenance()->gk_dim) prov["gk_dim"] = *p.provenance()->gk_dim;
        j["provenance"] = std::move(prov);
    }
    return j;
}

inline Json central_witness_to_json(const CentralWitness& w, const Alphabet& alpha) {
    Json j;
    j["generator"] = alpha.gen(w.generator).name;
    j["ansatz"] = (w.ansatz == WitnessAnsatz::PPower) ? "p_power" : "power";
    Json terms = Json::array();
    for (const auto& [e, c] : w.terms) {
        Json t;
        t["exponent"] = e;
        t["coeff"] = c.str();
        terms.push_back(std::move(t));
    }
    j["terms"] = std::move(terms);
    return j;
}

inline Json congeniality_to_json(const CongenialityConditions& rep,
                                 const Alphabet& alpha) {
    Json j;
    Json c1;
    c1["status"] = rep.local_finite ? "pass" : "fail";
    c1["dims"] = rep.dims;
    j["condition_1_locally_finite"] = std::move(c1);

    Json c2;
    c2["status"] = rep.order_ok ? "pass" : "fail";
    c2["order"] = order_to_json(rep.order);
    c2["freeness"] = "normal words of weight <= bound form a D-basis; all oriented "
                     "rule coefficients lie in D";
    if (!rep.order_failure.empty()) c2["failure"] = rep.order_failure;
    j["condition_2_order"] = std::move(c2);

    Json c3;
    c3["status"] = rep.gr_order_ok ? "pass" : "fail";
    c3["gr_order"] = order_to_json(rep.gr_order);
    if (!rep.gr_failure.empty()) c3["failure"] = rep.gr_failure;
    j["condition_3_gr_order"] = std::move(c3);

    Json c4;
    c4["status"] = "proxy";
    c4["note"] = rep.proxy_note;
    c4["growth_slope"] = rep.growth_slope;
    c4["slope_bound"] = alpha.size();
    c4["polynomial_growth_evidence"] = rep.poly_growth_evidence;
    j["condition_4_strongly_noetherian"] = std::move(c4);

    Json c5 = Json::array();
    for (const auto& cp : rep.primes) {
        Json e;
        e["p"] = cp.p;
        e["status"] = cp.pass ? "pass" : "fail";
        e["reduced"] = cp.reduced;
        if (!cp.failure.empty()) e["failure"] = cp.failure;
        Json ws = Json::array();
        for (const auto& [name, w] : cp.witnesses) ws.push_back(central_witness_to_json(w, alpha));
        e["central_witnesses"] = std::move(ws);
        c5.push_back(std::move(e));
    }
    j["condition_5_finite_field_PI"] = std::move(c5);
    j["overall"] = rep.pass ? "pass" : "fail";
    return j;
}

// ---------------------------------------------------------------------------
// pertinency certificates: emitted and re-consumed
// ---------------------------------------------------------------------------

inline Json membership_witness_to_json(const MembershipWitness& w, const Alphabet& alpha) {
    Json terms = Json::array();
    for (const auto& t : w.terms) {
        Json e;
        e["u_word"] = word_to_json(alpha, t.u_word);
        e["u_group"] = t.u_group;
        e["v_word"] = word_to_json(alpha, t.v_word);
        e["v_group"] = t.v_group;
        e["coeff"] = t.coeff.str();
        terms.push_back(std::move(e));
    }
    return terms;
}

inline Json certificate_to_json(const PertinencyCertificate& cert,
                                const std::string& algebra_name,
                                const std::string& group_name, unsigned group_cap,
                                const Alphabet& alpha) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "pertinency_certificate";
    j["algebra"] = algebra_name;
    j["group"] = group_name;
    j["group_cap"] = group_cap;
    j["bound"] = cert.bound;
    j["cap"] = cert.cap;
    Json entries = Json::array();
    for (const auto& e : cert.entries) {
        Json je;
        je["generator"] = e.generator;
        je["exponent"] = e.exponent;
        je["witness"] = membership_witness_to_json(e.witness, alpha);
        entries.push_back(std::move(je));
    }
    j["entries"] = std::move(entries);
    j["gk_dim"] = cert.gk_dim;
    j["gk_from_provenance"] = cert.gk_from_provenance;
    j["auslander_isomorphism"] = cert.auslander_isomorphism;
    j["conclusion"] = cert.conclusion;
    return j;
}

struct LoadedCertificate {
    std::string algebra;
    std::string group;
    unsigned group_cap = 256;
    unsigned bound = 0;
    std::vector<std::tuple<std::string, unsigned, std::vector<SandwichTerm>>> entries;
};

inline LoadedCertificate certificate_from_json(const Json& j, const Alphabet& alpha,
                                               const ScalarDomain& dom) {
    LoadedCertificate out;
    out.algebra = j.at("algebra").get<std::string>();
    out.group = j.at("group").get<std::string>();
    out.group_cap = j.value("group_cap", 256u);
    out.bound = j.at("bound").get<unsigned>();
    for (const auto& e : j.at("entries")) {
        std::vector<SandwichTerm> terms;
        for (const auto& t : e.at("witness")) {
            SandwichTerm st{word_from_json(alpha, t.at("u_word")),
                            t.at("u_group").get<unsigned>(),
                            word_from_json(alpha, t.at("v_word")),
                            t.at("v_group").get<unsigned>(),
                            parse_scalar(t.at("coeff").get<std::string>(), dom)};
            terms.push_back(std::move(st));
        }
        out.entries.emplace_back(e.at("generator").get<std::string>(),
                                 e.at("exponent").get<unsigned>(), std::move(terms));
    }
    return out;
}

inline Json growth_to_json(const GrowthSeries& s) {
    Json j;
    j["series"] = s.dims;
    j["gk0_evidence"] = s.gk0_evidence;
    return j;
}

inline Json injectivity_to_json(const InjectivityReport& r, const FiniteGroup& G) {
    Json j;
    j["N"] = r.N;
    j["M"] = r.M;
    j["domain_dim"] = r.domain_dim;
    j["kernel_dim"] = r.kernel_dim;
    if (r.kernel_witness) j["kernel_witness"] = r.kernel_witness->str(G);
    return j;
}

} // namespace ncfilt
