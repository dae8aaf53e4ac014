#include "kplus/serialize.hpp"

#include <stdexcept>

#include "json.hpp"
#include "kplus/syntax.hpp"

namespace kplus {

namespace {

using nlohmann::json;

json parse_doc(const std::string& text, const char* kind) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
    }
    if (kind && (!j.is_object() || j.value("kind", "") != kind))
        throw std::invalid_argument(std::string("expected a ") + kind + " document");
    return j;
}

// Wraps parse and JSON access errors into std::invalid_argument.
template <class F>
auto guarded(F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const ParseError& e) {
        throw std::invalid_argument(e.what());
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed artifact: ") + e.what());
    }
}

json proof_body(const CyclicProof& p) {
    json nodes = json::array();
    for (const ProofNode& n : p.nodes) {
        json o{{"sequent", render(n.seq)}, {"rule", rule_name(n.rule)}, {"children", n.children}};
        if (n.principal.valid()) o["principal"] = render(n.principal);
        if (n.occ >= 0) o["occ"] = n.occ;
        nodes.push_back(std::move(o));
    }
    json links = json::array();
    for (auto [leaf, target] : p.backlinks) links.push_back({leaf, target});
    return {{"kind", "cyclic-proof"}, {"nodes", nodes}, {"backlinks", links}};
}

Rule rule_of(const json& j) {
    auto r = rule_from_name(j.get<std::string>());
    if (!r) throw std::invalid_argument("unknown rule " + j.get<std::string>());
    return *r;
}

CyclicProof proof_from(const json& j) {
    CyclicProof p;
    for (const json& o : j.at("nodes")) {
        ProofNode n;
        n.seq = parse_sequent(o.at("sequent").get<std::string>());
        n.rule = rule_of(o.at("rule"));
        if (o.contains("principal")) n.principal = parse_formula(o["principal"].get<std::string>());
        n.children = o.at("children").get<std::vector<std::size_t>>();
        n.occ = o.value("occ", -1);
        p.nodes.push_back(std::move(n));
    }
    for (const json& l : j.at("backlinks")) p.backlinks.emplace(l.at(0).get<std::size_t>(), l.at(1).get<std::size_t>());
    return p;
}

json prepared_body(const PreparedProof& p) {
    json g = json::object();
    for (auto [n, v] : p.g.support()) g[std::to_string(n)] = v;
    return {{"kind", "prepared-proof"}, {"proof", proof_body(p.proof)}, {"g", g}};
}

PreparedProof prepared_from(const json& j) {
    PreparedProof p;
    p.proof = proof_from(j.at("proof"));
    for (auto& [k, v] : j.at("g").items()) p.g.set(static_cast<unsigned>(std::stoul(k)), v.get<unsigned>());
    return p;
}

json axiom_body(const AxiomInstance& a) {
    json o{{"schema", schema_name(a.schema)}};
    if (a.schema == Schema::Cs) {
        o["constant"] = a.constant;
        o["inner"] = axiom_body(*a.inner);
        return o;
    }
    for (auto [name, f] : {std::pair{"a", a.a}, {"b", a.b}, {"c", a.c}})
        if (f.valid()) o[name] = render(f);
    for (auto [name, t] : {std::pair{"h", a.h}, {"w", a.w}, {"t", a.t}, {"s", a.s}})
        if (t.valid()) o[name] = render(t);
    return o;
}

AxiomInstance axiom_from(const json& o) {
    auto schema = schema_from_name(o.at("schema").get<std::string>());
    if (!schema) throw std::invalid_argument("unknown schema " + o.at("schema").get<std::string>());
    if (*schema == Schema::Cs) return AxiomInstance::cs(o.at("constant").get<unsigned>(), axiom_from(o.at("inner")));
    AxiomInstance a;
    a.schema = *schema;
    auto f = [&](const char* k) { return o.contains(k) ? parse_jformula(o[k].get<std::string>()) : JFormula(); };
    auto t = [&](const char* k) { return o.contains(k) ? parse_term(o[k].get<std::string>()) : Term(); };
    a.a = f("a");
    a.b = f("b");
    a.c = f("c");
    a.h = t("h");
    a.w = t("w");
    a.t = t("t");
    a.s = t("s");
    return a;
}

json jproof_body(const JProof& p) {
    json steps = json::array();
    for (const JStep& s : p.steps) {
        json o{{"formula", render(s.formula)}};
        if (s.kind == JStep::Kind::Axiom)
            o["axiom"] = axiom_body(s.axiom);
        else
            o["mp"] = {s.minor, s.major};
        steps.push_back(std::move(o));
    }
    json out{{"kind", "jproof"}, {"steps", steps}};
    if (!p.steps.empty()) out["conclusion"] = render(p.conclusion());
    return out;
}

// The stored formula of each step must agree with what the step denotes.
JProof jproof_from(const json& j) {
    JProof p;
    for (const json& o : j.at("steps")) {
        JStep s;
        s.formula = parse_jformula(o.at("formula").get<std::string>());
        if (o.contains("axiom")) {
            s.kind = JStep::Kind::Axiom;
            s.axiom = axiom_from(o["axiom"]);
            if (s.axiom.formula() != s.formula) throw std::invalid_argument("axiom step does not denote its formula");
        } else {
            s.kind = JStep::Kind::MP;
            s.minor = o.at("mp").at(0).get<std::size_t>();
            s.major = o.at("mp").at(1).get<std::size_t>();
        }
        p.steps.push_back(std::move(s));
    }
    return p;
}

const char* expected_name(CorpusEntry::Expected e) {
    switch (e) {
    case CorpusEntry::Expected::Provable: return "provable";
    case CorpusEntry::Expected::Refutable: return "refutable";
    case CorpusEntry::Expected::Unknown: return "unknown";
    }
    return "unknown";
}

CorpusEntry::Expected expected_from(const std::string& s) {
    if (s == "provable") return CorpusEntry::Expected::Provable;
    if (s == "refutable") return CorpusEntry::Expected::Refutable;
    if (s == "unknown") return CorpusEntry::Expected::Unknown;
    throw std::invalid_argument("unknown expectation " + s);
}

}  // namespace

std::string artifact_kind(const std::string& text) {
    json j = parse_doc(text, nullptr);
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw std::invalid_argument("artifact without a kind");
    return j["kind"].get<std::string>();
}

std::string to_json(const CyclicProof& p) { return proof_body(p).dump(1); }
std::string to_json(const PreparedProof& p) { return prepared_body(p).dump(1); }

std::string to_json(const RefutationTree& t) {
    json nodes = json::array();
    for (const RefNode& n : t.nodes) {
        json o{{"sequent", render(n.seq)}, {"rule", rule_name(n.rule)}, {"children", n.children}};
        if (n.principal.valid()) o["principal"] = render(n.principal);
        if (!n.omitted.empty()) {
            json om = json::array(), certs = json::array();
            for (const Sequent& s : n.omitted) om.push_back(render(s));
            for (const CyclicProof& c : n.certificates) certs.push_back(proof_body(c));
            o["omitted"] = om;
            o["certificates"] = certs;
        }
        nodes.push_back(std::move(o));
    }
    return json{{"kind", "refutation"}, {"nodes", nodes}}.dump(1);
}

std::string to_json(const Countermodel& m, Formula formula) {
    json val = json::object();
    for (const auto& [w, vars] : m.model.valuation) {
        json names = json::array();
        for (unsigned v : vars) names.push_back(render(Formula::var(v)));
        val[std::to_string(w)] = names;
    }
    json edges = json::array();
    for (auto [a, b] : m.model.r) edges.push_back({a, b});
    return json{{"kind", "countermodel"},
                {"formula", render(formula)},
                {"worlds", m.model.worlds},
                {"r", edges},
                {"valuation", val},
                {"world", m.world}}
        .dump(1);
}

std::string to_json(const JProof& p) { return jproof_body(p).dump(1); }

std::string to_json(const RealizationResult& r, Formula formula) {
    json theta = json::object();
    for (const auto& [v, t] : r.theta.entries()) theta[render(v)] = render(t);
    return json{{"kind", "realization"},
                {"formula", render(formula)},
                {"realized", render(r.realized)},
                {"theta", theta},
                {"proof", jproof_body(r.proof)},
                {"prepared", prepared_body(r.prepared)}}
        .dump(1);
}

std::string to_json(const std::vector<CorpusEntry>& corpus) {
    json entries = json::array();
    for (const CorpusEntry& e : corpus)
        entries.push_back({{"formula", render(e.formula)}, {"expected", expected_name(e.expected)}, {"origin", e.origin}});
    return json{{"kind", "corpus"}, {"entries", entries}}.dump(1);
}

CyclicProof read_cyclic_proof(const std::string& text) {
    return guarded([&] { return proof_from(parse_doc(text, "cyclic-proof")); });
}

PreparedProof read_prepared_proof(const std::string& text) {
    return guarded([&] { return prepared_from(parse_doc(text, "prepared-proof")); });
}

RefutationTree read_refutation(const std::string& text) {
    return guarded([&] {
        json j = parse_doc(text, "refutation");
        RefutationTree t;
        for (const json& o : j.at("nodes")) {
            RefNode n;
            n.seq = parse_sequent(o.at("sequent").get<std::string>()).seq;
            n.rule = rule_of(o.at("rule"));
            if (o.contains("principal")) n.principal = parse_formula(o["principal"].get<std::string>());
            n.children = o.at("children").get<std::vector<std::size_t>>();
            if (o.contains("omitted")) {
                for (const json& s : o["omitted"]) n.omitted.push_back(parse_sequent(s.get<std::string>()).seq);
                for (const json& c : o.at("certificates")) n.certificates.push_back(proof_from(c));
            }
            t.nodes.push_back(std::move(n));
        }
        return t;
    });
}

StoredCountermodel read_countermodel(const std::string& text) {
    return guarded([&] {
        json j = parse_doc(text, "countermodel");
        std::set<unsigned> worlds = j.at("worlds").get<std::set<unsigned>>();
        Relation r;
        for (const json& e : j.at("r")) r.emplace(e.at(0).get<unsigned>(), e.at(1).get<unsigned>());
        std::map<unsigned, std::set<unsigned>> val;
        for (auto& [w, names] : j.at("valuation").items()) {
            auto& vars = val[static_cast<unsigned>(std::stoul(w))];
            for (const json& n : names) {
                Formula v = parse_formula(n.get<std::string>());
                if (!v.is_var()) throw std::invalid_argument("valuation entry is not a variable");
                vars.insert(v.var_index());
            }
        }
        StoredCountermodel out{{KripkeModel::make(std::move(worlds), std::move(r), std::move(val)), j.at("world").get<unsigned>()},
                               parse_formula(j.at("formula").get<std::string>())};
        return out;
    });
}

JProof read_jproof(const std::string& text) {
    return guarded([&] { return jproof_from(parse_doc(text, "jproof")); });
}

StoredRealization read_realization(const std::string& text) {
    return guarded([&] {
        json j = parse_doc(text, "realization");
        StoredRealization r;
        r.formula = parse_formula(j.at("formula").get<std::string>());
        r.realized = parse_jformula(j.at("realized").get<std::string>());
        for (auto& [v, t] : j.at("theta").items()) r.theta.set(parse_term(v), parse_term(t.get<std::string>()));
        r.proof = jproof_from(j.at("proof"));
        r.prepared = prepared_from(j.at("prepared"));
        return r;
    });
}

std::vector<CorpusEntry> read_corpus(const std::string& text) {
    return guarded([&] {
        json j = parse_doc(text, "corpus");
        std::vector<CorpusEntry> out;
        for (const json& o : j.at("entries")) {
            CorpusEntry e;
            e.formula = parse_formula(o.at("formula").get<std::string>());
            e.expected = expected_from(o.at("expected").get<std::string>());
            e.origin = o.value("origin", "");
            out.push_back(std::move(e));
        }
        return out;
    });
}

}  // namespace kplus
