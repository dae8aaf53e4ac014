// kplus: decide, refute and realize formulas of K+, and check the artifacts.
//
// Exit status: 0 provable / valid, 10 refutable, 20 budget exceeded,
// 2 unreadable input, 1 failed validation.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "kplus/annotate.hpp"
#include "kplus/engine.hpp"
#include "kplus/generate.hpp"
#include "kplus/kripke.hpp"
#include "kplus/realize.hpp"
#include "kplus/serialize.hpp"
#include "kplus/syntax.hpp"
#include "kplus/translate.hpp"

using namespace kplus;

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kBadInput = 2;
constexpr int kRefutable = 10;
constexpr int kBudget = 20;

struct Failure {
    int status;
    std::string message;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Failure{kBadInput, "cannot read " + path};
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// Writes the artifact, then reads it back and runs `recheck` on the copy.
template <class Check>
void emit(const std::string& path, const std::string& text, Check recheck) {
    if (path.empty()) return;
    if (path == "-") {
        std::cout << text << "\n";
    } else {
        std::ofstream out(path, std::ios::binary);
        if (!out || !(out << text << "\n")) throw Failure{kInvalid, "cannot write " + path};
    }
    std::string back = path == "-" ? text : slurp(path);
    if (std::string why = recheck(back); !why.empty()) throw Failure{kInvalid, path + " does not re-validate: " + why};
}

std::string first_error(const CheckResult& c) { return c.ok() ? "" : c.errors.front(); }

// A formula F is read as the sequent => F.
FocusedSequent read_goal(const std::string& text) {
    if (text.find("|-") != std::string::npos) return parse_sequent(text);
    return FocusedSequent{Sequent({}, {parse_formula(text)}), {}};
}

std::string check_countermodel_text(const std::string& text) {
    StoredCountermodel m = read_countermodel(text);
    std::string why;
    if (!m.countermodel.model.valid(&why)) return why;
    if (eval(m.countermodel.model, m.countermodel.world, m.formula)) return "the formula holds at the chosen world";
    return "";
}

std::string check_refutation_text(const std::string& text, std::size_t budget) {
    Prover prover(budget);
    return first_error(check_refutation(read_refutation(text), prover));
}

// Full re-validation of a stored realization against its formula.
std::string check_realization_text(const std::string& text) {
    StoredRealization s = read_realization(text);
    if (CheckResult c = check_prepared(s.prepared); !c) return "prepared proof: " + first_error(c);
    const Sequent& root = s.prepared.proof.nodes.at(0).seq.seq;
    if (!root.ante.empty() || root.succ.size() != 1 || erase(root.succ[0]) != s.formula)
        return "prepared proof does not prove the formula";
    std::set<Term> dom;
    for (const auto& [v, t] : s.theta.entries()) dom.insert(v);
    if (dom != induced_variables(s.prepared.proof)) return "substitution is not adequate for the prepared proof";
    if (s.theta.apply(g_translate(root.succ[0], s.prepared.g)) != s.realized)
        return "realized formula is not theta applied to the translation";
    RealizationResult r{s.theta, s.proof, s.realized, {}, s.prepared};
    return first_error(check_realization(s.formula, r));
}

std::string check_jproof_text(const std::string& text) {
    JProofVerdict v = check_proof(read_jproof(text));
    return v.ok ? "" : (v.errors.empty() ? "invalid proof" : v.errors.front());
}

std::string check_proof_text(const std::string& text) {
    if (artifact_kind(text) == "prepared-proof") return first_error(check_prepared(read_prepared_proof(text)));
    return first_error(check_cyclic(read_cyclic_proof(text)));
}

std::string check_any(const std::string& text, std::size_t budget) {
    std::string kind = artifact_kind(text);
    if (kind == "cyclic-proof" || kind == "prepared-proof") return check_proof_text(text);
    if (kind == "refutation") return check_refutation_text(text, budget);
    if (kind == "countermodel") return check_countermodel_text(text);
    if (kind == "jproof") return check_jproof_text(text);
    if (kind == "realization") return check_realization_text(text);
    if (kind == "corpus") {
        read_corpus(text);
        return "";
    }
    throw Failure{kBadInput, "unknown artifact kind " + kind};
}

int report_check(const std::string& what, const std::string& why) {
    if (why.empty()) {
        std::cout << what << ": ok\n";
        return kOk;
    }
    std::cout << what << ": invalid: " << why << "\n";
    return kInvalid;
}

int cmd_decide(const std::string& input, std::size_t budget, const std::string& out, bool want_model,
               const std::string& model_out) {
    FocusedSequent goal = read_goal(input);
    Decision d = decide(goal, {budget, false});
    if (d.verdict == Verdict::BudgetExceeded) {
        std::cout << "budget exceeded after " << d.states << " states\n";
        return kBudget;
    }
    if (d.verdict == Verdict::Provable) {
        std::cout << "provable (" << d.proof->nodes.size() << " nodes)\n";
        emit(out, to_json(*d.proof), [](const std::string& t) { return first_error(check_cyclic(read_cyclic_proof(t))); });
        return kOk;
    }
    std::cout << "refutable (" << d.refutation->nodes.size() << " nodes)\n";
    emit(out, to_json(*d.refutation), [&](const std::string& t) { return check_refutation_text(t, budget); });
    if (want_model) {
        Countermodel m = model_from_refutation(*d.refutation);
        const Sequent& seq = goal.seq;
        Formula f = seq.ante.empty() && seq.succ.size() == 1 ? seq.succ[0] : sequent_formula(seq);
        if (eval(m.model, m.world, f)) throw Failure{kInvalid, "extracted model does not falsify the formula"};
        std::cout << "countermodel: " << m.model.worlds.size() << " worlds, fails at world " << m.world << "\n";
        emit(model_out, to_json(m, f), check_countermodel_text);
    }
    return kRefutable;
}

int cmd_realize(const std::string& input, std::size_t budget, const std::string& out) {
    Formula a = parse_formula(input);
    Decision d = decide(Sequent({}, {a}), {budget, true});
    if (d.verdict == Verdict::BudgetExceeded) return kBudget;
    if (d.verdict == Verdict::Refutable) {
        std::cout << "not a theorem\n";
        return kRefutable;
    }
    RealizationResult r = realize_theorem(a, {budget, false});
    if (CheckResult c = check_realization(a, r); !c) throw Failure{kInvalid, "realization fails: " + c.errors.front()};
    std::cout << render(r.realized) << "\n";
    std::cerr << r.proof.steps.size() << " proof steps\n";
    emit(out, to_json(r, a), check_realization_text);
    return kOk;
}

int cmd_countermodel(const std::string& input, std::size_t budget, unsigned search, const std::string& out) {
    Formula f = parse_formula(input);
    std::optional<Countermodel> m;
    if (search > 0) {
        m = search_countermodel(f, search);
        if (!m) {
            std::cout << "no countermodel with at most " << search << " worlds\n";
            return kOk;
        }
    } else {
        Decision d = decide(Sequent({}, {f}), {budget, false});
        if (d.verdict == Verdict::BudgetExceeded) return kBudget;
        if (d.verdict == Verdict::Provable) {
            std::cout << "provable, no countermodel\n";
            return kOk;
        }
        m = model_from_refutation(*d.refutation);
    }
    if (eval(m->model, m->world, f)) throw Failure{kInvalid, "model does not falsify the formula"};
    std::cout << m->model.worlds.size() << " worlds, fails at world " << m->world << "\n";
    emit(out.empty() ? "-" : out, to_json(*m, f), check_countermodel_text);
    return kRefutable;
}

int cmd_translate(const std::string& input, bool forgetful_mode) {
    if (forgetful_mode)
        std::cout << render(forgetful(parse_jformula(input))) << "\n";
    else
        std::cout << render(erase(parse_formula(input))) << "\n";
    return kOk;
}

int cmd_corpus(unsigned depth, unsigned vars, std::uint64_t seed, std::size_t limit, const std::string& out,
               bool verify, unsigned jobs, std::size_t budget) {
    std::vector<CorpusEntry> corpus = axiom_corpus(depth, vars, seed, limit);
    std::cout << corpus.size() << " theorems\n";
    emit(out.empty() ? "-" : out, to_json(corpus), [](const std::string& t) {
        read_corpus(t);
        return std::string();
    });
    if (!verify) return kOk;
    jobs = std::max(1u, jobs);
    std::vector<std::future<std::vector<std::size_t>>> parts;
    for (unsigned k = 0; k < jobs; ++k) {
        parts.push_back(std::async(std::launch::async, [&, k] {
            std::vector<std::size_t> bad;
            for (std::size_t i = k; i < corpus.size(); i += jobs) {
                Decision d = decide(Sequent({}, {corpus[i].formula}), {budget, true});
                if (d.verdict != Verdict::Provable) bad.push_back(i);
            }
            return bad;
        }));
    }
    std::size_t failures = 0;
    for (auto& p : parts)
        for (std::size_t i : p.get()) {
            ++failures;
            std::cout << "not provable: " << render(corpus[i].formula) << "\n";
        }
    std::cout << (corpus.size() - failures) << "/" << corpus.size() << " decided provable\n";
    return failures == 0 ? kOk : kInvalid;
}

int cmd_selftest(std::size_t budget) {
    int failed = 0;
    auto step = [&](const std::string& name, const std::function<bool()>& body) {
        bool ok = false;
        try {
            ok = body();
        } catch (const std::exception& e) {
            std::cout << "  (" << e.what() << ")\n";
        }
        std::cout << (ok ? "pass " : "FAIL ") << name << "\n";
        failed += !ok;
    };
    const char* axioms[] = {"[](p -> q) -> []p -> []q", "[+](p -> q) -> [+]p -> [+]q", "[+]p -> []p",
                            "[+]p -> [][+]p", "[]p & [+](p -> []p) -> [+]p"};
    step("axioms are provable", [&] {
        for (const char* a : axioms) {
            Decision d = decide(Sequent({}, {parse_formula(a)}), {budget, false});
            if (d.verdict != Verdict::Provable || !check_cyclic(*d.proof)) return false;
        }
        return true;
    });
    step("[]p -> [+]p has a verified countermodel", [&] {
        Formula f = parse_formula("[]p -> [+]p");
        Decision d = decide(Sequent({}, {f}), {budget, false});
        if (d.verdict != Verdict::Refutable || !check_refutation_text(to_json(*d.refutation), budget).empty())
            return false;
        Countermodel m = model_from_refutation(*d.refutation);
        return !eval(m.model, m.world, f);
    });
    step("induction axiom realizes and rechecks", [&] {
        Formula a = parse_formula(axioms[4]);
        RealizationResult r = realize_theorem(a, {budget, false});
        return check_realization_text(to_json(r, a)).empty();
    });
    step("forgetful translation", [] {
        return render(forgetful(parse_jformula("[y0]tc p -> [head(y0)]p"))) == "[+]p -> []p";
    });
    return failed == 0 ? kOk : kInvalid;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"kplus: cyclic proofs, countermodels and realizations for K+"};
    app.require_subcommand(1);
    std::size_t budget = 1'000'000;
    app.add_option("--budget", budget, "state budget of the prover")->capture_default_str();

    std::string input, out, model_out = "countermodel.json", file;
    bool want_model = false, forgetful_mode = false, erase_mode = false, verify = false;
    unsigned depth = 2, vars = 2, search = 0, jobs = std::max(1u, std::thread::hardware_concurrency());
    std::uint64_t seed = 1;
    std::size_t limit = 200;

    auto* decide_cmd = app.add_subcommand("decide", "decide a formula or sequent (\"A, B |- C\")");
    decide_cmd->add_option("input", input)->required();
    decide_cmd->add_option("--emit", out, "write the proof or refutation (\"-\" for stdout)");
    decide_cmd->add_flag("--countermodel", want_model, "also extract and verify a countermodel");
    decide_cmd->add_option("--model-out", model_out, "countermodel file")->capture_default_str();

    auto* realize_cmd = app.add_subcommand("realize", "realize a theorem in J+");
    realize_cmd->add_option("formula", input)->required();
    realize_cmd->add_option("--emit", out, "write the realization (\"-\" for stdout)");

    auto* check_cmd = app.add_subcommand("check", "validate any artifact");
    auto* check_proof_cmd = app.add_subcommand("check-proof", "validate a cyclic or prepared proof");
    auto* check_ref_cmd = app.add_subcommand("check-refutation", "validate a refutation");
    auto* check_j_cmd = app.add_subcommand("check-jproof", "validate a J+ proof or a realization");
    for (auto* c : {check_cmd, check_proof_cmd, check_ref_cmd, check_j_cmd}) c->add_option("file", file)->required();

    auto* model_cmd = app.add_subcommand("countermodel", "countermodel of a non-theorem");
    model_cmd->add_option("formula", input)->required();
    model_cmd->add_option("--search", search, "brute-force search up to this many worlds instead");
    model_cmd->add_option("--emit", out, "model file (default stdout)");

    auto* translate_cmd = app.add_subcommand("translate", "forgetful translation or label erasure");
    translate_cmd->add_option("text", input)->required();
    auto* mode = translate_cmd->add_option_group("mode");
    mode->add_flag("--forgetful", forgetful_mode, "J+ formula to modal formula");
    mode->add_flag("--erase", erase_mode, "drop labels of an annotated formula");
    mode->require_option(1);

    auto* corpus_cmd = app.add_subcommand("corpus", "axiom-closure theorem corpus");
    corpus_cmd->add_option("--depth", depth)->capture_default_str();
    corpus_cmd->add_option("--vars", vars)->capture_default_str();
    corpus_cmd->add_option("--seed", seed)->capture_default_str();
    corpus_cmd->add_option("--limit", limit)->capture_default_str();
    corpus_cmd->add_option("--emit", out, "corpus file (default stdout)");
    corpus_cmd->add_flag("--verify", verify, "decide every entry");
    corpus_cmd->add_option("--jobs", jobs, "threads for --verify");

    auto* selftest_cmd = app.add_subcommand("selftest", "quick end-to-end checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kBadInput;
    }

    try {
        if (*decide_cmd) return cmd_decide(input, budget, out, want_model, model_out);
        if (*realize_cmd) return cmd_realize(input, budget, out);
        if (*check_cmd) return report_check(file, check_any(slurp(file), budget));
        if (*check_proof_cmd) return report_check(file, check_proof_text(slurp(file)));
        if (*check_ref_cmd) return report_check(file, check_refutation_text(slurp(file), budget));
        if (*check_j_cmd) {
            std::string text = slurp(file);
            bool stored = artifact_kind(text) == "realization";
            return report_check(file, stored ? check_realization_text(text) : check_jproof_text(text));
        }
        if (*model_cmd) return cmd_countermodel(input, budget, search, out);
        if (*translate_cmd) return cmd_translate(input, forgetful_mode);
        if (*corpus_cmd) return cmd_corpus(depth, vars, seed, limit, out, verify, jobs, budget);
        if (*selftest_cmd) return cmd_selftest(budget);
    } catch (const Failure& f) {
        std::cerr << "error: " << f.message << "\n";
        return f.status;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kBadInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kBadInput;
    } catch (const BudgetExceeded&) {
        std::cerr << "budget exceeded\n";
        return kBudget;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalid;
    }
    return kBadInput;
}
