#include "kplus/syntax.hpp"

#include <cctype>
#include <string>

namespace kplus {

namespace {

enum class Mode { Modal, Just };

// One slot is filled depending on the mode.
struct Node {
    Formula m;
    JFormula j;
};

class Parser {
public:
    Parser(std::string_view text, Mode mode) : s_(text), mode_(mode) {}

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool at_end() {
        skip();
        return pos_ >= s_.size();
    }
    bool peek(std::string_view tok) {
        skip();
        return s_.substr(pos_, tok.size()) == tok;
    }
    bool accept(std::string_view tok) {
        if (!peek(tok)) return false;
        pos_ += tok.size();
        return true;
    }
    void expect(std::string_view tok) {
        if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
    }
    [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, pos_); }
    std::size_t pos() const { return pos_; }

    unsigned number() {
        skip();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
            fail("expected a number");
        unsigned long v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = v * 10 + static_cast<unsigned>(s_[pos_] - '0');
            if (v > 100000000UL) fail("number too large");
            ++pos_;
        }
        return static_cast<unsigned>(v);
    }

    bool digit_next() const {
        return pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]));
    }

    // Identifier-like word at the cursor that is not followed by more letters.
    bool accept_word(std::string_view w) {
        skip();
        if (s_.substr(pos_, w.size()) != w) return false;
        std::size_t e = pos_ + w.size();
        if (e < s_.size() && std::isalpha(static_cast<unsigned char>(s_[e]))) return false;
        pos_ = e;
        return true;
    }

    Node formula() {
        Node lhs = disjunction();
        if (accept("->")) {
            Node rhs = formula();
            return imp(lhs, rhs);
        }
        return lhs;
    }

    Node disjunction() {
        Node lhs = conjunction();
        if (!peek("|-") && accept("|")) {
            Node rhs = disjunction();
            if (mode_ == Mode::Modal) return {Formula::disj(lhs.m, rhs.m), {}};
            return {{}, JFormula::disj(lhs.j, rhs.j)};
        }
        return lhs;
    }

    Node conjunction() {
        Node lhs = unary();
        if (accept("&")) {
            Node rhs = conjunction();
            if (mode_ == Mode::Modal) return {Formula::conj(lhs.m, rhs.m), {}};
            return {{}, JFormula::conj(lhs.j, rhs.j)};
        }
        return lhs;
    }

    Node unary() {
        skip();
        if (accept("~")) {
            Node b = unary();
            if (mode_ == Mode::Modal) return {Formula::neg(b.m), {}};
            return {{}, JFormula::neg(b.j)};
        }
        if (peek("[]") || peek("[+]")) {
            if (mode_ == Mode::Just) fail("modal operator in a justification formula");
            bool plus = accept("[+]");
            if (!plus) expect("[]");
            int label = -1;
            if (s_.substr(pos_, 1) == "_") {
                ++pos_;
                label = static_cast<int>(number());
            }
            Node b = unary();
            return {plus ? Formula::boxplus(b.m, label) : Formula::box(b.m, label), {}};
        }
        if (peek("[")) {
            if (mode_ == Mode::Modal) fail("justification term in a modal formula");
            expect("[");
            std::size_t at = pos_;
            Term t = term();
            expect("]");
            bool tc = accept_word("tc");
            Node b = unary();
            if (tc) {
                if (t.sort() != Sort::Second) throw ParseError("[s]tc needs a second-sort term", at);
                return {{}, JFormula::just_tc(t, b.j)};
            }
            if (t.sort() != Sort::First) throw ParseError("[w] needs a first-sort term", at);
            return {{}, JFormula::just(t, b.j)};
        }
        return atom();
    }

    Node atom() {
        skip();
        if (accept("(")) {
            Node n = formula();
            expect(")");
            return n;
        }
        if (accept_word("false")) return var_or_bot(-1);
        if (accept_word("true")) {
            if (mode_ == Mode::Modal) return {Formula::top(), {}};
            return {{}, JFormula::top()};
        }
        if (pos_ < s_.size()) {
            char c = s_[pos_];
            if (c == 'q' || c == 'r') {
                ++pos_;
                if (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_])))
                    fail("unknown identifier");
                return var_or_bot(c == 'q' ? 1 : 2);
            }
            if (c == 'p') {
                ++pos_;
                if (digit_next()) return var_or_bot(static_cast<int>(number()));
                if (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_])))
                    fail("unknown identifier");
                return var_or_bot(0);
            }
        }
        fail(pos_ >= s_.size() ? "unexpected end of input" : "unexpected character");
    }

    Node var_or_bot(int v) {
        if (mode_ == Mode::Modal)
            return {v < 0 ? Formula::bot() : Formula::var(static_cast<unsigned>(v)), {}};
        return {{}, v < 0 ? JFormula::bot() : JFormula::var(static_cast<unsigned>(v))};
    }

    Node imp(const Node& a, const Node& b) {
        if (mode_ == Mode::Modal) return {Formula::imp(a.m, b.m), {}};
        return {{}, JFormula::imp(a.j, b.j)};
    }

    Term term() {
        skip();
        std::size_t at = pos_;
        try {
            if (accept("(")) {
                Term l = term();
                bool dot = accept(".");
                if (!dot) expect("+");
                Term r = term();
                expect(")");
                return dot ? Term::app(l, r) : Term::sum(l, r);
            }
            if (accept_word("head")) {
                expect("(");
                Term s = term();
                expect(")");
                return Term::head(s);
            }
            if (accept_word("tail")) {
                expect("(");
                Term s = term();
                expect(")");
                return Term::tail(s);
            }
            if (accept_word("ind")) {
                expect("(");
                Term w = term();
                expect(",");
                Term s = term();
                expect(")");
                return Term::ind(w, s);
            }
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what(), at);
        }
        if (pos_ < s_.size() && (s_[pos_] == 'x' || s_[pos_] == 'y' || s_[pos_] == 'c')) {
            char c = s_[pos_++];
            if (!digit_next()) fail("expected a variable index");
            unsigned i = number();
            if (c != 'c' && pos_ < s_.size() && s_[pos_] == '_') {
                ++pos_;
                unsigned j = number();
                return c == 'x' ? Term::x_prov(i, j) : Term::y_prov(i, j);
            }
            if (c == 'x') return Term::x(i);
            if (c == 'y') return Term::y(i);
            return Term::constant(i);
        }
        fail("expected a justification term");
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;
    Mode mode_;
};

template <class F>
auto parse_all(std::string_view text, Mode mode, F&& f) {
    Parser p(text, mode);
    auto result = f(p);
    if (!p.at_end()) p.fail("trailing input");
    return result;
}

bool alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

// Appends a prefix and its operand, separated by a space only where two
// alphanumeric characters would otherwise touch.
void join(std::string& out, const std::string& prefix, const std::string& body) {
    out += prefix;
    if (!prefix.empty() && !body.empty() && alnum(prefix.back()) && alnum(body.front())) out += ' ';
    out += body;
}

std::string var_name(unsigned v) {
    if (v == 0) return "p";
    if (v == 1) return "q";
    if (v == 2) return "r";
    return "p" + std::to_string(v);
}

void render_into(std::string& out, Formula f);

void render_operand(std::string& out, Formula f) {
    if (f.is_imp()) {
        out += '(';
        render_into(out, f);
        out += ')';
    } else {
        render_into(out, f);
    }
}

void render_into(std::string& out, Formula f) {
    switch (f.kind()) {
    case FormulaKind::Var: out += var_name(f.var_index()); return;
    case FormulaKind::Bot: out += "false"; return;
    case FormulaKind::Imp:
        render_operand(out, f.lhs());
        out += " -> ";
        render_into(out, f.rhs());
        return;
    case FormulaKind::Box:
    case FormulaKind::BoxPlus: {
        std::string prefix = f.is_box() ? "[]" : "[+]";
        if (f.label() >= 0) prefix += "_" + std::to_string(f.label());
        std::string body;
        render_operand(body, f.body());
        join(out, prefix, body);
        return;
    }
    }
}

void render_into(std::string& out, JFormula f);

void render_operand(std::string& out, JFormula f) {
    if (f.is_imp()) {
        out += '(';
        render_into(out, f);
        out += ')';
    } else {
        render_into(out, f);
    }
}

void render_into(std::string& out, JFormula f) {
    switch (f.kind()) {
    case JKind::Var: out += var_name(f.var_index()); return;
    case JKind::Bot: out += "false"; return;
    case JKind::Imp:
        render_operand(out, f.lhs());
        out += " -> ";
        render_into(out, f.rhs());
        return;
    case JKind::Just:
    case JKind::JustTc: {
        std::string prefix = "[" + render(f.term()) + "]";
        if (f.is_just_tc()) prefix += "tc";
        std::string body;
        render_operand(body, f.body());
        join(out, prefix, body);
        return;
    }
    }
}

void render_side(std::string& out, const std::vector<Formula>& side) {
    for (std::size_t i = 0; i < side.size(); ++i) {
        if (i) out += ", ";
        render_into(out, side[i]);
    }
}

}  // namespace

Formula parse_formula(std::string_view text) {
    return parse_all(text, Mode::Modal, [](Parser& p) { return p.formula().m; });
}

JFormula parse_jformula(std::string_view text) {
    return parse_all(text, Mode::Just, [](Parser& p) { return p.formula().j; });
}

Term parse_term(std::string_view text) {
    return parse_all(text, Mode::Just, [](Parser& p) { return p.term(); });
}

FocusedSequent parse_sequent(std::string_view text) {
    return parse_all(text, Mode::Modal, [](Parser& p) {
        std::vector<Formula> ante, succ;
        if (!p.peek("|-")) {
            do ante.push_back(p.formula().m);
            while (p.accept(","));
        }
        p.expect("|-");
        if (!p.at_end() && !p.peek("@")) {
            do succ.push_back(p.formula().m);
            while (p.accept(","));
        }
        FocusedSequent fs{Sequent(std::move(ante), std::move(succ)), {}};
        if (p.accept("@")) {
            if (!p.accept("*")) {
                std::size_t at = p.pos();
                Formula focus = p.formula().m;
                if (!focus.is_boxplus()) throw ParseError("focus must be a boxplus formula", at);
                if (!contains(fs.seq.succ, focus))
                    throw ParseError("focus must occur in the succedent", at);
                fs.focus = focus;
            }
        }
        return fs;
    });
}

std::string render(Formula f) {
    std::string out;
    render_into(out, f);
    return out;
}

std::string render(JFormula f) {
    std::string out;
    render_into(out, f);
    return out;
}

std::string render(Term t) {
    switch (t.kind()) {
    case TermKind::X: return "x" + std::to_string(t.index());
    case TermKind::XProv: return "x" + std::to_string(t.index()) + "_" + std::to_string(t.sub_index());
    case TermKind::Y: return "y" + std::to_string(t.index());
    case TermKind::YProv: return "y" + std::to_string(t.index()) + "_" + std::to_string(t.sub_index());
    case TermKind::Const: return "c" + std::to_string(t.index());
    case TermKind::App: return "(" + render(t.left()) + " . " + render(t.right()) + ")";
    case TermKind::Sum: return "(" + render(t.left()) + " + " + render(t.right()) + ")";
    case TermKind::Head: return "head(" + render(t.left()) + ")";
    case TermKind::Tail: return "tail(" + render(t.left()) + ")";
    case TermKind::Ind: return "ind(" + render(t.left()) + "," + render(t.right()) + ")";
    }
    return {};
}

std::string render(const Sequent& s) {
    std::string out;
    render_side(out, s.ante);
    out += s.ante.empty() ? "|-" : " |-";
    if (!s.succ.empty()) {
        out += ' ';
        render_side(out, s.succ);
    }
    return out;
}

std::string render(const FocusedSequent& s) {
    std::string out = render(s.seq);
    out += " @ ";
    out += s.star() ? "*" : render(s.focus);
    return out;
}

}  // namespace kplus
