#include "semparse/term.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

namespace semparse {

TermPtr Term::variable(std::string name) {
    return TermPtr(new Term(TermKind::Variable, std::move(name), nullptr, nullptr));
}

TermPtr Term::constant(std::string name) {
    return TermPtr(new Term(TermKind::Constant, std::move(name), nullptr, nullptr));
}

TermPtr Term::abstraction(std::string binder, TermPtr body) {
    return TermPtr(new Term(TermKind::Abstraction, std::move(binder), std::move(body), nullptr));
}

TermPtr Term::application(TermPtr fn, TermPtr arg) {
    return TermPtr(new Term(TermKind::Application, "", std::move(fn), std::move(arg)));
}

Spine spine_of(const TermPtr& t) {
    Spine s;
    TermPtr cur = t;
    while (cur->is_application()) {
        s.args.push_back(cur->arg());
        cur = cur->fn();
    }
    std::reverse(s.args.begin(), s.args.end());
    s.head = cur;
    return s;
}

TermPtr apply_spine(TermPtr head, const std::vector<TermPtr>& args) {
    TermPtr t = std::move(head);
    for (const auto& a : args) t = Term::application(t, a);
    return t;
}

std::size_t term_size(const TermPtr& t) {
    switch (t->kind()) {
        case TermKind::Variable:
        case TermKind::Constant:
            return 1;
        case TermKind::Abstraction:
            return 1 + term_size(t->body());
        case TermKind::Application:
            return 1 + term_size(t->fn()) + term_size(t->arg());
    }
    return 1;
}

static void collect_subterms(const TermPtr& t, std::vector<TermPtr>& out) {
    out.push_back(t);
    switch (t->kind()) {
        case TermKind::Abstraction:
            collect_subterms(t->body(), out);
            break;
        case TermKind::Application:
            collect_subterms(t->fn(), out);
            collect_subterms(t->arg(), out);
            break;
        default:
            break;
    }
}

std::vector<TermPtr> subterms(const TermPtr& t) {
    std::vector<TermPtr> out;
    collect_subterms(t, out);
    return out;
}

bool is_subterm(const TermPtr& t, const TermPtr& needle) {
    for (const auto& s : subterms(t))
        if (alpha_equal(s, needle)) return true;
    return false;
}

static void collect_free(const TermPtr& t, std::set<std::string>& bound,
                         std::set<std::string>& out) {
    switch (t->kind()) {
        case TermKind::Variable:
            if (!bound.count(t->name())) out.insert(t->name());
            break;
        case TermKind::Constant:
            break;
        case TermKind::Abstraction: {
            bool fresh = bound.insert(t->name()).second;
            collect_free(t->body(), bound, out);
            if (fresh) bound.erase(t->name());
            break;
        }
        case TermKind::Application:
            collect_free(t->fn(), bound, out);
            collect_free(t->arg(), bound, out);
            break;
    }
}

std::set<std::string> free_variables(const TermPtr& t) {
    std::set<std::string> bound, out;
    collect_free(t, bound, out);
    return out;
}

std::set<std::string> constants_of(const TermPtr& t) {
    std::set<std::string> out;
    for (const auto& s : subterms(t))
        if (s->is_constant()) out.insert(s->name());
    return out;
}

bool is_closed(const TermPtr& t) { return free_variables(t).empty(); }

static bool alpha_equal_rec(const TermPtr& a, const TermPtr& b,
                            std::map<std::string, std::string>& ab,
                            std::map<std::string, std::string>& ba) {
    if (a->kind() != b->kind()) return false;
    switch (a->kind()) {
        case TermKind::Variable: {
            auto ia = ab.find(a->name());
            auto ib = ba.find(b->name());
            if (ia == ab.end() && ib == ba.end()) return a->name() == b->name();
            if (ia == ab.end() || ib == ba.end()) return false;
            return ia->second == b->name() && ib->second == a->name();
        }
        case TermKind::Constant:
            return a->name() == b->name();
        case TermKind::Abstraction: {
            auto olda = ab.find(a->name()) != ab.end() ? std::optional(ab[a->name()]) : std::nullopt;
            auto oldb = ba.find(b->name()) != ba.end() ? std::optional(ba[b->name()]) : std::nullopt;
            ab[a->name()] = b->name();
            ba[b->name()] = a->name();
            bool ok = alpha_equal_rec(a->body(), b->body(), ab, ba);
            if (olda) ab[a->name()] = *olda; else ab.erase(a->name());
            if (oldb) ba[b->name()] = *oldb; else ba.erase(b->name());
            return ok;
        }
        case TermKind::Application:
            return alpha_equal_rec(a->fn(), b->fn(), ab, ba) &&
                   alpha_equal_rec(a->arg(), b->arg(), ab, ba);
    }
    return false;
}

bool alpha_equal(const TermPtr& a, const TermPtr& b) {
    std::map<std::string, std::string> ab, ba;
    return alpha_equal_rec(a, b, ab, ba);
}

std::string fresh_name(const std::string& base, const std::set<std::string>& taken) {
    if (!taken.count(base)) return base;
    for (int i = 1;; ++i) {
        std::string cand = base + std::to_string(i);
        if (!taken.count(cand)) return cand;
    }
}

TermPtr substitute(const TermPtr& t, const std::string& var, const TermPtr& value) {
    switch (t->kind()) {
        case TermKind::Variable:
            return t->name() == var ? value : t;
        case TermKind::Constant:
            return t;
        case TermKind::Abstraction: {
            if (t->name() == var) return t;  // shadowed
            auto fv = free_variables(value);
            if (fv.count(t->name())) {
                // rename the binder away from the incoming free variables
                auto taken = fv;
                for (const auto& v : free_variables(t->body())) taken.insert(v);
                taken.insert(var);
                std::string nb = fresh_name(t->name(), taken);
                TermPtr renamed = substitute(t->body(), t->name(), Term::variable(nb));
                return Term::abstraction(nb, substitute(renamed, var, value));
            }
            return Term::abstraction(t->name(), substitute(t->body(), var, value));
        }
        case TermKind::Application:
            return Term::application(substitute(t->fn(), var, value),
                                     substitute(t->arg(), var, value));
    }
    return t;
}

// One leftmost-outermost step, or nullptr when t is normal.
static TermPtr step(const TermPtr& t) {
    switch (t->kind()) {
        case TermKind::Variable:
        case TermKind::Constant:
            return nullptr;
        case TermKind::Abstraction: {
            TermPtr s = step(t->body());
            return s ? Term::abstraction(t->name(), s) : nullptr;
        }
        case TermKind::Application: {
            if (t->fn()->is_abstraction())
                return substitute(t->fn()->body(), t->fn()->name(), t->arg());
            if (TermPtr s = step(t->fn())) return Term::application(s, t->arg());
            if (TermPtr s = step(t->arg())) return Term::application(t->fn(), s);
            return nullptr;
        }
    }
    return nullptr;
}

TermPtr beta_normalize(const TermPtr& t, std::size_t step_limit) {
    TermPtr cur = t;
    for (std::size_t i = 0; i < step_limit; ++i) {
        TermPtr next = step(cur);
        if (!next) return cur;
        cur = next;
    }
    if (!step(cur)) return cur;
    throw NonTerminating("beta reduction exceeded " + std::to_string(step_limit) + " steps");
}

bool alpha_beta_equiv(const TermPtr& a, const TermPtr& b, std::size_t step_limit) {
    return alpha_equal(beta_normalize(a, step_limit), beta_normalize(b, step_limit));
}

TermPtr replace(const TermPtr& h, const std::vector<TermPtr>& a,
                const std::vector<TermPtr>& b) {
    if (a.size() != b.size())
        throw LengthMismatch("replace: pattern list and replacement list differ in length");
    if (a.empty()) return h;
    std::vector<std::size_t> order(a.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return term_size(a[x]) > term_size(a[y]);
    });
    std::function<TermPtr(const TermPtr&)> rec = [&](const TermPtr& t) -> TermPtr {
        for (std::size_t i : order)
            if (alpha_equal(t, a[i])) return b[i];
        switch (t->kind()) {
            case TermKind::Abstraction:
                return Term::abstraction(t->name(), rec(t->body()));
            case TermKind::Application:
                return Term::application(rec(t->fn()), rec(t->arg()));
            default:
                return t;
        }
    };
    return rec(h);
}

static const char* kCanonNames[] = {"x", "y", "z", "w", "u", "v"};

TermPtr canonical_binders(const TermPtr& t) {
    std::set<std::string> taken = constants_of(t);
    for (const auto& v : free_variables(t)) taken.insert(v);
    int counter = 0;
    std::function<std::string()> next = [&]() {
        for (;;) {
            std::string cand = counter < 6 ? std::string(kCanonNames[counter])
                                           : "x" + std::to_string(counter - 5);
            ++counter;
            if (!taken.count(cand)) {
                taken.insert(cand);
                return cand;
            }
        }
    };
    std::function<TermPtr(const TermPtr&)> rec = [&](const TermPtr& u) -> TermPtr {
        switch (u->kind()) {
            case TermKind::Variable:
            case TermKind::Constant:
                return u;
            case TermKind::Abstraction: {
                std::string nb = next();
                return Term::abstraction(nb, rec(substitute(u->body(), u->name(),
                                                            Term::variable(nb))));
            }
            case TermKind::Application:
                return Term::application(rec(u->fn()), rec(u->arg()));
        }
        return u;
    };
    return rec(t);
}

static bool ident_like(const std::string& s) {
    if (s.empty()) return false;
    if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    return true;
}

static void render_rec(const TermPtr& t, std::ostringstream& out);

static void render_operand(const TermPtr& t, std::ostringstream& out) {
    bool needs_parens = t->is_abstraction();
    if (t->is_application()) {
        Spine s = spine_of(t);
        needs_parens = !(s.head->is_constant() && ident_like(s.head->name()));
    }
    if (needs_parens) {
        out << '(';
        render_rec(t, out);
        out << ')';
    } else {
        render_rec(t, out);
    }
}

static void render_rec(const TermPtr& t, std::ostringstream& out) {
    switch (t->kind()) {
        case TermKind::Variable:
        case TermKind::Constant:
            out << t->name();
            return;
        case TermKind::Abstraction:
            out << '\\' << t->name() << ". ";
            render_rec(t->body(), out);
            return;
        case TermKind::Application: {
            Spine s = spine_of(t);
            if (s.head->is_constant() && ident_like(s.head->name())) {
                out << s.head->name() << '(';
                for (std::size_t i = 0; i < s.args.size(); ++i) {
                    if (i) out << ", ";
                    render_rec(s.args[i], out);
                }
                out << ')';
            } else {
                render_operand(s.head, out);
                for (const auto& a : s.args) {
                    out << " @ ";
                    render_operand(a, out);
                }
            }
            return;
        }
    }
}

std::string render_term(const TermPtr& t) {
    std::ostringstream out;
    render_rec(t, out);
    return out.str();
}

std::string canonical_key(const TermPtr& t) { return render_term(canonical_binders(t)); }

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class Tok { Lambda, Dot, At, Comma, LParen, RParen, Ident, Quoted, Braced, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t pos;
};

class Lexer {
public:
    explicit Lexer(const std::string& s) : s_(s) { advance(); }
    const Token& peek() const { return cur_; }
    Token take() {
        Token t = cur_;
        advance();
        return t;
    }

private:
    void advance() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
        cur_.pos = i_;
        if (i_ >= s_.size()) {
            cur_ = {Tok::End, "", i_};
            return;
        }
        char c = s_[i_];
        switch (c) {
            case '\\': cur_ = {Tok::Lambda, "\\", i_++}; return;
            case '.': cur_ = {Tok::Dot, ".", i_++}; return;
            case '@': cur_ = {Tok::At, "@", i_++}; return;
            case ',': cur_ = {Tok::Comma, ",", i_++}; return;
            case '(': cur_ = {Tok::LParen, "(", i_++}; return;
            case ')': cur_ = {Tok::RParen, ")", i_++}; return;
            case '\'': {
                std::size_t start = i_++;
                while (i_ < s_.size() && s_[i_] != '\'') ++i_;
                if (i_ >= s_.size()) throw SyntaxError("unterminated quoted constant", start);
                ++i_;
                cur_ = {Tok::Quoted, s_.substr(start, i_ - start), start};
                return;
            }
            case '{': {
                std::size_t start = i_++;
                while (i_ < s_.size() && s_[i_] != '}') ++i_;
                if (i_ >= s_.size()) throw SyntaxError("unterminated braced constant", start);
                ++i_;
                cur_ = {Tok::Braced, s_.substr(start, i_ - start), start};
                return;
            }
            default:
                if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                    std::size_t start = i_;
                    while (i_ < s_.size() &&
                           (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_'))
                        ++i_;
                    cur_ = {Tok::Ident, s_.substr(start, i_ - start), start};
                    return;
                }
                if (std::isdigit(static_cast<unsigned char>(c))) {
                    std::size_t start = i_;
                    while (i_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[i_])))
                        ++i_;
                    cur_ = {Tok::Ident, s_.substr(start, i_ - start), start};
                    return;
                }
                throw SyntaxError(std::string("unexpected character '") + c + "'", i_);
        }
    }

    const std::string& s_;
    std::size_t i_ = 0;
    Token cur_;
};

class Parser {
public:
    Parser(const std::string& text, const ParseOptions& opts) : lex_(text), opts_(opts) {}

    ParseResult run() {
        TermPtr t = parse_term_node();
        if (lex_.peek().kind != Tok::End)
            throw SyntaxError("trailing input after term", lex_.peek().pos);
        ParseResult r;
        r.term = enforce_distinct_binders(t);
        r.unbound = unbound_;
        return r;
    }

private:
    TermPtr parse_term_node() {
        if (lex_.peek().kind == Tok::Lambda) {
            lex_.take();
            Token name = expect(Tok::Ident, "binder name");
            expect(Tok::Dot, "'.' after binder");
            bound_.push_back(name.text);
            TermPtr body = parse_term_node();
            bound_.pop_back();
            return Term::abstraction(name.text, body);
        }
        return parse_seq();
    }

    // Juxtaposed @-chains; juxtaposition itself is application (CLANG forms).
    TermPtr parse_seq() {
        TermPtr t = parse_at_chain();
        while (starts_atom(lex_.peek().kind))
            t = Term::application(t, parse_at_chain());
        return t;
    }

    TermPtr parse_at_chain() {
        TermPtr t = parse_item();
        while (lex_.peek().kind == Tok::At) {
            lex_.take();
            t = Term::application(t, parse_item());
        }
        return t;
    }

    static bool starts_atom(Tok k) {
        return k == Tok::Ident || k == Tok::Quoted || k == Tok::Braced ||
               k == Tok::LParen || k == Tok::Lambda;
    }

    TermPtr parse_item() {
        const Token& p = lex_.peek();
        switch (p.kind) {
            case Tok::Lambda:
                return parse_term_node();
            case Tok::Quoted:
            case Tok::Braced:
                return Term::constant(lex_.take().text);
            case Tok::LParen: {
                lex_.take();
                TermPtr t = parse_term_node();
                expect(Tok::RParen, "')'");
                return t;
            }
            case Tok::Ident: {
                Token id = lex_.take();
                if (lex_.peek().kind == Tok::LParen) {
                    // f(t1, t2, ...) as curried application of the constant head
                    lex_.take();
                    TermPtr t = Term::constant(id.text);
                    t = Term::application(t, parse_term_node());
                    while (lex_.peek().kind == Tok::Comma) {
                        lex_.take();
                        t = Term::application(t, parse_term_node());
                    }
                    expect(Tok::RParen, "')'");
                    return t;
                }
                return make_name(id.text);
            }
            default:
                throw SyntaxError("expected a term", p.pos);
        }
    }

    TermPtr make_name(const std::string& name) {
        for (auto it = bound_.rbegin(); it != bound_.rend(); ++it)
            if (*it == name) return Term::variable(name);
        if (opts_.open_variables.count(name)) {
            unbound_.insert(name);
            return Term::variable(name);
        }
        return Term::constant(name);
    }

    Token expect(Tok k, const std::string& what) {
        if (lex_.peek().kind != k)
            throw SyntaxError("expected " + what, lex_.peek().pos);
        return lex_.take();
    }

    // Barendregt convention: binder names pairwise distinct within a term.
    TermPtr enforce_distinct_binders(const TermPtr& t) {
        std::set<std::string> used = constants_of(t);
        for (const auto& v : free_variables(t)) used.insert(v);
        std::function<TermPtr(const TermPtr&)> rec = [&](const TermPtr& u) -> TermPtr {
            switch (u->kind()) {
                case TermKind::Variable:
                case TermKind::Constant:
                    return u;
                case TermKind::Abstraction: {
                    std::string nb = u->name();
                    if (used.count(nb)) {
                        nb = fresh_name(nb, used);
                        used.insert(nb);
                        return Term::abstraction(
                            nb, rec(substitute(u->body(), u->name(), Term::variable(nb))));
                    }
                    used.insert(nb);
                    return Term::abstraction(nb, rec(u->body()));
                }
                case TermKind::Application:
                    return Term::application(rec(u->fn()), rec(u->arg()));
            }
            return u;
        };
        return rec(t);
    }

    Lexer lex_;
    ParseOptions opts_;
    std::vector<std::string> bound_;
    std::set<std::string> unbound_;
};

}  // namespace

ParseResult parse_term_ex(const std::string& text, const ParseOptions& opts) {
    return Parser(text, opts).run();
}

TermPtr parse_term(const std::string& text) { return parse_term_ex(text).term; }

}  // namespace semparse
