#include "semparse/types.hpp"

#include <cctype>
#include <functional>
#include <optional>
#include <sstream>
#include <vector>

namespace semparse {

TypePtr TermType::atomic(std::string name) {
    return TypePtr(new TermType(std::move(name), nullptr, nullptr));
}

TypePtr TermType::arrow(TypePtr from, TypePtr to) {
    return TypePtr(new TermType("", std::move(from), std::move(to)));
}

int TermType::arity() const {
    int n = 0;
    const TermType* cur = this;
    while (!cur->is_atomic()) {
        ++n;
        cur = cur->to().get();
    }
    return n;
}

bool type_equal(const TypePtr& a, const TypePtr& b) {
    if (a->is_atomic() != b->is_atomic()) return false;
    if (a->is_atomic()) return a->name() == b->name();
    return type_equal(a->from(), b->from()) && type_equal(a->to(), b->to());
}

std::string render_type(const TypePtr& t) {
    if (t->is_atomic()) return t->name();
    std::string lhs = render_type(t->from());
    if (!t->from()->is_atomic()) lhs = "(" + lhs + ")";
    return lhs + " -> " + render_type(t->to());
}

namespace {

struct TypeParser {
    const std::string& s;
    std::size_t i = 0;

    void skip() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }

    TypePtr parse() {
        TypePtr t = atom();
        skip();
        if (i + 1 < s.size() && s[i] == '-' && s[i + 1] == '>') {
            i += 2;
            return TermType::arrow(t, parse());
        }
        return t;
    }

    TypePtr atom() {
        skip();
        if (i < s.size() && s[i] == '(') {
            ++i;
            TypePtr t = parse();
            skip();
            if (i >= s.size() || s[i] != ')') throw SyntaxError("expected ')' in type", i);
            ++i;
            return t;
        }
        std::size_t start = i;
        while (i < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
            ++i;
        if (i == start) throw SyntaxError("expected a type", i);
        return TermType::atomic(s.substr(start, i - start));
    }
};

}  // namespace

TypePtr parse_type(const std::string& text) {
    TypeParser p{text};
    TypePtr t = p.parse();
    p.skip();
    if (p.i != text.size()) throw SyntaxError("trailing input after type", p.i);
    return t;
}

void Signature::declare(const std::string& constant, TypePtr type) {
    types_[constant] = std::move(type);
}

bool Signature::declared(const std::string& constant) const {
    return types_.count(constant) > 0;
}

TypePtr Signature::lookup(const std::string& constant, int observed_arity) const {
    auto it = types_.find(constant);
    if (it != types_.end()) return it->second;
    TypePtr t = TermType::atomic(default_atom_);
    for (int i = 0; i < observed_arity; ++i)
        t = TermType::arrow(TermType::atomic(default_atom_), t);
    return t;
}

Signature Signature::from_text(const std::string& text) {
    Signature sig;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto tab = line.find('\t');
        if (tab == std::string::npos) {
            bool blank = true;
            for (char c : line)
                if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
            if (blank) continue;
            throw FormatError("signature line needs 'constant<TAB>type': " + line);
        }
        sig.declare(line.substr(0, tab), parse_type(line.substr(tab + 1)));
    }
    return sig;
}

// ---------------------------------------------------------------------------
// Inference: internal mutable type cells with union-find style resolution.

namespace {

struct Cell;
using CellPtr = std::shared_ptr<Cell>;

struct Cell {
    // var: bound == nullptr && name empty; atom: name set; arrow: from/to set
    bool is_var = false;
    std::string name;
    CellPtr from, to;
    CellPtr bound;  // for vars
};

CellPtr mkvar() {
    auto c = std::make_shared<Cell>();
    c->is_var = true;
    return c;
}

CellPtr mkatom(const std::string& n) {
    auto c = std::make_shared<Cell>();
    c->name = n;
    return c;
}

CellPtr mkarrow(CellPtr f, CellPtr t) {
    auto c = std::make_shared<Cell>();
    c->from = std::move(f);
    c->to = std::move(t);
    return c;
}

CellPtr resolve(CellPtr c) {
    while (c->is_var && c->bound) c = c->bound;
    return c;
}

bool occurs(const CellPtr& var, CellPtr c) {
    c = resolve(c);
    if (c == var) return true;
    if (c->from) return occurs(var, c->from) || occurs(var, c->to);
    return false;
}

void unify(CellPtr a, CellPtr b) {
    a = resolve(a);
    b = resolve(b);
    if (a == b) return;
    if (a->is_var) {
        if (occurs(a, b)) throw TypeClash("recursive type");
        a->bound = b;
        return;
    }
    if (b->is_var) {
        unify(b, a);
        return;
    }
    bool a_arrow = a->from != nullptr, b_arrow = b->from != nullptr;
    if (a_arrow != b_arrow)
        throw TypeClash("cannot unify an arrow type with an atomic type");
    if (a_arrow) {
        unify(a->from, b->from);
        unify(a->to, b->to);
        return;
    }
    if (a->name != b->name)
        throw TypeClash("cannot unify " + a->name + " with " + b->name);
}

CellPtr from_type(const TypePtr& t) {
    if (t->is_atomic()) return mkatom(t->name());
    return mkarrow(from_type(t->from()), from_type(t->to()));
}

struct Inferencer {
    const Signature& sig;
    std::map<std::string, CellPtr> env;  // bound variables

    CellPtr infer(const TermPtr& t) {
        switch (t->kind()) {
            case TermKind::Variable: {
                auto it = env.find(t->name());
                if (it != env.end()) return it->second;
                auto v = mkvar();
                env[t->name()] = v;  // free variable: flexible
                return v;
            }
            case TermKind::Constant:
                return constant_cell(t, 0);
            case TermKind::Abstraction: {
                auto v = mkvar();
                auto saved = env.find(t->name()) != env.end()
                                 ? std::optional(env[t->name()])
                                 : std::nullopt;
                env[t->name()] = v;
                CellPtr body = infer(t->body());
                if (saved) env[t->name()] = *saved; else env.erase(t->name());
                return mkarrow(v, body);
            }
            case TermKind::Application: {
                Spine s = spine_of(t);
                CellPtr f = s.head->is_constant()
                                ? constant_cell(s.head, static_cast<int>(s.args.size()))
                                : infer(s.head);
                for (const auto& a : s.args) {
                    CellPtr arg = infer(a);
                    CellPtr res = mkvar();
                    unify(f, mkarrow(arg, res));
                    f = res;
                }
                return f;
            }
        }
        return mkvar();
    }

    CellPtr constant_cell(const TermPtr& c, int observed_arity) {
        return from_type(sig.lookup(c->name(), observed_arity));
    }
};

TypePtr to_type(const CellPtr& c0, std::map<Cell*, std::string>& names, int& counter) {
    CellPtr c = resolve(const_cast<CellPtr&>(c0));
    if (c->is_var) {
        auto it = names.find(c.get());
        if (it == names.end()) {
            std::string n;
            int k = counter++;
            // a, b, c, ... then t1, t2, ...
            if (k < 26) n = std::string(1, static_cast<char>('a' + k));
            else n = "t" + std::to_string(k - 25);
            it = names.emplace(c.get(), n).first;
        }
        return TermType::atomic(it->second);
    }
    if (c->from) return TermType::arrow(to_type(c->from, names, counter),
                                        to_type(c->to, names, counter));
    return TermType::atomic(c->name);
}

}  // namespace

TypePtr infer_type(const TermPtr& t, const Signature& sig) {
    Inferencer inf{sig, {}};
    CellPtr c = inf.infer(t);
    std::map<Cell*, std::string> names;
    int counter = 0;
    return to_type(c, names, counter);
}

}  // namespace semparse
