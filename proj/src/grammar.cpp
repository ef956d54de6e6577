#include "semparse/grammar.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>
#include <tuple>

namespace semparse {

std::vector<const Production*> Grammar::productions_of(const std::string& lhs) const {
    std::vector<const Production*> out;
    for (const auto& p : productions)
        if (p.lhs == lhs) out.push_back(&p);
    return out;
}

Grammar load_cfg(const std::string& text) {
    Grammar g;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        // strip comments, but not inside quoted terminals
        std::string stripped;
        bool quoted = false;
        for (char c : line) {
            if (c == '"') quoted = !quoted;
            if (c == '#' && !quoted) break;
            stripped += c;
        }
        std::size_t i = 0;
        auto skip = [&] {
            while (i < stripped.size() && std::isspace(static_cast<unsigned char>(stripped[i])))
                ++i;
        };
        skip();
        if (i >= stripped.size()) continue;

        auto word = [&]() -> std::string {
            std::size_t start = i;
            while (i < stripped.size() &&
                   (std::isalnum(static_cast<unsigned char>(stripped[i])) ||
                    stripped[i] == '_'))
                ++i;
            return stripped.substr(start, i - start);
        };

        Production p;
        p.lhs = word();
        if (p.lhs.empty())
            throw FormatError("grammar line " + std::to_string(lineno) +
                              ": expected a nonterminal");
        skip();
        if (stripped.compare(i, 2, "->") != 0)
            throw FormatError("grammar line " + std::to_string(lineno) + ": expected '->'");
        i += 2;
        for (;;) {
            skip();
            if (i >= stripped.size()) break;
            if (stripped[i] == '"') {
                std::size_t start = ++i;
                while (i < stripped.size() && stripped[i] != '"') ++i;
                if (i >= stripped.size())
                    throw FormatError("grammar line " + std::to_string(lineno) +
                                      ": unterminated terminal");
                p.rhs.push_back({true, stripped.substr(start, i - start)});
                ++i;
            } else {
                std::string w = word();
                if (w.empty())
                    throw FormatError("grammar line " + std::to_string(lineno) +
                                      ": bad item");
                p.rhs.push_back({false, w});
            }
        }
        if (p.rhs.empty())
            throw FormatError("grammar line " + std::to_string(lineno) +
                              ": empty right-hand side");
        for (const auto& q : g.productions)
            if (q == p)
                throw DuplicateProduction("duplicate production for " + p.lhs +
                                          " at line " + std::to_string(lineno));
        if (g.productions.empty()) g.initial = p.lhs;
        g.nonterminals.insert(p.lhs);
        for (const auto& item : p.rhs)
            if (item.terminal) g.terminals.insert(item.text);
        g.productions.push_back(std::move(p));
    }
    if (g.productions.empty()) throw FormatError("grammar has no productions");
    for (const auto& p : g.productions)
        for (const auto& item : p.rhs)
            if (!item.terminal && !g.nonterminals.count(item.text))
                throw UndefinedSymbol("nonterminal " + item.text + " has no production");
    return g;
}

DerivationTree::DerivationTree(DerivPtr root) : root_(std::move(root)) {
    std::function<void(const DerivationNode*)> rec = [&](const DerivationNode* n) {
        if (n->children.empty()) {
            if (n->terminal) leaves_.push_back(n);
            return;
        }
        for (const auto& c : n->children) {
            parent_[c.get()] = n;
            rec(c.get());
        }
    };
    rec(root_.get());
}

const DerivationNode* DerivationTree::parent(const DerivationNode* n) const {
    auto it = parent_.find(n);
    return it == parent_.end() ? nullptr : it->second;
}

std::vector<const DerivationNode*> DerivationTree::preorder() const {
    std::vector<const DerivationNode*> out;
    std::function<void(const DerivationNode*)> rec = [&](const DerivationNode* n) {
        out.push_back(n);
        for (const auto& c : n->children) rec(c.get());
    };
    rec(root_.get());
    return out;
}

std::vector<const DerivationNode*> DerivationTree::subtree_leaves(
    const DerivationNode* n) const {
    std::vector<const DerivationNode*> out;
    std::function<void(const DerivationNode*)> rec = [&](const DerivationNode* m) {
        if (m->children.empty()) {
            if (m->terminal) out.push_back(m);
            return;
        }
        for (const auto& c : m->children) rec(c.get());
    };
    rec(n);
    return out;
}

bool DerivationTree::dominates(const DerivationNode* anc, const DerivationNode* n) const {
    for (const DerivationNode* cur = n; cur; cur = parent(cur))
        if (cur == anc) return true;
    return false;
}

std::string DerivationTree::yield() const {
    std::string out;
    for (const auto* l : leaves_) out += l->symbol;
    return out;
}

std::vector<std::string> tokenize_lf(const std::string& lf, const Grammar& g) {
    std::vector<std::string> terms(g.terminals.begin(), g.terminals.end());
    std::sort(terms.begin(), terms.end(), [](const std::string& a, const std::string& b) {
        return a.size() != b.size() ? a.size() > b.size() : a < b;
    });
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < lf.size()) {
        if (std::isspace(static_cast<unsigned char>(lf[i]))) {
            ++i;
            continue;
        }
        bool matched = false;
        for (const auto& t : terms) {
            if (lf.compare(i, t.size(), t) == 0) {
                out.push_back(t);
                i += t.size();
                matched = true;
                break;
            }
        }
        if (!matched)
            throw NoDerivation("logical form has no terminal at offset " +
                               std::to_string(i) + ": " + lf.substr(i, 12));
    }
    return out;
}

namespace {

struct ChartDeriver {
    const Grammar& g;
    const std::vector<std::string>& toks;
    // (symbol, i, j) -> up to two derivations
    std::map<std::tuple<std::string, int, int>, std::vector<DerivPtr>> memo;
    std::set<std::tuple<std::string, int, int>> in_progress;

    std::vector<DerivPtr> nonterminal(const std::string& sym, int i, int j) {
        auto key = std::make_tuple(sym, i, j);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        if (!in_progress.insert(key).second) return {};
        std::vector<DerivPtr> results;
        for (const Production* p : g.productions_of(sym)) {
            for (auto& children : match(p->rhs, 0, i, j)) {
                auto node = std::make_shared<DerivationNode>();
                node->symbol = sym;
                node->terminal = false;
                node->children = std::move(children);
                results.push_back(node);
                if (results.size() >= 2) break;
            }
            if (results.size() >= 2) break;
        }
        in_progress.erase(key);
        memo[key] = results;
        return results;
    }

    std::vector<std::vector<DerivPtr>> match(const std::vector<GrammarItem>& rhs,
                                             std::size_t idx, int i, int j) {
        std::vector<std::vector<DerivPtr>> out;
        if (idx == rhs.size()) {
            if (i == j) out.push_back({});
            return out;
        }
        const GrammarItem& item = rhs[idx];
        int remaining = static_cast<int>(rhs.size() - idx - 1);
        if (item.terminal) {
            if (i < j && toks[i] == item.text) {
                auto leaf = std::make_shared<DerivationNode>();
                leaf->symbol = item.text;
                leaf->terminal = true;
                for (auto& rest : match(rhs, idx + 1, i + 1, j)) {
                    std::vector<DerivPtr> children{leaf};
                    children.insert(children.end(), rest.begin(), rest.end());
                    out.push_back(std::move(children));
                    if (out.size() >= 2) return out;
                }
            }
            return out;
        }
        for (int m = i + 1; m <= j - remaining; ++m) {
            auto firsts = nonterminal(item.text, i, m);
            if (firsts.empty()) continue;
            auto rests = match(rhs, idx + 1, m, j);
            for (const auto& f : firsts) {
                for (const auto& rest : rests) {
                    std::vector<DerivPtr> children{f};
                    children.insert(children.end(), rest.begin(), rest.end());
                    out.push_back(std::move(children));
                    if (out.size() >= 2) return out;
                }
            }
        }
        return out;
    }
};

}  // namespace

DerivationTree derive(const std::string& lf, const Grammar& g) {
    std::vector<std::string> toks = tokenize_lf(lf, g);
    if (toks.empty()) throw NoDerivation("empty logical form");
    ChartDeriver d{g, toks, {}, {}};
    auto roots = d.nonterminal(g.initial, 0, static_cast<int>(toks.size()));
    if (roots.empty()) throw NoDerivation("no derivation for: " + lf);
    if (roots.size() > 1) throw AmbiguousDerivation("ambiguous derivation for: " + lf);
    return DerivationTree(roots.front());
}

// ---------------------------------------------------------------------------
// Common templates

namespace {

// nullptr result means the branch aborted (differing terminals).
LambdaNodePtr build_template(const DerivationNode* a, const DerivationNode* b,
                             int& var_counter) {
    auto mkvar = [&] {
        auto v = std::make_shared<LambdaTreeNode>();
        v->kind = LambdaTreeNode::Variable;
        v->text = "_v" + std::to_string(++var_counter);
        return v;
    };
    if (a->terminal != b->terminal) return nullptr;
    if (a->terminal) {
        if (a->symbol != b->symbol) return nullptr;
        auto t = std::make_shared<LambdaTreeNode>();
        t->kind = LambdaTreeNode::Terminal;
        t->text = a->symbol;
        return t;
    }
    if (a->symbol != b->symbol) return mkvar();
    if (a->children.size() != b->children.size() || a->children.empty()) return mkvar();
    std::vector<LambdaNodePtr> children;
    int saved = var_counter;
    for (std::size_t i = 0; i < a->children.size(); ++i) {
        LambdaNodePtr c =
            build_template(a->children[i].get(), b->children[i].get(), var_counter);
        if (!c) {
            var_counter = saved;
            return mkvar();
        }
        children.push_back(std::move(c));
    }
    auto n = std::make_shared<LambdaTreeNode>();
    n->kind = LambdaTreeNode::NonTerminal;
    n->text = a->symbol;
    n->children = std::move(children);
    return n;
}

void collect_template_leaves(const LambdaNodePtr& n,
                             std::vector<const LambdaTreeNode*>& out) {
    if (n->children.empty()) {
        out.push_back(n.get());
        return;
    }
    for (const auto& c : n->children) collect_template_leaves(c, out);
}

}  // namespace

std::optional<LambdaTree> common_template(const DerivationTree& t1,
                                          const DerivationTree& t2) {
    const DerivationNode* r1 = t1.root().get();
    const DerivationNode* r2 = t2.root().get();
    if (r1->symbol != r2->symbol || r1->terminal || r2->terminal) return std::nullopt;
    int var_counter = 0;
    LambdaNodePtr root = build_template(r1, r2, var_counter);
    if (!root || root->kind == LambdaTreeNode::Variable) return std::nullopt;
    LambdaTree lt;
    lt.root = root;
    std::vector<const LambdaTreeNode*> leaves;
    collect_template_leaves(root, leaves);
    for (const auto* l : leaves)
        if (l->kind == LambdaTreeNode::Variable) lt.variables.push_back(l->text);
    return lt;
}

TermPtr template_to_term(const LambdaTree& lt) {
    std::vector<const LambdaTreeNode*> leaves;
    collect_template_leaves(lt.root, leaves);
    if (leaves.empty()) throw UnparsableTemplate("template has no leaves");
    std::string body;
    for (const auto* l : leaves) {
        if (!body.empty()) body += ' ';
        body += l->text;
    }
    ParseOptions opts;
    for (const auto& v : lt.variables) opts.open_variables.insert(v);
    TermPtr term;
    try {
        term = parse_term_ex(body, opts).term;
    } catch (const SyntaxError& e) {
        throw UnparsableTemplate("template body does not parse: " + body + " (" +
                                 e.what() + ")");
    }
    for (auto it = lt.variables.rbegin(); it != lt.variables.rend(); ++it)
        term = Term::abstraction(*it, term);

    // Pretty binder names: a single variable is v; several are x, y, z, ...
    std::set<std::string> taken = constants_of(term);
    std::vector<std::string> pretty;
    if (lt.variables.size() == 1) {
        pretty.push_back(fresh_name("v", taken));
    } else {
        static const char* names[] = {"x", "y", "z", "w", "u", "v"};
        for (std::size_t i = 0; i < lt.variables.size(); ++i) {
            std::string base = i < 6 ? names[i] : "x" + std::to_string(i - 5);
            std::string n = fresh_name(base, taken);
            taken.insert(n);
            pretty.push_back(n);
        }
    }
    TermPtr renamed = term;
    std::vector<std::string> binders = lt.variables;
    // peel, rename, rewrap
    std::vector<TermPtr> bodies;
    TermPtr cur = renamed;
    for (std::size_t i = 0; i < binders.size(); ++i) cur = cur->body();
    for (std::size_t i = 0; i < binders.size(); ++i)
        cur = substitute(cur, binders[i], Term::variable(pretty[i]));
    for (auto it = pretty.rbegin(); it != pretty.rend(); ++it)
        cur = Term::abstraction(*it, cur);
    return cur;
}

const DerivationNode* mcyk(const DerivationTree& tree,
                           const std::set<std::string>& symbols) {
    std::vector<const DerivationNode*> sites;
    for (const auto* n : tree.preorder())
        if (symbols.count(n->symbol) &&
            (n->terminal ? n->children.empty() : !n->children.empty()))
            sites.push_back(n);
    for (const auto& s : symbols) {
        bool found = false;
        for (const auto* n : sites)
            if (n->symbol == s) found = true;
        if (!found) throw NotDominated("symbol " + s + " does not occur in the tree");
    }
    if (sites.empty()) throw NotDominated("no occurrence sites");

    // chain of ancestors of the first site; lowest one dominating all sites
    std::vector<const DerivationNode*> chain;
    for (const DerivationNode* cur = sites.front(); cur; cur = tree.parent(cur))
        chain.push_back(cur);
    for (const auto* cand : chain) {
        bool all = true;
        for (const auto* s : sites)
            if (!tree.dominates(cand, s)) all = false;
        if (!all) continue;
        if (cand->terminal) continue;  // a terminal leaf cannot be the answer
        return cand;
    }
    throw NotDominated("no dominating nonterminal");
}

const DerivationNode* mcyk(const DerivationTree& tree, const DerivationNode* node) {
    return tree.parent(node);
}

}  // namespace semparse
