#include "semparse/ccg.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace semparse {

CcgTreePtr CcgTree::leaf(CategoryPtr category, std::string word, int begin, int end) {
    auto t = std::shared_ptr<CcgTree>(new CcgTree());
    t->category_ = std::move(category);
    t->word_ = std::move(word);
    t->begin_ = begin;
    t->end_ = end;
    return t;
}

CcgTreePtr CcgTree::node(CategoryPtr category, CombineRule rule, CcgTreePtr left,
                         CcgTreePtr right) {
    auto t = std::shared_ptr<CcgTree>(new CcgTree());
    t->category_ = std::move(category);
    t->rule_ = rule;
    t->begin_ = left->begin();
    t->end_ = right->end();
    t->left_ = std::move(left);
    t->right_ = std::move(right);
    return t;
}

std::vector<const CcgTree*> CcgTree::leaves() const {
    std::vector<const CcgTree*> out;
    std::function<void(const CcgTree*)> rec = [&](const CcgTree* t) {
        if (t->is_leaf()) {
            out.push_back(t);
            return;
        }
        rec(t->left().get());
        rec(t->right().get());
    };
    rec(this);
    return out;
}

std::string CcgTree::phrase_text() const {
    std::string out;
    for (const auto* l : leaves()) {
        if (!out.empty()) out += ' ';
        out += l->word();
    }
    return out;
}

CatLex load_catlex(const std::string& text) {
    CatLex out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw FormatError("catlex line " + std::to_string(lineno) +
                              ": expected word<TAB>categories");
        std::string word = line.substr(0, tab);
        std::string cats = line.substr(tab + 1);
        std::vector<CategoryPtr>& slot = out[word];
        std::size_t pos = 0;
        while (pos <= cats.size()) {
            auto comma = cats.find(',', pos);
            std::string one =
                comma == std::string::npos ? cats.substr(pos) : cats.substr(pos, comma - pos);
            if (!one.empty()) slot.push_back(parse_category(one));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (slot.empty())
            throw FormatError("catlex line " + std::to_string(lineno) + ": no categories");
    }
    return out;
}

std::set<std::string> multiword_keys(const CatLex& catlex) {
    std::set<std::string> out;
    for (const auto& [word, cats] : catlex)
        if (word.find(' ') != std::string::npos) out.insert(word);
    return out;
}

std::vector<std::string> tokenize(const std::string& sentence,
                                  const std::set<std::string>& multiword) {
    std::vector<std::string> words;
    std::istringstream in(sentence);
    std::string w;
    while (in >> w) words.push_back(w);

    std::size_t longest = 1;
    for (const auto& m : multiword)
        longest = std::max(longest,
                           static_cast<std::size_t>(std::count(m.begin(), m.end(), ' ')) + 1);

    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < words.size()) {
        bool merged = false;
        for (std::size_t len = std::min(longest, words.size() - i); len >= 2; --len) {
            std::string cand = words[i];
            for (std::size_t k = 1; k < len; ++k) cand += ' ' + words[i + k];
            if (multiword.count(cand)) {
                out.push_back(cand);
                i += len;
                merged = true;
                break;
            }
        }
        if (!merged) {
            out.push_back(words[i]);
            ++i;
        }
    }
    return out;
}

std::vector<CcgTreePtr> cky_parse(const std::vector<std::string>& tokens,
                                  const CatLex& catlex, int cell_cap) {
    const int n = static_cast<int>(tokens.size());
    if (n == 0) return {};
    // cell[(i,j)]: category text -> trees spanning tokens [i, j)
    std::map<std::pair<int, int>, std::map<std::string, std::vector<CcgTreePtr>>> chart;

    for (int i = 0; i < n; ++i) {
        auto it = catlex.find(tokens[i]);
        if (it == catlex.end()) return {};  // token without categories: no parse
        for (const auto& cat : it->second)
            chart[{i, i + 1}][render_category(cat)].push_back(
                CcgTree::leaf(cat, tokens[i], i, i + 1));
    }

    for (int len = 2; len <= n; ++len) {
        for (int i = 0; i + len <= n; ++i) {
            int j = i + len;
            auto& cell = chart[{i, j}];
            for (int m = i + 1; m < j; ++m) {
                for (const auto& [lk, ltrees] : chart[{i, m}]) {
                    for (const auto& [rk, rtrees] : chart[{m, j}]) {
                        auto comb = combine(ltrees.front()->category(),
                                            rtrees.front()->category());
                        if (!comb) continue;
                        auto& slot = cell[render_category(comb->category)];
                        for (const auto& lt : ltrees) {
                            for (const auto& rt : rtrees) {
                                if (static_cast<int>(slot.size()) >= cell_cap) break;
                                slot.push_back(
                                    CcgTree::node(comb->category, comb->rule, lt, rt));
                            }
                        }
                    }
                }
            }
        }
    }

    auto it = chart[{0, n}].find("S");
    if (it == chart[{0, n}].end()) return {};
    return it->second;
}

// ---------------------------------------------------------------------------
// Derivation files

namespace {

struct SExprParser {
    const std::string& s;
    std::size_t i = 0;

    void skip() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }

    std::string atom() {
        skip();
        std::size_t start = i;
        while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i])) &&
               s[i] != '(' && s[i] != ')')
            ++i;
        if (i == start) throw FormatError("expected an atom in derivation file");
        return s.substr(start, i - start);
    }

    CcgTreePtr parse(int& next_index) {
        skip();
        if (i >= s.size() || s[i] != '(')
            throw FormatError("expected '(' in derivation file");
        ++i;
        std::string tag = atom();
        CategoryPtr cat = parse_category(atom());
        if (tag == "lex") {
            std::string word;
            skip();
            while (i < s.size() && s[i] != ')') {
                if (!word.empty()) word += ' ';
                word += atom();
                skip();
            }
            if (word.empty()) throw FormatError("lex node without a word");
            expect_close();
            int idx = next_index++;
            return CcgTree::leaf(cat, word, idx, idx + 1);
        }
        if (tag != "fa" && tag != "ba")
            throw FormatError("unknown derivation rule: " + tag);
        CcgTreePtr left = parse(next_index);
        CcgTreePtr right = parse(next_index);
        expect_close();
        auto comb = combine(left->category(), right->category());
        if (!comb)
            throw RuleViolation("categories do not combine: " +
                                render_category(left->category()) + " + " +
                                render_category(right->category()));
        CombineRule want = tag == "fa" ? CombineRule::ForwardApp : CombineRule::BackwardApp;
        if (comb->rule != want)
            throw RuleViolation("rule tag does not match the slash direction");
        if (!category_equal(comb->category, cat))
            throw RuleViolation("node category " + render_category(cat) +
                                " does not equal the combination result " +
                                render_category(comb->category));
        return CcgTree::node(cat, comb->rule, left, right);
    }

    void expect_close() {
        skip();
        if (i >= s.size() || s[i] != ')')
            throw FormatError("expected ')' in derivation file");
        ++i;
    }
};

}  // namespace

CcgTreePtr load_derivation(const std::string& text) {
    SExprParser p{text};
    int next_index = 0;
    CcgTreePtr t = p.parse(next_index);
    p.skip();
    if (p.i != text.size()) throw FormatError("trailing input in derivation file");
    return t;
}

std::string render_derivation(const CcgTreePtr& tree) {
    std::ostringstream out;
    std::function<void(const CcgTreePtr&)> rec = [&](const CcgTreePtr& t) {
        if (t->is_leaf()) {
            out << "(lex " << render_category(t->category()) << ' ' << t->word() << ')';
            return;
        }
        out << (t->rule() == CombineRule::ForwardApp ? "(fa " : "(ba ")
            << render_category(t->category()) << ' ';
        rec(t->left());
        out << ' ';
        rec(t->right());
        out << ')';
    };
    rec(tree);
    return out.str();
}

std::vector<std::pair<const CcgTree*, int>> leaf_levels(const CcgTreePtr& tree) {
    std::vector<std::pair<const CcgTree*, int>> out;
    std::function<void(const CcgTree*, int)> rec = [&](const CcgTree* t, int depth) {
        if (t->is_leaf()) {
            out.emplace_back(t, depth);
            return;
        }
        rec(t->left().get(), depth + 1);
        rec(t->right().get(), depth + 1);
    };
    rec(tree.get(), 0);
    return out;
}

std::map<std::string, int> word_levels(const CcgTreePtr& tree) {
    std::map<std::string, int> out;
    for (const auto& [leaf, level] : leaf_levels(tree)) {
        auto it = out.find(leaf->word());
        if (it == out.end() || level < it->second) out[leaf->word()] = level;
    }
    return out;
}

bool is_punctuation_token(const std::string& word) {
    if (word.empty()) return false;
    for (char c : word)
        if (std::isalnum(static_cast<unsigned char>(c))) return false;
    return true;
}

std::set<std::string> top_words(const CcgTreePtr& tree) {
    int best = -1;
    for (const auto& [leaf, level] : leaf_levels(tree)) {
        if (is_punctuation_token(leaf->word())) continue;
        if (best < 0 || level < best) best = level;
    }
    std::set<std::string> out;
    if (best < 0) return out;
    for (const auto& [leaf, level] : leaf_levels(tree))
        if (level == best && !is_punctuation_token(leaf->word())) out.insert(leaf->word());
    return out;
}

// ---------------------------------------------------------------------------
// Semantic composition

namespace {

struct Composer {
    const Lexicon& lex;
    const ComposeOptions& opts;
    long long budget;

    std::vector<SemNodePtr> compose(const CcgTree* t) {
        std::vector<SemNodePtr> out;
        if (t->is_leaf()) {
            const auto& ids = lex.lookup(t->word(), t->category());
            for (int id : ids)
                out.push_back(std::make_shared<SemNode>(
                    SemNode{t, lex.entry(id).semantics, nullptr, nullptr, id}));
            if (out.empty() && opts.hook) {
                for (const auto& e : opts.hook(t->word(), t->category()))
                    out.push_back(std::make_shared<SemNode>(
                        SemNode{t, e.semantics, nullptr, nullptr, -1}));
            }
            if (out.empty() && opts.throw_on_missing)
                throw MissingEntry(t->word(), render_category(t->category()));
            return out;
        }
        auto ls = compose(t->left().get());
        auto rs = compose(t->right().get());
        for (const auto& l : ls) {
            for (const auto& r : rs) {
                if (budget <= 0) return out;
                const SemNodePtr& fn = t->rule() == CombineRule::ForwardApp ? l : r;
                const SemNodePtr& arg = t->rule() == CombineRule::ForwardApp ? r : l;
                try {
                    TermPtr term = beta_normalize(Term::application(fn->term, arg->term),
                                                  opts.beta_limit);
                    out.push_back(std::make_shared<SemNode>(SemNode{t, term, l, r, -1}));
                    --budget;
                } catch (const NonTerminating&) {
                    // ill-typed combination; skip this choice
                }
            }
        }
        return out;
    }
};

void collect_entry_ids(const SemNodePtr& n, std::vector<int>& out) {
    if (!n) return;
    if (n->entry_id >= 0) out.push_back(n->entry_id);
    collect_entry_ids(n->left, out);
    collect_entry_ids(n->right, out);
}

}  // namespace

std::vector<SemDerivation> compose_semantics(const CcgTreePtr& tree, const Lexicon& lex,
                                             const ComposeOptions& opts) {
    Composer c{lex, opts, opts.max_derivations};
    std::vector<SemDerivation> out;
    std::vector<SemNodePtr> roots;
    try {
        roots = c.compose(tree.get());
    } catch (const MissingEntry&) {
        if (opts.throw_on_missing) throw;
        return out;
    }
    for (const auto& r : roots) {
        SemDerivation d;
        d.root = r->term;
        d.trace = r;
        collect_entry_ids(r, d.entry_ids);
        out.push_back(std::move(d));
    }
    return out;
}

}  // namespace semparse
