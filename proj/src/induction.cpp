#include "semparse/induction.hpp"

#include <algorithm>
#include <cctype>

namespace semparse {

std::string fold(const std::string& s) {
    std::string out;
    for (char c : s)
        if (std::isalnum(static_cast<unsigned char>(c)))
            out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

static std::size_t longest_common_substring(const std::string& a, const std::string& b) {
    if (a.empty() || b.empty()) return 0;
    std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
    std::size_t best = 0;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        for (std::size_t j = 1; j <= b.size(); ++j) {
            cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : 0;
            best = std::max(best, cur[j]);
        }
        std::swap(prev, cur);
    }
    return best;
}

double similarity(const std::string& a, const std::string& b) {
    std::string fa = fold(a), fb = fold(b);
    if (fa.empty() || fb.empty()) return 0.0;
    return static_cast<double>(longest_common_substring(fa, fb)) /
           static_cast<double>(std::min(fa.size(), fb.size()));
}

std::set<std::string> nmatch(const std::string& word,
                             const std::set<std::string>& terminals, double accuracy) {
    std::set<std::string> out;
    for (const auto& t : terminals)
        if (similarity(word, t) >= accuracy) out.insert(t);
    return out;
}

std::vector<const CcgTree*> find_nouns(const CcgTreePtr& tree) {
    std::vector<const CcgTree*> out;
    for (const auto* leaf : tree->leaves()) {
        const auto& cat = leaf->category();
        if (cat->is_atom() && (cat->name() == "N" || cat->name() == "NP"))
            out.push_back(leaf);
    }
    return out;
}

namespace {

// (word, category) pairs for every top-word leaf of the parse.
std::vector<std::pair<std::string, CategoryPtr>> top_word_leaves(const CcgTreePtr& parse) {
    auto tops = top_words(parse);
    std::vector<std::pair<std::string, CategoryPtr>> out;
    std::set<std::string> seen;
    for (const auto* leaf : parse->leaves()) {
        if (!tops.count(leaf->word())) continue;
        std::string key = leaf->word() + "\t" + render_category(leaf->category());
        if (seen.insert(key).second) out.emplace_back(leaf->word(), leaf->category());
    }
    return out;
}

void add_sorted(Lexicon& lex, std::vector<LexiconEntry> batch) {
    std::stable_sort(batch.begin(), batch.end(),
                     [](const LexiconEntry& a, const LexiconEntry& b) {
                         auto ka = std::make_tuple(a.phrase_text(),
                                                   render_category(a.category),
                                                   render_term(a.semantics));
                         auto kb = std::make_tuple(b.phrase_text(),
                                                   render_category(b.category),
                                                   render_term(b.semantics));
                         return ka < kb;
                     });
    for (auto& e : batch) lex.add(std::move(e));
}

}  // namespace

Lexicon initial_c(const std::vector<CorpusExample>& corpus,
                  const std::vector<CcgTreePtr>& parses,
                  const std::vector<DerivationTree>& derivations, const Grammar& g) {
    (void)g;
    if (corpus.size() != parses.size() || corpus.size() != derivations.size())
        throw Error("initial_c: corpus, parses and derivations must align");
    std::vector<LexiconEntry> batch;
    std::vector<std::vector<std::pair<std::string, CategoryPtr>>> tops(corpus.size());
    for (std::size_t i = 0; i < corpus.size(); ++i) tops[i] = top_word_leaves(parses[i]);

    for (std::size_t i = 0; i < corpus.size(); ++i) {
        for (std::size_t j = 0; j < corpus.size(); ++j) {
            auto tpl = common_template(derivations[i], derivations[j]);
            if (!tpl) continue;
            TermPtr term;
            try {
                term = template_to_term(*tpl);
            } catch (const UnparsableTemplate&) {
                continue;
            }
            for (const auto* which : {&tops[i], &tops[j]}) {
                for (const auto& [word, cat] : *which) {
                    LexiconEntry e;
                    e.phrase = {word};  // a leaf token, chunks included
                    e.category = cat;
                    e.semantics = term;
                    e.weight = 0.1;
                    e.provenance = Provenance::InitialC;
                    batch.push_back(std::move(e));
                }
            }
        }
    }
    Lexicon lex;
    add_sorted(lex, std::move(batch));
    return lex;
}

namespace {

struct NounWalker {
    const DerivationTree& tree;
    const std::vector<std::string>& sentence_words;
    const std::string& noun;
    const InductionConfig& cfg;

    bool matches_other_word(const std::string& symbol) const {
        for (const auto& w : sentence_words)
            if (w != noun && similarity(w, symbol) >= cfg.accuracy) return true;
        return false;
    }

    // Template for the subtree rooted at n: leaves matching other sentence
    // words through an interposed nonterminal become bound variables.
    TermPtr candidate(const DerivationNode* n) const {
        auto leaves = tree.subtree_leaves(n);
        std::string body;
        std::vector<std::string> binders;
        ParseOptions opts;
        for (const auto* leaf : leaves) {
            bool interposed = false;
            for (const DerivationNode* cur = tree.parent(leaf); cur && cur != n;
                 cur = tree.parent(cur))
                if (!cur->terminal) interposed = true;
            std::string piece = leaf->symbol;
            if (interposed && matches_other_word(leaf->symbol)) {
                std::string v = "_v" + std::to_string(binders.size() + 1);
                binders.push_back(v);
                opts.open_variables.insert(v);
                piece = v;
            }
            if (!body.empty()) body += ' ';
            body += piece;
        }
        TermPtr term;
        try {
            term = parse_term_ex(body, opts).term;
        } catch (const SyntaxError&) {
            return nullptr;
        }
        for (auto it = binders.rbegin(); it != binders.rend(); ++it)
            term = Term::abstraction(*it, term);
        // pretty binder names, as for templates
        std::set<std::string> taken = constants_of(term);
        TermPtr cur = term;
        for (std::size_t k = 0; k < binders.size(); ++k) cur = cur->body();
        std::vector<std::string> pretty;
        for (std::size_t k = 0; k < binders.size(); ++k) {
            std::string base;
            if (binders.size() == 1) {
                base = "v";
            } else {
                static const char* names[] = {"x", "y", "z", "w", "u", "v"};
                base = k < 6 ? names[k] : "x" + std::to_string(k - 5);
            }
            std::string nn = fresh_name(base, taken);
            taken.insert(nn);
            pretty.push_back(nn);
            cur = substitute(cur, binders[k], Term::variable(nn));
        }
        for (auto it = pretty.rbegin(); it != pretty.rend(); ++it)
            cur = Term::abstraction(*it, cur);
        return cur;
    }

    int nonterminal_children(const DerivationNode* n) const {
        int c = 0;
        for (const auto& ch : n->children)
            if (!ch->terminal) ++c;
        return c;
    }

    bool terminal_child_matches_other(const DerivationNode* n) const {
        for (const auto& ch : n->children)
            if (ch->terminal && matches_other_word(ch->symbol)) return true;
        return false;
    }

    std::vector<TermPtr> run() const {
        std::set<std::string> term_symbols;
        for (const auto* l : tree.leaves()) term_symbols.insert(l->symbol);
        auto matched = nmatch(noun, term_symbols, cfg.accuracy);
        if (matched.empty()) return {};
        const DerivationNode* n = mcyk(tree, matched);
        std::vector<TermPtr> out;
        if (TermPtr c = candidate(n)) out.push_back(c);
        for (int step = 0; step < cfg.maxlevel; ++step) {
            if (nonterminal_children(n) >= 2) break;
            const DerivationNode* p = mcyk(tree, n);  // ascend
            if (!p) break;
            if (terminal_child_matches_other(p)) break;
            n = p;
            if (TermPtr c = candidate(n)) out.push_back(c);
        }
        return out;
    }
};

}  // namespace

Lexicon initial_n(const std::vector<CorpusExample>& corpus,
                  const std::vector<CcgTreePtr>& parses,
                  const std::vector<DerivationTree>& derivations, const Grammar& g,
                  const InductionConfig& cfg) {
    (void)g;
    if (corpus.size() != parses.size() || corpus.size() != derivations.size())
        throw Error("initial_n: corpus, parses and derivations must align");
    std::vector<LexiconEntry> batch;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        std::vector<std::string> words;
        for (const auto* l : parses[i]->leaves()) words.push_back(l->word());
        for (const auto* nounleaf : find_nouns(parses[i])) {
            NounWalker walker{derivations[i], words, nounleaf->word(), cfg};
            for (const auto& term : walker.run()) {
                LexiconEntry e;
                e.phrase = {nounleaf->word()};
                e.category = nounleaf->category();
                e.semantics = term;
                e.weight = 0.1;
                e.provenance = Provenance::InitialN;
                batch.push_back(std::move(e));
            }
        }
    }
    Lexicon lex;
    add_sorted(lex, std::move(batch));
    return lex;
}

Lexicon induce_initial_lexicon(const std::vector<CorpusExample>& corpus,
                               const std::vector<CcgTreePtr>& parses,
                               const std::vector<DerivationTree>& derivations,
                               const Grammar& g, const InductionConfig& cfg) {
    Lexicon c = initial_c(corpus, parses, derivations, g);
    Lexicon n = initial_n(corpus, parses, derivations, g, cfg);
    Lexicon out;
    std::vector<LexiconEntry> batch;
    for (const auto& e : c.entries()) batch.push_back(e);
    for (const auto& e : n.entries()) batch.push_back(e);
    add_sorted(out, std::move(batch));
    return out;
}

}  // namespace semparse
