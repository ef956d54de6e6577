#include "semparse/learner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "semparse/induction.hpp"

namespace semparse {

// ---------------------------------------------------------------------------
// Generalization

namespace {

// The Constant standing for `word` in the style of the donor constant:
// quoted donors stay quoted, everything else is the folded word.
std::string derived_constant(const std::string& word, const std::string& donor_constant) {
    std::string base = fold(word);
    if (!donor_constant.empty() && donor_constant.front() == '\'') {
        // keep interior spaces of multiword nouns ('new york')
        std::string spaced;
        for (char c : word) {
            if (std::isalnum(static_cast<unsigned char>(c)))
                spaced += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
            else if (c == ' ' && !spaced.empty() && spaced.back() != ' ')
                spaced += ' ';
        }
        return "'" + spaced + "'";
    }
    return base;
}

}  // namespace

std::vector<LexiconEntry> generalize_on_demand(const Lexicon& lex, const std::string& word,
                                               const CategoryPtr& category) {
    std::vector<LexiconEntry> out;
    std::set<std::string> seen;
    for (const auto& donor : lex.entries()) {
        if (!category_equal(donor.category, category)) continue;
        std::string donor_word = donor.phrase_text();
        if (donor_word == word) continue;
        // find the donor's own constant inside its semantics
        std::string best_const;
        double best_sim = 0.0;
        for (const auto& c : constants_of(donor.semantics)) {
            double s = similarity(donor_word, c);
            if (s > best_sim || (s == best_sim && !best_const.empty() && c < best_const)) {
                best_sim = s;
                best_const = c;
            }
        }
        if (best_sim < kDefaultAccuracy) continue;
        std::string replacement = derived_constant(word, best_const);
        if (replacement.empty() || replacement == "''") continue;
        TermPtr swapped = replace(donor.semantics, {Term::constant(best_const)},
                                  {Term::constant(replacement)});
        if (!seen.insert(canonical_key(swapped)).second) continue;
        if (lex.contains(word, category, swapped)) continue;
        LexiconEntry e;
        e.phrase = {word};
        e.category = category;
        e.semantics = swapped;
        e.weight = 0.1;
        e.provenance = Provenance::Generalized;
        out.push_back(std::move(e));
    }
    return out;
}

Lexicon generalize_mass(const Lexicon& lex) {
    Lexicon out = lex;
    std::vector<LexiconEntry> fresh;
    std::set<std::string> pairs_seen;
    for (const auto& e : lex.entries()) {
        std::string key = e.phrase_text() + "\t" + render_category(e.category);
        if (!pairs_seen.insert(key).second) continue;
        for (auto& g : generalize_on_demand(lex, e.phrase_text(), e.category))
            fresh.push_back(std::move(g));
    }
    std::stable_sort(fresh.begin(), fresh.end(),
                     [](const LexiconEntry& a, const LexiconEntry& b) {
                         auto ka = std::make_tuple(a.phrase_text(),
                                                   render_category(a.category),
                                                   render_term(a.semantics));
                         auto kb = std::make_tuple(b.phrase_text(),
                                                   render_category(b.category),
                                                   render_term(b.semantics));
                         return ka < kb;
                     });
    for (auto& e : fresh) out.add(std::move(e));
    return out;
}

std::vector<LexiconEntry> trivial_entries(const Lexicon& lex, const std::string& word,
                                          const CategoryPtr& category) {
    if (!lex.lookup(word, category).empty()) return {};
    static const char* templates[] = {"\\x. x", "\\x. \\y. y @ x"};
    std::vector<LexiconEntry> out;
    for (const char* t : templates) {
        LexiconEntry e;
        e.phrase = {word};
        e.category = category;
        e.semantics = parse_term(t);
        e.weight = 0.1;
        e.provenance = Provenance::Trivial;
        out.push_back(std::move(e));
    }
    return out;
}

void add_punctuation_entries(Lexicon& lex) {
    for (const char* p : {".", "?", "!"}) {
        LexiconEntry e;
        e.phrase = {p};
        e.category = parse_category("S\\S");
        e.semantics = parse_term("\\x. x");
        e.weight = 0.1;
        e.provenance = Provenance::Trivial;
        lex.add(std::move(e));
    }
}

// ---------------------------------------------------------------------------
// Inverse extraction

namespace {

struct Extractor {
    const Lexicon& lex;
    const TrainConfig& cfg;
    std::vector<LexiconEntry> found;
    std::set<std::string> found_keys;

    void record(const CcgTree* node, const TermPtr& term, Provenance prov) {
        std::string phrase = node->phrase_text();
        if (lex.contains(phrase, node->category(), term)) return;
        std::string key = phrase + "\t" + render_category(node->category()) + "\t" +
                          canonical_key(term);
        if (!found_keys.insert(key).second) return;
        LexiconEntry e;
        e.phrase = {};
        for (const auto* l : node->leaves()) e.phrase.push_back(l->word());
        e.category = node->category();
        e.semantics = term;
        e.weight = 0.1;
        e.provenance = prov;
        found.push_back(std::move(e));
    }

    // Lexicon meanings of a node; leaves fall back to on-demand
    // generalization, which also lands in the output.
    std::vector<TermPtr> known_meanings(const CcgTree* node) {
        std::vector<TermPtr> out;
        std::string phrase = node->phrase_text();
        for (int id : lex.lookup(phrase, node->category()))
            out.push_back(lex.entry(id).semantics);
        if (out.empty())
            for (const auto& e : found)
                if (e.phrase_text() == phrase && category_equal(e.category, node->category()))
                    out.push_back(e.semantics);
        if (out.empty() && node->is_leaf()) {
            for (const auto& e : generalize_on_demand(lex, node->word(), node->category())) {
                record(node, e.semantics, Provenance::Generalized);
                out.push_back(e.semantics);
            }
        }
        return out;
    }

    std::vector<TermPtr> dedup_cap(std::vector<TermPtr> terms) const {
        std::vector<TermPtr> out;
        std::set<std::string> seen;
        for (const auto& t : terms) {
            if (!t) continue;
            if (!seen.insert(canonical_key(t)).second) continue;
            out.push_back(t);
            if (static_cast<int>(out.size()) >= cfg.node_candidate_cap) break;
        }
        return out;
    }

    void walk(const CcgTree* node, const std::vector<TermPtr>& meanings, bool is_root) {
        auto here = dedup_cap(meanings);
        if (!is_root)
            for (const auto& m : here) record(node, m, Provenance::Inverse);
        if (node->is_leaf() || here.empty()) return;

        const CcgTree* fn_child =
            node->rule() == CombineRule::ForwardApp ? node->left().get() : node->right().get();
        const CcgTree* arg_child =
            node->rule() == CombineRule::ForwardApp ? node->right().get() : node->left().get();

        std::vector<TermPtr> fn_known = known_meanings(fn_child);
        std::vector<TermPtr> arg_known = known_meanings(arg_child);
        std::vector<TermPtr> fn_cands = fn_known;
        std::vector<TermPtr> arg_cands = arg_known;

        for (const auto& h : here) {
            for (const auto& g : arg_known) {
                try {
                    InverseSolution s = inverse_l(h, g, cfg.beta_limit);
                    if (!s.is_null()) fn_cands.push_back(s.term);
                } catch (const NonTerminating&) {
                }
            }
            for (const auto& g : fn_known) {
                try {
                    InverseSolution s = inverse_r(h, g, cfg.beta_limit);
                    if (!s.is_null()) arg_cands.push_back(s.term);
                } catch (const NonTerminating&) {
                }
            }
        }
        walk(fn_child, fn_cands, false);
        walk(arg_child, arg_cands, false);
    }
};

}  // namespace

std::vector<LexiconEntry> extract_by_inverse(const CcgTreePtr& tree, const TermPtr& target,
                                             const Lexicon& lex, const TrainConfig& cfg) {
    Extractor ex{lex, cfg, {}, {}};
    TermPtr goal = beta_normalize(target, cfg.beta_limit);
    ex.walk(tree.get(), {goal}, true);
    std::stable_sort(ex.found.begin(), ex.found.end(),
                     [](const LexiconEntry& a, const LexiconEntry& b) {
                         auto ka = std::make_tuple(a.phrase_text(),
                                                   render_category(a.category),
                                                   render_term(a.semantics));
                         auto kb = std::make_tuple(b.phrase_text(),
                                                   render_category(b.category),
                                                   render_term(b.semantics));
                         return ka < kb;
                     });
    return ex.found;
}

// ---------------------------------------------------------------------------
// Decoding and parameter estimation

std::vector<ScoredDerivation> enumerate_derivations(const std::vector<std::string>& tokens,
                                                    const Model& model, const CatLex& catlex,
                                                    const TrainConfig& cfg, bool generalize) {
    std::vector<ScoredDerivation> out;
    auto trees = cky_parse(tokens, catlex, cfg.cell_cap);
    ComposeOptions opts;
    opts.max_derivations = cfg.max_derivations;
    opts.beta_limit = cfg.beta_limit;
    opts.throw_on_missing = false;
    if (generalize) {
        const Lexicon* lexp = &model.lexicon;
        opts.hook = [lexp](const std::string& word, const CategoryPtr& cat) {
            return generalize_on_demand(*lexp, word, cat);
        };
    }
    int budget = cfg.max_derivations;
    int tree_count = 0;
    for (const auto& tree : trees) {
        if (tree_count++ >= cfg.max_parse_trees) break;
        if (budget <= 0) break;
        ComposeOptions local = opts;
        local.max_derivations = budget;
        for (auto& d : compose_semantics(tree, model.lexicon, local)) {
            double score = 0.0;
            for (int id : d.entry_ids) score += model.lexicon.weight(id);
            out.push_back({std::move(d), score, tree});
            --budget;
            if (budget <= 0) break;
        }
    }
    return out;
}

std::optional<BestParse> parse_best(const std::vector<std::string>& tokens,
                                    const Model& model, const CatLex& catlex,
                                    const TrainConfig& cfg, bool generalize) {
    auto all = enumerate_derivations(tokens, model, catlex, cfg, generalize);
    if (all.empty()) return std::nullopt;
    std::size_t best = 0;
    for (std::size_t i = 1; i < all.size(); ++i)
        if (all[i].score > all[best].score) best = i;
    // softmax share of the winner
    double mx = all[best].score;
    double z = 0.0;
    for (const auto& d : all) z += std::exp(d.score - mx);
    BestParse bp{all[best].derivation.root, all[best], std::exp(0.0) / z};
    return bp;
}

namespace {

struct ExampleStats {
    std::map<int, double> expected_all;
    std::map<int, double> expected_correct;
    double log_prob_correct;  // log sum_correct / sum_all
    bool has_correct;
};

ExampleStats example_stats(const std::vector<ScoredDerivation>& all,
                           const TermPtr& gold, const TrainConfig& cfg) {
    ExampleStats st{{}, {}, 0.0, false};
    if (all.empty()) return st;
    double mx = all.front().score;
    for (const auto& d : all) mx = std::max(mx, d.score);
    double z_all = 0.0, z_correct = 0.0;
    std::vector<double> w(all.size());
    std::vector<bool> correct(all.size());
    for (std::size_t i = 0; i < all.size(); ++i) {
        w[i] = std::exp(all[i].score - mx);
        z_all += w[i];
        bool ok = false;
        try {
            ok = alpha_beta_equiv(all[i].derivation.root, gold, cfg.beta_limit);
        } catch (const NonTerminating&) {
        }
        correct[i] = ok;
        if (ok) z_correct += w[i];
    }
    if (z_correct <= 0.0) return st;
    st.has_correct = true;
    st.log_prob_correct = std::log(z_correct) - std::log(z_all);
    for (std::size_t i = 0; i < all.size(); ++i) {
        double p_all = w[i] / z_all;
        for (int id : all[i].derivation.entry_ids) st.expected_all[id] += p_all;
        if (correct[i]) {
            double p_c = w[i] / z_correct;
            for (int id : all[i].derivation.entry_ids) st.expected_correct[id] += p_c;
        }
    }
    return st;
}

}  // namespace

std::optional<std::map<int, double>> gradient_for_example(
    const Model& model, const CatLex& catlex, const std::vector<std::string>& tokens,
    const TermPtr& gold, const TrainConfig& cfg) {
    auto all = enumerate_derivations(tokens, model, catlex, cfg);
    ExampleStats st = example_stats(all, gold, cfg);
    if (!st.has_correct) return std::nullopt;
    std::map<int, double> grad = st.expected_correct;
    for (const auto& [id, v] : st.expected_all) grad[id] -= v;
    return grad;
}

double log_likelihood(const Model& model, const CatLex& catlex,
                      const std::vector<CorpusExample>& corpus, const TrainConfig& cfg) {
    double ll = 0.0;
    auto chunks = multiword_keys(catlex);
    for (const auto& ex : corpus) {
        auto tokens = tokenize(ex.sentence, chunks);
        TermPtr gold = parse_term(ex.logical_form);
        auto all = enumerate_derivations(tokens, model, catlex, cfg);
        ExampleStats st = example_stats(all, gold, cfg);
        if (st.has_correct) ll += st.log_prob_correct;
    }
    return ll;
}

void update_params(Model& model, const CatLex& catlex,
                   const std::vector<CorpusExample>& corpus, const TrainConfig& cfg) {
    auto chunks = multiword_keys(catlex);
    for (const auto& ex : corpus) {
        auto tokens = tokenize(ex.sentence, chunks);
        TermPtr gold;
        try {
            gold = parse_term(ex.logical_form);
        } catch (const SyntaxError&) {
            continue;
        }
        auto grad = gradient_for_example(model, catlex, tokens, gold, cfg);
        if (!grad) continue;  // degenerate example: no derivation yields L_i
        double lr = model.alpha0 / (1.0 + model.decay_c * static_cast<double>(model.step));
        for (const auto& [id, g] : *grad)
            model.lexicon.set_weight(id, model.lexicon.weight(id) + lr * g);
        ++model.step;
    }
}

// ---------------------------------------------------------------------------
// The overall loop

Model learn(const std::vector<CorpusExample>& corpus, const Lexicon& initial_lexicon,
            const CatLex& catlex, const TrainConfig& cfg) {
    Model model;
    model.lexicon = initial_lexicon;
    model.alpha0 = cfg.alpha0;
    model.decay_c = cfg.decay_c;
    add_punctuation_entries(model.lexicon);
    auto chunks = multiword_keys(catlex);

    for (int t = 1; t <= cfg.iterations; ++t) {
        // Step 1: lexical generation
        for (const auto& ex : corpus) {
            auto tokens = tokenize(ex.sentence, chunks);
            TermPtr gold;
            try {
                gold = parse_term(ex.logical_form);
            } catch (const SyntaxError&) {
                continue;
            }
            auto trees = cky_parse(tokens, catlex, cfg.cell_cap);
            std::vector<LexiconEntry> fresh;
            int used = 0;
            for (const auto& tree : trees) {
                if (used++ >= cfg.max_parse_trees) break;
                for (auto& e : extract_by_inverse(tree, gold, model.lexicon, cfg))
                    fresh.push_back(std::move(e));
                if (cfg.trivial_enabled) {
                    for (const auto* leaf : tree->leaves()) {
                        bool covered = !model.lexicon.lookup(leaf->word(), leaf->category())
                                            .empty();
                        for (const auto& e : fresh)
                            if (!covered && e.phrase_text() == leaf->word() &&
                                category_equal(e.category, leaf->category()))
                                covered = true;
                        if (!covered)
                            for (auto& e : trivial_entries(model.lexicon, leaf->word(),
                                                           leaf->category()))
                                fresh.push_back(std::move(e));
                    }
                }
            }
            for (auto& e : fresh) model.lexicon.add(std::move(e));
        }
        // Step 2: parameter estimation
        update_params(model, catlex, corpus, cfg);
        model.iteration = t;
    }
    model.lexicon = generalize_mass(model.lexicon);
    return model;
}

// ---------------------------------------------------------------------------
// Model files

static std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

std::string Model::to_text() const {
    std::ostringstream out;
    out << "# semparse-model iterations=" << iteration << " step=" << step
        << " alpha0=" << format_double(alpha0) << " c=" << format_double(decay_c) << '\n';
    out << lexicon.to_tsv();
    return out.str();
}

Model Model::from_text(const std::string& text) {
    Model m;
    std::istringstream in(text);
    std::string header;
    std::getline(in, header);
    if (header.rfind("# semparse-model", 0) != 0)
        throw FormatError("model file is missing its header line");
    std::istringstream hs(header.substr(16));
    std::string kv;
    while (hs >> kv) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) continue;
        std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
        if (key == "iterations") m.iteration = std::stoi(val);
        else if (key == "step") m.step = std::stol(val);
        else if (key == "alpha0") m.alpha0 = std::stod(val);
        else if (key == "c") m.decay_c = std::stod(val);
    }
    std::string rest((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    m.lexicon = Lexicon::from_tsv(rest);
    return m;
}

}  // namespace semparse
