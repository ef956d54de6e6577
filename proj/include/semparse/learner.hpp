#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "semparse/ccg.hpp"
#include "semparse/corpus.hpp"
#include "semparse/inverse.hpp"
#include "semparse/lexicon.hpp"

namespace semparse {

struct TrainConfig {
    int iterations = 10;
    double alpha0 = 0.1;    // learning rate alpha_t = alpha0 / (1 + c * t)
    double decay_c = 0.001;
    int cell_cap = kDefaultCellCap;
    int max_derivations = 2000;
    int node_candidate_cap = 16;  // meaning hypotheses kept per node in extraction
    int max_parse_trees = 4;      // syntactic trees traversed per sentence
    bool trivial_enabled = true;
    std::size_t beta_limit = kDefaultBetaLimit;
};

/// Entry weights double as the feature vector: one feature per entry.
struct Model {
    Lexicon lexicon;
    int iteration = 0;
    long step = 0;  // gradient updates taken so far
    double alpha0 = 0.1;
    double decay_c = 0.001;

    std::string to_text() const;
    static Model from_text(const std::string& text);
};

/// Transfers donor templates of the same category: a donor entry whose
/// semantics contains a constant similar to the donor word yields the same
/// template with the constant swapped for one derived from `word`.
std::vector<LexiconEntry> generalize_on_demand(const Lexicon& lex, const std::string& word,
                                               const CategoryPtr& category);

/// On-demand generalization applied en masse over every (word, category)
/// pair in the lexicon; new entries are added at weight 0.1.
Lexicon generalize_mass(const Lexicon& lex);

/// Last-resort vacuous meanings \x. x and \x. \y. (y @ x); empty when the
/// pair already has entries.
std::vector<LexiconEntry> trivial_entries(const Lexicon& lex, const std::string& word,
                                          const CategoryPtr& category);

/// Top-down inverse traversal: starting from the whole-sentence meaning,
/// recover the unknown sibling at every node where the other child is known,
/// collecting all newly determined (phrase, category, term) triples.
std::vector<LexiconEntry> extract_by_inverse(const CcgTreePtr& tree, const TermPtr& target,
                                             const Lexicon& lex,
                                             const TrainConfig& cfg = {});

struct ScoredDerivation {
    SemDerivation derivation;
    double score;  // sum of entry weights used
    CcgTreePtr tree;
};

/// Every (parse tree, leaf entry choice) derivation for the sentence,
/// deterministic order, highest-weight leaf entries preferred when capped.
std::vector<ScoredDerivation> enumerate_derivations(const std::vector<std::string>& tokens,
                                                    const Model& model, const CatLex& catlex,
                                                    const TrainConfig& cfg = {},
                                                    bool generalize = false);

struct BestParse {
    TermPtr term;
    ScoredDerivation derivation;
    double probability;  // softmax share of the argmax derivation
};

std::optional<BestParse> parse_best(const std::vector<std::string>& tokens,
                                    const Model& model, const CatLex& catlex,
                                    const TrainConfig& cfg = {}, bool generalize = false);

/// Sparse gradient of log P(L_i | S_i) at the current weights:
/// E[features | derivations yielding the gold term] - E[features | all].
/// nullopt when no derivation yields the gold term.
std::optional<std::map<int, double>> gradient_for_example(
    const Model& model, const CatLex& catlex, const std::vector<std::string>& tokens,
    const TermPtr& gold, const TrainConfig& cfg = {});

/// log P(gold | sentence) summed over the corpus (examples with no
/// gold-yielding derivation are skipped).
double log_likelihood(const Model& model, const CatLex& catlex,
                      const std::vector<CorpusExample>& corpus, const TrainConfig& cfg = {});

/// One stochastic-gradient pass over the corpus in order.
void update_params(Model& model, const CatLex& catlex,
                   const std::vector<CorpusExample>& corpus, const TrainConfig& cfg = {});

/// The overall loop: per-iteration lexical generation (inverse extraction,
/// on-demand generalization, trivial fallback) followed by parameter
/// estimation; returns the mass-generalized lexicon with trained weights.
Model learn(const std::vector<CorpusExample>& corpus, const Lexicon& initial_lexicon,
            const CatLex& catlex, const TrainConfig& cfg = {});

/// Adds the fixed punctuation entries ('.', '?', '!': S\S with identity
/// semantics) that the tokenizer's separate punctuation leaves rely on.
void add_punctuation_entries(Lexicon& lex);

}  // namespace semparse
