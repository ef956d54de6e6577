#pragma once

#include <set>
#include <string>
#include <vector>

#include "semparse/ccg.hpp"
#include "semparse/corpus.hpp"
#include "semparse/grammar.hpp"
#include "semparse/lexicon.hpp"

namespace semparse {

/// Lowercase and drop everything that is not a letter or digit; quoted and
/// punctuated spellings of the same name fold together ('new york' ~ New York).
std::string fold(const std::string& s);

/// Partial string match score in [0,1]: share of the shorter folded string
/// covered by the longest common substring.
double similarity(const std::string& a, const std::string& b);

inline constexpr double kDefaultAccuracy = 0.7;
inline constexpr int kDefaultMaxLevel = 2;

struct InductionConfig {
    int maxlevel = kDefaultMaxLevel;
    double accuracy = kDefaultAccuracy;
};

/// Terminal symbols matching `word` at the given accuracy.
std::set<std::string> nmatch(const std::string& word,
                             const std::set<std::string>& terminals, double accuracy);

/// Leaves whose category is the atom N or NP (pre-chunked compound nouns
/// arrive as single leaves).
std::vector<const CcgTree*> find_nouns(const CcgTreePtr& tree);

/// INITIAL_C: pairwise largest common templates assigned to the top words of
/// both sentences. Weights start at 0.1.
Lexicon initial_c(const std::vector<CorpusExample>& corpus,
                  const std::vector<CcgTreePtr>& parses,
                  const std::vector<DerivationTree>& derivations, const Grammar& g);

/// INITIAL_N: per-noun upward traversal of the derivation tree producing
/// candidate expressions; at most maxlevel ascents beyond the first match.
Lexicon initial_n(const std::vector<CorpusExample>& corpus,
                  const std::vector<CcgTreePtr>& parses,
                  const std::vector<DerivationTree>& derivations, const Grammar& g,
                  const InductionConfig& cfg = {});

/// Union of INITIAL_C and INITIAL_N, deduplicated.
Lexicon induce_initial_lexicon(const std::vector<CorpusExample>& corpus,
                               const std::vector<CcgTreePtr>& parses,
                               const std::vector<DerivationTree>& derivations,
                               const Grammar& g, const InductionConfig& cfg = {});

}  // namespace semparse
