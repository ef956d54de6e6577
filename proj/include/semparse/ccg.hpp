#pragma once

#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "semparse/category.hpp"
#include "semparse/lexicon.hpp"
#include "semparse/term.hpp"

namespace semparse {

class CcgTree;
using CcgTreePtr = std::shared_ptr<const CcgTree>;

/// Binary CCG derivation over a token span; leaves carry the (possibly
/// chunked) surface word.
class CcgTree {
public:
    static CcgTreePtr leaf(CategoryPtr category, std::string word, int begin, int end);
    static CcgTreePtr node(CategoryPtr category, CombineRule rule, CcgTreePtr left,
                           CcgTreePtr right);

    bool is_leaf() const { return left_ == nullptr; }
    const CategoryPtr& category() const { return category_; }
    const std::string& word() const { return word_; }
    int begin() const { return begin_; }
    int end() const { return end_; }
    const CcgTreePtr& left() const { return left_; }
    const CcgTreePtr& right() const { return right_; }
    CombineRule rule() const { return rule_; }

    std::vector<const CcgTree*> leaves() const;
    std::string phrase_text() const;

private:
    CcgTree() = default;
    CategoryPtr category_;
    std::string word_;
    int begin_ = 0, end_ = 0;
    CcgTreePtr left_, right_;
    CombineRule rule_ = CombineRule::ForwardApp;
};

using CatLex = std::map<std::string, std::vector<CategoryPtr>>;

/// Lines of `word<TAB>category[,category...]`.
CatLex load_catlex(const std::string& text);

/// Whitespace split followed by greedy longest-match chunking against the
/// multiword keys (compound nouns are pre-chunked this way).
std::vector<std::string> tokenize(const std::string& sentence,
                                  const std::set<std::string>& multiword);
std::set<std::string> multiword_keys(const CatLex& catlex);

inline constexpr int kDefaultCellCap = 50;

/// All binary application-only parses rooted at S. Empty result = no parse.
std::vector<CcgTreePtr> cky_parse(const std::vector<std::string>& tokens,
                                  const CatLex& catlex, int cell_cap = kDefaultCellCap);

/// Bracketed derivation input: `(fa CAT child child)`, `(ba CAT child child)`
/// and `(lex CAT word...)`. Category arithmetic is re-validated.
CcgTreePtr load_derivation(const std::string& text);
std::string render_derivation(const CcgTreePtr& tree);

/// Root-to-leaf edge counts.
std::vector<std::pair<const CcgTree*, int>> leaf_levels(const CcgTreePtr& tree);
std::map<std::string, int> word_levels(const CcgTreePtr& tree);

bool is_punctuation_token(const std::string& word);

/// Words at minimal level, ties included; punctuation leaves are skipped so
/// a sentence-final period never counts as the head word.
std::set<std::string> top_words(const CcgTreePtr& tree);

/// Semantic composition result for one choice of leaf entries.
struct SemNode {
    const CcgTree* syntax;
    TermPtr term;
    std::shared_ptr<const SemNode> left, right;
    int entry_id = -1;  // leaves only
};
using SemNodePtr = std::shared_ptr<const SemNode>;

struct SemDerivation {
    TermPtr root;               // beta-normal root term
    SemNodePtr trace;           // per-node terms, Table-2 style
    std::vector<int> entry_ids; // lexicon entries used, leaf order
};

/// Extra entry source consulted when the lexicon has nothing for a leaf
/// (on-demand generalization hook). May be null.
using EntryHook =
    std::function<std::vector<LexiconEntry>(const std::string& word, const CategoryPtr&)>;

struct ComposeOptions {
    int max_derivations = 2000;
    std::size_t beta_limit = kDefaultBetaLimit;
    EntryHook hook;
    bool throw_on_missing = true;
};

/// Enumerates the beta-normalized root term for every choice of leaf
/// entries. Throws MissingEntry when a leaf has no entry of its category
/// (unless throw_on_missing is off, in which case it returns empty).
std::vector<SemDerivation> compose_semantics(const CcgTreePtr& tree, const Lexicon& lex,
                                             const ComposeOptions& opts = {});

}  // namespace semparse
