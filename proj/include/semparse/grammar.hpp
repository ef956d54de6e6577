#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "semparse/errors.hpp"
#include "semparse/term.hpp"

namespace semparse {

struct GrammarItem {
    bool terminal;
    std::string text;
    bool operator==(const GrammarItem&) const = default;
};

struct Production {
    std::string lhs;
    std::vector<GrammarItem> rhs;
    bool operator==(const Production&) const = default;
};

/// Context-free grammar of the meaning-representation language. The first
/// rule's left side is the initial symbol.
class Grammar {
public:
    std::string initial;
    std::set<std::string> nonterminals;
    std::set<std::string> terminals;
    std::vector<Production> productions;

    std::vector<const Production*> productions_of(const std::string& lhs) const;
};

/// Lines `NONTERM -> item item ...`; items are bare nonterminal names or
/// quoted terminals; '#' starts a comment.
Grammar load_cfg(const std::string& text);

struct DerivationNode {
    std::string symbol;
    bool terminal;
    std::vector<std::shared_ptr<const DerivationNode>> children;
};
using DerivPtr = std::shared_ptr<const DerivationNode>;

/// A derivation tree plus parent links and ordered leaves.
class DerivationTree {
public:
    explicit DerivationTree(DerivPtr root);

    const DerivPtr& root() const { return root_; }
    const DerivationNode* parent(const DerivationNode* n) const;
    const std::vector<const DerivationNode*>& leaves() const { return leaves_; }
    std::vector<const DerivationNode*> preorder() const;

    /// Leaves of the subtree rooted at `n`, left to right.
    std::vector<const DerivationNode*> subtree_leaves(const DerivationNode* n) const;
    bool dominates(const DerivationNode* anc, const DerivationNode* n) const;

    /// Concatenated leaf yield (no separators).
    std::string yield() const;

private:
    DerivPtr root_;
    std::map<const DerivationNode*, const DerivationNode*> parent_;
    std::vector<const DerivationNode*> leaves_;
};

/// Longest-match tokenization of a logical form against the terminal set;
/// whitespace between tokens is skipped.
std::vector<std::string> tokenize_lf(const std::string& lf, const Grammar& g);

/// The unique derivation tree of `lf` under `g`. Throws NoDerivation or
/// AmbiguousDerivation.
DerivationTree derive(const std::string& lf, const Grammar& g);

struct LambdaTreeNode {
    enum Kind { NonTerminal, Terminal, Variable } kind;
    std::string text;  // symbol or variable name
    std::vector<std::shared_ptr<const LambdaTreeNode>> children;
};
using LambdaNodePtr = std::shared_ptr<const LambdaTreeNode>;

/// A derivation-tree fragment whose variable leaves stand for abstracted
/// nonterminals; `variables` is in left-to-right leaf order.
struct LambdaTree {
    std::vector<std::string> variables;
    LambdaNodePtr root;
};

/// Largest root-anchored common template: descend level by level, keep
/// common terminals, abstract first-divergent nonterminals. nullopt when the
/// roots differ or nothing below the root is shared.
std::optional<LambdaTree> common_template(const DerivationTree& t1,
                                          const DerivationTree& t2);

/// Splices the template's leaves into a term: terminal texts are lexed,
/// variables become lambda-bound arguments (leaf order). Throws
/// UnparsableTemplate.
TermPtr template_to_term(const LambdaTree& lt);

/// Lowest node of `tree` dominating every occurrence of the given symbols
/// (terminal symbols match leaves, nonterminal symbols match inner nodes).
/// Throws NotDominated when a symbol does not occur.
const DerivationNode* mcyk(const DerivationTree& tree, const std::set<std::string>& symbols);

/// Ascent step: the parent of `node` (nullptr at the root).
const DerivationNode* mcyk(const DerivationTree& tree, const DerivationNode* node);

}  // namespace semparse
