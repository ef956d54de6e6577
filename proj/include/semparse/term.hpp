#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "semparse/errors.hpp"

namespace semparse {

enum class TermKind { Variable, Constant, Abstraction, Application };

class Term;
using TermPtr = std::shared_ptr<const Term>;

/// Immutable typed-lambda-calculus term node. Constants carry their surface
/// spelling verbatim, including quotes ('arkansas') or braces ({5}); atomic
/// formulas f(a,b) are curried applications of a Constant head.
class Term {
public:
    static TermPtr variable(std::string name);
    static TermPtr constant(std::string name);
    static TermPtr abstraction(std::string binder, TermPtr body);
    static TermPtr application(TermPtr fn, TermPtr arg);

    TermKind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    const TermPtr& body() const { return a_; }
    const TermPtr& fn() const { return a_; }
    const TermPtr& arg() const { return b_; }

    bool is_variable() const { return kind_ == TermKind::Variable; }
    bool is_constant() const { return kind_ == TermKind::Constant; }
    bool is_abstraction() const { return kind_ == TermKind::Abstraction; }
    bool is_application() const { return kind_ == TermKind::Application; }

private:
    Term(TermKind k, std::string n, TermPtr a, TermPtr b)
        : kind_(k), name_(std::move(n)), a_(std::move(a)), b_(std::move(b)) {}
    TermKind kind_;
    std::string name_;
    TermPtr a_;  // abstraction body / application function
    TermPtr b_;  // application argument
};

/// An application spine: head @ args[0] @ args[1] ...
struct Spine {
    TermPtr head;
    std::vector<TermPtr> args;
};

Spine spine_of(const TermPtr& t);
TermPtr apply_spine(TermPtr head, const std::vector<TermPtr>& args);

std::size_t term_size(const TermPtr& t);

/// Pre-order enumeration; t itself is the first element.
std::vector<TermPtr> subterms(const TermPtr& t);
bool is_subterm(const TermPtr& t, const TermPtr& needle);

std::set<std::string> free_variables(const TermPtr& t);
std::set<std::string> constants_of(const TermPtr& t);
bool is_closed(const TermPtr& t);

bool alpha_equal(const TermPtr& a, const TermPtr& b);

/// Capture-avoiding substitution of `value` for free occurrences of `var`.
TermPtr substitute(const TermPtr& t, const std::string& var, const TermPtr& value);

inline constexpr std::size_t kDefaultBetaLimit = 10000;

/// Leftmost-outermost beta normalization. Throws NonTerminating when the
/// step limit is exhausted.
TermPtr beta_normalize(const TermPtr& t, std::size_t step_limit = kDefaultBetaLimit);

/// True iff the beta-normal forms coincide up to bound-variable renaming.
bool alpha_beta_equiv(const TermPtr& a, const TermPtr& b,
                      std::size_t step_limit = kDefaultBetaLimit);

/// Definition-1 style list replacement H(A:B): every occurrence of A[i]
/// (matched by alpha equality, largest pattern first, outermost occurrence,
/// no overlaps) is rewritten to B[i] simultaneously.
TermPtr replace(const TermPtr& h, const std::vector<TermPtr>& a,
                const std::vector<TermPtr>& b);

/// Renames binders to a canonical sequence (x, y, z, ...) in traversal
/// order; used for rendering inverse solutions and as a dedup key.
TermPtr canonical_binders(const TermPtr& t);

std::string render_term(const TermPtr& t);
std::string canonical_key(const TermPtr& t);

struct ParseOptions {
    // Identifiers in this set parse as variables even when unbound; used by
    // the template splicer.
    std::set<std::string> open_variables;
};

struct ParseResult {
    TermPtr term;
    // Names from ParseOptions::open_variables that actually occur free.
    std::set<std::string> unbound;
};

ParseResult parse_term_ex(const std::string& text, const ParseOptions& opts = {});
TermPtr parse_term(const std::string& text);

/// Fresh name based on `base` that avoids everything in `taken`.
std::string fresh_name(const std::string& base, const std::set<std::string>& taken);

}  // namespace semparse
