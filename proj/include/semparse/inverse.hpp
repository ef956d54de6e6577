#pragma once

#include "semparse/term.hpp"

namespace semparse {

enum class InverseDirection { Left, Right };

struct InverseProblem {
    TermPtr result;  // H
    TermPtr known;   // G
    InverseDirection direction;
};

struct InverseSolution {
    TermPtr term;  // nullptr means Null
    bool is_null() const { return term == nullptr; }
};

/// Inverse_R(H, G): a term F with G @ F beta-alpha-equal to H, or Null.
InverseSolution inverse_r(const TermPtr& h, const TermPtr& g,
                          std::size_t step_limit = kDefaultBetaLimit);

/// Inverse_L(H, G): a term F with F @ G beta-alpha-equal to H, or Null.
InverseSolution inverse_l(const TermPtr& h, const TermPtr& g,
                          std::size_t step_limit = kDefaultBetaLimit);

InverseSolution solve(const InverseProblem& p, std::size_t step_limit = kDefaultBetaLimit);

/// Recomposition check: the solution applied per the problem's direction
/// normalizes to the problem's result.
bool verify(const InverseProblem& p, const InverseSolution& s,
            std::size_t step_limit = kDefaultBetaLimit);

}  // namespace semparse
