#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "semparse/funql.hpp"
#include "semparse/term.hpp"

namespace semparse {

/// Structural equality with unordered argument multisets at commutative
/// heads. With clang_i, definer and definec heads compare equal.
bool equivalent_sr(const TermPtr& a, const TermPtr& b,
                   const std::set<std::string>& commutative, bool clang_i = false);

enum class EvalMode { Execute, Match };

struct ExampleResult {
    TermPtr gold;
    TermPtr returned;  // nullptr when nothing was returned
};

struct Verdict {
    bool returned;
    bool correct;
};

struct EvalReport {
    double precision = 0.0;
    double recall = 0.0;
    double f_measure = 0.0;
    int total = 0;
    int returned = 0;
    int correct = 0;
    std::vector<Verdict> verdicts;
};

struct ScoreOptions {
    EvalMode mode = EvalMode::Execute;
    const GeoDatabase* db = nullptr;  // required in Execute mode
    std::set<std::string> commutative;
    bool clang_i = false;
};

/// precision = correct / returned (0 when nothing returned),
/// recall = correct / total, F = 2PR/(P+R).
EvalReport score(const std::vector<ExampleResult>& results, const ScoreOptions& opts);

/// Deterministic seeded partition into k near-equal folds of {0..n-1}; each
/// element tests exactly once.
std::vector<std::vector<int>> kfold(int n, int k, unsigned long seed);

}  // namespace semparse
