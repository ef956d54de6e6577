#include "semparse/evaluate.hpp"

#include <algorithm>
#include <random>

namespace semparse {

namespace {

std::string sr_key(const TermPtr& t, const std::set<std::string>& commutative,
                   bool clang_i) {
    switch (t->kind()) {
        case TermKind::Variable:
            return "v(" + t->name() + ")";
        case TermKind::Constant: {
            std::string n = t->name();
            if (clang_i && n == "definec") n = "definer";
            return "c(" + n + ")";
        }
        case TermKind::Abstraction:
            return "l(" + t->name() + "." + sr_key(t->body(), commutative, clang_i) + ")";
        case TermKind::Application: {
            Spine s = spine_of(t);
            std::string head = sr_key(s.head, commutative, clang_i);
            std::vector<std::string> args;
            for (const auto& a : s.args) args.push_back(sr_key(a, commutative, clang_i));
            bool unordered = s.head->is_constant() &&
                             (commutative.count(s.head->name()) ||
                              (clang_i && s.head->name() == "definec" &&
                               commutative.count("definer")));
            if (unordered) std::sort(args.begin(), args.end());
            std::string out = "a(" + head;
            for (const auto& a : args) out += "," + a;
            return out + ")";
        }
    }
    return "";
}

}  // namespace

bool equivalent_sr(const TermPtr& a, const TermPtr& b,
                   const std::set<std::string>& commutative, bool clang_i) {
    return sr_key(canonical_binders(a), commutative, clang_i) ==
           sr_key(canonical_binders(b), commutative, clang_i);
}

EvalReport score(const std::vector<ExampleResult>& results, const ScoreOptions& opts) {
    EvalReport rep;
    rep.total = static_cast<int>(results.size());
    for (const auto& r : results) {
        Verdict v{false, false};
        if (r.returned) {
            v.returned = true;
            ++rep.returned;
            if (opts.mode == EvalMode::Execute) {
                if (!opts.db) throw ConfigError("execute mode requires a database");
                try {
                    v.correct = eval_funql(r.gold, *opts.db) ==
                                eval_funql(r.returned, *opts.db);
                } catch (const UnsupportedPredicate&) {
                    v.correct = false;
                } catch (const NonTerminating&) {
                    v.correct = false;
                }
            } else {
                v.correct = equivalent_sr(r.gold, r.returned, opts.commutative, opts.clang_i);
            }
            if (v.correct) ++rep.correct;
        }
        rep.verdicts.push_back(v);
    }
    rep.precision = rep.returned > 0
                        ? static_cast<double>(rep.correct) / static_cast<double>(rep.returned)
                        : 0.0;
    rep.recall = rep.total > 0
                     ? static_cast<double>(rep.correct) / static_cast<double>(rep.total)
                     : 0.0;
    rep.f_measure = rep.precision + rep.recall > 0.0
                        ? 2.0 * rep.precision * rep.recall / (rep.precision + rep.recall)
                        : 0.0;
    return rep;
}

std::vector<std::vector<int>> kfold(int n, int k, unsigned long seed) {
    if (k < 2 || k > n) throw ConfigError("kfold needs 2 <= k <= corpus size");
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    std::mt19937_64 rng(seed);
    std::shuffle(idx.begin(), idx.end(), rng);
    std::vector<std::vector<int>> folds(k);
    for (int i = 0; i < n; ++i) folds[i % k].push_back(idx[i]);
    for (auto& f : folds) std::sort(f.begin(), f.end());
    return folds;
}

}  // namespace semparse
