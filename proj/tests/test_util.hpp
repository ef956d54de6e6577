#pragma once

#include <random>
#include <string>
#include <vector>

#include "semparse/term.hpp"

namespace semparse::testutil {

// Type-directed generator of closed, simply-typed terms over a funql-ish
// signature. Well-typed terms are strongly normalizing, so everything
// produced here reduces within the step limit.
class TermGen {
public:
    // Small type palette: E = ground entities, EE = E -> E,
    // EEE = E -> E -> E, FE = (E -> E) -> E.
    enum Type { E, EE, EEE, FE };

    explicit TermGen(unsigned long seed) : rng_(seed) {}

    TermPtr ground(int depth = 4) { return gen(E, depth, {}); }
    TermPtr function(int depth = 4) { return gen(EE, depth, {}); }

    // A random (F, J) pair with F a function and J an argument for it; the
    // pair is suitable for H = normalize(F @ J).
    std::pair<TermPtr, TermPtr> application_pair(int depth = 4) {
        if (rng_() % 4 == 0) return {gen(FE, depth, {}), gen(EE, depth, {})};
        return {gen(EE, depth, {}), gen(E, depth, {})};
    }

private:
    struct Binding {
        std::string name;
        Type type;
    };

    std::size_t roll(std::size_t n) { return rng_() % n; }

    TermPtr var_or(Type t, const std::vector<Binding>& env, TermPtr fallback) {
        std::vector<const Binding*> usable;
        for (const auto& b : env)
            if (b.type == t) usable.push_back(&b);
        if (!usable.empty() && roll(2) == 0)
            return Term::variable(usable[roll(usable.size())]->name);
        return fallback;
    }

    TermPtr gen(Type t, int depth, std::vector<Binding> env) {
        switch (t) {
            case E: {
                if (depth <= 0) return var_or(E, env, Term::constant(ground_name()));
                switch (roll(4)) {
                    case 0:
                        return var_or(E, env, Term::constant(ground_name()));
                    case 1:  // unary predicate applied to a ground term
                        return Term::application(gen(EE, depth - 1, env),
                                                 gen(E, depth - 1, env));
                    case 2:  // binary predicate
                        return Term::application(
                            Term::application(Term::constant(binary_name()),
                                              gen(E, depth - 1, env)),
                            gen(E, depth - 1, env));
                    default:  // higher-order head consuming a unary function
                        return Term::application(gen(FE, depth - 1, env),
                                                 gen(EE, depth - 1, env));
                }
            }
            case EE: {
                if (depth <= 0 || roll(3) == 0)
                    return var_or(EE, env, Term::constant(unary_name()));
                std::string v = fresh();
                env.push_back({v, E});
                return Term::abstraction(v, gen(E, depth - 1, env));
            }
            case EEE:
                return Term::constant(binary_name());
            case FE: {
                std::string v = fresh();
                env.push_back({v, EE});
                return Term::abstraction(v, gen(E, depth - 1, env));
            }
        }
        return Term::constant("a");
    }

    std::string fresh() { return "g" + std::to_string(counter_++); }

    std::string ground_name() {
        static const char* names[] = {"a", "b", "c", "'arkansas'", "all"};
        return names[roll(5)];
    }

    std::string unary_name() {
        static const char* names[] = {"answer", "river", "loc_2", "stateid", "state"};
        return names[roll(5)];
    }

    std::string binary_name() {
        static const char* names[] = {"exclude", "intersect"};
        return names[roll(2)];
    }

    std::mt19937_64 rng_;
    int counter_ = 0;
};

}  // namespace semparse::testutil
