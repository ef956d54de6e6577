#include "semparse/inverse.hpp"

#include <algorithm>

namespace semparse {

namespace {

bool recomposes(const TermPtr& h, const TermPtr& g, const TermPtr& f,
                InverseDirection dir, std::size_t limit) {
    try {
        TermPtr app = dir == InverseDirection::Right ? Term::application(g, f)
                                                     : Term::application(f, g);
        return alpha_equal(beta_normalize(app, limit), h);
    } catch (const NonTerminating&) {
        return false;
    }
}

// Candidate subterms of h: closed, deduplicated, largest first.
std::vector<TermPtr> candidate_subterms(const TermPtr& h) {
    std::vector<TermPtr> out;
    std::set<std::string> seen;
    for (const auto& s : subterms(h)) {
        if (!is_closed(s)) continue;
        if (!seen.insert(canonical_key(s)).second) continue;
        out.push_back(s);
    }
    std::stable_sort(out.begin(), out.end(), [](const TermPtr& a, const TermPtr& b) {
        return term_size(a) > term_size(b);
    });
    return out;
}

std::set<std::string> names_in(const TermPtr& t) {
    auto taken = constants_of(t);
    for (const auto& s : subterms(t)) {
        if (s->is_variable()) taken.insert(s->name());
        if (s->is_abstraction()) taken.insert(s->name());
    }
    return taken;
}

TermPtr checked(const TermPtr& h, const TermPtr& g, TermPtr f, InverseDirection dir,
                std::size_t limit) {
    if (f && recomposes(h, g, f, dir, limit)) return canonical_binders(f);
    return nullptr;
}

TermPtr inverse_r_impl(const TermPtr& h, const TermPtr& g, std::size_t limit, int depth);
TermPtr inverse_l_impl(const TermPtr& h, const TermPtr& g, std::size_t limit, int depth);

// Inverse_R(H, G): F with G @ F = H. H and G are beta-normal here.
TermPtr inverse_r_impl(const TermPtr& h, const TermPtr& g, std::size_t limit, int depth) {
    if (depth > 16) return nullptr;

    // G is not an abstraction: G @ F is already a neutral application, so H
    // must literally be G applied to the answer.
    if (!g->is_abstraction()) {
        if (h->is_application() && alpha_equal(h->fn(), g))
            return checked(h, g, h->arg(), InverseDirection::Right, limit);
        return nullptr;
    }

    const std::string& v = g->name();
    const TermPtr& body = g->body();

    // Case 1: G = \v. v @ J  ->  F solves F @ J = H.
    if (body->is_application() && body->fn()->is_variable() && body->fn()->name() == v) {
        const TermPtr& j = body->arg();
        if (!free_variables(j).count(v)) {
            TermPtr f = inverse_l_impl(h, j, limit, depth + 1);
            if (f) return checked(h, g, f, InverseDirection::Right, limit);
        }
    }

    auto taken = names_in(h);
    for (const auto& n : names_in(g)) taken.insert(n);

    // Case 2: G = \v. H(J : v) for a subterm J of H  ->  F = J.
    {
        std::string fv = fresh_name("v", taken);
        for (const auto& j : candidate_subterms(h)) {
            TermPtr abstracted =
                Term::abstraction(fv, replace(h, {j}, {Term::variable(fv)}));
            if (alpha_equal(abstracted, g)) {
                if (TermPtr f = checked(h, g, j, InverseDirection::Right, limit)) return f;
            }
        }
    }

    // Case 3: G = \w. H(J(J1..Jm) : w @ Jp .. Jq)  ->
    //         F = \vp..vq. J(J1..Jm : vp..vq).
    {
        std::string w = fresh_name("w", taken);
        for (const auto& a : candidate_subterms(h)) {
            if (!a->is_application()) continue;
            Spine s = spine_of(a);
            if (!s.head->is_constant() || s.args.empty()) continue;
            std::size_t m = s.args.size();
            for (std::size_t p = 0; p < m; ++p) {
                for (std::size_t q = p; q < m; ++q) {
                    std::vector<TermPtr> picked(s.args.begin() + p, s.args.begin() + q + 1);
                    TermPtr repl = apply_spine(Term::variable(w), picked);
                    TermPtr cand = Term::abstraction(w, replace(h, {a}, {repl}));
                    if (!alpha_equal(cand, g)) continue;
                    std::vector<TermPtr> newargs = s.args;
                    std::vector<std::string> binders;
                    auto local = taken;
                    for (std::size_t k = p; k <= q; ++k) {
                        std::string b = fresh_name("v", local);
                        local.insert(b);
                        binders.push_back(b);
                        newargs[k] = Term::variable(b);
                    }
                    TermPtr f = apply_spine(s.head, newargs);
                    for (auto it = binders.rbegin(); it != binders.rend(); ++it)
                        f = Term::abstraction(*it, f);
                    if (TermPtr ok = checked(h, g, f, InverseDirection::Right, limit))
                        return ok;
                }
            }
        }
    }

    // Degenerate: G ignores its argument and already equals H; any closed
    // term recomposes, return the identity.
    if (!free_variables(body).count(v) && alpha_equal(body, h)) {
        TermPtr f = Term::abstraction("z", Term::variable("z"));
        return checked(h, g, f, InverseDirection::Right, limit);
    }

    return nullptr;
}

// Inverse_L(H, G): F with F @ G = H. Mirror of Definition 2.
TermPtr inverse_l_impl(const TermPtr& h, const TermPtr& g, std::size_t limit, int depth) {
    if (depth > 16) return nullptr;

    auto taken = names_in(h);
    for (const auto& n : names_in(g)) taken.insert(n);

    // Case 1: G = \v. J @ v  ->  F = \w. w @ Inverse_R(H, J).
    if (g->is_abstraction()) {
        const std::string& v = g->name();
        const TermPtr& body = g->body();
        if (body->is_application() && body->arg()->is_variable() &&
            body->arg()->name() == v && !free_variables(body->fn()).count(v)) {
            TermPtr k = inverse_r_impl(h, body->fn(), limit, depth + 1);
            if (k) {
                std::string w = fresh_name("w", taken);
                TermPtr f = Term::abstraction(w, Term::application(Term::variable(w), k));
                if (TermPtr ok = checked(h, g, f, InverseDirection::Left, limit)) return ok;
            }
        }
    }

    // Case 2 (mirror): G occurs in H  ->  F = \v. H(G : v).
    if (is_subterm(h, g)) {
        std::string v = fresh_name("v", taken);
        TermPtr f = Term::abstraction(v, replace(h, {g}, {Term::variable(v)}));
        if (TermPtr ok = checked(h, g, f, InverseDirection::Left, limit)) return ok;
    }

    // Case 3 (mirror): G = J(J1..Jm) is an atomic formula and H contains the
    // same formula extended with extra arguments; abstract the extension.
    // Atomic formulas may take extra arguments (arity flexibility).
    {
        Spine gs = spine_of(g);
        if (gs.head->is_constant()) {
            for (const auto& a : candidate_subterms(h)) {
                if (!a->is_application()) continue;
                Spine as = spine_of(a);
                if (!as.head->is_constant() || as.head->name() != gs.head->name())
                    continue;
                if (as.args.size() <= gs.args.size()) continue;
                bool prefix = true;
                for (std::size_t i = 0; i < gs.args.size() && prefix; ++i)
                    prefix = alpha_equal(as.args[i], gs.args[i]);
                if (!prefix) continue;
                std::vector<TermPtr> extras(as.args.begin() + gs.args.size(),
                                            as.args.end());
                std::string w = fresh_name("w", taken);
                TermPtr repl = apply_spine(Term::variable(w), extras);
                TermPtr f = Term::abstraction(w, replace(h, {a}, {repl}));
                if (TermPtr ok = checked(h, g, f, InverseDirection::Left, limit)) return ok;
            }
        }
    }

    // Last resort: the constant function F = \w. H always recomposes.
    {
        std::string w = fresh_name("w", taken);
        TermPtr f = Term::abstraction(w, h);
        if (TermPtr ok = checked(h, g, f, InverseDirection::Left, limit)) return ok;
    }

    return nullptr;
}

}  // namespace

InverseSolution inverse_r(const TermPtr& h, const TermPtr& g, std::size_t step_limit) {
    try {
        TermPtr hn = beta_normalize(h, step_limit);
        TermPtr gn = beta_normalize(g, step_limit);
        return {inverse_r_impl(hn, gn, step_limit, 0)};
    } catch (const NonTerminating&) {
        throw;
    }
}

InverseSolution inverse_l(const TermPtr& h, const TermPtr& g, std::size_t step_limit) {
    TermPtr hn = beta_normalize(h, step_limit);
    TermPtr gn = beta_normalize(g, step_limit);
    return {inverse_l_impl(hn, gn, step_limit, 0)};
}

InverseSolution solve(const InverseProblem& p, std::size_t step_limit) {
    return p.direction == InverseDirection::Right ? inverse_r(p.result, p.known, step_limit)
                                                  : inverse_l(p.result, p.known, step_limit);
}

bool verify(const InverseProblem& p, const InverseSolution& s, std::size_t step_limit) {
    if (s.is_null()) return false;
    TermPtr app = p.direction == InverseDirection::Right
                      ? Term::application(p.known, s.term)
                      : Term::application(s.term, p.known);
    return alpha_beta_equiv(app, p.result, step_limit);
}

}  // namespace semparse
