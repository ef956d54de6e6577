#include <doctest.h>

#include <functional>

#include "semparse/term.hpp"
#include "semparse/types.hpp"
#include "test_util.hpp"

using namespace semparse;

TEST_CASE("parse builds the expected structure") {
    TermPtr t = parse_term("\\x. answer(x)");
    REQUIRE(t->is_abstraction());
    CHECK(t->name() == "x");
    REQUIRE(t->body()->is_application());
    CHECK(t->body()->fn()->is_constant());
    CHECK(t->body()->fn()->name() == "answer");
    CHECK(t->body()->arg()->is_variable());

    TermPtr s = parse_term("stateid('arkansas')");
    REQUIRE(s->is_application());
    CHECK(s->fn()->name() == "stateid");
    CHECK(s->arg()->name() == "'arkansas'");

    TermPtr id = parse_term("\\x. x");
    REQUIRE(id->is_abstraction());
    CHECK(id->body()->is_variable());
}

TEST_CASE("parse reports syntax errors with a position") {
    CHECK_THROWS_AS(parse_term("\\x answer(x)"), SyntaxError);
    CHECK_THROWS_AS(parse_term("answer(x"), SyntaxError);
    CHECK_THROWS_AS(parse_term("f(a,) "), SyntaxError);
}

TEST_CASE("quoted constants keep embedded spaces") {
    TermPtr t = parse_term("stateid('new york')");
    CHECK(t->arg()->name() == "'new york'");
    CHECK(render_term(t) == "stateid('new york')");
}

TEST_CASE("clang-style parenthesized forms apply the head to the rest") {
    TermPtr t = parse_term("(player our {5})");
    Spine s = spine_of(t);
    CHECK(s.head->name() == "player");
    REQUIRE(s.args.size() == 2);
    CHECK(s.args[0]->name() == "our");
    CHECK(s.args[1]->name() == "{5}");

    TermPtr u = parse_term("\\x. \\y. (x) (do y)");
    // body is x applied to do(y)
    TermPtr body = u->body()->body();
    REQUIRE(body->is_application());
    CHECK(body->fn()->is_variable());
    CHECK(body->arg()->fn()->name() == "do");
}

TEST_CASE("render round-trips and matches the table spellings") {
    CHECK(render_term(parse_term("\\x. x")) == "\\x. x");
    CHECK(render_term(parse_term("answer(river(loc_2(stateid('arkansas'))))")) ==
          "answer(river(loc_2(stateid('arkansas'))))");
    CHECK(render_term(parse_term("\\x. \\y. y @ loc_2(x)")) == "\\x. \\y. y @ loc_2(x)");
    CHECK(render_term(parse_term("answer(exclude(state(all), next_to_2(state(all))))")) ==
          "answer(exclude(state(all), next_to_2(state(all))))");

    for (const char* text :
         {"\\x. answer(x)", "(\\x. x) @ (\\y. y)", "\\x. \\y. y @ loc_2(x)",
          "exclude(state(all), next_to_2(state(all)))", "(player our {5})",
          "\\x. (x midfield)"}) {
        TermPtr t = parse_term(text);
        CHECK(alpha_equal(parse_term(render_term(t)), t));
    }
}

TEST_CASE("duplicate binders are renamed apart on construction") {
    TermPtr t = parse_term("\\x. \\x. x");
    CHECK(t->name() != t->body()->name());
    // the inner binder owns the variable
    CHECK(t->body()->body()->name() == t->body()->name());
}

TEST_CASE("beta normalization follows the worked examples") {
    CHECK(render_term(beta_normalize(parse_term("(\\x. answer(x)) @ a"))) == "answer(a)");
    CHECK(render_term(beta_normalize(parse_term(
              "(\\y. y @ loc_2(stateid('arkansas'))) @ (\\x. river(x))"))) ==
          "river(loc_2(stateid('arkansas')))");
    CHECK(render_term(beta_normalize(parse_term("(\\x. x) @ (\\x. x)"))) == "\\x. x");
}

TEST_CASE("beta normalization detects divergence") {
    TermPtr omega = parse_term("(\\x. x @ x) @ (\\x. x @ x)");
    CHECK_THROWS_AS(beta_normalize(omega, 100), NonTerminating);
}

TEST_CASE("alpha-beta equivalence") {
    CHECK(alpha_beta_equiv(parse_term("\\x. f(x)"), parse_term("\\y. f(y)")));
    CHECK(alpha_beta_equiv(parse_term("(\\x. answer(x)) @ a"), parse_term("answer(a)")));
    CHECK_FALSE(alpha_beta_equiv(parse_term("answer(a)"), parse_term("answer(b)")));
}

TEST_CASE("subterms enumerate in pre-order with the term first") {
    TermPtr t = parse_term("answer(a)");
    auto subs = subterms(t);
    REQUIRE(subs.size() == 3);
    CHECK(alpha_equal(subs[0], t));
    CHECK(subs[1]->name() == "answer");
    CHECK(subs[2]->name() == "a");

    CHECK(is_subterm(parse_term("stateid('arkansas')"), parse_term("'arkansas'")));
    auto v = Term::variable("x");
    CHECK(subterms(v).size() == 1);
}

// Independent oracle for replace: single-pattern recursive substitution on
// the tree, applied without the production code path.
static TermPtr naive_single_replace(const TermPtr& t, const TermPtr& pat,
                                    const TermPtr& repl) {
    if (alpha_equal(t, pat)) return repl;
    switch (t->kind()) {
        case TermKind::Abstraction:
            return Term::abstraction(t->name(), naive_single_replace(t->body(), pat, repl));
        case TermKind::Application:
            return Term::application(naive_single_replace(t->fn(), pat, repl),
                                     naive_single_replace(t->arg(), pat, repl));
        default:
            return t;
    }
}

TEST_CASE("replace rewrites every appearance") {
    TermPtr h = parse_term("answer(river(x))");
    TermPtr out = replace(h, {parse_term("river(x)")}, {Term::variable("v")});
    CHECK(render_term(out) == "answer(v)");

    CHECK(alpha_equal(replace(h, {}, {}), h));

    TermPtr h2 = parse_term("loc_2(stateid('arkansas'))");
    TermPtr got = replace(h2, {parse_term("stateid('arkansas')")}, {Term::variable("v")});
    TermPtr expected =
        naive_single_replace(h2, parse_term("stateid('arkansas')"), Term::variable("v"));
    CHECK(alpha_equal(got, expected));
    CHECK(render_term(got) == "loc_2(v)");

    CHECK_THROWS_AS(replace(h, {parse_term("a")}, {}), LengthMismatch);
}

TEST_CASE("replace prefers the largest pattern and does not overlap") {
    TermPtr h = parse_term("f(g(a), a)");
    TermPtr out = replace(h, {parse_term("a"), parse_term("g(a)")},
                          {Term::constant("b"), Term::constant("c")});
    CHECK(render_term(out) == "f(c, b)");
}

TEST_CASE("infer_type follows the signature") {
    Signature sig;
    sig.declare("answer", parse_type("e -> t"));
    CHECK(render_type(infer_type(parse_term("\\x. answer(x)"), sig)) == "e -> t");
    CHECK(render_type(infer_type(parse_term("\\x. x"), Signature())) == "a -> a");

    Signature geo;
    geo.declare("loc_2", parse_type("e -> e"));
    // Table 2 "in" term: e -> ((e -> a) -> a) under this signature
    TypePtr t = infer_type(parse_term("\\x. \\y. y @ loc_2(x)"), geo);
    CHECK(render_type(t) == "e -> (e -> a) -> a");
}

TEST_CASE("infer_type rejects clashes and defaults by arity") {
    Signature sig;
    sig.declare("answer", parse_type("e -> t"));
    CHECK_THROWS_AS(infer_type(parse_term("answer(answer(a))"), sig), TypeClash);
    // unknown constants default to arity-matching arrow chains
    CHECK(render_type(infer_type(parse_term("mystery(a, b)"), sig)) == "e");
}

TEST_CASE("signature files parse") {
    Signature sig = Signature::from_text("answer\te -> t\nloc_2\te -> e\n# comment\n");
    CHECK(sig.declared("answer"));
    CHECK(render_type(sig.lookup("answer", 1)) == "e -> t");
    CHECK(render_type(sig.lookup("unknown", 2)) == "e -> e -> e");
}

TEST_CASE("property: normalization is idempotent") {
    testutil::TermGen gen(20240901);
    for (int i = 0; i < 200; ++i) {
        TermPtr t = gen.ground(4);
        TermPtr n1 = beta_normalize(t);
        CHECK(alpha_equal(beta_normalize(n1), n1));
    }
}

TEST_CASE("property: substitution avoids capture") {
    testutil::TermGen gen(7);
    for (int i = 0; i < 200; ++i) {
        TermPtr t = gen.ground(3);
        TermPtr abs = Term::abstraction("q", t);  // q unused: constant function
        TermPtr applied = beta_normalize(Term::application(abs, Term::constant("cfresh")));
        CHECK(free_variables(applied).empty());
        // binding a used variable: \x. t with x free inside stays capture-free
        TermPtr body = parse_term("\\y. f(x) @ y");
        TermPtr out = substitute(body, "x", parse_term("g(y)"));
        CHECK(free_variables(out) == std::set<std::string>{"y"});
    }
}

TEST_CASE("property: replace then inverse replace restores the term") {
    testutil::TermGen gen(99);
    for (int i = 0; i < 100; ++i) {
        TermPtr h = beta_normalize(gen.ground(4));
        auto subs = subterms(h);
        TermPtr pat = subs[i % subs.size()];
        if (!is_closed(pat)) continue;
        TermPtr v = Term::variable("vfresh");
        TermPtr there = replace(h, {pat}, {v});
        TermPtr back = replace(there, {v}, {pat});
        CHECK(alpha_equal(back, h));
    }
}

TEST_CASE("property: alpha-beta equivalence is an equivalence relation") {
    testutil::TermGen gen(1234);
    std::vector<TermPtr> pool;
    for (int i = 0; i < 30; ++i) pool.push_back(gen.ground(3));
    for (int i = 0; i < 30; ++i) {
        const TermPtr& a = pool[i];
        const TermPtr& b = pool[(i * 7 + 1) % pool.size()];
        const TermPtr& c = pool[(i * 13 + 2) % pool.size()];
        CHECK(alpha_beta_equiv(a, a));
        if (alpha_beta_equiv(a, b)) CHECK(alpha_beta_equiv(b, a));
        if (alpha_beta_equiv(a, b) && alpha_beta_equiv(b, c)) CHECK(alpha_beta_equiv(a, c));
    }
}
