#include <doctest.h>

#include "kat/derivatives.hpp"
#include "kat/error.hpp"
#include "kat/language.hpp"
#include "kat/normal_form.hpp"
#include "kat/typing.hpp"
#include "support.hpp"

using namespace kat;
using namespace kat::testing;

namespace {

const ExprType b_to_empty{TestSet::single(0), TestSet{}};

Expr P(const Alphabet& a, const char* text) { return parse_expr(a, text); }

} // namespace

TEST_CASE("parse and format") {
    const Alphabet a = bc_pq();
    const Expr alpha = P(a, alpha_text);
    CHECK(alpha.kind() == ExprKind::product);
    CHECK(alpha.right() == Expr::literal({0, false}));
    CHECK(alpha.left().kind() == ExprKind::star);
    CHECK(format(a, alpha) == alpha_text);
    CHECK(P(a, "0").is_zero());
    const Expr bb = P(a, "b + b");
    CHECK(bb.kind() == ExprKind::sum);
    CHECK(bb.left() == bb.right());
    CHECK(P(a, "[b]") == dont_care(0));
    CHECK(P(a, "b . p") == P(a, "b p"));
    CHECK(P(a, "b p # trailing comment\n + c") == P(a, "b p + c"));
    for (const char* text : {"b p + c", "(b + c) p", "(b p)*", "p**", "~b (c + ~c)*", "1 + 0"})
        CHECK(format(a, P(a, text)) == format(a, P(a, format(a, P(a, text)).c_str())));
}

TEST_CASE("parse errors carry positions") {
    const Alphabet a = bc_pq();
    try {
        P(a, "b + x");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.kind() == ParseError::Kind::unknown_identifier);
        CHECK(e.position() == 4);
    }
    try {
        P(a, "(b p");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.kind() == ParseError::Kind::syntax_error);
    }
    CHECK_THROWS_AS(P(a, "~p"), ParseError);
    CHECK_THROWS_AS(P(a, "[p]"), ParseError);
    CHECK_THROWS_AS(P(a, "b +"), ParseError);
}

TEST_CASE("infer_types") {
    const Alphabet a = bc_pq();
    CHECK(infer_types(a, P(a, alpha_text)).contains(b_to_empty));
    const auto one = infer_types(a, Expr::one()).types();
    CHECK(one.size() == 4);
    for (const auto& t : one) CHECK(t.from == t.to);
    const Alphabet b({"b"}, {});
    CHECK(infer_types(b, P(b, "b b")).empty());
    CHECK(infer_types(a, P(a, "p")).types() == std::vector<ExprType>{{TestSet{}, a.all_tests()}});
    CHECK(infer_types(a, Expr::zero()).count() == 16);
}

TEST_CASE("check_type") {
    const Alphabet a = bc_pq();
    CHECK_NOTHROW(check_type(a, P(a, beta_text), b_to_empty));
    const auto leaf = check_type(a, P(a, "p"), {TestSet{}, a.all_tests()});
    CHECK(leaf.children.empty());
    try {
        check_type(a, P(a, "b"), {TestSet{}, TestSet{}});
        FAIL("expected TypeError");
    } catch (const TypeError& e) {
        CHECK(e.kind() == TypeError::Kind::untypeable);
    }
    // 1 1 at {b}->{b} composes through {b}, the only possible middle set.
    const auto d = check_type(a, P(a, "1 1"), {TestSet::single(0), TestSet::single(0)});
    CHECK(d.middle == TestSet::single(0));
    // 0 0 at {}->{} could use any middle set; the smallest is {}.
    CHECK(check_type(a, P(a, "0 0"), {TestSet{}, TestSet{}}).middle == TestSet{});
    CHECK(check_type(a, P(a, "0 0"), {TestSet(0b11), TestSet{}}).middle == TestSet{});
}

TEST_CASE("canonical subset order") {
    CHECK(canonical_less(TestSet{}, TestSet(0b01)));
    CHECK(canonical_less(TestSet(0b01), TestSet(0b10)));
    CHECK(canonical_less(TestSet(0b10), TestSet(0b11)));
    CHECK(canonical_less(TestSet(0b011), TestSet(0b101)));
    CHECK(canonical_less(TestSet(0b100), TestSet(0b011)));
    CHECK_FALSE(canonical_less(TestSet(0b011), TestSet(0b100)));
}

TEST_CASE("test part and empty part") {
    const Alphabet a = bc_pq();
    CHECK(test_part(P(a, "p")).is_zero());
    CHECK(test_part(Expr::one()).is_one());
    CHECK(normalize(test_part(P(a, "b p + c"))) == P(a, "c"));
    CHECK(empty_part(P(a, "p*")).is_one());
    CHECK(empty_part(P(a, "p")).is_zero());
    CHECK(empty_part(P(a, alpha_text)).is_zero());
    CHECK(empty_part(P(a, "b + 1")).is_one());
    CHECK(empty_part(P(a, "1 b")).is_zero());
}

TEST_CASE("derivatives") {
    const Alphabet a = bc_pq();
    const Expr alpha = P(a, alpha_text);
    const Expr d = normalized_derivative(a, alpha, b_to_empty, Literal{0, true});
    CHECK(d == normalize(P(a, (std::string("p ") + alpha_prime_text).c_str())));
    CHECK(format(a, d) == "p ([b] c q)* ~c (b p ([b] c q)* ~c)* ~b");
    CHECK(normalized_derivative(a, alpha, b_to_empty, Literal{0, false}).is_one());
    const ExprType prog{TestSet{}, a.all_tests()};
    CHECK(normalized_derivative(a, P(a, "q"), prog, ProgramId{0}).is_zero());
    CHECK(normalized_derivative(a, P(a, "q"), prog, ProgramId{1}).is_one());
    CHECK(normalized_derivative(a, Expr::zero(), b_to_empty, Literal{0, true}).is_zero());
    const Alphabet b({"b"}, {"p"});
    CHECK(normalized_derivative(b, P(b, "b p"), {TestSet(1), TestSet(1)}, Literal{0, false}).is_zero());
    CHECK(normalized_derivative(b, P(b, "b p"), {TestSet(1), TestSet(1)}, Literal{0, true}) == P(b, "p"));
    try {
        normalized_derivative(a, alpha, b_to_empty, ProgramId{0});
        FAIL("expected TypeError");
    } catch (const TypeError& e) {
        CHECK(e.kind() == TypeError::Kind::type_mismatch);
    }
    CHECK_THROWS_AS(normalized_derivative(a, alpha, b_to_empty, Literal{1, true}), TypeError);
    CHECK(derivative_type(a, prog, ProgramId{0}) == ExprType{a.all_tests(), a.all_tests()});
    CHECK(derivative_type(a, {TestSet(0b11), TestSet{}}, Literal{1, false}) == ExprType{TestSet(0b01), TestSet{}});
}

TEST_CASE("derivatives are typeable at the derivative type") {
    const Alphabet a = bc_pq();
    Rng rng(21);
    for (int i = 0; i < 300; ++i) {
        auto [e, t] = random_typed(a, rng, 5, [](ExprType) { return true; });
        const TypeDerivation d = check_type(a, e, t);
        std::vector<Symbol> xs;
        if (t.from.empty()) {
            xs = {ProgramId{0}, ProgramId{1}};
        } else {
            for (const auto& l : a.literals(t.from)) xs.push_back(l);
        }
        for (const auto& x : xs) {
            const Expr raw = derivative(a, d, x);
            CHECK(is_typeable(a, raw, derivative_type(a, t, x)));
            CHECK(is_typeable(a, normalize(raw), derivative_type(a, t, x)));
        }
        CHECK(is_typeable(a, test_part(e), t));
        const Expr eps = empty_part(e);
        CHECK((eps.is_zero() || eps.is_one()));
    }
}

TEST_CASE("normal form") {
    const Alphabet a = bc_pq();
    const Expr e = P(a, "b p"), f = P(a, "c"), g = P(a, "~b q");
    CHECK(normalize(Expr::sum(e, Expr::sum(f, g))) == normalize(Expr::sum(Expr::sum(e, f), g)));
    CHECK(normalize(Expr::sum(e, e)) == normalize(e));
    CHECK(normalize(Expr::sum(f, e)) == normalize(Expr::sum(e, f)));
    CHECK(normalize(Expr::sum(Expr::product(Expr::zero(), e), f)) == normalize(f));
    CHECK(normalize(P(a, "1 b 1")) == P(a, "b"));
    CHECK(normalize(P(a, "0*")).is_one());
    CHECK(normalize(P(a, "(b c) p")) == P(a, "b c p"));
    CHECK(aci_equal(P(a, "b + c + b"), P(a, "c + b")));
}

TEST_CASE("normalization is idempotent, type preserving and language preserving") {
    const Alphabet a = bc_pq();
    Rng rng(22);
    for (int i = 0; i < 200; ++i) {
        auto [e, t] = random_typed(a, rng, 5, [](ExprType) { return true; });
        const Expr n = normalize(e);
        CHECK(normalize(n) == n);
        CHECK(is_normal(n));
        for (const auto& u : infer_types(a, e).types()) CHECK(is_typeable(a, n, u));
        CHECK(bounded_language(a, e, t, 4).same_strings(bounded_language(a, n, t, 4)));
    }
}
