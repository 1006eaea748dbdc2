#include "kat/while_frontend.hpp"

#include <cctype>

#include "kat/normal_form.hpp"
#include "text_util.hpp"

namespace kat {

WhileProgram WhileNode::skip() { return std::make_shared<WhileNode>(); }

WhileProgram WhileNode::abort() {
    auto n = std::make_shared<WhileNode>();
    n->kind = Kind::abort;
    return n;
}

WhileProgram WhileNode::prim(ProgramId p) {
    auto n = std::make_shared<WhileNode>();
    n->kind = Kind::prim;
    n->program = p;
    return n;
}

WhileProgram WhileNode::seq(WhileProgram a, WhileProgram b) {
    auto n = std::make_shared<WhileNode>();
    n->kind = Kind::seq;
    n->first = std::move(a);
    n->second = std::move(b);
    return n;
}

WhileProgram WhileNode::if_then_else(Test guard, WhileProgram then_branch, WhileProgram else_branch) {
    auto n = std::make_shared<WhileNode>();
    n->kind = Kind::if_then_else;
    n->guard = guard;
    n->first = std::move(then_branch);
    n->second = std::move(else_branch);
    return n;
}

WhileProgram WhileNode::while_do(Test guard, WhileProgram body) {
    auto n = std::make_shared<WhileNode>();
    n->kind = Kind::while_do;
    n->guard = guard;
    n->first = std::move(body);
    return n;
}

namespace {

class ProgramParser {
public:
    ProgramParser(const Alphabet& alphabet, std::string_view text) : alpha_(alphabet), text_(text) {}

    WhileProgram run() {
        WhileProgram p = sequence();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected input");
        return p;
    }

private:
    const Alphabet& alpha_;
    std::string_view text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg, ParseError::Kind kind = ParseError::Kind::syntax_error) const {
        throw ParseError(kind, pos_, msg);
    }

    void skip_space() {
        while (pos_ < text_.size()) {
            if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
            } else if (text_[pos_] == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    bool peek(char c) {
        skip_space();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    void expect(char c) {
        if (!peek(c)) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    std::string_view peek_word() {
        skip_space();
        std::size_t end = pos_;
        if (end < text_.size() && detail::is_ident_start(text_[end]))
            while (end < text_.size() && detail::is_ident_char(text_[end])) ++end;
        return text_.substr(pos_, end - pos_);
    }

    std::string_view word() {
        auto w = peek_word();
        if (w.empty()) fail("expected an identifier");
        pos_ += w.size();
        return w;
    }

    void keyword(std::string_view k) {
        if (peek_word() != k) fail("expected '" + std::string(k) + "'");
        pos_ += k.size();
    }

    WhileProgram sequence() {
        WhileProgram first = statement();
        if (!peek(';')) return first;
        ++pos_;
        return WhileNode::seq(std::move(first), sequence());
    }

    WhileProgram block() {
        expect('{');
        WhileProgram p = sequence();
        expect('}');
        return p;
    }

    Test guard() {
        std::vector<Literal> lits;
        do {
            if (!lits.empty()) ++pos_;
            bool positive = true;
            if (peek('~')) {
                ++pos_;
                positive = false;
            }
            const std::size_t at = (skip_space(), pos_);
            const auto name = word();
            auto b = alpha_.find_test(name);
            if (!b) {
                pos_ = at;
                fail("unknown test '" + std::string(name) + "'", ParseError::Kind::unknown_identifier);
            }
            for (const auto& l : lits)
                if (l.base == *b) {
                    pos_ = at;
                    fail("test '" + std::string(name) + "' repeated in guard");
                }
            lits.push_back({static_cast<std::uint8_t>(*b), positive});
        } while (peek('&'));
        return Test::of(lits);
    }

    WhileProgram statement() {
        if (peek('{')) return block();
        const std::size_t at = (skip_space(), pos_);
        const auto w = word();
        if (w == "skip") return WhileNode::skip();
        if (w == "abort") return WhileNode::abort();
        if (w == "if") {
            Test g = guard();
            keyword("then");
            WhileProgram a = statement();
            keyword("else");
            return WhileNode::if_then_else(g, std::move(a), statement());
        }
        if (w == "while") {
            Test g = guard();
            keyword("do");
            return WhileNode::while_do(g, statement());
        }
        if (auto p = alpha_.find_program(w)) return WhileNode::prim(*p);
        pos_ = at;
        fail("unknown program '" + std::string(w) + "'", ParseError::Kind::unknown_identifier);
    }
};

Expr times(Expr a, Expr b) {
    if (a.is_one()) return b;
    if (b.is_one()) return a;
    return Expr::product(std::move(a), std::move(b));
}

Expr pad(TestSet x) {
    Expr out = Expr::one();
    auto members = x.members();
    for (auto it = members.rbegin(); it != members.rend(); ++it) out = times(dont_care(*it), std::move(out));
    return out;
}

Literal single_literal(const Alphabet& alphabet, const Test& g, TestSet pending) {
    if (g.size() != 1)
        throw CompileError(CompileError::Kind::negated_guard_disjunction,
                           "guard " + format(alphabet, g) + " has several literals; its negation is a disjunction");
    if (!g.base().subset_of(pending))
        throw CompileError(CompileError::Kind::guard_outside_pending,
                           "guard " + format(alphabet, g) + " tests outside the pending set " +
                               alphabet.format(pending));
    return g.literals().front();
}

CompileResult compile_raw(const Alphabet& alphabet, const WhileProgram& prog, TestSet pending) {
    switch (prog->kind) {
    case WhileNode::Kind::skip: return {Expr::one(), pending};
    case WhileNode::Kind::abort: return {Expr::zero(), pending};
    case WhileNode::Kind::prim: return {times(pad(pending), Expr::program(prog->program)), alphabet.all_tests()};
    case WhileNode::Kind::seq: {
        auto a = compile_raw(alphabet, prog->first, pending);
        auto b = compile_raw(alphabet, prog->second, a.out_pending);
        return {times(a.expr, b.expr), b.out_pending};
    }
    case WhileNode::Kind::if_then_else: {
        const Literal g = single_literal(alphabet, *prog->guard, pending);
        const TestSet inner = pending.without(g.base);
        auto a = compile_raw(alphabet, prog->first, inner);
        auto b = compile_raw(alphabet, prog->second, inner);
        const TestSet out = a.out_pending & b.out_pending;
        return {Expr::sum(times(Expr::literal(g), times(a.expr, pad(a.out_pending - out))),
                          times(Expr::literal(g.negated()), times(b.expr, pad(b.out_pending - out)))),
                out};
    }
    case WhileNode::Kind::while_do: {
        const Literal g = single_literal(alphabet, *prog->guard, pending);
        const TestSet inner = pending.without(g.base);
        auto body = compile_raw(alphabet, prog->first, inner);
        if (!pending.subset_of(body.out_pending))
            throw CompileError(CompileError::Kind::unproductive_loop_body,
                               "loop body leaves " + alphabet.format(pending - body.out_pending) +
                                   " examined, so the loop cannot repeat");
        Expr loop = times(Expr::literal(g), times(body.expr, pad(body.out_pending - pending)));
        return {times(Expr::star(std::move(loop)), Expr::literal(g.negated())), inner};
    }
    }
    return {Expr::zero(), pending};
}

} // namespace

WhileProgram parse_program(const Alphabet& alphabet, std::string_view text) {
    return ProgramParser(alphabet, text).run();
}

CompileResult compile(const Alphabet& alphabet, const WhileProgram& prog, TestSet pending) {
    if (!pending.subset_of(alphabet.all_tests())) throw InvalidInput("pending set outside the test alphabet");
    auto r = compile_raw(alphabet, prog, pending);
    return {normalize(r.expr), r.out_pending};
}

} // namespace kat
