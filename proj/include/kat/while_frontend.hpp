#ifndef KAT_WHILE_FRONTEND_HPP
#define KAT_WHILE_FRONTEND_HPP

#include <memory>
#include <string>
#include <string_view>

#include "kat/alphabet.hpp"
#include "kat/error.hpp"
#include "kat/expr.hpp"
#include "kat/mixed_string.hpp"

namespace kat {

struct WhileNode;
using WhileProgram = std::shared_ptr<const WhileNode>;

/// Structured program with conjunctive guards.
struct WhileNode {
    enum class Kind { skip, abort, prim, seq, if_then_else, while_do };

    Kind kind = Kind::skip;
    ProgramId program{};
    /// Set for if_then_else and while_do.
    std::optional<Test> guard;
    /// seq: first, second. if_then_else: then, else. while_do: body in `first`.
    WhileProgram first;
    WhileProgram second;

    static WhileProgram skip();
    static WhileProgram abort();
    static WhileProgram prim(ProgramId p);
    static WhileProgram seq(WhileProgram a, WhileProgram b);
    static WhileProgram if_then_else(Test guard, WhileProgram then_branch, WhileProgram else_branch);
    static WhileProgram while_do(Test guard, WhileProgram body);
};

class CompileError : public Error {
public:
    enum class Kind { guard_outside_pending, unproductive_loop_body, negated_guard_disjunction };

    CompileError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

/// Accepts `skip`, `abort`, program identifiers, `s1 ; s2`,
/// `if g then { s } else { s }`, `while g do { s }` and `{ s }`, with guards
/// `b`, `~b`, `b & ~c` and `#` line comments. A branch or loop body may also
/// be a single unbraced statement. Throws ParseError.
WhileProgram parse_program(const Alphabet& alphabet, std::string_view text);

struct CompileResult {
    Expr expr;
    /// Tests not yet examined after the program runs.
    TestSet out_pending;
};

/// Compiles while threading the set of tests still pending. The result has
/// type pending -> out_pending and is returned in normal form. Throws
/// CompileError.
CompileResult compile(const Alphabet& alphabet, const WhileProgram& prog, TestSet pending);

} // namespace kat

#endif
