#include "support.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

#include "kat/normal_form.hpp"
#include "kat/typing.hpp"

namespace kat::testing {

Alphabet bc_pq() { return Alphabet({"b", "c"}, {"p", "q"}); }

StateRef state(const MixedAutomaton& m, const std::string& name) {
    auto s = m.find(name);
    if (!s) throw std::logic_error("no state " + name);
    return *s;
}

namespace {

const Literal b_pos{0, true}, b_neg{0, false}, c_pos{1, true}, c_neg{1, false};
const ProgramId p_id{0}, q_id{1};

} // namespace

MixedAutomaton figure_one() {
    MixedAutomaton m(bc_pq());
    const TestSet bc(0b11), b(0b01), c(0b10), none;
    const auto s2_bc = m.add_state(bc, "s2_bc"), sink_bc = m.add_state(bc, "sink_bc");
    const auto s1_b = m.add_state(b, "s1_b"), s2_b = m.add_state(b, "s2_b"), sink_b = m.add_state(b, "sink_b");
    const auto s2_c = m.add_state(c, "s2_c"), sink_c = m.add_state(c, "sink_c");
    const auto s1_e = m.add_state(none, "s1_e"), s2_e = m.add_state(none, "s2_e"), sink_e = m.add_state(none, "sink_e");
    m.set_output(s1_e, true);
    m.set_output(s2_e, true);

    m.set_transition(s1_b, b_pos, s1_e);
    m.set_transition(s1_b, b_neg, sink_e);
    m.set_transition(s1_e, p_id, s2_bc);
    m.set_transition(s1_e, q_id, sink_bc);
    m.set_transition(s2_bc, b_pos, s2_c);
    m.set_transition(s2_bc, b_neg, sink_c);
    m.set_transition(s2_bc, c_pos, sink_b);
    m.set_transition(s2_bc, c_neg, s2_b);
    m.set_transition(s2_c, c_neg, s2_e);
    m.set_transition(s2_c, c_pos, sink_e);
    m.set_transition(s2_b, b_pos, s2_e);
    m.set_transition(s2_b, b_neg, sink_e);
    m.set_transition(s2_e, p_id, sink_bc);
    m.set_transition(s2_e, q_id, sink_bc);
    for (auto l : {b_pos, b_neg}) m.set_transition(sink_bc, l, sink_c);
    for (auto l : {c_pos, c_neg}) m.set_transition(sink_bc, l, sink_b);
    for (auto l : {b_pos, b_neg}) m.set_transition(sink_b, l, sink_e);
    for (auto l : {c_pos, c_neg}) m.set_transition(sink_c, l, sink_e);
    m.set_transition(sink_e, p_id, sink_bc);
    m.set_transition(sink_e, q_id, sink_bc);
    return m;
}

MixedAutomaton path_dependent() {
    MixedAutomaton m(Alphabet({"b", "c"}, {"p"}));
    const auto x = m.add_state(TestSet(0b11), "x");
    const auto u = m.add_state(TestSet(0b10), "u");
    const auto v = m.add_state(TestSet(0b01), "v");
    const auto acc = m.add_state(TestSet{}, "acc");
    const auto rej = m.add_state(TestSet{}, "rej");
    m.set_output(acc, true);
    for (auto l : {b_pos, b_neg}) m.set_transition(x, l, u);
    for (auto l : {c_pos, c_neg}) m.set_transition(x, l, v);
    for (auto l : {c_pos, c_neg}) m.set_transition(u, l, acc);
    for (auto l : {b_pos, b_neg}) m.set_transition(v, l, rej);
    m.set_transition(acc, p_id, x);
    m.set_transition(rej, p_id, x);
    return m;
}

namespace {

std::uint32_t raw_base(StringElement e) { return e.is_program() ? 0 : e.test().base().bits(); }

StringElement raw_test(std::uint32_t base, std::uint32_t positive) {
    return StringElement::test(Test(TestSet(base), TestSet(positive)));
}

} // namespace

bool oracle_valid(const Alphabet& alpha, const Elements& s) {
    const std::uint32_t full = (1u << alpha.test_count()) - 1;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i > 0 && s[i].is_program() == s[i - 1].is_program()) return false;
        if (s[i].is_test() && (raw_base(s[i]) & ~full)) return false;
        if (s[i].is_program() && s[i].program().index >= alpha.program_count()) return false;
        if (i > 0 && i + 1 < s.size() && s[i].is_test() && raw_base(s[i]) != full) return false;
    }
    return true;
}

std::vector<Elements> oracle_all_strings(const Alphabet& alpha, std::size_t max_len) {
    const std::uint32_t full = (1u << alpha.test_count()) - 1;
    std::vector<StringElement> atoms;
    for (std::uint16_t p = 0; p < alpha.program_count(); ++p) atoms.push_back(StringElement::program(ProgramId{p}));
    for (std::uint32_t base = 1; base <= full; ++base)
        for (std::uint32_t pos = 0; pos <= full; ++pos)
            if ((pos & ~base) == 0) atoms.push_back(raw_test(base, pos));
    std::vector<Elements> out{{}}, layer{{}};
    for (std::size_t n = 1; n <= max_len; ++n) {
        std::vector<Elements> next;
        for (const auto& s : layer)
            for (const auto& a : atoms) {
                Elements t = s;
                t.push_back(a);
                // Prefixes of valid strings may end in a partial test, so check
                // the last interior position only when completing.
                bool ok = true;
                for (std::size_t i = 0; i < t.size() && ok; ++i) {
                    if (i > 0 && t[i].is_program() == t[i - 1].is_program()) ok = false;
                    if (i > 0 && i + 1 < t.size() && t[i].is_test() && raw_base(t[i]) != full) ok = false;
                }
                if (ok) next.push_back(std::move(t));
            }
        for (const auto& s : next)
            if (oracle_valid(alpha, s)) out.push_back(s);
        layer = std::move(next);
    }
    return out;
}

std::set<ExprType> oracle_types(const Alphabet& alpha, const Elements& s) {
    const std::uint32_t full = (1u << alpha.test_count()) - 1;
    std::set<ExprType> out;
    if (s.empty()) {
        for (std::uint32_t a = 0; a <= full; ++a) out.insert({TestSet(a), TestSet(a)});
    } else if (s.size() == 1 && s[0].is_test()) {
        const std::uint32_t base = raw_base(s[0]);
        for (std::uint32_t x = 0; x <= full; ++x)
            if ((x & base) == 0) out.insert({TestSet(x | base), TestSet(x)});
    } else if (s.size() == 1) {
        out.insert({TestSet{}, TestSet(full)});
    } else {
        out.insert({TestSet(raw_base(s.front())), TestSet(full & ~raw_base(s.back()))});
    }
    return out;
}

std::optional<Elements> oracle_concat(const Alphabet& alpha, const Elements& a, const Elements& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    Elements out = a;
    if (a.back().is_program() != b.front().is_program()) {
        out.insert(out.end(), b.begin(), b.end());
    } else if (a.back().is_test()) {
        const Test x = a.back().test(), y = b.front().test();
        if ((x.base() & y.base()) != TestSet{}) return std::nullopt;
        out.back() = raw_test((x.base() | y.base()).bits(), (x.positive() | y.positive()).bits());
        out.insert(out.end(), b.begin() + 1, b.end());
    } else {
        return std::nullopt;
    }
    if (!oracle_valid(alpha, out)) return std::nullopt;
    return out;
}

std::vector<std::pair<Elements, Elements>> MembershipOracle::splits(const Elements& s) const {
    std::vector<std::pair<Elements, Elements>> out;
    for (std::size_t k = 0; k <= s.size(); ++k) out.emplace_back(Elements(s.begin(), s.begin() + k),
                                                                 Elements(s.begin() + k, s.end()));
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (!s[k].is_test()) continue;
        const Test t = s[k].test();
        const std::uint32_t base = t.base().bits(), pos = t.positive().bits();
        for (std::uint32_t left = (base - 1) & base; left != 0; left = (left - 1) & base) {
            const std::uint32_t right = base & ~left;
            Elements x(s.begin(), s.begin() + k), y;
            x.push_back(raw_test(left, pos & left));
            y.push_back(raw_test(right, pos & right));
            y.insert(y.end(), s.begin() + k + 1, s.end());
            out.emplace_back(std::move(x), std::move(y));
        }
    }
    return out;
}

bool MembershipOracle::member(const Expr& e, const Elements& s) {
    const auto key = std::make_pair(static_cast<const void*>(e.node()), s);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool r = false;
    switch (e.kind()) {
    case ExprKind::zero: r = false; break;
    case ExprKind::one: r = s.empty(); break;
    case ExprKind::program: r = s.size() == 1 && s[0].is_program() && s[0].program().index == e.program_id().index; break;
    case ExprKind::literal: {
        const Literal l = e.literal_value();
        r = s.size() == 1 && s[0] == raw_test(1u << l.base, l.positive ? 1u << l.base : 0);
        break;
    }
    case ExprKind::sum: r = member(e.left(), s) || member(e.right(), s); break;
    case ExprKind::product:
        for (const auto& [x, y] : splits(s))
            if (member(e.left(), x) && member(e.right(), y)) {
                r = true;
                break;
            }
        break;
    case ExprKind::star:
        if (s.empty()) {
            r = true;
            break;
        }
        for (const auto& [x, y] : splits(s))
            if (!x.empty() && member(e.inner(), x) && member(e, y)) {
                r = true;
                break;
            }
        break;
    }
    memo_[key] = r;
    return r;
}

std::set<MixedString> oracle_language(const Alphabet& alpha, const Expr& e, std::size_t max_len) {
    MembershipOracle oracle(alpha);
    std::set<MixedString> out;
    for (const auto& s : oracle_all_strings(alpha, max_len))
        if (oracle.member(e, s)) out.insert(mk_string(alpha, s));
    return out;
}

Expr random_expr(const Alphabet& alpha, Rng& rng, int depth) {
    std::uniform_real_distribution<double> coin(0, 1);
    if (depth <= 0 || coin(rng) < 0.25) {
        const std::size_t programs = alpha.program_count(), literals = 2 * alpha.test_count();
        std::uniform_int_distribution<std::size_t> pick(0, programs + literals + 1);
        const std::size_t k = pick(rng);
        if (k == 0) return coin(rng) < 0.5 ? Expr::zero() : Expr::one();
        if (k <= programs) return Expr::program(ProgramId{static_cast<std::uint16_t>(k - 1)});
        if (k <= programs + literals) {
            const std::size_t j = k - programs - 1;
            return Expr::literal({static_cast<std::uint8_t>(j / 2), j % 2 == 0});
        }
        return Expr::one();
    }
    const double r = coin(rng);
    if (r < 0.35) return Expr::sum(random_expr(alpha, rng, depth - 1), random_expr(alpha, rng, depth - 1));
    if (r < 0.8) return Expr::product(random_expr(alpha, rng, depth - 1), random_expr(alpha, rng, depth - 1));
    return Expr::star(random_expr(alpha, rng, depth - 1));
}

Expr random_at(const Alphabet& alpha, Rng& rng, int depth, ExprType t) {
    while (true) {
        Expr e = random_expr(alpha, rng, depth);
        if (is_typeable(alpha, e, t)) return e;
    }
}

namespace {

std::vector<Expr> laws(const Expr& x) {
    std::vector<Expr> out{Expr::sum(x, x), Expr::product(x, Expr::one()), Expr::product(Expr::one(), x),
                          Expr::sum(x, Expr::zero())};
    switch (x.kind()) {
    case ExprKind::sum:
        out.push_back(Expr::sum(x.right(), x.left()));
        break;
    case ExprKind::product: {
        const Expr a = x.left(), b = x.right();
        if (b.kind() == ExprKind::product) out.push_back(Expr::product(Expr::product(a, b.left()), b.right()));
        if (a.kind() == ExprKind::product) out.push_back(Expr::product(a.left(), Expr::product(a.right(), b)));
        if (b.kind() == ExprKind::sum) out.push_back(Expr::sum(Expr::product(a, b.left()), Expr::product(a, b.right())));
        if (a.kind() == ExprKind::sum) out.push_back(Expr::sum(Expr::product(a.left(), b), Expr::product(a.right(), b)));
        // x (y x)* = (x y)* x
        if (b.kind() == ExprKind::star && b.inner().kind() == ExprKind::product && b.inner().right() == a)
            out.push_back(Expr::product(Expr::star(Expr::product(a, b.inner().left())), a));
        break;
    }
    case ExprKind::star: {
        const Expr a = x.inner();
        out.push_back(Expr::sum(Expr::one(), Expr::product(a, x)));
        out.push_back(Expr::sum(Expr::one(), Expr::product(x, a)));
        out.push_back(Expr::star(x));
        out.push_back(Expr::product(x, x));
        if (a.kind() == ExprKind::sum)
            out.push_back(Expr::product(Expr::star(Expr::product(Expr::star(a.left()), a.right())),
                                        Expr::star(a.left())));
        break;
    }
    default: break;
    }
    return out;
}

std::size_t node_count(const Expr& e) {
    switch (e.kind()) {
    case ExprKind::sum:
    case ExprKind::product: return 1 + node_count(e.left()) + node_count(e.right());
    case ExprKind::star: return 1 + node_count(e.inner());
    default: return 1;
    }
}

// Replaces the k-th node in preorder by f(node).
template <class F>
Expr replace_at(const Expr& e, std::size_t& k, F&& f) {
    if (k == 0) {
        k = static_cast<std::size_t>(-1);
        return f(e);
    }
    --k;
    switch (e.kind()) {
    case ExprKind::sum: {
        Expr l = replace_at(e.left(), k, f);
        return Expr::sum(l, replace_at(e.right(), k, f));
    }
    case ExprKind::product: {
        Expr l = replace_at(e.left(), k, f);
        return Expr::product(l, replace_at(e.right(), k, f));
    }
    case ExprKind::star: return Expr::star(replace_at(e.inner(), k, f));
    default: return e;
    }
}

} // namespace

Expr rewrite(const Alphabet& alpha, Rng& rng, const Expr& e, ExprType t, int steps) {
    Expr cur = e;
    for (int i = 0; i < steps; ++i) {
        for (int attempt = 0; attempt < 20; ++attempt) {
            std::size_t k = std::uniform_int_distribution<std::size_t>(0, node_count(cur) - 1)(rng);
            Expr next = replace_at(cur, k, [&](const Expr& x) {
                auto options = laws(x);
                return options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];
            });
            if (is_typeable(alpha, next, t)) {
                cur = next;
                break;
            }
        }
    }
    return cur;
}

namespace {

std::uint32_t find_state(const DerivativeAutomaton& m, TestSet a, const char* text) {
    const Expr nf = normalize(parse_expr(m.automaton.alphabet(), text));
    const auto& row = m.exprs[a.bits()];
    auto it = std::find(row.begin(), row.end(), nf);
    if (it == row.end()) throw std::logic_error(std::string("no state for ") + text);
    return static_cast<std::uint32_t>(it - row.begin());
}

} // namespace

PseudoBisimFamily example_family(const DerivativeAutomaton& ma, const DerivativeAutomaton& mb) {
    PseudoBisimFamily r(2);
    auto add = [&](std::size_t i, const std::string& x, const std::string& y) {
        r.relations[i].insert({find_state(ma, chain_set(i), x.c_str()), find_state(mb, chain_set(i), y.c_str())});
    };
    const std::string a1 = alpha_prime_text, b1 = beta_prime_text;
    add(2, a1, b1);
    add(2, "0", "0");
    add(1, "[b] q " + a1, "[b] q " + b1);
    add(1, alpha_text, beta_text);
    add(1, "0", "0");
    add(0, "p " + a1, "p " + b1);
    add(0, "q " + a1, "q " + b1);
    add(0, "1", "1");
    add(0, "0", "0");
    return r;
}

std::optional<PseudoBisimFamily> pseudo_closure(const MixedAutomaton& m1, const MixedAutomaton& m2, std::size_t i,
                                                StateRef s, StateRef t) {
    const auto& alpha = m1.alphabet();
    const std::size_t k = alpha.test_count();
    PseudoBisimFamily r(k);
    std::deque<std::tuple<std::size_t, StateRef, StateRef>> work{{i, s, t}};
    while (!work.empty()) {
        auto [level, x, y] = work.front();
        work.pop_front();
        if (!r.relations[level].insert({x.index, y.index}).second) continue;
        if (level == 0) {
            if (m1.output(x) != m2.output(y)) return std::nullopt;
            for (std::uint16_t p = 0; p < alpha.program_count(); ++p)
                work.emplace_back(k, m1.step(x, ProgramId{p}), m2.step(y, ProgramId{p}));
        } else {
            for (bool positive : {true, false}) {
                const Literal l{static_cast<std::uint8_t>(level - 1), positive};
                work.emplace_back(level - 1, m1.step(x, l), m2.step(y, l));
            }
        }
    }
    return r;
}

} // namespace kat::testing
