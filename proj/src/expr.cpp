#include "kat/expr.hpp"

#include <functional>

#include "kat/error.hpp"
#include "text_util.hpp"

namespace kat {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ull + (seed << 6) + (seed >> 2));
}

std::shared_ptr<ExprNode> make_node(ExprKind kind) {
    auto n = std::make_shared<ExprNode>();
    n->kind = kind;
    n->hash = mix(0x51ed27, static_cast<std::size_t>(kind));
    return n;
}

} // namespace

Expr::Expr() : Expr(zero()) {}

Expr Expr::zero() {
    static const Expr z(std::shared_ptr<const ExprNode>(make_node(ExprKind::zero)));
    return z;
}

Expr Expr::one() {
    static const Expr o(std::shared_ptr<const ExprNode>(make_node(ExprKind::one)));
    return o;
}

Expr Expr::program(ProgramId p) {
    auto n = make_node(ExprKind::program);
    n->program = p;
    n->hash = mix(n->hash, p.index);
    return Expr(std::shared_ptr<const ExprNode>(std::move(n)));
}

Expr Expr::literal(Literal l) {
    auto n = make_node(ExprKind::literal);
    n->literal = l;
    n->hash = mix(n->hash, static_cast<std::size_t>(l.base) * 2 + (l.positive ? 0 : 1));
    return Expr(std::shared_ptr<const ExprNode>(std::move(n)));
}

namespace {

Expr binary(ExprKind kind, Expr left, Expr right, auto wrap) {
    auto n = make_node(kind);
    n->hash = mix(mix(n->hash, left.hash()), right.hash());
    n->size = 1 + left.size() + right.size();
    n->left = std::move(left);
    n->right = std::move(right);
    return wrap(std::shared_ptr<const ExprNode>(std::move(n)));
}

} // namespace

Expr Expr::sum(Expr left, Expr right) {
    return binary(ExprKind::sum, std::move(left), std::move(right),
                  [](std::shared_ptr<const ExprNode> n) { return Expr(std::move(n)); });
}

Expr Expr::product(Expr left, Expr right) {
    return binary(ExprKind::product, std::move(left), std::move(right),
                  [](std::shared_ptr<const ExprNode> n) { return Expr(std::move(n)); });
}

Expr Expr::star(Expr inner) {
    auto n = make_node(ExprKind::star);
    n->hash = mix(n->hash, inner.hash());
    n->size = 1 + inner.size();
    n->left = std::move(inner);
    return Expr(std::shared_ptr<const ExprNode>(std::move(n)));
}

ExprKind Expr::kind() const { return node_->kind; }
ProgramId Expr::program_id() const { return node_->program; }
Literal Expr::literal_value() const { return node_->literal; }
const Expr& Expr::left() const { return node_->left; }
const Expr& Expr::right() const { return node_->right; }
std::size_t Expr::hash() const { return node_->hash; }
std::size_t Expr::size() const { return node_->size; }

bool operator==(const Expr& a, const Expr& b) {
    if (a.node_ == b.node_) return true;
    if (a.hash() != b.hash() || a.size() != b.size() || a.kind() != b.kind()) return false;
    switch (a.kind()) {
    case ExprKind::zero:
    case ExprKind::one: return true;
    case ExprKind::program: return a.program_id() == b.program_id();
    case ExprKind::literal: return a.literal_value() == b.literal_value();
    case ExprKind::star: return a.inner() == b.inner();
    case ExprKind::sum:
    case ExprKind::product: return a.left() == b.left() && a.right() == b.right();
    }
    return false;
}

std::strong_ordering operator<=>(const Expr& a, const Expr& b) {
    if (a.node_ == b.node_) return std::strong_ordering::equal;
    if (auto c = a.kind() <=> b.kind(); c != 0) return c;
    switch (a.kind()) {
    case ExprKind::zero:
    case ExprKind::one: return std::strong_ordering::equal;
    case ExprKind::program: return a.program_id() <=> b.program_id();
    case ExprKind::literal: return a.literal_value() <=> b.literal_value();
    case ExprKind::star: return a.inner() <=> b.inner();
    case ExprKind::sum:
    case ExprKind::product:
        if (auto c = a.left() <=> b.left(); c != 0) return c;
        return a.right() <=> b.right();
    }
    return std::strong_ordering::equal;
}

Expr dont_care(std::size_t base) {
    const auto b = static_cast<std::uint8_t>(base);
    return Expr::sum(Expr::literal({b, true}), Expr::literal({b, false}));
}

namespace {

class ExprParser {
public:
    ExprParser(const Alphabet& alphabet, std::string_view text) : alphabet_(alphabet), text_(text) {}

    Expr run() {
        skip();
        if (at_end()) fail("empty expression");
        Expr e = parse_sum();
        skip();
        if (!at_end()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return e;
    }

private:
    const Alphabet& alphabet_;
    std::string_view text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(ParseError::Kind::syntax_error, pos_, what);
    }

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }

    void skip() {
        while (!at_end()) {
            char c = text_[pos_];
            if (c == '#') {
                while (!at_end() && text_[pos_] != '\n') ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    bool starts_factor() {
        skip();
        char c = peek();
        return c == '(' || c == '[' || c == '~' || std::isdigit(static_cast<unsigned char>(c)) ||
               detail::is_ident_start(c);
    }

    Expr parse_sum() {
        Expr left = parse_product();
        skip();
        if (peek() == '+') {
            ++pos_;
            return Expr::sum(std::move(left), parse_sum());
        }
        return left;
    }

    Expr parse_product() {
        Expr left = parse_postfix();
        skip();
        if (peek() == '.') {
            ++pos_;
            if (!starts_factor()) fail("expected a factor after '.'");
            return Expr::product(std::move(left), parse_product());
        }
        if (starts_factor()) return Expr::product(std::move(left), parse_product());
        return left;
    }

    Expr parse_postfix() {
        Expr e = parse_atom();
        while (true) {
            skip();
            if (peek() != '*') break;
            ++pos_;
            e = Expr::star(std::move(e));
        }
        return e;
    }

    std::string_view identifier() {
        std::size_t start = pos_;
        while (!at_end() && detail::is_ident_char(text_[pos_])) ++pos_;
        return text_.substr(start, pos_ - start);
    }

    std::size_t test_base() {
        skip();
        std::size_t at = pos_;
        if (!detail::is_ident_start(peek())) fail("expected a test identifier");
        auto name = identifier();
        auto b = alphabet_.find_test(name);
        if (!b)
            throw ParseError(ParseError::Kind::unknown_identifier, at,
                             "'" + std::string(name) + "' is not a declared test");
        return *b;
    }

    Expr parse_atom() {
        skip();
        char c = peek();
        if (c == '(') {
            ++pos_;
            Expr e = parse_sum();
            skip();
            if (peek() != ')') fail("expected ')'");
            ++pos_;
            return e;
        }
        if (c == '[') {
            ++pos_;
            auto b = test_base();
            skip();
            if (peek() != ']') fail("expected ']'");
            ++pos_;
            return dont_care(b);
        }
        if (c == '~') {
            ++pos_;
            return Expr::literal({static_cast<std::uint8_t>(test_base()), false});
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (!at_end() && detail::is_ident_char(text_[pos_])) ++pos_;
            auto tok = text_.substr(start, pos_ - start);
            if (tok == "0") return Expr::zero();
            if (tok == "1") return Expr::one();
            pos_ = start;
            fail("only the constants 0 and 1 are allowed");
        }
        if (detail::is_ident_start(c)) {
            std::size_t at = pos_;
            auto name = identifier();
            if (auto b = alphabet_.find_test(name)) return Expr::literal({static_cast<std::uint8_t>(*b), true});
            if (auto p = alphabet_.find_program(name)) return Expr::program(*p);
            throw ParseError(ParseError::Kind::unknown_identifier, at,
                             "unknown identifier '" + std::string(name) + "'");
        }
        if (at_end()) fail("unexpected end of input");
        fail("unexpected '" + std::string(1, c) + "'");
    }
};

bool is_dont_care(const Expr& e) {
    if (e.kind() != ExprKind::sum) return false;
    const auto& l = e.left();
    const auto& r = e.right();
    return l.kind() == ExprKind::literal && r.kind() == ExprKind::literal && l.literal_value().positive &&
           r.literal_value() == l.literal_value().negated();
}

int precedence(const Expr& e) {
    switch (e.kind()) {
    case ExprKind::sum: return is_dont_care(e) ? 3 : 0;
    case ExprKind::product: return 1;
    case ExprKind::star: return 2;
    default: return 3;
    }
}

void print(const Alphabet& a, const Expr& e, std::string& out) {
    auto wrapped = [&](const Expr& child, bool wrap) {
        if (wrap) out += '(';
        print(a, child, out);
        if (wrap) out += ')';
    };
    switch (e.kind()) {
    case ExprKind::zero: out += '0'; return;
    case ExprKind::one: out += '1'; return;
    case ExprKind::program: out += a.program_name(e.program_id()); return;
    case ExprKind::literal: out += a.format(e.literal_value()); return;
    case ExprKind::sum:
        if (is_dont_care(e)) {
            out += '[' + a.test_name(e.left().literal_value().base) + ']';
            return;
        }
        wrapped(e.left(), precedence(e.left()) == 0);
        out += " + ";
        print(a, e.right(), out);
        return;
    case ExprKind::product:
        wrapped(e.left(), precedence(e.left()) < 2);
        out += ' ';
        wrapped(e.right(), precedence(e.right()) < 1);
        return;
    case ExprKind::star:
        wrapped(e.inner(), precedence(e.inner()) < 2);
        out += '*';
        return;
    }
}

} // namespace

Expr parse_expr(const Alphabet& alphabet, std::string_view text) {
    return ExprParser(alphabet, text).run();
}

std::string format(const Alphabet& alphabet, const Expr& e) {
    std::string out;
    print(alphabet, e, out);
    return out;
}

} // namespace kat
