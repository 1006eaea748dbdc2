#include "kat/normal_form.hpp"

#include <algorithm>
#include <unordered_map>
#include <vector>

namespace kat {

namespace {

void collect_terms(const Expr& e, std::vector<Expr>& out) {
    if (e.kind() == ExprKind::sum) {
        collect_terms(e.left(), out);
        collect_terms(e.right(), out);
    } else if (!e.is_zero()) {
        out.push_back(e);
    }
}

// Both operands are normal.
Expr make_sum(const Expr& a, const Expr& b) {
    std::vector<Expr> terms;
    collect_terms(a, terms);
    collect_terms(b, terms);
    std::sort(terms.begin(), terms.end());
    terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
    if (terms.empty()) return Expr::zero();
    Expr out = terms.back();
    for (auto it = terms.rbegin() + 1; it != terms.rend(); ++it) out = Expr::sum(*it, std::move(out));
    return out;
}

// Both operands are normal.
Expr make_product(const Expr& a, const Expr& b) {
    if (a.is_zero() || b.is_zero()) return Expr::zero();
    if (a.is_one()) return b;
    if (b.is_one()) return a;
    if (a.kind() == ExprKind::product) return Expr::product(a.left(), make_product(a.right(), b));
    return Expr::product(a, b);
}

class Normalizer {
public:
    Expr run(const Expr& e) {
        switch (e.kind()) {
        case ExprKind::zero:
        case ExprKind::one:
        case ExprKind::program:
        case ExprKind::literal: return e;
        default: break;
        }
        if (auto it = memo_.find(e.node()); it != memo_.end()) return it->second;
        Expr out;
        switch (e.kind()) {
        case ExprKind::sum: out = make_sum(run(e.left()), run(e.right())); break;
        case ExprKind::product: out = make_product(run(e.left()), run(e.right())); break;
        case ExprKind::star: {
            Expr inner = run(e.inner());
            out = inner.is_zero() || inner.is_one() ? Expr::one() : Expr::star(std::move(inner));
            break;
        }
        default: break;
        }
        memo_.emplace(e.node(), out);
        return out;
    }

private:
    std::unordered_map<const ExprNode*, Expr> memo_;
};

} // namespace

Expr normalize(const Expr& e) { return Normalizer().run(e); }

bool aci_equal(const Expr& a, const Expr& b) { return normalize(a) == normalize(b); }

bool is_normal(const Expr& e) { return normalize(e) == e; }

} // namespace kat
