#include "kat/typing.hpp"

#include <algorithm>
#include <unordered_map>

#include "kat/error.hpp"

namespace kat {

TypeRelation::TypeRelation(std::size_t test_count)
    : subsets_(std::size_t{1} << test_count),
      words_((subsets_ + 63) / 64),
      bits_(subsets_ * words_, 0) {}

TypeRelation TypeRelation::all(std::size_t test_count) {
    TypeRelation r(test_count);
    for (std::uint32_t a = 0; a < r.subsets_; ++a)
        for (std::uint32_t b = 0; b < r.subsets_; ++b) r.insert({TestSet(a), TestSet(b)});
    return r;
}

TypeRelation TypeRelation::identity(std::size_t test_count) {
    TypeRelation r(test_count);
    for (std::uint32_t a = 0; a < r.subsets_; ++a) r.insert({TestSet(a), TestSet(a)});
    return r;
}

bool TypeRelation::contains(ExprType t) const {
    if (t.from.bits() >= subsets_ || t.to.bits() >= subsets_) return false;
    return (row(t.from.bits())[t.to.bits() / 64] >> (t.to.bits() % 64)) & 1u;
}

void TypeRelation::insert(ExprType t) {
    row(t.from.bits())[t.to.bits() / 64] |= std::uint64_t{1} << (t.to.bits() % 64);
}

bool TypeRelation::empty() const {
    return std::all_of(bits_.begin(), bits_.end(), [](std::uint64_t w) { return w == 0; });
}

std::size_t TypeRelation::count() const {
    std::size_t n = 0;
    for (auto w : bits_) n += static_cast<std::size_t>(__builtin_popcountll(w));
    return n;
}

TypeRelation TypeRelation::intersect(const TypeRelation& other) const {
    TypeRelation r = *this;
    for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] &= other.bits_[i];
    return r;
}

TypeRelation TypeRelation::compose(const TypeRelation& other) const {
    TypeRelation r = *this;
    std::fill(r.bits_.begin(), r.bits_.end(), 0);
    for (std::uint32_t a = 0; a < subsets_; ++a) {
        const std::uint64_t* in = row(a);
        std::uint64_t* out = r.row(a);
        for (std::uint32_t b = 0; b < subsets_; ++b) {
            if (!((in[b / 64] >> (b % 64)) & 1u)) continue;
            const std::uint64_t* next = other.row(b);
            for (std::size_t w = 0; w < words_; ++w) out[w] |= next[w];
        }
    }
    return r;
}

TypeRelation TypeRelation::diagonal() const {
    TypeRelation r = *this;
    std::fill(r.bits_.begin(), r.bits_.end(), 0);
    for (std::uint32_t a = 0; a < subsets_; ++a)
        if (contains({TestSet(a), TestSet(a)})) r.insert({TestSet(a), TestSet(a)});
    return r;
}

std::vector<ExprType> TypeRelation::types() const {
    std::vector<ExprType> out;
    for (std::uint32_t a = 0; a < subsets_; ++a)
        for (std::uint32_t b = 0; b < subsets_; ++b)
            if (contains({TestSet(a), TestSet(b)})) out.push_back({TestSet(a), TestSet(b)});
    return out;
}

namespace {

class Typer {
public:
    explicit Typer(const Alphabet& alphabet) : alphabet_(alphabet) {
        const auto n = static_cast<std::uint32_t>(alphabet.subset_count());
        for (std::uint32_t a = 0; a < n; ++a) canonical_.push_back(TestSet(a));
        std::stable_sort(canonical_.begin(), canonical_.end(), canonical_less);
    }

    const TypeRelation& relation(const Expr& e) {
        if (auto it = memo_.find(e.node()); it != memo_.end()) return it->second;
        TypeRelation r = compute(e);
        return memo_.emplace(e.node(), std::move(r)).first->second;
    }

    TypeDerivation derive(const Expr& e, ExprType t) {
        if (!relation(e).contains(t))
            throw TypeError(TypeError::Kind::untypeable,
                            "expression '" + format(alphabet_, e) + "' has no type " + format_type(alphabet_, t));
        TypeDerivation d{e, t, TestSet{}, {}};
        switch (e.kind()) {
        case ExprKind::sum:
            d.children.push_back(derive(e.left(), t));
            d.children.push_back(derive(e.right(), t));
            break;
        case ExprKind::product: {
            const auto& l = relation(e.left());
            const auto& r = relation(e.right());
            for (TestSet b : canonical_) {
                if (l.contains({t.from, b}) && r.contains({b, t.to})) {
                    d.middle = b;
                    d.children.push_back(derive(e.left(), {t.from, b}));
                    d.children.push_back(derive(e.right(), {b, t.to}));
                    return d;
                }
            }
            throw InternalInvariantViolation("product type without an intermediate set");
        }
        case ExprKind::star: d.children.push_back(derive(e.inner(), t)); break;
        default: break;
        }
        return d;
    }

private:
    const Alphabet& alphabet_;
    std::vector<TestSet> canonical_;
    std::unordered_map<const ExprNode*, TypeRelation> memo_;

    TypeRelation compute(const Expr& e) {
        const std::size_t k = alphabet_.test_count();
        switch (e.kind()) {
        case ExprKind::zero: return TypeRelation::all(k);
        case ExprKind::one: return TypeRelation::identity(k);
        case ExprKind::program: {
            TypeRelation r(k);
            r.insert({TestSet{}, alphabet_.all_tests()});
            return r;
        }
        case ExprKind::literal: {
            TypeRelation r(k);
            const std::size_t b = e.literal_value().base;
            const auto n = static_cast<std::uint32_t>(alphabet_.subset_count());
            for (std::uint32_t x = 0; x < n; ++x)
                if (TestSet(x).contains(b)) r.insert({TestSet(x), TestSet(x).without(b)});
            return r;
        }
        case ExprKind::sum: {
            TypeRelation l = relation(e.left());
            return l.intersect(relation(e.right()));
        }
        case ExprKind::product: {
            TypeRelation l = relation(e.left());
            return l.compose(relation(e.right()));
        }
        case ExprKind::star: return relation(e.inner()).diagonal();
        }
        throw InternalInvariantViolation("unknown expression kind");
    }
};

void check_alphabet(const Alphabet& alphabet, const Expr& e) {
    switch (e.kind()) {
    case ExprKind::program:
        if (e.program_id().index >= alphabet.program_count()) throw InvalidInput("program outside the alphabet");
        return;
    case ExprKind::literal:
        if (e.literal_value().base >= alphabet.test_count()) throw InvalidInput("test outside the alphabet");
        return;
    case ExprKind::sum:
    case ExprKind::product:
        check_alphabet(alphabet, e.left());
        check_alphabet(alphabet, e.right());
        return;
    case ExprKind::star: check_alphabet(alphabet, e.inner()); return;
    default: return;
    }
}

} // namespace

TypeRelation infer_types(const Alphabet& alphabet, const Expr& e) {
    check_alphabet(alphabet, e);
    Typer typer(alphabet);
    return typer.relation(e);
}

TypeDerivation check_type(const Alphabet& alphabet, const Expr& e, ExprType t) {
    check_alphabet(alphabet, e);
    Typer typer(alphabet);
    return typer.derive(e, t);
}

bool is_typeable(const Alphabet& alphabet, const Expr& e, ExprType t) {
    return infer_types(alphabet, e).contains(t);
}

} // namespace kat
