#ifndef KAT_TEST_SUPPORT_IMPL_HPP
#define KAT_TEST_SUPPORT_IMPL_HPP

#include "kat/typing.hpp"

namespace kat::testing {

template <class Pred>
std::pair<Expr, ExprType> random_typed(const Alphabet& alpha, Rng& rng, int depth, Pred want) {
    while (true) {
        Expr e = random_expr(alpha, rng, depth);
        std::vector<ExprType> ok;
        for (const auto& t : infer_types(alpha, e).types())
            if (want(t)) ok.push_back(t);
        if (ok.empty()) continue;
        return {e, ok[std::uniform_int_distribution<std::size_t>(0, ok.size() - 1)(rng)]};
    }
}

} // namespace kat::testing

#endif
