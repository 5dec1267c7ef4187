#include "aifv/markov.hpp"

namespace aifv {

StationaryDistribution stationary(const CodeTuple& F, const SourceDist& mu) {
    auto pi = solve_stationary(transition_matrix(F, mu));
    if (!pi) throw Error(ErrorCode::NotRegular, "stationary equations have no unique solution");
    return *pi;
}

Rational table_length(const CodeTuple& F, std::size_t i, const SourceDist& mu) {
    require_same_alphabet(F, mu);
    Rational L = 0;
    for (auto s : symbols(F.sigma())) L += Rational(static_cast<long long>(F.f(i, s).size())) * mu(s);
    return L;
}

Rational average_length(const CodeTuple& F, const SourceDist& mu) {
    auto pi = stationary(F, mu);
    Rational L = 0;
    for (std::size_t i = 0; i < F.size(); ++i) L += pi(static_cast<Eigen::Index>(i)) * table_length(F, i, mu);
    return L;
}

std::string format_length(const Rational& L) { return to_decimal(L, 4); }

}  // namespace aifv
