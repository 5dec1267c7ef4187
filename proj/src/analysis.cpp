#include "aifv/analysis.hpp"

#include "aifv/markov.hpp"

#include <algorithm>
#include <deque>

namespace aifv {

std::string describe(const CodeTuple& F, const DecodabilityViolation& v) {
    const auto& a = F.alphabet();
    std::string out = "table " + std::to_string(v.table) + ", symbol " + a.name(v.s);
    if (v.kind == DecodabilityViolation::Kind::SharedCodeword)
        out += " and " + a.name(v.other) + " share codeword " + F.f(v.table, v.s).token() +
               "; both continuations admit " + v.c.token();
    else
        out += ": continuation " + v.c.token() + " also extends a longer codeword";
    return out;
}

bool is_extendable(const PrefixSetTable& T) {
    for (std::size_t i = 0; i < T.tuple().size(); ++i)
        if (T.base(i, 1).empty()) return false;
    return true;
}

bool is_extendable(const CodeTuple& F) { return is_extendable(PrefixSetTable(F)); }

DecodabilityReport is_k_bit_delay_decodable(const PrefixSetTable& T, std::size_t k) {
    const CodeTuple& F = T.tuple();
    DecodabilityReport rep;
    rep.k = k;
    using Kind = DecodabilityViolation::Kind;
    for (std::size_t i = 0; i < F.size(); ++i) {
        for (auto s : symbols(F.sigma())) {
            auto both = intersect(T.base(F.tau(i, s), k), T.p_bar_set(i, F.f(i, s), k));
            for (const auto& c : both) rep.violations.push_back({Kind::Prefix, i, s, s, c});
        }
        // condition (ii): only pairs that actually share a codeword
        std::map<BitSeq, std::vector<Symbol>> groups;
        for (auto s : symbols(F.sigma())) groups[F.f(i, s)].push_back(s);
        for (const auto& [w, group] : groups) {
            for (std::size_t x = 0; x < group.size(); ++x)
                for (std::size_t y = x + 1; y < group.size(); ++y) {
                    auto both = intersect(T.base(F.tau(i, group[x]), k), T.base(F.tau(i, group[y]), k));
                    for (const auto& c : both) rep.violations.push_back({Kind::SharedCodeword, i, group[x], group[y], c});
                }
        }
    }
    rep.decodable = rep.violations.empty();
    return rep;
}

DecodabilityReport is_k_bit_delay_decodable(const CodeTuple& F, std::size_t k) {
    return is_k_bit_delay_decodable(PrefixSetTable(F, std::max(k, PrefixSetTable::default_max_k)), k);
}

bool ReachabilitySet::contains(std::size_t i) const {
    return std::binary_search(members.begin(), members.end(), i);
}

ReachabilitySet reachability(const CodeTuple& F) {
    const std::size_t m = F.size();
    // paths[j][i]: shortest x with τ*_j(x) = i, ties broken by symbol order
    std::vector<std::vector<std::optional<SourceSeq>>> paths(m, std::vector<std::optional<SourceSeq>>(m));
    for (std::size_t j = 0; j < m; ++j) {
        paths[j][j] = SourceSeq{};
        std::deque<std::size_t> queue{j};
        while (!queue.empty()) {
            std::size_t t = queue.front();
            queue.pop_front();
            for (auto s : symbols(F.sigma())) {
                std::size_t n = F.tau(t, s);
                if (paths[j][n]) continue;
                SourceSeq x = *paths[j][t];
                x.push_back(s);
                paths[j][n] = std::move(x);
                queue.push_back(n);
            }
        }
    }
    ReachabilitySet r;
    for (std::size_t i = 0; i < m; ++i) {
        bool all = true;
        for (std::size_t j = 0; j < m && all; ++j) all = paths[j][i].has_value();
        if (!all) continue;
        r.members.push_back(i);
        for (std::size_t j = 0; j < m; ++j) r.witness_paths[{j, i}] = *paths[j][i];
    }
    return r;
}

bool is_regular(const CodeTuple& F) { return !reachability(F).members.empty(); }

bool is_regular(const CodeTuple& F, const SourceDist& mu) {
    bool graph = is_regular(F);
    bool algebra = stationary_system_rank(transition_matrix(F, mu)) == F.size();
    if (graph != algebra)
        throw Error(ErrorCode::Internal, "regularity: graph criterion and rank criterion disagree");
    return graph;
}

std::vector<std::size_t> m_set(const PrefixSetTable& T) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < T.tuple().size(); ++i)
        if (T.base(i, 2).size() == 2) out.push_back(i);
    return out;
}

std::vector<std::size_t> m_set(const CodeTuple& F) { return m_set(PrefixSetTable(F)); }

}  // namespace aifv
