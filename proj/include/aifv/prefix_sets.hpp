#pragma once

#include "aifv/core.hpp"

#include <map>
#include <mutex>
#include <tuple>

namespace aifv {

struct Encoded {
    BitSeq bits;        // f*_i(x)
    std::size_t table;  // τ*_i(x)
};

Encoded f_star(const CodeTuple& F, std::size_t i, std::span<const Symbol> x);

// S_{F,i}(b) in alphabet order.
std::vector<Symbol> symbols_with_codeword(const CodeTuple& F, std::size_t i, const BitSeq& b);

// Exact P^k_{F,i}(b) / P̄^k_{F,i}(b) for one fixed tuple.
//
// The base sets T^k_j = P^k_{F,j}(λ) satisfy
//   T^0_j = {λ},
//   T^k_j = ∪_s  |f_j(s)| ≥ k ? {f_j(s)[0:k]} : f_j(s)·T^{k-|f_j(s)|}_{τ_j(s)},
// where λ codewords make level k refer to itself; each level is the least
// fixed point, found by iterating from all-empty. Conditional sets are a
// union over the first symbol of the source sequence.
//
// All queries lock an internal mutex, so a table may be shared across threads.
class PrefixSetTable {
public:
    static constexpr std::size_t default_max_k = 8;

    explicit PrefixSetTable(CodeTuple F, std::size_t max_k = default_max_k);

    const CodeTuple& tuple() const noexcept { return F_; }
    std::size_t max_k() const noexcept { return max_k_; }

    BitSeqSet base(std::size_t i, std::size_t k) const;  // P^k_{F,i}(λ)
    BitSeqSet p_set(std::size_t i, const BitSeq& b, std::size_t k) const;
    BitSeqSet p_bar_set(std::size_t i, const BitSeq& b, std::size_t k) const;
    // b ∈ P^{|b|}_{F,i}(λ); not limited by max_k.
    bool p_star_contains(std::size_t i, const BitSeq& b) const;

private:
    void check_k(std::size_t k) const;
    void ensure_levels(std::size_t k) const;
    BitSeqSet conditional(std::size_t i, const BitSeq& b, std::size_t k, bool strict) const;

    CodeTuple F_;
    std::size_t max_k_;
    mutable std::mutex mutex_;
    mutable std::vector<std::vector<BitSeqSet>> levels_;  // levels_[k][i]
    mutable std::map<std::tuple<std::size_t, BitSeq, std::size_t, bool>, BitSeqSet> memo_;
};

BitSeqSet p_set(const CodeTuple& F, std::size_t i, const BitSeq& b, std::size_t k);
BitSeqSet p_bar_set(const CodeTuple& F, std::size_t i, const BitSeq& b, std::size_t k);
bool p_star_contains(const CodeTuple& F, std::size_t i, const BitSeq& b);

}  // namespace aifv
