#pragma once

#include "aifv/core.hpp"
#include "aifv/prefix_sets.hpp"

#include <map>
#include <utility>

namespace aifv {

struct DecodabilityViolation {
    enum class Kind {
        Prefix,          // c ∈ P^k_{τ_i(s)} ∩ P̄^k_i(f_i(s))
        SharedCodeword,  // f_i(s) = f_i(s'), c ∈ P^k_{τ_i(s)} ∩ P^k_{τ_i(s')}
    };
    Kind kind;
    std::size_t table;
    Symbol s;
    Symbol other;  // meaningful for SharedCodeword only
    BitSeq c;
};

struct DecodabilityReport {
    std::size_t k = 0;
    bool decodable = true;
    std::vector<DecodabilityViolation> violations;
};

std::string describe(const CodeTuple& F, const DecodabilityViolation& v);

bool is_extendable(const PrefixSetTable& T);
bool is_extendable(const CodeTuple& F);

DecodabilityReport is_k_bit_delay_decodable(const PrefixSetTable& T, std::size_t k);
DecodabilityReport is_k_bit_delay_decodable(const CodeTuple& F, std::size_t k);

struct ReachabilitySet {
    std::vector<std::size_t> members;  // R_F, ascending
    // (j, i) -> x with τ*_j(x) = i, for every j and every i ∈ R_F
    std::map<std::pair<std::size_t, std::size_t>, SourceSeq> witness_paths;

    bool contains(std::size_t i) const;
};

ReachabilitySet reachability(const CodeTuple& F);

// R_F ≠ ∅.
bool is_regular(const CodeTuple& F);
// Same answer, additionally cross-checked against the rank of the stationary
// linear system under μ; a disagreement throws ErrorCode::Internal.
bool is_regular(const CodeTuple& F, const SourceDist& mu);

// M_F = {i : |P^2_{F,i}| = 2}
std::vector<std::size_t> m_set(const PrefixSetTable& T);
std::vector<std::size_t> m_set(const CodeTuple& F);

}  // namespace aifv
