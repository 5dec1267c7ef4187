#pragma once

#include "aifv/core.hpp"
#include "aifv/prefix_sets.hpp"

namespace aifv {

// d_{F,i}: 0 if P^1_{F,i} = {0}, 1 if {1}, λ if {0,1}. Throws NotExtendable on ∅.
std::vector<BitSeq> rotation_offsets(const PrefixSetTable& T);

// f̂_i(s) = f_i(s)·d_{τ_i(s)}, dropping the first bit when P^1_{F,i} ≠ {0,1}; τ unchanged.
CodeTuple rotate(const CodeTuple& F);

struct GammaDecomposition {
    std::vector<Symbol> chain;  // s_1, ..., s_ρ = s with f_i(s_1) ≺ ... ≺ f_i(s_ρ)
    std::vector<BitSeq> parts;  // γ(s_1), ..., γ(s_ρ); concatenation is f_i(s)
};

// Throws AmbiguousChain if two symbols share a codeword strictly below f_i(s).
GammaDecomposition gamma_decompose(const CodeTuple& F, std::size_t i, Symbol s);

// a_{F,i}; follows single λ codewords to their target tables, throwing
// NonTerminatingRecursion if that walk revisits a table.
int a_bit(const PrefixSetTable& T, std::size_t i);
int a_bit(const CodeTuple& F, std::size_t i);

CodeTuple dot(const CodeTuple& F);   // requires F ∈ F_1 (NotInF1)
CodeTuple ddot(const CodeTuple& F);  // requires F ∈ F_2 (NotInF2)

enum class ChainTarget { F1, F2, F3 };

struct TransformStep {
    std::string op;  // "rotate", "dot" or "ddot"
    CodeTuple input;
    CodeTuple output;
    std::vector<std::string> values;  // d_{F,i} for rotate, a_{F,i} for dot
};

struct TransformTrace {
    std::vector<TransformStep> steps;
    CodeTuple result;
};

// F_0 → F_1 by repeated rotation (at most 2·maxlen + 2 steps);
// F_1 → F_2 by repeated dot-then-rotate (at most |F| + 1 rounds);
// F_2 → F_3 by one ddot. Inputs already in the target class produce no steps.
// L(F) is checked to be preserved at each step.
TransformTrace chain_to_class(const CodeTuple& F, const SourceDist& mu, ChainTarget target);

// Keep only the tables reachable from R_F, renumbered in ascending order.
CodeTuple prune_to_reachable(const CodeTuple& F);

// Add table 1 = (01, 10, 110, ..., 1^{σ-2}0, 1^{σ-1}) with every symbol leading to table 0.
CodeTuple extend_to_two_tables(const CodeTuple& F);

}  // namespace aifv
