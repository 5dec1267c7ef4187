#pragma once

#include "aifv/core.hpp"

#include <cstdint>
#include <optional>

namespace aifv {

enum class SearchFilter { F0, Aifv };

std::string_view to_string(SearchFilter f);

struct SearchSpace {
    std::size_t sigma = 2;
    std::size_t max_tables = 2;  // 1 or 2
    std::size_t max_len = 3;     // codewords of 0..max_len bits
    SearchFilter filter = SearchFilter::F0;
    unsigned threads = 1;        // 0: one per hardware thread
    bool allow_large = false;    // permit sigma > 3 or max_len > 4
};

// Σ_m (K·m)^{σ·m} with K = 2^{max_len+1} - 1 codeword choices per slot.
std::uint64_t expected_space_size(const SearchSpace& space);

struct SearchResult {
    std::optional<CodeTuple> best;
    Rational L;
    std::uint64_t examined = 0;
    std::uint64_t passed = 0;            // tuples passing the filter
    // AIFV filter only: tuples meeting the AIFV conditions but failing F_0
    std::uint64_t aifv_outside_f0 = 0;
};

// Minimum L over every tuple in the space that passes the filter; ties go to
// the first tuple in canonical order (fewer tables first, then table by table,
// symbol by symbol, codewords shortlex, next-table ascending). The space is
// split by the first codeword of table 0 and the parts may run concurrently.
SearchResult enumerate_min(const SearchSpace& space, const SourceDist& mu);
// One pass over the space for several distributions; one result per distribution.
// Throws EmptySpace if nothing passes the filter.
std::vector<SearchResult> enumerate_min(const SearchSpace& space, std::span<const SourceDist> mus);

struct HuffmanResult {
    std::vector<std::size_t> lengths;
    Rational L;
};

// Repeatedly merges the two least probable nodes; ties go to the node holding
// the lowest symbol index.
HuffmanResult huffman_length(const SourceDist& mu);

struct HuffmanComparison {
    Rational aifv_L;
    Rational huffman_L;
    Rational gap;  // huffman - aifv
    bool aifv_found = false;
    std::string note;
};

HuffmanComparison compare_aifv_huffman(const SourceDist& mu, SearchSpace space);

namespace search_detail {

// The per-tuple predicate used inside the search, exposed for cross-checking
// against the general classifier. Codewords must be at most 7 bits; |F| ≤ 2.
struct Verdict {
    bool ext = false, reg = false, dec2 = false, f0 = false, aifv = false;
};
Verdict fast_verdict(const CodeTuple& F);

}  // namespace search_detail

}  // namespace aifv
