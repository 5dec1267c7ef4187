#pragma once

#include "aifv/core.hpp"
#include "aifv/prefix_sets.hpp"

#include <cstdint>
#include <memory>

namespace aifv {

BitSeq encode(const CodeTuple& F, std::size_t start, std::span<const Symbol> x);

// What is left once the greedy decoder cannot go further.
struct DanglingInfo {
    static constexpr std::size_t max_completions = 16;

    BitSeq tail;          // unconsumed bits
    std::size_t table = 0;
    // every y with f*_table(y) = tail (within the search depth), shortest
    // first, then by symbol order; for an empty tail this starts with λ
    std::vector<SourceSeq> completions;
    bool truncated = false;

    bool resolved() const { return tail.empty() && completions.size() == 1 && completions.front().empty(); }
};

struct DecodeResult {
    SourceSeq symbols;
    // bits read past each emitted codeword before that symbol was determined
    std::vector<std::size_t> delays;
    DanglingInfo dangling;
    // steps where more than one symbol passed the k-bit test (impossible for
    // k-bit delay decodable tuples; the first candidate is taken)
    std::size_t ambiguous_steps = 0;
};

struct DecoderState {
    std::size_t table = 0;
    BitSeq window;
    std::size_t emitted = 0;
};

// Greedy k-bit lookahead decoder. Bits may be fed incrementally; a symbol s is
// emitted once f_i(s) is a prefix of the window and the k bits after it lie in
// P^k_{F,τ_i(s)}. finish() resolves the end of the stream: it emits a symbol
// while every consistent completion of the remaining bits starts with it, and
// reports the rest as DanglingInfo. Single-use; not shareable mid-stream.
class Decoder {
public:
    Decoder(const CodeTuple& F, std::size_t start, std::size_t k);
    Decoder(std::shared_ptr<const PrefixSetTable> T, std::size_t start, std::size_t k);

    void feed(const BitSeq& bits);
    DecodeResult finish();

    DecoderState state() const { return {table_, window_, result_.symbols.size()}; }

private:
    bool step_with_lookahead();
    void emit(Symbol s);
    std::size_t realized_delay(std::size_t i, Symbol s, const BitSeq& after) const;

    std::shared_ptr<const PrefixSetTable> T_;
    std::size_t k_;
    std::size_t table_;
    BitSeq window_;
    DecodeResult result_;
    bool finished_ = false;
};

DecodeResult decode(const CodeTuple& F, std::size_t start, const BitSeq& bits, std::size_t k);

// All y with f*_i(y) = bits and |y| ≤ depth, shortest first then by symbol order,
// at most `cap` of them; `truncated` is set when more exist.
std::vector<SourceSeq> completions(const CodeTuple& F, std::size_t i, const BitSeq& bits, std::size_t depth,
                                   std::size_t cap, bool* truncated = nullptr);

struct RoundtripFailure {
    std::size_t start;
    SourceSeq x;
    std::string reason;
};

struct RoundtripReport {
    std::size_t trials = 0;
    std::size_t max_delay = 0;
    std::vector<RoundtripFailure> failures;
};

RoundtripReport roundtrip_check(const CodeTuple& F, std::size_t k, std::size_t trials, std::size_t max_len,
                                std::uint64_t seed);

}  // namespace aifv
