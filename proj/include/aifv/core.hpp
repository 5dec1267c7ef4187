#pragma once

#include "aifv/bitseq.hpp"
#include "aifv/error.hpp"
#include "aifv/rational.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace aifv {

struct Symbol {
    std::uint32_t id = 0;
    friend auto operator<=>(const Symbol&, const Symbol&) = default;
};

using SourceSeq = std::vector<Symbol>;

// Ordered source alphabet; ids follow declaration order.
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> names);
    // "a", "b", ... (σ ≤ 26)
    static Alphabet letters(std::size_t sigma);

    std::size_t size() const noexcept { return names_.size(); }
    const std::string& name(Symbol s) const { return names_.at(s.id); }
    std::optional<Symbol> find(std::string_view name) const;
    const std::vector<std::string>& names() const noexcept { return names_; }

    friend bool operator==(const Alphabet&, const Alphabet&) = default;

private:
    std::vector<std::string> names_;
};

// "badb" for single-character names, "a b c" otherwise; λ is "-".
std::string format_seq(const Alphabet& a, std::span<const Symbol> x);
SourceSeq parse_seq(const Alphabet& a, std::string_view text);

// μ: strictly positive exact probabilities summing to 1.
class SourceDist {
public:
    SourceDist(Alphabet alphabet, std::vector<Rational> probs);
    // Each entry is snapped to the nearest rational with denominator ≤ 10^6;
    // the snapped values must then sum to exactly 1.
    static SourceDist from_doubles(Alphabet alphabet, const std::vector<double>& probs);

    const Alphabet& alphabet() const noexcept { return alphabet_; }
    std::size_t size() const noexcept { return probs_.size(); }
    const Rational& operator()(Symbol s) const { return probs_.at(s.id); }
    const std::vector<Rational>& probs() const noexcept { return probs_; }

private:
    Alphabet alphabet_;
    std::vector<Rational> probs_;
};

struct CodeTable {
    std::vector<BitSeq> code;        // f_i(s)
    std::vector<std::size_t> next;   // τ_i(s)
    friend bool operator==(const CodeTable&, const CodeTable&) = default;
};

// F(f, τ): m code tables over a common alphabet.
class CodeTuple {
public:
    CodeTuple(Alphabet alphabet, std::vector<CodeTable> tables);

    const Alphabet& alphabet() const noexcept { return alphabet_; }
    std::size_t size() const noexcept { return tables_.size(); }
    std::size_t sigma() const noexcept { return alphabet_.size(); }
    const CodeTable& table(std::size_t i) const { return tables_.at(i); }
    const std::vector<CodeTable>& tables() const noexcept { return tables_; }

    const BitSeq& f(std::size_t i, Symbol s) const { return tables_[i].code[s.id]; }
    std::size_t tau(std::size_t i, Symbol s) const { return tables_[i].next[s.id]; }
    std::size_t max_codeword_length() const;

    friend bool operator==(const CodeTuple&, const CodeTuple&) = default;

private:
    Alphabet alphabet_;
    std::vector<CodeTable> tables_;
};

// Symbols 0..σ-1 for range-for over an alphabet.
inline std::vector<Symbol> symbols(std::size_t sigma) {
    std::vector<Symbol> v(sigma);
    for (std::size_t s = 0; s < sigma; ++s) v[s].id = static_cast<std::uint32_t>(s);
    return v;
}

CodeTuple parse_code_tuple(std::string_view text);
std::string serialize_code_tuple(const CodeTuple& F);

// Alphabet taken from line order.
SourceDist parse_distribution(std::string_view text);
// Rows may appear in any order but must cover exactly `alphabet`.
SourceDist parse_distribution(std::string_view text, const Alphabet& alphabet);
std::string serialize_distribution(const SourceDist& mu);

void require_same_alphabet(const CodeTuple& F, const SourceDist& mu);

}  // namespace aifv
