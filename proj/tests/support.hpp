#pragma once

// Independent oracles for the unit tests. Nothing here calls into the
// prefix-set or decoder machinery under test; everything is enumerated
// straight from the definitions.

#include "aifv/core.hpp"
#include "aifv/goldens.hpp"

#include <functional>
#include <random>

namespace aifv::test {

inline CodeTuple G(std::string_view name) { return goldens::tuple(name); }

inline Symbol sym(char c) { return Symbol{static_cast<std::uint32_t>(c - 'a')}; }

inline SourceDist mu4() {
    return SourceDist(Alphabet::letters(4), {Rational(1, 10), Rational(2, 10), Rational(3, 10), Rational(4, 10)});
}

inline SourceDist uniform(std::size_t sigma) {
    return SourceDist(Alphabet::letters(sigma), std::vector<Rational>(sigma, Rational(1, static_cast<long>(sigma))));
}

inline std::string set_str(const BitSeqSet& s) { return format_set(s); }

// Plain concatenation f*_i(x) and τ*_i(x), written out again on purpose.
inline std::pair<std::string, std::size_t> naive_star(const CodeTuple& F, std::size_t i, const SourceSeq& x) {
    std::string bits;
    for (auto s : x) {
        bits += F.table(i).code[s.id].str();
        i = F.table(i).next[s.id];
    }
    return {bits, i};
}

// Visits every x ∈ S^+ with |x| ≤ max_symbols whose first symbol satisfies
// `first_ok`, pruning once the output reaches `enough` bits.
inline void for_each_sequence(const CodeTuple& F, std::size_t i, std::size_t max_symbols, std::size_t enough,
                              const std::function<bool(Symbol)>& first_ok,
                              const std::function<void(const std::string&, std::size_t, const SourceSeq&)>& visit) {
    SourceSeq x;
    std::function<void(std::size_t, const std::string&)> rec = [&](std::size_t table, const std::string& out) {
        if (x.size() >= max_symbols) return;
        for (std::uint32_t s = 0; s < F.sigma(); ++s) {
            if (x.empty() && !first_ok(Symbol{s})) continue;
            x.push_back(Symbol{s});
            std::string o = out + F.table(table).code[s].str();
            std::size_t t = F.table(table).next[s];
            visit(o, t, x);
            if (o.size() < enough) rec(t, o);
            x.pop_back();
        }
    };
    rec(i, "");
}

// P^k_{F,i}(b) / P̄^k_{F,i}(b) straight from the definition. Reaching any k-bit
// continuation needs at most m symbols per output bit (at most m-1 consecutive
// λ outputs on any path that keeps producing), so |x| ≤ (|b|+k+1)·m suffices.
inline BitSeqSet oracle_p(const CodeTuple& F, std::size_t i, const std::string& b, std::size_t k, bool strict) {
    BitSeqSet out;
    const std::size_t need = b.size() + k;
    const std::size_t bound = (need + 1) * F.size();
    auto first_ok = [&](Symbol s) {
        const std::string& w = F.table(i).code[s.id].str();
        bool ext = w.size() >= b.size() && w.compare(0, b.size(), b) == 0;
        return strict ? ext && w.size() > b.size() : ext;
    };
    for_each_sequence(F, i, bound, need, first_ok, [&](const std::string& o, std::size_t, const SourceSeq&) {
        if (o.size() >= need && o.compare(0, b.size(), b) == 0) out.insert(BitSeq(o.substr(b.size(), k)));
    });
    return out;
}

// All x with |x| ≤ max_symbols and f*_i(x) = bits exactly.
inline std::vector<SourceSeq> oracle_parses(const CodeTuple& F, std::size_t i, const std::string& bits,
                                            std::size_t max_symbols) {
    std::vector<SourceSeq> out;
    if (bits.empty()) out.push_back({});
    SourceSeq x;
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t table, std::size_t pos) {
        if (x.size() >= max_symbols) return;
        for (std::uint32_t s = 0; s < F.sigma(); ++s) {
            const std::string& w = F.table(table).code[s].str();
            if (bits.compare(pos, w.size(), w) != 0 || pos + w.size() > bits.size()) continue;
            x.push_back(Symbol{s});
            if (pos + w.size() == bits.size()) out.push_back(x);
            rec(F.table(table).next[s], pos + w.size());
            x.pop_back();
        }
    };
    rec(i, 0);
    return out;
}

struct RandomTupleOptions {
    std::size_t sigma_min = 2, sigma_max = 3;
    std::size_t m_min = 1, m_max = 3;
    std::size_t max_len = 3;
    double lambda_weight = 0.1;  // chance of a λ codeword
};

inline CodeTuple random_tuple(std::mt19937_64& rng, const RandomTupleOptions& o = {}) {
    std::uniform_int_distribution<std::size_t> sd(o.sigma_min, o.sigma_max), md(o.m_min, o.m_max),
        ld(1, o.max_len);
    std::bernoulli_distribution lam(o.lambda_weight), bit(0.5);
    const std::size_t sigma = sd(rng), m = md(rng);
    std::uniform_int_distribution<std::size_t> td(0, m - 1);
    std::vector<CodeTable> tables(m);
    for (auto& t : tables) {
        for (std::size_t s = 0; s < sigma; ++s) {
            std::string w;
            if (!lam(rng))
                for (std::size_t n = ld(rng); n > 0; --n) w += bit(rng) ? '1' : '0';
            t.code.emplace_back(w);
            t.next.push_back(td(rng));
        }
    }
    return CodeTuple(Alphabet::letters(sigma), std::move(tables));
}

inline std::vector<std::string> all_bits_upto(std::size_t n) {
    std::vector<std::string> v{""};
    for (std::size_t len = 1; len <= n; ++len)
        for (std::size_t x = 0; x < (std::size_t{1} << len); ++x) {
            std::string s;
            for (std::size_t b = len; b-- > 0;) s += ((x >> b) & 1) ? '1' : '0';
            v.push_back(s);
        }
    return v;
}

}  // namespace aifv::test
