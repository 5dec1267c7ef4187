#include "support.hpp"

#include "aifv/classes.hpp"
#include "aifv/markov.hpp"
#include "aifv/search.hpp"

#include <doctest.h>

using namespace aifv;
using namespace aifv::test;

namespace {

SourceDist dist2(long p, long q) {
    return SourceDist(Alphabet::letters(2), {Rational(p, q), Rational(q - p, q)});
}

// Every tuple of the space, in canonical order, through the general classifier.
template <class Fn>
void for_each_tuple(std::size_t sigma, std::size_t max_tables, std::size_t max_len, Fn&& fn) {
    auto words = all_bits_upto(max_len);
    std::sort(words.begin(), words.end(), [](const std::string& a, const std::string& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    for (std::size_t m = 1; m <= max_tables; ++m) {
        const std::size_t K = words.size() * m, slots = sigma * m;
        std::size_t total = 1;
        for (std::size_t n = 0; n < slots; ++n) total *= K;
        for (std::size_t n = 0; n < total; ++n) {
            // most significant slot first, so n runs in canonical order
            std::vector<std::size_t> digit(slots);
            std::size_t r = n;
            for (std::size_t q = slots; q-- > 0;) {
                digit[q] = r % K;
                r /= K;
            }
            std::vector<CodeTable> t(m);
            for (std::size_t q = 0; q < slots; ++q) {
                t[q / sigma].code.emplace_back(words[digit[q] / m]);
                t[q / sigma].next.push_back(digit[q] % m);
            }
            fn(CodeTuple(Alphabet::letters(sigma), std::move(t)));
        }
    }
}

}  // namespace

TEST_CASE("closed-form size of the space") {
    CHECK(expected_space_size({.sigma = 2, .max_tables = 1, .max_len = 2}) == 49);
    CHECK(expected_space_size({.sigma = 2, .max_tables = 2, .max_len = 3}) == 225 + 810000);
    CHECK(expected_space_size({.sigma = 3, .max_tables = 2, .max_len = 3}) == 3375 + 729000000);
    auto r = enumerate_min({.sigma = 2, .max_tables = 2, .max_len = 2}, dist2(1, 2));
    CHECK(r.examined == expected_space_size({.sigma = 2, .max_tables = 2, .max_len = 2}));
}

TEST_CASE("unit-length prefix code is optimal for a fair coin with one table") {
    auto r = enumerate_min({.sigma = 2, .max_tables = 1, .max_len = 2}, dist2(1, 2));
    REQUIRE(r.best);
    CHECK(r.L == 1);
    CHECK(r.best->f(0, Symbol{0}) == "0"_b);
    CHECK(r.best->f(0, Symbol{1}) == "1"_b);
}

TEST_CASE("the fast evaluator agrees with the general classifier on every small tuple") {
    std::size_t n = 0;
    for_each_tuple(2, 2, 2, [&](const CodeTuple& F) {
        auto rep = classify(F);
        auto v = search_detail::fast_verdict(F);
        CAPTURE(serialize_code_tuple(F));
        REQUIRE(v.ext == rep.in(CodeClass::Ext));
        REQUIRE(v.reg == rep.in(CodeClass::Reg));
        REQUIRE(v.dec2 == (rep.in(CodeClass::Ext) && rep.in(CodeClass::Dec2)));
        REQUIRE(v.f0 == rep.in(CodeClass::F0));
        REQUIRE(v.aifv == rep.in(CodeClass::Aifv));
        ++n;
    });
    CHECK(n == 49 + 38416);

    std::mt19937_64 rng(123);
    for (int t = 0; t < 3000; ++t) {
        auto F = random_tuple(rng, {.sigma_min = 2, .sigma_max = 4, .m_min = 1, .m_max = 2, .max_len = 4,
                                    .lambda_weight = 0.1});
        auto rep = classify(F);
        auto v = search_detail::fast_verdict(F);
        CAPTURE(serialize_code_tuple(F));
        REQUIRE(v.f0 == rep.in(CodeClass::F0));
        REQUIRE(v.aifv == rep.in(CodeClass::Aifv));
    }
}

TEST_CASE("search minimum equals an exhaustive scan through the general machinery") {
    const std::vector<SourceDist> mus = {dist2(1, 2), dist2(3, 4), dist2(9, 10), dist2(2, 3)};
    for (auto filter : {SearchFilter::F0, SearchFilter::Aifv}) {
        std::vector<std::optional<Rational>> best(mus.size());
        std::vector<std::optional<CodeTuple>> arg(mus.size());
        for_each_tuple(2, 2, 2, [&](const CodeTuple& F) {
            auto rep = classify(F);
            if (!rep.in(filter == SearchFilter::F0 ? CodeClass::F0 : CodeClass::Aifv)) return;
            for (std::size_t d = 0; d < mus.size(); ++d) {
                auto L = average_length(F, mus[d]);
                if (!best[d] || L < *best[d]) {
                    best[d] = L;
                    arg[d] = F;
                }
            }
        });
        auto rs = enumerate_min({.sigma = 2, .max_tables = 2, .max_len = 2, .filter = filter}, mus);
        for (std::size_t d = 0; d < mus.size(); ++d) {
            CAPTURE(to_string(filter));
            CAPTURE(d);
            REQUIRE(best[d]);
            CHECK(rs[d].L == *best[d]);
            CHECK(*rs[d].best == *arg[d]);  // same tie-break
        }
    }
}

TEST_CASE("several distributions in one pass match separate runs; threads do not change the answer") {
    const std::vector<SourceDist> mus = {dist2(1, 2), dist2(3, 4), dist2(9, 10)};
    SearchSpace sp{.sigma = 2, .max_tables = 2, .max_len = 3, .filter = SearchFilter::F0};
    auto joint = enumerate_min(sp, mus);
    sp.threads = 4;
    for (std::size_t d = 0; d < mus.size(); ++d) {
        auto single = enumerate_min(sp, mus[d]);
        CHECK(single.L == joint[d].L);
        CHECK(*single.best == *joint[d].best);
        CHECK(single.examined == joint[d].examined);
        CHECK(single.passed == joint[d].passed);
    }
}

TEST_CASE("skewed binary source") {
    SearchSpace sp{.sigma = 2, .max_tables = 2, .max_len = 3, .filter = SearchFilter::F0};
    auto r = enumerate_min(sp, dist2(3, 4));
    CHECK(r.L <= 1);
    // by hand: table 0 {a: λ→1, b: 00→0}, table 1 {a: 1→0, b: 01→0};
    // π = (4/7, 3/7), L_0 = 1/2, L_1 = 5/4, so L = 23/28 (entropy ≈ 0.811)
    CHECK(r.L == Rational(23, 28));
    auto hand = parse_code_tuple("alphabet a b\ntables 2\ntable 0\na - 1\nb 00 0\ntable 1\na 1 0\nb 01 0\n");
    CHECK(average_length(hand, dist2(3, 4)) == Rational(23, 28));
    CHECK(average_length(*r.best, dist2(3, 4)) == r.L);
    CHECK(classify(*r.best).in(CodeClass::F0));
}

TEST_CASE("AIFV and F_0 minima coincide on small binary spaces") {
    const std::vector<SourceDist> mus = {dist2(1, 2), dist2(3, 5), dist2(3, 4), dist2(9, 10), dist2(19, 20)};
    auto f0 = enumerate_min({.sigma = 2, .max_tables = 2, .max_len = 3, .filter = SearchFilter::F0}, mus);
    auto av = enumerate_min({.sigma = 2, .max_tables = 2, .max_len = 3, .filter = SearchFilter::Aifv}, mus);
    for (std::size_t d = 0; d < mus.size(); ++d) {
        CHECK(f0[d].L == av[d].L);
        CHECK(classify(*av[d].best).in(CodeClass::Aifv));
    }
    CHECK(av.front().aifv_outside_f0 == 0);
}

TEST_CASE("limits and empty spaces") {
    CHECK_THROWS_AS(enumerate_min({.sigma = 4, .max_tables = 2, .max_len = 3}, uniform(4)), Error);
    CHECK_THROWS_AS(enumerate_min({.sigma = 2, .max_tables = 3, .max_len = 2}, uniform(2)), Error);
    CHECK_THROWS_AS(enumerate_min({.sigma = 2, .max_tables = 2, .max_len = 5}, uniform(2)), Error);
    CHECK_THROWS_AS(enumerate_min({.sigma = 3, .max_tables = 2, .max_len = 2}, uniform(2)), Error);
    // only λ codewords: nothing is extendable
    CHECK_THROWS_AS(enumerate_min({.sigma = 2, .max_tables = 2, .max_len = 0}, uniform(2)), Error);
    // AIFV needs two tables
    CHECK_THROWS_AS(enumerate_min({.sigma = 2, .max_tables = 1, .max_len = 3, .filter = SearchFilter::Aifv}, uniform(2)),
                    Error);
}

TEST_CASE("Huffman baseline") {
    auto h = huffman_length(mu4());
    // merges by hand: .1+.2 → .3, .3+.3 → .6, .6+.4 → 1
    CHECK(h.lengths == std::vector<std::size_t>{3, 3, 2, 1});
    CHECK(h.L == Rational(1, 10) * 3 + Rational(2, 10) * 3 + Rational(3, 10) * 2 + Rational(4, 10) * 1);
    CHECK(h.L == Rational(19, 10));

    auto two = huffman_length(uniform(2));
    CHECK(two.lengths == std::vector<std::size_t>{1, 1});
    CHECK(two.L == 1);
    auto four = huffman_length(uniform(4));
    CHECK(four.lengths == std::vector<std::size_t>{2, 2, 2, 2});
    CHECK(four.L == 2);
    // Kraft equality holds
    std::mt19937_64 rng(9);
    for (int t = 0; t < 50; ++t) {
        std::uniform_int_distribution<long> w(1, 20);
        std::vector<long> raw(2 + t % 6);
        long sum = 0;
        for (auto& x : raw) sum += x = w(rng);
        std::vector<Rational> p;
        for (auto x : raw) p.emplace_back(x, sum);
        auto r = huffman_length(SourceDist(Alphabet::letters(raw.size()), p));
        Rational kraft(0);
        for (auto l : r.lengths) kraft += Rational(1, 1L << l);
        CHECK(kraft == 1);
    }
}

TEST_CASE("AIFV against Huffman") {
    SearchSpace sp{.sigma = 2, .max_tables = 2, .max_len = 3, .filter = SearchFilter::Aifv};
    auto c = compare_aifv_huffman(dist2(9, 10), sp);
    CHECK(c.aifv_found);
    CHECK(c.huffman_L == 1);
    CHECK(c.aifv_L <= c.huffman_L);
    CHECK(c.gap == c.huffman_L - c.aifv_L);
    CHECK(c.aifv_L < 1);

    auto tiny = compare_aifv_huffman(dist2(1, 2), {.sigma = 2, .max_tables = 2, .max_len = 1});
    CHECK(tiny.huffman_L == 1);
    if (tiny.aifv_found) CHECK(tiny.aifv_L >= 0);
}
