#include "aifv/search.hpp"

#include "aifv/classes.hpp"
#include "aifv/markov.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <thread>

namespace aifv {

std::string_view to_string(SearchFilter f) { return f == SearchFilter::F0 ? "f0" : "aifv"; }

namespace {

namespace mp = boost::multiprecision;
using i128 = __int128;

// Codeword as (length, value), most significant bit first.
struct CW {
    std::uint8_t len = 0;
    std::uint16_t val = 0;
};

bool is_prefix(CW a, CW b) { return a.len <= b.len && (b.val >> (b.len - a.len)) == a.val; }
bool is_strict_prefix(CW a, CW b) { return a.len < b.len && is_prefix(a, b); }
int bit_at(CW w, int i) { return (w.val >> (w.len - 1 - i)) & 1; }
CW take(CW w, int n) { return {static_cast<std::uint8_t>(n), static_cast<std::uint16_t>(w.val >> (w.len - n))}; }
CW rest_after(CW a, CW b) {
    CW r;
    r.len = static_cast<std::uint8_t>(b.len - a.len);
    r.val = static_cast<std::uint16_t>(b.val & ((1u << r.len) - 1));
    return r;
}
bool operator==(CW a, CW b) { return a.len == b.len && a.val == b.val; }

CW from_bits(const BitSeq& b) {
    if (b.size() > 7) throw Error(ErrorCode::Semantic, "search fast path supports codewords of at most 7 bits");
    CW w;
    w.len = static_cast<std::uint8_t>(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) w.val = static_cast<std::uint16_t>((w.val << 1) | b[i]);
    return w;
}

BitSeq to_bits(CW w) {
    BitSeq b;
    for (int i = 0; i < w.len; ++i) b.push_back(bit_at(w, i));
    return b;
}

// Bit masks: over {0,1} (bit c) for one-bit sets, over two-bit strings
// (bit 2·b0 + b1) for two-bit sets.
constexpr auto prepend_table = [] {
    std::array<std::array<std::uint8_t, 4>, 4> t{};
    for (int head = 0; head < 4; ++head)
        for (int t1 = 0; t1 < 4; ++t1)
            for (int b = 0; b < 2; ++b)
                for (int c = 0; c < 2; ++c)
                    if ((head >> b & 1) && (t1 >> c & 1)) t[head][t1] |= static_cast<std::uint8_t>(1 << (2 * b + c));
    return t;
}();

std::uint8_t first_bits(std::uint8_t t2) { return static_cast<std::uint8_t>(((t2 & 3) ? 1 : 0) | ((t2 & 12) ? 2 : 0)); }

struct Slot {
    CW w;
    std::uint8_t t;
};

struct TableSummary {
    std::uint8_t c1 = 0;       // first bits of non-empty codewords
    std::uint8_t c2 = 0;       // first two bits of codewords with ≥ 2 bits
    std::uint8_t oneb[2]{};    // one-bit codewords, by target table
    std::uint8_t lam = 0;      // targets of λ codewords
    std::uint8_t targets = 0;  // all targets
    bool aifv[2]{};            // AIFV clauses hold with this row as table 0 / table 1
    std::array<std::uint64_t, 4> dec{};  // 2-bit delay conditions of this row, keyed by (T2_0, T2_1)
};

bool dec_row(std::span<const Slot> row, std::uint8_t key) {
    const std::uint8_t t2[2] = {static_cast<std::uint8_t>(key & 15), static_cast<std::uint8_t>(key >> 4)};
    const std::uint8_t t1[2] = {first_bits(t2[0]), first_bits(t2[1])};
    for (std::size_t s = 0; s < row.size(); ++s) {
        std::uint8_t pbar = 0;
        for (const auto& o : row) {
            if (!is_strict_prefix(row[s].w, o.w)) continue;
            CW r = rest_after(row[s].w, o.w);
            if (r.len >= 2) pbar |= static_cast<std::uint8_t>(1 << take(r, 2).val);
            else pbar |= prepend_table[1u << r.val][t1[o.t]];
        }
        if (t2[row[s].t] & pbar) return false;
        for (std::size_t s2 = s + 1; s2 < row.size(); ++s2)
            if (row[s].w == row[s2].w && (t2[row[s].t] & t2[row[s2].t])) return false;
    }
    return true;
}

bool aifv_row(std::span<const Slot> row, int j) {
    auto next_bits = [&](CW b) {
        int mask = 0;
        for (const auto& o : row)
            if (is_strict_prefix(b, o.w)) mask |= 1 << bit_at(o.w, b.len);
        return mask;
    };
    for (std::size_t s = 0; s < row.size(); ++s)
        for (std::size_t s2 = s + 1; s2 < row.size(); ++s2)
            if (row[s].w == row[s2].w) return false;  // (i)
    for (const auto& x : row) {
        CW w0{static_cast<std::uint8_t>(x.w.len + 1), static_cast<std::uint16_t>(x.w.val << 1)};
        if ((next_bits(x.w) & 2) || (next_bits(w0) & 2)) return false;  // (ii)
        for (const auto& y : row)
            if (y.w == w0) return false;  // (iii)
        if (x.t != (next_bits(x.w) ? 1 : 0)) return false;  // (iv)
        if (j == 1 && (x.w.len == 0 || (x.w.len == 1 && x.w.val == 0))) return false;  // (v)
    }
    const CW zero{1, 0};
    if (j == 1 && (next_bits(zero) & 1)) return false;  // (vi)
    for (const auto& x : row)  // (vii)
        for (int n = 0; n < x.w.len; ++n) {
            CW b = take(x.w, n);
            if (std::popcount(static_cast<unsigned>(next_bits(b))) != 1) continue;
            bool ok = j == 1 && b == zero;
            for (const auto& y : row) ok |= is_prefix(y.w, b) && b.len - y.w.len <= 1;
            if (!ok) return false;
        }
    return true;
}

TableSummary summarize(std::span<const Slot> row, std::size_t m) {
    TableSummary S;
    for (const auto& x : row) {
        S.targets |= static_cast<std::uint8_t>(1 << x.t);
        if (x.w.len == 0) S.lam |= static_cast<std::uint8_t>(1 << x.t);
        else S.c1 |= static_cast<std::uint8_t>(1 << bit_at(x.w, 0));
        if (x.w.len == 1) S.oneb[x.t] |= static_cast<std::uint8_t>(1 << x.w.val);
        if (x.w.len >= 2) S.c2 |= static_cast<std::uint8_t>(1 << take(x.w, 2).val);
    }
    const unsigned keys = m == 1 ? 16 : 256;
    for (unsigned key = 0; key < keys; ++key)
        if (dec_row(row, static_cast<std::uint8_t>(key))) S.dec[key >> 6] |= std::uint64_t{1} << (key & 63);
    if (m == 2) {
        S.aifv[0] = aifv_row(row, 0);
        S.aifv[1] = aifv_row(row, 1);
    }
    return S;
}

bool dec_bit(const TableSummary& S, unsigned key) { return (S.dec[key >> 6] >> (key & 63)) & 1; }

struct Eval {
    bool reg = false, ext = false, dec = false;
    bool f0() const { return reg && ext && dec; }
};

inline Eval evaluate(const TableSummary& a) {
    Eval e;
    e.reg = true;
    std::uint8_t t1 = a.c1;  // a λ codeword can only lead back to this table
    e.ext = t1 != 0;
    if (!e.ext) return e;
    std::uint8_t t2 = a.c2 | prepend_table[a.oneb[0]][t1];
    e.dec = dec_bit(a, t2);
    return e;
}

inline Eval evaluate(const TableSummary& a, const TableSummary& b) {
    Eval e;
    e.reg = (b.targets & 1) || (a.targets & 2);
    if (!e.reg) return e;
    std::uint8_t t10 = a.c1, t11 = b.c1;
    for (;;) {
        std::uint8_t n0 = t10 | ((a.lam & 2) ? t11 : 0), n1 = t11 | ((b.lam & 1) ? t10 : 0);
        if (n0 == t10 && n1 == t11) break;
        t10 = n0;
        t11 = n1;
    }
    e.ext = t10 && t11;
    if (!e.ext) return e;
    std::uint8_t t20 = a.c2 | prepend_table[a.oneb[0]][t10] | prepend_table[a.oneb[1]][t11];
    std::uint8_t t21 = b.c2 | prepend_table[b.oneb[0]][t10] | prepend_table[b.oneb[1]][t11];
    for (;;) {
        std::uint8_t n0 = t20 | ((a.lam & 2) ? t21 : 0), n1 = t21 | ((b.lam & 1) ? t20 : 0);
        if (n0 == t20 && n1 == t21) break;
        t20 = n0;
        t21 = n1;
    }
    const unsigned key = t20 | (t21 << 4);
    e.dec = dec_bit(a, key) && dec_bit(b, key);
    return e;
}

std::vector<Slot> row_of(const CodeTuple& F, std::size_t i) {
    std::vector<Slot> row;
    for (auto s : symbols(F.sigma()))
        row.push_back({from_bits(F.f(i, s)), static_cast<std::uint8_t>(F.tau(i, s))});
    return row;
}

// ---- enumeration ----------------------------------------------------------

struct Layout {
    std::size_t m, K, N, sigma, combos;

    Layout(std::size_t m_, std::size_t max_len, std::size_t sigma_)
        : m(m_), K((std::size_t{2} << max_len) - 1), N(K * m_), sigma(sigma_), combos(1) {
        for (std::size_t s = 0; s < sigma; ++s) combos *= N;
    }

    static CW codeword(std::size_t c) {
        int l = std::bit_width(c + 1) - 1;
        return {static_cast<std::uint8_t>(l), static_cast<std::uint16_t>(c + 1 - (std::size_t{1} << l))};
    }

    std::vector<Slot> row(std::size_t combo) const {
        std::vector<Slot> r(sigma);
        for (std::size_t s = sigma; s-- > 0;) {
            std::size_t opt = combo % N;
            combo /= N;
            r[s] = {codeword(opt / m), static_cast<std::uint8_t>(opt % m)};
        }
        return r;
    }
};

// μ scaled to integers over a common denominator.
struct ScaledDist {
    std::int64_t D;
    std::vector<std::int64_t> n;
};

ScaledDist scale(const SourceDist& mu) {
    using Int = decltype(mp::numerator(Rational{}));
    Int D = 1;
    for (const auto& p : mu.probs()) D = mp::lcm(D, mp::denominator(p));
    if (D > 1000000000) throw Error(ErrorCode::Semantic, "distribution denominators too large for the search");
    ScaledDist s{D.convert_to<std::int64_t>(), {}};
    for (const auto& p : mu.probs()) {
        Int n = mp::numerator(p) * (D / mp::denominator(p));
        s.n.push_back(n.convert_to<std::int64_t>());
    }
    return s;
}

struct Best {
    bool found = false;
    std::size_t m = 0, o0 = 0, o1 = 0;
    i128 num = 0, den = 1;

    bool improves(i128 n, i128 d) const { return !found || n * den < num * d; }
};

struct PartResult {
    std::vector<Best> best;
    std::uint64_t examined = 0, passed = 0, violations = 0;
};

struct Prepared {
    Layout layout;
    std::vector<TableSummary> S;
    // per distribution: A = Σ|f|·n, B[t] = Σ_{τ=t} n
    std::vector<std::vector<std::int64_t>> A;
    std::vector<std::vector<std::array<std::int64_t, 2>>> B;
};

Prepared prepare(std::size_t m, const SearchSpace& space, const std::vector<ScaledDist>& dists) {
    Prepared P{Layout(m, space.max_len, space.sigma), {}, {}, {}};
    const auto& Lay = P.layout;
    P.S.resize(Lay.combos);
    P.A.assign(dists.size(), std::vector<std::int64_t>(Lay.combos));
    P.B.assign(dists.size(), std::vector<std::array<std::int64_t, 2>>(Lay.combos));
    for (std::size_t c = 0; c < Lay.combos; ++c) {
        auto row = Lay.row(c);
        P.S[c] = summarize(row, m);
        for (std::size_t d = 0; d < dists.size(); ++d) {
            std::int64_t a = 0;
            std::array<std::int64_t, 2> b{0, 0};
            for (std::size_t s = 0; s < row.size(); ++s) {
                a += row[s].w.len * dists[d].n[s];
                b[row[s].t] += dists[d].n[s];
            }
            P.A[d][c] = a;
            P.B[d][c] = b;
        }
    }
    return P;
}

void run_partition(const Prepared& P, const std::vector<ScaledDist>& dists, SearchFilter filter, std::size_t first,
                   std::size_t last, PartResult& out) {
    const auto& Lay = P.layout;
    out.best.assign(dists.size(), Best{});
    auto consider = [&](std::size_t o0, std::size_t o1) {
        for (std::size_t d = 0; d < dists.size(); ++d) {
            i128 num, den;
            if (Lay.m == 1) {
                num = P.A[d][o0];
                den = dists[d].D;
            } else {
                const i128 b0 = P.B[d][o0][1], b1 = P.B[d][o1][0];
                num = b1 * P.A[d][o0] + b0 * P.A[d][o1];
                den = static_cast<i128>(dists[d].D) * (b0 + b1);
            }
            Best& b = out.best[d];
            if (b.improves(num, den)) b = {true, Lay.m, o0, o1, num, den};
        }
    };
    for (std::size_t o0 = first; o0 < last; ++o0) {
        const TableSummary& a = P.S[o0];
        if (Lay.m == 1) {
            ++out.examined;
            if (filter == SearchFilter::Aifv) continue;
            if (evaluate(a).f0()) {
                ++out.passed;
                consider(o0, 0);
            }
            continue;
        }
        out.examined += Lay.combos;
        if (filter == SearchFilter::Aifv) {
            if (!a.aifv[0]) continue;
            for (std::size_t o1 = 0; o1 < Lay.combos; ++o1) {
                const TableSummary& b = P.S[o1];
                if (!b.aifv[1]) continue;
                if (!evaluate(a, b).f0()) {
                    ++out.violations;
                    continue;
                }
                ++out.passed;
                consider(o0, o1);
            }
        } else {
            for (std::size_t o1 = 0; o1 < Lay.combos; ++o1) {
                if (!evaluate(a, P.S[o1]).f0()) continue;
                ++out.passed;
                consider(o0, o1);
            }
        }
    }
}

Rational to_rational(i128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
    mp::cpp_int r = static_cast<std::uint64_t>(u >> 64);
    r <<= 64;
    r += static_cast<std::uint64_t>(u);
    return Rational(neg ? mp::cpp_int(-r) : r);
}

CodeTuple build(const Layout& Lay, const Alphabet& alphabet, std::size_t o0, std::size_t o1) {
    std::vector<CodeTable> tables;
    for (std::size_t i = 0; i < Lay.m; ++i) {
        CodeTable t;
        for (const auto& slot : Lay.row(i == 0 ? o0 : o1)) {
            t.code.push_back(to_bits(slot.w));
            t.next.push_back(slot.t);
        }
        tables.push_back(std::move(t));
    }
    return CodeTuple(alphabet, std::move(tables));
}

void check_space(const SearchSpace& space) {
    if (space.sigma < 2) throw Error(ErrorCode::Semantic, "search needs sigma >= 2");
    if (space.max_tables < 1 || space.max_tables > 2) throw Error(ErrorCode::Semantic, "search supports 1 or 2 tables");
    if (!space.allow_large && (space.sigma > 3 || space.max_len > 4))
        throw Error(ErrorCode::Semantic, "space exceeds sigma <= 3, max_len <= 4; set allow_large to proceed");
    if (space.max_len > 6) throw Error(ErrorCode::Semantic, "search supports codewords of at most 6 bits");
    if (Layout(space.max_tables, space.max_len, space.sigma).combos > 20000000)
        throw Error(ErrorCode::Semantic, "space too large to enumerate");
}

}  // namespace

std::uint64_t expected_space_size(const SearchSpace& space) {
    std::uint64_t total = 0;
    const std::uint64_t K = (std::uint64_t{2} << space.max_len) - 1;
    for (std::uint64_t m = 1; m <= space.max_tables; ++m) {
        std::uint64_t t = 1;
        for (std::uint64_t e = 0; e < space.sigma * m; ++e) t *= K * m;
        total += t;
    }
    return total;
}

std::vector<SearchResult> enumerate_min(const SearchSpace& space, std::span<const SourceDist> mus) {
    check_space(space);
    if (mus.empty()) return {};
    const Alphabet& alphabet = mus.front().alphabet();
    std::vector<ScaledDist> dists;
    for (const auto& mu : mus) {
        if (mu.alphabet() != alphabet) throw Error(ErrorCode::AlphabetMismatch, "distributions use different alphabets");
        if (mu.size() != space.sigma) throw Error(ErrorCode::AlphabetMismatch, "distribution size differs from sigma");
        dists.push_back(scale(mu));
    }

    std::vector<Prepared> prepared;
    for (std::size_t m = 1; m <= space.max_tables; ++m) prepared.push_back(prepare(m, space, dists));

    // work items in canonical order: (tables, first codeword of table 0)
    struct Item {
        std::size_t p, first, last;
    };
    std::vector<Item> items;
    for (std::size_t p = 0; p < prepared.size(); ++p) {
        const auto& Lay = prepared[p].layout;
        const std::size_t span = Lay.combos / Lay.K;
        for (std::size_t c = 0; c < Lay.K; ++c) items.push_back({p, c * span, (c + 1) * span});
    }
    std::vector<PartResult> parts(items.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t n; (n = next.fetch_add(1)) < items.size();)
            run_partition(prepared[items[n].p], dists, space.filter, items[n].first, items[n].last, parts[n]);
    };
    unsigned threads = space.threads ? space.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, items.size()));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    std::vector<SearchResult> results(dists.size());
    std::vector<Best> best(dists.size());
    std::uint64_t examined = 0, passed = 0, violations = 0;
    for (const auto& part : parts) {
        examined += part.examined;
        passed += part.passed;
        violations += part.violations;
        for (std::size_t d = 0; d < dists.size(); ++d)
            if (part.best[d].found && best[d].improves(part.best[d].num, part.best[d].den)) best[d] = part.best[d];
    }
    for (std::size_t d = 0; d < dists.size(); ++d) {
        auto& r = results[d];
        r.examined = examined;
        r.passed = passed;
        r.aifv_outside_f0 = violations;
        if (!best[d].found)
            throw Error(ErrorCode::EmptySpace, "no tuple in the space passes the " + std::string(to_string(space.filter)) +
                                                   " filter");
        CodeTuple F = build(prepared[best[d].m - 1].layout, alphabet, best[d].o0, best[d].o1);
        r.L = to_rational(best[d].num) / to_rational(best[d].den);
        // re-verify through the general machinery
        auto cls = classify(F, mus[d]);
        bool ok = space.filter == SearchFilter::F0 ? cls.in(CodeClass::F0) : cls.in(CodeClass::Aifv);
        if (!ok || average_length(F, mus[d]) != r.L)
            throw Error(ErrorCode::Internal, "search winner failed re-verification:\n" + serialize_code_tuple(F));
        r.best = std::move(F);
    }
    return results;
}

SearchResult enumerate_min(const SearchSpace& space, const SourceDist& mu) {
    return std::move(enumerate_min(space, std::span<const SourceDist>(&mu, 1)).front());
}

HuffmanResult huffman_length(const SourceDist& mu) {
    struct Node {
        Rational p;
        std::size_t low;  // lowest symbol index below this node
        std::vector<std::size_t> leaves;
    };
    std::vector<Node> nodes;
    for (std::size_t s = 0; s < mu.size(); ++s) nodes.push_back({mu.probs()[s], s, {s}});
    HuffmanResult r;
    r.lengths.assign(mu.size(), 0);
    auto before = [](const Node& a, const Node& b) { return a.p < b.p || (a.p == b.p && a.low < b.low); };
    while (nodes.size() > 1) {
        std::sort(nodes.begin(), nodes.end(), before);
        Node merged{nodes[0].p + nodes[1].p, std::min(nodes[0].low, nodes[1].low), nodes[0].leaves};
        merged.leaves.insert(merged.leaves.end(), nodes[1].leaves.begin(), nodes[1].leaves.end());
        for (auto s : merged.leaves) ++r.lengths[s];
        nodes.erase(nodes.begin(), nodes.begin() + 2);
        nodes.push_back(std::move(merged));
    }
    r.L = 0;
    for (std::size_t s = 0; s < mu.size(); ++s) r.L += Rational(static_cast<long long>(r.lengths[s])) * mu.probs()[s];
    return r;
}

HuffmanComparison compare_aifv_huffman(const SourceDist& mu, SearchSpace space) {
    space.filter = SearchFilter::Aifv;
    HuffmanComparison c;
    c.huffman_L = huffman_length(mu).L;
    try {
        auto res = enumerate_min(space, mu);
        c.aifv_found = true;
        c.aifv_L = res.L;
        c.gap = c.huffman_L - c.aifv_L;
        if (c.aifv_L > c.huffman_L)
            c.note = "bounds admit no AIFV tuple as good as the Huffman code (max_len too small)";
    } catch (const Error& e) {
        if (e.code() != ErrorCode::EmptySpace) throw;
        c.note = "no AIFV tuple within the bounds";
    }
    return c;
}

namespace search_detail {

Verdict fast_verdict(const CodeTuple& F) {
    if (F.size() > 2) throw Error(ErrorCode::Semantic, "fast path handles at most two tables");
    Verdict v;
    auto r0 = row_of(F, 0);
    auto s0 = summarize(r0, F.size());
    Eval e;
    if (F.size() == 1) {
        e = evaluate(s0);
    } else {
        auto r1 = row_of(F, 1);
        auto s1 = summarize(r1, 2);
        e = evaluate(s0, s1);
        // evaluate() stops early; fill in the remaining flags for reporting
        Eval full = e;
        if (!e.reg) {
            TableSummary a = s0, b = s1;
            a.targets = 3;  // force the regularity gate open to reach ext/dec
            full = evaluate(a, b);
            full.reg = false;
        }
        e = full;
        v.aifv = s0.aifv[0] && s1.aifv[1];
    }
    v.reg = e.reg;
    v.ext = e.ext;
    v.dec2 = e.ext && e.dec;
    v.f0 = e.f0();
    return v;
}

}  // namespace search_detail

}  // namespace aifv
