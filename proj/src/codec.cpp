#include "aifv/codec.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace aifv {

BitSeq encode(const CodeTuple& F, std::size_t start, std::span<const Symbol> x) {
    if (start >= F.size()) throw Error(ErrorCode::Semantic, "start table out of range");
    BitSeq out;
    std::size_t i = start;
    for (auto s : x) {
        out += F.f(i, s);
        i = F.tau(i, s);
    }
    return out;
}

namespace {

// reach[r][t][pos]: from table t with `pos` bits of w consumed, some source
// sequence of exactly r symbols consumes the rest of w exactly.
class ExactReach {
public:
    ExactReach(const CodeTuple& F, const BitSeq& w, std::size_t depth)
        : F_(F), w_(w), n_(w.size()), m_(F.size()),
          reach_(depth + 1, std::vector<char>(F.size() * (w.size() + 1), 0)) {
        for (std::size_t t = 0; t < m_; ++t) at(0, t, n_) = 1;
        for (std::size_t r = 1; r <= depth; ++r)
            for (std::size_t t = 0; t < m_; ++t)
                for (std::size_t pos = 0; pos <= n_; ++pos)
                    for (auto s : symbols(F.sigma()))
                        if (fits(t, pos, s) && at(r - 1, F.tau(t, s), pos + F.f(t, s).size())) {
                            at(r, t, pos) = 1;
                            break;
                        }
    }

    std::size_t depth() const { return reach_.size() - 1; }

    bool fits(std::size_t t, std::size_t pos, Symbol s) const {
        const BitSeq& f = F_.f(t, s);
        if (pos + f.size() > n_) return false;
        for (std::size_t b = 0; b < f.size(); ++b)
            if (f[b] != w_[pos + b]) return false;
        return true;
    }

    bool can(std::size_t r, std::size_t t, std::size_t pos) const { return reach_[r][t * (n_ + 1) + pos]; }

    // some y starting with s, |y| ≤ depth, consumes w exactly
    bool starts(std::size_t i, Symbol s) const {
        if (!fits(i, 0, s)) return false;
        for (std::size_t r = 0; r < depth(); ++r)
            if (can(r, F_.tau(i, s), F_.f(i, s).size())) return true;
        return false;
    }

    void collect(std::size_t i, std::size_t cap, std::vector<SourceSeq>& out, bool& more) const {
        SourceSeq y;
        for (std::size_t len = 0; len <= depth() && !more; ++len)
            if (can(len, i, 0)) walk(i, 0, len, y, cap, out, more);
    }

private:
    char& at(std::size_t r, std::size_t t, std::size_t pos) { return reach_[r][t * (n_ + 1) + pos]; }

    void walk(std::size_t t, std::size_t pos, std::size_t left, SourceSeq& y, std::size_t cap,
              std::vector<SourceSeq>& out, bool& more) const {
        if (more) return;
        if (left == 0) {
            if (out.size() == cap) more = true;
            else out.push_back(y);
            return;
        }
        for (auto s : symbols(F_.sigma())) {
            if (!fits(t, pos, s)) continue;
            std::size_t np = pos + F_.f(t, s).size(), nt = F_.tau(t, s);
            if (!can(left - 1, nt, np)) continue;
            y.push_back(s);
            walk(nt, np, left - 1, y, cap, out, more);
            y.pop_back();
            if (more) return;
        }
    }

    const CodeTuple& F_;
    const BitSeq& w_;
    std::size_t n_, m_;
    std::vector<std::vector<char>> reach_;
};

std::size_t tail_depth(const CodeTuple& F, std::size_t k, std::size_t tail_bits) {
    return std::max(F.size() * (k + 1), F.size() * (tail_bits + 1));
}

}  // namespace

std::vector<SourceSeq> completions(const CodeTuple& F, std::size_t i, const BitSeq& bits, std::size_t depth,
                                   std::size_t cap, bool* truncated) {
    ExactReach reach(F, bits, depth);
    std::vector<SourceSeq> out;
    bool more = false;
    reach.collect(i, cap, out, more);
    if (truncated) *truncated = more;
    return out;
}

Decoder::Decoder(const CodeTuple& F, std::size_t start, std::size_t k)
    : Decoder(std::make_shared<PrefixSetTable>(F, std::max(k, PrefixSetTable::default_max_k)), start, k) {}

Decoder::Decoder(std::shared_ptr<const PrefixSetTable> T, std::size_t start, std::size_t k)
    : T_(std::move(T)), k_(k), table_(start) {
    if (start >= T_->tuple().size()) throw Error(ErrorCode::Semantic, "start table out of range");
}

std::size_t Decoder::realized_delay(std::size_t i, Symbol s, const BitSeq& after) const {
    const CodeTuple& F = T_->tuple();
    const std::size_t avail = std::min(after.size(), k_);
    for (std::size_t j = 0; j <= avail; ++j) {
        const BitSeq v = F.f(i, s) + after.prefix(j);
        bool unique = true;
        for (auto t : symbols(F.sigma())) {
            if (t == s) continue;
            const BitSeq& w = F.f(i, t);
            if ((w.is_prefix_of(v) && T_->p_star_contains(F.tau(i, t), v.drop(w.size()))) || v.is_strict_prefix_of(w)) {
                unique = false;
                break;
            }
        }
        if (unique) return j;
    }
    return after.size() > k_ ? k_ + 1 : avail;
}

void Decoder::emit(Symbol s) {
    const CodeTuple& F = T_->tuple();
    const std::size_t len = F.f(table_, s).size();
    result_.delays.push_back(realized_delay(table_, s, window_.drop(len)));
    result_.symbols.push_back(s);
    window_ = window_.drop(len);
    table_ = F.tau(table_, s);
}

bool Decoder::step_with_lookahead() {
    const CodeTuple& F = T_->tuple();
    std::optional<Symbol> pick;
    std::size_t count = 0;
    for (auto s : symbols(F.sigma())) {
        const BitSeq& f = F.f(table_, s);
        if (window_.size() < f.size() + k_ || !f.is_prefix_of(window_)) continue;
        if (!T_->base(F.tau(table_, s), k_).count(window_.drop(f.size()).prefix(k_))) continue;
        if (!pick) pick = s;
        ++count;
    }
    if (!pick) return false;
    if (count > 1) ++result_.ambiguous_steps;
    emit(*pick);
    return true;
}

void Decoder::feed(const BitSeq& bits) {
    if (finished_) throw Error(ErrorCode::Semantic, "decoder already finished");
    window_ += bits;
    while (step_with_lookahead()) {
    }
    // a genuine stream always lets its next symbol pass once this many bits are buffered
    if (window_.size() > T_->tuple().max_codeword_length() + k_)
        throw Error(ErrorCode::NoConsistentCompletion,
                    "no symbol of table " + std::to_string(table_) + " fits the buffered bits " + window_.token());
}

DecodeResult Decoder::finish() {
    if (finished_) throw Error(ErrorCode::Semantic, "decoder already finished");
    finished_ = true;
    const CodeTuple& F = T_->tuple();
    for (;;) {
        if (step_with_lookahead()) continue;
        ExactReach reach(F, window_, tail_depth(F, k_, window_.size()));
        if (!window_.empty()) {
            std::vector<Symbol> firsts;
            for (auto s : symbols(F.sigma()))
                if (reach.starts(table_, s)) firsts.push_back(s);
            if (firsts.empty())
                throw Error(ErrorCode::NoConsistentCompletion,
                            "bits " + window_.token() + " cannot be produced from table " + std::to_string(table_));
            if (firsts.size() == 1) {
                emit(firsts.front());
                continue;
            }
        }
        DanglingInfo& d = result_.dangling;
        d.tail = window_;
        d.table = table_;
        reach.collect(table_, DanglingInfo::max_completions, d.completions, d.truncated);
        return result_;
    }
}

DecodeResult decode(const CodeTuple& F, std::size_t start, const BitSeq& bits, std::size_t k) {
    Decoder dec(F, start, k);
    dec.feed(bits);
    return dec.finish();
}

RoundtripReport roundtrip_check(const CodeTuple& F, std::size_t k, std::size_t trials, std::size_t max_len,
                                std::uint64_t seed) {
    auto T = std::make_shared<const PrefixSetTable>(F, std::max(k, PrefixSetTable::default_max_k));
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick_len(0, max_len), pick_sym(0, F.sigma() - 1),
        pick_table(0, F.size() - 1);
    RoundtripReport rep;
    rep.trials = trials;
    for (std::size_t t = 0; t < trials; ++t) {
        const std::size_t start = pick_table(rng);
        SourceSeq x(pick_len(rng));
        for (auto& s : x) s.id = static_cast<std::uint32_t>(pick_sym(rng));
        auto fail = [&](std::string why) { rep.failures.push_back({start, x, std::move(why)}); };
        try {
            Decoder dec(T, start, k);
            dec.feed(encode(F, start, x));
            auto res = dec.finish();
            std::size_t worst = 0;
            for (auto d : res.delays) worst = std::max(worst, d);
            rep.max_delay = std::max(rep.max_delay, worst);
            const auto& got = res.symbols;
            if (got.size() > x.size() || !std::equal(got.begin(), got.end(), x.begin())) {
                fail("decoded symbols are not a prefix of the input");
                continue;
            }
            SourceSeq rest(x.begin() + static_cast<std::ptrdiff_t>(got.size()), x.end());
            const auto& c = res.dangling.completions;
            bool listed = std::find(c.begin(), c.end(), rest) != c.end();
            if (!listed && res.dangling.truncated) {
                auto e = f_star(F, res.dangling.table, rest);
                listed = e.bits == res.dangling.tail;
            }
            if (!listed) fail("undecoded suffix is not among the tail completions");
            else if (res.ambiguous_steps) fail("more than one symbol passed the lookahead test");
            else if (worst > k) fail("decoding delay exceeded k");
        } catch (const Error& e) {
            fail(e.what());
        }
    }
    return rep;
}

}  // namespace aifv
