#include "aifv/prefix_sets.hpp"

#include <set>
#include <utility>

namespace aifv {

Encoded f_star(const CodeTuple& F, std::size_t i, std::span<const Symbol> x) {
    Encoded e{{}, i};
    for (auto s : x) {
        e.bits += F.f(e.table, s);
        e.table = F.tau(e.table, s);
    }
    return e;
}

std::vector<Symbol> symbols_with_codeword(const CodeTuple& F, std::size_t i, const BitSeq& b) {
    std::vector<Symbol> out;
    for (auto s : symbols(F.sigma()))
        if (F.f(i, s) == b) out.push_back(s);
    return out;
}

PrefixSetTable::PrefixSetTable(CodeTuple F, std::size_t max_k) : F_(std::move(F)), max_k_(max_k) {}

void PrefixSetTable::check_k(std::size_t k) const {
    if (k > max_k_)
        throw Error(ErrorCode::Semantic,
                    "k = " + std::to_string(k) + " exceeds the configured cap " + std::to_string(max_k_));
}

void PrefixSetTable::ensure_levels(std::size_t k) const {
    const std::size_t m = F_.size();
    while (levels_.size() <= k) {
        const std::size_t level = levels_.size();
        std::vector<BitSeqSet> cur(m);
        if (level == 0) {
            for (auto& t : cur) t.insert(BitSeq{});
        } else {
            for (bool changed = true; changed;) {
                changed = false;
                for (std::size_t j = 0; j < m; ++j) {
                    for (auto s : symbols(F_.sigma())) {
                        const BitSeq& w = F_.f(j, s);
                        if (w.size() >= level) {
                            changed |= cur[j].insert(w.prefix(level)).second;
                            continue;
                        }
                        const auto& tail = w.empty() ? cur[F_.tau(j, s)] : levels_[level - w.size()][F_.tau(j, s)];
                        // copy: `tail` may alias cur[j]
                        std::vector<BitSeq> add(tail.begin(), tail.end());
                        for (const auto& c : add) changed |= cur[j].insert(w + c).second;
                    }
                }
            }
        }
        levels_.push_back(std::move(cur));
    }
}

BitSeqSet PrefixSetTable::base(std::size_t i, std::size_t k) const {
    check_k(k);
    std::lock_guard lock(mutex_);
    ensure_levels(k);
    return levels_[k].at(i);
}

BitSeqSet PrefixSetTable::conditional(std::size_t i, const BitSeq& b, std::size_t k, bool strict) const {
    check_k(k);
    std::lock_guard lock(mutex_);
    auto key = std::make_tuple(i, b, k, strict);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    ensure_levels(k);
    BitSeqSet out;
    if (b.empty() && !strict) {
        out = levels_[k].at(i);
    } else {
        for (auto s : symbols(F_.sigma())) {
            const BitSeq& f = F_.f(i, s);
            if (!b.is_prefix_of(f) || (strict && f.size() == b.size())) continue;
            BitSeq w = f.drop(b.size());
            if (w.size() >= k) {
                out.insert(w.prefix(k));
            } else {
                for (const auto& c : levels_[k - w.size()][F_.tau(i, s)]) out.insert(w + c);
            }
        }
    }
    memo_.emplace(std::move(key), out);
    return out;
}

BitSeqSet PrefixSetTable::p_set(std::size_t i, const BitSeq& b, std::size_t k) const {
    return conditional(i, b, k, false);
}

BitSeqSet PrefixSetTable::p_bar_set(std::size_t i, const BitSeq& b, std::size_t k) const {
    return conditional(i, b, k, true);
}

bool PrefixSetTable::p_star_contains(std::size_t i, const BitSeq& b) const {
    // BFS over (table, bits of b matched so far)
    if (b.empty()) return true;
    std::set<std::pair<std::size_t, std::size_t>> seen{{i, 0}};
    std::vector<std::pair<std::size_t, std::size_t>> frontier{{i, 0}};
    while (!frontier.empty()) {
        auto [t, pos] = frontier.back();
        frontier.pop_back();
        BitSeq rest = b.drop(pos);
        for (auto s : symbols(F_.sigma())) {
            const BitSeq& w = F_.f(t, s);
            if (w.size() >= rest.size()) {
                if (rest.is_prefix_of(w)) return true;
            } else if (w.is_prefix_of(rest)) {
                std::pair next{F_.tau(t, s), pos + w.size()};
                if (seen.insert(next).second) frontier.push_back(next);
            }
        }
    }
    return false;
}

BitSeqSet p_set(const CodeTuple& F, std::size_t i, const BitSeq& b, std::size_t k) {
    return PrefixSetTable(F, std::max(k, PrefixSetTable::default_max_k)).p_set(i, b, k);
}

BitSeqSet p_bar_set(const CodeTuple& F, std::size_t i, const BitSeq& b, std::size_t k) {
    return PrefixSetTable(F, std::max(k, PrefixSetTable::default_max_k)).p_bar_set(i, b, k);
}

bool p_star_contains(const CodeTuple& F, std::size_t i, const BitSeq& b) {
    return PrefixSetTable(F).p_star_contains(i, b);
}

}  // namespace aifv
