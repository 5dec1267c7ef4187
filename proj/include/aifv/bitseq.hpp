#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <set>
#include <string>
#include <string_view>

namespace aifv {

// Finite sequence over {0,1}. The empty sequence is λ.
// Ordering is shortlex: shorter first, then lexicographic.
class BitSeq {
public:
    BitSeq() = default;
    explicit BitSeq(std::string_view bits);  // ASCII '0'/'1'; "" is λ

    // "-" is λ; anything else must be a non-empty 0/1 string.
    static BitSeq from_token(std::string_view tok);
    static BitSeq repeat(int bit, std::size_t n);

    std::size_t size() const noexcept { return bits_.size(); }
    bool empty() const noexcept { return bits_.empty(); }
    int operator[](std::size_t i) const { return bits_[i] == '1'; }

    void push_back(int bit) { bits_.push_back(bit ? '1' : '0'); }
    BitSeq& operator+=(const BitSeq& o) { bits_ += o.bits_; return *this; }
    friend BitSeq operator+(BitSeq a, const BitSeq& b) { a += b; return a; }

    BitSeq prefix(std::size_t n) const;  // first min(n, size) bits
    BitSeq drop(std::size_t n) const;    // everything after the first n bits
    BitSeq pref() const;                 // all but the last bit
    BitSeq suff() const;                 // all but the first bit
    int first() const;
    int last() const;

    // this ⪯ o
    bool is_prefix_of(const BitSeq& o) const noexcept;
    // this ≺ o
    bool is_strict_prefix_of(const BitSeq& o) const noexcept {
        return bits_.size() < o.bits_.size() && is_prefix_of(o);
    }

    const std::string& str() const noexcept { return bits_; }
    std::string token() const { return bits_.empty() ? "-" : bits_; }

    friend bool operator==(const BitSeq&, const BitSeq&) = default;
    friend std::strong_ordering operator<=>(const BitSeq& a, const BitSeq& b) noexcept {
        if (auto c = a.bits_.size() <=> b.bits_.size(); c != 0) return c;
        return a.bits_.compare(b.bits_) <=> 0;
    }

private:
    std::string bits_;
};

inline BitSeq operator""_b(const char* s, std::size_t n) { return BitSeq(std::string_view(s, n)); }

inline int negate(int bit) { return bit ? 0 : 1; }

using BitSeqSet = std::set<BitSeq>;

BitSeqSet make_set(std::initializer_list<std::string_view> elems);
BitSeqSet prepend(const BitSeq& head, const BitSeqSet& s);
BitSeqSet intersect(const BitSeqSet& a, const BitSeqSet& b);
// All 2^n sequences of length n, in shortlex order.
BitSeqSet all_of_length(std::size_t n);

// "{01,10}"; λ rendered as "-"; empty set as "{}".
std::string format_set(const BitSeqSet& s);

}  // namespace aifv

template <>
struct std::hash<aifv::BitSeq> {
    std::size_t operator()(const aifv::BitSeq& b) const noexcept {
        return std::hash<std::string>{}(b.str());
    }
};
