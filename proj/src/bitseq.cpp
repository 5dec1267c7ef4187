#include "aifv/bitseq.hpp"

#include "aifv/error.hpp"

#include <algorithm>

namespace aifv {

BitSeq::BitSeq(std::string_view bits) : bits_(bits) {
    if (std::any_of(bits_.begin(), bits_.end(), [](char c) { return c != '0' && c != '1'; }))
        throw Error(ErrorCode::Parse, "bit string contains characters other than 0/1: '" + bits_ + "'");
}

BitSeq BitSeq::from_token(std::string_view tok) {
    if (tok == "-") return {};
    if (tok.empty()) throw Error(ErrorCode::Parse, "empty bit token (use '-' for the empty sequence)");
    return BitSeq(tok);
}

BitSeq BitSeq::repeat(int bit, std::size_t n) {
    BitSeq r;
    r.bits_.assign(n, bit ? '1' : '0');
    return r;
}

BitSeq BitSeq::prefix(std::size_t n) const {
    BitSeq r;
    r.bits_ = bits_.substr(0, std::min(n, bits_.size()));
    return r;
}

BitSeq BitSeq::drop(std::size_t n) const {
    BitSeq r;
    if (n < bits_.size()) r.bits_ = bits_.substr(n);
    return r;
}

BitSeq BitSeq::pref() const {
    if (empty()) throw Error(ErrorCode::Internal, "pref of empty sequence");
    return prefix(size() - 1);
}

BitSeq BitSeq::suff() const {
    if (empty()) throw Error(ErrorCode::Internal, "suff of empty sequence");
    return drop(1);
}

int BitSeq::first() const {
    if (empty()) throw Error(ErrorCode::Internal, "first bit of empty sequence");
    return bits_.front() == '1';
}

int BitSeq::last() const {
    if (empty()) throw Error(ErrorCode::Internal, "last bit of empty sequence");
    return bits_.back() == '1';
}

bool BitSeq::is_prefix_of(const BitSeq& o) const noexcept {
    return bits_.size() <= o.bits_.size() && o.bits_.compare(0, bits_.size(), bits_) == 0;
}

BitSeqSet make_set(std::initializer_list<std::string_view> elems) {
    BitSeqSet s;
    for (auto e : elems) s.insert(BitSeq(e));
    return s;
}

BitSeqSet prepend(const BitSeq& head, const BitSeqSet& s) {
    BitSeqSet r;
    for (const auto& c : s) r.insert(head + c);
    return r;
}

BitSeqSet intersect(const BitSeqSet& a, const BitSeqSet& b) {
    BitSeqSet r;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(r, r.end()));
    return r;
}

BitSeqSet all_of_length(std::size_t n) {
    BitSeqSet r;
    for (std::size_t v = 0; v < (std::size_t{1} << n); ++v) {
        BitSeq b;
        for (std::size_t i = n; i-- > 0;) b.push_back(static_cast<int>((v >> i) & 1));
        r.insert(b);
    }
    return r;
}

std::string format_set(const BitSeqSet& s) {
    std::string out = "{";
    bool first = true;
    for (const auto& b : s) {
        if (!first) out += ',';
        out += b.token();
        first = false;
    }
    return out + "}";
}

}  // namespace aifv
