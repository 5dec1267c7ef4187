#include "aifv/classes.hpp"

#include "aifv/analysis.hpp"

#include <set>

namespace aifv {

std::string_view to_string(CodeClass c) {
    switch (c) {
    case CodeClass::Ext: return "F_ext";
    case CodeClass::Reg: return "F_reg";
    case CodeClass::Dec2: return "F_2dec";
    case CodeClass::F0: return "F_0";
    case CodeClass::F1: return "F_1";
    case CodeClass::F2: return "F_2";
    case CodeClass::F3: return "F_3";
    case CodeClass::F4: return "F_4";
    case CodeClass::Aifv: return "F_AIFV";
    }
    return "?";
}

std::string ClassReport::label() const {
    if (in(CodeClass::Aifv)) return "F_AIFV";
    static constexpr std::array<CodeClass, 6> chain{CodeClass::F0, CodeClass::F1, CodeClass::F2,
                                                    CodeClass::F3, CodeClass::F4, CodeClass::Aifv};
    for (std::size_t n = chain.size() - 1; n-- > 0;)
        if (in(chain[n])) return std::string(to_string(chain[n])) + " \\ " + std::string(to_string(chain[n + 1]));
    std::string held;
    for (auto c : {CodeClass::Ext, CodeClass::Reg, CodeClass::Dec2})
        if (in(c)) held += (held.empty() ? "" : " ∩ ") + std::string(to_string(c));
    return (held.empty() ? std::string("outside F_ext, F_reg, F_2dec") : held + " \\ F_0");
}

namespace {

std::string where(const CodeTuple& F, std::size_t i, Symbol s) {
    return "table " + std::to_string(i) + ", symbol " + F.alphabet().name(s);
}

bool injective(const CodeTuple& F, std::size_t i, std::string& why) {
    std::map<BitSeq, Symbol> seen;
    for (auto s : symbols(F.sigma())) {
        auto [it, fresh] = seen.emplace(F.f(i, s), s);
        if (!fresh) {
            why = "f_" + std::to_string(i) + " maps " + F.alphabet().name(it->second) + " and " +
                  F.alphabet().name(s) + " to " + F.f(i, s).token();
            return false;
        }
    }
    return true;
}

const BitSeq zero = BitSeq("0");
const BitSeq one = BitSeq("1");

}  // namespace

AifvCheck is_aifv(const PrefixSetTable& T) {
    const CodeTuple& F = T.tuple();
    AifvCheck r;
    r.horizon = F.max_codeword_length();
    auto fail = [&](std::string why) {
        r.ok = false;
        r.failing_clause = std::move(why);
        return r;
    };
    if (F.size() != 2) return fail("|F| = " + std::to_string(F.size()) + ", not 2");

    std::string why;
    for (std::size_t i = 0; i < 2; ++i)
        if (!injective(F, i, why)) return fail("(i) " + why);

    for (std::size_t i = 0; i < 2; ++i)
        for (auto s : symbols(F.sigma())) {
            const BitSeq& w = F.f(i, s);
            if (T.p_bar_set(i, w, 1).count(one)) return fail("(ii) " + where(F, i, s) + ": 1 follows f(s) strictly");
            if (T.p_bar_set(i, w + zero, 1).count(one))
                return fail("(ii) " + where(F, i, s) + ": 1 follows f(s)0 strictly");
        }

    for (std::size_t i = 0; i < 2; ++i)
        for (auto s : symbols(F.sigma()))
            for (auto s2 : symbols(F.sigma()))
                if (F.f(i, s2) == F.f(i, s) + zero)
                    return fail("(iii) " + where(F, i, s2) + " has codeword f(" + F.alphabet().name(s) + ")0");

    for (std::size_t i = 0; i < 2; ++i)
        for (auto s : symbols(F.sigma())) {
            std::size_t want = T.p_bar_set(i, F.f(i, s), 0).empty() ? 0 : 1;
            if (F.tau(i, s) != want)
                return fail("(iv) " + where(F, i, s) + ": next table is " + std::to_string(F.tau(i, s)) +
                            ", expected " + std::to_string(want));
        }

    for (auto s : symbols(F.sigma()))
        if (F.f(1, s).empty() || F.f(1, s) == zero)
            return fail("(v) " + where(F, 1, s) + " has codeword " + F.f(1, s).token());

    if (T.p_bar_set(1, zero, 1).count(zero)) return fail("(vi) 0 follows 0 strictly in table 1");

    // (vii): P̄^1_i(b) is empty unless b is a strict prefix of a codeword of table i,
    // so those b (all shorter than the horizon) are the only ones to examine.
    for (std::size_t i = 0; i < 2; ++i) {
        std::set<BitSeq> candidates;
        for (auto s : symbols(F.sigma()))
            for (std::size_t n = 0; n < F.f(i, s).size(); ++n) candidates.insert(F.f(i, s).prefix(n));
        for (const auto& b : candidates) {
            if (T.p_bar_set(i, b, 1).size() != 1) continue;
            bool a = false;
            for (auto s : symbols(F.sigma())) {
                const BitSeq& w = F.f(i, s);
                a |= w.is_prefix_of(b) && b.size() - w.size() <= 1;
            }
            bool bcase = i == 1 && b == zero;
            if (!a && !bcase)
                return fail("(vii) table " + std::to_string(i) + ", b = " + b.token() +
                            ": a single strict continuation, but b is not a codeword or a codeword plus one bit");
        }
    }
    r.ok = true;
    return r;
}

AifvCheck is_aifv(const CodeTuple& F) { return is_aifv(PrefixSetTable(F)); }

ClassReport classify(const PrefixSetTable& T) {
    const CodeTuple& F = T.tuple();
    const std::size_t m = F.size();
    ClassReport rep;
    auto set = [&](CodeClass c, bool ok, std::string why) {
        rep.flags[static_cast<std::size_t>(c)] = ok;
        if (!ok) rep.failing[static_cast<std::size_t>(c)] = std::move(why);
    };

    auto dec = is_k_bit_delay_decodable(T, 2);
    set(CodeClass::Dec2, dec.decodable, dec.decodable ? "" : describe(F, dec.violations.front()));

    auto R = reachability(F);
    set(CodeClass::Reg, !R.members.empty(), "no table is reachable from every table (R_F is empty)");

    std::vector<BitSeqSet> P1(m), P2(m);
    for (std::size_t i = 0; i < m; ++i) {
        P1[i] = T.base(i, 1);
        P2[i] = T.base(i, 2);
    }
    std::string ext_why;
    for (std::size_t i = 0; i < m && ext_why.empty(); ++i)
        if (P1[i].empty()) ext_why = "P1[" + std::to_string(i) + "] is empty";
    set(CodeClass::Ext, ext_why.empty(), ext_why);

    const bool base = rep.in(CodeClass::Reg) && rep.in(CodeClass::Dec2);
    std::string base_why = !rep.in(CodeClass::Reg) ? "not regular" : "not 2-bit delay decodable";
    if (base && !rep.in(CodeClass::Ext)) set(CodeClass::F0, false, "not extendable: " + ext_why);
    else set(CodeClass::F0, base, base_why);

    // shape test on every table; the first failing table is the witness
    auto every = [&](CodeClass c, auto pred, const char* what) {
        if (!base) return set(c, false, base_why);
        for (std::size_t i = 0; i < m; ++i)
            if (!pred(i))
                return set(c, false,
                           "P" + std::string(what) + "[" + std::to_string(i) + "]=" +
                               format_set(what[0] == '1' ? P1[i] : P2[i]));
        set(c, true, "");
    };
    const auto full1 = all_of_length(1);
    every(CodeClass::F1, [&](std::size_t i) { return P1[i] == full1; }, "1");
    every(CodeClass::F2, [&](std::size_t i) { return P2[i].size() >= 3; }, "2");
    const auto upper = make_set({"01", "10", "11"});
    every(CodeClass::F3, [&](std::size_t i) { return std::includes(P2[i].begin(), P2[i].end(), upper.begin(), upper.end()); }, "2");

    if (!base) set(CodeClass::F4, false, base_why);
    else if (m != 2) set(CodeClass::F4, false, "|F| = " + std::to_string(m) + ", not 2");
    else if (P2[0] != all_of_length(2)) set(CodeClass::F4, false, "P2[0]=" + format_set(P2[0]));
    else if (P2[1] != upper) set(CodeClass::F4, false, "P2[1]=" + format_set(P2[1]));
    else set(CodeClass::F4, true, "");

    auto aifv = is_aifv(T);
    rep.aifv_horizon = aifv.horizon;
    set(CodeClass::Aifv, aifv.ok, aifv.failing_clause);
    return rep;
}

ClassReport classify(const CodeTuple& F) { return classify(PrefixSetTable(F)); }

ClassReport classify(const CodeTuple& F, const SourceDist& mu) {
    is_regular(F, mu);  // throws on an inconsistent regularity decision
    return classify(F);
}

bool verify_hierarchy(std::span<const ClassReport> reports) {
    using C = CodeClass;
    static constexpr std::array<std::pair<C, C>, 8> implies{{{C::F0, C::Reg},
                                                            {C::F0, C::Ext},
                                                            {C::F0, C::Dec2},
                                                            {C::F1, C::F0},
                                                            {C::F2, C::F1},
                                                            {C::F3, C::F2},
                                                            {C::F4, C::F3},
                                                            {C::Aifv, C::F4}}};
    for (const auto& r : reports) {
        for (auto [sub, super] : implies)
            if (r.in(sub) && !r.in(super)) return false;
        if (r.in(C::Reg) && r.in(C::Ext) && r.in(C::Dec2) && !r.in(C::F0)) return false;
    }
    return true;
}

}  // namespace aifv
