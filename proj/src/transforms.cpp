#include "aifv/transforms.hpp"

#include "aifv/analysis.hpp"
#include "aifv/classes.hpp"
#include "aifv/markov.hpp"

#include <algorithm>
#include <set>

namespace aifv {

std::vector<BitSeq> rotation_offsets(const PrefixSetTable& T) {
    std::vector<BitSeq> d;
    for (std::size_t i = 0; i < T.tuple().size(); ++i) {
        auto P1 = T.base(i, 1);
        if (P1.empty()) throw Error(ErrorCode::NotExtendable, "P1[" + std::to_string(i) + "] is empty");
        d.push_back(P1.size() == 2 ? BitSeq{} : *P1.begin());
    }
    return d;
}

CodeTuple rotate(const CodeTuple& F) {
    PrefixSetTable T(F);
    auto d = rotation_offsets(T);
    auto tables = F.tables();
    for (std::size_t i = 0; i < F.size(); ++i) {
        const bool full = d[i].empty();
        for (auto s : symbols(F.sigma())) {
            BitSeq w = F.f(i, s) + d[F.tau(i, s)];
            tables[i].code[s.id] = full ? w : w.suff();
        }
    }
    return CodeTuple(F.alphabet(), std::move(tables));
}

GammaDecomposition gamma_decompose(const CodeTuple& F, std::size_t i, Symbol s) {
    const BitSeq& w = F.f(i, s);
    std::vector<Symbol> below;
    for (auto t : symbols(F.sigma()))
        if (F.f(i, t).is_strict_prefix_of(w)) below.push_back(t);
    std::stable_sort(below.begin(), below.end(),
                     [&](Symbol a, Symbol b) { return F.f(i, a).size() < F.f(i, b).size(); });
    for (std::size_t r = 1; r < below.size(); ++r)
        if (F.f(i, below[r]) == F.f(i, below[r - 1]))
            throw Error(ErrorCode::AmbiguousChain,
                        "table " + std::to_string(i) + ": symbols " + F.alphabet().name(below[r - 1]) + " and " +
                            F.alphabet().name(below[r]) + " share codeword " + F.f(i, below[r]).token() +
                            " below " + w.token());
    GammaDecomposition g;
    g.chain = std::move(below);
    g.chain.push_back(s);
    std::size_t prev = 0;
    for (auto t : g.chain) {
        g.parts.push_back(F.f(i, t).drop(prev));
        prev = F.f(i, t).size();
    }
    return g;
}

int a_bit(const PrefixSetTable& T, std::size_t i) {
    const CodeTuple& F = T.tuple();
    std::vector<std::size_t> walk;
    for (;;) {
        if (std::find(walk.begin(), walk.end(), i) != walk.end()) {
            std::string cycle;
            for (auto t : walk) cycle += std::to_string(t) + " -> ";
            throw Error(ErrorCode::NonTerminatingRecursion, "a-bit recursion cycles through tables " + cycle +
                                                                std::to_string(i));
        }
        walk.push_back(i);
        auto lam = symbols_with_codeword(F, i, BitSeq{});
        if (lam.size() != 1) return T.base(i, 2).count(BitSeq("00")) ? 0 : 1;
        i = F.tau(i, lam.front());
    }
}

int a_bit(const CodeTuple& F, std::size_t i) { return a_bit(PrefixSetTable(F), i); }

namespace {

// head followed by g1 g3 g4 ... (the second bit of g dropped)
BitSeq splice(std::initializer_list<int> head, const BitSeq& g) {
    BitSeq out;
    for (int b : head) out.push_back(b);
    out += g.drop(2);
    return out;
}

void require_len2(const BitSeq& g, const char* op) {
    if (g.size() < 2)
        throw Error(ErrorCode::Internal, std::string(op) + ": decomposition part '" + g.token() + "' shorter than 2");
}

}  // namespace

CodeTuple dot(const CodeTuple& F) {
    PrefixSetTable T(F);
    auto cls = classify(T);
    if (!cls.in(CodeClass::F1)) throw Error(ErrorCode::NotInF1, "dot requires F_1: " + cls.why_not(CodeClass::F1));

    std::vector<std::optional<int>> a(F.size());
    auto a_of = [&](std::size_t j) {
        if (!a[j]) a[j] = a_bit(T, j);
        return *a[j];
    };
    auto tables = F.tables();
    for (std::size_t i = 0; i < F.size(); ++i) {
        const std::size_t p2 = T.base(i, 2).size();
        for (auto s : symbols(F.sigma())) {
            auto g = gamma_decompose(F, i, s);
            BitSeq out;
            for (std::size_t r = 0; r < g.chain.size(); ++r) {
                const BitSeq& part = g.parts[r];
                if (r == 0) {
                    if (p2 == 2) {
                        require_len2(part, "dot");
                        out += splice({a_of(i), part[0]}, part);
                    } else {
                        out += part;
                    }
                    continue;
                }
                require_len2(part, "dot");
                const Symbol prev = g.chain[r - 1];
                const std::size_t j = F.tau(i, prev);
                const int na = negate(a_of(j));
                const std::size_t here = T.p_bar_set(i, F.f(i, prev), 1).size();
                const std::size_t there = T.p_bar_set(j, BitSeq{}, 1).size();
                if (here == 2) out += splice({na, part[0]}, part);
                else if (here == 1 && there == 1) out += splice({na, 0}, part);
                else if (here == 1 && there == 2 && T.base(j, 2).size() == 2) out += splice({na, 1}, part);
                else if (here == 1 && there == 2) out += part;
                else throw Error(ErrorCode::Internal, "dot: no case applies in table " + std::to_string(i));
            }
            tables[i].code[s.id] = out;
        }
    }
    return CodeTuple(F.alphabet(), std::move(tables));
}

CodeTuple ddot(const CodeTuple& F) {
    PrefixSetTable T(F);
    auto cls = classify(T);
    if (!cls.in(CodeClass::F2)) throw Error(ErrorCode::NotInF2, "ddot requires F_2: " + cls.why_not(CodeClass::F2));

    auto tables = F.tables();
    for (std::size_t i = 0; i < F.size(); ++i) {
        const auto P2 = T.base(i, 2);
        for (auto s : symbols(F.sigma())) {
            auto g = gamma_decompose(F, i, s);
            BitSeq out;
            for (std::size_t r = 0; r < g.chain.size(); ++r) {
                const BitSeq& part = g.parts[r];
                if (r >= 1) {
                    require_len2(part, "ddot");
                    out += splice({0, 0}, part);
                } else if (P2.size() == 4 || part.empty()) {
                    out += part;
                } else if (part.size() == 1) {
                    out += BitSeq("1");
                } else {
                    BitSeq flipped;
                    flipped.push_back(part[0]);
                    flipped.push_back(negate(part[1]));
                    out += P2.count(flipped) ? splice({1, part[1]}, part) : splice({0, 1}, part);
                }
            }
            tables[i].code[s.id] = out;
        }
    }
    return CodeTuple(F.alphabet(), std::move(tables));
}

namespace {

void check_length(const TransformStep& step, const SourceDist& mu, const Rational& L) {
    Rational after = average_length(step.output, mu);
    if (after != L)
        throw Error(ErrorCode::Internal, step.op + " changed the average length from " + to_string(L) + " to " +
                                             to_string(after));
}

}  // namespace

TransformTrace chain_to_class(const CodeTuple& F, const SourceDist& mu, ChainTarget target) {
    require_same_alphabet(F, mu);
    const CodeClass need = target == ChainTarget::F1 ? CodeClass::F0
                         : target == ChainTarget::F2 ? CodeClass::F1
                                                     : CodeClass::F2;
    auto cls = classify(F, mu);
    if (!cls.in(need))
        throw Error(ErrorCode::NotInExpectedClass,
                    "input must be in " + std::string(to_string(need)) + ": " + cls.why_not(need));
    const Rational L = average_length(F, mu);

    TransformTrace trace{{}, F};
    auto record = [&](std::string op, CodeTuple out, std::vector<std::string> values) {
        TransformStep step{std::move(op), trace.result, std::move(out), std::move(values)};
        check_length(step, mu, L);
        trace.result = step.output;
        trace.steps.push_back(std::move(step));
    };
    auto d_values = [](const CodeTuple& G) {
        std::vector<std::string> v;
        for (const auto& d : rotation_offsets(PrefixSetTable(G))) v.push_back(d.token());
        return v;
    };

    switch (target) {
    case ChainTarget::F1: {
        const std::size_t limit = 2 * F.max_codeword_length() + 2;
        while (!classify(trace.result).in(CodeClass::F1)) {
            if (trace.steps.size() >= limit)
                throw Error(ErrorCode::StepLimitExceeded, "no F_1 member after " + std::to_string(limit) + " rotations");
            record("rotate", rotate(trace.result), d_values(trace.result));
            if (!classify(trace.result).in(CodeClass::F0))
                throw Error(ErrorCode::NotInExpectedClass, "rotation left F_0");
        }
        break;
    }
    case ChainTarget::F2: {
        const std::size_t limit = F.size() + 1;
        for (std::size_t rounds = 0; !classify(trace.result).in(CodeClass::F2); ++rounds) {
            if (rounds >= limit)
                throw Error(ErrorCode::StepLimitExceeded,
                            "no F_2 member after " + std::to_string(limit) + " dot/rotate rounds");
            PrefixSetTable T(trace.result);
            std::vector<std::string> a;
            for (std::size_t i = 0; i < trace.result.size(); ++i) a.push_back(std::to_string(a_bit(T, i)));
            record("dot", dot(trace.result), std::move(a));
            record("rotate", rotate(trace.result), d_values(trace.result));
            if (!classify(trace.result).in(CodeClass::F1))
                throw Error(ErrorCode::NotInExpectedClass, "dot/rotate round left F_1");
        }
        break;
    }
    case ChainTarget::F3: {
        if (cls.in(CodeClass::F3)) break;
        record("ddot", ddot(trace.result), {});
        auto out = classify(trace.result);
        if (!out.in(CodeClass::F3))
            throw Error(ErrorCode::NotInExpectedClass, "ddot result is not in F_3: " + out.why_not(CodeClass::F3));
        break;
    }
    }
    return trace;
}

CodeTuple prune_to_reachable(const CodeTuple& F) {
    auto R = reachability(F);
    if (R.members.empty()) throw Error(ErrorCode::NotRegular, "R_F is empty");
    std::vector<bool> keep(F.size(), false);
    std::vector<std::size_t> stack(R.members.begin(), R.members.end());
    for (auto i : stack) keep[i] = true;
    while (!stack.empty()) {
        auto t = stack.back();
        stack.pop_back();
        for (auto s : symbols(F.sigma()))
            if (!keep[F.tau(t, s)]) {
                keep[F.tau(t, s)] = true;
                stack.push_back(F.tau(t, s));
            }
    }
    std::vector<std::size_t> index(F.size());
    std::vector<CodeTable> tables;
    for (std::size_t i = 0; i < F.size(); ++i)
        if (keep[i]) {
            index[i] = tables.size();
            tables.push_back(F.table(i));
        }
    for (auto& t : tables)
        for (auto& n : t.next) n = index[n];
    return CodeTuple(F.alphabet(), std::move(tables));
}

CodeTuple extend_to_two_tables(const CodeTuple& F) {
    if (F.size() != 1)
        throw Error(ErrorCode::WrongTableCount, "expected a 1-table tuple, got " + std::to_string(F.size()));
    const std::size_t sigma = F.sigma();
    CodeTable extra{std::vector<BitSeq>(sigma), std::vector<std::size_t>(sigma, 0)};
    for (std::size_t r = 1; r <= sigma; ++r) {
        BitSeq& w = extra.code[r - 1];
        if (r == 1) w = BitSeq("01");
        else if (r < sigma) w = BitSeq::repeat(1, r - 1) + BitSeq("0");
        else w = BitSeq::repeat(1, sigma - 1);
    }
    auto tables = F.tables();
    tables.push_back(std::move(extra));
    return CodeTuple(F.alphabet(), std::move(tables));
}

}  // namespace aifv
