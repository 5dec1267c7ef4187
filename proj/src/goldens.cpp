#include "aifv/goldens.hpp"

#include "aifv/analysis.hpp"
#include "aifv/classes.hpp"
#include "aifv/codec.hpp"
#include "aifv/markov.hpp"
#include "aifv/prefix_sets.hpp"
#include "aifv/search.hpp"
#include "aifv/transforms.hpp"

#include <map>
#include <sstream>

namespace aifv::goldens {

namespace {

// rows: symbol, then "code/next" per table
std::string make(const std::vector<std::vector<std::string>>& rows) {
    const std::size_t m = rows.front().size() - 1;
    std::ostringstream out;
    out << "alphabet a b c d\ntables " << m << '\n';
    for (std::size_t i = 0; i < m; ++i) {
        out << "table " << i << '\n';
        for (const auto& r : rows) {
            auto slash = r[i + 1].find('/');
            out << r[0] << ' ' << r[i + 1].substr(0, slash) << ' ' << r[i + 1].substr(slash + 1) << '\n';
        }
    }
    return out.str();
}

const std::map<std::string, std::string, std::less<>>& texts() {
    static const std::map<std::string, std::string, std::less<>> t = {
        {"alpha", make({{"a", "110/0", "010/0", "-/2"},
                        {"b", "-/1", "011/2", "-/2"},
                        {"c", "110/2", "1/2", "-/2"},
                        {"d", "111/0", "10/1", "-/2"}})},
        {"beta", make({{"a", "11/1", "0110/1", "10/2"},
                       {"b", "-/1", "0110/1", "11/2"},
                       {"c", "101/2", "01/1", "1000/2"},
                       {"d", "1011/1", "0111/1", "1001/2"}})},
        {"gamma", make({{"a", "01/0", "00/1", "1100/1"},
                        {"b", "10/1", "-/0", "1110/0"},
                        {"c", "0100/0", "00111/1", "111000/2"},
                        {"d", "01/2", "00111/2", "110/2"}})},
        {"delta", make({{"a", "01/0", "00/1", "100/1"},
                        {"b", "10/1", "-/0", "110/0"},
                        {"c", "0100/0", "00111/1", "110001/2"},
                        {"d", "011/2", "001111/2", "101/2"}})},
        {"epsilon", make({{"a", "01/0", "00/1", "00/1"},
                          {"b", "10/1", "-/0", "10/0"},
                          {"c", "0100/0", "00111/1", "100011/2"},
                          {"d", "0111/2", "0011111/2", "011/2"}})},
        {"zeta", make({{"a", "10/0", "01/1", "00/1"},
                       {"b", "11/1", "-/0", "10/0"},
                       {"c", "1000/0", "01001/1", "100011/2"},
                       {"d", "1001/2", "0100100/2", "011/2"}})},
        {"eta", make({{"a", "01/0", "01/1", "00/1"},
                      {"b", "1/1", "1/0", "101/0"},
                      {"c", "0001/0", "01001/1", "100011/2"},
                      {"d", "001/2", "0100100/2", "011/2"}})},
        {"theta", make({{"a", "01/0", "01/1", "10/1"},
                        {"b", "1/1", "1/0", "011/0"},
                        {"c", "0001/0", "01001/1", "010011/2"},
                        {"d", "001/2", "0100100/2", "111/2"}})},
        {"iota", make({{"a", "01/1", "01/1"}, {"b", "1/1", "1/0"}, {"c", "0001/0", "01001/1"}, {"d", "001/1", "0100100/1"}})},
        {"kappa", make({{"a", "100/0", "1100/0"}, {"b", "00/0", "11/1"}, {"c", "01/0", "01/0"}, {"d", "1/1", "10/0"}})},
    };
    return t;
}

}  // namespace

const std::vector<std::string>& names() {
    static const std::vector<std::string> n = {"alpha", "beta",  "gamma", "delta", "epsilon",
                                               "zeta",  "eta",   "theta", "iota",  "kappa"};
    return n;
}

const std::string& text(std::string_view name) {
    auto it = texts().find(name);
    if (it == texts().end()) throw Error(ErrorCode::Semantic, "no built-in tuple named '" + std::string(name) + "'");
    return it->second;
}

CodeTuple tuple(std::string_view name) { return parse_code_tuple(text(name)); }

SourceDist four_symbol_distribution() {
    return SourceDist(Alphabet::letters(4), {Rational(1, 10), Rational(2, 10), Rational(3, 10), Rational(4, 10)});
}

namespace {

struct Expected {
    std::vector<std::string> p1, p2;
    std::string label;
    std::string reach;
};

const std::map<std::string, Expected>& expected() {
    static const std::map<std::string, Expected> e = {
        {"alpha", {{"{0,1}", "{0,1}", "{}"}, {"{01,10,11}", "{01,10}", "{}"}, "F_reg ∩ F_2dec \\ F_0", "{2}"}},
        {"beta", {{"{0,1}", "{0}", "{1}"}, {"{01,10,11}", "{01}", "{10,11}"}, "F_ext \\ F_0", "{}"}},
        {"gamma", {{"{0,1}", "{0,1}", "{1}"}, {"{01,10}", "{00,01,10}", "{11}"}, "F_0 \\ F_1", "{0,1,2}"}},
        {"delta", {{"{0,1}", "{0,1}", "{1}"}, {"{01,10}", "{00,01,10}", "{10,11}"}, "F_0 \\ F_1", "{0,1,2}"}},
        {"epsilon",
         {{"{0,1}", "{0,1}", "{0,1}"}, {"{01,10}", "{00,01,10}", "{00,01,10}"}, "F_1 \\ F_2", "{0,1,2}"}},
        {"zeta", {{"{1}", "{0,1}", "{0,1}"}, {"{10,11}", "{01,10,11}", "{00,01,10}"}, "F_0 \\ F_1", "{0,1,2}"}},
        {"eta",
         {{"{0,1}", "{0,1}", "{0,1}"}, {"{00,01,10,11}", "{01,10,11}", "{00,01,10}"}, "F_2 \\ F_3", "{0,1,2}"}},
        {"theta",
         {{"{0,1}", "{0,1}", "{0,1}"}, {"{00,01,10,11}", "{01,10,11}", "{01,10,11}"}, "F_3 \\ F_4", "{0,1,2}"}},
        {"iota", {{"{0,1}", "{0,1}"}, {"{00,01,10,11}", "{01,10,11}"}, "F_4 \\ F_AIFV", "{0,1}"}},
        {"kappa", {{"{0,1}", "{0,1}"}, {"{00,01,10,11}", "{01,10,11}"}, "F_AIFV", "{0,1}"}},
    };
    return e;
}

std::string format_indices(const std::vector<std::size_t>& v) {
    std::string s = "{";
    for (std::size_t n = 0; n < v.size(); ++n) s += (n ? "," : "") + std::to_string(v[n]);
    return s + "}";
}

std::string format_symbols(const Alphabet& a, const std::vector<Symbol>& v) {
    std::string s = "{";
    for (std::size_t n = 0; n < v.size(); ++n) s += (n ? "," : "") + a.name(v[n]);
    return s + "}";
}

class Runner {
public:
    std::vector<Check> checks;

    void expect(std::string item, const std::string& got, const std::string& want) {
        checks.push_back({std::move(item), got == want, got == want ? "" : "got " + got + ", want " + want});
    }
    void expect(std::string item, bool ok, std::string detail = "") {
        checks.push_back({std::move(item), ok, ok ? "" : std::move(detail)});
    }
    template <class F>
    void guard(const std::string& item, F&& f) {
        try {
            f();
        } catch (const std::exception& e) {
            checks.push_back({item, false, std::string("threw: ") + e.what()});
        }
    }
};

}  // namespace

std::vector<Check> run_all() {
    Runner r;
    const auto mu = four_symbol_distribution();
    const auto sym = [](char c) { return Symbol{static_cast<std::uint32_t>(c - 'a')}; };
    const auto seq = [&](std::string_view s) { return parse_seq(Alphabet::letters(4), s); };

    std::map<std::string, CodeTuple> F;
    for (const auto& n : names()) F.emplace(n, tuple(n));

    r.guard("format round-trip", [&] {
        for (const auto& n : names())
            r.expect("format round-trip " + n, parse_code_tuple(serialize_code_tuple(F.at(n))) == F.at(n));
        r.expect("parse gamma f_0(a)", F.at("gamma").f(0, sym('a')).token(), "01");
        r.expect("parse gamma f_2(d)/tau", F.at("gamma").f(2, sym('d')).token() + "/" +
                                               std::to_string(F.at("gamma").tau(2, sym('d'))), "110/2");
    });

    std::vector<ClassReport> reports;
    for (const auto& n : names()) {
        r.guard("tuple " + n, [&] {
            const auto& G = F.at(n);
            const auto& want = expected().at(n);
            PrefixSetTable T(G);
            for (std::size_t i = 0; i < G.size(); ++i) {
                r.expect("P1[" + std::to_string(i) + "] " + n, format_set(T.base(i, 1)), want.p1[i]);
                r.expect("P2[" + std::to_string(i) + "] " + n, format_set(T.base(i, 2)), want.p2[i]);
            }
            auto rep = classify(G, mu);
            reports.push_back(rep);
            r.expect("class " + n, rep.label(), want.label);
            r.expect("R " + n, format_indices(reachability(G).members), want.reach);
        });
    }
    r.expect("class hierarchy over all tuples", verify_hierarchy(reports));

    r.guard("strict prefix sets gamma", [&] {
        const auto& G = F.at("gamma");
        const std::map<char, std::vector<std::string>> want = {{'a', {"{00}", "{11}", "{}"}},
                                                               {'b', {"{}", "{00}", "{00}"}},
                                                               {'c', {"{}", "{}", "{}"}},
                                                               {'d', {"{00}", "{}", "{00,01}"}}};
        PrefixSetTable T(G);
        for (const auto& [c, row] : want)
            for (std::size_t i = 0; i < 3; ++i)
                r.expect(std::string("Pbar2[") + std::to_string(i) + "](f(" + c + ")) gamma",
                         format_set(T.p_bar_set(i, G.f(i, sym(c)), 2)), row[i]);
    });

    r.guard("extension maps", [&] {
        const auto& G = F.at("gamma");
        auto e = f_star(G, 0, seq("badb"));
        r.expect("f*_0(badb) gamma", e.bits.token() + " -> " + std::to_string(e.table), "1000001111110 -> 0");
        auto b = f_star(G, 0, seq("b"));
        r.expect("f*_0(b) gamma", b.bits.token() + " -> " + std::to_string(b.table), "10 -> 1");
        r.expect("f*_0(bc) = f*_0(bd) gamma", encode(G, 0, seq("bc")).token() + " " + encode(G, 0, seq("bd")).token(),
                 "1000111 1000111");
        r.expect("p* 10000 gamma", p_star_contains(G, 0, BitSeq("10000")));
        r.expect("p* 00 gamma", !p_star_contains(G, 0, BitSeq("00")));
    });

    r.guard("symbol sets", [&] {
        const Alphabet& a = F.at("alpha").alphabet();
        r.expect("S_0(110) alpha", format_symbols(a, symbols_with_codeword(F.at("alpha"), 0, BitSeq("110"))), "{a,c}");
        r.expect("S_2(-) alpha", format_symbols(a, symbols_with_codeword(F.at("alpha"), 2, BitSeq{})), "{a,b,c,d}");
        r.expect("S_1(00000000) beta", format_symbols(a, symbols_with_codeword(F.at("beta"), 1, BitSeq("00000000"))), "{}");
    });

    r.guard("conditional sets beta", [&] {
        PrefixSetTable T(F.at("beta"));
        r.expect("P3_0(101) beta", format_set(T.p_set(0, BitSeq("101"), 3)), "{100,101,111}");
        r.expect("Pbar3_0(101) beta", format_set(T.p_bar_set(0, BitSeq("101"), 3)), "{101}");
        r.expect("Pbar0_1(011) beta", format_set(T.p_bar_set(1, BitSeq("011"), 0)), "{-}");
    });

    r.guard("decodability", [&] {
        r.expect("2-bit delay gamma", is_k_bit_delay_decodable(F.at("gamma"), 2).decodable);
        auto one = is_k_bit_delay_decodable(F.at("gamma"), 1);
        bool witness = false;
        for (const auto& v : one.violations)
            witness |= v.kind == DecodabilityViolation::Kind::SharedCodeword && v.table == 1 && v.s == sym('c') &&
                       v.other == sym('d') && v.c == BitSeq("1");
        r.expect("1-bit delay gamma fails at (1, c, d)", !one.decodable && witness);
        auto beta = is_k_bit_delay_decodable(F.at("beta"), 2);
        witness = false;
        for (const auto& v : beta.violations)
            witness |= v.kind == DecodabilityViolation::Kind::SharedCodeword && v.table == 1 && v.s == sym('a') &&
                       v.other == sym('b');
        r.expect("2-bit delay beta fails at (1, a, b)", !beta.decodable && witness);
        r.expect("extendable alpha", !is_extendable(F.at("alpha")));
        r.expect("extendable gamma", is_extendable(F.at("gamma")));
        r.expect("regular beta", !is_regular(F.at("beta"), mu));
        r.expect("regular gamma", is_regular(F.at("gamma"), mu));
        r.expect("regular kappa", is_regular(F.at("kappa"), mu));
        r.expect("M epsilon", format_indices(m_set(F.at("epsilon"))), "{0}");
        r.expect("M eta", format_indices(m_set(F.at("eta"))), "{}");
        r.expect("M gamma", format_indices(m_set(F.at("gamma"))), "{0}");
    });

    r.guard("stationary gamma", [&] {
        const auto& G = F.at("gamma");
        auto Q = transition_matrix(G, mu);
        std::string q;
        for (Eigen::Index i = 0; i < Q.rows(); ++i)
            for (Eigen::Index j = 0; j < Q.cols(); ++j) q += (q.empty() ? "" : " ") + to_string(Q(i, j));
        r.expect("Q gamma", q, "2/5 1/5 2/5 1/5 2/5 2/5 1/5 1/10 7/10");
        auto pi = stationary(G, mu);
        r.expect("pi gamma", to_string(pi(0)) + " " + to_string(pi(1)) + " " + to_string(pi(2)), "1/4 5/28 4/7");
        r.expect("L_i gamma", to_string(table_length(G, 0, mu)) + " " + to_string(table_length(G, 1, mu)) + " " +
                                  to_string(table_length(G, 2, mu)), "13/5 37/10 21/5");
        auto L = average_length(G, mu);
        r.expect("L gamma", to_string(L) + " ≈ " + format_length(L), "1039/280 ≈ 3.7107");
        r.expect("L delta = L gamma", average_length(F.at("delta"), mu) == L);
        auto Qk = transition_matrix(F.at("kappa"), mu);
        r.expect("Q kappa row 0", to_string(Qk(0, 0)) + " " + to_string(Qk(0, 1)), "3/5 2/5");
        r.expect("L_0 kappa", to_string(table_length(F.at("kappa"), 0, mu)), "17/10");
    });

    r.guard("classes", [&] {
        r.expect("AIFV kappa", is_aifv(F.at("kappa")).ok);
        r.expect("AIFV iota", !is_aifv(F.at("iota")).ok);
    });

    r.guard("transformations", [&] {
        r.expect("rotate gamma = delta", rotate(F.at("gamma")) == F.at("delta"));
        r.expect("rotate delta = epsilon", rotate(F.at("delta")) == F.at("epsilon"));
        r.expect("rotate epsilon = epsilon", rotate(F.at("epsilon")) == F.at("epsilon"));
        r.expect("rotate zeta = eta", rotate(F.at("zeta")) == F.at("eta"));
        r.expect("rotate delta f_2(a)", rotate(F.at("delta")).f(2, sym('a')).token(), "00");
        // Cell-by-cell, so a single disagreement with the tabulated tuple is named precisely.
        {
            const auto D = dot(F.at("epsilon"));
            const auto& Z = F.at("zeta");
            std::string diff;
            for (std::size_t i = 0; i < Z.size(); ++i)
                for (auto s : symbols(Z.sigma()))
                    if (D.f(i, s) != Z.f(i, s) || D.tau(i, s) != Z.tau(i, s))
                        diff += (diff.empty() ? "" : ", ") + std::string("f_") + std::to_string(i) + "(" +
                                Z.alphabet().name(s) + ") = " + D.f(i, s).token() + " vs tabulated " +
                                Z.f(i, s).token();
            r.expect("dot epsilon = zeta", diff.empty(), diff);
        }
        r.expect("ddot eta = theta", ddot(F.at("eta")) == F.at("theta"));
        const auto& E = F.at("epsilon");
        auto g = gamma_decompose(E, 1, sym('d'));
        std::string parts, chain;
        for (std::size_t n = 0; n < g.chain.size(); ++n) {
            chain += E.alphabet().name(g.chain[n]);
            parts += (n ? " " : "") + g.parts[n].token();
        }
        r.expect("gamma decomposition f_1(d) epsilon", chain + ": " + parts, "bacd: - 00 111 11");
        g = gamma_decompose(E, 0, sym('c'));
        r.expect("gamma decomposition f_0(c) epsilon",
                 E.alphabet().name(g.chain[0]) + E.alphabet().name(g.chain[1]) + ": " + g.parts[0].token() + " " +
                     g.parts[1].token(),
                 "ac: 01 00");
        r.expect("a bits epsilon",
                 std::to_string(a_bit(E, 0)) + std::to_string(a_bit(E, 1)) + std::to_string(a_bit(E, 2)), "110");
        auto D = dot(E);
        r.expect("dot epsilon f_0(c), f_1(c), f_1(d)",
                 D.f(0, sym('c')).token() + " " + D.f(1, sym('c')).token() + " " + D.f(1, sym('d')).token(),
                 "1000 01001 0100100");
        auto H = ddot(F.at("eta"));
        r.expect("ddot eta f_2(d), f_0(d)", H.f(2, sym('d')).token() + " " + H.f(0, sym('d')).token(), "111 001");

        auto ops = [](const TransformTrace& t) {
            std::string s;
            for (const auto& st : t.steps) s += (s.empty() ? "" : ",") + st.op;
            return s;
        };
        auto t1 = chain_to_class(F.at("gamma"), mu, ChainTarget::F1);
        r.expect("chain gamma to F_1", ops(t1) + (t1.result == F.at("epsilon") ? " -> epsilon" : " -> ?"),
                 "rotate,rotate -> epsilon");
        auto t2 = chain_to_class(F.at("epsilon"), mu, ChainTarget::F2);
        r.expect("chain epsilon to F_2", ops(t2) + (t2.result == F.at("eta") ? " -> eta" : " -> other"),
                 "dot,rotate -> eta");
        r.expect("chain epsilon to F_2 lands in F_2", classify(t2.result).in(CodeClass::F2));
        auto t3 = chain_to_class(F.at("eta"), mu, ChainTarget::F3);
        r.expect("chain eta to F_3", ops(t3) + (t3.result == F.at("theta") ? " -> theta" : " -> ?"), "ddot -> theta");
        r.expect("prune gamma", prune_to_reachable(F.at("gamma")) == F.at("gamma"));
    });

    r.guard("codec", [&] {
        const auto& G = F.at("gamma");
        auto d = decode(G, 0, BitSeq("1000001111110"), 2);
        r.expect("decode 1000001111110 gamma",
                 format_seq(G.alphabet(), d.symbols) + (d.dangling.resolved() ? " resolved" : " unresolved"),
                 "badb resolved");
        auto t = decode(G, 0, BitSeq("1000111"), 2);
        bool c = false, dd = false;
        for (const auto& y : t.dangling.completions) {
            c |= y == seq("c");
            dd |= y == seq("d");
        }
        r.expect("decode 1000111 gamma", format_seq(G.alphabet(), t.symbols) + (c && dd ? " tail {c,d,...}" : " ?"),
                 "b tail {c,d,...}");
        r.expect("round trip beta fails", !roundtrip_check(F.at("beta"), 2, 200, 20, 7).failures.empty());
    });

    r.guard("huffman", [&] {
        auto h = huffman_length(mu);
        std::string l;
        for (auto x : h.lengths) l += std::to_string(x);
        r.expect("huffman (.1,.2,.3,.4)", l + " " + to_string(h.L), "3321 19/10");
    });
    return r.checks;
}

}  // namespace aifv::goldens
