#include "aifv/core.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace aifv {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::Parse: return "ParseError";
    case ErrorCode::Semantic: return "SemanticError";
    case ErrorCode::AlphabetMismatch: return "AlphabetMismatch";
    case ErrorCode::NotExtendable: return "NotExtendable";
    case ErrorCode::NotRegular: return "NotRegular";
    case ErrorCode::NotInF1: return "NotInF1";
    case ErrorCode::NotInF2: return "NotInF2";
    case ErrorCode::AmbiguousChain: return "AmbiguousChain";
    case ErrorCode::NonTerminatingRecursion: return "NonTerminatingRecursion";
    case ErrorCode::StepLimitExceeded: return "StepLimitExceeded";
    case ErrorCode::NotInExpectedClass: return "NotInExpectedClass";
    case ErrorCode::WrongTableCount: return "WrongTableCount";
    case ErrorCode::NoConsistentCompletion: return "NoConsistentCompletion";
    case ErrorCode::EmptySpace: return "EmptySpace";
    case ErrorCode::Internal: return "InternalError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what, int line)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
      code_(code), line_(line) {}

// ---- Alphabet -------------------------------------------------------------

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
    std::set<std::string> seen;
    for (const auto& n : names_) {
        if (n.empty()) throw Error(ErrorCode::Semantic, "empty symbol name");
        if (n == "-") throw Error(ErrorCode::Semantic, "'-' is reserved and cannot name a symbol");
        if (!seen.insert(n).second) throw Error(ErrorCode::Semantic, "duplicate symbol name '" + n + "'");
    }
}

Alphabet Alphabet::letters(std::size_t sigma) {
    if (sigma > 26) throw Error(ErrorCode::Semantic, "letters() supports at most 26 symbols");
    std::vector<std::string> v;
    for (std::size_t i = 0; i < sigma; ++i) v.emplace_back(1, static_cast<char>('a' + i));
    return Alphabet(std::move(v));
}

std::optional<Symbol> Alphabet::find(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return Symbol{static_cast<std::uint32_t>(i)};
    return std::nullopt;
}

std::string format_seq(const Alphabet& a, std::span<const Symbol> x) {
    if (x.empty()) return "-";
    bool compact = std::all_of(a.names().begin(), a.names().end(), [](const auto& n) { return n.size() == 1; });
    std::string out;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!compact && i) out += ' ';
        out += a.name(x[i]);
    }
    return out;
}

SourceSeq parse_seq(const Alphabet& a, std::string_view text) {
    SourceSeq out;
    std::istringstream in{std::string(text)};
    std::string tok;
    bool compact = std::all_of(a.names().begin(), a.names().end(), [](const auto& n) { return n.size() == 1; });
    while (in >> tok) {
        if (tok == "-") continue;
        if (auto s = a.find(tok)) {
            out.push_back(*s);
            continue;
        }
        if (!compact) throw Error(ErrorCode::Parse, "unknown symbol '" + tok + "'");
        for (char c : tok) {
            auto s = a.find(std::string_view(&c, 1));
            if (!s) throw Error(ErrorCode::Parse, "unknown symbol '" + std::string(1, c) + "'");
            out.push_back(*s);
        }
    }
    return out;
}

// ---- SourceDist -----------------------------------------------------------

SourceDist::SourceDist(Alphabet alphabet, std::vector<Rational> probs)
    : alphabet_(std::move(alphabet)), probs_(std::move(probs)) {
    if (alphabet_.size() < 2) throw Error(ErrorCode::Semantic, "a source needs at least two symbols");
    if (probs_.size() != alphabet_.size())
        throw Error(ErrorCode::Semantic, "probability count does not match alphabet size");
    Rational sum = 0;
    for (std::size_t s = 0; s < probs_.size(); ++s) {
        if (probs_[s] <= 0)
            throw Error(ErrorCode::Semantic, "probability of '" + alphabet_.names()[s] + "' must be positive");
        sum += probs_[s];
    }
    if (sum != 1) throw Error(ErrorCode::Semantic, "probabilities sum to " + to_string(sum) + ", not 1");
}

SourceDist SourceDist::from_doubles(Alphabet alphabet, const std::vector<double>& probs) {
    double total = 0;
    for (double p : probs) total += p;
    if (std::abs(total - 1.0) > 1e-12) throw Error(ErrorCode::Semantic, "probabilities do not sum to 1");
    std::vector<Rational> r;
    for (double p : probs) r.push_back(rational_from_double(p));
    return SourceDist(std::move(alphabet), std::move(r));
}

// ---- CodeTuple ------------------------------------------------------------

CodeTuple::CodeTuple(Alphabet alphabet, std::vector<CodeTable> tables)
    : alphabet_(std::move(alphabet)), tables_(std::move(tables)) {
    if (alphabet_.size() < 2) throw Error(ErrorCode::Semantic, "a code-tuple needs at least two source symbols");
    if (tables_.empty()) throw Error(ErrorCode::Semantic, "a code-tuple needs at least one table");
    for (std::size_t i = 0; i < tables_.size(); ++i) {
        const auto& t = tables_[i];
        if (t.code.size() != sigma() || t.next.size() != sigma())
            throw Error(ErrorCode::Semantic, "table " + std::to_string(i) + " is not total over the alphabet");
        for (std::size_t s = 0; s < sigma(); ++s)
            if (t.next[s] >= tables_.size())
                throw Error(ErrorCode::Semantic, "table " + std::to_string(i) + " symbol '" + alphabet_.names()[s] +
                                                     "' points to table " + std::to_string(t.next[s]) +
                                                     " but there are only " + std::to_string(tables_.size()));
    }
}

std::size_t CodeTuple::max_codeword_length() const {
    std::size_t m = 0;
    for (const auto& t : tables_)
        for (const auto& c : t.code) m = std::max(m, c.size());
    return m;
}

void require_same_alphabet(const CodeTuple& F, const SourceDist& mu) {
    if (F.alphabet() != mu.alphabet())
        throw Error(ErrorCode::AlphabetMismatch, "distribution alphabet differs from code-tuple alphabet");
}

// ---- text formats ---------------------------------------------------------

namespace {

struct Line {
    int number;
    std::vector<std::string> words;
};

std::vector<Line> tokenize(std::string_view text) {
    std::vector<Line> out;
    std::istringstream in{std::string(text)};
    std::string raw;
    int n = 0;
    while (std::getline(in, raw)) {
        ++n;
        if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
        std::istringstream ls(raw);
        Line line{n, {}};
        for (std::string w; ls >> w;) line.words.push_back(w);
        if (!line.words.empty()) out.push_back(std::move(line));
    }
    return out;
}

std::size_t parse_index(const std::string& w, int line, const char* what) {
    if (w.empty() || !std::all_of(w.begin(), w.end(), [](char c) { return c >= '0' && c <= '9'; }) || w.size() > 9)
        throw Error(ErrorCode::Parse, std::string("expected a non-negative integer for ") + what + ", got '" + w + "'",
                    line);
    return std::stoul(w);
}

}  // namespace

CodeTuple parse_code_tuple(std::string_view text) {
    auto lines = tokenize(text);
    std::size_t pos = 0;
    auto expect = [&](const char* kw) -> const Line& {
        if (pos >= lines.size()) throw Error(ErrorCode::Parse, std::string("unexpected end of input, expected '") + kw + "'");
        const Line& l = lines[pos];
        if (l.words[0] != kw)
            throw Error(ErrorCode::Parse, std::string("expected '") + kw + "', got '" + l.words[0] + "'", l.number);
        ++pos;
        return l;
    };

    const Line& al = expect("alphabet");
    std::vector<std::string> names(al.words.begin() + 1, al.words.end());
    Alphabet alphabet;
    try {
        alphabet = Alphabet(names);
    } catch (const Error& e) {
        throw Error(ErrorCode::Semantic, e.what(), al.number);
    }
    if (alphabet.size() < 2) throw Error(ErrorCode::Semantic, "alphabet needs at least two symbols", al.number);

    const Line& tl = expect("tables");
    if (tl.words.size() != 2) throw Error(ErrorCode::Parse, "expected 'tables <m>'", tl.number);
    std::size_t m = parse_index(tl.words[1], tl.number, "table count");
    if (m == 0) throw Error(ErrorCode::Semantic, "table count must be at least 1", tl.number);

    const std::size_t sigma = alphabet.size();
    std::vector<CodeTable> tables;
    for (std::size_t i = 0; i < m; ++i) {
        const Line& hl = expect("table");
        if (hl.words.size() != 2) throw Error(ErrorCode::Parse, "expected 'table <i>'", hl.number);
        if (parse_index(hl.words[1], hl.number, "table index") != i)
            throw Error(ErrorCode::Semantic, "tables must appear in order; expected 'table " + std::to_string(i) + "'",
                        hl.number);
        CodeTable t{std::vector<BitSeq>(sigma), std::vector<std::size_t>(sigma)};
        std::vector<bool> seen(sigma, false);
        while (pos < lines.size() && lines[pos].words[0] != "table") {
            const Line& row = lines[pos++];
            if (row.words.size() != 3)
                throw Error(ErrorCode::Parse, "expected '<symbol> <bits> <next-table>'", row.number);
            auto s = alphabet.find(row.words[0]);
            if (!s) throw Error(ErrorCode::Semantic, "unknown symbol '" + row.words[0] + "'", row.number);
            if (seen[s->id]) throw Error(ErrorCode::Semantic, "duplicate row for symbol '" + row.words[0] + "'", row.number);
            seen[s->id] = true;
            try {
                t.code[s->id] = BitSeq::from_token(row.words[1]);
            } catch (const Error& e) {
                throw Error(ErrorCode::Parse, e.what(), row.number);
            }
            t.next[s->id] = parse_index(row.words[2], row.number, "next table");
            if (t.next[s->id] >= m)
                throw Error(ErrorCode::Semantic,
                            "next table " + row.words[2] + " out of range (tables " + std::to_string(m) + ")",
                            row.number);
        }
        for (std::size_t s = 0; s < sigma; ++s)
            if (!seen[s])
                throw Error(ErrorCode::Semantic, "table " + std::to_string(i) + " has no row for symbol '" +
                                                     alphabet.names()[s] + "'", hl.number);
        tables.push_back(std::move(t));
    }
    if (pos < lines.size())
        throw Error(ErrorCode::Semantic, "more table sections than declared", lines[pos].number);
    return CodeTuple(std::move(alphabet), std::move(tables));
}

std::string serialize_code_tuple(const CodeTuple& F) {
    std::ostringstream out;
    out << "alphabet";
    for (const auto& n : F.alphabet().names()) out << ' ' << n;
    out << "\ntables " << F.size() << '\n';
    for (std::size_t i = 0; i < F.size(); ++i) {
        out << "table " << i << '\n';
        for (auto s : symbols(F.sigma()))
            out << F.alphabet().name(s) << ' ' << F.f(i, s).token() << ' ' << F.tau(i, s) << '\n';
    }
    return out.str();
}

namespace {

std::vector<std::pair<std::string, std::pair<Rational, int>>> dist_rows(std::string_view text) {
    std::vector<std::pair<std::string, std::pair<Rational, int>>> rows;
    for (const auto& l : tokenize(text)) {
        if (l.words.size() != 2) throw Error(ErrorCode::Parse, "expected '<symbol> <probability>'", l.number);
        Rational p;
        try {
            p = parse_rational(l.words[1]);
        } catch (const Error& e) {
            throw Error(ErrorCode::Parse, e.what(), l.number);
        }
        if (p <= 0) throw Error(ErrorCode::Semantic, "probability must be positive", l.number);
        rows.push_back({l.words[0], {p, l.number}});
    }
    return rows;
}

}  // namespace

SourceDist parse_distribution(std::string_view text) {
    std::vector<std::string> names;
    std::vector<Rational> probs;
    for (auto& [name, pv] : dist_rows(text)) {
        if (std::find(names.begin(), names.end(), name) != names.end())
            throw Error(ErrorCode::Semantic, "duplicate symbol '" + name + "'", pv.second);
        names.push_back(name);
        probs.push_back(pv.first);
    }
    return SourceDist(Alphabet(std::move(names)), std::move(probs));
}

SourceDist parse_distribution(std::string_view text, const Alphabet& alphabet) {
    std::vector<Rational> probs(alphabet.size());
    std::vector<bool> seen(alphabet.size(), false);
    for (auto& [name, pv] : dist_rows(text)) {
        auto s = alphabet.find(name);
        if (!s) throw Error(ErrorCode::Semantic, "unknown symbol '" + name + "'", pv.second);
        if (seen[s->id]) throw Error(ErrorCode::Semantic, "duplicate symbol '" + name + "'", pv.second);
        seen[s->id] = true;
        probs[s->id] = pv.first;
    }
    for (std::size_t s = 0; s < alphabet.size(); ++s)
        if (!seen[s]) throw Error(ErrorCode::Semantic, "no probability for symbol '" + alphabet.names()[s] + "'");
    return SourceDist(alphabet, std::move(probs));
}

std::string serialize_distribution(const SourceDist& mu) {
    std::string out;
    for (auto s : symbols(mu.size())) out += mu.alphabet().name(s) + " " + to_string(mu(s)) + "\n";
    return out;
}

}  // namespace aifv
