#include "cli.hpp"

#include "aifv/analysis.hpp"
#include "aifv/classes.hpp"
#include "aifv/codec.hpp"
#include "aifv/goldens.hpp"
#include "aifv/markov.hpp"
#include "aifv/prefix_sets.hpp"
#include "aifv/search.hpp"
#include "aifv/transforms.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

namespace aifv::cli {

namespace {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream o(path, std::ios::binary);
    if (!o || !(o << text)) throw IoError("cannot write '" + path.string() + "'");
}

// A path, or the name of a built-in tuple (alpha ... kappa).
CodeTuple load_tuple(const std::string& arg) {
    if (!std::filesystem::exists(arg)) {
        const auto& n = goldens::names();
        if (std::find(n.begin(), n.end(), arg) != n.end()) return goldens::tuple(arg);
    }
    return parse_code_tuple(read_file(arg));
}

SourceDist load_dist(const std::string& path, const Alphabet* alphabet) {
    auto text = read_file(path);
    return alphabet ? parse_distribution(text, *alphabet) : parse_distribution(text);
}

std::string yes(bool b) { return b ? "yes" : "no"; }

std::string indices(const std::vector<std::size_t>& v) {
    std::string s = "{";
    for (std::size_t n = 0; n < v.size(); ++n) s += (n ? "," : "") + std::to_string(v[n]);
    return s + "}";
}

std::string seq_or_lambda(const Alphabet& a, const SourceSeq& x) { return x.empty() ? "-" : format_seq(a, x); }

// Non-empty, non-comment lines of a stream.
std::vector<std::string> input_lines(std::istream& in) {
    std::vector<std::string> v;
    std::string line;
    while (std::getline(in, line)) {
        auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos || line[b] == '#') continue;
        auto e = line.find_last_not_of(" \t\r");
        v.push_back(line.substr(b, e - b + 1));
    }
    return v;
}

std::vector<std::string> inputs(const std::string& inline_value, const std::string& file) {
    if (!inline_value.empty()) return {inline_value};
    if (!file.empty()) {
        std::istringstream s(read_file(file));
        return input_lines(s);
    }
    return input_lines(std::cin);
}

void check_table(const CodeTuple& F, std::size_t i) {
    if (i >= F.size())
        throw Error(ErrorCode::Semantic,
                    "table " + std::to_string(i) + " out of range (tables " + std::to_string(F.size()) + ")");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Binary code-tuples with bounded decoding delay", "aifvtool"};
    app.require_subcommand(1, 1);
    app.fallthrough(false);

    std::string tuple_path, dist_path, input, input_file, op = "rotate", target, out_path, filter = "f0",
                                                         prefix_bits, export_dir;
    std::size_t k = 2, start = 0, table = 0, sigma = 2, tables = 2, max_len = 3, trials = 1000, rt_len = 50;
    unsigned threads = 1;
    std::uint64_t seed = 0;
    bool strict = false, roundtrip = false, allow_large = false, compare = false, has_table = false;

    std::function<int()> action;

    auto add_tuple = [&](CLI::App* c) { c->add_option("--tuple", tuple_path, "code-tuple file or built-in name")->required(); };
    auto add_k = [&](CLI::App* c) { c->add_option("--k", k, "lookahead bits")->capture_default_str(); };

    {
        auto* c = app.add_subcommand("check", "extendability, k-bit delay decodability, regularity");
        add_tuple(c);
        add_k(c);
        c->callback([&] {
            action = [&] {
                auto F = load_tuple(tuple_path);
                PrefixSetTable T(F, std::max<std::size_t>(k, PrefixSetTable::default_max_k));
                out << "tables = " << F.size() << '\n';
                out << "extendable = " << yes(is_extendable(T)) << '\n';
                auto rep = is_k_bit_delay_decodable(T, k);
                out << "decodable[k=" << k << "] = " << yes(rep.decodable) << '\n';
                for (const auto& v : rep.violations) out << "violation = " << describe(F, v) << '\n';
                auto R = reachability(F);
                out << "regular = " << yes(!R.members.empty()) << '\n';
                out << "R = " << indices(R.members) << '\n';
                out << "M = " << indices(m_set(T)) << '\n';
                return 0;
            };
        });
    }
    {
        auto* c = app.add_subcommand("classify", "class membership with witnesses");
        add_tuple(c);
        c->add_option("--dist", dist_path, "cross-check regularity against this distribution");
        c->callback([&] {
            action = [&] {
                auto F = load_tuple(tuple_path);
                ClassReport rep;
                if (dist_path.empty()) {
                    rep = classify(F);
                } else {
                    auto mu = load_dist(dist_path, &F.alphabet());
                    rep = classify(F, mu);
                }
                for (auto cls : all_classes) {
                    out << to_string(cls) << " = " << (rep.in(cls) ? "PASS" : "FAIL");
                    if (!rep.in(cls) && !rep.why_not(cls).empty()) out << " (" << rep.why_not(cls) << ')';
                    out << '\n';
                }
                out << "aifv_horizon = " << rep.aifv_horizon << '\n';
                out << "class = " << rep.label() << '\n';
                return 0;
            };
        });
    }
    {
        auto* c = app.add_subcommand("psets", "prefix sets P^k (or conditional sets with --prefix)");
        add_tuple(c);
        add_k(c);
        c->add_option("--table", table, "only this table")->each([&](const std::string&) { has_table = true; });
        c->add_option("--prefix", prefix_bits, "condition on this output prefix b ('-' is the empty string)");
        c->add_flag("--strict", strict, "strict sets P-bar (first codeword extends b strictly)");
        c->callback([&] {
            action = [&] {
                auto F = load_tuple(tuple_path);
                PrefixSetTable T(F, std::max<std::size_t>(k, PrefixSetTable::default_max_k));
                const bool conditional = !prefix_bits.empty() || strict;
                const BitSeq b = prefix_bits.empty() ? BitSeq{} : BitSeq::from_token(prefix_bits);
                for (std::size_t i = 0; i < F.size(); ++i) {
                    if (has_table && i != table) continue;
                    if (!conditional) {
                        out << 'P' << k << '[' << i << "]=" << format_set(T.base(i, k)) << '\n';
                    } else {
                        auto set = strict ? T.p_bar_set(i, b, k) : T.p_set(i, b, k);
                        out << (strict ? "Pbar" : "P") << k << '[' << i << "](" << b.token() << ")=" << format_set(set)
                            << '\n';
                    }
                }
                if (has_table) check_table(F, table);
                return 0;
            };
        });
    }
    {
        auto* c = app.add_subcommand("encode", "encode source sequences (one per line, or --input)");
        add_tuple(c);
        c->add_option("--start", start, "initial table")->capture_default_str();
        c->add_option("--input", input, "a source sequence ('-' is the empty sequence)");
        c->add_option("--file", input_file, "file of source sequences, one per line");
        c->callback([&] {
            action = [&] {
                auto F = load_tuple(tuple_path);
                check_table(F, start);
                for (const auto& line : inputs(input, input_file)) {
                    auto x = line == "-" ? SourceSeq{} : parse_seq(F.alphabet(), line);
                    auto e = f_star(F, start, x);
                    out << "bits = " << e.bits.token() << '\n' << "table = " << e.table << '\n';
                }
                return 0;
            };
        });
    }
    {
        auto* c = app.add_subcommand("decode", "decode bit strings, or run a randomized round trip");
        add_tuple(c);
        add_k(c);
        c->add_option("--start", start, "initial table")->capture_default_str();
        c->add_option("--input", input, "a bit string ('-' is empty)");
        c->add_option("--file", input_file, "file of bit strings, one per line");
        c->add_flag("--roundtrip", roundtrip, "encode random sequences and decode them back");
        auto* s = c->add_option("--seed", seed, "random seed (required with --roundtrip)");
        c->add_option("--trials", trials, "round-trip trials")->capture_default_str();
        c->add_option("--max-len", rt_len, "longest random sequence")->capture_default_str();
        c->callback([&, s] {
            if (roundtrip && s->count() == 0) throw CLI::RequiredError("--seed is required with --roundtrip");
            action = [&] {
                auto F = load_tuple(tuple_path);
                check_table(F, start);
                if (roundtrip) {
                    auto rep = roundtrip_check(F, k, trials, rt_len, seed);
                    out << "trials = " << rep.trials << '\n'
                        << "max_delay = " << rep.max_delay << '\n'
                        << "failures = " << rep.failures.size() << '\n';
                    for (std::size_t n = 0; n < rep.failures.size() && n < 10; ++n) {
                        const auto& f = rep.failures[n];
                        out << "failure = start " << f.start << " x " << seq_or_lambda(F.alphabet(), f.x) << ": "
                            << f.reason << '\n';
                    }
                    return rep.failures.empty() ? 0 : 1;
                }
                auto T = std::make_shared<const PrefixSetTable>(F, std::max<std::size_t>(k, PrefixSetTable::default_max_k));
                for (const auto& line : inputs(input, input_file)) {
                    Decoder d(T, start, k);
                    d.feed(BitSeq::from_token(line));
                    auto r = d.finish();
                    std::string syms;
                    for (auto x : r.symbols) syms += (syms.empty() ? "" : " ") + F.alphabet().name(x);
                    out << (syms.empty() ? "-" : syms) << '\n';
                    std::size_t md = 0;
                    for (auto x : r.delays) md = std::max(md, x);
                    out << "max_delay = " << md << '\n';
                    if (r.ambiguous_steps) out << "ambiguous_steps = " << r.ambiguous_steps << '\n';
                    out << "TAIL\n"
                        << "bits = " << r.dangling.tail.token() << '\n'
                        << "table = " << r.dangling.table << '\n'
                        << "resolved = " << yes(r.dangling.resolved()) << '\n';
                    for (const auto& y : r.dangling.completions) out << "completion = " << seq_or_lambda(F.alphabet(), y) << '\n';
                    if (r.dangling.truncated) out << "truncated = yes\n";
                }
                return 0;
            };
        });
    }
    {
        auto* c = app.add_subcommand("transform", "rotate, dot, ddot, or a chain towards a class");
        add_tuple(c);
        c->add_option("--op", op, "rotate|dot|ddot|chain")->check(CLI::IsMember({"rotate", "dot", "ddot", "chain"}));
        c->add_option("--target", target, "f1|f2|f3 (chain only)")->check(CLI::IsMember({"f1", "f2", "f3"}));
        c->add_option("--dist", dist_path, "distribution for the length check (chain; default uniform)");
        c->add_option("--out", out_path, "write the resulting tuple here");
        c->callback([&] {
            if (op == "chain" && target.empty()) throw CLI::RequiredError("--target is required with --op chain");
            action = [&] {
                auto F = load_tuple(tuple_path);
                CodeTuple result = F;
                if (op == "rotate") {
                    result = rotate(F);
                } else if (op == "dot") {
                    result = dot(F);
                } else if (op == "ddot") {
                    result = ddot(F);
                } else {
                    std::optional<SourceDist> mu;
                    if (!dist_path.empty()) {
                        mu.emplace(load_dist(dist_path, &F.alphabet()));
                    } else {
                        std::vector<Rational> p(F.sigma(), Rational(1, static_cast<long>(F.sigma())));
                        mu.emplace(F.alphabet(), p);
                    }
                    auto t = target == "f1" ? ChainTarget::F1 : target == "f2" ? ChainTarget::F2 : ChainTarget::F3;
                    auto trace = chain_to_class(F, *mu, t);
                    for (std::size_t n = 0; n < trace.steps.size(); ++n) {
                        const auto& st = trace.steps[n];
                        out << "[step " << n + 1 << "]\n" << "op = " << st.op << '\n';
                        for (std::size_t i = 0; i < st.values.size(); ++i)
                            out << (st.op == "rotate" ? "d" : "a") << '[' << i << "] = " << st.values[i] << '\n';
                        out << "L = " << to_string(average_length(st.output, *mu)) << '\n';
                        out << serialize_code_tuple(st.output);
                    }
                    out << "steps = " << trace.steps.size() << '\n' << "[result]\n";
                    result = trace.result;
                }
                auto text = serialize_code_tuple(result);
                if (!out_path.empty()) write_file(out_path, text);
                else out << text;
                return 0;
            };
        });
    }
    {
        auto* c = app.add_subcommand("stationary", "transition matrix and stationary distribution");
        add_tuple(c);
        c->add_option("--dist", dist_path, "distribution file")->required();
        c->callback([&] {
            action = [&] {
                auto F = load_tuple(tuple_path);
                auto mu = load_dist(dist_path, &F.alphabet());
                auto Q = transition_matrix(F, mu);
                for (Eigen::Index i = 0; i < Q.rows(); ++i) {
                    out << "Q[" << i << "] =";
                    for (Eigen::Index j = 0; j < Q.cols(); ++j) out << ' ' << to_string(Q(i, j));
                    out << '\n';
                }
                auto pi = stationary(F, mu);
                for (Eigen::Index i = 0; i < pi.size(); ++i) out << "pi[" << i << "] = " << to_string(pi(i)) << '\n';
                return 0;
            };
        });
    }
    {
        auto* c = app.add_subcommand("avglen", "exact average codeword length");
        add_tuple(c);
        c->add_option("--dist", dist_path, "distribution file")->required();
        c->add_flag("--per-table", strict, "also print the per-table lengths");
        c->callback([&] {
            action = [&] {
                auto F = load_tuple(tuple_path);
                auto mu = load_dist(dist_path, &F.alphabet());
                if (strict)
                    for (std::size_t i = 0; i < F.size(); ++i)
                        out << "L[" << i << "] = " << to_string(table_length(F, i, mu)) << '\n';
                auto L = average_length(F, mu);
                out << "L = " << to_string(L) << " ≈ " << format_length(L) << '\n';
                return 0;
            };
        });
    }
    {
        auto* c = app.add_subcommand("search", "exhaustive minimum-length search over a bounded space");
        c->add_option("--sigma", sigma, "alphabet size")->capture_default_str();
        c->add_option("--tables", tables, "at most this many tables (1 or 2)")->capture_default_str();
        c->add_option("--max-len", max_len, "longest codeword")->capture_default_str();
        c->add_option("--filter", filter, "f0|aifv")->check(CLI::IsMember({"f0", "aifv"}))->capture_default_str();
        c->add_option("--dist", dist_path, "distribution file")->required();
        c->add_option("--threads", threads, "worker threads (0: all cores)")->capture_default_str();
        c->add_flag("--allow-large", allow_large, "permit spaces beyond sigma 3 / max-len 4");
        c->callback([&] {
            action = [&] {
                auto mu = load_dist(dist_path, nullptr);
                if (mu.size() != sigma)
                    throw Error(ErrorCode::AlphabetMismatch, "distribution has " + std::to_string(mu.size()) +
                                                                 " symbols but --sigma is " + std::to_string(sigma));
                SearchSpace sp{sigma, tables, max_len, filter == "aifv" ? SearchFilter::Aifv : SearchFilter::F0,
                               threads, allow_large};
                auto r = enumerate_min(sp, mu);
                // the search runs over a letters alphabet; report in the distribution's names
                CodeTuple best(mu.alphabet(), r.best->tables());
                out << serialize_code_tuple(best);
                out << "[stats]\n"
                    << "filter = " << to_string(sp.filter) << '\n'
                    << "examined = " << r.examined << '\n'
                    << "passed = " << r.passed << '\n';
                if (sp.filter == SearchFilter::Aifv) out << "aifv_not_f0 = " << r.aifv_outside_f0 << '\n';
                out << "L = " << to_string(r.L) << " ≈ " << format_length(r.L) << '\n';
                return 0;
            };
        });
    }
    {
        auto* c = app.add_subcommand("huffman", "Huffman baseline, optionally against the best AIFV tuple");
        c->add_option("--dist", dist_path, "distribution file")->required();
        c->add_flag("--compare", compare, "also search for the best AIFV tuple");
        c->add_option("--max-len", max_len, "longest codeword for --compare")->capture_default_str();
        c->add_option("--threads", threads, "worker threads for --compare")->capture_default_str();
        c->add_flag("--allow-large", allow_large, "permit spaces beyond sigma 3 / max-len 4");
        c->callback([&] {
            action = [&] {
                auto mu = load_dist(dist_path, nullptr);
                auto h = huffman_length(mu);
                for (auto s : symbols(mu.size()))
                    out << "length[" << mu.alphabet().name(s) << "] = " << h.lengths[s.id] << '\n';
                out << "L = " << to_string(h.L) << " ≈ " << format_length(h.L) << '\n';
                if (compare) {
                    SearchSpace sp{mu.size(), 2, max_len, SearchFilter::Aifv, threads, allow_large};
                    auto c = compare_aifv_huffman(mu, sp);
                    if (c.aifv_found) {
                        out << "aifv_L = " << to_string(c.aifv_L) << " ≈ " << format_length(c.aifv_L) << '\n';
                        out << "gap = " << to_string(c.gap) << '\n';
                    }
                    if (!c.note.empty()) out << "note = " << c.note << '\n';
                }
                return 0;
            };
        });
    }
    {
        auto* c = app.add_subcommand("goldens", "reproduce the built-in worked examples");
        c->add_option("--export", export_dir, "write the built-in tuples and distribution to this directory");
        c->callback([&] {
            action = [&] {
                if (!export_dir.empty()) {
                    std::filesystem::create_directories(export_dir);
                    for (const auto& n : goldens::names())
                        write_file(std::filesystem::path(export_dir) / (n + ".ct"), goldens::text(n));
                    write_file(std::filesystem::path(export_dir) / "u4.dist",
                               serialize_distribution(goldens::four_symbol_distribution()));
                }
                std::size_t failed = 0;
                auto checks = goldens::run_all();
                for (const auto& ch : checks) {
                    out << (ch.pass ? "PASS " : "FAIL ") << ch.item;
                    if (!ch.pass) out << ": " << ch.detail;
                    out << '\n';
                    failed += !ch.pass;
                }
                out << "passed = " << checks.size() - failed << '/' << checks.size() << '\n';
                return failed ? 1 : 0;
            };
        });
    }

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::Success& e) {
        app.exit(e, out, err);
        return 0;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    try {
        return action();
    } catch (const Error& e) {
        err << "error [" << to_string(e.code()) << "]";
        if (e.line()) err << " line " << e.line();
        err << ": " << e.what() << '\n';
        return 1;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace aifv::cli
