#pragma once

// Command-line front end. run() takes the arguments without the program name
// and returns the process exit code: 0 ok, 1 verification failure (also budget
// overrun and undecidable verdicts), 2 usage or input error.

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "mllrc/mllrc.hpp"

namespace mllrc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;

struct Options {
    std::uint64_t budget = 0;  // 0: default_budget()
    std::string output;

    std::string input;
    std::vector<std::string> inputs;
    std::string spec;
    std::string pyramid;

    std::uint32_t q = 0;
    int n = 0, k = 0, d = 0, r = 0;
    std::optional<int> k_opt_hint, n_override;
    int r1 = 0, r2 = 0, n1 = 0, alpha = 0, j = 0;
    std::vector<std::size_t> positions;
    bool allow_zero_column = false;

    std::string profile;
    std::string oracle = "chain";
    std::string table;
    std::string mode = "loose";
    std::string format = "text";
    std::string expect;
    unsigned jobs = 1;

    std::size_t count = 10000;
    std::uint64_t seed = 1;
    bool any = false;
};

namespace detail {

class VerificationFailed : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline std::string slurp(const std::string& path, std::istream& in) {
    if (path == "-") {
        std::ostringstream os;
        os << in.rdbuf();
        return os.str();
    }
    std::ifstream f(path);
    if (!f) throw ParseError("cannot read '" + path + "'");
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

inline LinearCode load_code(const std::string& path, std::istream& in) {
    std::istringstream is(slurp(path, in));
    return read_code(is);
}

inline KoptOracle make_oracle(const Options& o, std::istream& in) {
    auto table = KoptTable::bundled();
    if (!o.table.empty()) {
        std::istringstream is(slurp(o.table, in));
        read_kopt_table(is, table);
    }
    return KoptOracle(parse_kopt_mode(o.oracle), std::move(table));
}

inline std::uint64_t budget(const Options& o) { return o.budget ? o.budget : default_budget(); }

inline LocalityMode mode(const Options& o) { return o.mode == "strict" ? LocalityMode::strict : LocalityMode::loose; }

inline ReportFormat format(const Options& o) { return o.format == "kv" ? ReportFormat::kv : ReportFormat::text; }

inline std::string format_report(const BoundReport& b) {
    std::ostringstream os;
    os << "bound=" << b.bound << "\n"
       << "value=" << b.value << "\n"
       << "witness=" << format_ints(b.witness) << "\n"
       << "exact=" << (b.exact ? "true" : "false") << "\n"
       << "collapse=" << (b.collapse_applied ? "true" : "false") << "\n"
       << "oracle=" << b.oracle_mode << "\n";
    return os.str();
}

/// Repair groups of size r2+1; r2 defaults to the largest locality present.
inline std::vector<std::vector<std::size_t>> groups_for(const LinearCode& base, int r2, std::uint64_t budget) {
    if (r2 <= 0) r2 = locality_profile(base, budget).classes.back().r;
    return detect_repair_groups(base, static_cast<std::size_t>(r2 + 1));
}

/// Runs fn(i) for i in [0, count) on up to jobs threads; results keep input
/// order and the first failure (by index) is rethrown.
template <class Fn>
std::vector<std::string> parallel_map(std::size_t count, unsigned jobs, Fn fn) {
    std::vector<std::string> out(count);
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t i; (i = next.fetch_add(1)) < count;) {
            try {
                out[i] = fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const auto threads = std::min<std::size_t>(std::max(1u, jobs), count);
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

inline std::string check_expectation(const Certificate& c, const std::string& expect, const std::string& label) {
    if (expect.empty()) return {};
    if (expect == "singleton") {
        if (!c.singleton_optimal) return label + "not Singleton-optimal";
        return {};
    }
    if (c.alphabet == Verdict::unknown)
        throw InexactOracle(label + "alphabet verdict needs exact k_opt values; try --table or --oracle exhaustive");
    if (!c.alphabet_optimal()) return label + "not alphabet-optimal (" + to_string(c.alphabet) + ")";
    return {};
}

inline void add_oracle_options(CLI::App* app, Options& o) {
    app->add_option("--oracle", o.oracle, "k_opt oracle mode")
        ->check(CLI::IsMember({"chain", "table", "exhaustive", "analytic", "singleton"}));
    app->add_option("--table", o.table, "extra k_opt table file (q n d k provenance)");
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in = std::cin) {
    Options o;
    CLI::App app{"Multiple-locality LRC constructions, bounds and certificates", "mllrc"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--budget", o.budget, "codeword enumeration budget (q^k limit)")->check(CLI::PositiveNumber);
    app.add_option("-o,--output", o.output, "write the result here instead of stdout");

    std::string result;
    int status = kExitOk;
    auto emit = [&](const std::string& s) { result += s; };

    // construct -----------------------------------------------------------
    auto* construct = app.add_subcommand("construct", "build a code and emit it as a code file");
    construct->require_subcommand(1);

    auto* tb = construct->add_subcommand("tamo-barg", "optimal r-local code from polynomial evaluation");
    tb->add_option("--q", o.q, "field order")->required();
    tb->add_option("--n", o.n, "length")->required();
    tb->add_option("--k", o.k, "dimension")->required();
    tb->add_option("--r", o.r, "locality")->required();
    tb->callback([&]() { emit(code_to_string(tamo_barg(o.q, o.n, o.k, o.r))); });

    auto* g2 = construct->add_subcommand("gcc2", "binary LRC from a two-level concatenation");
    g2->add_option("--r", o.r, "locality (odd)")->required();
    g2->add_option("--j", o.j, "outer dimension reduction")->required();
    g2->callback([&]() { emit(code_to_string(construction2_binary_lrc(o.r, o.j))); });

    auto* pyr = construct->add_subcommand("pyramid", "Pyramid code from a spec file");
    pyr->add_option("--spec", o.spec, "pyramid spec file")->required();
    pyr->callback([&]() {
        std::istringstream is(detail::slurp(o.spec, in));
        emit(code_to_string(ml_pyramid(read_pyramid_spec(is))));
    });

    auto* gcc = construct->add_subcommand("gcc", "generalized concatenated code from a spec file");
    gcc->add_option("--spec", o.spec, "GCC spec file")->required();
    gcc->callback([&]() {
        std::istringstream is(detail::slurp(o.spec, in));
        emit(code_to_string(gcc_generator(read_gcc_spec(is))));
    });

    auto* alg1 = construct->add_subcommand("alg1", "two localities by shortening inside repair groups (by n1)");
    alg1->add_option("--input", o.input, "base code file")->required();
    alg1->add_option("--r1", o.r1, "small locality")->required();
    alg1->add_option("--n1", o.n1, "size of the small-locality class")->required();
    alg1->add_option("--r2", o.r2, "base locality (default: largest present)");
    alg1->callback([&]() {
        const auto base = detail::load_code(o.input, in);
        emit(code_to_string(algorithm1_ml_lrc(base, detail::groups_for(base, o.r2, detail::budget(o)), o.r1, o.n1)));
    });

    auto* alg3 = construct->add_subcommand("alg3", "two localities by shortening inside repair groups (by alpha)");
    alg3->add_option("--input", o.input, "base code file")->required();
    alg3->add_option("--r1", o.r1, "small locality")->required();
    alg3->add_option("--alpha", o.alpha, "number of groups touched")->required();
    alg3->add_option("--r2", o.r2, "base locality (default: largest present)");
    alg3->callback([&]() {
        const auto base = detail::load_code(o.input, in);
        emit(code_to_string(
            algorithm3_ml_lrc(base, detail::groups_for(base, o.r2, detail::budget(o)), o.r1, o.alpha)));
    });

    // shorten ----------------------------------------------------------------
    auto* sh = app.add_subcommand("shorten", "shorten a code at 0-based positions");
    sh->add_option("--input", o.input, "code file ('-' for stdin)")->required();
    sh->add_option("--pos", o.positions, "positions to shorten")->required();
    sh->add_flag("--allow-zero-column", o.allow_zero_column, "drop zero columns without losing dimension");
    sh->callback([&]() {
        emit(code_to_string(detail::load_code(o.input, in).shorten_set(o.positions, o.allow_zero_column)));
    });

    // analyze ----------------------------------------------------------------
    auto* an = app.add_subcommand("analyze", "parameters, profile, repair sets and bounds of a code");
    an->add_option("--input", o.input, "code file ('-' for stdin)")->required();
    detail::add_oracle_options(an, o);
    an->add_option("--mode", o.mode)->check(CLI::IsMember({"loose", "strict"}));
    an->add_option("--format", o.format)->check(CLI::IsMember({"text", "kv"}));
    an->callback([&]() {
        const auto code = detail::load_code(o.input, in);
        emit(full_analysis(code, detail::make_oracle(o, in), detail::mode(o), detail::format(o), detail::budget(o)));
    });

    // bound ------------------------------------------------------------------
    auto* bound = app.add_subcommand("bound", "evaluate a bound");
    bound->require_subcommand(1);

    auto* bs = bound->add_subcommand("singleton", "d <= n - k + 2 - ceil(k/r)");
    bs->add_option("--n", o.n)->required();
    bs->add_option("--k", o.k)->required();
    bs->add_option("--r", o.r)->required();
    bs->callback([&]() {
        BoundReport b;
        b.bound = "singleton";
        b.oracle_mode = "none";
        b.value = singleton_r_local(o.n, o.k, o.r);
        emit(detail::format_report(b));
    });

    auto* bc = bound->add_subcommand("cm", "alphabet-dependent bound for one locality");
    bc->add_option("--n", o.n)->required();
    bc->add_option("--d", o.d)->required();
    bc->add_option("--r", o.r)->required();
    bc->add_option("--q", o.q)->required();
    bc->add_option("--k", o.k_opt_hint, "dimension hint limiting t");
    detail::add_oracle_options(bc, o);
    bc->callback([&]() {
        emit(detail::format_report(cm_bound(o.n, o.d, o.r, o.q, detail::make_oracle(o, in), o.k_opt_hint)));
    });

    auto* bms = bound->add_subcommand("ml-singleton", "Singleton-type bound for a locality profile");
    bms->add_option("--profile", o.profile, "\"(n1,r1),(n2,r2),...\"")->required();
    bms->add_option("--k", o.k)->required();
    bms->add_option("--n", o.n_override, "length (default: sum of class sizes)");
    bms->callback([&]() { emit(detail::format_report(ml_singleton(parse_profile(o.profile), o.k, o.n_override))); });

    auto* bma = bound->add_subcommand("ml-alphabet", "alphabet-dependent bound for a locality profile");
    bma->add_option("--profile", o.profile, "\"(n1,r1),(n2,r2),...\"")->required();
    bma->add_option("--d", o.d)->required();
    bma->add_option("--q", o.q)->required();
    bma->add_option("--k", o.k_opt_hint, "dimension hint limiting the last t");
    detail::add_oracle_options(bma, o);
    bma->callback([&]() {
        emit(detail::format_report(
            ml_alphabet(parse_profile(o.profile), o.d, o.q, detail::make_oracle(o, in), o.k_opt_hint)));
    });

    // certify ----------------------------------------------------------------
    auto* cert = app.add_subcommand("certify", "recompute d and profile, then check both bounds");
    cert->add_option("--input", o.inputs, "code files ('-' for stdin)");
    cert->add_option("--pyramid", o.pyramid, "certify a Pyramid spec (information-symbol accounting)");
    detail::add_oracle_options(cert, o);
    cert->add_option("--mode", o.mode)->check(CLI::IsMember({"loose", "strict"}));
    cert->add_option("--format", o.format)->check(CLI::IsMember({"text", "kv"}));
    cert->add_option("--expect-optimal", o.expect, "exit 1 unless optimal")
        ->check(CLI::IsMember({"singleton", "alphabet"}));
    cert->add_option("--jobs", o.jobs, "certify inputs in parallel")->check(CLI::PositiveNumber);
    cert->callback([&]() {
        if (o.inputs.empty() == o.pyramid.empty())
            throw CLI::ValidationError("certify", "give either --input or --pyramid");
        std::vector<std::string> failures;
        if (!o.pyramid.empty()) {
            if (o.expect == "alphabet") throw CLI::ValidationError("certify", "Pyramid certificates are Singleton-only");
            std::istringstream is(detail::slurp(o.pyramid, in));
            const auto c = certify_pyramid(read_pyramid_spec(is), detail::budget(o));
            emit(format_certificate(c, detail::format(o)));
            if (auto f = detail::check_expectation(c, o.expect, ""); !f.empty()) failures.push_back(f);
        } else {
            const auto oracle = detail::make_oracle(o, in);
            std::vector<LinearCode> codes;
            for (const auto& path : o.inputs) codes.push_back(detail::load_code(path, in));
            std::vector<std::string> fails(codes.size());
            const bool many = codes.size() > 1;
            const auto reports = detail::parallel_map(codes.size(), o.jobs, [&](std::size_t i) {
                const auto c = certify(codes[i], oracle, detail::mode(o), detail::budget(o));
                fails[i] = detail::check_expectation(c, o.expect, many ? o.inputs[i] + ": " : "");
                return format_certificate(c, detail::format(o));
            });
            for (std::size_t i = 0; i < reports.size(); ++i) {
                if (many) emit((detail::format(o) == ReportFormat::kv ? "file=" : "== ") + o.inputs[i] + "\n");
                emit(reports[i]);
                if (!fails[i].empty()) failures.push_back(fails[i]);
            }
        }
        if (!failures.empty()) {
            std::string msg;
            for (const auto& f : failures) msg += (msg.empty() ? "" : "; ") + f;
            throw detail::VerificationFailed(msg);
        }
    });

    // sweep ------------------------------------------------------------------
    auto* sweep = app.add_subcommand("sweep", "randomized property sweeps");
    sweep->require_subcommand(1);
    auto* dom = sweep->add_subcommand("dominance", "Singleton-violating tuples must fail the alphabet bound");
    dom->add_option("--count", o.count, "number of tuples")->check(CLI::PositiveNumber);
    dom->add_option("--seed", o.seed, "RNG seed");
    dom->add_flag("--any", o.any, "drop the no-collapse and whole-group hypotheses");
    dom->callback([&]() {
        const auto s = sweep_dominance(o.count, o.seed, !o.any);
        std::ostringstream os;
        os << "tuples=" << s.tuples << "\nsingleton_violating=" << s.singleton_violating << "\nfailures=" << s.failures
           << "\n";
        for (const auto& f : s.failed) os << "failed: " << f << "\n";
        emit(os.str());
        if (s.failures) throw detail::VerificationFailed(std::to_string(s.failures) + " dominance failures");
    });

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        try {
            app.parse(rev);
        } catch (const detail::VerificationFailed& e) {
            err << "verification failed: " << e.what() << "\n";
            status = kExitFailed;
        }
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const BudgetExceeded& e) {
        err << e.what() << "\n";
        return kExitFailed;
    } catch (const InexactOracle& e) {
        err << e.what() << "\n";
        return kExitFailed;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return kExitUsage;
    }

    if (!o.output.empty()) {
        std::ofstream f(o.output);
        if (!f) {
            err << "cannot write '" << o.output << "'\n";
            return kExitUsage;
        }
        f << result;
    } else {
        out << result;
    }
    return status;
}

}  // namespace mllrc::cli
