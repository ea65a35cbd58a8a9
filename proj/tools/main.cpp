// sievelab command line: every subcommand reads parameters, runs one job,
// and prints a single JSON document (or CSV table) on stdout. stdout is a
// pure function of the parameters for every subcommand; wall-clock timing
// appears only behind --timings and goes to the report and stderr.
//
// Exit codes: 0 success, 1 violated invariant or internal failure, 2 usage
// error or refused resource budget.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sievelab/fourier.hpp"
#include "sievelab/majorant.hpp"
#include "sievelab/pipeline.hpp"
#include "sievelab/plan.hpp"
#include "sievelab/primes.hpp"
#include "sievelab/quad_probe.hpp"
#include "sievelab/report.hpp"
#include "sievelab/rng.hpp"
#include "sievelab/sieve.hpp"
#include "sievelab/threads.hpp"
#include "sievelab/tuple_counts.hpp"

namespace {

using nlohmann::json;
using namespace sievelab;

constexpr double kPi = 3.141592653589793238462643383279502884;

// ---------------------------------------------------------------------
// Config overlay: --config names a JSON object whose keys are long option
// names without the leading dashes. A config value applies only when the
// option was not given on the command line; explicit flags always win.

struct Binding {
    const CLI::App* cmd;
    std::string key;
    const CLI::Option* opt;
    std::function<void(const json&)> apply;
};

std::vector<Binding>& bindings() {
    static std::vector<Binding> b;
    return b;
}

template <class T>
CLI::Option* bind_option(CLI::App* cmd, const std::string& name, T& var,
                         const std::string& desc) {
    CLI::Option* opt = cmd->add_option(name, var, desc);
    bindings().push_back(
        {cmd, name.substr(2), opt, [&var](const json& v) { var = v.get<T>(); }});
    return opt;
}

CLI::Option* bind_flag(CLI::App* cmd, const std::string& name, bool& var,
                       const std::string& desc) {
    CLI::Option* opt = cmd->add_flag(name, var, desc);
    bindings().push_back(
        {cmd, name.substr(2), opt, [&var](const json& v) { var = v.get<bool>(); }});
    return opt;
}

void apply_config(const CLI::App* active, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path);
    json cfg = json::parse(in);
    if (!cfg.is_object())
        throw std::invalid_argument("config: top level must be a JSON object");
    for (const auto& item : cfg.items()) {
        const Binding* hit = nullptr;
        for (const auto& b : bindings())
            if (b.cmd == active && b.key == item.key()) { hit = &b; break; }
        if (!hit)
            throw std::invalid_argument("config: unknown key '" + item.key() +
                                        "' for subcommand " + active->get_name());
        if (hit->opt->count() == 0) hit->apply(item.value());
    }
}

// ---------------------------------------------------------------------
// Shared option groups.

struct Common {
    std::string out = "json";
    unsigned threads = 0;
    bool timings = false;
    std::string config_path;
};

void add_common(CLI::App* cmd, Common& c) {
    bind_option(cmd, "--out", c.out, "Output format: json or csv");
    bind_option(cmd, "--threads", c.threads,
                "Worker threads (0 = library default); never changes output");
    bind_flag(cmd, "--timings", c.timings,
              "Include wall-clock timing in the report and on stderr");
    cmd->add_option("--config", c.config_path,
                    "JSON object with defaults for this subcommand; "
                    "explicit flags win");
}

struct StrategyOpts {
    std::string name = "middle-half";
    uint64_t seed = 0;
    std::string c;
};

void add_strategy(CLI::App* cmd, StrategyOpts& s) {
    bind_option(cmd, "--strategy", s.name,
                "Residue plan: middle-half | random | fixed-start | qnr");
    bind_option(cmd, "--seed", s.seed, "Seed for the random strategy");
    bind_option(cmd, "--c", s.c,
                "Interval start fraction for fixed-start, e.g. 1/3 or 0.25");
}

uint64_t parse_u64(const std::string& t) {
    if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("not a nonnegative integer: '" + t + "'");
    errno = 0;
    char* end = nullptr;
    unsigned long long v = std::strtoull(t.c_str(), &end, 10);
    if (errno == ERANGE || end != t.c_str() + t.size())
        throw std::invalid_argument("integer out of range: '" + t + "'");
    return v;
}

// "a/b", "0.25", or "3" as an exact nonnegative fraction.
std::pair<uint64_t, uint64_t> parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        uint64_t num = parse_u64(s.substr(0, slash));
        uint64_t den = parse_u64(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator: '" + s + "'");
        return {num, den};
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
        if (fp.empty()) fp = "0";
        if (fp.size() > 18)
            throw std::invalid_argument("too many decimal digits: '" + s + "'");
        uint64_t den = 1;
        for (std::size_t i = 0; i < fp.size(); ++i) den *= 10;
        uint64_t whole = parse_u64(ip.empty() ? "0" : ip);
        uint64_t frac = parse_u64(fp);
        if (whole > (UINT64_MAX - frac) / den)
            throw std::invalid_argument("value out of range: '" + s + "'");
        return {whole * den + frac, den};
    }
    return {parse_u64(s), 1};
}

PlanStrategy make_strategy(const StrategyOpts& s) {
    if (s.name == "middle-half") return PlanStrategy::middle_half();
    if (s.name == "random") return PlanStrategy::random_start(s.seed);
    if (s.name == "qnr") return PlanStrategy::qnr();
    if (s.name == "fixed-start") {
        if (s.c.empty())
            throw std::invalid_argument("fixed-start strategy needs --c");
        auto [num, den] = parse_rational(s.c);
        return PlanStrategy::fixed_start(num, den);
    }
    throw std::invalid_argument("unknown strategy: " + s.name);
}

RationalExponent parse_exponent(const std::string& s) {
    auto [num, den] = parse_rational(s);
    if (num == 0) throw std::invalid_argument("--e: exponent must be positive");
    return {num, den};
}

enum class Fmt { json_doc, csv_table };

Fmt parse_fmt(const std::string& s) {
    if (s == "json") return Fmt::json_doc;
    if (s == "csv") return Fmt::csv_table;
    throw std::invalid_argument("unknown output format: " + s);
}

void emit(const std::string& s) { std::fwrite(s.data(), 1, s.size(), stdout); }

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                             t0).count();
    }
};

// Runs at the top of every handler: config overlay, thread count, format.
Fmt prologue(const CLI::App* cmd, const Common& c) {
    if (!c.config_path.empty()) apply_config(cmd, c.config_path);
    set_thread_count(c.threads);
    return parse_fmt(c.out);
}

void stderr_timing(const Common& c, const Timer& t) {
    if (c.timings) std::fprintf(stderr, "elapsed: %.3fs\n", t.seconds());
}

int guard(const std::function<int()>& fn) {
    try {
        return fn();
    } catch (const SeparationViolation& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const ResourceCapError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const json::exception& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"sievelab: a laboratory for interval sieves, residue "
                 "exponential sums, reciprocal-sum collisions, and "
                 "band-limited majorants"};
    app.require_subcommand(1);
    std::vector<std::pair<CLI::App*, std::function<int()>>> handlers;

    // ---- primes ----
    struct {
        Common common;
        uint64_t limit = 0;
    } primes_o;
    {
        CLI::App* cmd = app.add_subcommand("primes", "List primes up to a bound");
        bind_option(cmd, "--limit", primes_o.limit,
                    "Upper bound, inclusive (required)");
        add_common(cmd, primes_o.common);
        handlers.emplace_back(cmd, [cmd, &primes_o]() {
            Fmt fmt = prologue(cmd, primes_o.common);
            if (primes_o.limit == 0)
                throw std::invalid_argument("primes: --limit is required");
            Timer t;
            auto ps = enumerate_primes(primes_o.limit);
            if (fmt == Fmt::csv_table) {
                emit(csv_primes(ps));
            } else {
                Json payload = Json::object();
                payload.set("limit", primes_o.limit);
                payload.set("count", static_cast<uint64_t>(ps.size()));
                Json arr = Json::array();
                for (uint64_t p : ps) arr.push(p);
                payload.set("primes", std::move(arr));
                emit(document("primes", std::move(payload)).dump());
            }
            stderr_timing(primes_o.common, t);
            return 0;
        });
    }

    // ---- sieve ----
    struct {
        Common common;
        StrategyOpts strat;
        uint64_t n = 0;
        bool members = false;
        bool show_plan = false;
        bool residues = false;
        bool serial = false;
        int64_t quad_probe = -1;
    } sieve_o;
    {
        CLI::App* cmd = app.add_subcommand(
            "sieve", "Sieve [1, n] by one residue set per odd prime <= sqrt(n)");
        bind_option(cmd, "--n", sieve_o.n, "Sieve range limit (required)");
        add_strategy(cmd, sieve_o.strat);
        bind_flag(cmd, "--members", sieve_o.members,
                  "Include the survivor list in the JSON report");
        bind_flag(cmd, "--show-plan", sieve_o.show_plan,
                  "Include the residue plan in the JSON report");
        bind_flag(cmd, "--residues", sieve_o.residues,
                  "With --show-plan, list each prime's residues");
        bind_flag(cmd, "--serial", sieve_o.serial,
                  "Run the single-thread reference kernel");
        bind_option(cmd, "--quad-probe", sieve_o.quad_probe,
                    "Probe whether survivors look like consecutive values of "
                    "one quadratic, allowing up to this many outliers "
                    "(heuristic; JSON only)");
        add_common(cmd, sieve_o.common);
        handlers.emplace_back(cmd, [cmd, &sieve_o]() {
            Fmt fmt = prologue(cmd, sieve_o.common);
            if (sieve_o.n == 0)
                throw std::invalid_argument("sieve: --n is required");
            Timer t;
            PlanStrategy strat = make_strategy(sieve_o.strat);
            SievePlan plan = make_plan(sieve_o.n, strat);
            SurvivorSet a = sieve_o.serial ? sieve_serial(plan) : sieve(plan);
            QuadProbeResult probe;
            if (sieve_o.quad_probe >= 0)
                probe = quadratic_cover_check(
                    a.members(), static_cast<unsigned>(sieve_o.quad_probe));
            if (fmt == Fmt::csv_table) {
                emit(csv_survivors(a));
            } else {
                double nd = static_cast<double>(sieve_o.n);
                double card = static_cast<double>(a.cardinality());
                Json payload = Json::object();
                payload.set("n", sieve_o.n);
                payload.set("strategy", to_json(strat));
                payload.set("survivor_count", a.cardinality());
                payload.set("ratio_cbrt", card / std::cbrt(nd));
                payload.set("ratio_sqrt", card / std::sqrt(nd));
                if (sieve_o.show_plan)
                    payload.set("plan", to_json(plan, sieve_o.residues));
                if (sieve_o.members) {
                    Json arr = Json::array();
                    a.for_each([&](uint64_t v) { arr.push(v); });
                    payload.set("survivors", std::move(arr));
                }
                if (sieve_o.quad_probe >= 0)
                    payload.set("quad_probe", to_json(probe));
                if (sieve_o.common.timings) payload.set("elapsed_s", t.seconds());
                emit(document("sieve", std::move(payload)).dump());
            }
            stderr_timing(sieve_o.common, t);
            return 0;
        });
    }

    // ---- lemma-check ----
    struct {
        Common common;
        StrategyOpts strat;
        uint64_t n = 0;
        double tol = 1e-6;
    } lemma_o;
    {
        CLI::App* cmd = app.add_subcommand(
            "lemma-check",
            "Sieve, then verify |A| <= 2|S_1| + |S_2| at every interval prime");
        bind_option(cmd, "--n", lemma_o.n, "Sieve range limit (required)");
        add_strategy(cmd, lemma_o.strat);
        bind_option(cmd, "--tol", lemma_o.tol, "Additive tolerance");
        add_common(cmd, lemma_o.common);
        handlers.emplace_back(cmd, [cmd, &lemma_o]() {
            Fmt fmt = prologue(cmd, lemma_o.common);
            if (lemma_o.n == 0)
                throw std::invalid_argument("lemma-check: --n is required");
            Timer t;
            PlanStrategy strat = make_strategy(lemma_o.strat);
            SievePlan plan = make_plan(lemma_o.n, strat);
            SurvivorSet a = sieve(plan);
            LemmaReport rep = lemma_check(plan, a, lemma_o.tol);
            if (fmt == Fmt::csv_table) {
                emit(csv_lemma(rep));
            } else {
                Json payload = Json::object();
                payload.set("strategy", to_json(strat));
                payload.merge(to_json(rep));
                if (lemma_o.common.timings) payload.set("elapsed_s", t.seconds());
                emit(document("lemma", std::move(payload)).dump());
            }
            stderr_timing(lemma_o.common, t);
            return rep.all_pass ? 0 : 1;
        });
    }

    // ---- pipeline ----
    struct {
        Common common;
        StrategyOpts strat;
        uint64_t n = 0;
        uint64_t x = 0;
        double tol = 1e-6;
    } pipe_o;
    {
        CLI::App* cmd = app.add_subcommand(
            "pipeline",
            "Plan, sieve, per-prime inequality check, and second-moment rows "
            "at x = floor(n^(1/3))");
        bind_option(cmd, "--n", pipe_o.n, "Sieve range limit, >= 9 (required)");
        add_strategy(cmd, pipe_o.strat);
        bind_option(cmd, "--x", pipe_o.x,
                    "Moment window base (default floor(n^(1/3)))");
        bind_option(cmd, "--tol", pipe_o.tol, "Additive tolerance");
        add_common(cmd, pipe_o.common);
        handlers.emplace_back(cmd, [cmd, &pipe_o]() {
            Fmt fmt = prologue(cmd, pipe_o.common);
            if (pipe_o.n == 0)
                throw std::invalid_argument("pipeline: --n is required");
            Timer t;
            PlanStrategy strat = make_strategy(pipe_o.strat);
            PipelineReport rep =
                run_pipeline(pipe_o.n, strat, pipe_o.tol, pipe_o.x);
            if (fmt == Fmt::csv_table)
                emit(csv_pipeline(rep));
            else
                emit(document("pipeline",
                              to_json(rep, pipe_o.common.timings)).dump());
            stderr_timing(pipe_o.common, t);
            return rep.lemma.all_pass && rep.chain.pass ? 0 : 1;
        });
    }

    // ---- sweep ----
    struct {
        Common common;
        StrategyOpts strat;
        std::vector<uint64_t> ns;
        uint64_t x = 0;
        double tol = 1e-6;
    } sweep_o;
    {
        CLI::App* cmd = app.add_subcommand(
            "sweep", "Run the pipeline over several n; failures are isolated "
                     "per row");
        bind_option(cmd, "--ns", sweep_o.ns,
                    "Comma-separated n values (required)")->delimiter(',');
        add_strategy(cmd, sweep_o.strat);
        bind_option(cmd, "--x", sweep_o.x,
                    "Moment window base (default floor(n^(1/3)) per row)");
        bind_option(cmd, "--tol", sweep_o.tol, "Additive tolerance");
        add_common(cmd, sweep_o.common);
        handlers.emplace_back(cmd, [cmd, &sweep_o]() {
            Fmt fmt = prologue(cmd, sweep_o.common);
            if (sweep_o.ns.empty())
                throw std::invalid_argument("sweep: --ns is required");
            Timer t;
            PlanStrategy strat = make_strategy(sweep_o.strat);
            auto rows = sweep(sweep_o.ns, strat, sweep_o.tol, sweep_o.x);
            if (fmt == Fmt::csv_table) {
                emit(csv_sweep(rows));
            } else {
                Json payload = Json::object();
                payload.set("strategy", to_json(strat));
                payload.set("tol", sweep_o.tol);
                payload.merge(to_json(rows, sweep_o.common.timings));
                emit(document("sweep", std::move(payload)).dump());
            }
            stderr_timing(sweep_o.common, t);
            for (const auto& row : rows)
                if (!row.report || !row.report->lemma.all_pass ||
                    !row.report->chain.pass)
                    return 1;
            return 0;
        });
    }

    // ---- tuples ----
    struct {
        Common common;
        uint64_t x = 0;
        unsigned r = 2;
        std::string e;
        uint64_t mem_cap = 200'000'000;
        bool serial = false;
    } tuples_o;
    {
        CLI::App* cmd = app.add_subcommand(
            "tuples", "Count ordered 2r-tuples in [x, 2x)^2r whose reciprocal "
                      "half-sums differ by at most 1/x^e (exact)");
        bind_option(cmd, "--x", tuples_o.x, "Range base, >= 1 (required)");
        bind_option(cmd, "--r", tuples_o.r, "Half-tuple length, 1..16");
        bind_option(cmd, "--e", tuples_o.e,
                    "Closeness exponent, e.g. 3 or 5/2 (default r+1)");
        bind_option(cmd, "--mem-cap", tuples_o.mem_cap,
                    "Refuse jobs whose half-sum table exceeds this size");
        bind_flag(cmd, "--serial", tuples_o.serial,
                  "Run the single-thread reference kernel");
        add_common(cmd, tuples_o.common);
        handlers.emplace_back(cmd, [cmd, &tuples_o]() {
            Fmt fmt = prologue(cmd, tuples_o.common);
            if (tuples_o.x == 0)
                throw std::invalid_argument("tuples: --x is required");
            TupleCountParams params;
            params.x = tuples_o.x;
            params.r = tuples_o.r;
            if (!tuples_o.e.empty()) params.e = parse_exponent(tuples_o.e);
            params.max_half_sums = tuples_o.mem_cap;
            Timer t;
            TupleCountReport rep = tuples_o.serial
                                       ? count_close_tuples_serial(params)
                                       : count_close_tuples(params);
            if (fmt == Fmt::csv_table)
                emit(csv_tuples(rep));
            else
                emit(document("tuples",
                              to_json(rep, tuples_o.common.timings)).dump());
            stderr_timing(tuples_o.common, t);
            bool ok = rep.count >= rep.equal_pair_count &&
                      rep.equal_pair_count >= rep.diagonal_count &&
                      rep.diagonal_count >= rep.half_sums;
            return ok ? 0 : 1;
        });
    }

    // ---- tuples-oracle ----
    struct {
        Common common;
        uint64_t x = 0;
        unsigned r = 2;
        std::string e;
    } oracle_o;
    {
        CLI::App* cmd = app.add_subcommand(
            "tuples-oracle",
            "Same count by direct 2r-fold enumeration with exact rationals "
            "(small x only)");
        bind_option(cmd, "--x", oracle_o.x, "Range base, >= 1 (required)");
        bind_option(cmd, "--r", oracle_o.r, "Half-tuple length");
        bind_option(cmd, "--e", oracle_o.e,
                    "Closeness exponent (default r+1)");
        add_common(cmd, oracle_o.common);
        handlers.emplace_back(cmd, [cmd, &oracle_o]() {
            Fmt fmt = prologue(cmd, oracle_o.common);
            if (oracle_o.x == 0)
                throw std::invalid_argument("tuples-oracle: --x is required");
            RationalExponent e{oracle_o.r + 1, 1};
            if (!oracle_o.e.empty()) e = parse_exponent(oracle_o.e);
            Timer t;
            uint64_t count = brute_force_close_tuples(oracle_o.x, oracle_o.r, e);
            if (fmt == Fmt::csv_table) {
                emit(csv_tuples_oracle(oracle_o.x, oracle_o.r, e, count));
            } else {
                Json payload = Json::object();
                payload.set("x", oracle_o.x);
                payload.set("r", static_cast<uint64_t>(oracle_o.r));
                payload.set("e", e.str());
                payload.set("count", count);
                payload.set("backend", "exhaustive");
                emit(document("tuples-oracle", std::move(payload)).dump());
            }
            stderr_timing(oracle_o.common, t);
            return 0;
        });
    }

    // ---- tuples-scan ----
    struct {
        Common common;
        std::vector<uint64_t> xs;
        unsigned r = 2;
        std::string e;
        uint64_t mem_cap = 200'000'000;
        bool serial = false;
    } tscan_o;
    {
        CLI::App* cmd = app.add_subcommand(
            "tuples-scan",
            "Count close tuples over several x and fit the growth exponent");
        bind_option(cmd, "--xs", tscan_o.xs,
                    "Comma-separated x values, >= 2 of them (required)")
            ->delimiter(',');
        bind_option(cmd, "--r", tscan_o.r, "Half-tuple length");
        bind_option(cmd, "--e", tscan_o.e,
                    "Closeness exponent (default r+1)");
        bind_option(cmd, "--mem-cap", tscan_o.mem_cap,
                    "Refuse jobs whose half-sum table exceeds this size");
        bind_flag(cmd, "--serial", tscan_o.serial,
                  "Run the single-thread reference kernel");
        add_common(cmd, tscan_o.common);
        handlers.emplace_back(cmd, [cmd, &tscan_o]() {
            Fmt fmt = prologue(cmd, tscan_o.common);
            if (tscan_o.xs.size() < 2)
                throw std::invalid_argument(
                    "tuples-scan: --xs needs at least two values");
            Timer t;
            std::vector<TupleCountReport> reps;
            std::vector<std::pair<double, double>> points;
            for (uint64_t x : tscan_o.xs) {
                TupleCountParams params;
                params.x = x;
                params.r = tscan_o.r;
                if (!tscan_o.e.empty()) params.e = parse_exponent(tscan_o.e);
                params.max_half_sums = tscan_o.mem_cap;
                reps.push_back(tscan_o.serial
                                   ? count_close_tuples_serial(params)
                                   : count_close_tuples(params));
                points.emplace_back(static_cast<double>(x),
                                    static_cast<double>(reps.back().count));
            }
            double slope = exponent_fit(points);
            if (fmt == Fmt::csv_table) {
                emit(csv_tuples_scan(reps, slope));
            } else {
                Json rows = Json::array();
                for (const auto& rep : reps)
                    rows.push(to_json(rep, tscan_o.common.timings));
                Json payload = Json::object();
                payload.set("r", static_cast<uint64_t>(tscan_o.r));
                payload.set("e", reps.front().e.str());
                payload.set("fit_slope", slope);
                payload.set("rows", std::move(rows));
                emit(document("tuples-scan", std::move(payload)).dump());
            }
            stderr_timing(tscan_o.common, t);
            for (const auto& rep : reps) {
                bool ok = rep.count >= rep.equal_pair_count &&
                          rep.equal_pair_count >= rep.diagonal_count &&
                          rep.diagonal_count >= rep.half_sums;
                if (!ok) return 1;
            }
            return 0;
        });
    }

    // ---- expsum ----
    struct {
        Common common;
        uint64_t x = 0;
        std::string xi;
        bool serial = false;
    } expsum_o;
    {
        CLI::App* cmd = app.add_subcommand(
            "expsum", "S(xi) = sum over x <= v < 2x of e(xi/v), phases reduced "
                      "exactly");
        bind_option(cmd, "--x", expsum_o.x, "Range base, >= 1 (required)");
        bind_option(cmd, "--xi", expsum_o.xi,
                    "Nonnegative integer frequency, any size (required)");
        bind_flag(cmd, "--serial", expsum_o.serial,
                  "Run the single-thread reference kernel");
        add_common(cmd, expsum_o.common);
        handlers.emplace_back(cmd, [cmd, &expsum_o]() {
            Fmt fmt = prologue(cmd, expsum_o.common);
            if (expsum_o.x == 0)
                throw std::invalid_argument("expsum: --x is required");
            if (expsum_o.xi.empty())
                throw std::invalid_argument("expsum: --xi is required");
            if (expsum_o.xi.find_first_not_of("0123456789") != std::string::npos)
                throw std::invalid_argument(
                    "expsum: --xi must be a nonnegative integer");
            mpz_class xi(expsum_o.xi);
            Timer t;
            std::complex<double> s =
                expsum_o.serial ? reciprocal_expsum_serial(expsum_o.x, xi)
                                : reciprocal_expsum(expsum_o.x, xi);
            if (fmt == Fmt::csv_table)
                emit(csv_expsum(expsum_o.x, xi, s));
            else
                emit(document("expsum", expsum_json(expsum_o.x, xi, s)).dump());
            stderr_timing(expsum_o.common, t);
            bool ok = std::abs(s) <= static_cast<double>(expsum_o.x) + 1e-9;
            return ok ? 0 : 1;
        });
    }

    // ---- expsum-scan ----
    struct {
        Common common;
        uint64_t x = 0;
        unsigned r = 2;
        uint64_t samples = 1000;
        uint64_t seed = 0;
        bool serial = false;
    } escan_o;
    {
        CLI::App* cmd = app.add_subcommand(
            "expsum-scan",
            "Scan |S(xi)|/sqrt(x) over log-uniform xi in [x^2, x^(r+1)]");
        bind_option(cmd, "--x", escan_o.x, "Range base, >= 1 (required)");
        bind_option(cmd, "--r", escan_o.r, "Exponent range parameter, 1..16");
        bind_option(cmd, "--samples", escan_o.samples, "Number of draws");
        bind_option(cmd, "--seed", escan_o.seed, "Seed for the xi draws");
        bind_flag(cmd, "--serial", escan_o.serial,
                  "Run the single-thread reference kernel");
        add_common(cmd, escan_o.common);
        handlers.emplace_back(cmd, [cmd, &escan_o]() {
            Fmt fmt = prologue(cmd, escan_o.common);
            if (escan_o.x == 0)
                throw std::invalid_argument("expsum-scan: --x is required");
            Timer t;
            SupScanResult res =
                escan_o.serial
                    ? sup_scan_serial(escan_o.x, escan_o.r, escan_o.samples,
                                      escan_o.seed)
                    : sup_scan(escan_o.x, escan_o.r, escan_o.samples,
                               escan_o.seed);
            if (fmt == Fmt::csv_table)
                emit(csv_sup_scan(res));
            else
                emit(document("expsum-scan", to_json(res)).dump());
            stderr_timing(escan_o.common, t);
            bool ok =
                res.max_magnitude <= static_cast<double>(escan_o.x) + 1e-9;
            return ok ? 0 : 1;
        });
    }

    // ---- large-sieve-check ----
    struct {
        Common common;
        uint64_t n = 0;
        unsigned q = 0;
        std::string coeffs = "ones";
        uint64_t seed = 0;
        uint64_t trials = 1;
        double slack = 1e-9;
    } ls_o;
    {
        CLI::App* cmd = app.add_subcommand(
            "large-sieve-check",
            "Check sum_i |sum_n a_n e(n theta_i)|^2 <= (N + 1/delta) * "
            "sum |a_n|^2 on the Farey points of order q");
        bind_option(cmd, "--n", ls_o.n, "Sequence length N, >= 1 (required)");
        bind_option(cmd, "--q", ls_o.q,
                    "Farey order; delta = 1/q^2 (required)");
        bind_option(cmd, "--coeffs", ls_o.coeffs,
                    "Coefficient choice: ones | random");
        bind_option(cmd, "--seed", ls_o.seed, "Seed for random coefficients");
        bind_option(cmd, "--trials", ls_o.trials,
                    "Number of coefficient draws to test");
        bind_option(cmd, "--slack", ls_o.slack,
                    "Accepted ratio excess over 1");
        add_common(cmd, ls_o.common);
        handlers.emplace_back(cmd, [cmd, &ls_o]() {
            Fmt fmt = prologue(cmd, ls_o.common);
            if (ls_o.n == 0)
                throw std::invalid_argument("large-sieve-check: --n is required");
            if (ls_o.q == 0)
                throw std::invalid_argument("large-sieve-check: --q is required");
            if (ls_o.trials == 0)
                throw std::invalid_argument(
                    "large-sieve-check: --trials must be >= 1");
            if (ls_o.coeffs != "ones" && ls_o.coeffs != "random")
                throw std::invalid_argument("unknown coefficient choice: " +
                                            ls_o.coeffs);
            Timer t;
            SeparatedPoints pts = farey_points(ls_o.q);
            DetRng rng(ls_o.seed);
            std::vector<LargeSieveResult> results;
            results.reserve(ls_o.trials);
            std::vector<std::complex<double>> a(ls_o.n);
            bool all_pass = true;
            for (uint64_t trial = 0; trial < ls_o.trials; ++trial) {
                if (ls_o.coeffs == "ones") {
                    for (auto& v : a) v = 1.0;
                } else {
                    for (auto& v : a) {
                        double re = rng.symmetric();
                        double im = rng.symmetric();
                        v = {re, im};
                    }
                }
                results.push_back(large_sieve_check(a, pts));
                all_pass = all_pass &&
                           results.back().ratio <= 1.0 + ls_o.slack;
            }
            if (fmt == Fmt::csv_table) {
                emit(csv_large_sieve(ls_o.n, pts, results, ls_o.slack));
            } else {
                Json payload = Json::object();
                payload.set("q", static_cast<uint64_t>(ls_o.q));
                payload.set("coeffs", ls_o.coeffs);
                if (ls_o.coeffs == "random")
                    payload.set("coeffs_seed", ls_o.seed);
                payload.merge(
                    large_sieve_json(ls_o.n, pts, results, ls_o.slack));
                emit(document("large-sieve", std::move(payload)).dump());
            }
            stderr_timing(ls_o.common, t);
            return all_pass ? 0 : 1;
        });
    }

    // ---- majorant-check ----
    struct {
        Common common;
        uint64_t n = 0;
        double delta = 0;
        uint64_t x = 0;
        unsigned m = 10000;
        uint64_t grid = 10001;
        std::vector<double> xi_factors = {2.0, 10.0};
        double l1_tol = 0.02;
        double grid_tol = 1e-6;
        bool serial = false;
    } maj_o;
    {
        CLI::App* cmd = app.add_subcommand(
            "majorant-check",
            "Validate the band-limited majorant of the indicator of [-N, N]: "
            "grid minorization, L1 mass, transform decay beyond the band");
        bind_option(cmd, "--n", maj_o.n, "Half-width N, >= 1 (required)");
        bind_option(cmd, "--delta", maj_o.delta,
                    "Band limit in cycles (this or --x is required)");
        bind_option(cmd, "--x", maj_o.x,
                    "Convenience: band limit 1/(2 pi x^3) cycles, i.e. "
                    "angular band 1/x^3");
        bind_option(cmd, "--m", maj_o.m, "Series truncation order, >= 1");
        bind_option(cmd, "--grid-points", maj_o.grid,
                    "Grid size for the minorization check");
        bind_option(cmd, "--xi-factors", maj_o.xi_factors,
                    "Decay probes at factor * angular band limit")
            ->delimiter(',');
        bind_option(cmd, "--l1-tol", maj_o.l1_tol,
                    "Accepted relative L1 error");
        bind_option(cmd, "--grid-tol", maj_o.grid_tol,
                    "Accepted grid-minimum shortfall below 1");
        bind_flag(cmd, "--serial", maj_o.serial,
                  "Run the single-thread reference kernels");
        add_common(cmd, maj_o.common);
        handlers.emplace_back(cmd, [cmd, &maj_o]() {
            Fmt fmt = prologue(cmd, maj_o.common);
            if (maj_o.n == 0)
                throw std::invalid_argument("majorant-check: --n is required");
            if (maj_o.x > 0 && maj_o.delta > 0)
                throw std::invalid_argument(
                    "majorant-check: give --delta or --x, not both");
            double delta = maj_o.delta;
            if (maj_o.x > 0) {
                double xd = static_cast<double>(maj_o.x);
                delta = 1.0 / (2.0 * kPi * xd * xd * xd);
            }
            if (delta <= 0)
                throw std::invalid_argument(
                    "majorant-check: --delta or --x is required");
            MajorantSpec spec;
            spec.half_width = maj_o.n;
            spec.band_limit = delta;
            spec.truncation = maj_o.m;
            Timer t;
            L1Report l1 =
                maj_o.serial ? majorant_l1_serial(spec) : majorant_l1(spec);
            std::vector<double> xis;
            for (double f : maj_o.xi_factors)
                xis.push_back(f * spec.band_limit_angular());
            DecayReport decay = transform_decay_check(spec, xis);
            double grid_min = maj_o.serial
                                  ? majorant_grid_min_serial(spec, maj_o.grid)
                                  : majorant_grid_min(spec, maj_o.grid);
            if (fmt == Fmt::csv_table)
                emit(csv_majorant(spec, l1, decay, maj_o.grid, grid_min));
            else
                emit(document("majorant",
                              majorant_json(spec, l1, decay, maj_o.grid,
                                            grid_min, maj_o.l1_tol,
                                            maj_o.grid_tol)).dump());
            stderr_timing(maj_o.common, t);
            bool ok = l1.rel_err <= maj_o.l1_tol && decay.all_ok &&
                      grid_min >= 1.0 - maj_o.grid_tol;
            return ok ? 0 : 1;
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    for (auto& [cmd, fn] : handlers)
        if (cmd->parsed()) return guard(fn);
    std::fprintf(stderr, "error: no subcommand given\n");
    return 2;
}
