// erg: generate instances, run testers and estimators, run the exact oracles.
#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "erg/avg_degree.hpp"
#include "erg/connectedness.hpp"
#include "erg/exact.hpp"
#include "erg/instance_gen.hpp"
#include "erg/peg_io.hpp"
#include "erg/report.hpp"
#include "erg/rng.hpp"

namespace {

using nlohmann::ordered_json;
using namespace erg;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

struct FamilyOptions {
    std::string family;
    std::string eps = "1/7";
    std::string alpha = "0";
    std::size_t k = 4;
    std::size_t n = 100;
    std::size_t m = 0;
    std::size_t max_degree = 0;
    double davg = 2.0;
    std::string strategy = "uniform";
    std::size_t copies = 1;
    std::size_t big = 16;
    std::vector<std::size_t> lengths;
};

void add_family_options(CLI::App* cmd, FamilyOptions& f) {
    cmd->add_option("--family", f.family,
                    "gplus | gminus | g1 | g2 | fig1 | fig2 | far-forest | cycles | regularish | gnm");
    cmd->add_option("--eps", f.eps, "eps as p/q or decimal");
    cmd->add_option("--alpha", f.alpha, "alpha as p/q or decimal");
    cmd->add_option("--k", f.k, "number of cycles (gplus, gminus)");
    cmd->add_option("--n", f.n, "number of vertices");
    cmd->add_option("--m", f.m, "number of edges (gnm)");
    cmd->add_option("--max-degree", f.max_degree, "degree bound (gnm; 0 = none)");
    cmd->add_option("--davg", f.davg, "target average degree (far-forest, regularish)");
    cmd->add_option("--strategy", f.strategy, "uniform | symmetric | component-hiding");
    cmd->add_option("--copies", f.copies, "gadget copies (fig1, fig2)");
    cmd->add_option("--big", f.big, "size of the connected part beside the gadgets");
    cmd->add_option("--lengths", f.lengths, "cycle lengths (cycles)")->delimiter(',');
}

Instance generate(const FamilyOptions& f, std::uint64_t seed) {
    const auto& fam = f.family;
    if (fam == "gplus") {
        return gen_gplus(parse_rational(f.eps), f.k, seed);
    }
    if (fam == "gminus") {
        return gen_gminus(parse_rational(f.eps), f.k, seed);
    }
    if (fam == "g1") {
        return gen_g1(parse_rational(f.alpha), f.n, seed);
    }
    if (fam == "g2") {
        return gen_g2(parse_rational(f.alpha), f.n, seed);
    }
    if (fam == "fig1" || fam == "fig2") {
        return gen_fig_component(fam == "fig1" ? GadgetKind::TwoErasure : GadgetKind::OneErasureAnchored,
                                 seed, f.copies, f.big);
    }
    if (fam == "far-forest") {
        return gen_far_forest(parse_rational(f.eps), parse_rational(f.alpha), f.n, f.davg,
                              parse_strategy(f.strategy), seed);
    }
    if (fam == "cycles") {
        return gen_cycle_union(f.lengths, seed);
    }
    if (fam == "regularish") {
        return gen_random_regularish(f.n, f.davg, seed);
    }
    if (fam == "gnm") {
        return gen_random_gnm(f.n, f.m, seed,
                              f.max_degree ? std::optional<std::size_t>(f.max_degree) : std::nullopt);
    }
    throw InputError("unknown family '" + fam + "'");
}

ordered_json family_params(const FamilyOptions& f) {
    const auto& fam = f.family;
    if (fam == "gplus" || fam == "gminus") {
        return {{"eps", format_rational(parse_rational(f.eps))}, {"k", f.k}};
    }
    if (fam == "g1" || fam == "g2") {
        return {{"alpha", format_rational(parse_rational(f.alpha))}, {"n", f.n}};
    }
    if (fam == "fig1" || fam == "fig2") {
        return {{"copies", f.copies}, {"big", f.big}};
    }
    if (fam == "far-forest") {
        return {{"eps", format_rational(parse_rational(f.eps))},
                {"alpha", format_rational(parse_rational(f.alpha))},
                {"n", f.n},
                {"davg", f.davg},
                {"strategy", f.strategy}};
    }
    if (fam == "cycles") {
        return {{"lengths", f.lengths}};
    }
    if (fam == "regularish") {
        return {{"n", f.n}, {"davg", f.davg}};
    }
    return {{"n", f.n}, {"m", f.m}, {"max_degree", f.max_degree}};
}

ordered_json manifest(const FamilyOptions& f, const Instance& inst, std::uint64_t seed, bool exact_ok) {
    const auto& g = inst.graph;
    ordered_json cert;
    cert["n"] = g.num_vertices();
    cert["m"] = g.num_edges();
    cert["average_degree"] = format_rational(g.average_degree_exact());
    cert["erasure_fraction"] = format_rational(g.erasure_fraction());
    cert["valid"] = validate(g).empty();
    cert["component_lower_bound"] = inst.certified_min_components
                                        ? ordered_json(*inst.certified_min_components)
                                        : ordered_json(component_lower_bound(g));
    if (exact_ok) {
        try {
            cert["distance_to_connectedness"] = format_rational(distance_to_connectedness(g));
        } catch (const InputError&) {
            cert["distance_to_connectedness"] = nullptr;
        }
    }
    ordered_json j;
    j["family"] = inst.family;
    j["params"] = family_params(f);
    j["seed"] = seed;
    j["hub"] = inst.hub ? ordered_json(*inst.hub) : ordered_json(nullptr);
    j["marked"] = inst.marked;
    j["certified"] = std::move(cert);
    return j;
}

// Writes to the path, or stdout for "" and "-".
void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw InputError("cannot write '" + path + "'");
    }
    out << text;
}

struct RunOptions {
    std::string input;
    std::uint64_t seed = 1;
    std::size_t trials = 1;
    std::string out;
    std::string format = "json";
    unsigned threads = 0;
    bool timing = false;
};

void add_run_options(CLI::App* cmd, RunOptions& r) {
    cmd->add_option("--in", r.input, "input PEG file")->required();
    cmd->add_option("--seed", r.seed, "master seed; trial i runs on split(seed, i)");
    cmd->add_option("--trials", r.trials, "number of trials");
    cmd->add_option("--out", r.out, "output path (default stdout)");
    cmd->add_option("--format", r.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--threads", r.threads, "worker threads (0 = hardware)");
    cmd->add_flag("--timing", r.timing, "add per-trial wall time (output no longer reproducible)");
}

struct TrialRow {
    std::uint64_t seed = 0;
    std::string outcome;
    double value = 0.0;
    QueryCounts queries;
    bool aborted = false;
    double wall_ms = 0.0;
    ordered_json detail;
};

// Runs fn(trial_index, seed) on worker threads; rows come back in trial order.
template <typename Fn>
std::vector<TrialRow> run_trials(const RunOptions& r, Fn fn) {
    std::vector<TrialRow> rows(r.trials);
    std::atomic<std::size_t> next{0};
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned workers = static_cast<unsigned>(
        std::min<std::size_t>(r.threads ? r.threads : hw, std::max<std::size_t>(1, r.trials)));
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (std::size_t i = next++; i < r.trials; i = next++) {
            try {
                const auto start = std::chrono::steady_clock::now();
                rows[i] = fn(i, split_seed(r.seed, i));
                rows[i].wall_ms = std::chrono::duration<double, std::milli>(
                                      std::chrono::steady_clock::now() - start)
                                      .count();
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                next = r.trials;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) {
        pool.emplace_back(work);
    }
    work();
    for (auto& t : pool) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return rows;
}

double quantile(std::vector<double> xs, double q) {
    if (xs.empty()) {
        return 0.0;
    }
    std::sort(xs.begin(), xs.end());
    const auto idx = static_cast<std::size_t>(std::floor(q * static_cast<double>(xs.size() - 1)));
    return xs[idx];
}

ordered_json summarize(const std::vector<TrialRow>& rows, bool verdicts) {
    std::vector<double> totals;
    std::vector<double> values;
    std::size_t rejects = 0;
    std::size_t aborts = 0;
    for (const auto& row : rows) {
        totals.push_back(static_cast<double>(row.queries.total()));
        values.push_back(row.value);
        rejects += row.outcome == "reject" ? 1 : 0;
        aborts += row.aborted ? 1 : 0;
    }
    ordered_json s;
    s["trials"] = rows.size();
    if (verdicts) {
        s["rejections"] = rejects;
        s["rejection_frequency"] = rows.empty() ? 0.0 : static_cast<double>(rejects) / rows.size();
        s["aborts"] = aborts;
    } else {
        double mean = 0.0;
        for (double v : values) {
            mean += v;
        }
        s["mean_estimate"] = rows.empty() ? 0.0 : mean / static_cast<double>(rows.size());
        s["median_estimate"] = quantile(values, 0.5);
    }
    s["queries_q10"] = quantile(totals, 0.1);
    s["queries_median"] = quantile(totals, 0.5);
    s["queries_q90"] = quantile(totals, 0.9);
    s["queries_max"] = quantile(totals, 1.0);
    return s;
}

std::string format_double(double x) {
    std::ostringstream os;
    os << std::setprecision(17) << x;
    return os.str();
}

// CSV columns: trial,seed,outcome,value,degree_queries,neighbor_queries,aborted[,wall_ms]
std::string render(const std::vector<TrialRow>& rows, const RunOptions& r, const ordered_json& plan,
                   bool verdicts) {
    if (r.format == "csv") {
        std::ostringstream os;
        os << "trial,seed,outcome,value,degree_queries,neighbor_queries,aborted";
        os << (r.timing ? ",wall_ms\n" : "\n");
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto& row = rows[i];
            os << i << ',' << row.seed << ',' << row.outcome << ',' << format_double(row.value) << ','
               << row.queries.degree << ',' << row.queries.neighbor << ',' << (row.aborted ? 1 : 0);
            if (r.timing) {
                os << ',' << format_double(row.wall_ms);
            }
            os << '\n';
        }
        return os.str();
    }
    ordered_json j;
    j["plan"] = plan;
    ordered_json trials = ordered_json::array();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        auto rec = rows[i].detail;
        rec["trial"] = i;
        if (r.timing) {
            rec["wall_ms"] = rows[i].wall_ms;
        }
        trials.push_back(std::move(rec));
    }
    j["trials"] = std::move(trials);
    j["summary"] = summarize(rows, verdicts);
    return j.dump(2) + "\n";
}

struct ConnOptions {
    std::string algo = "small-alpha";
    std::string eps = "0.2";
    std::string alpha = "0";
    std::optional<double> davg;
};

TesterVerdict run_tester(const PartiallyErasedGraph& g, const ConnOptions& c, std::uint64_t seed) {
    ConnTesterConfig cfg;
    cfg.epsilon = to_double(parse_rational(c.eps));
    cfg.alpha = to_double(parse_rational(c.alpha));
    cfg.davg = c.davg ? *c.davg : g.average_degree();
    cfg.seed = seed;
    if (c.algo == "small-alpha") {
        return tester_small_alpha(g, cfg);
    }
    if (c.algo == "mid-alpha") {
        return tester_mid_alpha(g, cfg);
    }
    if (c.algo == "no-erasure") {
        return tester_no_erasures(g, cfg);
    }
    if (c.algo == "unknown-davg") {
        cfg.davg.reset();
        return tester_unknown_davg(g, cfg);
    }
    throw InputError("unknown tester '" + c.algo + "'");
}

TrialRow verdict_row(const TesterVerdict& v) {
    TrialRow row;
    row.seed = v.seed;
    row.outcome = to_string(v.verdict);
    row.value = v.verdict == Verdict::Reject ? 1.0 : 0.0;
    row.queries = v.queries;
    row.aborted = v.aborted;
    row.detail = to_json(v);
    return row;
}

struct EstimateOptions {
    std::string eps = "0.25";
    std::string mode = "driver";
    std::optional<double> dhat;
    double delta = 0.25;
    std::vector<double> constants;
};

EstimatorConstants read_constants(const std::vector<double>& c) {
    EstimatorConstants k;
    if (c.empty()) {
        return k;
    }
    if (c.size() != 3) {
        throw InputError("--constants takes sample,repetition,threshold");
    }
    k.sample = c[0];
    k.repetition = c[1];
    k.threshold = c[2];
    return k;
}

DegreeEstimate run_estimate(const PartiallyErasedGraph& g, const EstimateOptions& e, std::uint64_t seed) {
    const double eps = to_double(parse_rational(e.eps));
    const auto constants = read_constants(e.constants);
    if (e.mode == "driver") {
        return estimate_avg_degree(g, eps, seed, constants);
    }
    if (e.mode == "refine") {
        if (!e.dhat) {
            throw InputError("refine mode needs --dhat");
        }
        DegreeEstimatorConfig cfg;
        cfg.epsilon = eps;
        cfg.delta = e.delta;
        cfg.crude = *e.dhat;
        cfg.seed = seed;
        cfg.constants = constants;
        return refine_estimate(g, cfg);
    }
    throw InputError("unknown estimate mode '" + e.mode + "'");
}

TrialRow estimate_row(const DegreeEstimate& est) {
    TrialRow row;
    row.seed = est.seed;
    row.outcome = "estimate";
    row.value = est.value;
    row.queries = est.queries;
    row.detail = to_json(est);
    return row;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Erasure-resilient sublinear graph algorithms"};
    app.require_subcommand(1);

    // gen
    FamilyOptions gen_family;
    std::uint64_t gen_seed = 1;
    std::string gen_out;
    std::string gen_manifest;
    bool gen_check = false;
    auto* gen = app.add_subcommand("gen", "generate an instance as PEG plus a manifest");
    add_family_options(gen, gen_family);
    gen->get_option("--family")->required();
    gen->add_option("--seed", gen_seed, "seed");
    gen->add_option("--out", gen_out, "PEG output path (default stdout)");
    gen->add_option("--manifest", gen_manifest, "manifest path (default <out>.json when --out is set)");
    gen->add_flag("--check", gen_check, "verify validity and certified properties; exit 1 on failure");

    // erase
    std::string erase_in;
    std::string erase_out;
    std::string erase_alpha = "0";
    std::string erase_strategy = "uniform";
    std::uint64_t erase_seed = 1;
    auto* er = app.add_subcommand("erase", "erase entries of a graph");
    er->add_option("--in", erase_in, "input PEG file")->required();
    er->add_option("--out", erase_out, "output path (default stdout)");
    er->add_option("--alpha", erase_alpha, "erasure fraction bound");
    er->add_option("--strategy", erase_strategy, "uniform | symmetric | component-hiding");
    er->add_option("--seed", erase_seed, "seed");

    // test-conn
    RunOptions conn_run;
    ConnOptions conn;
    bool expect_accept = false;
    auto* tc = app.add_subcommand("test-conn", "run a connectedness tester over repeated trials");
    add_run_options(tc, conn_run);
    tc->add_option("--algo", conn.algo, "small-alpha | mid-alpha | no-erasure | unknown-davg");
    tc->add_option("--eps", conn.eps, "eps");
    tc->add_option("--alpha", conn.alpha, "alpha");
    tc->add_option("--davg", conn.davg, "average degree promise (default: from the file)");
    tc->add_flag("--expect-accept", expect_accept, "exit 1 if any trial rejects");

    // estimate
    RunOptions est_run;
    EstimateOptions est;
    auto* es = app.add_subcommand("estimate", "estimate the average degree over repeated trials");
    add_run_options(es, est_run);
    es->add_option("--eps", est.eps, "eps in (0, 1/2)");
    es->add_option("--mode", est.mode, "driver | refine");
    es->add_option("--dhat", est.dhat, "crude estimate (refine mode)");
    es->add_option("--delta", est.delta, "failure probability (refine mode)");
    es->add_option("--constants", est.constants, "sample,repetition,threshold overrides")->delimiter(',');

    // exact
    std::string exact_in;
    std::string exact_what = "all";
    std::optional<double> exact_dhat;
    std::string exact_eps = "0.25";
    std::string exact_out;
    std::string exact_format = "text";
    std::size_t exact_bound = 20;
    auto* ex = app.add_subcommand("exact", "brute-force oracles on a small graph");
    ex->add_option("--in", exact_in, "input PEG file")->required();
    ex->add_option("--what", exact_what, "all | distance-conn | completions | witnesses | exp-chi")
        ->check(CLI::IsMember({"all", "distance-conn", "completions", "witnesses", "exp-chi"}));
    ex->add_option("--dhat", exact_dhat, "crude estimate for exp-chi");
    ex->add_option("--eps", exact_eps, "eps for exp-chi");
    ex->add_option("--out", exact_out, "output path (default stdout)");
    ex->add_option("--format", exact_format, "text | json")->check(CLI::IsMember({"text", "json"}));
    ex->add_option("--bound", exact_bound, "maximum unforced erased slots to enumerate");

    // bench
    FamilyOptions bench_family;
    RunOptions bench_run;
    ConnOptions bench_conn;
    EstimateOptions bench_est;
    std::string sweep = "n";
    std::vector<std::string> sweep_values;
    std::string bench_task = "test-conn";
    auto* be = app.add_subcommand("bench", "sweep one parameter; tidy CSV, one row per trial");
    add_family_options(be, bench_family);
    be->add_option("--in", bench_run.input, "input PEG file instead of a family");
    be->add_option("--seed", bench_run.seed, "master seed");
    be->add_option("--trials", bench_run.trials, "trials per sweep value");
    be->add_option("--out", bench_run.out, "output path (default stdout)");
    be->add_option("--threads", bench_run.threads, "worker threads (0 = hardware)");
    be->add_option("--task", bench_task, "test-conn | estimate")
        ->check(CLI::IsMember({"test-conn", "estimate"}));
    be->add_option("--algo", bench_conn.algo, "tester for test-conn");
    be->add_option("--test-eps", bench_conn.eps, "tester eps (when not swept)");
    be->add_option("--test-alpha", bench_conn.alpha, "tester alpha (when not swept)");
    be->add_option("--est-eps", bench_est.eps, "estimator eps (when not swept)");
    be->add_option("--constants", bench_est.constants, "estimator constant overrides")->delimiter(',');
    be->add_option("--sweep", sweep, "eps | alpha | n")->check(CLI::IsMember({"eps", "alpha", "n"}));
    be->add_option("--values", sweep_values, "sweep values")->delimiter(',')->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*gen) {
            const auto inst = generate(gen_family, gen_seed);
            const bool small = inst.graph.num_vertices() <= 200;
            const auto man = manifest(gen_family, inst, gen_seed, small);
            emit(gen_out, to_peg(inst.graph));
            std::string man_path = gen_manifest;
            if (man_path.empty() && !gen_out.empty() && gen_out != "-") {
                man_path = gen_out + ".json";
            }
            if (!man_path.empty()) {
                emit(man_path, man.dump(2) + "\n");
            }
            if (gen_check) {
                const auto& cert = man["certified"];
                bool ok = cert["valid"].get<bool>();
                if (cert.contains("distance_to_connectedness") && !cert["distance_to_connectedness"].is_null() &&
                    inst.certified_min_components) {
                    const auto d = parse_rational(cert["distance_to_connectedness"].get<std::string>());
                    const auto m = static_cast<std::int64_t>(inst.graph.num_edges());
                    ok = ok && (m == 0 || d * m + 1 >= static_cast<std::int64_t>(*inst.certified_min_components));
                }
                if (!ok) {
                    std::cerr << "self-check failed: " << cert.dump() << "\n";
                    return kExitViolation;
                }
            }
            return kExitOk;
        }
        if (*er) {
            const auto g = read_peg_file(erase_in);
            const auto out = erase(g, parse_rational(erase_alpha), parse_strategy(erase_strategy), erase_seed);
            emit(erase_out, to_peg(out));
            return kExitOk;
        }
        if (*tc) {
            const auto g = read_peg_file(conn_run.input);
            run_tester(g, conn, 0);  // validates parameters before spawning workers
            const auto rows = run_trials(conn_run, [&](std::size_t, std::uint64_t seed) {
                return verdict_row(run_tester(g, conn, seed));
            });
            ordered_json plan{{"input", conn_run.input}, {"algorithm", conn.algo},
                              {"eps", conn.eps},         {"alpha", conn.alpha},
                              {"seed", conn_run.seed},   {"trials", conn_run.trials}};
            plan["davg"] = conn.davg ? *conn.davg : g.average_degree();
            emit(conn_run.out, render(rows, conn_run, plan, true));
            if (conn_run.format == "csv") {
                std::cerr << summarize(rows, true).dump() << "\n";
            }
            if (expect_accept) {
                const bool any_reject =
                    std::any_of(rows.begin(), rows.end(), [](const auto& r) { return r.outcome == "reject"; });
                return any_reject ? kExitViolation : kExitOk;
            }
            return kExitOk;
        }
        if (*es) {
            const auto g = read_peg_file(est_run.input);
            const auto rows = run_trials(est_run, [&](std::size_t, std::uint64_t seed) {
                return estimate_row(run_estimate(g, est, seed));
            });
            ordered_json plan{{"input", est_run.input}, {"mode", est.mode}, {"eps", est.eps},
                              {"seed", est_run.seed},   {"trials", est_run.trials}};
            plan["dhat"] = est.dhat ? ordered_json(*est.dhat) : ordered_json(nullptr);
            plan["average_degree"] = g.average_degree();
            emit(est_run.out, render(rows, est_run, plan, false));
            if (est_run.format == "csv") {
                std::cerr << summarize(rows, false).dump() << "\n";
            }
            return kExitOk;
        }
        if (*ex) {
            const auto g = read_peg_file(exact_in);
            EnumerationLimits limits;
            limits.max_free_slots = exact_bound;
            const double eps = to_double(parse_rational(exact_eps));
            std::string text;
            if (exact_what == "all") {
                text = to_json(exact_report(g, exact_dhat, eps, limits)).dump(2);
            } else if (exact_what == "distance-conn") {
                const auto d = format_rational(distance_to_connectedness(g, limits));
                text = exact_format == "json" ? ordered_json{{"distance_to_connectedness", d}}.dump(2) : d;
            } else if (exact_what == "completions") {
                const auto c = enumerate_completions(g, limits);
                if (c.completions.empty()) {
                    throw InputError("graph has no completion");
                }
                text = exact_format == "json"
                           ? ordered_json{{"completions_count", c.completions.size()}, {"partial", c.partial}}.dump(2)
                           : std::to_string(c.completions.size()) + (c.partial ? "+" : "");
            } else if (exact_what == "witnesses") {
                text = to_json(inventory_witnesses(g)).dump(2);
            } else {
                const double dhat = exact_dhat ? *exact_dhat : g.average_degree();
                const auto v = format_rational(exact_exp_chi(g, dhat, eps));
                text = exact_format == "json" ? ordered_json{{"exp_chi", v}, {"d_hat", dhat}, {"eps", eps}}.dump(2) : v;
            }
            emit(exact_out, text + "\n");
            return kExitOk;
        }
        if (*be) {
            // CSV columns: sweep,value,trial,seed,task,outcome,estimate,degree_queries,neighbor_queries,aborted,n,m
            std::ostringstream os;
            os << "sweep,value,trial,seed,task,outcome,estimate,degree_queries,neighbor_queries,aborted,n,m\n";
            for (std::size_t vi = 0; vi < sweep_values.size(); ++vi) {
                const auto& value = sweep_values[vi];
                FamilyOptions fam = bench_family;
                ConnOptions c = bench_conn;
                EstimateOptions e = bench_est;
                if (sweep == "n") {
                    fam.n = static_cast<std::size_t>(std::stoull(value));
                } else if (sweep == "eps") {
                    fam.eps = c.eps = e.eps = value;
                } else {
                    fam.alpha = c.alpha = value;
                }
                PartiallyErasedGraph g;
                if (!bench_run.input.empty()) {
                    g = read_peg_file(bench_run.input);
                } else {
                    g = generate(fam, split_seed(bench_run.seed, 1'000'000 + vi)).graph;
                }
                RunOptions r = bench_run;
                r.seed = split_seed(bench_run.seed, vi);
                std::vector<TrialRow> rows;
                if (bench_task == "test-conn") {
                    run_tester(g, c, 0);
                    rows = run_trials(r, [&](std::size_t, std::uint64_t seed) {
                        return verdict_row(run_tester(g, c, seed));
                    });
                } else {
                    rows = run_trials(r, [&](std::size_t, std::uint64_t seed) {
                        return estimate_row(run_estimate(g, e, seed));
                    });
                }
                for (std::size_t i = 0; i < rows.size(); ++i) {
                    const auto& row = rows[i];
                    os << sweep << ',' << value << ',' << i << ',' << row.seed << ',' << bench_task << ','
                       << row.outcome << ',' << format_double(row.value) << ',' << row.queries.degree << ','
                       << row.queries.neighbor << ',' << (row.aborted ? 1 : 0) << ',' << g.num_vertices()
                       << ',' << g.num_edges() << '\n';
                }
            }
            emit(bench_run.out, os.str());
            return kExitOk;
        }
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
