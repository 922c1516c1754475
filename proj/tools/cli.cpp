#include "cli.hpp"

#include "hitting/chain.hpp"
#include "hitting/errors.hpp"
#include "hitting/hitting.hpp"
#include "hitting/oracle.hpp"
#include "hitting/spectral.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

namespace hitting::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
    std::string file;
    std::optional<std::size_t> start;
    bool all_starts = false;
    std::size_t n_max = 30;
    std::string format = "json";
    std::string t_list = "0.5,1,2";
    double eps = 1e-10;
    std::uint64_t samples = 100000;
    std::optional<std::uint64_t> seed;
    std::uint64_t max_steps = 1000000;
    unsigned workers = 0;
};

Chain load_chain(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot read chain file \"" + path + "\"");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_chain(buffer.str());
}

Json strings(const std::vector<std::string> &values) {
    Json out = Json::array();
    for (const auto &v : values)
        out.push_back(v);
    return out;
}

Json header(const std::string &command, const Chain &chain) {
    Json out;
    out["command"] = command;
    out["chain_digest"] = chain_digest(chain);
    out["kind"] = std::string(to_string(kind_of(chain)));
    out["d"] = absorbing_index(chain);
    return out;
}

Json reachability_warnings(const Chain &chain) {
    Json warnings = Json::array();
    const auto &reaches = std::visit([](const auto &c) -> const std::vector<bool> & { return c.reaches_absorbing(); }, chain);
    std::string unreachable;
    for (std::size_t i = 0; i + 1 < reaches.size(); ++i)
        if (!reaches[i])
            unreachable += (unreachable.empty() ? "" : ",") + std::to_string(i);
    if (!unreachable.empty())
        warnings.push_back("reducible: absorbing state unreachable from states {" + unreachable + "}");
    if (kind_of(chain) == ChainKind::continuous)
        warnings.push_back("continuous minors are taken from sI - Q (first-jump equations), "
                           "not from I - sP");
    return warnings;
}

std::size_t resolve_start(const Options &opt, std::size_t d) {
    const std::size_t start = opt.start.value_or(0);
    if (start >= d)
        throw IndexError("--start " + std::to_string(start) + " outside [0, " + std::to_string(d - 1) + "]");
    return start;
}

void add_rational(Json &obj, const std::string &key, const BigRational &value) {
    obj[key] = value.to_string();
    obj[key + "_float"] = value.to_double();
}

Json describe_transform(const HittingTimeTransform &t, bool reaches) {
    Json out;
    out["start"] = t.start;
    out["transform_kind"] = std::string(to_string(t.kind));
    out["numerator"] = strings(t.func.numerator().to_strings());
    out["denominator"] = strings(t.func.denominator().to_strings());
    add_rational(out, "absorption_probability", t.absorption_probability);
    out["reaches_absorbing"] = reaches;
    if (t.is_certain()) {
        add_rational(out, "mean", mean(t));
        add_rational(out, "variance", variance(t));
    } else {
        out["moments"] = "DefectiveDistribution: absorption probability " +
                         t.absorption_probability.to_string() + " < 1";
    }
    return out;
}

void emit(std::ostream &out, const Json &doc) {
    out << doc.dump(2) << '\n';
}

int cmd_analyze(const Options &opt, std::ostream &out) {
    const Chain chain = load_chain(opt.file);
    const std::size_t d = absorbing_index(chain);
    Json doc = header("analyze", chain);
    std::vector<HittingTimeTransform> transforms;
    if (opt.start && !opt.all_starts) {
        const std::size_t start = resolve_start(opt, d);
        transforms.push_back(std::visit(
            [&](const auto &c) {
                if constexpr (std::is_same_v<std::decay_t<decltype(c)>, DiscreteChain>)
                    return hitting_gf_discrete(c, start);
                else
                    return hitting_lt_continuous(c, start);
            },
            chain));
    } else {
        transforms = std::visit([](const auto &c) { return all_transforms(c); }, chain);
    }
    const auto &reaches = std::visit([](const auto &c) -> const std::vector<bool> & { return c.reaches_absorbing(); }, chain);
    Json results = Json::array();
    for (const auto &t : transforms)
        results.push_back(describe_transform(t, reaches[t.start]));
    doc["results"] = std::move(results);
    doc["warnings"] = reachability_warnings(chain);
    emit(out, doc);
    return kOk;
}

int cmd_pmf(const Options &opt, std::ostream &out) {
    const Chain chain = load_chain(opt.file);
    const auto *discrete = std::get_if<DiscreteChain>(&chain);
    if (!discrete)
        throw KindMismatch("PMF is defined for discrete chains only; use cdf for continuous chains");
    const std::size_t start = resolve_start(opt, discrete->d());
    const DistributionTable table = pmf(hitting_gf_discrete(*discrete, start), opt.n_max);
    if (opt.format == "csv") {
        out << "n,prob_exact,prob_float\n";
        for (std::size_t n = 1; n < table.size(); ++n)
            out << n << ',' << table.exact[n].to_string() << ',' << format_double(table.values[n]) << '\n';
        return kOk;
    }
    Json doc = header("pmf", chain);
    doc["start"] = start;
    doc["source"] = std::string(to_string(table.source));
    Json rows = Json::array();
    for (std::size_t n = 1; n < table.size(); ++n) {
        Json row;
        row["n"] = n;
        row["prob_exact"] = table.exact[n].to_string();
        row["prob_float"] = table.values[n];
        rows.push_back(std::move(row));
    }
    doc["rows"] = std::move(rows);
    doc["warnings"] = reachability_warnings(chain);
    emit(out, doc);
    return kOk;
}

std::vector<double> parse_times(const std::string &list) {
    std::vector<double> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }),
                   item.end());
        if (item.empty())
            continue;
        // Parsed exactly, then rounded once.
        out.push_back(BigRational::parse(item).to_double());
    }
    if (out.empty())
        throw InputError("--t needs at least one time point");
    return out;
}

int cmd_cdf(const Options &opt, std::ostream &out) {
    const Chain chain = load_chain(opt.file);
    const std::vector<double> times = parse_times(opt.t_list);
    const std::size_t start = resolve_start(opt, absorbing_index(chain));

    DistributionTable table;
    std::vector<std::string> exact;
    if (const auto *c = std::get_if<ContinuousChain>(&chain)) {
        table = cdf_uniformization(*c, start, times, opt.eps);
    } else {
        // Discrete time: F(t) = P(tau <= floor t), exact.
        const auto &dc = std::get<DiscreteChain>(chain);
        std::size_t horizon = 0;
        for (double t : times) {
            if (!(t >= 0.0) || !std::isfinite(t))
                throw InputError("time points must be finite and nonnegative");
            horizon = std::max(horizon, static_cast<std::size_t>(std::floor(t)));
        }
        const DistributionTable p = pmf(hitting_gf_discrete(dc, start), horizon);
        std::vector<BigRational> cum(p.exact.size());
        BigRational acc;
        for (std::size_t n = 0; n < p.exact.size(); ++n)
            cum[n] = acc += p.exact[n];
        table.kind = TableKind::cdf;
        table.source = TableSource::exact_series;
        for (double t : times) {
            const auto n = static_cast<std::size_t>(std::floor(t));
            table.support.push_back(t);
            table.exact.push_back(cum[n]);
            table.values.push_back(cum[n].to_double());
        }
    }

    if (opt.format == "csv") {
        out << (table.is_exact() ? "t,cdf_exact,cdf_float\n" : "t,cdf\n");
        for (std::size_t k = 0; k < table.size(); ++k) {
            out << format_double(table.support[k]) << ',';
            if (table.is_exact())
                out << table.exact[k].to_string() << ',';
            out << format_double(table.values[k]) << '\n';
        }
        return kOk;
    }
    Json doc = header("cdf", chain);
    doc["start"] = start;
    doc["source"] = std::string(to_string(table.source));
    if (kind_of(chain) == ChainKind::continuous)
        doc["eps"] = opt.eps;
    Json rows = Json::array();
    for (std::size_t k = 0; k < table.size(); ++k) {
        Json row;
        row["t"] = table.support[k];
        if (table.is_exact())
            row["cdf_exact"] = table.exact[k].to_string();
        row["cdf"] = table.values[k];
        rows.push_back(std::move(row));
    }
    doc["rows"] = std::move(rows);
    doc["warnings"] = reachability_warnings(chain);
    emit(out, doc);
    return kOk;
}

Json describe_spectrum(const SpectrumReport &s) {
    Json out;
    out["char_poly"] = strings(s.char_poly.to_strings());
    Json roots = Json::array();
    for (const auto &r : s.roots) {
        Json root;
        root["re"] = r.value.real();
        root["im"] = r.value.imag();
        root["multiplicity"] = r.multiplicity;
        roots.push_back(std::move(root));
    }
    out["roots"] = std::move(roots);
    Json eig = Json::array();
    for (const auto &ev : s.eigenvalues) {
        Json e;
        e["re"] = ev.real();
        e["im"] = ev.imag();
        eig.push_back(std::move(e));
    }
    out["eigenvalues"] = std::move(eig);
    out["zero_eigenvalues"] = s.zero_eigenvalues;
    out["classification"] = std::string(to_string(s.classification));
    return out;
}

Json describe_identities(const IdentityReport &report) {
    Json out = Json::array();
    for (const auto &c : report.checks) {
        Json check;
        check["name"] = c.name;
        check["identity"] = c.description;
        check["applicable"] = c.applicable;
        check["exact"] = c.exact;
        check["passed"] = c.passed;
        if (c.applicable && !c.exact)
            check["relative_error"] = c.error;
        out.push_back(std::move(check));
    }
    return out;
}

int cmd_decompose(const Options &opt, std::ostream &out) {
    const Chain chain = load_chain(opt.file);
    Json doc = header("decompose", chain);
    Json warnings = reachability_warnings(chain);
    std::visit(
        [&](const auto &c) {
            const bool skip_free = is_skip_free(c);
            doc["skip_free"] = skip_free;
            if (!skip_free) {
                doc["spectrum"] = describe_spectrum(nonunit_spectrum(c));
                doc["identity_checks"] = describe_identities(verify_identities(c));
                return;
            }
            const SkipFreeDecomposition dec = decompose_skip_free(c);
            doc["spectrum"] = describe_spectrum(dec.spectrum);
            Json d;
            d["family"] = dec.kind == ChainKind::discrete ? "geometric" : "exponential";
            d["valid"] = dec.valid;
            if (!dec.valid)
                d["reason"] = dec.reason;
            Json params = Json::array();
            if (dec.valid)
                for (double p : dec.parameters)
                    params.push_back(p);
            d["parameters"] = std::move(params);
            doc["decomposition"] = std::move(d);
            doc["identity_checks"] = describe_identities(dec.identity_checks);
            if (dec.kind == ChainKind::continuous)
                warnings.push_back("exponential factors are lambda/(s + lambda) with lambda the "
                                   "nonzero eigenvalues of -Q");
            if (dec.spectrum.classification == SpectrumClass::complex_present)
                warnings.push_back("complex eigenvalues: no geometric/exponential sum representation");
        },
        chain);
    doc["warnings"] = std::move(warnings);
    emit(out, doc);
    return kOk;
}

int cmd_simulate(const Options &opt, std::ostream &out) {
    if (!opt.seed)
        throw InputError("simulate requires --seed");
    const Chain chain = load_chain(opt.file);
    const std::size_t start = resolve_start(opt, absorbing_index(chain));
    McConfig cfg;
    cfg.samples = opt.samples;
    cfg.seed = *opt.seed;
    cfg.max_steps = opt.max_steps;
    cfg.workers = opt.workers;
    if (cfg.samples < 1 || cfg.max_steps < 1)
        throw InputError("--samples and --max-steps must be >= 1");

    const SampleSummary summary = std::visit(
        [&](const auto &c) {
            if constexpr (std::is_same_v<std::decay_t<decltype(c)>, DiscreteChain>)
                return simulate_discrete(c, start, cfg);
            else
                return simulate_continuous(c, start, cfg);
        },
        chain);
    const HittingTimeTransform transform = std::visit(
        [&](const auto &c) {
            if constexpr (std::is_same_v<std::decay_t<decltype(c)>, DiscreteChain>)
                return hitting_gf_discrete(c, start);
            else
                return hitting_lt_continuous(c, start);
        },
        chain);

    Json doc = header("simulate", chain);
    doc["start"] = start;
    doc["seed"] = cfg.seed;
    doc["samples"] = summary.samples;
    doc["max_steps"] = cfg.max_steps;
    doc["censored"] = summary.censored;
    doc["censored_fraction"] = summary.censored_fraction();
    doc["mean"] = summary.mean;
    doc["variance"] = summary.variance;
    doc["std_error"] = summary.std_error;
    if (transform.is_certain()) {
        const BigRational exact_mean = mean(transform);
        add_rational(doc, "exact_mean", exact_mean);
        if (summary.std_error > 0.0)
            doc["z_score"] = (summary.mean - exact_mean.to_double()) / summary.std_error;
    }
    doc["warnings"] = reachability_warnings(chain);
    emit(out, doc);
    return kOk;
}

Json check_entry(const std::string &name, bool passed, const std::string &detail) {
    Json c;
    c["name"] = name;
    c["passed"] = passed;
    c["detail"] = detail;
    return c;
}

int cmd_verify(const Options &opt, std::ostream &out) {
    const Chain chain = load_chain(opt.file);
    Json doc = header("verify", chain);
    Json checks = Json::array();
    bool all_ok = true;
    auto record = [&](const std::string &name, bool passed, const std::string &detail) {
        all_ok = all_ok && passed;
        checks.push_back(check_entry(name, passed, detail));
    };

    std::visit(
        [&](const auto &c) {
            const auto transforms = all_transforms(c);
            const auto residuals = first_step_residual(c, transforms);
            std::size_t nonzero = 0;
            for (const auto &r : residuals)
                nonzero += r.is_zero() ? 0 : 1;
            record("first_step_residual", nonzero == 0,
                   std::to_string(residuals.size() - nonzero) + "/" + std::to_string(residuals.size()) +
                       " residuals identically zero");

            const IdentityReport ids = verify_identities(c);
            const auto &fact = ids.checks.front();
            record("factorization", fact.passed, fact.description);

            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, DiscreteChain>) {
                std::size_t mismatches = 0;
                for (const auto &t : transforms) {
                    const auto series = pmf(t, opt.n_max);
                    const auto oracle = pmf_matrix_power(c, t.start, opt.n_max);
                    for (std::size_t n = 0; n <= opt.n_max; ++n)
                        mismatches += series.exact[n] == oracle.exact[n] ? 0 : 1;
                }
                record("pmf_vs_matrix_power", mismatches == 0,
                       "exact comparison for n <= " + std::to_string(opt.n_max) + ", " +
                           std::to_string(mismatches) + " mismatches");
            } else {
                double worst = 0.0;
                for (const auto &t : transforms)
                    for (double s : {0.0, 0.5, 1.0, 2.0, 4.0})
                        worst = std::max(worst, std::abs(t.func.evaluate(s) - laplace_uniformization(c, t.start, s)));
                record("transform_vs_uniformization", worst <= 1e-8,
                       "max |f(s) - uniformization| over s in {0,1/2,1,2,4} = " + format_double(worst) +
                           " (tolerance 1e-8)");
            }
        },
        chain);

    doc["checks"] = std::move(checks);
    doc["all_passed"] = all_ok;
    doc["warnings"] = reachability_warnings(chain);
    emit(out, doc);
    return all_ok ? kOk : kVerificationFailed;
}

} // namespace

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Exact absorption-time distributions of finite absorbing Markov chains", "hittime"};
    app.require_subcommand(1);
    Options opt;

    auto add_file = [&](CLI::App *cmd) { cmd->add_option("file", opt.file, "chain JSON file")->required(); };
    auto add_start = [&](CLI::App *cmd) { cmd->add_option("--start", opt.start, "start state (default 0)"); };
    auto add_format = [&](CLI::App *cmd) {
        cmd->add_option("--format", opt.format, "output format")->check(CLI::IsMember({"json", "csv"}));
    };

    auto *analyze = app.add_subcommand("analyze", "transforms, absorption probabilities and moments");
    add_file(analyze);
    auto *start_opt = analyze->add_option("--start", opt.start, "start state");
    analyze->add_flag("--all-starts", opt.all_starts, "every transient start state (default)")->excludes(start_opt);

    auto *pmf_cmd = app.add_subcommand("pmf", "exact probability mass function (discrete chains)");
    add_file(pmf_cmd);
    add_start(pmf_cmd);
    pmf_cmd->add_option("--n-max", opt.n_max, "largest time step");
    add_format(pmf_cmd);

    auto *cdf_cmd = app.add_subcommand("cdf", "distribution function on a time grid");
    add_file(cdf_cmd);
    add_start(cdf_cmd);
    cdf_cmd->add_option("--t", opt.t_list, "comma-separated time points");
    cdf_cmd->add_option("--eps", opt.eps, "truncation error bound (continuous)");
    add_format(cdf_cmd);

    auto *decompose = app.add_subcommand("decompose", "spectrum, skip-free decomposition and identity checks");
    add_file(decompose);

    auto *simulate = app.add_subcommand("simulate", "Monte Carlo summary of the absorption time");
    add_file(simulate);
    add_start(simulate);
    simulate->add_option("--samples", opt.samples, "number of trajectories");
    simulate->add_option("--seed", opt.seed, "random seed")->required();
    simulate->add_option("--max-steps", opt.max_steps, "censoring horizon per trajectory");
    simulate->add_option("--workers", opt.workers, "worker threads (0 = all cores)");

    auto *verify = app.add_subcommand("verify", "residual, oracle and factorization checks");
    add_file(verify);
    verify->add_option("--n-max", opt.n_max, "PMF comparison horizon (discrete)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return kInputError;
    }

    try {
        if (analyze->parsed())
            return cmd_analyze(opt, out);
        if (pmf_cmd->parsed())
            return cmd_pmf(opt, out);
        if (cdf_cmd->parsed())
            return cmd_cdf(opt, out);
        if (decompose->parsed())
            return cmd_decompose(opt, out);
        if (simulate->parsed())
            return cmd_simulate(opt, out);
        if (verify->parsed())
            return cmd_verify(opt, out);
    } catch (const InputError &e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const MathError &e) {
        err << "error: " << e.what() << '\n';
        return kMathError;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
    return kInputError;
}

} // namespace hitting::cli
