#include "bzi/cli.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "bzi/channels.hpp"
#include "bzi/errors.hpp"
#include "bzi/information.hpp"
#include "bzi/json_io.hpp"
#include "bzi/measurements.hpp"
#include "bzi/probe.hpp"

namespace bzi {

namespace {

using nlohmann::json;

CommandResult finish(int code, const json& j) { return {code, to_stable_string(j)}; }

CommandResult fail(int code, const std::string& kind, const std::string& message) {
    return finish(code, json{{"error", {{"kind", kind}, {"message", message}}}});
}

// "max" (or empty) selects the positivity limit; otherwise a number.
std::optional<double> parse_t(const std::string& t) {
    if (t.empty() || t == "max") {
        return std::nullopt;
    }
    try {
        std::size_t used = 0;
        const double v = std::stod(t, &used);
        if (used != t.size()) {
            throw std::invalid_argument(t);
        }
        return v;
    } catch (const std::exception&) {
        throw CLI::ValidationError("--t", "expected a number or 'max'");
    }
}

MeasurementScheme build_by_variant(SchemeVariant v, int d, const std::optional<double>& t,
                                   std::uint64_t seed, json* search_info) {
    switch (v) {
        case SchemeVariant::mub:
            return build_mub_set(d);
        case SchemeVariant::sic: {
            if (d == 2 || d == 3) {
                return build_sic_povm(d);
            }
            SicSearchResult found = optimize_sic_fiducial(d, seed);
            if (search_info) {
                *search_info = json{{"success", found.success},
                                    {"restarts", found.restarts_used},
                                    {"iterations", found.iterations},
                                    {"frame_potential", found.frame_potential},
                                    {"target", found.target}};
            }
            if (!found.success) {
                throw ConvergenceError("fiducial search did not reach the frame-potential "
                                       "minimum; try another seed");
            }
            return build_sic_povm(d, found.fiducial);
        }
        case SchemeVariant::mum:
            return build_mum_set(d, t);
        case SchemeVariant::gsic:
            return build_general_sic(d, t);
    }
    throw Error("unknown variant");
}

json scheme_summary(const MeasurementScheme& s) {
    json j{{"variant", variant_name(s.variant)},
           {"d", s.d},
           {"povm_count", s.povms.size()},
           {"outcomes_per_povm", s.povms.empty() ? 0 : s.povms.front().elements.size()}};
    if (s.kappa) {
        j["kappa"] = *s.kappa;
    }
    if (s.a_param) {
        j["a"] = *s.a_param;
    }
    return j;
}

json validation_to_json(const ValidationReport& report) {
    json checks = json::array();
    for (const CheckResult& c : report.checks) {
        checks.push_back(
            {{"name", c.name}, {"max_deviation", c.max_deviation}, {"pass", c.pass}});
    }
    return json{{"variant", variant_name(report.variant)},
                {"d", report.d},
                {"pass", report.pass},
                {"checks", std::move(checks)}};
}

json probe_to_json(const ProbeReport& r) {
    return json{{"coincidence_sum", r.coincidence_sum},
                {"purity", r.purity},
                {"purity_excess", r.purity_excess},
                {"gamma_norm", r.gamma_norm},
                {"map_norm_bound", r.map_norm_bound},
                {"purity_stderr", r.purity_stderr},
                {"gamma_stderr", r.gamma_stderr},
                {"shots", r.shots},
                {"consistent", r.consistent}};
}

struct GenArgs {
    std::string variant;
    int d = 0;
    std::string t;
    std::uint64_t seed = 0;
    std::string output;
};

struct InfoArgs {
    std::string scheme;
    std::string state;
    double eta = -1.0;  // negative means "not set"
};

struct CheckArgs {
    std::string variant;
    int d = 0;
    std::string t;
    int trials = 100;
    std::uint64_t seed = 0;
};

struct ChannelArgs {
    std::string channel;
    std::string state;
};

struct RandArgs {
    int d = 0;
    std::string state_kind = "mixed";
    std::string channel_kind = "generic";
    std::uint64_t seed = 0;
    std::string output;
    double lambda = 0.5;
    int target = 0;
    int env = 0;
    int branches = 0;
};

struct ProbeArgs {
    std::string channel;
    std::string scheme;
    long long shots = 100000;
    std::uint64_t seed = 0;
    double eta = -1.0;
    std::string save_shots;
    std::string shots_file;
};

CommandResult cmd_gen(const GenArgs& a) {
    const SchemeVariant v = variant_from_name(a.variant);
    const std::optional<double> t = parse_t(a.t);
    if (t && v != SchemeVariant::mum && v != SchemeVariant::gsic) {
        return fail(2, "usage", "--t only applies to mum and gsic schemes");
    }
    json search;
    MeasurementScheme s = build_by_variant(v, a.d, t, a.seed, &search);
    ValidationReport audit = validate_scheme(s);
    save_json(a.output, scheme_to_json(s));
    json out = scheme_summary(s);
    out["path"] = a.output;
    out["validated"] = audit.pass;
    if (!search.is_null()) {
        out["search"] = search;
    }
    return finish(audit.pass ? 0 : 1, out);
}

CommandResult cmd_validate(const std::string& file) {
    ValidationReport report = validate_scheme(load_scheme(file));
    return finish(report.pass ? 0 : 1, validation_to_json(report));
}

CommandResult cmd_info(const InfoArgs& a) {
    MeasurementScheme s = load_scheme(a.scheme);
    ValidationReport audit = validate_scheme(s);
    if (!audit.pass) {
        return fail(1, "failure", "scheme fails validation; run 'validate' for details");
    }
    DensityOperator rho = load_state(a.state);
    const bool lossy = a.eta >= 0.0;

    json per_povm = json::array();
    double sum = 0.0;
    for (const Povm& m : s.povms) {
        OutcomeDistribution p = probabilities(m, rho);
        if (lossy) {
            p = distort(p, a.eta);
        }
        const double c = index_of_coincidence(p);
        sum += c;
        per_povm.push_back({{"label", m.label},
                            {"coincidence", c},
                            {"information", lossy ? bz_information_eta(m, rho, a.eta)
                                                  : bz_information(m, rho)}});
    }
    SchemeTotal total = lossy ? scheme_total_eta(s, rho, a.eta) : scheme_total(s, rho);

    json out{{"variant", variant_name(s.variant)},
             {"d", s.d},
             {"purity", purity(rho)},
             {"per_povm", std::move(per_povm)},
             {"coincidence_sum", sum},
             {"bz_total_measured", total.measured},
             {"bz_total_predicted", total.predicted}};
    if (lossy) {
        out["eta"] = a.eta;
    }
    return finish(0, out);
}

CommandResult cmd_identity_check(const CheckArgs& a) {
    const SchemeVariant v = variant_from_name(a.variant);
    const std::optional<double> t = parse_t(a.t);
    if (t && v != SchemeVariant::mum && v != SchemeVariant::gsic) {
        return fail(2, "usage", "--t only applies to mum and gsic schemes");
    }
    if (a.trials < 1) {
        return fail(2, "usage", "--trials must be positive");
    }
    MeasurementScheme s = build_by_variant(v, a.d, t, a.seed, nullptr);

    Rng root(a.seed);
    double worst = 0.0;
    for (int i = 0; i < a.trials; ++i) {
        Rng sub = root.derive("identity").derive(static_cast<std::uint64_t>(i));
        DensityOperator rho =
            sample_random_state(a.d, i % 2 ? StateKind::mixed : StateKind::pure, sub);
        const double measured = coincidence_sum(s, rho);
        const double predicted = coincidence_sum_closed_form(s, purity(rho));
        worst = std::max(worst, std::abs(measured - predicted));
    }
    const bool pass = worst <= tol::scheme_check;
    return finish(pass ? 0 : 1, json{{"variant", variant_name(s.variant)},
                                     {"d", a.d},
                                     {"trials", a.trials},
                                     {"max_deviation", worst},
                                     {"tolerance", tol::scheme_check},
                                     {"pass", pass}});
}

CommandResult cmd_channel_apply(const ChannelArgs& a) {
    KrausChannel phi = load_channel(a.channel);
    DensityOperator rho = load_state(a.state);
    DensityOperator out = phi.apply(rho);
    return finish(0, json{{"d", phi.dim()},
                          {"input_purity", purity(rho)},
                          {"output_purity", purity(out)},
                          {"output_state", state_to_json(out)}});
}

CommandResult cmd_channel_check(const ChannelArgs& a) {
    KrausChannel phi = load_channel(a.channel, /*checked=*/false);
    const bool tp = phi.is_trace_preserving();
    return finish(tp ? 0 : 1, json{{"d", phi.dim()},
                                   {"kraus_count", phi.kraus().size()},
                                   {"completeness_defect", phi.completeness_defect()},
                                   {"trace_preserving", tp},
                                   {"unital", phi.is_unital()},
                                   {"bistochastic", phi.is_bistochastic()}});
}

CommandResult cmd_channel_norms(const ChannelArgs& a) {
    KrausChannel phi = load_channel(a.channel);
    NonUnitalityReport r = non_unitality(phi);
    return finish(0, json{{"d", phi.dim()},
                          {"hs_norm", r.hs_norm},
                          {"map_norm", r.map_norm},
                          {"bound", r.bound},
                          {"saturated", std::abs(r.bound - r.map_norm) <= 1e-9},
                          {"gamma", matrix_to_json(r.gamma.mat())}});
}

CommandResult cmd_rand_state(const RandArgs& a) {
    if (a.state_kind != "pure" && a.state_kind != "mixed") {
        return fail(2, "usage", "--kind must be pure or mixed");
    }
    Rng rng = Rng(a.seed).derive("state");
    DensityOperator rho = sample_random_state(
        a.d, a.state_kind == "pure" ? StateKind::pure : StateKind::mixed, rng);
    save_json(a.output, state_to_json(rho));
    return finish(0, json{{"d", a.d},
                          {"kind", a.state_kind},
                          {"purity", purity(rho)},
                          {"path", a.output}});
}

CommandResult cmd_rand_channel(const RandArgs& a) {
    Rng rng = Rng(a.seed).derive("channel");
    std::optional<KrausChannel> phi;
    if (a.channel_kind == "bistochastic") {
        phi = sample_bistochastic_channel(a.d, rng, a.branches);
    } else if (a.channel_kind == "generic") {
        phi = sample_generic_channel(a.d, rng, a.env);
    } else if (a.channel_kind == "depolarizing") {
        phi = depolarizing_channel(a.d, a.lambda);
    } else if (a.channel_kind == "contraction") {
        phi = contraction_channel(a.d, a.target);
    } else {
        return fail(2, "usage",
                    "--kind must be bistochastic, generic, depolarizing, or contraction");
    }
    save_json(a.output, channel_to_json(*phi));
    return finish(0, json{{"d", a.d},
                          {"kind", a.channel_kind},
                          {"kraus_count", phi->kraus().size()},
                          {"path", a.output}});
}

CommandResult cmd_probe(const ProbeArgs& a) {
    std::optional<double> eta;
    if (a.eta >= 0.0) {
        eta = a.eta;
    }
    BlackBox box(load_channel(a.channel));
    MeasurementScheme scheme = load_scheme(a.scheme);
    ShotRecord record = collect_shots(box, scheme, a.shots, a.seed, eta);
    if (!a.save_shots.empty()) {
        save_shots(a.save_shots, record);
    }
    ProbeReport report = report_from_shots(record);
    json out = probe_to_json(report);
    if (!a.save_shots.empty()) {
        out["shots_path"] = a.save_shots;
    }
    return finish(report.consistent ? 0 : 1, out);
}

CommandResult cmd_probe_report(const std::string& shots_file) {
    ProbeReport report = report_from_shots(load_shots(shots_file));
    return finish(report.consistent ? 0 : 1, probe_to_json(report));
}

}  // namespace

CommandResult run_cli(const std::vector<std::string>& args) {
    CLI::App app{
        "Measurement schemes, invariant information, channels, and black-box probes.\n"
        "JSON documents: matrix {d, entries}; scheme {variant, d, kappa?, a?, povms};\n"
        "channel {d, kraus}; shot record {scheme, N, seed, eta?, counts}.",
        "bzi"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kCliVersion));

    GenArgs gen_args;
    CLI::App* gen = app.add_subcommand("gen", "Build a measurement scheme and save it");
    gen->add_option("variant", gen_args.variant, "Scheme family: mub, sic, mum, or gsic")
        ->required()
        ->check(CLI::IsMember({"mub", "sic", "mum", "gsic"}));
    gen->add_option("-d,--dim", gen_args.d, "Hilbert space dimension")->required();
    gen->add_option("--t", gen_args.t,
                    "Design parameter for mum/gsic: a number or 'max' (default)");
    gen->add_option("--seed", gen_args.seed, "Seed for the sic fiducial search");
    gen->add_option("-o,--output", gen_args.output, "Destination scheme file")->required();

    std::string validate_file;
    CLI::App* validate = app.add_subcommand("validate", "Audit a scheme file");
    validate->add_option("file", validate_file, "Scheme file to audit")->required();

    InfoArgs info_args;
    CLI::App* info =
        app.add_subcommand("info", "Coincidence and invariant information of a state");
    info->add_option("--scheme", info_args.scheme, "Scheme file")->required();
    info->add_option("--state", info_args.state, "Density matrix file")->required();
    info->add_option("--eta", info_args.eta, "Detection efficiency in [0, 1]")
        ->check(CLI::Range(0.0, 1.0));

    CheckArgs check_args;
    CLI::App* identity =
        app.add_subcommand("identity-check", "Closed-form sweep over random states");
    identity->add_option("--variant", check_args.variant, "Scheme family")
        ->required()
        ->check(CLI::IsMember({"mub", "sic", "mum", "gsic"}));
    identity->add_option("-d,--dim", check_args.d, "Hilbert space dimension")->required();
    identity->add_option("--t", check_args.t, "Design parameter for mum/gsic");
    identity->add_option("--trials", check_args.trials, "Number of random states");
    identity->add_option("--seed", check_args.seed, "Seed for the state sweep");

    ChannelArgs channel_args;
    CLI::App* channel = app.add_subcommand("channel", "Apply or analyze a Kraus channel");
    channel->require_subcommand(1);
    CLI::App* ch_apply = channel->add_subcommand("apply", "Push a state through the channel");
    CLI::App* ch_check = channel->add_subcommand("check", "Trace/unitality diagnostics");
    CLI::App* ch_norms = channel->add_subcommand("norms", "Fixed-point displacement report");
    for (CLI::App* sub : {ch_apply, ch_check, ch_norms}) {
        sub->add_option("--channel", channel_args.channel, "Channel file")->required();
    }
    ch_apply->add_option("--state", channel_args.state, "Density matrix file")->required();

    RandArgs rand_args;
    CLI::App* rand = app.add_subcommand("rand", "Sample a random state or channel");
    rand->require_subcommand(1);
    CLI::App* rand_state = rand->add_subcommand("state", "Haar/Hilbert-Schmidt random state");
    rand_state->add_option("-d,--dim", rand_args.d, "Dimension")->required();
    rand_state->add_option("--kind", rand_args.state_kind, "pure or mixed (default mixed)");
    CLI::App* rand_channel = rand->add_subcommand("channel", "Random channel of a given kind");
    rand_channel->add_option("-d,--dim", rand_args.d, "Dimension")->required();
    rand_channel->add_option(
        "--kind", rand_args.channel_kind,
        "bistochastic, generic, depolarizing, or contraction (default generic)");
    rand_channel->add_option("--lambda", rand_args.lambda,
                             "Mixing weight for depolarizing channels")
        ->check(CLI::Range(0.0, 1.0));
    rand_channel->add_option("--target", rand_args.target, "Contraction target basis state");
    rand_channel->add_option("--env", rand_args.env,
                             "Environment dimension for generic channels (0 = d)");
    rand_channel->add_option("--branches", rand_args.branches,
                             "Unitary count for bistochastic channels (0 = max(2, d))");
    for (CLI::App* sub : {rand_state, rand_channel}) {
        sub->add_option("--seed", rand_args.seed, "Sampling seed");
        sub->add_option("-o,--output", rand_args.output, "Destination file")->required();
    }

    ProbeArgs probe_args;
    CLI::App* probe = app.add_subcommand(
        "probe", "Estimate a black box's fixed-point displacement from shots");
    probe->add_option("--channel", probe_args.channel, "Channel file (the black box)");
    probe->add_option("--scheme", probe_args.scheme, "Scheme file");
    probe->add_option("--shots", probe_args.shots, "Shots per POVM");
    probe->add_option("--seed", probe_args.seed, "Sampling seed");
    probe->add_option("--eta", probe_args.eta, "Detection efficiency in [0, 1]")
        ->check(CLI::Range(0.0, 1.0));
    probe->add_option("--save-shots", probe_args.save_shots, "Persist the shot record here");
    CLI::App* probe_report =
        probe->add_subcommand("report", "Recompute a report from saved shots");
    probe_report->add_option("--shots", probe_args.shots_file, "Shot record file")
        ->required();

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("bzi");
    for (const std::string& a : args) {
        argv.push_back(a.c_str());
    }

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());

        if (gen->parsed()) {
            return cmd_gen(gen_args);
        }
        if (validate->parsed()) {
            return cmd_validate(validate_file);
        }
        if (info->parsed()) {
            return cmd_info(info_args);
        }
        if (identity->parsed()) {
            return cmd_identity_check(check_args);
        }
        if (channel->parsed()) {
            if (ch_apply->parsed()) {
                return cmd_channel_apply(channel_args);
            }
            return ch_check->parsed() ? cmd_channel_check(channel_args)
                                      : cmd_channel_norms(channel_args);
        }
        if (rand->parsed()) {
            return rand_state->parsed() ? cmd_rand_state(rand_args)
                                        : cmd_rand_channel(rand_args);
        }
        if (probe->parsed()) {
            if (probe_report->parsed()) {
                return cmd_probe_report(probe_args.shots_file);
            }
            if (probe_args.channel.empty() || probe_args.scheme.empty()) {
                return fail(2, "usage", "probe needs --channel and --scheme");
            }
            if (probe_args.shots < 2) {
                return fail(2, "usage", "--shots must be at least 2");
            }
            return cmd_probe(probe_args);
        }
        return fail(2, "usage", "no subcommand given");
    } catch (const CLI::CallForHelp&) {
        return finish(0, json{{"help", app.help("", CLI::AppFormatMode::All)}});
    } catch (const CLI::CallForAllHelp&) {
        return finish(0, json{{"help", app.help("", CLI::AppFormatMode::All)}});
    } catch (const CLI::CallForVersion&) {
        return finish(0, json{{"version", kCliVersion}});
    } catch (const CLI::ParseError& e) {
        return fail(2, "usage", e.what());
    } catch (const IoError& e) {
        return fail(3, "io", e.what());
    } catch (const UnsupportedError& e) {
        return fail(1, "unsupported", e.what());
    } catch (const DimensionError& e) {
        return fail(1, "dimension", e.what());
    } catch (const FeasibilityError& e) {
        json j{{"error",
                {{"kind", "feasibility"}, {"message", e.what()},
                 {"max_feasible", e.max_feasible}}}};
        return finish(1, j);
    } catch (const ConvergenceError& e) {
        return fail(1, "convergence", e.what());
    } catch (const Error& e) {
        return fail(1, "failure", e.what());
    } catch (const std::invalid_argument& e) {
        return fail(2, "usage", e.what());
    } catch (const std::exception& e) {
        return fail(1, "internal", e.what());
    }
}

}  // namespace bzi
