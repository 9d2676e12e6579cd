#include "diffset/cli.hpp"

#include "diffset/errors.hpp"
#include "diffset/serialize.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace diffset {

namespace {

long to_long(const std::string& s, const char* what) {
    Int z(s);
    if (!z.fits_slong_p()) throw malformed_error(std::string(what) + ": value out of range");
    return z.get_si();
}

void require_flag(const std::string& value, const char* flag, const std::string& case_name) {
    if (value.empty())
        throw malformed_error("check --case " + case_name + " requires " + flag);
}

void require_not_csv(const std::string& fmt, const char* what) {
    if (fmt == "csv")
        throw malformed_error(std::string(what) + ": csv output is not defined; use json or text");
}

GroupRingElement build_set(const std::string& group_text, const std::vector<std::string>& elems) {
    AbelianGroup g = parse_group_literal(group_text);
    std::vector<GroupElem> members;
    members.reserve(elems.size());
    for (const std::string& e : elems) members.push_back(parse_element_literal(g, e));
    return GroupRingElement::subset(g, members);
}

std::vector<long> report_tuple(const ConditionReport& rep) {
    if (rep.odd_prime)
        return {rep.p.get_si(),
                rep.odd_prime->x,
                rep.odd_prime->s,
                rep.odd_prime->alpha.get_si(),
                rep.odd_prime->eta.get_si(),
                rep.odd_prime->gamma.get_si()};
    return {rep.quad->u1.get_si(), rep.quad->u2.get_si(), rep.quad->gamma.get_si()};
}

void print_condition_text(const ConditionReport& rep) {
    std::cout << "kind: " << rep.kind << "\n"
              << "derived: v = " << rep.v << ", k = " << rep.k << ", lambda = " << rep.lambda
              << ", n = " << rep.n << ", sqrt(n) = " << rep.sqrt_n << ", w = " << rep.w
              << ", s = " << rep.s << ", p = " << rep.p << "\n"
              << "value: a = " << rep.a.str() << " in Q(sqrt(" << rep.d << "))\n";
    if (rep.min_l)
        std::cout << "quotient index: min l = " << *rep.min_l << ", max l = "
                  << (rep.max_l ? rep.max_l->get_str() : std::string("-")) << "\n";
    for (const D1Ledger& led : rep.ledgers) {
        std::cout << "d1 = " << led.d1 << ": " << led.fails << " fail(s) of "
                  << led.items.size() << "\n";
        for (const ConditionItem& item : led.items)
            if (item.verdict == Verdict::fail)
                std::cout << "  FAIL " << item.id << " (" << item.statement << "): "
                          << item.witness << "\n";
    }
    for (const std::string& note : rep.notes) std::cout << "note: " << note << "\n";
    std::cout << "feasible: " << (rep.feasible ? "yes" : "no") << "\n";
}

int emit_condition_report(const ConditionReport& rep, const std::string& fmt) {
    if (fmt == "json") {
        std::cout << canonical_pretty(condition_report_json(rep)) << "\n";
    } else if (fmt == "csv") {
        std::cout << csv_header(rep) << "\n";
        for (const std::string& row : csv_rows(rep)) std::cout << row << "\n";
    } else {
        print_condition_text(rep);
    }
    return rep.feasible ? 0 : 1;
}

struct VerifyArgs {
    std::string group, fmt = "text";
    std::vector<std::string> set;
    long jobs = 1;
};

int run_verify(const VerifyArgs& a) {
    require_not_csv(a.fmt, "verify");
    GroupRingElement d = build_set(a.group, a.set);
    DesignCert cert = verify_difference_set(d);
    bool by_chars = verify_by_characters(d, a.jobs);
    if (cert.is_ds != by_chars)
        throw contract_error("convolution and character verification disagree");
    if (a.fmt == "json") {
        Json j{{"character_check", by_chars},
               {"convolution", design_cert_json(cert)},
               {"instance", dset_json(d)}};
        std::cout << canonical_pretty(j) << "\n";
    } else {
        const AbelianGroup& g = d.group();
        std::cout << "group " << group_literal(g) << ", v = " << g.order() << ", k = "
                  << d.support_size() << "\n";
        if (cert.is_ds)
            std::cout << "convolution: (" << g.order() << "," << cert.k << "," << cert.lambda
                      << ") difference set, n = " << cert.n << "\n";
        else
            std::cout << "convolution: not a difference set (" << cert.reason << ")\n";
        std::cout << "character sums: " << (by_chars ? "difference set" : "not a difference set")
                  << "\nmethods agree\n";
    }
    return cert.is_ds ? 0 : 1;
}

struct SpectrumArgs {
    std::string group, fmt = "text";
    std::vector<std::string> set;
    long jobs = 1;
};

int run_spectrum(const SpectrumArgs& a) {
    require_not_csv(a.fmt, "spectrum");
    GroupRingElement d = build_set(a.group, a.set);
    SpectrumReport rep = spectrum(d, a.jobs);
    bool profiled = rep.three.has_value() && rep.three->c > 0;
    if (a.fmt == "json") {
        Json j{{"profile", profiled ? profile_json(three_value_profile(d, a.jobs)) : Json()},
               {"spectrum", spectrum_json(rep)}};
        std::cout << canonical_pretty(j) << "\n";
        return 0;
    }
    std::cout << "v = " << rep.v << ", k = " << rep.k << ", d1 = " << rep.d1 << "\n"
              << "distinct nontrivial values: " << rep.values.size() << "\n";
    for (size_t i = 0; i < rep.values.size(); ++i) {
        std::cout << "  value " << i + 1 << ": ";
        const Recognition& r = rep.recognized[i];
        if (r.kind == Recognition::Kind::none)
            std::cout << "degree > 2 (orbit size " << r.orbit_size << ")";
        else
            std::cout << r.value.str();
        std::cout << ", |U| = " << rep.u_sets[i].size() << "\n";
    }
    if (rep.three) {
        std::cout << "three-value shape: c = " << rep.three->c << ", a = " << rep.three->a.str()
                  << ", d = " << rep.three->d << "\n";
        if (profiled) {
            ThreeValueProfile prof = three_value_profile(d, a.jobs);
            std::cout << "profile: |U_a| = " << prof.u_a << ", |U_c| = " << prof.u_c
                      << ", |D meet D^(-1)| = " << prof.intersection << "\n";
        } else {
            std::cout << "real value is negative; the profile applies to the complement\n";
        }
    } else if (!rep.three_absent_reason.empty()) {
        std::cout << "no three-value shape: " << rep.three_absent_reason << "\n";
    }
    return 0;
}

struct CheckArgs {
    std::string case_name, fmt = "text";
    std::string p, x, s, alpha, eta, gamma;
    std::string u1, u2;
    std::string v, k, n, a, d1;
    std::string group;
};

int run_check(const CheckArgs& c) {
    if (c.case_name == "odd-prime") {
        require_flag(c.p, "--p", c.case_name);
        require_flag(c.x, "--x", c.case_name);
        require_flag(c.s, "--s", c.case_name);
        require_flag(c.alpha, "--alpha", c.case_name);
        require_flag(c.eta, "--eta", c.case_name);
        require_flag(c.gamma, "--gamma", c.case_name);
        OddPrimeParams params;
        params.p = Int(c.p);
        params.x = to_long(c.x, "--x");
        params.s = to_long(c.s, "--s");
        params.alpha = Int(c.alpha);
        params.eta = Int(c.eta);
        params.gamma = Int(c.gamma);
        return emit_condition_report(check_odd_prime(params), c.fmt);
    }
    if (c.case_name == "d-2" || c.case_name == "d-1") {
        require_flag(c.u1, "--u1", c.case_name);
        require_flag(c.u2, "--u2", c.case_name);
        require_flag(c.gamma, "--gamma", c.case_name);
        QuadCaseParams params;
        params.d = c.case_name == "d-2" ? -2 : -1;
        params.u1 = Int(c.u1);
        params.u2 = Int(c.u2);
        params.gamma = Int(c.gamma);
        if (c.group.empty()) return emit_condition_report(check_quad_case(params), c.fmt);
        AbelianGroup g = parse_group_literal(c.group);
        return emit_condition_report(check_quad_case(params, &g), c.fmt);
    }
    if (c.case_name == "general") {
        require_flag(c.p, "--p", c.case_name);
        require_flag(c.v, "--v", c.case_name);
        require_flag(c.k, "--k", c.case_name);
        require_flag(c.n, "--n", c.case_name);
        require_flag(c.a, "--a", c.case_name);
        require_flag(c.d1, "--d1", c.case_name);
        Quad a = parse_quad_literal(c.a);
        long d1 = to_long(c.d1, "--d1");
        if (c.group.empty())
            return emit_condition_report(
                check_general(Int(c.p), Int(c.v), Int(c.k), Int(c.n), a, d1), c.fmt);
        AbelianGroup g = parse_group_literal(c.group);
        return emit_condition_report(
            check_general(Int(c.p), Int(c.v), Int(c.k), Int(c.n), a, d1, &g), c.fmt);
    }
    // hadamard
    require_not_csv(c.fmt, "check --case hadamard");
    require_flag(c.v, "--v", c.case_name);
    require_flag(c.k, "--k", c.case_name);
    require_flag(c.a, "--a", c.case_name);
    SpecialCaseReport rep = check_special_hadamard(Int(c.v), Int(c.k), parse_quad_literal(c.a));
    if (c.fmt == "json") {
        std::cout << canonical_pretty(special_report_json(rep)) << "\n";
    } else {
        std::cout << "applicable: " << (rep.applicable ? "yes" : "no") << "\n";
        std::cout << "hypotheses: trace zero = " << (rep.trace_zero ? "yes" : "no")
                  << ", p-group = " << (rep.p_group ? "yes" : "no")
                  << ", forced M subgroup = " << (rep.m_subgroup_forced ? "yes" : "no") << "\n";
        if (rep.feasible)
            std::cout << "feasible: yes (m = " << rep.m << ", |H| = " << rep.h_order
                      << ", d1 = " << rep.d1 << ")\n";
        else
            std::cout << "feasible: no\n";
        if (!rep.reason.empty()) std::cout << "reason: " << rep.reason << "\n";
        for (const std::string& ded : rep.deductions) std::cout << "  - " << ded << "\n";
    }
    return rep.applicable && rep.feasible ? 0 : 1;
}

struct SweepArgs {
    std::string case_name = "odd-prime", fmt = "text", checkpoint, primes;
    bool long_run = false;
    long threshold = 0;
    long jobs = 1;
    long x_max = 0, s_max = 0, alpha_max = 0, eta_max = 0, gamma_max = 0;
    long u1_min = 0, u2_max = 0, quad_gamma_max = 0;
    CLI::Option *o_x = nullptr, *o_s = nullptr, *o_alpha = nullptr, *o_eta = nullptr,
                *o_gamma = nullptr, *o_u1 = nullptr, *o_u2 = nullptr, *o_qgamma = nullptr,
                *o_primes = nullptr;
};

int run_sweep(const SweepArgs& a) {
    SweepCase kind = parse_sweep_case(a.case_name);
    SweepSpec spec = a.long_run ? long_run_spec(kind) : desk_spec(kind);
    if (a.o_primes->count()) {
        spec.primes.clear();
        for (const std::string& tok : CLI::detail::split(a.primes, ','))
            spec.primes.push_back(to_long(tok, "--primes"));
    }
    if (a.o_x->count()) spec.x_max = a.x_max;
    if (a.o_s->count()) spec.s_max = a.s_max;
    if (a.o_alpha->count()) spec.alpha_max = a.alpha_max;
    if (a.o_eta->count()) spec.eta_max = a.eta_max;
    if (a.o_gamma->count()) spec.gamma_max = a.gamma_max;
    if (a.o_u1->count()) spec.u1_min = a.u1_min;
    if (a.o_u2->count()) spec.u2_max = a.u2_max;
    if (a.o_qgamma->count()) spec.quad_gamma_max = a.quad_gamma_max;
    spec.near_miss_threshold = a.threshold;
    spec.jobs = a.jobs;

    std::optional<SweepCursor> resume;
    if (!a.checkpoint.empty()) {
        std::ifstream in(a.checkpoint);
        if (in.good()) {
            Json j;
            try {
                j = Json::parse(in);
            } catch (const Json::parse_error& e) {
                throw malformed_error(std::string("checkpoint: ") + e.what());
            }
            SweepCheckpoint ck = checkpoint_from_json(j);
            SweepSpec normalized = ck.spec;
            normalized.jobs = spec.jobs; // parallelism does not change the stream
            if (!(normalized == spec))
                throw malformed_error("checkpoint: stored sweep spec does not match the request");
            resume = ck.cursor;
        }
    }

    bool header_done = false;
    std::optional<SweepCursor> cursor = resume;
    auto write_checkpoint = [&]() {
        if (a.checkpoint.empty()) return;
        SweepCheckpoint ck;
        ck.spec = spec;
        ck.cursor = cursor;
        std::ofstream out(a.checkpoint, std::ios::trunc);
        if (!out.good()) throw malformed_error("checkpoint: cannot write " + a.checkpoint);
        out << canonical_pretty(checkpoint_json(ck)) << "\n";
    };

    SweepResult res = sweep(
        spec,
        [&](const ConditionReport& rep) {
            cursor = report_tuple(rep);
            if (a.fmt == "json") {
                std::cout << canonical_line(condition_report_json(rep)) << "\n";
            } else if (a.fmt == "csv") {
                if (!header_done) {
                    std::cout << csv_header(rep) << "\n";
                    header_done = true;
                }
                for (const std::string& row : csv_rows(rep)) std::cout << row << "\n";
            } else {
                std::cout << "tuple (";
                std::vector<long> t = report_tuple(rep);
                for (size_t i = 0; i < t.size(); ++i) std::cout << (i ? "," : "") << t[i];
                long best = rep.ledgers.front().fails;
                for (const D1Ledger& led : rep.ledgers) best = std::min(best, led.fails);
                std::cout << "): v = " << rep.v << ", k = " << rep.k << ", best fails = " << best
                          << (rep.feasible ? ", feasible" : "") << "\n";
            }
            write_checkpoint();
        },
        resume);
    write_checkpoint();
    if (a.fmt == "text")
        std::cout << "emitted " << res.emitted << " of " << res.derived << " derived tuples\n";
    return res.emitted > 0 ? 0 : 1;
}

struct EnumArgs {
    std::string group, fmt = "text";
    long k = 0, lambda = 0;
    bool three_valued = false, up_to_translation = false;
};

int run_enumerate(const EnumArgs& a) {
    require_not_csv(a.fmt, "enumerate");
    EnumSpec spec{parse_group_literal(a.group), a.k, a.lambda, a.up_to_translation,
                  a.three_valued};
    long count = 0;
    if (a.three_valued) {
        for (const ThreeValuedInstance& hit : find_three_valued(spec)) {
            ++count;
            if (a.fmt == "json") {
                Json j{{"complemented", hit.complemented},
                       {"instance", dset_json(hit.dset)},
                       {"spectrum", spectrum_json(hit.report)}};
                std::cout << canonical_line(j) << "\n";
            } else {
                std::cout << dset_line(hit.dset) << (hit.complemented ? "  # complement" : "")
                          << "\n";
            }
        }
    } else {
        for (const GroupRingElement& d : enumerate_difference_sets(spec)) {
            ++count;
            std::cout << (a.fmt == "json" ? canonical_line(dset_json(d)) : dset_line(d)) << "\n";
        }
    }
    std::cerr << count << " instance(s)\n";
    return count > 0 ? 0 : 1;
}

struct AuditArgs {
    std::string group, fmt = "text";
    std::vector<std::string> set;
    long jobs = 1;
};

int run_audit(const AuditArgs& a) {
    require_not_csv(a.fmt, "audit");
    GroupRingElement d = build_set(a.group, a.set);
    AuditReport rep = special_case_audit(d, a.jobs);
    if (a.fmt == "json") {
        std::cout << canonical_pretty(audit_json(rep)) << "\n";
        return rep.applicable ? 0 : 1;
    }
    std::cout << "applicable: " << (rep.applicable ? "yes" : "no") << "\n";
    if (!rep.applicable) {
        std::cout << "reason: " << rep.reason << "\n";
        return 1;
    }
    std::cout << "hypotheses: hadamard = " << (rep.hadamard ? "yes" : "no") << ", p-group = "
              << (rep.p_group ? "yes" : "no") << ", M subgroup = "
              << (rep.m_subgroup ? "yes" : "no") << "\n"
              << "m = " << rep.m_param << ", |H| = " << rep.h_order << ", d1 = " << rep.d1
              << "\n"
              << "H^perp = M: " << (rep.h_perp_equals_m ? "yes" : "no") << "\n"
              << "character table rows verified: " << (rep.table2_ok ? "yes" : "no") << "\n";
    return 0;
}

} // namespace

int cli_run(int argc, const char* const* argv) {
    CLI::App app{"Exact difference-set verification, spectra, and feasibility analysis in "
                 "finite abelian groups"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value file mirroring the flags");
    auto add_format = [](CLI::App* cmd, std::string& fmt) {
        cmd->add_option("--format", fmt, "output format")
            ->check(CLI::IsMember({"json", "csv", "text"}));
    };

    int result = 2;

    VerifyArgs verify_args;
    CLI::App* verify_cmd =
        app.add_subcommand("verify", "verify a difference set by convolution and by characters");
    verify_cmd->configurable();
    verify_cmd->add_option("--group", verify_args.group, "invariant factors, e.g. 4,4")
        ->required();
    verify_cmd->add_option("--set", verify_args.set, "set element, repeatable, e.g. 1,2");
    verify_cmd->add_option("--jobs", verify_args.jobs, "worker threads");
    add_format(verify_cmd, verify_args.fmt);

    SpectrumArgs spectrum_args;
    CLI::App* spectrum_cmd =
        app.add_subcommand("spectrum", "character-value spectrum and three-value profile");
    spectrum_cmd->configurable();
    spectrum_cmd->add_option("--group", spectrum_args.group, "invariant factors")->required();
    spectrum_cmd->add_option("--set", spectrum_args.set, "set element, repeatable");
    spectrum_cmd->add_option("--jobs", spectrum_args.jobs, "worker threads");
    add_format(spectrum_cmd, spectrum_args.fmt);

    CheckArgs check_args;
    CLI::App* check_cmd = app.add_subcommand("check", "feasibility condition ledgers");
    check_cmd->configurable();
    check_cmd
        ->add_option("--case", check_args.case_name,
                     "general | odd-prime | d-2 | d-1 | hadamard")
        ->required()
        ->check(CLI::IsMember({"general", "odd-prime", "d-2", "d-1", "hadamard"}));
    check_cmd->add_option("--p", check_args.p, "prime of the value field");
    check_cmd->add_option("--x", check_args.x, "valuation parameter x");
    check_cmd->add_option("--s", check_args.s, "p-adic valuation of v");
    check_cmd->add_option("--alpha", check_args.alpha, "alpha parameter");
    check_cmd->add_option("--eta", check_args.eta, "eta parameter");
    check_cmd->add_option("--gamma", check_args.gamma, "gamma parameter");
    check_cmd->add_option("--u1", check_args.u1, "u1 parameter");
    check_cmd->add_option("--u2", check_args.u2, "u2 parameter");
    check_cmd->add_option("--v", check_args.v, "group order v");
    check_cmd->add_option("--k", check_args.k, "set size k");
    check_cmd->add_option("--n", check_args.n, "order n = k - lambda");
    check_cmd->add_option("--a", check_args.a, "character value, e.g. \"2*sqrt(-1)\"");
    check_cmd->add_option("--d1", check_args.d1, "identity coefficient, 0 or 1");
    check_cmd->add_option("--group", check_args.group, "optional concrete group");
    add_format(check_cmd, check_args.fmt);

    SweepArgs sweep_args;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "parameter survey over a case family");
    sweep_cmd->configurable();
    sweep_cmd->add_option("--case", sweep_args.case_name, "odd-prime | d-2 | d-1")
        ->check(CLI::IsMember({"odd-prime", "d-2", "d-1"}));
    sweep_cmd->add_flag("--long-run", sweep_args.long_run,
                        "full published-scale ranges instead of desk scale");
    sweep_args.o_primes = sweep_cmd->add_option("--primes", sweep_args.primes, "comma list, e.g. 3,7");
    sweep_args.o_x = sweep_cmd->add_option("--x-max", sweep_args.x_max, "largest x");
    sweep_args.o_s = sweep_cmd->add_option("--s-max", sweep_args.s_max, "largest s");
    sweep_args.o_alpha = sweep_cmd->add_option("--alpha-max", sweep_args.alpha_max, "largest alpha");
    sweep_args.o_eta = sweep_cmd->add_option("--eta-max", sweep_args.eta_max, "largest eta");
    sweep_args.o_gamma =
        sweep_cmd->add_option("--gamma-max", sweep_args.gamma_max, "gamma cap, 0 = full range");
    sweep_args.o_u1 = sweep_cmd->add_option("--u1-min", sweep_args.u1_min, "most negative u1");
    sweep_args.o_u2 = sweep_cmd->add_option("--u2-max", sweep_args.u2_max, "largest u2");
    sweep_args.o_qgamma =
        sweep_cmd->add_option("--quad-gamma-max", sweep_args.quad_gamma_max, "largest gamma");
    sweep_cmd->add_option("--threshold", sweep_args.threshold, "near-miss fail threshold");
    sweep_cmd->add_option("--jobs", sweep_args.jobs, "worker threads");
    sweep_cmd->add_option("--checkpoint", sweep_args.checkpoint, "checkpoint file path");
    add_format(sweep_cmd, sweep_args.fmt);

    EnumArgs enum_args;
    CLI::App* enum_cmd = app.add_subcommand("enumerate", "exhaustive difference-set search");
    enum_cmd->configurable();
    enum_cmd->add_option("--group", enum_args.group, "invariant factors")->required();
    enum_cmd->add_option("--k", enum_args.k, "set size")->required();
    enum_cmd->add_option("--lambda", enum_args.lambda, "design lambda")->required();
    enum_cmd->add_flag("--three-valued", enum_args.three_valued,
                       "keep only three-valued spectra, with normalized complements");
    enum_cmd->add_flag("--up-to-translation", enum_args.up_to_translation,
                       "one representative per translation class");
    add_format(enum_cmd, enum_args.fmt);

    AuditArgs audit_args;
    CLI::App* audit_cmd =
        app.add_subcommand("audit", "structural special-case audit of a concrete set");
    audit_cmd->configurable();
    audit_cmd->add_option("--group", audit_args.group, "invariant factors")->required();
    audit_cmd->add_option("--set", audit_args.set, "set element, repeatable");
    audit_cmd->add_option("--jobs", audit_args.jobs, "worker threads");
    add_format(audit_cmd, audit_args.fmt);

    try {
        app.parse(argc, argv);
        // dispatch by hand; a config-file section and a command-line mention
        // both count as occurrences, so per-occurrence callbacks can fire twice
        if (app.got_subcommand(verify_cmd)) result = run_verify(verify_args);
        else if (app.got_subcommand(spectrum_cmd)) result = run_spectrum(spectrum_args);
        else if (app.got_subcommand(check_cmd)) result = run_check(check_args);
        else if (app.got_subcommand(sweep_cmd)) result = run_sweep(sweep_args);
        else if (app.got_subcommand(enum_cmd)) result = run_enumerate(enum_args);
        else if (app.got_subcommand(audit_cmd)) result = run_audit(audit_args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) { // malformed parameters
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) { // negative profile verdicts
        std::cerr << "infeasible: " << e.what() << "\n";
        return 1;
    }
    return result;
}

} // namespace diffset
