// hyperpart: sector partitions, translated-disk families, covering defects,
// and least-squares universal targets, driven by JSON configs.
//
// Exit codes: 0 pass, 2 validation/usage error, 3 verification failure,
// 4 numerical failure, 1 unexpected.

#include "hyperpart/config.hpp"
#include "hyperpart/covering.hpp"
#include "hyperpart/disks.hpp"
#include "hyperpart/errors.hpp"
#include "hyperpart/kernels.hpp"
#include "hyperpart/reports.hpp"
#include "hyperpart/svg.hpp"

#include "CLI11.hpp"

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace hyperpart;

struct Opts {
    std::string config_path;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::optional<std::int64_t> samples;
    std::optional<std::int64_t> degree;
    std::optional<std::string> precision;
};

void add_common(CLI::App* cmd, Opts& o) {
    cmd->add_option("--config", o.config_path, "JSON config file")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--out", o.out, "output path (default: config's out, else stdout)");
    cmd->add_option("--seed", o.seed, "override the config seed");
}

RunConfig load(const Opts& o) {
    RunConfig rc = load_config(o.config_path);
    if (o.seed) rc.seed = *o.seed;
    if (o.samples) rc.covering_samples = *o.samples;
    if (o.degree) rc.fit.degree = *o.degree;
    if (o.precision) {
        if (*o.precision == "double")
            rc.fit.precision = Precision::Double;
        else if (*o.precision == "extended")
            rc.fit.precision = Precision::Extended;
        else
            throw ValidationError("--precision must be double or extended");
    }
    if (!o.out.empty()) rc.out = o.out;
    return rc;
}

void emit(const RunConfig& rc, const std::string& content) {
    if (rc.out.empty())
        std::cout << content;
    else
        atomic_write_text(rc.out, content);
}

Partition make_partition(const RunConfig& rc) {
    auto seq = rc.make_sequence();
    MuView mu = rc.make_witness(seq);
    mu.require_gaps_above(rc.pconfig.c1());
    return Partition(rc.pconfig, std::move(mu), rc.ladder_budget);
}

int cmd_gen_sequence(const Opts& o) {
    const RunConfig rc = load(o);
    auto seq = rc.make_sequence();
    emit(rc, sequence_json(*seq, rc.sequence_prefix));
    return 0;
}

int cmd_verify_geometry(const Opts& o) {
    const RunConfig rc = load(o);
    const Partition part = make_partition(rc);
    const PartitionInvariants inv = check_partition_invariants(part, rc.truncation);
    const SeparationReport base = verify_base(part, rc.truncation);
    const SeparationReport pw = verify_pairwise(part, rc.truncation, rc.seed);
    emit(rc, geometry_json(base, pw, inv));
    const bool pass =
        base.all_positive && pw.all_positive && inv.sigma_ok && inv.ladder_monotone;
    return pass ? 0 : 3;
}

int cmd_verify_covering(const Opts& o) {
    const RunConfig rc = load(o);
    const Partition part = make_partition(rc);
    const CoveringScan scan = scan_covering(part, rc.covering_samples, rc.seed, rc.exec);
    emit(rc, covering_json(scan, rc.pconfig));
    return covering_pass(scan, rc.pconfig) ? 0 : 3;
}

int cmd_build_universal(const Opts& o) {
    const RunConfig rc = load(o);
    if (!rc.target)
        throw ValidationError("build-universal needs a target section in the config");
    const Partition part = make_partition(rc);
    const std::int64_t m1 = uniform_bound_m1(part, rc.truncation);
    const PiecewiseTarget h = build_h(part, rc.truncation, *rc.target);
    const FitResult fit = fit_polynomial(h, rc.fit);
    const std::int64_t ring =
        rc.sup_multiplier * std::max<std::int64_t>(fit.samples_per_disk, 1);
    const std::vector<double> per_disk = sup_error(fit.f, h, ring);
    const MembershipReport rep =
        verify_membership(fit.f, part, h, per_disk, *rc.target, m1, rc.grid_nr,
                          rc.grid_ntheta, rc.zsamples, rc.exec);
    emit(rc, certificate_json(part, rc.truncation, *rc.target, h, fit, per_disk,
                              rep, m1));
    return rep.pass_fraction == 1.0 ? 0 : 3;
}

int cmd_export_svg(const Opts& o) {
    const RunConfig rc = load(o);
    const Partition part = make_partition(rc);
    emit(rc, render_svg(part, rc.truncation));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"sector partition and universal-target toolkit"};
    app.require_subcommand(1);

    Opts o;
    CLI::App* gen = app.add_subcommand("gen-sequence", "emit the configured sequence");
    add_common(gen, o);
    CLI::App* geo =
        app.add_subcommand("verify-geometry", "disk separation + partition invariants");
    add_common(geo, o);
    CLI::App* cov =
        app.add_subcommand("verify-covering", "quasi-random covering defect scan");
    add_common(cov, o);
    cov->add_option("--samples", o.samples, "override sample count");
    CLI::App* bld = app.add_subcommand("build-universal",
                                       "fit a universal target and verify membership");
    add_common(bld, o);
    bld->add_option("--degree", o.degree, "override fit degree");
    bld->add_option("--precision", o.precision, "double or extended")
        ->check(CLI::IsMember({"double", "extended"}));
    CLI::App* svg = app.add_subcommand("export-svg", "draw the truncated enumeration");
    add_common(svg, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (gen->parsed()) return cmd_gen_sequence(o);
        if (geo->parsed()) return cmd_verify_geometry(o);
        if (cov->parsed()) return cmd_verify_covering(o);
        if (bld->parsed()) return cmd_build_universal(o);
        if (svg->parsed()) return cmd_export_svg(o);
        std::cerr << "no subcommand\n";
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 2;
    } catch (const ExhaustionError& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return 3;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
