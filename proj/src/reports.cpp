#include "hyperpart/reports.hpp"
#include "hyperpart/errors.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace hyperpart {

namespace {

using nlohmann::json;

json complex_pair(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

// nlohmann emits "null" for non-finite doubles; make that explicit so readers
// of the reports see a deliberate choice rather than an accident.
json finite_or_null(double x) {
    if (std::isfinite(x)) return x;
    return nullptr;
}

json config_json(const PartitionConfig& cfg) {
    json j;
    j["mode"] = cfg.mode == ConstantsMode::Free ? "free" : "derived";
    j["sector"] = {{"r0", cfg.r0}, {"R0", cfg.R0}, {"theta0", cfg.theta0}, {"thetaT", cfg.thetaT}};
    j["c1"] = cfg.c1();
    j["c2"] = cfg.c2;
    j["c3"] = cfg.c3();
    j["c4"] = cfg.c4;
    if (cfg.mode == ConstantsMode::Derived) {
        j["delta0"] = cfg.delta0;
        j["R1"] = cfg.R1;
    }
    return j;
}

json truncation_json(const Truncation& t) {
    json j;
    j["max_levels"] = t.max_levels;
    j["max_points_per_level"] = t.max_points_per_level;
    if (t.theta_window)
        j["theta_window"] = json::array({t.theta_window->first, t.theta_window->second});
    else
        j["theta_window"] = nullptr;
    return j;
}

} // namespace

std::string sequence_json(const ComplexSequence& seq, std::int64_t prefix) {
    json j;
    switch (seq.kind()) {
        case SeqKind::Arithmetic:
            j["kind"] = "arithmetic";
            j["alpha"] = seq.alpha();
            j["beta"] = seq.beta();
            break;
        case SeqKind::Prop61: {
            j["kind"] = "prop61";
            const Prop61Blocks* b = seq.blocks();
            j["M0"] = b->params().M0.convert_to<double>();
            j["cap"] = b->params().cap;
            j["blocks_within_cap"] = b->blocks_within_cap();
            json blocks = json::array();
            for (int i = 1; i <= b->blocks_within_cap(); ++i) {
                const Prop61Block& blk = b->block(i);
                json jb;
                jb["index"] = blk.index;
                jb["a"] = blk.a.convert_to<double>();
                jb["a_exact"] = blk.a.str();
                jb["first"] = blk.first;
                jb["last"] = blk.last;
                jb["truncated"] = blk.truncated;
                blocks.push_back(std::move(jb));
            }
            j["blocks"] = std::move(blocks);
            break;
        }
        case SeqKind::Explicit:
            j["kind"] = "explicit";
            j["size"] = seq.max_index();
            break;
    }
    const std::int64_t n = std::min(prefix, seq.max_index());
    json terms = json::array();
    for (std::int64_t k = 1; k <= n; ++k) terms.push_back(complex_pair(seq.term(k)));
    j["prefix"] = std::move(terms);
    const GrowthIndexEstimate gi = i_lambda_estimate(seq, n);
    j["growth_index"] = {{"value", gi.value}, {"exact", gi.exact}};
    return j.dump(2) + "\n";
}

std::string witness_json(const MuView& mu, std::int64_t prefix) {
    json j;
    j["gap_bound"] = mu.gap_bound();
    j["closed_form"] = mu.is_closed_form();
    const std::int64_t n = std::min(prefix, mu.capacity());
    json entries = json::array();
    for (std::int64_t k = 1; k <= n; ++k) {
        json e;
        e["k"] = k;
        e["source_index"] = mu.source_index(k);
        e["modulus"] = mu.modulus(k);
        e["value"] = complex_pair(mu.value(k));
        entries.push_back(std::move(e));
    }
    j["entries"] = std::move(entries);
    if (n >= 1) j["recip_sum_prefix"] = mu.partial_sum(1, n);
    return j.dump(2) + "\n";
}

std::string partition_points_jsonl(const Partition& part, const Truncation& t) {
    std::ostringstream out;
    part.for_each(t, [&](const PartitionPoint& p) {
        const DiskAssignment da = assign_mu(p, part.mu(), part.config());
        json j;
        j["level"] = p.level;
        j["n"] = p.n;
        j["k"] = p.k;
        j["j"] = p.j;
        j["r"] = p.r;
        j["theta_turns"] = p.theta;
        const std::complex<double> w = p.w();
        j["re"] = w.real();
        j["im"] = w.imag();
        j["mu_index"] = da.mu_index;
        j["mu_abs"] = std::abs(da.mu_value);
        out << j.dump() << "\n";
    });
    return out.str();
}

std::string disks_jsonl(const Partition& part, const Truncation& t) {
    std::ostringstream out;
    part.for_each(t, [&](const PartitionPoint& p) {
        const DiskAssignment da = assign_mu(p, part.mu(), part.config());
        json j;
        j["level"] = p.level;
        j["n"] = p.n;
        j["mu_index"] = da.mu_index;
        j["lambda_index"] = da.lambda_index;
        j["mu"] = complex_pair(da.mu_value);
        j["center_re"] = da.disk.center.real();
        j["center_im"] = da.disk.center.imag();
        j["radius"] = da.disk.radius;
        out << j.dump() << "\n";
    });
    return out.str();
}

std::string separation_json(const SeparationReport& rep) {
    json j;
    j["points"] = rep.points;
    j["all_positive"] = rep.all_positive;
    j["min_margin"] = finite_or_null(rep.min_margin);
    j["jordan_min_slack"] = finite_or_null(rep.jordan_min_slack);
    json cats = json::array();
    for (const CategoryStats& c : rep.categories) {
        json jc;
        jc["category"] = pair_category_name(c.category);
        jc["floor"] = c.analytic_floor;
        jc["min_margin"] = finite_or_null(c.min_margin);
        jc["pairs_checked"] = c.pairs_checked;
        jc["exhaustive"] = c.exhaustive;
        jc["argmin_pair"] = {{"a", {{"level", c.a_level}, {"n", c.a_n}}},
                             {"b", {{"level", c.b_level}, {"n", c.b_n}}}};
        cats.push_back(std::move(jc));
    }
    j["categories"] = std::move(cats);
    return j.dump(2) + "\n";
}

PartitionInvariants check_partition_invariants(const Partition& part,
                                               const Truncation& t) {
    PartitionInvariants inv;
    const RadialLadder& ladder = part.ladder();
    inv.crossed = ladder.crossed();
    inv.horizon = ladder.horizon();
    std::int64_t levels = part.usable_levels();
    if (t.max_levels >= 0) levels = std::min(levels, t.max_levels);
    inv.levels_checked = levels;
    for (std::int64_t lv = 0; lv < levels; ++lv) {
        const double s = part.level(lv).sigma();
        inv.sigma_max = std::max(inv.sigma_max, s);
        if (!(s < 0.25)) inv.sigma_ok = false;
        if (lv > 0 && !(ladder.r(lv) > ladder.r(lv - 1))) inv.ladder_monotone = false;
    }
    return inv;
}

std::string geometry_json(const SeparationReport& base,
                          const SeparationReport& pairwise,
                          const PartitionInvariants& inv) {
    json j;
    j["base"] = json::parse(separation_json(base));
    j["pairwise"] = json::parse(separation_json(pairwise));
    json ji;
    ji["levels_checked"] = inv.levels_checked;
    ji["sigma_max"] = inv.sigma_max;
    ji["sigma_ok"] = inv.sigma_ok;
    ji["ladder_monotone"] = inv.ladder_monotone;
    ji["crossed"] = inv.crossed;
    ji["horizon"] = inv.horizon;
    j["invariants"] = std::move(ji);
    j["pass"] = base.all_positive && pairwise.all_positive && inv.sigma_ok &&
                inv.ladder_monotone;
    return j.dump(2) + "\n";
}

bool covering_pass(const CoveringScan& scan, const PartitionConfig& cfg) {
    if (cfg.mode != ConstantsMode::Derived) return true;
    return scan.exhausted == 0 && scan.over_delta0 == 0;
}

std::string covering_json(const CoveringScan& scan, const PartitionConfig& cfg) {
    json j;
    j["mode"] = cfg.mode == ConstantsMode::Free ? "free" : "derived";
    j["gate"] = cfg.mode == ConstantsMode::Derived ? "on" : "off";
    j["pass"] = covering_pass(scan, cfg);
    j["samples"] = scan.samples;
    j["located"] = scan.located;
    j["exhausted"] = scan.exhausted;
    j["over_delta0"] = scan.over_delta0;
    j["over_bracket_bound"] = scan.over_bracket_bound;
    j["max_defect"] = scan.max_defect;
    j["mean_defect"] = scan.mean_defect;
    j["max_normalized"] = finite_or_null(scan.max_normalized);
    j["global_bound"] = scan.global_bound;
    j["delta0"] = finite_or_null(scan.delta0);
    j["worst"] = {{"r", scan.worst.r}, {"theta_turns", scan.worst.theta}};
    j["worst_index"] = scan.worst_index;
    j["seed"] = scan.seed;
    return j.dump(2) + "\n";
}

std::string certificate_json(const Partition& part, const Truncation& t,
                             const TargetSpec& target, const PiecewiseTarget& h,
                             const FitResult& fit,
                             const std::vector<double>& per_disk_errors,
                             const MembershipReport& rep, std::int64_t m1) {
    json j;
    j["config"] = config_json(part.config());
    j["truncation"] = truncation_json(t);

    json jt;
    jt["p_degree"] = target.p.degree();
    json pc = json::array();
    for (const auto& c : target.p.to_monomial().coeffs) pc.push_back(complex_pair(c));
    jt["p"] = std::move(pc);
    json gc = json::array();
    for (const auto& c : target.g.to_monomial().coeffs) gc.push_back(complex_pair(c));
    jt["g"] = std::move(gc);
    jt["s1"] = target.s1;
    jt["k1"] = target.k1;
    jt["C_radius"] = target.C_radius;
    jt["eps0"] = target.eps0;
    jt["R1"] = target.R1;
    jt["delta0"] = target.delta0;
    j["target"] = std::move(jt);

    j["disks"] = h.disk_count();
    j["m1"] = m1;

    json jf;
    jf["degree"] = fit.degree;
    jf["rho"] = fit.rho;
    jf["samples_per_disk"] = fit.samples_per_disk;
    jf["rank"] = fit.rank;
    jf["precision"] = fit.precision == Precision::Double ? "double" : "extended";
    jf["residual_max"] = fit.residual_max;
    j["fit"] = std::move(jf);

    json errs = json::array();
    for (double e : per_disk_errors) errs.push_back(finite_or_null(e));
    j["per_disk_errors"] = std::move(errs);

    json jm;
    jm["grid"] = json::array({rep.grid_r, rep.grid_theta});
    jm["zsamples"] = rep.zsamples;
    jm["pass_fraction"] = rep.pass_fraction;
    jm["worst_margin"] = finite_or_null(rep.worst_margin);
    jm["worst_a"] = {{"r", rep.worst_a.r}, {"theta_turns", rep.worst_a.theta}};
    jm["max_defect"] = rep.max_defect;
    j["membership"] = std::move(jm);

    return j.dump(2) + "\n";
}

void atomic_write_text(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) throw IoError("short write to " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw IoError("cannot rename " + tmp + " to " + path);
    }
}

} // namespace hyperpart
