// Serial vs OpenMP timings for the two batch kernels, plus a bitwise equality
// check between the modes. Both paths write per-index slots and reduce in
// index order, so any drift between them is a bug, not scheduling noise.

#include "hyperpart/approx.hpp"
#include "hyperpart/covering.hpp"
#include "hyperpart/kernels.hpp"
#include "hyperpart/partition.hpp"
#include "hyperpart/sequence.hpp"
#include "hyperpart/witness.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <iostream>
#include <memory>
#include <string>

namespace {

using namespace hyperpart;

template <class Fn>
double best_of(int reps, Fn&& fn) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
    }
    return best;
}

bool scans_equal(const CoveringScan& a, const CoveringScan& b) {
    const bool norm_equal =
        (std::isnan(a.max_normalized) && std::isnan(b.max_normalized)) ||
        a.max_normalized == b.max_normalized;
    return a.samples == b.samples && a.located == b.located &&
           a.exhausted == b.exhausted && a.over_delta0 == b.over_delta0 &&
           a.over_bracket_bound == b.over_bracket_bound &&
           a.max_defect == b.max_defect && a.mean_defect == b.mean_defect &&
           norm_equal && a.worst.r == b.worst.r && a.worst.theta == b.worst.theta &&
           a.worst_index == b.worst_index;
}

bool reports_equal(const MembershipReport& a, const MembershipReport& b) {
    if (a.pass_fraction != b.pass_fraction || a.worst_margin != b.worst_margin ||
        a.max_defect != b.max_defect || a.points.size() != b.points.size())
        return false;
    for (std::size_t i = 0; i < a.points.size(); ++i) {
        const MembershipPoint& x = a.points[i];
        const MembershipPoint& y = b.points[i];
        if (!(x.a.r == y.a.r && x.a.theta == y.a.theta && x.level == y.level &&
              x.n == y.n && x.lambda_index == y.lambda_index &&
              x.defect == y.defect && x.sup_err == y.sup_err &&
              x.fit_err == y.fit_err && x.margin == y.margin && x.pass == y.pass))
            return false;
    }
    return true;
}

void row(const std::string& name, std::int64_t work, double serial, double parallel,
         bool identical) {
    std::cout << std::left << std::setw(18) << name << std::right << std::setw(10)
              << work << std::setw(12) << std::fixed << std::setprecision(3)
              << serial << " s" << std::setw(10) << parallel << " s"
              << std::setw(9) << std::setprecision(2) << (serial / parallel) << "x"
              << std::setw(12) << (identical ? "bitwise" : "DIFFER") << "\n";
}

} // namespace

int main() {
    std::cout << "parallel backend: "
              << (parallel_available() ? "OpenMP" : "serial fallback") << "\n";
    std::cout << std::left << std::setw(18) << "kernel" << std::right << std::setw(10)
              << "work" << std::setw(14) << "serial" << std::setw(12) << "parallel"
              << std::setw(10) << "speedup" << std::setw(12) << "results" << "\n";

    bool ok = true;

    // Covering sweep over the wide reference sector, closed-form witness.
    {
        PartitionConfig cfg =
            PartitionConfig::free_constants(0.9, 1.05, 0.0, 0.25, 0.9, 1.05);
        Partition part(cfg, MuView::closed_form(0.0, 10.0, 1, 1));
        part.warm_levels();
        const std::int64_t samples = 200'000;
        CoveringScan ser, par;
        const double ts = best_of(
            3, [&] { ser = scan_covering(part, samples, 42, ExecMode::Serial); });
        const double tp = best_of(
            3, [&] { par = scan_covering(part, samples, 42, ExecMode::Parallel); });
        const bool same = scans_equal(ser, par);
        ok = ok && same;
        row("covering scan", samples, ts, tp, same);
    }

    // Membership grid on the narrow two-disk setup.
    {
        PartitionConfig cfg =
            PartitionConfig::free_constants(0.9, 0.902, 0.0, 0.005, 0.9, 1.05);
        Partition part(cfg,
                       MuView::lazy(std::make_shared<ComplexSequence>(
                                        ComplexSequence::arithmetic(0.0, 1.0)),
                                    cfg.c1()));
        part.warm_levels();
        Truncation full;

        TargetSpec target;
        target.p = Polynomial::monomial({{0.0, 0.0}, {1.0, 0.0}});
        target.g = Polynomial::zero();
        target.s1 = 2;
        target.k1 = 0.5;
        target.eps0 = 0.25;
        target.R1 = 0.55;
        target.delta0 = continuity_delta(target.p, target.R1, target.s1);

        PiecewiseTarget h = build_h(part, full, target);
        FitOptions fo;
        fo.degree = 48;
        FitResult fit = fit_polynomial(h, fo);
        std::vector<double> per = sup_error(fit.f, h, 8 * fit.samples_per_disk);
        const std::int64_t m1 = uniform_bound_m1(part, full);

        const std::int64_t nr = 100, ntheta = 100;
        MembershipReport ser, par;
        const double ts = best_of(2, [&] {
            ser = verify_membership(fit.f, part, h, per, target, m1, nr, ntheta, 64,
                                    ExecMode::Serial);
        });
        const double tp = best_of(2, [&] {
            par = verify_membership(fit.f, part, h, per, target, m1, nr, ntheta, 64,
                                    ExecMode::Parallel);
        });
        const bool same = reports_equal(ser, par);
        ok = ok && same;
        row("membership grid", nr * ntheta, ts, tp, same);
    }

    if (!ok) {
        std::cerr << "serial and parallel results differ\n";
        return 1;
    }
    return 0;
}
