#include "doctest.h"

#include "helpers.hpp"
#include "hyperpart/approx.hpp"
#include "hyperpart/covering.hpp"
#include "hyperpart/disks.hpp"
#include "hyperpart/errors.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <memory>
#include <random>
#include <vector>

using namespace hyperpart;
using cplx = std::complex<double>;

namespace {

// Direct power-sum evaluation in long double; shares nothing with the
// Horner path in Polynomial::eval.
cplx eval_direct(const std::vector<cplx>& coeffs, double scale, cplx z) {
    const std::complex<long double> u(z.real() / scale, z.imag() / scale);
    std::complex<long double> acc(0.0L, 0.0L), pw(1.0L, 0.0L);
    for (const cplx& c : coeffs) {
        acc += std::complex<long double>(c.real(), c.imag()) * pw;
        pw *= u;
    }
    return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

// Two-disk fixture: sector [0.9, 0.902] x [0, 0.005] turns, lambda_n = n
// under the gap rule at c1, so mu_k = 10k. One usable level with one point;
// L is the base disk plus a single translate centered at 9.
PartitionConfig narrow_config() {
    return PartitionConfig::free_constants(0.9, 0.902, 0.0, 0.005, 0.9, 1.05);
}

Partition narrow_partition() {
    return Partition(
        narrow_config(),
        MuView::lazy(std::make_shared<ComplexSequence>(
                         ComplexSequence::arithmetic(0.0, 1.0)),
                     narrow_config().c1()));
}

// Target p(z) = z with s1 = 2, k1 = 0.5; delta0 comes from the continuity
// bound (0.25 here since |p'| = 1).
TargetSpec line_target() {
    TargetSpec t;
    t.p = Polynomial::monomial({cplx(0.0), cplx(1.0)});
    t.s1 = 2;
    t.k1 = 0.5;
    t.eps0 = 0.25;
    t.R1 = 0.55;
    t.delta0 = continuity_delta(t.p, t.R1, t.s1);
    return t;
}

double max_of(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, x);
    return m;
}

} // namespace

TEST_SUITE("approx") {

TEST_CASE("polynomial evaluation matches direct power summation") {
    CHECK(Polynomial::zero().degree() == -1);
    CHECK(Polynomial::zero().eval(cplx(2.0, -3.0)) == cplx(0.0, 0.0));
    CHECK(Polynomial::constant(cplx(2.5, 0.0)).degree() == 0);
    CHECK(Polynomial::constant(cplx(2.5, 0.0)).eval(cplx(7.0, 1.0)) ==
          cplx(2.5, 0.0));
    CHECK(Polynomial::monomial({cplx(1.0), cplx(0.0), cplx(2.0)}).degree() == 2);
    // Trailing zeros do not count toward the degree.
    CHECK(Polynomial::monomial({cplx(3.0), cplx(1.0), cplx(0.0), cplx(0.0)})
              .degree() == 1);

    std::mt19937_64 rng(20240816);
    std::uniform_real_distribution<double> U(-2.0, 2.0);
    std::vector<cplx> coeffs;
    for (int k = 0; k < 7; ++k) coeffs.emplace_back(U(rng), U(rng));
    const Polynomial p = Polynomial::monomial(coeffs);
    const Polynomial q = p.rescaled(2.5);

    for (int i = 0; i < 8; ++i) {
        const cplx z(U(rng), U(rng));
        const cplx want = eval_direct(coeffs, 1.0, z);
        CHECK(std::abs(p.eval(z) - want) <=
              1e-13 * std::max(1.0, std::abs(want)));
        // The rescaled copy is the same function.
        CHECK(std::abs(q.eval(z) - want) <=
              1e-12 * std::max(1.0, std::abs(want)));
    }
}

TEST_CASE("polynomial rescaling is function-preserving and reversible") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    std::vector<cplx> coeffs;
    for (int k = 0; k < 9; ++k) coeffs.emplace_back(U(rng), U(rng));
    const Polynomial p = Polynomial::monomial(coeffs);

    const Polynomial back = p.rescaled(3.0).rescaled(1.0);
    REQUIRE(back.coeffs.size() == p.coeffs.size());
    CHECK(back.scale == 1.0);
    for (std::size_t k = 0; k < coeffs.size(); ++k)
        CHECK(std::abs(back.coeffs[k] - coeffs[k]) <=
              1e-12 * (1.0 + std::abs(coeffs[k])));

    const Polynomial mono = p.rescaled(3.0).to_monomial();
    const Polynomial direct = p.rescaled(3.0).rescaled(1.0);
    REQUIRE(mono.coeffs.size() == direct.coeffs.size());
    CHECK(mono.scale == 1.0);
    for (std::size_t k = 0; k < mono.coeffs.size(); ++k)
        CHECK(mono.coeffs[k] == direct.coeffs[k]);

    CHECK_THROWS_AS(p.rescaled(0.0), ValidationError);
    CHECK_THROWS_AS(p.rescaled(-2.0), ValidationError);

    // Converting a degree-309 tail across a 10x scale change overflows.
    std::vector<cplx> tall(310, cplx(1.0, 0.0));
    const Polynomial wide = Polynomial::monomial(tall);
    CHECK_THROWS_AS(wide.rescaled(10.0), NumericalError);
}

TEST_CASE("derivative bound majorizes the derivative on the disk") {
    const Polynomial z1 = Polynomial::monomial({cplx(0.0), cplx(1.0)});
    CHECK(z1.derivative_bound(0.0) == 1.0);
    CHECK(z1.derivative_bound(2.0) == 1.0);

    const Polynomial z2 = Polynomial::monomial({cplx(0.0), cplx(0.0), cplx(1.0)});
    CHECK(z2.derivative_bound(2.0) == doctest::Approx(4.0).epsilon(1e-15));
    // Scale-invariant: the rescaled copy represents the same function.
    CHECK(z2.rescaled(2.0).derivative_bound(2.0) ==
          doctest::Approx(4.0).epsilon(1e-15));

    const Polynomial mix =
        Polynomial::monomial({cplx(5.0), cplx(3.0), cplx(7.0)});
    CHECK(mix.derivative_bound(0.0) == doctest::Approx(3.0).epsilon(1e-15));

    CHECK_THROWS_AS(z1.derivative_bound(-1.0), ValidationError);

    // Sampled |p'| never exceeds the coefficient majorization.
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> U(-1.5, 1.5);
    std::vector<cplx> coeffs;
    for (int k = 0; k < 6; ++k) coeffs.emplace_back(U(rng), U(rng));
    const Polynomial p = Polynomial::monomial(coeffs);
    const double radius = 1.3;
    const double bound = p.derivative_bound(radius);
    for (int s = 0; s < 64; ++s) {
        const double t = 2.0 * 3.14159265358979323846 * s / 64.0;
        const cplx z = radius * cplx(std::cos(t), std::sin(t));
        cplx deriv(0.0, 0.0);
        cplx pw(1.0, 0.0);
        for (std::size_t k = 1; k < coeffs.size(); ++k) {
            deriv += static_cast<double>(k) * coeffs[k] * pw;
            pw *= z;
        }
        CHECK(std::abs(deriv) <= bound * (1.0 + 1e-12));
    }
}

TEST_CASE("continuity delta pins") {
    const Polynomial z1 = Polynomial::monomial({cplx(0.0), cplx(1.0)});
    CHECK(continuity_delta(z1, 1.0, 2) == 0.25);
    CHECK(continuity_delta(Polynomial::constant(cplx(7.0)), 1.0, 2) == 0.99);
    const Polynomial z2 = Polynomial::monomial({cplx(0.0), cplx(0.0), cplx(1.0)});
    CHECK(continuity_delta(z2, 1.0, 1) == doctest::Approx(0.125).epsilon(1e-15));
    const Polynomial steep = Polynomial::monomial({cplx(0.0), cplx(1000.0)});
    CHECK(continuity_delta(steep, 1.0, 1) ==
          doctest::Approx(0.0005).epsilon(1e-15));

    CHECK_THROWS_AS(continuity_delta(z1, 1.0, 0), ValidationError);
    CHECK_THROWS_AS(continuity_delta(z1, 0.0, 2), ValidationError);
}

TEST_CASE("target validation rejects inconsistent budgets") {
    TargetSpec good = line_target();
    CHECK_NOTHROW(good.validate());
    CHECK(good.half_budget() == 0.25);

    TargetSpec t = good;
    t.s1 = 0;
    CHECK_THROWS_AS(t.validate(), ValidationError);
    t = good;
    t.k1 = 0.0;
    CHECK_THROWS_AS(t.validate(), ValidationError);
    t = good;
    t.eps0 = 0.0;
    CHECK_THROWS_AS(t.validate(), ValidationError);
    t = good;
    t.R1 = 0.4;  // below k1
    CHECK_THROWS_AS(t.validate(), ValidationError);
    t = good;
    t.C_radius = 2.0;  // exceeds R1
    CHECK_THROWS_AS(t.validate(), ValidationError);
    t = good;
    t.delta0 = 0.0;
    CHECK_THROWS_AS(t.validate(), ValidationError);
    t = good;
    t.delta0 = 1.0;
    CHECK_THROWS_AS(t.validate(), ValidationError);
}

TEST_CASE("assembled target mirrors the truncated enumeration") {
    Partition part(testutil::ref_config(), testutil::ref_mu());
    const MuView mu = testutil::ref_mu();
    const PartitionConfig cfg = testutil::ref_config();

    TargetSpec target = line_target();
    target.g = Polynomial::monomial({cplx(1.0), cplx(0.0), cplx(1.0)});

    Truncation t2;
    t2.max_levels = 2;
    const PiecewiseTarget h = build_h(part, t2, target);

    const std::vector<PartitionPoint> pts = part.collect(t2);
    REQUIRE(pts.size() == 14);
    REQUIRE(h.pieces.size() == 14);
    CHECK(h.disk_count() == 15);

    const Disk base = base_disk(cfg);
    CHECK(h.base.center == base.center);
    CHECK(h.base.radius == base.radius);

    for (std::size_t i = 0; i < pts.size(); ++i) {
        const DiskAssignment da = assign_mu(pts[i], mu, cfg);
        CHECK(h.pieces[i].level == pts[i].level);
        CHECK(h.pieces[i].n == pts[i].n);
        CHECK(h.pieces[i].disk.center == da.disk.center);
        CHECK(h.pieces[i].disk.radius == da.disk.radius);
        CHECK(h.pieces[i].shift == da.disk.center);
        CHECK(h.which(h.pieces[i].disk.center) == static_cast<std::int64_t>(i));

        // On the piece, h is the shifted target polynomial.
        CHECK(std::abs(h.eval(h.pieces[i].disk.center) - target.p.eval(0.0)) ==
              0.0);
        const cplx d(0.3, 0.1);
        CHECK(std::abs(h.eval(h.pieces[i].disk.center + d) - target.p.eval(d)) <=
              1e-13);
    }

    // Base disk: h is the background g; boundary points count as inside.
    CHECK(h.which(cplx(0.0, 0.0)) == -1);
    CHECK(h.which(cplx(1.05, 0.0)) == -1);
    const cplx zb(0.25, 0.1);
    CHECK(h.eval(zb) == target.g.eval(zb));

    CHECK_THROWS_AS(h.which(cplx(4.5, 0.0)), ValidationError);
    CHECK_THROWS_AS(h.eval(cplx(4.5, 0.0)), ValidationError);
    CHECK_THROWS_AS(build_h(part, t2, target, 5), ValidationError);
}

TEST_CASE("base-only fit reproduces the background polynomial") {
    Partition part(testutil::ref_config(), testutil::ref_mu());
    TargetSpec target = line_target();
    target.g = Polynomial::monomial({cplx(1.0), cplx(0.0), cplx(1.0)});

    Truncation t0;
    t0.max_levels = 0;
    const PiecewiseTarget h = build_h(part, t0, target);
    REQUIRE(h.pieces.empty());
    CHECK(h.disk_count() == 1);

    FitOptions opt;
    opt.degree = 4;
    const FitResult res = fit_polynomial(h, opt);
    CHECK(res.degree == 4);
    CHECK(res.rho == doctest::Approx(1.05).epsilon(1e-15));
    CHECK(res.samples_per_disk == 16);  // auto: max(2*4 + 2, 16)
    CHECK(res.residual_max < 1e-12);

    const std::vector<double> sup = sup_error(res.f, h, 64);
    REQUIRE(sup.size() == 1);
    CHECK(sup[0] < 1e-12);

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> U(-0.7, 0.7);
    for (int i = 0; i < 16; ++i) {
        const cplx z(U(rng), U(rng));
        CHECK(std::abs(res.f.eval(z) - h.eval(z)) < 1e-12);
    }

    FitOptions low;
    low.degree = 1;  // below deg g = 2
    CHECK_THROWS_AS(fit_polynomial(h, low), ValidationError);
    FitOptions thin;
    thin.degree = 4;
    thin.samples_per_disk = 8;  // below 2*degree + 2
    CHECK_THROWS_AS(fit_polynomial(h, thin), ValidationError);
    CHECK_THROWS_AS(sup_error(res.f, h, 3), ValidationError);
}

TEST_CASE("two-disk fit converges with degree and stays consistent") {
    Partition part = narrow_partition();
    const TargetSpec target = line_target();

    Truncation full;
    const PiecewiseTarget h = build_h(part, full, target);
    REQUIRE(h.pieces.size() == 1);
    CHECK(h.pieces[0].disk.center == cplx(9.0, 0.0));
    CHECK(h.disk_count() == 2);

    // Error drops with degree; 10% slack plus an absolute floor guard.
    std::vector<double> ladder;
    for (std::int64_t deg : {16, 24, 32, 40}) {
        FitOptions opt;
        opt.degree = deg;
        const FitResult res = fit_polynomial(h, opt);
        ladder.push_back(max_of(sup_error(res.f, h, 512)));
    }
    for (std::size_t i = 1; i < ladder.size(); ++i)
        CHECK(ladder[i] <= ladder[i - 1] * 1.1 + 1e-12);
    CHECK(ladder.back() < 1e-3);

    FitOptions opt48;
    opt48.degree = 48;
    const FitResult res = fit_polynomial(h, opt48);
    CHECK(res.samples_per_disk == 98);
    CHECK(res.rho == doctest::Approx(10.05).epsilon(1e-15));
    CHECK(res.f.scale == res.rho);

    // The fit samples on the outer ring are a subset of the sup samples at
    // the same ring density, so the residual cannot exceed the sup.
    const std::vector<double> sup_same =
        sup_error(res.f, h, res.samples_per_disk);
    REQUIRE(sup_same.size() == 2);
    CHECK(res.residual_max <= max_of(sup_same) * (1.0 + 1e-12) + 1e-15);

    // Denser sampling only raises the reported sup (sample-set inclusion).
    const std::vector<double> sup1 = sup_error(res.f, h, 512);
    const std::vector<double> sup2 = sup_error(res.f, h, 1024);
    for (std::size_t i = 0; i < sup1.size(); ++i) CHECK(sup2[i] >= sup1[i]);

    // 8x-denser oracle of the per-disk error, as the certificate uses.
    const std::vector<double> dense =
        sup_error(res.f, h, 8 * res.samples_per_disk);
    CHECK(max_of(dense) < 1e-3);
    CHECK(max_of(dense) < 0.25);

    FitOptions harsh;
    harsh.degree = 16;
    harsh.rcond = 0.9;
    CHECK_THROWS_AS(fit_polynomial(h, harsh), IllConditionedError);

    // Extended precision agrees with double while both sit far above the
    // double noise floor, and keeps converging past it.
    FitOptions d24;
    d24.degree = 24;
    FitOptions x24 = d24;
    x24.precision = Precision::Extended;
    const double e24 = max_of(sup_error(fit_polynomial(h, d24).f, h, 512));
    const double x24e = max_of(sup_error(fit_polynomial(h, x24).f, h, 512));
    CHECK(std::abs(e24 - x24e) <= 0.05 * e24 + 1e-12);

    FitOptions x60;
    x60.degree = 60;
    x60.precision = Precision::Extended;
    const FitResult res60 = fit_polynomial(h, x60);
    CHECK(res60.precision == Precision::Extended);
    const double e60 = max_of(sup_error(res60.f, h, 512));
    CHECK(e60 <= ladder.back() * 1.1 + 1e-12);
    CHECK(e60 < 1e-3);
}

TEST_CASE("membership verification over the sector grid") {
    Partition part = narrow_partition();
    const TargetSpec target = line_target();

    Truncation full;
    const PiecewiseTarget h = build_h(part, full, target);
    FitOptions opt;
    opt.degree = 48;
    const FitResult res = fit_polynomial(h, opt);
    const std::vector<double> per_disk =
        sup_error(res.f, h, 8 * res.samples_per_disk);
    REQUIRE(per_disk.size() == 2);

    const std::int64_t m1 = uniform_bound_m1(part, full);
    REQUIRE(m1 == 10);

    const MembershipReport rep = verify_membership(
        res.f, part, h, per_disk, target, m1, 10, 10, 16, ExecMode::Serial);
    CHECK(rep.grid_r == 10);
    CHECK(rep.grid_theta == 10);
    CHECK(rep.m1 == 10);
    CHECK(rep.zsamples == 16);
    REQUIRE(rep.points.size() == 100);
    CHECK(rep.pass_fraction == 1.0);
    CHECK(rep.worst_margin > 0.0);

    double min_margin = std::numeric_limits<double>::infinity();
    double max_defect = 0.0;
    bool worst_seen = false;
    for (const MembershipPoint& mp : rep.points) {
        CHECK(mp.within_m1);
        CHECK(mp.translate_inside);
        CHECK(mp.pass);
        CHECK(mp.lambda_index == 10);
        CHECK(mp.level == 0);
        CHECK(mp.n == 0);
        CHECK(mp.margin == 0.5 - mp.sup_err);
        // |p'| = 1, so the continuity bound equals the defect itself.
        CHECK(mp.cont_bound == mp.defect);
        CHECK(mp.fit_err == per_disk[1]);
        CHECK(mp.sup_err <= mp.fit_err + mp.cont_bound + 1e-6);
        min_margin = std::min(min_margin, mp.margin);
        max_defect = std::max(max_defect, mp.defect);
        if (mp.a.r == rep.worst_a.r && mp.a.theta == rep.worst_a.theta) {
            worst_seen = true;
            CHECK(mp.margin == rep.worst_margin);
        }
    }
    CHECK(rep.worst_margin == min_margin);
    CHECK(rep.max_defect == max_defect);
    CHECK(worst_seen);

    // A 1x1 grid sits exactly on the partition point: zero defect.
    const MembershipReport one = verify_membership(
        res.f, part, h, per_disk, target, m1, 1, 1, 16, ExecMode::Serial);
    REQUIRE(one.points.size() == 1);
    CHECK(one.points[0].defect == 0.0);
    CHECK(one.pass_fraction == 1.0);

    // Lowering m1 below the witness index fails every point structurally.
    const MembershipReport strict = verify_membership(
        res.f, part, h, per_disk, target, 9, 10, 10, 16, ExecMode::Serial);
    CHECK(strict.pass_fraction == 0.0);
    for (const MembershipPoint& mp : strict.points) CHECK_FALSE(mp.within_m1);

    // A grossly wrong candidate fails on the sup side with a wide margin.
    const Polynomial bad = Polynomial::constant(cplx(10.0, 0.0));
    const MembershipReport off = verify_membership(
        bad, part, h, per_disk, target, m1, 5, 5, 16, ExecMode::Serial);
    CHECK(off.pass_fraction == 0.0);
    CHECK(off.worst_margin <= -9.0);

    CHECK_THROWS_AS(verify_membership(res.f, part, h, per_disk, target, m1, 0,
                                      10, 16, ExecMode::Serial),
                    ValidationError);
    CHECK_THROWS_AS(verify_membership(res.f, part, h, per_disk, target, m1, 10,
                                      0, 16, ExecMode::Serial),
                    ValidationError);
    CHECK_THROWS_AS(verify_membership(res.f, part, h, per_disk, target, m1, 10,
                                      10, 4, ExecMode::Serial),
                    ValidationError);
    CHECK_THROWS_AS(verify_membership(res.f, part, h, per_disk, target, 0, 10,
                                      10, 16, ExecMode::Serial),
                    ValidationError);
    const std::vector<double> wrong_size(3, 0.0);
    CHECK_THROWS_AS(verify_membership(res.f, part, h, wrong_size, target, m1,
                                      10, 10, 16, ExecMode::Serial),
                    ValidationError);
}

TEST_CASE("membership report is identical in serial and parallel mode") {
    Partition part = narrow_partition();
    const TargetSpec target = line_target();
    Truncation full;
    const PiecewiseTarget h = build_h(part, full, target);
    FitOptions opt;
    opt.degree = 48;
    const FitResult res = fit_polynomial(h, opt);
    const std::vector<double> per_disk =
        sup_error(res.f, h, 8 * res.samples_per_disk);

    const MembershipReport a = verify_membership(
        res.f, part, h, per_disk, target, 10, 8, 12, 16, ExecMode::Serial);
    const MembershipReport b = verify_membership(
        res.f, part, h, per_disk, target, 10, 8, 12, 16, ExecMode::Parallel);

    CHECK(a.pass_fraction == b.pass_fraction);
    CHECK(a.worst_margin == b.worst_margin);
    CHECK(a.worst_a.r == b.worst_a.r);
    CHECK(a.worst_a.theta == b.worst_a.theta);
    CHECK(a.max_defect == b.max_defect);
    REQUIRE(a.points.size() == b.points.size());
    for (std::size_t i = 0; i < a.points.size(); ++i) {
        CHECK(a.points[i].a.r == b.points[i].a.r);
        CHECK(a.points[i].a.theta == b.points[i].a.theta);
        CHECK(a.points[i].defect == b.points[i].defect);
        CHECK(a.points[i].sup_err == b.points[i].sup_err);
        CHECK(a.points[i].margin == b.points[i].margin);
        CHECK(a.points[i].pass == b.points[i].pass);
        CHECK(a.points[i].lambda_index == b.points[i].lambda_index);
    }
}

} // TEST_SUITE
