#include "hyperpart/approx.hpp"
#include "hyperpart/errors.hpp"
#include "hyperpart/kernels.hpp"
#include "hyperpart/lsq.hpp"
#include "hyperpart/quadfloat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hyperpart {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::complex<double> ring_point(std::complex<double> center, double radius,
                                std::int64_t s, std::int64_t S) {
    const double t = static_cast<double>(s) / static_cast<double>(S);
    return center + radius * std::complex<double>(std::cos(2.0 * kPi * t),
                                                  std::sin(2.0 * kPi * t));
}
} // namespace

void TargetSpec::validate() const {
    if (s1 < 1) throw ValidationError("target: s1 must be >= 1");
    if (!(k1 > 0.0)) throw ValidationError("target: k1 must be positive");
    if (!(eps0 > 0.0)) throw ValidationError("target: eps0 must be positive");
    const double c_eff = C_radius > 0.0 ? C_radius : k1;
    if (!(R1 >= std::max(k1, c_eff)))
        throw ValidationError("target: R1 must dominate k1 and C_radius");
    if (!(delta0 > 0.0 && delta0 < 1.0))
        throw ValidationError("target: delta0 must lie in (0, 1)");
}

double continuity_delta(const Polynomial& p, double R1, std::int64_t s1) {
    if (s1 < 1) throw ValidationError("continuity_delta: s1 must be >= 1");
    if (!(R1 > 0.0)) throw ValidationError("continuity_delta: R1 must be positive");
    // Mean value inequality on |z| <= R1 + 1 covers both arguments as long as
    // the shift stays below 1, hence the 0.99 ceiling.
    const double B = p.derivative_bound(R1 + 1.0);
    if (!(B > 0.0)) return 0.99;
    return std::min(0.99, (1.0 / (2.0 * static_cast<double>(s1))) / B);
}

std::int64_t PiecewiseTarget::which(std::complex<double> z) const {
    for (std::size_t i = 0; i < pieces.size(); ++i)
        if (std::abs(z - pieces[i].disk.center) <= pieces[i].disk.radius)
            return static_cast<std::int64_t>(i);
    if (std::abs(z - base.center) <= base.radius) return -1;
    throw ValidationError("target: evaluation outside the compact L");
}

std::complex<double> PiecewiseTarget::eval(std::complex<double> z) const {
    const std::int64_t i = which(z);
    if (i < 0) return g.eval(z);
    return p.eval(z - pieces[static_cast<std::size_t>(i)].shift);
}

PiecewiseTarget build_h(const Partition& part, const Truncation& t,
                        const TargetSpec& target, std::int64_t max_disks) {
    target.validate();
    PiecewiseTarget h;
    h.base = base_disk(part.config());
    h.g = target.g;
    h.p = target.p;
    part.for_each(t, [&](const PartitionPoint& pt) {
        if (static_cast<std::int64_t>(h.pieces.size()) >= max_disks)
            throw ValidationError(
                "build_h: truncation yields more disks than the fitting cap (" +
                std::to_string(max_disks) + ")");
        DiskAssignment da = assign_mu(pt, part.mu(), part.config());
        h.pieces.push_back(TargetPiece{da.disk, da.disk.center, pt.level, pt.n});
    });
    // The fit needs pairwise disjoint supports; re-check rather than trust.
    for (std::size_t i = 0; i < h.pieces.size(); ++i) {
        if (!(separation(h.base, h.pieces[i].disk) > 0.0))
            throw ValidationError("build_h: translated disk meets the base disk");
        for (std::size_t k = i + 1; k < h.pieces.size(); ++k)
            if (!(separation(h.pieces[i].disk, h.pieces[k].disk) > 0.0))
                throw ValidationError("build_h: translated disks overlap");
    }
    return h;
}

namespace {

// h on a sample that belongs to a known disk. Boundary samples can round a
// few ulps outside the closed disk, so routing through which() would reject
// them; the owner is known here, no containment judgement is needed.
std::complex<double> eval_on(const PiecewiseTarget& h, std::int64_t piece,
                             std::complex<double> z) {
    if (piece < 0) return h.g.eval(z);
    return h.p.eval(z - h.pieces[static_cast<std::size_t>(piece)].shift);
}

// Center plus S boundary points per disk, base disk first; disk i owns the
// contiguous run [i*(S+1), (i+1)*(S+1)).
std::vector<std::complex<double>> fit_samples(const PiecewiseTarget& h,
                                              std::int64_t S) {
    std::vector<std::complex<double>> zs;
    zs.reserve(static_cast<std::size_t>((h.disk_count()) * (S + 1)));
    auto add_disk = [&](const Disk& d) {
        zs.push_back(d.center);
        for (std::int64_t s = 0; s < S; ++s)
            zs.push_back(ring_point(d.center, d.radius, s, S));
    };
    add_disk(h.base);
    for (const auto& piece : h.pieces) add_disk(piece.disk);
    return zs;
}

LsqSolution<std::complex<double>> solve_double(
    const std::vector<std::complex<double>>& zs,
    const std::vector<std::complex<double>>& rhs, double rho, std::int64_t ncoef,
    double rcond) {
    const std::int64_t rows = static_cast<std::int64_t>(zs.size());
    DenseMatrix<std::complex<double>> A(rows, ncoef);
    for (std::int64_t i = 0; i < rows; ++i) {
        const std::complex<double> u = zs[static_cast<std::size_t>(i)] / rho;
        std::complex<double> pw = 1.0;
        for (std::int64_t k = 0; k < ncoef; ++k) {
            A.at(i, k) = pw;
            pw *= u;
        }
    }
    return householder_lsq<std::complex<double>, double>(std::move(A), rhs, rcond);
}

LsqSolution<std::complex<double>> solve_extended(
    const std::vector<std::complex<double>>& zs,
    const std::vector<std::complex<double>>& rhs, double rho, std::int64_t ncoef,
    double rcond) {
    const std::int64_t rows = static_cast<std::int64_t>(zs.size());
    DenseMatrix<QComplex> A(rows, ncoef);
    const QReal qrho(rho);
    for (std::int64_t i = 0; i < rows; ++i) {
        const QComplex u = to_q(zs[static_cast<std::size_t>(i)]) / qrho;
        QComplex pw(QReal(1));
        for (std::int64_t k = 0; k < ncoef; ++k) {
            A.at(i, k) = pw;
            pw *= u;
        }
    }
    std::vector<QComplex> b;
    b.reserve(rhs.size());
    for (const auto& v : rhs) b.push_back(to_q(v));
    LsqSolution<QComplex> qs =
        householder_lsq<QComplex, QReal>(std::move(A), std::move(b), QReal(rcond));
    LsqSolution<std::complex<double>> out;
    out.rank = qs.rank;
    out.x.reserve(qs.x.size());
    for (const auto& c : qs.x) out.x.push_back(from_q(c));
    return out;
}

} // namespace

FitResult fit_polynomial(const PiecewiseTarget& h, const FitOptions& opt) {
    const std::int64_t pdeg = std::max<std::int64_t>(h.p.degree(), 0);
    const std::int64_t gdeg = std::max<std::int64_t>(h.g.degree(), 0);
    if (opt.degree < std::max(pdeg, gdeg))
        throw ValidationError("fit: degree below the target polynomial degree");
    std::int64_t S = opt.samples_per_disk;
    if (S == 0) S = std::max<std::int64_t>(2 * opt.degree + 2, 16);
    if (S < 2 * opt.degree + 2)
        throw ValidationError("fit: need samples_per_disk >= 2*degree + 2");

    double rho = 0.0;
    rho = std::max(rho, std::abs(h.base.center) + h.base.radius);
    for (const auto& piece : h.pieces)
        rho = std::max(rho, std::abs(piece.disk.center) + piece.disk.radius);

    const std::vector<std::complex<double>> zs = fit_samples(h, S);
    std::vector<std::complex<double>> rhs;
    rhs.reserve(zs.size());
    for (std::size_t i = 0; i < zs.size(); ++i) {
        const std::int64_t piece = static_cast<std::int64_t>(i) / (S + 1) - 1;
        rhs.push_back(eval_on(h, piece, zs[i]));
    }

    double rcond = opt.rcond;
    if (rcond <= 0.0) rcond = 1e-13;

    FitResult res;
    res.rho = rho;
    res.degree = opt.degree;
    res.samples_per_disk = S;
    res.precision = opt.precision;
    const std::int64_t ncoef = opt.degree + 1;
    res.f.scale = rho;
    LsqSolution<std::complex<double>> sol =
        opt.precision == Precision::Double
            ? solve_double(zs, rhs, rho, ncoef, rcond)
            : solve_extended(zs, rhs, rho, ncoef, rcond);
    res.rank = sol.rank;
    // The fit must at least span the polynomials it is asked to reproduce.
    if (res.rank <= std::max(pdeg, gdeg))
        throw IllConditionedError(
            "fit: " + std::to_string(res.rank) + " of " + std::to_string(ncoef) +
            " basis directions survive at working precision; raise precision "
            "or lower the degree");
    res.f.coeffs = std::move(sol.x);

    double rmax = 0.0;
    for (std::size_t i = 0; i < zs.size(); ++i)
        rmax = std::max(rmax, std::abs(res.f.eval(zs[i]) - rhs[i]));
    res.residual_max = rmax;
    return res;
}

std::vector<double> sup_error(const Polynomial& f, const PiecewiseTarget& h,
                              std::int64_t samples_per_ring) {
    if (samples_per_ring < 4)
        throw ValidationError("sup_error: need at least 4 samples per ring");
    static const double kRadiusFactors[] = {1.0, 0.9, 0.5};
    std::vector<double> out;
    auto disk_sup = [&](const Disk& d, std::int64_t piece) {
        double sup = std::abs(f.eval(d.center) - eval_on(h, piece, d.center));
        for (double fac : kRadiusFactors)
            for (std::int64_t s = 0; s < samples_per_ring; ++s) {
                const std::complex<double> z =
                    ring_point(d.center, d.radius * fac, s, samples_per_ring);
                sup = std::max(sup, std::abs(f.eval(z) - eval_on(h, piece, z)));
            }
        return sup;
    };
    out.push_back(disk_sup(h.base, -1));
    for (std::size_t i = 0; i < h.pieces.size(); ++i)
        out.push_back(disk_sup(h.pieces[i].disk, static_cast<std::int64_t>(i)));
    return out;
}

MembershipReport verify_membership(const Polynomial& f, const Partition& part,
                                   const PiecewiseTarget& h,
                                   const std::vector<double>& per_disk_errors,
                                   const TargetSpec& target, std::int64_t m1,
                                   std::int64_t nr, std::int64_t ntheta,
                                   std::int64_t zsamples, ExecMode mode) {
    target.validate();
    if (nr < 1 || ntheta < 1)
        throw ValidationError("membership: grid must be at least 1x1");
    if (zsamples < 8)
        throw ValidationError("membership: need at least 8 z-samples per ring");
    if (m1 < 1) throw ValidationError("membership: m1 must be >= 1");
    if (per_disk_errors.size() != static_cast<std::size_t>(h.disk_count()))
        throw ValidationError("membership: per-disk error list size mismatch");

    const PartitionConfig& cfg = part.config();
    const double budget = 1.0 / static_cast<double>(target.s1);
    const double B = target.p.derivative_bound(target.R1 + 1.0);
    static const double kZFactors[] = {1.0, 0.9, 0.5};

    MembershipReport rep;
    rep.grid_r = nr;
    rep.grid_theta = ntheta;
    rep.m1 = m1;
    rep.zsamples = zsamples;
    rep.points.resize(static_cast<std::size_t>(nr * ntheta));

    if (mode == ExecMode::Parallel && !part.mu().is_closed_form())
        part.warm_levels();

    for_index(nr * ntheta, mode, [&](std::int64_t idx) {
        const std::int64_t i = idx / ntheta;
        const std::int64_t j = idx % ntheta;
        const double r =
            nr == 1 ? cfg.r0
                    : cfg.r0 + (cfg.R0 - cfg.r0) * static_cast<double>(i) /
                                   static_cast<double>(nr - 1);
        const double th =
            ntheta == 1 ? cfg.theta0
                        : cfg.theta0 + (cfg.thetaT - cfg.theta0) *
                                           static_cast<double>(j) /
                                           static_cast<double>(ntheta - 1);
        MembershipPoint& mp = rep.points[static_cast<std::size_t>(idx)];
        mp.a = SectorPoint{r, th};

        Coverage cov;
        try {
            cov = locate(mp.a, part);
        } catch (const ExhaustionError&) {
            // Beyond the ladder horizon: nothing to translate into. Recorded
            // as a failing point; exceptions must not leave the batch loop.
            mp.within_m1 = false;
            mp.translate_inside = false;
            mp.sup_err = kInf;
            mp.margin = -kInf;
            mp.fit_err = std::numeric_limits<double>::quiet_NaN();
            mp.pass = false;
            return;
        }
        mp.level = cov.w0.level;
        mp.n = cov.w0.n;
        mp.lambda_index = cov.lambda_index;
        mp.defect = cov.defect;
        mp.within_m1 = cov.lambda_index <= m1;
        mp.translate_inside = target.k1 + cov.defect <= cfg.c4;
        mp.cont_bound = B * cov.defect;

        const std::complex<double> shift = cov.mu0 * mp.a.value();
        double sup = std::abs(f.eval(shift) - target.p.eval(0.0));
        for (double fac : kZFactors)
            for (std::int64_t s = 0; s < zsamples; ++s) {
                const std::complex<double> z =
                    ring_point({0.0, 0.0}, target.k1 * fac, s, zsamples);
                sup = std::max(sup, std::abs(f.eval(z + shift) - target.p.eval(z)));
            }
        mp.sup_err = sup;
        mp.margin = budget - sup;

        // certified fit error on the disk the translate lands in
        const std::complex<double> center = cov.w0.w() * cov.mu0;
        try {
            const std::int64_t piece = h.which(center);
            mp.fit_err = per_disk_errors[static_cast<std::size_t>(piece + 1)];
        } catch (const ValidationError&) {
            mp.fit_err = std::numeric_limits<double>::quiet_NaN();
        }
        mp.pass = mp.within_m1 && sup < budget;
    });

    std::int64_t npass = 0;
    double worst = kInf;
    double maxdef = 0.0;
    SectorPoint worst_a{cfg.r0, cfg.theta0};
    for (const auto& mp : rep.points) {
        if (mp.pass) ++npass;
        if (mp.margin < worst) {
            worst = mp.margin;
            worst_a = mp.a;
        }
        maxdef = std::max(maxdef, mp.defect);
    }
    rep.pass_fraction = static_cast<double>(npass) /
                        static_cast<double>(rep.points.size());
    rep.worst_margin = worst;
    rep.worst_a = worst_a;
    rep.max_defect = maxdef;
    return rep;
}

} // namespace hyperpart
