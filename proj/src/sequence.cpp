#include "hyperpart/sequence.hpp"
#include "hyperpart/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hyperpart {

// ---------------------------------------------------------------------------
// exact helpers
// ---------------------------------------------------------------------------

std::optional<BigInt> exact_factorial(std::int64_t n) {
    if (n > kFactorialLimit) return std::nullopt;
    BigInt acc = 1;
    for (std::int64_t i = 2; i <= n; ++i) acc *= i;
    return acc;
}

std::int64_t saturating_factorial(std::int64_t n, std::int64_t cap) {
    BigInt acc = 1;
    const BigInt bound = cap;
    for (std::int64_t i = 2; i <= n; ++i) {
        acc *= i;
        if (acc > bound) return cap + 1;
    }
    return static_cast<std::int64_t>(acc);
}

BigInt rational_floor(const Rational& q) {
    if (q < 0) throw ValidationError("rational_floor: negative argument");
    return numerator(q) / denominator(q);
}

// ---------------------------------------------------------------------------
// Prop61Blocks
// ---------------------------------------------------------------------------

Prop61Blocks::Prop61Blocks(Prop61Params params) : params_(std::move(params)) {
    if (!(params_.M0 > 1)) throw ValidationError("prop61: M0 must exceed 1");
    if (params_.cap < 1) throw ValidationError("prop61: cap must be positive");
    Prop61Block b1;
    b1.index = 1;
    b1.a = 1;
    b1.first = 1;
    b1.last = 1;
    blocks_.push_back(std::move(b1));
}

void Prop61Blocks::extend_to(std::int64_t n) const {
    while (!exhausted_ && blocks_.back().last < n && blocks_.back().last < params_.cap) {
        const Prop61Block& prev = blocks_.back();

        // max D_prev: 1 for block 1, a + ([a]+1)! otherwise. A non-truncated
        // block's factorial fits under the cap, so it is always computable.
        Rational prev_max;
        if (prev.index == 1) {
            prev_max = 1;
        } else {
            if (!prev.size_factorial)
                throw CapacityError("prop61: block boundary beyond exact-factorial range");
            prev_max = prev.a + Rational(*prev.size_factorial);
        }

        Prop61Block next;
        next.index = prev.index + 1;
        next.a = params_.M0 * prev_max;
        next.first = prev.last + 1;

        const BigInt fl = rational_floor(next.a);
        std::int64_t arg;
        if (fl > kFactorialLimit) {
            arg = kFactorialLimit + 1;  // forces saturation below
        } else {
            arg = static_cast<std::int64_t>(fl) + 1;
            next.size_factorial = exact_factorial(arg);
        }

        const std::int64_t satf = saturating_factorial(arg, params_.cap);
        if (satf > params_.cap || next.first > params_.cap - satf) {
            next.truncated = true;
            next.last = params_.cap;
            exhausted_ = true;
        } else {
            next.last = next.first + satf;
        }
        blocks_.push_back(std::move(next));
    }
}

Rational Prop61Blocks::term(std::int64_t n) const {
    if (n < 1) throw ValidationError("prop61: index must be >= 1");
    if (n > params_.cap)
        throw CapacityError("prop61: index " + std::to_string(n) +
                            " exceeds enumeration cap " + std::to_string(params_.cap));
    const Prop61Block& b = block_of(n);
    return b.a + Rational(n - b.first);
}

const Prop61Block& Prop61Blocks::block_of(std::int64_t n) const {
    extend_to(n);
    for (const Prop61Block& b : blocks_)
        if (n >= b.first && n <= b.last) return b;
    throw CapacityError("prop61: index beyond materialized blocks");
}

const Prop61Block& Prop61Blocks::block(int index) const {
    extend_to(params_.cap);
    if (index < 1 || index > static_cast<int>(blocks_.size()))
        throw ValidationError("prop61: no such block within cap");
    return blocks_[static_cast<std::size_t>(index - 1)];
}

int Prop61Blocks::blocks_within_cap() const {
    extend_to(params_.cap);
    return static_cast<int>(blocks_.size());
}

// ---------------------------------------------------------------------------
// ComplexSequence
// ---------------------------------------------------------------------------

ComplexSequence ComplexSequence::arithmetic(double alpha, double beta) {
    if (!(alpha >= 0.0) || !(beta > 0.0))
        throw ValidationError("arithmetic sequence: need alpha >= 0, beta > 0");
    ComplexSequence s;
    s.kind_ = SeqKind::Arithmetic;
    s.alpha_ = alpha;
    s.beta_ = beta;
    return s;
}

ComplexSequence ComplexSequence::prop61(Prop61Params params) {
    ComplexSequence s;
    s.kind_ = SeqKind::Prop61;
    s.blocks_ = std::make_shared<Prop61Blocks>(std::move(params));
    return s;
}

ComplexSequence ComplexSequence::explicit_list(std::vector<std::complex<double>> terms) {
    for (const auto& t : terms)
        if (t == std::complex<double>(0.0, 0.0))
            throw ValidationError("explicit sequence: zero term");
    ComplexSequence s;
    s.kind_ = SeqKind::Explicit;
    s.terms_ = std::move(terms);
    return s;
}

std::complex<double> ComplexSequence::term(std::int64_t n) const {
    if (n < 1) throw ValidationError("sequence index must be >= 1");
    switch (kind_) {
    case SeqKind::Arithmetic:
        return {alpha_ + beta_ * static_cast<double>(n), 0.0};
    case SeqKind::Prop61:
        return {blocks_->term(n).convert_to<double>(), 0.0};
    case SeqKind::Explicit:
        if (n > static_cast<std::int64_t>(terms_.size()))
            throw ExhaustionError("explicit sequence: index past end of list");
        return terms_[static_cast<std::size_t>(n - 1)];
    }
    throw ValidationError("unreachable sequence kind");
}

double ComplexSequence::modulus(std::int64_t n) const {
    if (kind_ == SeqKind::Explicit) return std::abs(term(n));
    return term(n).real();  // arithmetic and prop61 terms are positive reals
}

std::int64_t ComplexSequence::max_index() const {
    switch (kind_) {
    case SeqKind::Arithmetic: return std::numeric_limits<std::int64_t>::max();
    case SeqKind::Prop61:     return blocks_->params().cap;
    case SeqKind::Explicit:   return static_cast<std::int64_t>(terms_.size());
    }
    return 0;
}

std::optional<Rational> ComplexSequence::exact_term(std::int64_t n) const {
    switch (kind_) {
    case SeqKind::Arithmetic:
        return Rational(alpha_) + Rational(beta_) * n;
    case SeqKind::Prop61:
        return blocks_->term(n);
    case SeqKind::Explicit:
        return std::nullopt;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// ratio profile
// ---------------------------------------------------------------------------

RatioProfile ratio_profile(const ComplexSequence& seq, std::int64_t N) {
    if (N < 1) throw ValidationError("ratio_profile: need N >= 1");
    RatioProfile out;
    out.ratios.reserve(static_cast<std::size_t>(N));
    double prev = seq.modulus(1);
    for (std::int64_t n = 1; n <= N; ++n) {
        double next = seq.modulus(n + 1);
        out.ratios.push_back(next / prev);
        prev = next;
    }
    for (std::int64_t n = N / 2 + 1; n <= N; ++n)
        out.prefix_limsup = std::max(out.prefix_limsup,
                                     out.ratios[static_cast<std::size_t>(n - 1)]);
    return out;
}

std::vector<Rational> ratio_profile_exact(const ComplexSequence& seq, std::int64_t N) {
    if (seq.kind() != SeqKind::Prop61)
        throw ValidationError("ratio_profile_exact: prop61 sequences only");
    if (N < 1) throw ValidationError("ratio_profile_exact: need N >= 1");
    std::vector<Rational> out;
    out.reserve(static_cast<std::size_t>(N));
    Rational prev = seq.blocks()->term(1);
    for (std::int64_t n = 1; n <= N; ++n) {
        Rational next = seq.blocks()->term(n + 1);
        out.push_back(next / prev);
        prev = next;
    }
    return out;
}

// ---------------------------------------------------------------------------
// witness extraction
// ---------------------------------------------------------------------------

SigmaWitness extract_sigma_witness(const ComplexSequence& seq, double M, std::int64_t count) {
    if (!(M > 0.0)) throw ValidationError("extract_sigma_witness: need M > 0");
    if (count < 1) throw ValidationError("extract_sigma_witness: need count >= 1");

    SigmaWitness w;
    w.M = M;

    if (seq.kind() == SeqKind::Arithmetic) {
        const double alpha = seq.alpha(), beta = seq.beta();
        // First index with alpha + beta*n > M, then the uniform step with
        // beta*s > M. Strict comparisons, fixed up exactly after the seed
        // guess so no boundary case depends on division rounding.
        std::int64_t n1 = static_cast<std::int64_t>(std::floor((M - alpha) / beta)) + 1;
        if (n1 < 1) n1 = 1;
        while (!(alpha + beta * static_cast<double>(n1) > M)) ++n1;
        while (n1 > 1 && alpha + beta * static_cast<double>(n1 - 1) > M) --n1;
        std::int64_t s = static_cast<std::int64_t>(std::floor(M / beta)) + 1;
        if (s < 1) s = 1;
        while (!(beta * static_cast<double>(s) > M)) ++s;
        while (s > 1 && beta * static_cast<double>(s - 1) > M) --s;

        SigmaWitness::ClosedForm cf;
        cf.beta = beta * static_cast<double>(s);
        cf.alpha = alpha + beta * static_cast<double>(n1 - s);  // mu_k = cf.alpha + cf.beta*k
        cf.index0 = n1;
        cf.index_step = s;
        w.closed_form = cf;
        w.divergence = DivergenceTag::Analytic;

        CompensatedSum sum;
        for (std::int64_t k = 1; k <= count; ++k) {
            std::int64_t idx = n1 + (k - 1) * s;
            double mod = alpha + beta * static_cast<double>(idx);
            w.indices.push_back(idx);
            w.moduli.push_back(mod);
            sum.add(1.0 / mod);
            w.partial_sums.push_back(sum.value());
        }
        return w;
    }

    CompensatedSum sum;
    double last = 0.0;
    bool have_any = false;
    const std::int64_t limit = seq.max_index();
    for (std::int64_t idx = 1; idx <= limit; ++idx) {
        double mod = seq.modulus(idx);
        bool take = have_any ? (mod - last > M) : (mod > M);
        if (!take) continue;
        w.indices.push_back(idx);
        w.moduli.push_back(mod);
        sum.add(1.0 / mod);
        w.partial_sums.push_back(sum.value());
        last = mod;
        have_any = true;
        if (static_cast<std::int64_t>(w.indices.size()) == count) return w;
    }
    throw ExhaustionError("extract_sigma_witness: source exhausted after " +
                          std::to_string(w.indices.size()) + " of " +
                          std::to_string(count) + " picks");
}

SigmaWitness extract_claim3(const ComplexSequence& seq, std::int64_t N0,
                            int block_first, int block_last) {
    if (seq.kind() != SeqKind::Prop61)
        throw ValidationError("extract_claim3: prop61 sequences only");
    if (N0 < 1) throw ValidationError("extract_claim3: need N0 >= 1");

    SigmaWitness w;
    w.M = static_cast<double>(N0);
    w.divergence = DivergenceTag::Analytic;
    if (block_first > block_last) return w;
    if (block_first < 2)
        throw ValidationError("extract_claim3: progressions start at block 2");

    const Prop61Blocks& blocks = *seq.blocks();
    if (block_last > blocks.blocks_within_cap())
        throw CapacityError("extract_claim3: block range exceeds blocks under cap");

    const std::int64_t N1 = N0 + 1;
    const Rational rN0 = N0;
    CompensatedSum sum;
    Rational prev_val;
    bool have_prev = false;

    for (int bi = block_first; bi <= block_last; ++bi) {
        const Prop61Block& b = blocks.block(bi);
        std::int64_t vmax;
        if (b.truncated) {
            vmax = b.last - b.first;  // only what the cap exposes
        } else {
            vmax = b.last - b.first;  // == ([a]+1)!
        }
        for (std::int64_t v = 0; v <= vmax; v += N1) {
            Rational val = b.a + Rational(v);
            if (have_prev && !(val - prev_val > rN0))
                throw ValidationError("extract_claim3: gap <= N0 between picks");
            if (!have_prev && !(val > rN0))
                throw ValidationError("extract_claim3: first pick not above N0");
            w.indices.push_back(b.first + v);
            double mod = val.convert_to<double>();
            w.moduli.push_back(mod);
            sum.add(1.0 / mod);
            w.partial_sums.push_back(sum.value());
            prev_val = val;
            have_prev = true;
        }
    }
    return w;
}

HarmonicTail harmonic_tail_check(std::int64_t n, std::int64_t m) {
    if (n < 3 || m <= n)
        throw ValidationError("harmonic_tail_check: need m > n >= 3");
    HarmonicTail out;
    CompensatedSum s;
    for (std::int64_t k = n + 1; k <= m; ++k)
        s.add(1.0 / static_cast<double>(k));
    out.lhs = s.value();
    out.rhs = std::log(static_cast<double>(m)) - std::log(static_cast<double>(n)) - 1.0;
    out.holds = out.lhs > out.rhs;
    return out;
}

GrowthIndexEstimate i_lambda_estimate(const ComplexSequence& seq, std::int64_t N) {
    switch (seq.kind()) {
    case SeqKind::Arithmetic:
        return {1.0, true};
    case SeqKind::Prop61:
        return {seq.blocks()->params().M0.convert_to<double>(), true};
    case SeqKind::Explicit:
        return {ratio_profile(seq, N).prefix_limsup, false};
    }
    return {0.0, false};
}

} // namespace hyperpart
