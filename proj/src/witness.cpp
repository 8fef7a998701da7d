#include "hyperpart/witness.hpp"
#include "hyperpart/numeric.hpp"

#include <cmath>
#include <limits>

namespace hyperpart {

MuView MuView::from_witness(const ComplexSequence& source, const SigmaWitness& w) {
    if (w.closed_form) {
        MuView v = closed_form(w.closed_form->alpha, w.closed_form->beta,
                               w.closed_form->index0, w.closed_form->index_step);
        v.M_ = w.M;
        return v;
    }
    // Seed the caches with the witness's own picks (they need not be greedy,
    // e.g. block progressions); extension past them continues greedily.
    if (!(w.M > 0.0)) throw ValidationError("MuView: need gap bound M > 0");
    MuView v;
    v.closed_ = false;
    v.M_ = w.M;
    v.source_ = std::make_shared<ComplexSequence>(source);
    for (std::size_t i = 0; i < w.indices.size(); ++i) {
        v.indices_.push_back(w.indices[i]);
        v.values_.push_back(source.term(w.indices[i]));
        v.moduli_.push_back(w.moduli[i]);
        v.run_.add(1.0 / w.moduli[i]);
        v.prefix_sums_.push_back(v.run_.value());
    }
    return v;
}

MuView MuView::lazy(std::shared_ptr<const ComplexSequence> source, double M) {
    if (!source) throw ValidationError("MuView: null source");
    if (!(M > 0.0)) throw ValidationError("MuView: need gap bound M > 0");
    if (source->kind() == SeqKind::Arithmetic) {
        // Greedy picks from an arithmetic source form an arithmetic
        // progression: first index with alpha + beta*n > M, then every s-th
        // term where s is minimal with beta*s > M. The closed-form view keeps
        // batch scans pure (no cache mutation) and allocation-free, which
        // deep-constant configs need: their scans touch witness indices far
        // beyond anything worth materializing.
        const double alpha = source->alpha();
        const double beta = source->beta();
        std::int64_t n1 =
            static_cast<std::int64_t>(std::floor((M - alpha) / beta)) + 1;
        if (n1 < 1) n1 = 1;
        while (!(alpha + beta * static_cast<double>(n1) > M)) ++n1;
        while (n1 > 1 && alpha + beta * static_cast<double>(n1 - 1) > M) --n1;
        std::int64_t s = static_cast<std::int64_t>(std::floor(M / beta)) + 1;
        if (s < 1) s = 1;
        while (!(beta * static_cast<double>(s) > M)) ++s;
        while (s > 1 && beta * static_cast<double>(s - 1) > M) --s;
        MuView v = closed_form(alpha + beta * static_cast<double>(n1 - s),
                               beta * static_cast<double>(s), n1, s);
        v.M_ = M;
        return v;
    }
    MuView v;
    v.closed_ = false;
    v.M_ = M;
    v.source_ = std::move(source);
    return v;
}

MuView MuView::closed_form(double alpha, double beta,
                           std::int64_t index0, std::int64_t index_step) {
    if (!(beta > 0.0) || !(alpha + beta > 0.0))
        throw ValidationError("MuView: closed form needs beta > 0 and positive mu_1");
    if (index0 < 1 || index_step < 1)
        throw ValidationError("MuView: closed form needs index0, index_step >= 1");
    MuView v;
    v.closed_ = true;
    v.M_ = beta;  // the structural gap; callers may tighten via require_gaps_above
    v.alpha_ = alpha;
    v.beta_ = beta;
    v.index0_ = index0;
    v.index_step_ = index_step;
    return v;
}

void MuView::extend_to(std::int64_t k) const {
    if (closed_) return;
    std::int64_t probe = indices_.empty() ? 1 : indices_.back() + 1;
    const std::int64_t limit = source_->max_index();
    while (static_cast<std::int64_t>(indices_.size()) < k) {
        if (source_done_ || probe > limit)
            throw ExhaustionError("MuView: source exhausted at witness index " +
                                  std::to_string(indices_.size() + 1) +
                                  " (need " + std::to_string(k) + ")");
        double mod = source_->modulus(probe);
        bool take = moduli_.empty() ? (mod > M_) : (mod - moduli_.back() > M_);
        if (take) {
            indices_.push_back(probe);
            values_.push_back(source_->term(probe));
            moduli_.push_back(mod);
            run_.add(1.0 / mod);
            prefix_sums_.push_back(run_.value());
        }
        if (probe == limit) source_done_ = true;
        ++probe;
    }
}

double MuView::modulus(std::int64_t k) const {
    if (k < 1) throw ValidationError("MuView: index must be >= 1");
    if (closed_) return alpha_ + beta_ * static_cast<double>(k);
    extend_to(k);
    return moduli_[static_cast<std::size_t>(k - 1)];
}

std::complex<double> MuView::value(std::int64_t k) const {
    if (k < 1) throw ValidationError("MuView: index must be >= 1");
    if (closed_) return {alpha_ + beta_ * static_cast<double>(k), 0.0};
    extend_to(k);
    return values_[static_cast<std::size_t>(k - 1)];
}

std::int64_t MuView::source_index(std::int64_t k) const {
    if (k < 1) throw ValidationError("MuView: index must be >= 1");
    if (closed_) return index0_ + (k - 1) * index_step_;
    extend_to(k);
    return indices_[static_cast<std::size_t>(k - 1)];
}

double MuView::partial_sum(std::int64_t m, std::int64_t M) const {
    if (m < 1 || M < m) throw ValidationError("MuView: need 1 <= m <= M");
    if (closed_) return arithmetic_recip_sum(alpha_, beta_, m, M);
    extend_to(M);
    double hi = prefix_sums_[static_cast<std::size_t>(M - 1)];
    double lo = (m >= 2) ? prefix_sums_[static_cast<std::size_t>(m - 2)] : 0.0;
    return hi - lo;
}

std::int64_t MuView::capacity() const {
    if (closed_) return std::numeric_limits<std::int64_t>::max();
    if (source_done_) return static_cast<std::int64_t>(indices_.size());
    return std::numeric_limits<std::int64_t>::max();  // unknown; extend_to may throw
}

void MuView::require_gaps_above(double bound, std::int64_t prefix) const {
    if (closed_) {
        if (!(alpha_ + beta_ > bound))
            throw ValidationError("witness: |mu_1| must exceed the gap bound");
        if (!(beta_ > bound))
            throw ValidationError("witness: step must exceed the gap bound");
        return;
    }
    try {
        extend_to(prefix);
    } catch (const ExhaustionError&) {
        // check whatever materialized
    }
    if (moduli_.empty())
        throw ValidationError("witness: empty");
    if (!(moduli_[0] > bound))
        throw ValidationError("witness: |mu_1| must exceed the gap bound");
    for (std::size_t i = 1; i < moduli_.size(); ++i)
        if (!(moduli_[i] - moduli_[i - 1] > bound))
            throw ValidationError("witness: gap at position " + std::to_string(i + 1) +
                                  " does not exceed the bound");
}

} // namespace hyperpart
