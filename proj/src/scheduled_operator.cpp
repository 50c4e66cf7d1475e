#include "genbath/scheduled_operator.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <fmt/format.h>

#include "genbath/error.hpp"

namespace genbath {

cplx PhaseTerm::coefficient(double t) const {
    if (frequency == 0.0) {
        return amplitude;
    }
    return amplitude * std::polar(1.0, frequency * t);
}

double frequency_tolerance(double reference) {
    return 1e-9 * std::max(1.0, std::abs(reference));
}

ScheduledOperator::ScheduledOperator(HilbertSpace space) : space_(std::move(space)) {}

ScheduledOperator::ScheduledOperator(Operator constant) : space_(constant.space()) {
    terms_.push_back({std::move(constant), {1.0, 0.0}, 0.0});
}

ScheduledOperator::ScheduledOperator(HilbertSpace space, std::vector<PhaseTerm> terms,
                                     bool hermitian_required)
    : space_(std::move(space)), terms_(std::move(terms)), hermitian_required_(hermitian_required) {
    for (const auto& term : terms_) {
        require_same_space(space_, term.base.space(), "ScheduledOperator");
    }
    if (hermitian_required_) {
        const double err = sampled_hermiticity_error();
        double scale = 1.0;
        for (const auto& term : terms_) {
            scale = std::max(scale, std::abs(term.amplitude) * max_abs(term.base.matrix()));
        }
        if (err > 1e-10 * scale) {
            throw InvalidArgument(
                fmt::format("scheduled operator flagged Hermitian deviates by {:.3e}", err));
        }
    }
}

void ScheduledOperator::add_term(Operator base, cplx amplitude, double frequency) {
    require_same_space(space_, base.space(), "ScheduledOperator::add_term");
    terms_.push_back({std::move(base), amplitude, frequency});
}

Matrix ScheduledOperator::evaluate_matrix(double t) const {
    const auto n = static_cast<Eigen::Index>(space_.total());
    Matrix out = Matrix::Zero(n, n);
    for (const auto& term : terms_) {
        out += term.coefficient(t) * term.base.matrix();
    }
    return out;
}

ScheduledOperator ScheduledOperator::derivative() const {
    std::vector<PhaseTerm> d;
    for (const auto& term : terms_) {
        if (term.frequency != 0.0) {
            d.push_back({term.base, cplx(0.0, term.frequency) * term.amplitude, term.frequency});
        }
    }
    return ScheduledOperator(space_, std::move(d));
}

ScheduledOperator ScheduledOperator::adjoint() const {
    std::vector<PhaseTerm> a;
    a.reserve(terms_.size());
    for (const auto& term : terms_) {
        a.push_back({term.base.adjoint(), std::conj(term.amplitude), -term.frequency});
    }
    return ScheduledOperator(space_, std::move(a), hermitian_required_);
}

ScheduledOperator ScheduledOperator::simplified(double drop_tol) const {
    std::vector<PhaseTerm> merged;
    for (const auto& term : terms_) {
        auto it = std::find_if(merged.begin(), merged.end(), [&](const PhaseTerm& m) {
            return std::abs(m.frequency - term.frequency) <= frequency_tolerance(term.frequency);
        });
        if (it == merged.end()) {
            merged.push_back({term.base * term.amplitude, {1.0, 0.0}, term.frequency});
        } else {
            it->base += term.base * term.amplitude;
        }
    }
    std::erase_if(merged, [&](const PhaseTerm& m) { return max_abs(m.base.matrix()) <= drop_tol; });
    std::sort(merged.begin(), merged.end(),
              [](const PhaseTerm& a, const PhaseTerm& b) { return a.frequency < b.frequency; });
    return ScheduledOperator(space_, std::move(merged), hermitian_required_);
}

bool ScheduledOperator::is_static() const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [](const PhaseTerm& t) { return t.frequency == 0.0; });
}

bool ScheduledOperator::is_single_phase() const {
    if (terms_.empty()) {
        return true;
    }
    const double f0 = terms_.front().frequency;
    return std::all_of(terms_.begin(), terms_.end(), [&](const PhaseTerm& t) {
        return std::abs(t.frequency - f0) <= frequency_tolerance(f0);
    });
}

double ScheduledOperator::sampled_hermiticity_error() const {
    std::mt19937_64 rng(0x5eed);
    std::uniform_real_distribution<double> times(-100.0, 100.0);
    double worst = 0.0;
    for (int k = 0; k < 8; ++k) {
        const Matrix m = evaluate_matrix(times(rng));
        worst = std::max(worst, max_abs(m - m.adjoint()));
    }
    return worst;
}

} // namespace genbath
