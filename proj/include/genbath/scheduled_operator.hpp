#pragma once

#include <vector>

#include "genbath/operator.hpp"

namespace genbath {

// amplitude * exp(i * frequency * t) * base
struct PhaseTerm {
    Operator base;
    cplx amplitude{1.0, 0.0};
    double frequency = 0.0;

    cplx coefficient(double t) const;
};

// Sum of constant operators weighted by constant or pure-phase coefficients.
// Carries an exact time derivative.
class ScheduledOperator {
public:
    explicit ScheduledOperator(HilbertSpace space);
    // Implicit: a constant operator is a one-term schedule.
    ScheduledOperator(Operator constant); // NOLINT(google-explicit-constructor)

    // `hermitian_required` checks the evaluated sum at 8 pseudo-random times.
    ScheduledOperator(HilbertSpace space, std::vector<PhaseTerm> terms,
                      bool hermitian_required = false);

    const HilbertSpace& space() const { return space_; }
    const std::vector<PhaseTerm>& terms() const { return terms_; }
    bool hermitian_required() const { return hermitian_required_; }

    void add_term(Operator base, cplx amplitude = {1.0, 0.0}, double frequency = 0.0);

    Matrix evaluate_matrix(double t) const;
    Operator evaluate(double t) const { return {space_, evaluate_matrix(t)}; }

    // d/dt exp(i nu t) = i nu exp(i nu t); constants drop out.
    ScheduledOperator derivative() const;
    ScheduledOperator adjoint() const;

    // Terms with equal frequency are summed, vanishing terms dropped.
    ScheduledOperator simplified(double drop_tol = 1e-14) const;

    bool is_static() const;
    // All terms share one frequency, so the operator is a constant times a
    // global phase.
    bool is_single_phase() const;
    // Sum of the terms with their phases removed (the operator at t = 0).
    Operator phase_stripped() const { return evaluate(0.0); }

    // max over 8 sampled times of the hermiticity error
    double sampled_hermiticity_error() const;

private:
    HilbertSpace space_;
    std::vector<PhaseTerm> terms_;
    bool hermitian_required_ = false;
};

// Frequencies closer than this are treated as equal when grouping terms.
double frequency_tolerance(double reference);

} // namespace genbath
