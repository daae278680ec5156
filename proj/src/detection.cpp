#include "bqtsim/detection.hpp"

#include <algorithm>
#include <cmath>

#include "bqtsim/bqsdc_session.hpp"
#include "bqtsim/errors.hpp"

namespace bqtsim::adversary {

bool DetectionReport::agrees(double sigmas) const
{
    return std::abs(empirical_rate - analytic_rate) <= sigmas * standard_error;
}

DetectionReport estimate_detection_monte_carlo(const AttackModel& attack, BasisPolicy check_policy,
                                               std::size_t trials, RandomSource& rng)
{
    if (trials == 0) {
        throw ValidationError("Monte Carlo estimate needs at least one trial");
    }
    const core::StateVector phi = core::bell_state(core::BellKind::PhiPlus, qsdc::kAliceHalf, qsdc::kBobHalf);
    std::size_t mismatches = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        const core::StateVector received = apply_attack(phi, attack, rng);
        const core::Basis basis = draw_basis(check_policy, rng);
        const qsdc::PairOutcomes o = qsdc::measure_check_pair(received, basis, rng);
        mismatches += o.alice != o.bob ? 1 : 0;
    }
    const double n = static_cast<double>(trials);
    const double p = analytic_detection(attack, check_policy);
    return DetectionReport{describe(attack),
                           check_policy,
                           trials,
                           mismatches,
                           static_cast<double>(mismatches) / n,
                           p,
                           std::sqrt(std::max(0.0, p * (1.0 - p)) / n)};
}

}  // namespace bqtsim::adversary
