#pragma once

#include <cstddef>
#include <string>

#include "bqtsim/attack.hpp"
#include "bqtsim/random.hpp"

namespace bqtsim::adversary {

struct DetectionReport {
    std::string attack;
    BasisPolicy check_policy;
    std::size_t checked;
    std::size_t mismatches;
    double empirical_rate;  // mismatches / checked
    double analytic_rate;
    // Binomial standard error of the empirical rate under the analytic rate,
    // sqrt(p (1 - p) / checked).
    double standard_error;

    // |empirical - analytic| <= sigmas * standard_error
    bool agrees(double sigmas) const;
};

// Runs `trials` independent PhiPlus pairs through the attack and the
// two-sided check measurement. Throws ValidationError for trials == 0.
DetectionReport estimate_detection_monte_carlo(const AttackModel& attack, BasisPolicy check_policy,
                                               std::size_t trials, RandomSource& rng);

}  // namespace bqtsim::adversary
