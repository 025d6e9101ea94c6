#ifndef PGB_DP_HPP
#define PGB_DP_HPP

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pgb/rng.hpp"

namespace pgb {

struct PrivacyBudget {
    double epsilon = 0.0;
    double delta = 0.0; // 0 means pure epsilon-DP

    void validate() const {
        if (epsilon <= 0.0) throw std::invalid_argument("privacy budget: epsilon must be > 0");
        if (delta < 0.0 || delta >= 1.0)
            throw std::invalid_argument("privacy budget: delta must be in [0, 1)");
    }
};

enum class SensitivityKind { Global, Smooth };

struct SensitivityBound {
    SensitivityKind kind = SensitivityKind::Global;
    double value = 0.0;
    double beta = 0.0; // meaningful only for Smooth

    static SensitivityBound global(double v) { return {SensitivityKind::Global, v, 0.0}; }
    static SensitivityBound smooth(double v, double beta) {
        return {SensitivityKind::Smooth, v, beta};
    }
};

struct BudgetStage {
    std::string label;
    double epsilon = 0.0;
    double delta = 0.0;
};

/// Sequential-composition ledger: how a synthesizer's total (epsilon, delta)
/// is divided across its randomized stages. Stage epsilons always sum to the
/// total exactly.
struct BudgetLedger {
    PrivacyBudget total;
    std::vector<BudgetStage> stages;

    const BudgetStage& stage(const std::string& label) const;
    double epsilon_sum() const;
};

/// One draw from Lap(0, sensitivity/epsilon). Zero sensitivity yields 0.
double laplace_noise(const SensitivityBound& sensitivity, double epsilon, Rng& rng);

/// Calibration used whenever smooth sensitivity is paired with (eps, delta)-DP.
inline double smooth_beta(const PrivacyBudget& budget) {
    return budget.epsilon / (2.0 * std::log(2.0 / budget.delta));
}

/// Additive noise with scale 2 * S / epsilon for a beta-smooth bound S.
/// Requires delta > 0 and a beta consistent with smooth_beta(budget).
double smooth_noise(const SensitivityBound& smooth_bound, const PrivacyBudget& budget, Rng& rng);

/// max over t in [0, t_max] of local_fn(t) * exp(-beta t); when the local
/// sensitivity is globally capped the analytic tail cap * exp(-beta (t_max+1))
/// is folded in as well.
SensitivityBound smooth_sensitivity_upper_bound(const std::function<double(int)>& local_fn,
                                                double beta, int t_max,
                                                std::optional<double> global_cap = std::nullopt);

/// Exponential mechanism via the Gumbel-max trick: returns the index of the
/// selected candidate, sampled with probability proportional to
/// exp(epsilon * quality / (2 * delta_q)).
std::size_t exponential_select(const std::vector<double>& quality, double delta_q, double epsilon,
                               Rng& rng);

/// Proportional split; fractions must sum to 1 within 1e-12. The last stage
/// absorbs rounding so the ledger sums exactly.
BudgetLedger split_budget(const PrivacyBudget& total,
                          const std::vector<std::pair<std::string, double>>& shares);

} // namespace pgb

#endif
