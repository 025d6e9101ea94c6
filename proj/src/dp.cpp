#include "pgb/dp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pgb {

const BudgetStage& BudgetLedger::stage(const std::string& label) const {
    for (const auto& s : stages)
        if (s.label == label) return s;
    throw std::out_of_range("budget ledger: no stage named " + label);
}

double BudgetLedger::epsilon_sum() const {
    double sum = 0.0;
    for (const auto& s : stages) sum += s.epsilon;
    return sum;
}

double laplace_noise(const SensitivityBound& sensitivity, double epsilon, Rng& rng) {
    if (epsilon <= 0.0) throw std::invalid_argument("laplace_noise: epsilon must be > 0");
    if (sensitivity.kind != SensitivityKind::Global)
        throw std::invalid_argument("laplace_noise: expects a global sensitivity bound");
    if (sensitivity.value < 0.0) throw std::invalid_argument("laplace_noise: negative sensitivity");
    if (sensitivity.value == 0.0) return 0.0;
    return rng.laplace(sensitivity.value / epsilon);
}

double smooth_noise(const SensitivityBound& smooth_bound, const PrivacyBudget& budget, Rng& rng) {
    budget.validate();
    if (budget.delta == 0.0)
        throw std::invalid_argument("smooth_noise: requires delta > 0");
    if (smooth_bound.kind != SensitivityKind::Smooth)
        throw std::invalid_argument("smooth_noise: expects a smooth sensitivity bound");
    double expected_beta = smooth_beta(budget);
    if (std::fabs(smooth_bound.beta - expected_beta) > 1e-9 * std::max(1.0, expected_beta))
        throw std::invalid_argument("smooth_noise: bound beta inconsistent with budget");
    if (smooth_bound.value == 0.0) return 0.0;
    return rng.laplace(2.0 * smooth_bound.value / budget.epsilon);
}

SensitivityBound smooth_sensitivity_upper_bound(const std::function<double(int)>& local_fn,
                                                double beta, int t_max,
                                                std::optional<double> global_cap) {
    if (t_max < 0) throw std::invalid_argument("smooth_sensitivity_upper_bound: t_max < 0");
    double best = 0.0;
    for (int t = 0; t <= t_max; ++t)
        best = std::max(best, local_fn(t) * std::exp(-beta * static_cast<double>(t)));
    if (global_cap)
        best = std::max(best, *global_cap * std::exp(-beta * static_cast<double>(t_max + 1)));
    return SensitivityBound::smooth(best, beta);
}

std::size_t exponential_select(const std::vector<double>& quality, double delta_q, double epsilon,
                               Rng& rng) {
    if (quality.empty()) throw std::invalid_argument("exponential_select: no candidates");
    if (delta_q <= 0.0) throw std::invalid_argument("exponential_select: delta_q must be > 0");
    if (quality.size() == 1) return 0;
    double coef = epsilon / (2.0 * delta_q);
    std::size_t best = 0;
    double best_key = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < quality.size(); ++i) {
        double key = coef * quality[i] + rng.gumbel();
        if (key > best_key) {
            best_key = key;
            best = i;
        }
    }
    return best;
}

BudgetLedger split_budget(const PrivacyBudget& total,
                          const std::vector<std::pair<std::string, double>>& shares) {
    total.validate();
    if (shares.empty()) throw std::invalid_argument("split_budget: no shares");
    double sum = 0.0;
    for (const auto& [label, f] : shares) {
        if (f <= 0.0) throw std::invalid_argument("split_budget: fraction must be positive");
        sum += f;
    }
    if (std::fabs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("split_budget: fractions must sum to 1");

    BudgetLedger ledger;
    ledger.total = total;
    double eps_left = total.epsilon;
    double delta_left = total.delta;
    for (std::size_t i = 0; i < shares.size(); ++i) {
        const auto& [label, f] = shares[i];
        BudgetStage s;
        s.label = label;
        if (i + 1 == shares.size()) {
            s.epsilon = eps_left;
            s.delta = delta_left;
        } else {
            s.epsilon = f * total.epsilon;
            s.delta = f * total.delta;
        }
        eps_left -= s.epsilon;
        delta_left -= s.delta;
        ledger.stages.push_back(std::move(s));
    }
    return ledger;
}

} // namespace pgb
