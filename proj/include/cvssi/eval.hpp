#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace cvssi {

// Paired objective scores x and subjective scores s, in dataset order.
struct ScorePairs {
    std::vector<double> objective;
    std::vector<double> subjective;

    ScorePairs() = default;
    // Requires equal lengths and finite values.
    ScorePairs(std::vector<double> x, std::vector<double> s);

    std::size_t size() const { return objective.size(); }
};

// Five-parameter monotone mapping from the metric scale to the subjective
// scale:
//   p(x) = a1*(1/2 - 1/(1 + exp(a2*(x - a3)))) + a4*x + a5
struct LogisticParams {
    double a1 = 0.0, a2 = 0.0, a3 = 0.0, a4 = 0.0, a5 = 0.0;
    bool converged = true; // false when the fit hit its iteration budget

    // Overflow-safe evaluation of p(x).
    double operator()(double x) const;
};

struct CorrelationReport {
    double srocc = 0.0;
    double krocc = 0.0;
    double plcc = 0.0;
    double rmse = 0.0;
    LogisticParams logistic;
    std::size_t n = 0;
};

// Spearman rank correlation. Ties receive average ranks; without ties this
// equals the classic 1 - 6*sum(d^2)/(n(n^2-1)) form. Throws
// UndefinedCorrelationError when either vector is constant.
double srocc(const ScorePairs& pairs);

// Kendall correlation over all n(n-1)/2 pairs; tied pairs count toward
// neither the concordant nor the discordant tally.
double krocc(const ScorePairs& pairs);

// Deterministic least-squares fit of the logistic mapping via simplex
// search, run from a data-driven start and once more from the closed-form
// linear fit (a1 = 0). Keeping the linear solution as a starting vertex
// guarantees the mapped residual never exceeds the plain linear one.
// Identical inputs give bit-identical parameters. Needs n >= 5.
LogisticParams fit_logistic(const ScorePairs& pairs);

// Pearson correlation between p and s, where p is the logistic-mapped
// objective score when mapped is set and the raw score otherwise.
double plcc(const ScorePairs& pairs, bool mapped);

// Root mean squared prediction error, with p chosen as in plcc.
double rmse(const ScorePairs& pairs, bool mapped);

// All four indices plus the fitted mapping; the logistic fit runs once.
CorrelationReport evaluate(const ScorePairs& pairs);

// Dataset-size-weighted mean of each index across several reports. The
// aggregate carries no logistic parameters.
CorrelationReport overall_weighted(
    const std::vector<std::pair<CorrelationReport, std::size_t>>& reports);

} // namespace cvssi
