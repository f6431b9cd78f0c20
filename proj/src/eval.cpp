#include "cvssi/eval.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "cvssi/error.hpp"

namespace cvssi {

namespace {

void require_pairs(const ScorePairs& pairs, std::size_t min_n) {
    if (pairs.objective.size() != pairs.subjective.size())
        throw ShapeError("objective/subjective lengths differ");
    if (pairs.size() < min_n)
        throw ShapeError("need at least " + std::to_string(min_n) + " score pairs");
}

bool is_constant(const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
}

// 1-based ranks with average ranks over tied runs.
std::vector<double> average_ranks(const std::vector<double>& v) {
    const std::size_t n = v.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0u);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        if (v[a] != v[b]) return v[a] < v[b];
        return a < b;
    });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && v[idx[j + 1]] == v[idx[i]]) ++j;
        const double avg = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j + 1));
        for (std::size_t k = i; k <= j; ++k) ranks[idx[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
    const std::size_t n = a.size();
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= static_cast<double>(n);
    mb /= static_cast<double>(n);
    double saa = 0.0, sbb = 0.0, sab = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double da = a[i] - ma;
        const double db = b[i] - mb;
        saa += da * da;
        sbb += db * db;
        sab += da * db;
    }
    if (saa == 0.0 || sbb == 0.0)
        throw UndefinedCorrelationError("correlation undefined for zero-variance input");
    return sab / std::sqrt(saa * sbb);
}

double sum_squared_error(const LogisticParams& p, const ScorePairs& pairs) {
    double sse = 0.0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const double r = pairs.subjective[i] - p(pairs.objective[i]);
        sse += r * r;
    }
    return std::isfinite(sse) ? sse : std::numeric_limits<double>::max();
}

// Closed-form least-squares line s ~ a4*x + a5.
void linear_fit(const ScorePairs& pairs, double& a4, double& a5) {
    const std::size_t n = pairs.size();
    double mx = 0.0, ms = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += pairs.objective[i];
        ms += pairs.subjective[i];
    }
    mx /= static_cast<double>(n);
    ms /= static_cast<double>(n);
    double sxx = 0.0, sxs = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = pairs.objective[i] - mx;
        sxx += dx * dx;
        sxs += dx * (pairs.subjective[i] - ms);
    }
    a4 = sxx > 0.0 ? sxs / sxx : 0.0;
    a5 = ms - a4 * mx;
}

using Vec5 = std::array<double, 5>;

LogisticParams to_params(const Vec5& v) {
    LogisticParams p;
    p.a1 = v[0];
    p.a2 = v[1];
    p.a3 = v[2];
    p.a4 = v[3];
    p.a5 = v[4];
    return p;
}

struct SimplexResult {
    Vec5 best{};
    double sse = 0.0;
    bool converged = false;
};

// Nelder-Mead on the 5-parameter residual. Deterministic: fixed initial
// simplex, stable ordering, fixed coefficients (1, 2, 0.5, 0.5).
SimplexResult simplex_minimize(const ScorePairs& pairs, const Vec5& start, int max_iter,
                               double tol) {
    constexpr std::size_t kDim = 5;
    const auto f = [&](const Vec5& v) { return sum_squared_error(to_params(v), pairs); };

    std::array<Vec5, kDim + 1> pts;
    std::array<double, kDim + 1> val;
    pts[0] = start;
    for (std::size_t i = 0; i < kDim; ++i) {
        pts[i + 1] = start;
        pts[i + 1][i] += (start[i] != 0.0) ? 0.05 * start[i] : 0.00025;
    }
    for (std::size_t i = 0; i <= kDim; ++i) val[i] = f(pts[i]);

    std::array<std::size_t, kDim + 1> order;
    const auto sort_order = [&] {
        std::iota(order.begin(), order.end(), 0u);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return val[a] < val[b]; });
    };

    bool converged = false;
    int iter = 0;
    for (; iter < max_iter; ++iter) {
        sort_order();
        const std::size_t best = order[0];
        const std::size_t worst = order[kDim];
        const std::size_t second_worst = order[kDim - 1];

        if (val[worst] - val[best] <= tol * (std::fabs(val[best]) + tol)) {
            converged = true;
            break;
        }

        Vec5 centroid{};
        for (std::size_t i = 0; i <= kDim; ++i) {
            if (i == worst) continue;
            for (std::size_t d = 0; d < kDim; ++d) centroid[d] += pts[i][d];
        }
        for (std::size_t d = 0; d < kDim; ++d) centroid[d] /= static_cast<double>(kDim);

        const auto blend = [&](double coeff) {
            Vec5 out;
            for (std::size_t d = 0; d < kDim; ++d)
                out[d] = centroid[d] + coeff * (centroid[d] - pts[worst][d]);
            return out;
        };

        const Vec5 reflected = blend(1.0);
        const double fr = f(reflected);
        if (fr < val[order[0]]) {
            const Vec5 expanded = blend(2.0);
            const double fe = f(expanded);
            if (fe < fr) {
                pts[worst] = expanded;
                val[worst] = fe;
            } else {
                pts[worst] = reflected;
                val[worst] = fr;
            }
        } else if (fr < val[second_worst]) {
            pts[worst] = reflected;
            val[worst] = fr;
        } else {
            const Vec5 contracted = blend(-0.5);
            const double fc = f(contracted);
            if (fc < val[worst]) {
                pts[worst] = contracted;
                val[worst] = fc;
            } else {
                // shrink toward the best vertex
                for (std::size_t i = 0; i <= kDim; ++i) {
                    if (i == order[0]) continue;
                    for (std::size_t d = 0; d < kDim; ++d)
                        pts[i][d] = pts[order[0]][d] + 0.5 * (pts[i][d] - pts[order[0]][d]);
                    val[i] = f(pts[i]);
                }
            }
        }
    }
    sort_order();
    return SimplexResult{pts[order[0]], val[order[0]], converged};
}

std::vector<double> mapped_scores(const ScorePairs& pairs, bool mapped) {
    if (!mapped)
        return pairs.objective;
    const LogisticParams p = fit_logistic(pairs);
    std::vector<double> out(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i)
        out[i] = p(pairs.objective[i]);
    return out;
}

double rmse_against(const std::vector<double>& p, const std::vector<double>& s) {
    double ss = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double d = s[i] - p[i];
        ss += d * d;
    }
    return std::sqrt(ss / static_cast<double>(p.size()));
}

} // namespace

ScorePairs::ScorePairs(std::vector<double> x, std::vector<double> s)
    : objective(std::move(x)), subjective(std::move(s)) {
    if (objective.size() != subjective.size())
        throw ShapeError("objective/subjective lengths differ");
    for (double v : objective)
        if (!std::isfinite(v))
            throw InvalidInputError("non-finite objective score");
    for (double v : subjective)
        if (!std::isfinite(v))
            throw InvalidInputError("non-finite subjective score");
}

double LogisticParams::operator()(double x) const {
    const double t = a2 * (x - a3);
    double sig; // 1 / (1 + e^t), computed without overflow
    if (t >= 0.0) {
        const double e = std::exp(-t);
        sig = e / (1.0 + e);
    } else {
        sig = 1.0 / (1.0 + std::exp(t));
    }
    return a1 * (0.5 - sig) + a4 * x + a5;
}

double srocc(const ScorePairs& pairs) {
    require_pairs(pairs, 2);
    if (is_constant(pairs.objective) || is_constant(pairs.subjective))
        throw UndefinedCorrelationError("rank correlation undefined for constant input");
    return pearson(average_ranks(pairs.objective), average_ranks(pairs.subjective));
}

double krocc(const ScorePairs& pairs) {
    require_pairs(pairs, 2);
    if (is_constant(pairs.objective) || is_constant(pairs.subjective))
        throw UndefinedCorrelationError("rank correlation undefined for constant input");
    const std::size_t n = pairs.size();
    long long concordant = 0, discordant = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dx = pairs.objective[i] - pairs.objective[j];
            const double ds = pairs.subjective[i] - pairs.subjective[j];
            const double prod = dx * ds;
            if (prod > 0.0)
                ++concordant;
            else if (prod < 0.0)
                ++discordant;
        }
    }
    const double denom = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
    return static_cast<double>(concordant - discordant) / denom;
}

LogisticParams fit_logistic(const ScorePairs& pairs) {
    require_pairs(pairs, 5);

    const std::size_t n = pairs.size();
    double mx = 0.0;
    for (double v : pairs.objective) mx += v;
    mx /= static_cast<double>(n);
    double vx = 0.0;
    for (double v : pairs.objective) vx += (v - mx) * (v - mx);
    const double sx = std::sqrt(vx / static_cast<double>(n));

    const auto [smin, smax] =
        std::minmax_element(pairs.subjective.begin(), pairs.subjective.end());
    double a4 = 0.0, a5 = 0.0;
    linear_fit(pairs, a4, a5);

    const double a2_init = sx > 0.0 ? 1.0 / sx : 1.0;
    const Vec5 start_logistic{*smax - *smin, a2_init, mx, a4, a5};
    const Vec5 start_linear{0.0, a2_init, mx, a4, a5};

    constexpr int kMaxIter = 5000;
    constexpr double kTol = 1e-10;
    const SimplexResult run_a = simplex_minimize(pairs, start_logistic, kMaxIter, kTol);
    const SimplexResult run_b = simplex_minimize(pairs, start_linear, kMaxIter, kTol);
    const SimplexResult& best = (run_b.sse <= run_a.sse) ? run_b : run_a;

    LogisticParams out = to_params(best.best);
    out.converged = best.converged;
    return out;
}

double plcc(const ScorePairs& pairs, bool mapped) {
    require_pairs(pairs, 2);
    return pearson(mapped_scores(pairs, mapped), pairs.subjective);
}

double rmse(const ScorePairs& pairs, bool mapped) {
    require_pairs(pairs, 1);
    return rmse_against(mapped_scores(pairs, mapped), pairs.subjective);
}

CorrelationReport evaluate(const ScorePairs& pairs) {
    require_pairs(pairs, 5);
    CorrelationReport rep;
    rep.n = pairs.size();
    rep.srocc = srocc(pairs);
    rep.krocc = krocc(pairs);
    rep.logistic = fit_logistic(pairs);
    std::vector<double> p(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i)
        p[i] = rep.logistic(pairs.objective[i]);
    rep.plcc = pearson(p, pairs.subjective);
    rep.rmse = rmse_against(p, pairs.subjective);
    return rep;
}

CorrelationReport overall_weighted(
    const std::vector<std::pair<CorrelationReport, std::size_t>>& reports) {
    if (reports.empty())
        throw ShapeError("no reports to aggregate");
    double total = 0.0;
    for (const auto& [rep, size] : reports) total += static_cast<double>(size);
    if (total <= 0.0)
        throw ShapeError("dataset sizes must be positive");

    CorrelationReport out;
    for (const auto& [rep, size] : reports) {
        const double w = static_cast<double>(size) / total;
        out.srocc += w * rep.srocc;
        out.krocc += w * rep.krocc;
        out.plcc += w * rep.plcc;
        out.rmse += w * rep.rmse;
        out.n += size;
    }
    return out;
}

} // namespace cvssi
