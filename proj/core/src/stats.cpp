#include "cam/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cam/errors.hpp"

namespace cam {

namespace {

void check_samples(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw LengthMismatchError(a.size(), b.size());
    if (a.size() < 3) throw TooFewSamplesError(a.size());
}

std::vector<double> average_ranks(const std::vector<double>& xs) {
    std::size_t n = xs.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return xs[i] < xs[j]; });
    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && xs[order[j + 1]] == xs[order[i]]) ++j;
        double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
        i = j + 1;
    }
    return ranks;
}

// Continued fraction for the regularized incomplete beta function.
double betacf(double a, double b, double x) {
    const int max_iter = 300;
    const double eps = 3e-14;
    const double fpmin = 1e-300;

    double qab = a + b;
    double qap = a + 1.0;
    double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < fpmin) d = fpmin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= max_iter; ++m) {
        int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < eps) break;
    }
    return h;
}

double ibeta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    double ln_bt = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) +
                   b * std::log(1.0 - x);
    double bt = std::exp(ln_bt);
    if (x < (a + 1.0) / (a + b + 2.0)) return bt * betacf(a, b, x) / a;
    return 1.0 - bt * betacf(b, a, 1.0 - x) / b;
}

// Two-sided tail of Student's t.
double t_two_sided(double t, double dof) {
    return ibeta(dof / 2.0, 0.5, dof / (dof + t * t));
}

} // namespace

Correlation spearman(const std::vector<double>& a, const std::vector<double>& b) {
    check_samples(a, b);
    std::size_t n = a.size();
    std::vector<double> ra = average_ranks(a);
    std::vector<double> rb = average_ranks(b);

    double mean = (static_cast<double>(n) + 1.0) / 2.0;  // ranks always average this
    double cov = 0.0;
    double var_a = 0.0;
    double var_b = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double da = ra[i] - mean;
        double db = rb[i] - mean;
        cov += da * db;
        var_a += da * da;
        var_b += db * db;
    }

    Correlation result;
    result.n = n;
    if (var_a == 0.0 || var_b == 0.0) {
        result.coefficient = 0.0;
        result.p_value = 1.0;
        return result;
    }
    double rho = cov / std::sqrt(var_a * var_b);
    rho = std::clamp(rho, -1.0, 1.0);
    result.coefficient = rho;
    if (rho == 1.0 || rho == -1.0) {
        result.p_value = 0.0;
        return result;
    }
    double dof = static_cast<double>(n) - 2.0;
    double t = rho * std::sqrt(dof / (1.0 - rho * rho));
    result.p_value = t_two_sided(t, dof);
    return result;
}

Correlation kendall_tau_a(const std::vector<double>& a, const std::vector<double>& b) {
    check_samples(a, b);
    std::size_t n = a.size();

    long long concordant = 0;
    long long discordant = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double da = a[i] - a[j];
            double db = b[i] - b[j];
            double product = da * db;
            if (product > 0.0) ++concordant;
            else if (product < 0.0) ++discordant;
        }
    }

    double pairs = static_cast<double>(n) * (static_cast<double>(n) - 1.0) / 2.0;
    double tau = static_cast<double>(concordant - discordant) / pairs;

    Correlation result;
    result.n = n;
    result.coefficient = tau;
    double nd = static_cast<double>(n);
    double z = 3.0 * tau * std::sqrt(nd * (nd - 1.0)) / std::sqrt(2.0 * (2.0 * nd + 5.0));
    result.p_value = std::erfc(std::fabs(z) / std::sqrt(2.0));
    return result;
}

} // namespace cam
