#pragma once

#include <cstddef>
#include <vector>

namespace cam {

struct Correlation {
    double coefficient = 0.0;
    double p_value = 1.0;
    std::size_t n = 0;
};

/// Spearman rank correlation: Pearson correlation of average ranks (ties get
/// the mean of their positions). p-value from the t approximation with n-2
/// degrees of freedom, two-sided. Throws LengthMismatchError /
/// TooFewSamplesError (n < 3). A sample with zero rank variance carries no
/// order information; the coefficient is reported as 0 with p 1.
Correlation spearman(const std::vector<double>& a, const std::vector<double>& b);

/// Kendall's tau-a: (concordant - discordant) / (n(n-1)/2); tied pairs count
/// for neither. p-value from the normal approximation, two-sided. Same
/// errors as spearman.
Correlation kendall_tau_a(const std::vector<double>& a, const std::vector<double>& b);

} // namespace cam
