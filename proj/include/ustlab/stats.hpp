#pragma once

#include <utility>
#include <vector>

namespace ustlab {

std::pair<double, double> mean_stderr(const std::vector<double>& xs);
double median(std::vector<double> xs);
double quantile(std::vector<double> xs, double q);
double interquartile_range(std::vector<double> xs);

// Goodness-of-fit p-value of observed counts against expected cell
// probabilities (cells with zero expectation must carry zero counts).
double chi_square_gof_p(const std::vector<long>& observed, const std::vector<double>& expected_probs);

// Homogeneity p-value for two count vectors over the same cells.
double chi_square_two_sample_p(const std::vector<long>& a, const std::vector<long>& b);

// Two-sample Kolmogorov-Smirnov with the asymptotic p-value; conservative
// on discrete data.
double ks_two_sample_p(std::vector<double> a, std::vector<double> b);

}  // namespace ustlab
