#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace redistrict {

enum class Verdict { Fair, PackingSuspected, CrackingSuspected };

std::string_view verdict_name(Verdict verdict);

inline constexpr double kDefaultAlphaAllow = 0.05;

struct FairnessInput {
  int districts = 0;
  int votersPerDistrict = 0;
  std::vector<double> ratios;
  std::optional<double> stateRatio;  // mean of ratios when absent
  double alphaAllow = kDefaultAlphaAllow;
};

struct FairnessReport {
  std::vector<double> standardized;
  double statistic = 0.0;
  double alpha = 1.0;
  double stateRatio = 0.0;
  int degreesOfFreedom = 0;
  double alphaAllow = kDefaultAlphaAllow;
  Verdict verdict = Verdict::Fair;
};

/// Mean of 0/1 indicators. Throws EMPTY_DISTRICT.
double support_ratio(std::span<const int> ballots);
/// Unweighted mean. Throws EMPTY_LIST.
double mean_ratio(std::span<const double> ratios);
/// sqrt(n / (p(1-p))) * (pj - p). Throws DEGENERATE_P.
double standardize(double districtRatio, double stateRatio, int voters);
/// Sum of squares. Throws EMPTY_LIST.
double chi_square_statistic(std::span<const double> standardized);

/// Q(a, x), the regularized upper incomplete gamma function.
double regularized_gamma_q(double a, double x);
/// P(X > y) for X ~ chi-square with `dof` degrees of freedom.
double chi_square_survival(double y, int dof);

/// Packing when alpha <= alphaAllow, cracking when 1 - alpha <= alphaAllow.
Verdict classify(double alpha, double alphaAllow);

FairnessReport audit(const FairnessInput& input);

}  // namespace redistrict
