#include "redistrict/fairness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "redistrict/error.hpp"

namespace redistrict {
namespace {

constexpr double kEps = 1e-16;
constexpr int kMaxIterations = 100000;

// P(a, x) by its power series; converges quickly for x < a + 1.
double lower_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n < kMaxIterations; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEps) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Q(a, x) by the modified Lentz continued fraction; used for x >= a + 1.
double upper_fraction(double a, double x) {
  constexpr double tiny = std::numeric_limits<double>::min() / kEps;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIterations; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double step = d * c;
    h *= step;
    if (std::abs(step - 1.0) < kEps) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

std::string_view verdict_name(Verdict verdict) {
  switch (verdict) {
    case Verdict::Fair: return "FAIR";
    case Verdict::PackingSuspected: return "PACKING_SUSPECTED";
    case Verdict::CrackingSuspected: return "CRACKING_SUSPECTED";
  }
  return "FAIR";
}

double support_ratio(std::span<const int> ballots) {
  if (ballots.empty()) throw Error(ErrorCode::EmptyDistrict, "district has no ballots");
  long long supporters = 0;
  for (int b : ballots) {
    if (b != 0 && b != 1) throw Error(ErrorCode::MalformedInput, "ballot indicators must be 0 or 1");
    supporters += b;
  }
  return static_cast<double>(supporters) / static_cast<double>(ballots.size());
}

double mean_ratio(std::span<const double> ratios) {
  if (ratios.empty()) throw Error(ErrorCode::EmptyList, "no district ratios");
  double sum = 0.0;
  for (double r : ratios) sum += r;
  return sum / static_cast<double>(ratios.size());
}

double standardize(double districtRatio, double stateRatio, int voters) {
  if (voters < 1) throw Error(ErrorCode::InvalidVoterCount, "n must be at least 1");
  const double variance = stateRatio * (1.0 - stateRatio);
  if (!(variance > 0.0)) throw Error(ErrorCode::DegenerateP, "state ratio must lie strictly inside (0, 1)");
  return std::sqrt(voters / variance) * (districtRatio - stateRatio);
}

double chi_square_statistic(std::span<const double> standardized) {
  if (standardized.empty()) throw Error(ErrorCode::EmptyList, "no standardized ratios");
  double y = 0.0;
  for (double x : standardized) y += x * x;
  return y;
}

double regularized_gamma_q(double a, double x) {
  if (!(a > 0.0)) throw Error(ErrorCode::InvalidDof, "shape must be positive");
  if (!(x >= 0.0)) throw Error(ErrorCode::NegativeY, "argument must be non-negative");
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  if (x < a + 1.0) return 1.0 - lower_series(a, x);
  return upper_fraction(a, x);
}

double chi_square_survival(double y, int dof) {
  if (dof < 1) throw Error(ErrorCode::InvalidDof, "degrees of freedom must be at least 1");
  if (std::isnan(y) || y < 0.0) throw Error(ErrorCode::NegativeY, "statistic must be non-negative");
  const double q = regularized_gamma_q(0.5 * dof, 0.5 * y);
  return std::clamp(q, 0.0, 1.0);
}

Verdict classify(double alpha, double alphaAllow) {
  if (alpha <= alphaAllow) return Verdict::PackingSuspected;
  if (1.0 - alpha <= alphaAllow) return Verdict::CrackingSuspected;
  return Verdict::Fair;
}

FairnessReport audit(const FairnessInput& input) {
  if (input.districts < 1) throw Error(ErrorCode::InvalidDistrictCount, "m must be at least 1");
  if (input.votersPerDistrict < 1) throw Error(ErrorCode::InvalidVoterCount, "n must be at least 1");
  if (input.ratios.size() != static_cast<std::size_t>(input.districts)) {
    throw Error(ErrorCode::MalformedInput, "expected " + std::to_string(input.districts) + " ratios, got " +
                                               std::to_string(input.ratios.size()));
  }
  for (double r : input.ratios) {
    if (!(r >= 0.0 && r <= 1.0)) throw Error(ErrorCode::InvalidRatio, "district ratio outside [0, 1]");
  }
  if (!(input.alphaAllow > 0.0 && input.alphaAllow < 0.5)) {
    throw Error(ErrorCode::InvalidAlpha, "alphaAllow must lie in (0, 0.5)");
  }

  FairnessReport report;
  report.stateRatio = input.stateRatio ? *input.stateRatio : mean_ratio(input.ratios);
  report.alphaAllow = input.alphaAllow;
  report.degreesOfFreedom = input.districts;
  report.standardized.reserve(input.ratios.size());
  for (double r : input.ratios) report.standardized.push_back(standardize(r, report.stateRatio, input.votersPerDistrict));
  report.statistic = chi_square_statistic(report.standardized);
  report.alpha = chi_square_survival(report.statistic, report.degreesOfFreedom);
  report.verdict = classify(report.alpha, report.alphaAllow);
  return report;
}

}  // namespace redistrict
