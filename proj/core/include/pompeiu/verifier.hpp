#ifndef POMPEIU_VERIFIER_HPP
#define POMPEIU_VERIFIER_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "pompeiu/functions.hpp"
#include "pompeiu/interval_set.hpp"

namespace pompeiu {

enum class QuadratureRule { gauss_legendre, adaptive_simpson };

/// Defaults suit smooth or piecewise-smooth integrands with known breakpoints.
struct QuadratureConfig {
  QuadratureRule rule = QuadratureRule::gauss_legendre;
  int order = 8;                  ///< Gauss-Legendre nodes per panel
  double panels_per_unit = 64.0;  ///< initial panels per unit length
  double abs_tol = 1e-10;
  double rel_tol = 1e-9;
  int max_subdivisions = 200'000;

  /// Throws std::invalid_argument on non-positive tolerances or sizes.
  void validate() const;
};

struct Integral {
  double value = 0.0;
  double error = 0.0;  ///< sum of per-panel refinement differences
  bool converged = true;
  std::size_t evaluations = 0;
  double peak = 0.0;  ///< max |f| over the nodes used
};

using Integrand = std::function<double(double)>;

/// Integral over [u, v], splitting at `breakpoints`. Panels that fail the
/// two-level comparison are bisected until they pass or the subdivision
/// budget runs out (then converged == false and the best estimate is kept).
Integral integrate(const Integrand& f, double u, double v, const QuadratureConfig& cfg = {},
                   std::span<const double> breakpoints = {});
/// Splits at f.breakpoints(u, v).
Integral integrate(const Function& f, double u, double v, const QuadratureConfig& cfg = {});

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_legendre_rule(int order);

/// Sum of integrals of f over the image of the set under sigma.
Integral integrate_over_image(const Function& f, const IntervalSet& set, const Isometry& sigma,
                              const QuadratureConfig& cfg = {});

enum class IsometryFamily { translations, full };

std::string_view to_string(IsometryFamily family);

/// n translations t0, ..., t1 (and their reflected twins for the full family).
struct GridSampler {
  double t0 = -10.0;
  double t1 = 10.0;
  int count = 401;
};

/// n shifts uniform in [t_min, t_max); reflected with probability 1/2 for the
/// full family. The stream depends only on the seed.
struct RandomSampler {
  std::uint64_t seed = 42;
  int count = 1000;
  double t_min = -10.0;
  double t_max = 10.0;
};

using Sampler = std::variant<GridSampler, RandomSampler>;

std::vector<Isometry> sample_isometries(const Sampler& sampler, IsometryFamily family);

struct InvarianceSample {
  Isometry sigma;
  double integral = 0.0;
  double error = 0.0;
  bool converged = true;
};

struct InvarianceReport {
  double c_estimate = 0.0;  ///< mean of the sampled integrals
  double max_abs_deviation = 0.0;
  /// max_abs_deviation / (sup |f| * measure), the natural scale of the integrals.
  double relative_deviation = 0.0;
  double sup_abs_f = 0.0;
  double measure = 0.0;
  std::size_t samples = 0;
  IsometryFamily family = IsometryFamily::translations;
  bool quadrature_converged = true;
  double max_quadrature_error = 0.0;
  std::vector<InvarianceSample> witnesses;  ///< worst samples, largest deviation first
  std::vector<InvarianceSample> rows;       ///< every sample in sampling order
};

/// Samples isometries and integrates f over each image. Samples run on up to
/// `threads` workers (0 = hardware concurrency); the result does not depend on
/// the thread count.
InvarianceReport verify_invariance(const Function& f, const IntervalSet& set,
                                   IsometryFamily family, const Sampler& sampler,
                                   const QuadratureConfig& cfg = {}, unsigned threads = 0,
                                   std::size_t witness_count = 5);

/// One block of a window pattern: `sign` +1 / -1 integrates over the block,
/// 0 marks a gap.
struct WindowBlock {
  double length = 0.0;
  int sign = 0;
};

/// Signed sum of integrals over the blocks laid left to right from x.
double signed_window_integral(const Function& f, std::span<const WindowBlock> pattern, double x,
                              const QuadratureConfig& cfg = {});

}  // namespace pompeiu

#endif  // POMPEIU_VERIFIER_HPP
