#pragma once

#include <cstddef>
#include <vector>

#include "core/rng.hpp"

namespace garchx {

/// Substream roles inside one stream_id.
inline constexpr std::uint64_t kInnovationSubstream = 0;
inline constexpr std::uint64_t kExogenousSubstream = 1;

enum class InnovationKind { StdGaussian, StandardizedStudentT };

/// iid(0,1) innovation law. The Student t is rescaled by sqrt((nu-2)/nu) to
/// unit variance; nu > 4 keeps the fourth moment finite.
struct InnovationDist {
  InnovationKind kind = InnovationKind::StdGaussian;
  double nu = 8.0;

  /// kappa = E eps^4: 3 for the Gaussian, 3(nu-2)/(nu-4) for the t.
  double kurtosis() const;
  void validate() const;
  double draw(RngStream& stream) const;
};

enum class ExogKind { IidGaussian, IidCauchy, Ar1, ShiftedIid };
enum class ExogNoiseKind { Gaussian, Cauchy };

/// Stationary ergodic exogenous process, independent of the innovations.
///   IidGaussian: x_t ~ N(mean, stddev^2)
///   IidCauchy:   x_t ~ Cauchy(location, scale)
///   Ar1:         x_t = phi x_{t-1} + eta_t, |phi| < 1, eta Gaussian or Cauchy
///   ShiftedIid:  x_t = shift + eta_t, eta ~ N(0,1)
/// For Ar1, burn_in steps from x0 = 0 are simulated and discarded before any
/// value is delivered; the iid kinds are stationary from the first draw.
struct ExogProcess {
  ExogKind kind = ExogKind::IidGaussian;
  double mean = 0.0;
  double stddev = 1.0;
  double location = 0.0;
  double scale = 1.0;
  double phi = 0.0;
  ExogNoiseKind noise = ExogNoiseKind::Gaussian;
  double noise_scale = 1.0;
  double shift = 0.0;
  long burn_in = 10000;

  void validate() const;
};

/// Streaming sampler: runs the burn-in at construction, then yields one
/// stationary-regime value per next(). Value-semantic.
class ExogSampler {
 public:
  ExogSampler(const ExogProcess& process, RngStream stream);
  double next();

 private:
  ExogProcess process_;
  RngStream stream_;
  double state_ = 0.0;

  double step();
};

std::vector<double> draw_innovations(const InnovationDist& dist, std::size_t n, SeedSpec seed);
std::vector<double> draw_exogenous(const ExogProcess& process, std::size_t n, SeedSpec seed);

}  // namespace garchx
