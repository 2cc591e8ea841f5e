#include "core/stochastic.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <stdexcept>

namespace garchx {

double InnovationDist::kurtosis() const {
  validate();
  if (kind == InnovationKind::StdGaussian) return 3.0;
  return 3.0 * (nu - 2.0) / (nu - 4.0);
}

void InnovationDist::validate() const {
  if (kind == InnovationKind::StandardizedStudentT && !(nu > 4.0))
    throw std::invalid_argument("InnovationDist: Student t requires nu > 4");
}

double InnovationDist::draw(RngStream& stream) const {
  if (kind == InnovationKind::StdGaussian) return stream.normal();
  const boost::math::students_t_distribution<double> t(nu);
  return boost::math::quantile(t, stream.uniform()) * std::sqrt((nu - 2.0) / nu);
}

void ExogProcess::validate() const {
  switch (kind) {
    case ExogKind::IidGaussian:
      if (!(stddev > 0.0)) throw std::invalid_argument("ExogProcess: stddev must be positive");
      break;
    case ExogKind::IidCauchy:
      if (!(scale > 0.0)) throw std::invalid_argument("ExogProcess: scale must be positive");
      break;
    case ExogKind::Ar1:
      if (!(std::fabs(phi) < 1.0))
        throw std::invalid_argument("ExogProcess: AR(1) requires |phi| < 1");
      if (!(noise_scale > 0.0))
        throw std::invalid_argument("ExogProcess: noise_scale must be positive");
      break;
    case ExogKind::ShiftedIid:
      break;
  }
  if (burn_in < 0) throw std::invalid_argument("ExogProcess: burn_in must be non-negative");
}

ExogSampler::ExogSampler(const ExogProcess& process, RngStream stream)
    : process_(process), stream_(stream) {
  process_.validate();
  // x0 at the process mean; the burn-in makes the start irrelevant.
  state_ = process_.kind == ExogKind::ShiftedIid ? process_.shift : 0.0;
  if (process_.kind == ExogKind::Ar1) {
    for (long i = 0; i < process_.burn_in; ++i) state_ = step();
  }
}

double ExogSampler::step() {
  switch (process_.kind) {
    case ExogKind::IidGaussian:
      return process_.mean + process_.stddev * stream_.normal();
    case ExogKind::IidCauchy:
      return stream_.cauchy(process_.location, process_.scale);
    case ExogKind::Ar1: {
      const double eta = process_.noise == ExogNoiseKind::Gaussian
                             ? process_.noise_scale * stream_.normal()
                             : stream_.cauchy(0.0, process_.noise_scale);
      return process_.phi * state_ + eta;
    }
    case ExogKind::ShiftedIid:
      return process_.shift + stream_.normal();
  }
  throw std::invalid_argument("ExogSampler: unknown kind");
}

double ExogSampler::next() {
  state_ = step();
  return state_;
}

std::vector<double> draw_innovations(const InnovationDist& dist, std::size_t n, SeedSpec seed) {
  if (n == 0) throw std::invalid_argument("draw_innovations: n must be positive");
  dist.validate();
  RngStream stream(seed, kInnovationSubstream);
  std::vector<double> out(n);
  for (auto& v : out) v = dist.draw(stream);
  return out;
}

std::vector<double> draw_exogenous(const ExogProcess& process, std::size_t n, SeedSpec seed) {
  if (n == 0) throw std::invalid_argument("draw_exogenous: n must be positive");
  ExogSampler sampler(process, RngStream(seed, kExogenousSubstream));
  std::vector<double> out(n);
  for (auto& v : out) v = sampler.next();
  return out;
}

}  // namespace garchx
