#include "confq/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace confq {

namespace {
constexpr double kLn2 = 0.6931471805599453;
}

FadingParams::FadingParams(double eps_, double p_, double rho_)
    : eps(eps_), p(p_), rho(rho_) {
  if (!(eps > 0.0) || !std::isfinite(eps))
    throw std::invalid_argument("FadingParams: eps must be positive");
  if (!(p > 0.0) || !std::isfinite(p))
    throw std::invalid_argument("FadingParams: p must be positive");
  if (!(rho > 0.0) || !std::isfinite(rho))
    throw std::invalid_argument("FadingParams: rho must be positive");
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double x) { return 10.0 * std::log10(x); }

ChannelState sample_channel(TrialRng& rng, const FadingParams& params) {
  ChannelState h;
  h.h11 = rng.next_exponential(1.0);
  h.h12 = rng.next_exponential(params.eps);
  h.h21 = rng.next_exponential(params.eps);
  h.h22 = rng.next_exponential(1.0);
  return h;
}

LocalCsi local_view(const ChannelState& h, int receiver) {
  if (receiver == 1) return {h.h11, h.h21};
  if (receiver == 2) return {h.h22, h.h12};
  throw std::invalid_argument("local_view: receiver must be 1 or 2");
}

double cdf_min_time_fraction(double x, const FadingParams& params) {
  if (!(x > 0.0)) throw std::domain_error("cdf_min_time_fraction: x must be positive");
  // Pr{rho / log2(1 + P H) <= x} = Pr{H >= (2^(rho/x) - 1) / P}
  const double pow2 = std::exp(params.rho * kLn2 / x);
  return std::exp(-(pow2 - 1.0) / params.p);
}

double pdf_min_time_fraction(double x, const FadingParams& params) {
  if (!(x > 0.0)) throw std::domain_error("pdf_min_time_fraction: x must be positive");
  const double e = params.rho * kLn2 / x;
  if (e > 700.0) return 0.0;  // 2^(rho/x) overflows; density underflows first
  const double pow2 = std::exp(e);
  // 2^(rho/x) folded into the exponent so the survival factor can win
  // before anything overflows near x = 0
  return params.rho * kLn2 / (params.p * x * x) *
         std::exp(e - (pow2 - 1.0) / params.p);
}

double survival_full_power_sinr(double x, const FadingParams& params) {
  if (!(x > 0.0)) throw std::domain_error("survival_full_power_sinr: x must be positive");
  return std::exp(-x / params.p) / (1.0 + params.eps * x);
}

double pdf_full_power_sinr(double x, const FadingParams& params) {
  if (!(x > 0.0)) throw std::domain_error("pdf_full_power_sinr: x must be positive");
  const double s = std::exp(-x / params.p);
  const double d = params.eps * x + 1.0;
  return s / (params.p * d) + params.eps * s / (d * d);
}

}  // namespace confq
