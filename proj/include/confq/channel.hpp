#pragma once

#include "confq/rng.hpp"

namespace confq {

// Block-fading model parameters.  All quantities are linear (not dB).
struct FadingParams {
  double eps;  // mean power of the cross (interference) links
  double p;    // short-term transmit power constraint
  double rho;  // target rate, bits/s/Hz

  FadingParams(double eps_, double p_, double rho_);
};

double db_to_linear(double db);
double linear_to_db(double x);

// Squared channel magnitudes of one fading block; h_kl goes from
// transmitter k to receiver l.
struct ChannelState {
  double h11 = 0.0;
  double h12 = 0.0;
  double h21 = 0.0;
  double h22 = 0.0;
};

// What one receiver can measure on its own: its direct gain and the
// interference gain arriving at it.
struct LocalCsi {
  double direct = 0.0;
  double cross_in = 0.0;
};

// Direct gains Exp(1), cross gains Exp(eps), all independent.
// Draw order is fixed (h11, h12, h21, h22) so streams are reproducible.
ChannelState sample_channel(TrialRng& rng, const FadingParams& params);

LocalCsi local_view(const ChannelState& h, int receiver);

// Distribution of rho / log2(1 + P H) for H ~ Exp(1): the smallest time
// fraction that keeps a user out of outage at full power.
double cdf_min_time_fraction(double x, const FadingParams& params);
double pdf_min_time_fraction(double x, const FadingParams& params);

// Distribution of the full-power SINR H_d / (H_c + 1/P) with H_d ~ Exp(1)
// and H_c ~ Exp(eps).
double survival_full_power_sinr(double x, const FadingParams& params);
double pdf_full_power_sinr(double x, const FadingParams& params);

}  // namespace confq
