// SPDX-License-Identifier: Apache-2.0
#ifndef LRIS_SPECIAL_HPP
#define LRIS_SPECIAL_HPP

namespace lris {

/// sin(x)/x with the removable singularity filled in.
double sinc(double x);

struct QuantizationFactors {
  double xi1;  // sinc(2^-q pi)
  double xi2;  // sinc(2^{-q+1} pi)
};

/// Phase-quantization coherence factors for q-bit phase shifters.
/// q is clamped at 60, beyond which both factors are 1 to machine
/// precision.
QuantizationFactors quantization_factors(int q);

/// Kummer confluent hypergeometric 1F1(-1/2, 1; -kappa) for kappa >= 0.
/// Ascending series with compensated summation up to kappa = 30, scaled
/// Bessel form e^{-k/2}[(1+k) I0(k/2) + k I1(k/2)] beyond.
double kummer_1f1_half(double kappa);

/// Average fading gain a_j = sqrt(pi / (4 (kappa+1))) 1F1(-1/2, 1; -kappa)
/// of a unit-power Rician link with K-factor kappa.
double avg_fading_gain(double kappa);

/// Exponential integral E1(x), x > 0.
double expint_e1(double x);

/// Upper incomplete gamma at nonpositive integer order, Gamma(-k, x) with
/// k >= 0, x > 0, by downward recurrence from Gamma(0, x) = E1(x).
double upper_gamma_negint(int k, double x);

/// e^x * Gamma(-k, x), computed without forming e^x (continued fraction
/// for x >= 1, recurrence in scaled space below).
double exp_scaled_upper_gamma_negint(int k, double x);

/// Exponentially scaled modified Bessel functions e^{-x} I0(x), e^{-x} I1(x).
double bessel_i0_scaled(double x);
double bessel_i1_scaled(double x);

}  // namespace lris

#endif  // LRIS_SPECIAL_HPP
