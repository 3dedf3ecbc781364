// fano.hpp — steady-state Fano plasmon response of the coupled
// plasmon / emitter gap, transparency location and enhancement curves.
//
// Point-coupling model: the transparency sits at the emitter resonance.
// Retardation across a spatially extended gap would shift it further; that
// physics is outside this model.
#pragma once

#include "fanomech/params.hpp"

#include <complex>
#include <span>
#include <vector>

namespace fanomech {

using ComplexAmplitude = std::complex<double>;

struct Spectrum {
    std::vector<double> omegas;                // strictly increasing drive frequencies
    std::vector<ComplexAmplitude> amplitudes;  // plasmon amplitude per point
    std::vector<double> intensities;           // |amplitude|^2 per point
};

// Driven plasmon amplitude
//   alpha_p = eps_p / ( [i(Omega_p - omega) + gamma_p]
//                       - y |f|^2 / [i(Omega_QE - omega) + gamma_QE] ).
ComplexAmplitude plasmon_amplitude(double omega, const SystemParams& p);

// Pointwise plasmon_amplitude over a strictly increasing grid (length >= 2).
Spectrum spectrum(std::span<const double> omega_grid, const SystemParams& p);

// Frequency minimizing |alpha_p|^2 inside [bracket_lo, bracket_hi], located by
// a dense 1e4-point pre-scan refined with golden-section search down to a
// bracket width of 1e-12. The dip width ~gamma_QE sits four orders below
// gamma_p, so the pre-scan is required to seed the refinement.
double find_transparency(const SystemParams& p, double bracket_lo, double bracket_hi);

// |alpha_p(omega; p)|^2 / |alpha_p(omega; p with f = 0)|^2, the Fano
// suppression / enhancement factor relative to the bare plasmon.
double enhancement_ratio(double omega, const SystemParams& p);

} // namespace fanomech
