#pragma once

#include "rbyhj/grid.hpp"

namespace rbyhj {

// Reconstruction used between the grid samples when taking envelopes.
//
// Nodes: candidate extremizers are the nodes themselves. The transform is
// monotone, non-expansive and satisfies S(d)u >= u exactly; the one-sided
// bound max_minus <= 1/d is exact. It does NOT propagate semiconcavity
// certificates at the sharp rate (quantization of the maximizer produces
// h-independent curvature spikes on marginal inputs).
//
// Arcs: samples are interpolated by parabolic arcs whose per-cell curvature
// is the larger of the two adjacent discrete curvatures. This reconstruction
// has no upward kinks and its true semiconcavity equals the measured
// max_plus, so the envelope inherits the exact order shift
// s -> s/(1 - delta*s); the certificate chains of the splitting driver need
// this mode. Monotonicity in the input holds only up to the reconstruction
// (the arcs react to second differences of the input).
enum class Reconstruction { Nodes, Arcs };

// max-envelope: x -> sup over the reconstruction graph of u of
//   u(y) - (x-y)^2/(2 delta), delta > 0.
GridFn sup_convolution(const GridFn& u, double delta,
                       Reconstruction rec = Reconstruction::Nodes);

// min-envelope with +(x-y)^2/(2 delta); equals -sup_convolution(-u, delta)
// bit for bit.
GridFn inf_convolution(const GridFn& u, double delta,
                       Reconstruction rec = Reconstruction::Nodes);

// delta > 0 -> sup_convolution, delta < 0 -> inf_convolution(|delta|),
// delta = 0 -> identity. |delta| below the guard returns the input unchanged.
GridFn apply_signed(const GridFn& u, double delta,
                    Reconstruction rec = Reconstruction::Nodes);

// Envelope step calibrated to the UPPER side of u for both directions:
// increment < 0 applies the max-envelope of the upper-arc reconstruction,
// increment > 0 applies the min-envelope of the same reconstruction. Each
// step shifts the semiconcavity order parameter by exactly the increment;
// the splitting driver evolves its certificate state with this.
GridFn one_sided_step(const GridFn& u, double increment,
                      Reconstruction rec = Reconstruction::Arcs);

// |delta| < 10 h^2: the envelope is numerically indistinguishable from the
// identity and 1/delta certificates are vacuous; transforms short-circuit.
bool below_delta_guard(double delta, double h);

}  // namespace rbyhj
