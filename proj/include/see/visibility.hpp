#ifndef SEE_VISIBILITY_HPP_
#define SEE_VISIBILITY_HPP_

#include "see/cap_solver.hpp"
#include "see/observed_cloud.hpp"
#include "see/params.hpp"
#include "see/surface.hpp"

namespace see {

/// Distance along the frame normal to the first upsilon-ball free of stored
/// points, sampled at multiples of upsilon and capped at the first multiple
/// reaching psi.
double visibility_offset(const ObservedCloud& cloud, const Point& frontier, const SurfaceFrame& frame,
                         const ObservationParams& params);

/// Sight-line test with a precomputed visibility offset. Samples
/// f - i o_s for i = zeta, zeta + upsilon, ... below psi, plus psi itself.
bool is_occluded(const ObservedCloud& cloud, const Point& view_position, const Point& frontier, double offset,
                 const ObservationParams& params);

bool is_occluded(const ObservedCloud& cloud, const View& view, const Point& frontier, const SurfaceFrame& frame,
                 const ObservationParams& params);

/// Maximin view of the frontier over the stored points within psi, projected
/// onto a unit sphere centred zeta before the frontier along the capturing
/// sight line. Falls back to that sight line when nothing is in range.
View optimise_view(const ObservedCloud& cloud, const Point& frontier, const Point& capture_position,
                   const SurfaceFrame& frame, const ObservationParams& params);

/// Same as above with a precomputed visibility offset.
View optimise_view_with_offset(const ObservedCloud& cloud, const Point& frontier, const Point& capture_position,
                               double offset, const ObservationParams& params);

}  // namespace see

#endif  // SEE_VISIBILITY_HPP_
