#pragma once

// Chain maps induced by cobordism counts, their composition, and the
// numerical grading formulas for four-dimensional cobordisms.

#include <cstdint>

#include "floer/boundary_flow.hpp"
#include "floer/graded_complex.hpp"
#include "floer/rational.hpp"
#include "floer/report.hpp"

namespace floer {

struct CobordismMaps {
    ChainMap to, from, bar;
};

/// Degree typing of every cross count between src and dst.
Report check_cross_degrees(const BoundaryFlowData& src, const BoundaryFlowData& dst,
                           const CrossOperators& x);

/// Assembles the three chain maps without verifying them.
CobordismMaps assemble_cobordism_maps_unchecked(const BoundaryFlowData& src,
                                                const BoundaryFlowData& dst,
                                                const CrossOperators& x);

/// Degree typing and chain-map property of all three maps.
Report verify_cobordism_maps(const CobordismMaps& maps);

/// Throws VerificationError naming the failing component.
CobordismMaps assemble_cobordism_maps(const BoundaryFlowData& src, const BoundaryFlowData& dst,
                                      const CrossOperators& x);

/// second after first, flavor by flavor. Throws DimensionError on mismatch.
CobordismMaps compose_maps(const CobordismMaps& first, const CobordismMaps& second);

/// Identity counts on the interior and both boundary kinds.
CrossOperators identity_cross(const BoundaryFlowData& d);

struct TopologyNumbers {
    Rational c1_sq{0};
    std::int64_t chi = 0;
    std::int64_t sigma = 0;
    std::int64_t b1_in = 0;
    std::int64_t b1_out = 0;
};

/// Numbers of second glued after first. Throws PreconditionError when the
/// middle first Betti numbers differ.
TopologyNumbers compose(const TopologyNumbers& first, const TopologyNumbers& second);

/// (chi + sigma + b1_in - b1_out) / 2. Throws PreconditionError when odd.
std::int64_t iota(const TopologyNumbers& t);

/// c1^2/4 - iota - sigma/4.
Rational cobordism_map_degree(const TopologyNumbers& t);

/// -gr_z + c1^2/4 - iota - sigma/4.
Rational absolute_grading(std::int64_t gr_z, const TopologyNumbers& t);

/// (c1^2 - 2 chi - 3 sigma) / 4.
Rational closed_dimension(const Rational& c1_sq, std::int64_t chi, std::int64_t sigma);

} // namespace floer
