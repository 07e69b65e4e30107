#pragma once

// Flow data and Morse-Bott levels generated from explicit finite models.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "floer/boundary_flow.hpp"
#include "floer/module_structure.hpp"
#include "floer/morse_bott.hpp"

namespace floer {

/// Diagonal Hermitian operator with simple nonzero spectrum.
struct HermitianModelSpec {
    std::vector<double> eigenvalues;

    /// Throws PreconditionError for zero or repeated eigenvalues.
    void check() const;
    /// Eigenvalues in ascending order.
    std::vector<double> sorted() const;
};

/// One boundary point per eigenvalue: the k-th positive one (ascending) is
/// stable at 2k, the m-th negative one (descending) is unstable at -1-2m,
/// all shifted by `grading_offset`. No differentials; the U-cap links
/// neighbouring eigenvalues.
BoundaryFlowData gen_blowup_model(const HermitianModelSpec& spec,
                                  std::int64_t grading_offset = 0);

/// Dimension 2i-1 of the trajectory space from eigenvalue index `from` to
/// index `to` (ascending order), where i counts eigenvalues in (to, from].
/// Throws PreconditionError unless from > to.
std::int64_t traj_space_dim(const HermitianModelSpec& spec, std::size_t from, std::size_t to);

struct FlowEndpoint {
    /// Index (in the given order) of the eigenvector approached.
    std::size_t eigen_index = 0;
    std::vector<double> endpoint;
    /// Largest norm drift seen before renormalising.
    double max_drift = 0.0;
};

/// RK4 integration of d(phi)/dt = -(L phi - <phi, L phi> phi) on the unit
/// sphere with L = diag(eigenvalues). Throws PreconditionError for n > 4 or
/// a zero start, and VerificationError when a step drifts off the sphere by
/// more than 1e-6.
FlowEndpoint integrate_model_flow(const HermitianModelSpec& spec, std::vector<double> start,
                                  double duration, double step = 1e-3);

BoundaryFlowData gen_interval();
BoundaryFlowData gen_hemisphere();
BoundaryFlowData gen_disk4();

/// Truncated tower with n_stable stable and n_unstable unstable points.
BoundaryFlowData gen_s3_tower(std::size_t n_stable, std::size_t n_unstable);

/// Level k contributes dims (1,1,1) at 4k, 4k+1, 4k+2. With `mirrored`,
/// levels -1, -2, ... sit at -4k-3 and above.
std::vector<BottLevel> gen_pin2_s3(std::size_t levels, bool mirrored = false);

/// Complex projective levels: multiplicity m gives CP^{m-1}, placed above
/// the levels before it.
std::vector<BottLevel> projective_bott_levels(const std::vector<std::size_t>& multiplicities);

/// Cellular sphere of dimension n with the antipodal involution: two cells
/// e_k+ and e_k- in each degree k <= n.
GradedComplex antipodal_sphere(std::size_t n);
Involution antipodal_involution(std::size_t n);

/// R-module of the Pin(2) tower truncated to `levels` levels, with Q taken
/// from the Gysin sequence of the antipodal 2-sphere.
RModule pin2_s3_rmodule(std::size_t levels);

} // namespace floer
