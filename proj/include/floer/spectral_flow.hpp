#pragma once

// Spectral flow of sampled paths of Hermitian matrices.

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace floer {

/// Samples A(t_k) of a path, joined by straight segments.
struct HermitianPath {
    std::vector<double> t;
    std::vector<Eigen::MatrixXcd> samples;

    /// Throws PreconditionError for shape, ordering or symmetry problems.
    void check() const;
};

struct Crossing {
    double t = 0.0;
    /// +1 when an eigenvalue goes from negative to positive.
    int direction = 0;
};

struct SpectralFlowResult {
    std::int64_t flow = 0;
    std::vector<Crossing> crossings;
};

/// Signed count of eigenvalue crossings along the piecewise linear path.
/// Segments are bisected until eigenvalue continuity certifies that no
/// crossing is missed. Throws PreconditionError when an endpoint has an
/// eigenvalue within tol of zero, and VerificationError when two
/// eigenvalues cross at a point bisection cannot separate.
SpectralFlowResult spectral_flow(const HermitianPath& path, double tol = 1e-9);

/// Flow reduced mod d; d = 0 leaves it unchanged. Throws
/// PreconditionError for odd or negative d.
std::int64_t relative_grading_mod_d(std::int64_t flow, std::int64_t d);

/// Spectral flow of a closed path, which must be zero. Throws
/// PreconditionError for open paths and VerificationError for nonzero flow.
SpectralFlowResult loop_flow_check(const HermitianPath& path, double tol = 1e-9);

/// p1 followed by p2; the last sample of p1 must equal the first of p2.
HermitianPath concatenate(const HermitianPath& p1, const HermitianPath& p2);

/// Same samples traversed backwards, parameter t -> t0 + t1 - t.
HermitianPath reverse(const HermitianPath& p);

} // namespace floer
