#pragma once

// Module structure on homology: U-towers and the Froyshov invariant, the
// characteristic-vector bound rho(Q), and the Pin(2) R-module towers with
// their correction terms.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "floer/boundary_flow.hpp"
#include "floer/gf2.hpp"
#include "floer/graded_complex.hpp"
#include "floer/rational.hpp"
#include "floer/report.hpp"

namespace floer {

/// Graded module with a degree -2 endomorphism and a marked submodule.
struct UModule {
    GradedDims dims;
    /// Keyed by source grading g: dims[g - 2] x dims[g].
    std::map<Rational, BitMatrix> u;
    /// Basis of the marked subspace per grading, in homology coordinates.
    std::map<Rational, std::vector<BitVector>> i_image;
    /// Highest grading inside the truncation window, if truncated.
    std::optional<Rational> window_top;

    BitMatrix u_block(const Rational& g) const;
};

/// Degree typing of U and U-invariance of the marked subspace.
Report check_umodule(const UModule& m);

/// U from the u_cap counts, marked subspace = image of i_* on the to
/// flavor. Throws PreconditionError when d has no u_cap.
UModule build_umodule(const BoundaryFlowData& d);

/// Shifts every grading by `offset`.
UModule regrade(const UModule& m, const Rational& offset);

/// Tower shape of the marked subspace: one dimension per grading, step 2,
/// U carrying each rung onto the one below and killing the bottom.
Report verify_u_tower(const UModule& m);

/// -(bottom grading of the tower)/2. Throws PreconditionError when the
/// marked subspace is not a single tower.
Rational froyshov(const UModule& m);

struct QuadraticForm {
    std::vector<std::vector<std::int64_t>> entries;

    std::size_t rank() const { return entries.size(); }
    /// Throws PreconditionError unless square and symmetric.
    void check() const;
    /// Leading principal minors alternate in sign, starting negative.
    bool negative_definite() const;
    std::int64_t value(const std::vector<std::int64_t>& x) const;
};

struct RhoResult {
    Rational rho;
    /// min |Q(c)| over characteristic vectors.
    std::int64_t min_norm = 0;
    std::vector<std::int64_t> witness;
    /// Half-width of the coordinate box that was searched.
    std::int64_t box = 0;
};

/// (rank - min |Q(c)|)/8 over characteristic vectors c. With no box the
/// search radius is derived from the smallest eigenvalue of -Q. Throws
/// PreconditionError for non-definite input or a box that cannot be
/// certified.
RhoResult rho(const QuadraticForm& q, std::optional<std::int64_t> box = std::nullopt);

bool check_froyshov_inequality(const Rational& h0, const Rational& h1, const Rational& rho_value);

/// Graded module over F[V, Q]/(Q^3) with deg V = -4 and deg Q = -1.
struct RModule {
    GradedDims dims;
    std::map<Rational, BitMatrix> v;
    std::map<Rational, BitMatrix> q;
    std::map<Rational, std::vector<BitVector>> i_image;

    BitMatrix v_block(const Rational& g) const;
    BitMatrix q_block(const Rational& g) const;
};

/// Degree typing, Q^3 = 0, VQ = QV.
Report check_rmodule(const RModule& m);

RModule regrade(const RModule& m, const Rational& offset);

struct TowerBottoms {
    Rational a, b, c;
};

/// Bottoms of Q^2 I, of QI beyond Q^2 I, and of I beyond QI, each of
/// which must be a gap-free step-4 progression.
TowerBottoms r_tower_decompose(const RModule& m);

struct CorrectionTerms {
    Rational alpha, beta, gamma;

    bool operator==(const CorrectionTerms&) const = default;
};

/// (a/2, (b-1)/2, (c-2)/2). Throws PreconditionError on parity or order.
CorrectionTerms correction_terms(const Rational& a, const Rational& b, const Rational& c);

/// (-gamma, -beta, -alpha).
CorrectionTerms duality_terms(const CorrectionTerms& t);

/// alpha, beta and gamma all reduce to the given bit mod 2.
bool rokhlin_lift_check(const CorrectionTerms& t, int rokhlin_bit);

struct OrderTwoVerdict {
    /// False when beta_Y != beta_negY although the class has order two.
    bool consistent = false;
    /// beta mod 2 when consistent.
    std::optional<int> rokhlin;
    std::string message;
};

/// Throws PreconditionError when beta_negY != -beta_Y.
OrderTwoVerdict order_two_argument(std::int64_t beta_y, std::int64_t beta_neg_y);

/// alpha1 >= alpha0 + b2/8 and likewise for beta and gamma. Throws
/// PreconditionError when b2 is not a multiple of 8.
bool check_pin2_inequalities(const CorrectionTerms& t0, const CorrectionTerms& t1,
                             std::int64_t b2);

} // namespace floer
