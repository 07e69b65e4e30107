#pragma once

// Graded chain complexes over F_2, chain maps between them, homology with
// explicit representatives, and maps induced on homology.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "floer/gf2.hpp"
#include "floer/grading.hpp"
#include "floer/rational.hpp"
#include "floer/report.hpp"

namespace floer {

struct Generator {
    std::string id;
    Rational grading;
};

/// Dimension per grading, ascending. Only nonzero entries are kept by the
/// functions here, but zero entries are tolerated on input.
using GradedDims = std::map<Rational, std::size_t>;

struct GradedComplex {
    GradingScheme scheme;
    std::vector<Generator> generators;
    /// Square matrix; column j is the boundary of generator j.
    BitMatrix differential;
    Rational degree{-1};

    std::size_t size() const { return generators.size(); }
    /// Distinct normalized gradings, ascending.
    std::vector<Rational> gradings() const;
    /// Generator indices whose normalized grading equals normalize(g).
    std::vector<std::size_t> indices_at(const Rational& g) const;
    /// Index of the generator with this id; throws PreconditionError.
    std::size_t index_of(const std::string& id) const;
    GradedDims chain_dims() const;
};

/// Checks shapes, degree typing of every nonzero entry and d^2 = 0.
Report validate(const GradedComplex& c);

struct ChainMap {
    GradedComplex source;
    GradedComplex target;
    /// target.size() x source.size().
    BitMatrix matrix;
    Rational degree{0};
};

/// Checks shapes, degree typing and d_target f = f d_source.
Report validate(const ChainMap& f);

/// g after f. Throws DimensionError when the middle complexes differ in size.
ChainMap compose(const ChainMap& second, const ChainMap& first);

struct HomologyPiece {
    Rational grading;
    /// Complex indices of the generators in this grading.
    std::vector<std::size_t> generators;
    /// Columns span the boundaries landing in this grading, local coordinates.
    BitMatrix boundaries;
    /// Cycles (local coordinates) whose classes form the chosen basis.
    std::vector<BitVector> representatives;

    std::size_t dim() const { return representatives.size(); }
};

struct HomologyResult {
    GradingScheme scheme;
    std::size_t ambient = 0;
    /// Pieces with nonzero homology, ascending grading.
    std::vector<HomologyPiece> pieces;

    GradedDims dims() const;
    std::size_t total_dim() const;
    std::size_t dim_at(const Rational& g) const;
    const HomologyPiece* at(const Rational& g) const;
    /// Representative k at grading g as a vector on the whole complex.
    BitVector representative(const Rational& g, std::size_t k) const;
    /// Class of a cycle concentrated in grading g, in the basis of
    /// representatives. Throws PreconditionError when the vector is not a
    /// cycle supported in grading g.
    BitVector coordinates(const Rational& g, const BitVector& cycle) const;
};

/// Throws VerificationError when validate(c) fails.
HomologyResult homology(const GradedComplex& c);

/// A degree-typed linear map between graded vector spaces, stored as one
/// block per source grading: block(g) is dims_target[g + degree] x
/// dims_source[g].
struct GradedLinearMap {
    GradingScheme scheme;
    Rational degree{0};
    GradedDims source;
    GradedDims target;
    std::map<Rational, BitMatrix> blocks;

    /// Block at source grading g, zero of the right shape if absent.
    BitMatrix block(const Rational& g) const;
    std::size_t rank_at(const Rational& g) const { return rank(block(g)); }
    std::size_t total_rank() const;
};

/// second after first on the graded level.
GradedLinearMap compose(const GradedLinearMap& second, const GradedLinearMap& first);

/// Map induced on homology. Throws VerificationError for a non-chain map.
GradedLinearMap induced_map(const ChainMap& f);
GradedLinearMap induced_map(const ChainMap& f, const HomologyResult& source,
                            const HomologyResult& target);

/// Generators kept, differential transposed, gradings negated. The degree
/// is unchanged.
GradedComplex dualize(const GradedComplex& c);

/// Every grading shifted by `offset`.
GradedComplex regrade(const GradedComplex& c, const Rational& offset);

/// An involution of the generator set, image[k] being the partner of k.
struct Involution {
    std::vector<std::size_t> image;

    BitMatrix matrix() const;
    /// True when no generator is fixed.
    bool is_free() const;
};

/// Subcomplex spanned by orbit sums.
struct InvariantSubcomplex {
    GradedComplex complex;
    /// c.size() x complex.size(); column k is orbit sum k inside c.
    BitMatrix inclusion;
    /// complex.size() x c.size(); the orbit-sum map v -> v + inv(v)
    /// expressed in the invariant basis (only orbits of size two survive).
    BitMatrix transfer;
};

/// Throws PreconditionError when inv is not an involution, does not
/// preserve gradings, or does not commute with the differential.
InvariantSubcomplex invariant_subcomplex(const GradedComplex& c, const Involution& inv);

struct ExactnessReport {
    bool exact = true;
    std::vector<std::string> failures;
};

/// Exactness at the middle of seq[position - 1] -> X -> seq[position]:
/// ker = im in every grading of X. Throws DimensionError when the two
/// maps disagree about dims of X.
ExactnessReport check_exact(const std::vector<GradedLinearMap>& seq, std::size_t position);

/// "F@0, F^2@2" style summary; "0" for the zero space.
std::string describe(const GradedDims& dims);

} // namespace floer
