#include "floer/graded_complex.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "floer/errors.hpp"

namespace floer {

// ---------------------------------------------------------------- complexes

std::vector<Rational> GradedComplex::gradings() const
{
    std::set<Rational> seen;
    for (const auto& g : generators)
        seen.insert(scheme.normalize(g.grading));
    return {seen.begin(), seen.end()};
}

std::vector<std::size_t> GradedComplex::indices_at(const Rational& g) const
{
    const Rational target = scheme.normalize(g);
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < generators.size(); ++k)
        if (scheme.normalize(generators[k].grading) == target)
            out.push_back(k);
    return out;
}

std::size_t GradedComplex::index_of(const std::string& id) const
{
    for (std::size_t k = 0; k < generators.size(); ++k)
        if (generators[k].id == id)
            return k;
    throw PreconditionError("no generator with id '" + id + "'");
}

GradedDims GradedComplex::chain_dims() const
{
    GradedDims dims;
    for (const auto& g : generators)
        ++dims[scheme.normalize(g.grading)];
    return dims;
}

Report validate(const GradedComplex& c)
{
    Report report;
    try {
        c.scheme.check();
        for (const auto& g : c.generators)
            c.scheme.check_value(g.grading);
    } catch (const PreconditionError& e) {
        report.fail(e.what());
        return report;
    }
    std::set<std::string> ids;
    for (const auto& g : c.generators)
        if (!ids.insert(g.id).second)
            report.fail("duplicate generator id '" + g.id + "'");

    const std::size_t n = c.size();
    if (c.differential.rows() != n || c.differential.cols() != n) {
        report.fail("differential is " + std::to_string(c.differential.rows()) + "x" +
                    std::to_string(c.differential.cols()) + " for " + std::to_string(n) +
                    " generators");
        return report;
    }
    for (auto [i, j] : c.differential.nonzeros()) {
        const auto& src = c.generators[j];
        const auto& dst = c.generators[i];
        if (!c.scheme.same(dst.grading, src.grading + c.degree))
            report.fail("degree violation: " + src.id + " (" + to_string(src.grading) + ") -> " +
                        dst.id + " (" + to_string(dst.grading) + "), expected shift " +
                        to_string(c.degree));
    }
    const BitMatrix square = c.differential * c.differential;
    for (auto [i, j] : square.nonzeros())
        report.fail("d^2 != 0: " + c.generators[j].id + " -> " + c.generators[i].id);
    return report;
}

Report validate(const ChainMap& f)
{
    Report report;
    report.merge(validate(f.source), "source: ");
    report.merge(validate(f.target), "target: ");
    if (!report.passed())
        return report;
    if (f.source.scheme.kind != f.target.scheme.kind ||
        f.source.scheme.modulus != f.target.scheme.modulus) {
        report.fail("source and target use different grading schemes");
        return report;
    }
    if (f.matrix.rows() != f.target.size() || f.matrix.cols() != f.source.size()) {
        report.fail("map matrix is " + std::to_string(f.matrix.rows()) + "x" +
                    std::to_string(f.matrix.cols()) + ", expected " +
                    std::to_string(f.target.size()) + "x" + std::to_string(f.source.size()));
        return report;
    }
    for (auto [i, j] : f.matrix.nonzeros()) {
        const auto& src = f.source.generators[j];
        const auto& dst = f.target.generators[i];
        if (!f.target.scheme.same(dst.grading, src.grading + f.degree))
            report.fail("degree violation: " + src.id + " (" + to_string(src.grading) + ") -> " +
                        dst.id + " (" + to_string(dst.grading) + "), expected shift " +
                        to_string(f.degree));
    }
    const BitMatrix defect =
        f.target.differential * f.matrix + f.matrix * f.source.differential;
    for (auto [i, j] : defect.nonzeros())
        report.fail("not a chain map: d f + f d hits " + f.target.generators[i].id + " from " +
                    f.source.generators[j].id);
    return report;
}

ChainMap compose(const ChainMap& second, const ChainMap& first)
{
    if (second.source.size() != first.target.size())
        throw DimensionError("cannot compose: middle complexes have " +
                             std::to_string(first.target.size()) + " and " +
                             std::to_string(second.source.size()) + " generators");
    return {first.source, second.target, second.matrix * first.matrix,
            first.degree + second.degree};
}

// ---------------------------------------------------------------- homology

GradedDims HomologyResult::dims() const
{
    GradedDims out;
    for (const auto& p : pieces)
        out[p.grading] = p.dim();
    return out;
}

std::size_t HomologyResult::total_dim() const
{
    std::size_t n = 0;
    for (const auto& p : pieces)
        n += p.dim();
    return n;
}

const HomologyPiece* HomologyResult::at(const Rational& g) const
{
    const Rational key = scheme.normalize(g);
    for (const auto& p : pieces)
        if (p.grading == key)
            return &p;
    return nullptr;
}

std::size_t HomologyResult::dim_at(const Rational& g) const
{
    const auto* p = at(g);
    return p ? p->dim() : 0;
}

BitVector HomologyResult::representative(const Rational& g, std::size_t k) const
{
    const auto* p = at(g);
    if (!p || k >= p->dim())
        throw PreconditionError("no representative " + std::to_string(k) + " at grading " +
                                to_string(g));
    BitVector out(ambient);
    for (auto local : p->representatives[k].support())
        out.set(p->generators[local]);
    return out;
}

BitVector HomologyResult::coordinates(const Rational& g, const BitVector& cycle) const
{
    if (cycle.size() != ambient)
        throw DimensionError("cycle of length " + std::to_string(cycle.size()) +
                             " on a complex with " + std::to_string(ambient) + " generators");
    const auto* p = at(g);
    std::vector<std::size_t> support = cycle.support();
    if (!p) {
        return BitVector(0);
    }
    BitVector local(p->generators.size());
    for (auto idx : support) {
        auto it = std::lower_bound(p->generators.begin(), p->generators.end(), idx);
        if (it == p->generators.end() || *it != idx)
            throw PreconditionError("vector has support outside grading " + to_string(g), idx);
        local.set(static_cast<std::size_t>(it - p->generators.begin()));
    }
    ColumnSpace space(p->generators.size());
    for (std::size_t j = 0; j < p->boundaries.cols(); ++j)
        space.add(p->boundaries.column(j));
    for (const auto& r : p->representatives)
        space.add(r);
    auto combination = space.express(local);
    if (!combination)
        throw PreconditionError("vector is not a cycle in grading " + to_string(g));
    BitVector out(p->dim());
    for (std::size_t k = 0; k < p->dim(); ++k)
        if (combination->test(p->boundaries.cols() + k))
            out.set(k);
    return out;
}

HomologyResult homology(const GradedComplex& c)
{
    const Report report = validate(c);
    if (!report.passed())
        throw VerificationError("invalid complex: " + report.failures.front(), "d^2 = 0");

    HomologyResult result;
    result.scheme = c.scheme;
    result.ambient = c.size();
    for (const auto& g : c.gradings()) {
        const auto here = c.indices_at(g);
        const auto below = c.indices_at(g + c.degree);
        const auto above = c.indices_at(g - c.degree);

        const BitMatrix outgoing = c.differential.submatrix(below, here);
        HomologyPiece piece;
        piece.grading = g;
        piece.generators = here;
        piece.boundaries = c.differential.submatrix(here, above);

        ColumnSpace space(here.size());
        for (std::size_t j = 0; j < piece.boundaries.cols(); ++j)
            space.add(piece.boundaries.column(j));
        for (auto& z : kernel_basis(outgoing))
            if (space.add(z))
                piece.representatives.push_back(std::move(z));
        if (piece.dim() > 0)
            result.pieces.push_back(std::move(piece));
    }
    return result;
}

// ---------------------------------------------------------------- graded maps

namespace {

std::size_t lookup(const GradedDims& dims, const Rational& g)
{
    auto it = dims.find(g);
    return it == dims.end() ? 0 : it->second;
}

} // namespace

BitMatrix GradedLinearMap::block(const Rational& g) const
{
    const Rational key = scheme.normalize(g);
    auto it = blocks.find(key);
    if (it != blocks.end())
        return it->second;
    return BitMatrix::zero(lookup(target, scheme.normalize(key + degree)), lookup(source, key));
}

std::size_t GradedLinearMap::total_rank() const
{
    std::size_t r = 0;
    for (const auto& [g, m] : blocks)
        r += rank(m);
    return r;
}

GradedLinearMap compose(const GradedLinearMap& second, const GradedLinearMap& first)
{
    GradedLinearMap out;
    out.scheme = first.scheme;
    out.degree = first.degree + second.degree;
    out.source = first.source;
    out.target = second.target;
    for (const auto& [g, dim] : first.source) {
        if (dim == 0)
            continue;
        const Rational mid = first.scheme.normalize(g + first.degree);
        const BitMatrix a = first.block(g);
        const BitMatrix b = second.block(mid);
        if (b.cols() != a.rows())
            throw DimensionError("graded maps disagree about the dimension at grading " +
                                 to_string(mid));
        out.blocks[g] = b * a;
    }
    return out;
}

GradedLinearMap induced_map(const ChainMap& f)
{
    const Report report = validate(f);
    if (!report.passed())
        throw VerificationError(report.failures.front(), "d f = f d");
    return induced_map(f, homology(f.source), homology(f.target));
}

GradedLinearMap induced_map(const ChainMap& f, const HomologyResult& source,
                            const HomologyResult& target)
{
    GradedLinearMap out;
    out.scheme = f.source.scheme;
    out.degree = f.degree;
    out.source = source.dims();
    out.target = target.dims();
    for (const auto& piece : source.pieces) {
        const Rational tg = out.scheme.normalize(piece.grading + f.degree);
        BitMatrix block(target.dim_at(tg), piece.dim());
        for (std::size_t k = 0; k < piece.dim(); ++k) {
            const BitVector image = f.matrix * source.representative(piece.grading, k);
            if (block.rows() == 0) {
                continue;
            }
            for (auto r : target.coordinates(tg, image).support())
                block.set(r, k);
        }
        out.blocks[piece.grading] = std::move(block);
    }
    return out;
}

// ---------------------------------------------------------------- constructions

GradedComplex dualize(const GradedComplex& c)
{
    GradedComplex out;
    out.scheme = c.scheme;
    out.degree = c.degree;
    for (const auto& g : c.generators)
        out.generators.push_back({g.id, c.scheme.normalize(-g.grading)});
    out.differential = c.differential.transpose();
    return out;
}

GradedComplex regrade(const GradedComplex& c, const Rational& offset)
{
    GradedComplex out = c;
    for (auto& g : out.generators)
        g.grading = c.scheme.normalize(g.grading + offset);
    return out;
}

BitMatrix Involution::matrix() const
{
    BitMatrix m(image.size(), image.size());
    for (std::size_t k = 0; k < image.size(); ++k)
        m.set(image[k], k);
    return m;
}

bool Involution::is_free() const
{
    for (std::size_t k = 0; k < image.size(); ++k)
        if (image[k] == k)
            return false;
    return true;
}

InvariantSubcomplex invariant_subcomplex(const GradedComplex& c, const Involution& inv)
{
    const std::size_t n = c.size();
    if (inv.image.size() != n)
        throw DimensionError("involution acts on " + std::to_string(inv.image.size()) +
                             " generators, complex has " + std::to_string(n));
    for (std::size_t k = 0; k < n; ++k) {
        if (inv.image[k] >= n || inv.image[inv.image[k]] != k)
            throw PreconditionError("map does not square to the identity at generator " +
                                        c.generators[k].id,
                                    k);
        if (!c.scheme.same(c.generators[k].grading, c.generators[inv.image[k]].grading))
            throw PreconditionError("involution changes the grading of " + c.generators[k].id, k);
    }
    const BitMatrix t = inv.matrix();
    const BitMatrix defect = c.differential * t + t * c.differential;
    if (!defect.is_zero())
        throw PreconditionError("involution does not commute with the differential",
                                defect.nonzeros().front().second);

    InvariantSubcomplex out;
    out.complex.scheme = c.scheme;
    out.complex.degree = c.degree;
    std::vector<std::size_t> orbit_of(n);
    std::vector<std::size_t> leaders;
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t partner = inv.image[k];
        if (partner < k) {
            orbit_of[k] = orbit_of[partner];
            continue;
        }
        orbit_of[k] = leaders.size();
        leaders.push_back(k);
        std::string id = c.generators[k].id;
        if (partner != k)
            id += "+" + c.generators[partner].id;
        out.complex.generators.push_back({id, c.generators[k].grading});
    }
    const std::size_t m = leaders.size();
    out.inclusion = BitMatrix(n, m);
    out.transfer = BitMatrix(m, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.inclusion.set(k, orbit_of[k]);
        if (inv.image[k] != k)
            out.transfer.set(orbit_of[k], k);
    }
    out.complex.differential = BitMatrix(m, m);
    for (std::size_t o = 0; o < m; ++o) {
        const BitVector boundary = c.differential * out.inclusion.column(o);
        BitVector rebuilt(n);
        for (std::size_t p = 0; p < m; ++p) {
            if (boundary.test(leaders[p])) {
                out.complex.differential.set(p, o);
                rebuilt ^= out.inclusion.column(p);
            }
        }
        if (!(rebuilt == boundary))
            throw PreconditionError("boundary of an orbit sum is not invariant", leaders[o]);
    }
    return out;
}

ExactnessReport check_exact(const std::vector<GradedLinearMap>& seq, std::size_t position)
{
    if (position == 0 || position >= seq.size())
        throw PreconditionError("exactness position " + std::to_string(position) +
                                " needs a map on each side");
    const auto& in = seq[position - 1];
    const auto& out = seq[position];

    std::set<Rational> middle;
    for (const auto& [g, d] : in.target)
        if (d)
            middle.insert(g);
    for (const auto& [g, d] : out.source)
        if (d)
            middle.insert(g);
    for (const auto& g : middle)
        if (lookup(in.target, g) != lookup(out.source, g))
            throw DimensionError("grading misalignment at " + to_string(g) + ": incoming map sees " +
                                 std::to_string(lookup(in.target, g)) + ", outgoing map sees " +
                                 std::to_string(lookup(out.source, g)));

    ExactnessReport report;
    for (const auto& g : middle) {
        const BitMatrix leaving = out.block(g);
        const BitMatrix arriving = in.block(in.scheme.normalize(g - in.degree));
        const std::size_t dim = lookup(out.source, g);
        if (!(leaving * arriving).is_zero()) {
            report.exact = false;
            report.failures.push_back("composite is nonzero at grading " + to_string(g));
            continue;
        }
        const std::size_t kernel = dim - rank(leaving);
        const std::size_t image = rank(arriving);
        if (kernel != image) {
            report.exact = false;
            report.failures.push_back("at grading " + to_string(g) + ": dim ker = " +
                                      std::to_string(kernel) + ", dim im = " +
                                      std::to_string(image));
        }
    }
    return report;
}

std::string describe(const GradedDims& dims)
{
    std::ostringstream os;
    bool first = true;
    for (const auto& [g, d] : dims) {
        if (d == 0)
            continue;
        os << (first ? "" : ", ") << "F";
        if (d > 1)
            os << "^" << d;
        os << "@" << to_string(g);
        first = false;
    }
    return first ? "0" : os.str();
}

} // namespace floer
