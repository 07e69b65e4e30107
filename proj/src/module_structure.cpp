#include "floer/module_structure.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "floer/cobordism.hpp"
#include "floer/errors.hpp"

namespace floer {

namespace {

std::size_t lookup(const GradedDims& dims, const Rational& g)
{
    auto it = dims.find(g);
    return it == dims.end() ? 0 : it->second;
}

BitMatrix block_or_zero(const std::map<Rational, BitMatrix>& blocks, const GradedDims& dims,
                        const Rational& g, std::int64_t degree)
{
    auto it = blocks.find(g);
    if (it != blocks.end())
        return it->second;
    return BitMatrix::zero(lookup(dims, g + degree), lookup(dims, g));
}

BitMatrix span_matrix(const std::vector<BitVector>& basis, std::size_t dim)
{
    return BitMatrix::from_columns(dim, basis);
}

/// Independent columns of m, first occurrence kept.
std::vector<BitVector> column_basis(const BitMatrix& m)
{
    ColumnSpace space(m.rows());
    std::vector<BitVector> out;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        BitVector col = m.column(j);
        if (space.add(col))
            out.push_back(std::move(col));
    }
    return out;
}

bool in_span(const std::vector<BitVector>& basis, std::size_t dim, const BitVector& v)
{
    ColumnSpace space(dim);
    for (const auto& b : basis)
        space.add(b);
    return space.contains(v);
}

template <class Blocks>
Blocks shift_keys(const Blocks& blocks, const Rational& offset)
{
    Blocks out;
    for (const auto& [g, value] : blocks)
        out.emplace(g + offset, value);
    return out;
}

GradedDims shift_dims(const GradedDims& dims, const Rational& offset)
{
    return shift_keys(dims, offset);
}

} // namespace

// ---------------------------------------------------------------- U-modules

BitMatrix UModule::u_block(const Rational& g) const { return block_or_zero(u, dims, g, -2); }

Report check_umodule(const UModule& m)
{
    Report report;
    for (const auto& [g, block] : m.u) {
        if (block.rows() != lookup(m.dims, g - 2) || block.cols() != lookup(m.dims, g))
            report.fail("U block at grading " + to_string(g) + " has the wrong shape");
    }
    for (const auto& [g, basis] : m.i_image) {
        const std::size_t dim = lookup(m.dims, g);
        for (const auto& v : basis) {
            if (v.size() != dim) {
                report.fail("marked vector at grading " + to_string(g) + " has the wrong length");
                continue;
            }
            const BitVector image = m.u_block(g) * v;
            auto below = m.i_image.find(g - 2);
            const std::vector<BitVector> empty;
            if (!in_span(below == m.i_image.end() ? empty : below->second, image.size(), image))
                report.fail("U moves a marked vector at grading " + to_string(g) +
                            " outside the marked subspace");
        }
    }
    return report;
}

UModule build_umodule(const BoundaryFlowData& d)
{
    if (!d.u_cap)
        throw PreconditionError(d.name + " carries no u_cap counts");
    const Triangle t = triangle_maps(d);
    const CobordismMaps cap = assemble_cobordism_maps(d, d, *d.u_cap);
    if (cap.to.degree != -2)
        throw PreconditionError("u_cap has degree " + to_string(cap.to.degree) + ", expected -2");

    UModule m;
    m.dims = t.h_to.dims();
    m.u = induced_map(cap.to, t.h_to, t.h_to).blocks;
    for (const auto& [g, dim] : m.dims) {
        auto basis = column_basis(t.i_star.block(g));
        if (!basis.empty())
            m.i_image[g] = std::move(basis);
    }
    const auto gradings = t.to.gradings();
    if (!gradings.empty())
        m.window_top = gradings.back();
    return m;
}

UModule regrade(const UModule& m, const Rational& offset)
{
    UModule out;
    out.dims = shift_dims(m.dims, offset);
    out.u = shift_keys(m.u, offset);
    out.i_image = shift_keys(m.i_image, offset);
    if (m.window_top)
        out.window_top = *m.window_top + offset;
    return out;
}

Report verify_u_tower(const UModule& m)
{
    Report report = check_umodule(m);
    if (!report.passed())
        return report;
    std::vector<Rational> rungs;
    for (const auto& [g, basis] : m.i_image) {
        if (basis.empty())
            continue;
        if (basis.size() != 1)
            report.fail("grading " + to_string(g) + " carries " + std::to_string(basis.size()) +
                        " marked generators");
        rungs.push_back(g);
    }
    if (rungs.empty()) {
        report.fail("marked subspace is empty");
        return report;
    }
    for (std::size_t k = 1; k < rungs.size(); ++k) {
        const Rational gap = rungs[k] - rungs[k - 1];
        if (gap.denominator() != 1 || gap.numerator() % 2 != 0) {
            report.fail("rungs at " + to_string(rungs[k - 1]) + " and " + to_string(rungs[k]) +
                        " differ in parity");
            continue;
        }
        for (Rational missing = rungs[k - 1] + 2; missing < rungs[k]; missing += 2)
            report.fail("missing rung at grading " + to_string(missing));
    }
    if (!report.passed())
        return report;

    for (std::size_t k = 0; k < rungs.size(); ++k) {
        const Rational g = rungs[k];
        const BitVector image = m.u_block(g) * m.i_image.at(g).front();
        if (k == 0) {
            if (image.any())
                report.fail("U does not kill the bottom rung at grading " + to_string(g));
        } else if (!(image == m.i_image.at(rungs[k - 1]).front())) {
            report.fail("U does not carry the rung at " + to_string(g) + " onto the rung at " +
                        to_string(rungs[k - 1]));
        }
    }
    return report;
}

Rational froyshov(const UModule& m)
{
    const Report report = verify_u_tower(m);
    if (!report.passed())
        throw PreconditionError("marked subspace is not a U-tower: " + report.failures.front());
    return -m.i_image.begin()->first / 2;
}

// ---------------------------------------------------------------- rho

void QuadraticForm::check() const
{
    const std::size_t n = entries.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (entries[i].size() != n)
            throw PreconditionError("form row " + std::to_string(i) + " has " +
                                        std::to_string(entries[i].size()) + " entries, expected " +
                                        std::to_string(n),
                                    i);
        for (std::size_t j = 0; j < i; ++j)
            if (entries[i][j] != entries[j][i])
                throw PreconditionError("form is not symmetric at (" + std::to_string(i) + "," +
                                            std::to_string(j) + ")",
                                        i);
    }
}

bool QuadraticForm::negative_definite() const
{
    check();
    const std::size_t n = rank();
    std::vector<std::vector<__int128>> a(n, std::vector<__int128>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            a[i][j] = entries[i][j];
    // Fraction-free elimination: after step k, a[k][k] is the (k+1)-th
    // leading principal minor.
    __int128 previous = 1;
    for (std::size_t k = 0; k < n; ++k) {
        const __int128 minor = a[k][k];
        const bool should_be_negative = (k % 2) == 0;
        if (minor == 0 || (minor < 0) != should_be_negative)
            return false;
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / previous;
        previous = minor;
    }
    return true;
}

std::int64_t QuadraticForm::value(const std::vector<std::int64_t>& x) const
{
    std::int64_t total = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j)
            total += x[i] * entries[i][j] * x[j];
    return total;
}

namespace {

struct Search {
    const QuadraticForm& q;
    Eigen::MatrixXd r; // upper Cholesky factor of -Q
    std::int64_t radius;
    std::vector<std::int64_t> residue; // 0/1 pattern of the coset
    std::vector<std::int64_t> current;
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    std::vector<std::int64_t> witness;

    void run(std::size_t level_plus_one, double partial)
    {
        if (level_plus_one == 0) {
            const std::int64_t norm = -q.value(current);
            if (norm < best) {
                best = norm;
                witness = current;
            }
            return;
        }
        const std::size_t i = level_plus_one - 1;
        const std::size_t n = current.size();
        double tail = 0.0;
        for (std::size_t j = i + 1; j < n; ++j)
            tail += r(i, j) * static_cast<double>(current[j]);
        std::int64_t start = -radius;
        if (((start - residue[i]) % 2 + 2) % 2 != 0)
            ++start;
        for (std::int64_t v = start; v <= radius; v += 2) {
            const double term = r(i, i) * static_cast<double>(v) + tail;
            const double next = partial + term * term;
            if (best != std::numeric_limits<std::int64_t>::max() &&
                next > static_cast<double>(best) + 1e-6 * (1.0 + static_cast<double>(best)))
                continue;
            current[i] = v;
            run(i, next);
        }
        current[i] = 0;
    }
};

} // namespace

RhoResult rho(const QuadraticForm& q, std::optional<std::int64_t> box)
{
    q.check();
    if (!q.negative_definite())
        throw PreconditionError("form is not negative definite");
    const std::size_t n = q.rank();
    RhoResult result;
    if (n == 0) {
        result.rho = 0;
        return result;
    }

    // Characteristic vectors solve Q c = diag(Q) mod 2.
    BitMatrix mod2(n, n);
    BitVector diagonal(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            if (q.entries[i][j] % 2 != 0)
                mod2.set(i, j);
        if (q.entries[i][i] % 2 != 0)
            diagonal.set(i);
    }
    const Membership particular = image_membership(mod2, diagonal);
    if (!particular.member)
        throw PreconditionError("no characteristic vector exists");
    const auto kernel = kernel_basis(mod2);
    if (kernel.size() > 16)
        throw PreconditionError("form is too degenerate mod 2 for coset enumeration");

    Eigen::MatrixXd a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            a(i, j) = -static_cast<double>(q.entries[i][j]);
    const double lambda_min = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(a).eigenvalues()(0);
    Eigen::LLT<Eigen::MatrixXd> llt(a);
    const Eigen::MatrixXd upper = llt.matrixU();

    std::vector<std::vector<std::int64_t>> residues;
    std::int64_t incumbent = std::numeric_limits<std::int64_t>::max();
    for (std::size_t mask = 0; mask < (std::size_t{1} << kernel.size()); ++mask) {
        BitVector c = *particular.witness;
        for (std::size_t k = 0; k < kernel.size(); ++k)
            if (mask >> k & 1U)
                c ^= kernel[k];
        std::vector<std::int64_t> lift(n);
        for (std::size_t i = 0; i < n; ++i)
            lift[i] = c.test(i) ? 1 : 0;
        incumbent = std::min(incumbent, -q.value(lift));
        residues.push_back(std::move(lift));
    }

    const std::int64_t certified =
        static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<double>(incumbent) / lambda_min))) +
        1;
    const std::int64_t radius = box ? *box : certified;
    if (radius < 0)
        throw PreconditionError("search box must be nonnegative");

    Search search{q, upper, radius, {}, std::vector<std::int64_t>(n, 0), std::numeric_limits<std::int64_t>::max(), {}};
    for (const auto& r : residues) {
        search.residue = r;
        search.run(n, 0.0);
    }
    if (search.witness.empty())
        throw PreconditionError("box " + std::to_string(radius) +
                                " contains no characteristic vector");
    if (radius < certified) {
        // Anything outside the box has a coordinate of size >= radius + 1.
        const double floor_outside =
            lambda_min * static_cast<double>(radius + 1) * static_cast<double>(radius + 1);
        if (!(floor_outside > static_cast<double>(search.best) + 1e-9))
            throw PreconditionError("box " + std::to_string(radius) +
                                    " is not certified; need at least " +
                                    std::to_string(certified));
    }

    result.min_norm = search.best;
    result.witness = search.witness;
    result.box = radius;
    result.rho = Rational(static_cast<std::int64_t>(n) - search.best, 8);
    return result;
}

bool check_froyshov_inequality(const Rational& h0, const Rational& h1, const Rational& rho_value)
{
    return h0 >= h1 + rho_value;
}

// ---------------------------------------------------------------- R-modules

BitMatrix RModule::v_block(const Rational& g) const { return block_or_zero(v, dims, g, -4); }
BitMatrix RModule::q_block(const Rational& g) const { return block_or_zero(q, dims, g, -1); }

Report check_rmodule(const RModule& m)
{
    Report report;
    for (const auto& [g, block] : m.v)
        if (block.rows() != lookup(m.dims, g - 4) || block.cols() != lookup(m.dims, g))
            report.fail("V block at grading " + to_string(g) + " has the wrong shape");
    for (const auto& [g, block] : m.q)
        if (block.rows() != lookup(m.dims, g - 1) || block.cols() != lookup(m.dims, g))
            report.fail("Q block at grading " + to_string(g) + " has the wrong shape");
    for (const auto& [g, basis] : m.i_image)
        for (const auto& vec : basis)
            if (vec.size() != lookup(m.dims, g))
                report.fail("marked vector at grading " + to_string(g) + " has the wrong length");
    if (!report.passed())
        return report;

    for (const auto& [g, dim] : m.dims) {
        if (!(m.q_block(g - 2) * m.q_block(g - 1) * m.q_block(g)).is_zero())
            report.fail("Q^3 != 0 from grading " + to_string(g));
        if (!(m.v_block(g - 1) * m.q_block(g) == m.q_block(g - 4) * m.v_block(g)))
            report.fail("V and Q do not commute at grading " + to_string(g));
    }
    return report;
}

RModule regrade(const RModule& m, const Rational& offset)
{
    return {shift_dims(m.dims, offset), shift_keys(m.v, offset), shift_keys(m.q, offset),
            shift_keys(m.i_image, offset)};
}

TowerBottoms r_tower_decompose(const RModule& m)
{
    const Report report = check_rmodule(m);
    if (!report.passed())
        throw PreconditionError("malformed R-module: " + report.failures.front());

    std::map<Rational, std::size_t> dim_i, dim_qi, dim_q2i;
    for (const auto& [g, basis] : m.i_image) {
        if (basis.empty())
            continue;
        const BitMatrix span = span_matrix(basis, lookup(m.dims, g));
        dim_i[g] = rank(span);
        const BitMatrix once = m.q_block(g) * span;
        const BitMatrix twice = m.q_block(g - 1) * once;
        if (const auto r = rank(once))
            dim_qi[g - 1] = r;
        if (const auto r = rank(twice))
            dim_q2i[g - 2] = r;
    }

    auto bottom_of = [](const std::map<Rational, std::ptrdiff_t>& piece, const char* name) {
        std::vector<Rational> support;
        for (const auto& [g, d] : piece) {
            if (d < 0)
                throw PreconditionError(std::string(name) + " has negative dimension at grading " +
                                        to_string(g) + "; Q does not preserve the marked part");
            if (d > 1)
                throw PreconditionError(std::string(name) + " has dimension " + std::to_string(d) +
                                        " at grading " + to_string(g));
            if (d == 1)
                support.push_back(g);
        }
        if (support.empty())
            throw PreconditionError(std::string(name) + " is empty; wrong Q-rank profile");
        for (std::size_t k = 1; k < support.size(); ++k)
            if (support[k] - support[k - 1] != 4)
                throw PreconditionError(std::string(name) + " jumps from " +
                                        to_string(support[k - 1]) + " to " +
                                        to_string(support[k]) + " instead of stepping by 4");
        return support.front();
    };

    std::map<Rational, std::ptrdiff_t> a, b, c;
    for (const auto& [g, d] : dim_q2i)
        a[g] = static_cast<std::ptrdiff_t>(d);
    for (const auto& [g, d] : dim_qi)
        b[g] = static_cast<std::ptrdiff_t>(d) - static_cast<std::ptrdiff_t>(lookup(dim_q2i, g));
    for (const auto& [g, d] : dim_i)
        c[g] = static_cast<std::ptrdiff_t>(d) - static_cast<std::ptrdiff_t>(lookup(dim_qi, g));
    for (const auto& [g, d] : dim_q2i)
        if (!b.count(g))
            b[g] = -static_cast<std::ptrdiff_t>(d);
    for (const auto& [g, d] : dim_qi)
        if (!c.count(g))
            c[g] = -static_cast<std::ptrdiff_t>(d);

    return {bottom_of(a, "Q^2 I"), bottom_of(b, "QI / Q^2 I"), bottom_of(c, "I / QI")};
}

// ---------------------------------------------------------------- correction terms

namespace {

std::int64_t as_integer(const Rational& r, const char* name)
{
    if (r.denominator() != 1)
        throw PreconditionError(std::string(name) + " = " + to_string(r) + " is not an integer");
    return r.numerator();
}

int parity(std::int64_t x) { return static_cast<int>(((x % 2) + 2) % 2); }

} // namespace

CorrectionTerms correction_terms(const Rational& a, const Rational& b, const Rational& c)
{
    const auto ai = as_integer(a, "a");
    const auto bi = as_integer(b, "b");
    const auto ci = as_integer(c, "c");
    if (parity(ai) != 0 || parity(bi) != 1 || parity(ci) != 0)
        throw PreconditionError("parity mismatch: need a even, b odd, c even; got (" +
                                std::to_string(ai) + "," + std::to_string(bi) + "," +
                                std::to_string(ci) + ")");
    CorrectionTerms t{Rational(ai, 2), Rational(bi - 1, 2), Rational(ci - 2, 2)};
    if (!(t.alpha >= t.beta && t.beta >= t.gamma))
        throw PreconditionError("ordering violated: alpha = " + to_string(t.alpha) +
                                ", beta = " + to_string(t.beta) + ", gamma = " +
                                to_string(t.gamma));
    return t;
}

CorrectionTerms duality_terms(const CorrectionTerms& t) { return {-t.gamma, -t.beta, -t.alpha}; }

bool rokhlin_lift_check(const CorrectionTerms& t, int rokhlin_bit)
{
    if (rokhlin_bit != 0 && rokhlin_bit != 1)
        throw PreconditionError("Rokhlin bit must be 0 or 1");
    for (const Rational* x : {&t.alpha, &t.beta, &t.gamma})
        if (x->denominator() != 1 || parity(x->numerator()) != rokhlin_bit)
            return false;
    return true;
}

OrderTwoVerdict order_two_argument(std::int64_t beta_y, std::int64_t beta_neg_y)
{
    if (beta_neg_y != -beta_y)
        throw PreconditionError("beta(-Y) = " + std::to_string(beta_neg_y) +
                                " is not -beta(Y) = " + std::to_string(-beta_y));
    OrderTwoVerdict v;
    if (beta_y != beta_neg_y) {
        v.message = "beta(Y) = " + std::to_string(beta_y) + " but beta(-Y) = " +
                    std::to_string(beta_neg_y) + "; a class of order two would force equality";
        return v;
    }
    v.consistent = true;
    v.rokhlin = parity(beta_y);
    v.message = "beta(Y) = -beta(Y) forces beta(Y) = 0, so the Rokhlin invariant is " +
                std::to_string(*v.rokhlin);
    return v;
}

bool check_pin2_inequalities(const CorrectionTerms& t0, const CorrectionTerms& t1,
                             std::int64_t b2)
{
    if (b2 < 0 || b2 % 8 != 0)
        throw PreconditionError("b2 = " + std::to_string(b2) + " is not a nonnegative multiple of 8");
    const Rational shift(b2, 8);
    return t1.alpha >= t0.alpha + shift && t1.beta >= t0.beta + shift &&
           t1.gamma >= t0.gamma + shift;
}

} // namespace floer
