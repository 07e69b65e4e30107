#include "floer/finite_models.hpp"

#include <algorithm>
#include <cmath>

#include "floer/errors.hpp"

namespace floer {

void HermitianModelSpec::check() const
{
    if (eigenvalues.empty())
        throw PreconditionError("model needs at least one eigenvalue");
    for (std::size_t k = 0; k < eigenvalues.size(); ++k)
        if (eigenvalues[k] == 0.0 || !std::isfinite(eigenvalues[k]))
            throw PreconditionError("eigenvalue " + std::to_string(k) + " is zero or not finite", k);
    const auto s = sorted();
    for (std::size_t k = 1; k < s.size(); ++k)
        if (s[k] == s[k - 1])
            throw PreconditionError("repeated eigenvalue " + std::to_string(s[k]) +
                                    "; the spectrum must be simple");
}

std::vector<double> HermitianModelSpec::sorted() const
{
    auto s = eigenvalues;
    std::sort(s.begin(), s.end());
    return s;
}

namespace {

std::string id(char kind, std::size_t k) { return kind + std::to_string(k); }

BoundaryFlowData tower(std::size_t n_stable, std::size_t n_unstable, std::int64_t offset)
{
    BoundaryFlowData d;
    for (std::size_t m = n_unstable; m-- > 0;)
        d.points.push_back(
            {id('u', m), PointKind::unstable, Rational(offset - 1 - 2 * static_cast<std::int64_t>(m))});
    for (std::size_t k = 0; k < n_stable; ++k)
        d.points.push_back(
            {id('s', k), PointKind::stable, Rational(offset + 2 * static_cast<std::int64_t>(k))});

    CrossOperators cap;
    cap.degree = -2;
    for (std::size_t k = 1; k < n_stable; ++k)
        cap.bm_ss.emplace(id('s', k), id('s', k - 1));
    if (n_stable > 0 && n_unstable > 0)
        cap.bm_su.emplace(id('s', 0), id('u', 0));
    for (std::size_t m = 0; m + 1 < n_unstable; ++m)
        cap.bm_uu.emplace(id('u', m), id('u', m + 1));
    d.u_cap = std::move(cap);
    return d;
}

} // namespace

BoundaryFlowData gen_blowup_model(const HermitianModelSpec& spec, std::int64_t grading_offset)
{
    spec.check();
    std::size_t positive = 0;
    for (double e : spec.eigenvalues)
        positive += e > 0;
    BoundaryFlowData d = tower(positive, spec.eigenvalues.size() - positive, grading_offset);
    d.name = "hermitian";
    return d;
}

std::int64_t traj_space_dim(const HermitianModelSpec& spec, std::size_t from, std::size_t to)
{
    spec.check();
    const std::size_t n = spec.eigenvalues.size();
    if (from >= n || to >= n)
        throw PreconditionError("eigenvalue index out of range");
    if (from <= to)
        throw PreconditionError("trajectories run from a larger to a smaller eigenvalue; got " +
                                std::to_string(from) + " -> " + std::to_string(to));
    const auto i = static_cast<std::int64_t>(from - to);
    return 2 * i - 1;
}

FlowEndpoint integrate_model_flow(const HermitianModelSpec& spec, std::vector<double> start,
                                  double duration, double step)
{
    const std::size_t n = spec.eigenvalues.size();
    if (n == 0 || n > 4)
        throw PreconditionError("model flow integration supports 1 to 4 dimensions");
    if (start.size() != n)
        throw DimensionError("start has " + std::to_string(start.size()) + " coordinates, model " +
                             std::to_string(n));
    if (!(step > 0.0) || !(duration >= 0.0))
        throw PreconditionError("step must be positive and duration nonnegative");
    const auto& lambda = spec.eigenvalues;

    auto norm = [](const std::vector<double>& v) {
        double s = 0.0;
        for (double x : v)
            s += x * x;
        return std::sqrt(s);
    };
    const double n0 = norm(start);
    if (n0 == 0.0)
        throw PreconditionError("start point is zero");
    for (double& x : start)
        x /= n0;

    auto field = [&](const std::vector<double>& phi) {
        double rayleigh = 0.0;
        for (std::size_t k = 0; k < n; ++k)
            rayleigh += lambda[k] * phi[k] * phi[k];
        std::vector<double> out(n);
        for (std::size_t k = 0; k < n; ++k)
            out[k] = -(lambda[k] * phi[k] - rayleigh * phi[k]);
        return out;
    };
    auto axpy = [n](const std::vector<double>& x, double a, const std::vector<double>& y) {
        std::vector<double> out(n);
        for (std::size_t k = 0; k < n; ++k)
            out[k] = x[k] + a * y[k];
        return out;
    };

    FlowEndpoint result;
    std::vector<double> phi = start;
    const auto steps = static_cast<std::size_t>(std::ceil(duration / step));
    for (std::size_t s = 0; s < steps; ++s) {
        const auto k1 = field(phi);
        const auto k2 = field(axpy(phi, step / 2, k1));
        const auto k3 = field(axpy(phi, step / 2, k2));
        const auto k4 = field(axpy(phi, step, k3));
        for (std::size_t k = 0; k < n; ++k)
            phi[k] += step / 6 * (k1[k] + 2 * k2[k] + 2 * k3[k] + k4[k]);
        const double r = norm(phi);
        const double drift = std::abs(r - 1.0);
        result.max_drift = std::max(result.max_drift, drift);
        if (drift > 1e-6)
            throw VerificationError("integration step " + std::to_string(s) + " drifted " +
                                        std::to_string(drift) + " off the sphere",
                                    "norm drift");
        for (double& x : phi)
            x /= r;
    }
    std::size_t best = 0;
    for (std::size_t k = 1; k < n; ++k)
        if (std::abs(phi[k]) > std::abs(phi[best]))
            best = k;
    result.eigen_index = best;
    result.endpoint = std::move(phi);
    return result;
}

BoundaryFlowData gen_interval()
{
    BoundaryFlowData d;
    d.name = "interval";
    d.points = {{"s", PointKind::stable, 0}, {"u", PointKind::unstable, 1}};
    d.ops.d_us = {{"u", "s"}};
    return d;
}

BoundaryFlowData gen_hemisphere()
{
    BoundaryFlowData d;
    d.name = "hemisphere";
    d.points = {{"s", PointKind::stable, 0}, {"u", PointKind::unstable, 2}};
    return d;
}

BoundaryFlowData gen_disk4()
{
    BoundaryFlowData d;
    d.name = "disk4";
    d.points = {{"a", PointKind::interior, 2},
                {"c", PointKind::interior, 1},
                {"u", PointKind::unstable, 2},
                {"s", PointKind::stable, 0}};
    d.ops.d_oo = {{"a", "c"}};
    d.ops.d_uo = {{"u", "c"}};
    return d;
}

BoundaryFlowData gen_s3_tower(std::size_t n_stable, std::size_t n_unstable)
{
    if (n_stable == 0 || n_unstable == 0)
        throw PreconditionError("tower needs at least one stable and one unstable point");
    BoundaryFlowData d = tower(n_stable, n_unstable, 0);
    d.name = "s3_tower";
    return d;
}

std::vector<BottLevel> gen_pin2_s3(std::size_t levels, bool mirrored)
{
    if (levels == 0)
        throw PreconditionError("need at least one level");
    std::vector<BottLevel> out;
    if (mirrored)
        for (std::size_t k = levels; k-- > 0;)
            out.push_back({-static_cast<std::int64_t>(k) - 1,
                           Rational(-4 * static_cast<std::int64_t>(k) - 3), {1, 1, 1}});
    for (std::size_t k = 0; k < levels; ++k)
        out.push_back({static_cast<std::int64_t>(k), Rational(4 * static_cast<std::int64_t>(k)),
                       {1, 1, 1}});
    return out;
}

std::vector<BottLevel> projective_bott_levels(const std::vector<std::size_t>& multiplicities)
{
    std::vector<BottLevel> out;
    std::int64_t below = 0;
    for (std::size_t k = 0; k < multiplicities.size(); ++k) {
        const std::size_t m = multiplicities[k];
        if (m == 0)
            throw PreconditionError("multiplicity must be positive", k);
        BottLevel level{static_cast<std::int64_t>(k), Rational(2 * below), {}};
        for (std::size_t d = 0; d < 2 * m - 1; ++d)
            level.dims.push_back(d % 2 == 0 ? 1 : 0);
        out.push_back(std::move(level));
        below += static_cast<std::int64_t>(m);
    }
    return out;
}

GradedComplex antipodal_sphere(std::size_t n)
{
    GradedComplex c;
    for (std::size_t k = 0; k <= n; ++k) {
        c.generators.push_back({"e" + std::to_string(k) + "+", static_cast<std::int64_t>(k)});
        c.generators.push_back({"e" + std::to_string(k) + "-", static_cast<std::int64_t>(k)});
    }
    c.differential = BitMatrix(c.size(), c.size());
    for (std::size_t k = 1; k <= n; ++k)
        for (std::size_t side = 0; side < 2; ++side) {
            c.differential.set(2 * (k - 1), 2 * k + side);
            c.differential.set(2 * (k - 1) + 1, 2 * k + side);
        }
    return c;
}

Involution antipodal_involution(std::size_t n)
{
    Involution inv;
    for (std::size_t k = 0; k <= n; ++k) {
        inv.image.push_back(2 * k + 1);
        inv.image.push_back(2 * k);
    }
    return inv;
}

RModule pin2_s3_rmodule(std::size_t levels)
{
    if (levels == 0)
        throw PreconditionError("need at least one level");
    const GysinReport gysin = gysin_check(antipodal_sphere(2), antipodal_involution(2));
    if (!gysin.exact)
        throw VerificationError("Gysin sequence of the antipodal sphere is not exact", "gysin");

    RModule m;
    for (std::size_t k = 0; k < levels; ++k) {
        const std::int64_t base = 4 * static_cast<std::int64_t>(k);
        for (std::int64_t j = 0; j < 3; ++j) {
            const Rational g(base + j);
            m.dims[g] = gysin.h_invariant.dim_at(j);
            m.i_image[g] = {BitVector::unit(m.dims[g], 0)};
            if (j > 0)
                m.q[g] = gysin.q.block(j);
            if (k > 0)
                m.v[g] = BitMatrix::identity(m.dims[g]);
        }
    }
    return m;
}

} // namespace floer
