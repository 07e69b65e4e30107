#include <doctest.h>

#include <cmath>
#include <random>

#include "floer/boundary_flow.hpp"
#include "floer/cobordism.hpp"
#include "floer/errors.hpp"
#include "floer/finite_models.hpp"
#include "floer/morse_bott.hpp"
#include "support.hpp"

using floer::Flavor;
using floer::HermitianModelSpec;
using floer::Rational;

namespace {

floer::GradedDims homology_dims(const floer::BoundaryFlowData& d, Flavor f)
{
    return floer::homology(floer::assemble(d, f)).dims();
}

/// Normalized sum of c_k exp(-lambda_k t) e_k.
std::vector<double> closed_form(const std::vector<double>& lambda, const std::vector<double>& start,
                                double t)
{
    std::vector<double> z(lambda.size());
    double norm = 0.0;
    for (std::size_t k = 0; k < lambda.size(); ++k) {
        z[k] = start[k] * std::exp(-lambda[k] * t);
        norm += z[k] * z[k];
    }
    for (double& x : z)
        x /= std::sqrt(norm);
    return z;
}

} // namespace

TEST_CASE("blow-up model examples")
{
    const auto one = floer::gen_blowup_model({{1.0}});
    REQUIRE(one.points.size() == 1);
    CHECK(one.points[0].kind == floer::PointKind::stable);
    CHECK(homology_dims(one, Flavor::to) == test::dims({{0, 1}}));

    const auto neg = floer::gen_blowup_model({{-1.0}});
    CHECK(homology_dims(neg, Flavor::from) == test::dims({{-1, 1}}));

    const auto four = floer::gen_blowup_model({{-2.0, -1.0, 1.0, 3.0}});
    CHECK(homology_dims(four, Flavor::to) == test::dims({{0, 1}, {2, 1}}));
    CHECK(homology_dims(four, Flavor::from) == test::dims({{-3, 1}, {-1, 1}}));
    CHECK(homology_dims(four, Flavor::bar) == test::dims({{-4, 1}, {-2, 1}, {0, 1}, {2, 1}}));
}

TEST_CASE("blow-up models validate and count positive eigenvalues")
{
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> value(-10.0, 10.0);
    for (int trial = 0; trial < 50; ++trial) {
        HermitianModelSpec spec;
        for (std::size_t k = 0; k < 1 + rng() % 7; ++k)
            spec.eigenvalues.push_back(value(rng));
        const auto d = floer::gen_blowup_model(spec, static_cast<std::int64_t>(rng() % 5) * 2);
        CHECK(floer::validate_flow(d).passed());
        std::size_t positive = 0, stable = 0;
        for (double e : spec.eigenvalues)
            positive += e > 0;
        for (const auto& p : d.points)
            stable += p.kind == floer::PointKind::stable;
        CHECK(stable == positive);
        CHECK(floer::triangle_maps(d).exact());
    }
}

TEST_CASE("blow-up model rejects zero and repeated eigenvalues")
{
    CHECK_THROWS_AS(floer::gen_blowup_model({{1.0, 0.0}}), floer::PreconditionError);
    CHECK_THROWS_AS(floer::gen_blowup_model({{2.0, -1.0, 2.0}}), floer::PreconditionError);
    CHECK_THROWS_AS(floer::gen_blowup_model({{}}), floer::PreconditionError);
}

TEST_CASE("trajectory space dimensions")
{
    const HermitianModelSpec spec{{-2.0, -1.0, 1.0, 3.0}};
    CHECK(floer::traj_space_dim(spec, 1, 0) == 1);
    CHECK(floer::traj_space_dim(spec, 3, 2) == 1);
    CHECK(floer::traj_space_dim(spec, 2, 0) == 3);
    CHECK(floer::traj_space_dim(spec, 3, 0) == 5);
    CHECK_THROWS_AS(floer::traj_space_dim(spec, 1, 1), floer::PreconditionError);
    CHECK_THROWS_AS(floer::traj_space_dim(spec, 0, 2), floer::PreconditionError);
}

TEST_CASE("model flow examples")
{
    const HermitianModelSpec l12{{1.0, 2.0}};
    const auto r = floer::integrate_model_flow(l12, {0.6, 0.8}, 20.0);
    CHECK(r.eigen_index == 0);
    CHECK(std::abs(std::abs(r.endpoint[0]) - 1.0) < 1e-6);
    CHECK(r.max_drift < 1e-6);

    const auto fixed = floer::integrate_model_flow(l12, {0.0, 1.0}, 5.0);
    CHECK(fixed.eigen_index == 1);
    CHECK(std::abs(fixed.endpoint[0]) < 1e-12);

    const auto signed_spec = floer::integrate_model_flow({{-1.0, 1.0}}, {0.3, 0.7}, 20.0);
    CHECK(signed_spec.eigen_index == 0);

    CHECK_THROWS_AS(floer::integrate_model_flow({{1, 2, 3, 4, 5}}, {1, 0, 0, 0, 0}, 1.0),
                    floer::PreconditionError);
    CHECK_THROWS_AS(floer::integrate_model_flow(l12, {0.0, 0.0}, 1.0), floer::PreconditionError);
    CHECK_THROWS_AS(floer::integrate_model_flow(l12, {1.0}, 1.0), floer::DimensionError);
}

TEST_CASE("model flow tracks the closed-form solution")
{
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> value(-3.0, 3.0);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 1 + trial % 3;
        HermitianModelSpec spec;
        std::vector<double> start;
        for (std::size_t k = 0; k < n; ++k) {
            double e = value(rng);
            while (std::abs(e) < 0.5 || std::any_of(spec.eigenvalues.begin(), spec.eigenvalues.end(),
                                                    [e](double x) { return std::abs(x - e) < 0.5; }))
                e = value(rng);
            spec.eigenvalues.push_back(e);
            double c = value(rng);
            while (std::abs(c) < 0.1)
                c = value(rng);
            start.push_back(c);
        }
        const double duration = 2.0;
        const auto r = floer::integrate_model_flow(spec, start, duration, 1e-3);
        const auto exact = closed_form(spec.eigenvalues, start, duration);
        for (std::size_t k = 0; k < n; ++k)
            CHECK(std::abs(r.endpoint[k] - exact[k]) < 1e-8);

        // The limit is the smallest eigenvalue present in the start.
        const auto limit = floer::integrate_model_flow(spec, start, 60.0, 1e-2);
        std::size_t smallest = 0;
        for (std::size_t k = 1; k < n; ++k)
            if (spec.eigenvalues[k] < spec.eigenvalues[smallest])
                smallest = k;
        CHECK(limit.eigen_index == smallest);
    }
}

TEST_CASE("truncated S3 towers")
{
    const auto t33 = floer::gen_s3_tower(3, 3);
    CHECK(floer::validate_flow(t33).passed());
    CHECK(homology_dims(t33, Flavor::to) == test::dims({{0, 1}, {2, 1}, {4, 1}}));
    CHECK(homology_dims(t33, Flavor::from) == test::dims({{-5, 1}, {-3, 1}, {-1, 1}}));

    const auto t11 = floer::gen_s3_tower(1, 1);
    CHECK(homology_dims(t11, Flavor::bar) == test::dims({{-2, 1}, {0, 1}}));
    const auto cap = floer::assemble_cobordism_maps(t11, t11, *t11.u_cap);
    const auto u_bar = floer::induced_map(cap.bar);
    CHECK(u_bar.rank_at(Rational(0)) == 1);
    CHECK(u_bar.block(Rational(0)).rows() == 1);

    CHECK_THROWS_AS(floer::gen_s3_tower(0, 2), floer::PreconditionError);
}

TEST_CASE("U-cap on the truncated bar complex has rank length - 1")
{
    for (std::size_t n = 1; n <= 6; ++n) {
        const auto d = floer::gen_s3_tower(n, n);
        const auto cap = floer::assemble_cobordism_maps(d, d, *d.u_cap);
        const auto u = floer::induced_map(cap.bar);
        CHECK(u.degree == -2);
        CHECK(u.total_rank() == 2 * n - 1);
    }
}

TEST_CASE("Pin(2) levels")
{
    const auto three = floer::gen_pin2_s3(3);
    CHECK(floer::e1_page(three) ==
          test::dims({{0, 1}, {1, 1}, {2, 1}, {4, 1}, {5, 1}, {6, 1}, {8, 1}, {9, 1}, {10, 1}}));
    CHECK(floer::lacunary_collapse(three).collapsed);
    CHECK(floer::e1_page(floer::gen_pin2_s3(1)) == test::dims({{0, 1}, {1, 1}, {2, 1}}));

    const auto mirrored = floer::gen_pin2_s3(2, true);
    CHECK(mirrored.size() == 4);
    CHECK(mirrored.front().offset == -7);
    CHECK_THROWS_AS(floer::gen_pin2_s3(0), floer::PreconditionError);
}

TEST_CASE("antipodal spheres")
{
    for (std::size_t n = 0; n <= 4; ++n) {
        const auto c = floer::antipodal_sphere(n);
        const auto h = floer::homology(c);
        if (n == 0)
            CHECK(h.dims() == test::dims({{0, 2}}));
        else
            CHECK(h.dims() == test::dims({{0, 1}, {static_cast<std::int64_t>(n), 1}}));
        const auto q = floer::invariant_subcomplex(c, floer::antipodal_involution(n));
        floer::GradedDims projective;
        for (std::size_t k = 0; k <= n; ++k)
            projective[Rational(static_cast<std::int64_t>(k))] = 1;
        CHECK(floer::homology(q.complex).dims() == projective);
    }
}
