#include "floer/spectral_flow.hpp"

#include <algorithm>
#include <cmath>

#include "floer/errors.hpp"

namespace floer {

namespace {

constexpr double kSymmetryTol = 1e-12;
constexpr std::size_t kEvaluationBudget = 200000;

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

struct State {
    std::int64_t negative = 0;
    double min_abs = 0.0;
};

class Walker {
public:
    Walker(const HermitianPath& path, double tol) : path_(path), tol_(tol)
    {
        for (std::size_t k = 0; k + 1 < path.samples.size(); ++k) {
            const Eigen::MatrixXcd diff = path.samples[k + 1] - path.samples[k];
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(diff, Eigen::EigenvaluesOnly);
            const double norm = es.eigenvalues().cwiseAbs().maxCoeff();
            slope_.push_back(norm / (path.t[k + 1] - path.t[k]));
        }
    }

    State eval(double t)
    {
        if (++evaluations_ > kEvaluationBudget)
            throw VerificationError("crossing could not be resolved within the refinement budget",
                                    "crossing resolution");
        const auto& ts = path_.t;
        std::size_t k = static_cast<std::size_t>(
            std::upper_bound(ts.begin(), ts.end(), t) - ts.begin());
        k = std::clamp<std::size_t>(k, 1, ts.size() - 1) - 1;
        const double s = (t - ts[k]) / (ts[k + 1] - ts[k]);
        const Eigen::MatrixXcd a = (1.0 - s) * path_.samples[k] + s * path_.samples[k + 1];
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a, Eigen::EigenvaluesOnly);
        State st;
        st.min_abs = es.eigenvalues().cwiseAbs().minCoeff();
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
            st.negative += es.eigenvalues()(i) < 0.0;
        return st;
    }

    /// Largest eigenvalue speed on [a, b].
    double slope(double a, double b) const
    {
        const auto& ts = path_.t;
        double best = 0.0;
        for (std::size_t k = 0; k + 1 < ts.size(); ++k)
            if (ts[k + 1] > a && ts[k] < b)
                best = std::max(best, slope_[k]);
        return best;
    }

    void refine(double a, State sa, double b, State sb, SpectralFlowResult& out)
    {
        const double width = b - a;
        if (slope(a, b) * width < std::max(sa.min_abs, sb.min_abs))
            return;
        const double span = path_.t.back() - path_.t.front();
        if (width < 1e-12 * span) {
            const std::int64_t delta = sa.negative - sb.negative;
            const int direction = delta > 0 ? 1 : -1;
            double at = 0.5 * (a + b);
            if (std::abs(at) < 1e-12 * span)
                at = 0.0;
            for (std::int64_t k = 0; k < std::abs(delta); ++k) {
                out.crossings.push_back({at, direction});
                out.flow += direction;
            }
            return;
        }
        double m = 0.5 * (a + b);
        State sm = eval(m);
        if (sm.min_abs < tol_) {
            m += 0.25 * width;
            sm = eval(m);
        }
        refine(a, sa, m, sm, out);
        refine(m, sm, b, sb, out);
    }

    double tol() const { return tol_; }

private:
    const HermitianPath& path_;
    double tol_;
    std::vector<double> slope_;
    std::size_t evaluations_ = 0;
};

} // namespace

void HermitianPath::check() const
{
    if (t.size() != samples.size())
        throw PreconditionError("path has " + std::to_string(t.size()) + " parameters and " +
                                std::to_string(samples.size()) + " samples");
    if (samples.size() < 2)
        throw PreconditionError("path needs at least two samples");
    const auto n = samples.front().rows();
    if (n == 0)
        throw PreconditionError("samples must be nonempty matrices");
    for (std::size_t k = 0; k < samples.size(); ++k) {
        const auto& a = samples[k];
        if (a.rows() != n || a.cols() != n)
            throw PreconditionError("sample " + std::to_string(k) + " is not " +
                                        std::to_string(n) + "x" + std::to_string(n),
                                    k);
        if (max_abs(a - a.adjoint()) > kSymmetryTol * std::max(1.0, max_abs(a)))
            throw PreconditionError("sample " + std::to_string(k) + " is not Hermitian", k);
        if (k > 0 && !(t[k] > t[k - 1]))
            throw PreconditionError("parameters must increase strictly", k);
    }
}

SpectralFlowResult spectral_flow(const HermitianPath& path, double tol)
{
    path.check();
    Walker walker(path, tol);
    const State first = walker.eval(path.t.front());
    const State last = walker.eval(path.t.back());
    if (first.min_abs < tol)
        throw PreconditionError("starting operator has an eigenvalue within tolerance of zero", 0);
    if (last.min_abs < tol)
        throw PreconditionError("final operator has an eigenvalue within tolerance of zero",
                                path.t.size() - 1);

    // Interior knots sitting on a crossing are moved half a sub-step forward.
    std::vector<std::pair<double, State>> nodes = {{path.t.front(), first}};
    for (std::size_t k = 1; k + 1 < path.t.size(); ++k) {
        double t = path.t[k];
        State s = walker.eval(t);
        if (s.min_abs < tol) {
            t += 0.5 * (path.t[k + 1] - path.t[k]) / 16.0;
            s = walker.eval(t);
        }
        nodes.emplace_back(t, s);
    }
    nodes.emplace_back(path.t.back(), last);

    SpectralFlowResult out;
    for (std::size_t k = 0; k + 1 < nodes.size(); ++k)
        walker.refine(nodes[k].first, nodes[k].second, nodes[k + 1].first, nodes[k + 1].second,
                      out);
    if (out.flow != first.negative - last.negative)
        throw VerificationError("crossing count disagrees with the endpoint eigenvalue counts",
                                "crossing resolution");
    return out;
}

std::int64_t relative_grading_mod_d(std::int64_t flow, std::int64_t d)
{
    if (d < 0 || d % 2 != 0)
        throw PreconditionError("modulus " + std::to_string(d) + " must be even and nonnegative");
    if (d == 0)
        return flow;
    return ((flow % d) + d) % d;
}

SpectralFlowResult loop_flow_check(const HermitianPath& path, double tol)
{
    path.check();
    if (max_abs(path.samples.front() - path.samples.back()) > kSymmetryTol)
        throw PreconditionError("path is not closed");
    SpectralFlowResult r = spectral_flow(path, tol);
    if (r.flow != 0)
        throw VerificationError("closed path has spectral flow " + std::to_string(r.flow),
                                "loop flow vanishes");
    return r;
}

HermitianPath concatenate(const HermitianPath& p1, const HermitianPath& p2)
{
    p1.check();
    p2.check();
    if (max_abs(p1.samples.back() - p2.samples.front()) > kSymmetryTol)
        throw PreconditionError("paths do not meet");
    HermitianPath out = p1;
    const double shift = p1.t.back() - p2.t.front();
    for (std::size_t k = 1; k < p2.samples.size(); ++k) {
        out.t.push_back(p2.t[k] + shift);
        out.samples.push_back(p2.samples[k]);
    }
    return out;
}

HermitianPath reverse(const HermitianPath& p)
{
    HermitianPath out;
    const double sum = p.t.front() + p.t.back();
    for (std::size_t k = p.t.size(); k-- > 0;) {
        out.t.push_back(sum - p.t[k]);
        out.samples.push_back(p.samples[k]);
    }
    return out;
}

} // namespace floer
