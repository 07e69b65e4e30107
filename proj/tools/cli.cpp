#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <openssl/evp.h>

#include "floer/boundary_flow.hpp"
#include "floer/cobordism.hpp"
#include "floer/errors.hpp"
#include "floer/finite_models.hpp"
#include "floer/io.hpp"
#include "floer/module_structure.hpp"
#include "floer/morse_bott.hpp"
#include "floer/spectral_flow.hpp"

namespace floer::cli {

std::string sha256_hex(const std::string& bytes)
{
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256 digest failed");
    std::ostringstream out;
    out << std::hex << std::setfill('0');
    for (unsigned int k = 0; k < length; ++k)
        out << std::setw(2) << static_cast<int>(digest[k]);
    return out.str();
}

namespace {

/// Unreadable input file; reported with exit code 2.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kInputError = 2;

std::string read_input(const std::string& path, std::istream& in)
{
    if (path == "-")
        return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    std::ifstream file(path, std::ios::binary);
    if (!file)
        throw InputError("cannot read '" + path + "'");
    return {std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>()};
}

/// Left-aligned text table with two spaces between columns.
class Table {
public:
    explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}

    void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

    void print(std::ostream& out) const
    {
        std::vector<std::size_t> width(header_.size(), 0);
        auto measure = [&width](const std::vector<std::string>& row) {
            for (std::size_t k = 0; k < row.size(); ++k)
                width[k] = std::max(width[k], row[k].size());
        };
        measure(header_);
        for (const auto& row : rows_)
            measure(row);
        auto line = [&](const std::vector<std::string>& row) {
            std::string text;
            for (std::size_t k = 0; k < row.size(); ++k) {
                text += row[k];
                if (k + 1 < row.size())
                    text += std::string(width[k] - row[k].size() + 2, ' ');
            }
            out << "  " << text << '\n';
        };
        line(header_);
        for (const auto& row : rows_)
            line(row);
    }

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

std::string str(const Rational& r) { return floer::to_string(r); }

std::string format_double(double x)
{
    std::ostringstream s;
    s << std::setprecision(6) << x;
    return s.str();
}

Table dims_table(const GradedDims& dims)
{
    Table t({"grading", "dim"});
    for (const auto& [g, d] : dims)
        if (d)
            t.add({str(g), std::to_string(d)});
    return t;
}

void print_failures(std::ostream& out, const std::vector<std::string>& failures)
{
    if (failures.empty())
        return;
    out << "failures:\n";
    for (const auto& f : failures)
        out << "  - " << f << '\n';
}

int verdict(std::ostream& out, bool pass)
{
    out << "verdict: " << (pass ? "pass" : "fail") << '\n';
    return pass ? kPass : kFail;
}

struct Options {
    std::string file;
    std::string flavor = "to";
    bool json = false;
    std::optional<std::int64_t> box;
    double tol = 1e-9;
    std::optional<std::int64_t> modulus;
    bool loop = false;
    std::optional<int> rokhlin;
    std::vector<double> eigs;
    std::size_t levels = 1;
    std::size_t dim = 2;
    std::int64_t offset = 0;
    bool mirrored = false;
    bool rmodule = false;
    std::string c1_sq = "0";
    std::int64_t chi = 0, sigma = 0, b1_in = 0, b1_out = 0, gr_z = 0;
    std::string differential_degree = "-1";
};

/// Header lines shared by every report.
struct Context {
    std::string command;
    std::istream& in;
    std::ostream& out;

    Json load(const std::string& path)
    {
        const std::string text = read_input(path, in);
        out << "command: " << command << '\n';
        out << "input: " << (path == "-" ? "<stdin>" : path) << " sha256 " << sha256_hex(text)
            << '\n';
        return parse_json(text);
    }

    void no_input()
    {
        out << "command: " << command << '\n';
        out << "input: none\n";
    }
};

// ---------------------------------------------------------------- commands

int run_validate(Context& ctx, const Options& o)
{
    const Json j = ctx.load(o.file);
    if (j.is_object() && j.contains("generators")) {
        const ComplexFile f = complex_from_json(j);
        Report r = validate(f.complex);
        if (f.involution) {
            try {
                invariant_subcomplex(f.complex, *f.involution);
            } catch (const PreconditionError& e) {
                r.fail(std::string("involution: ") + e.what());
            }
        }
        ctx.out << "kind: complex\n";
        ctx.out << "generators: " << f.complex.size() << '\n';
        ctx.out << "chain groups:\n";
        dims_table(f.complex.chain_dims()).print(ctx.out);
        print_failures(ctx.out, r.failures);
        return verdict(ctx.out, r.passed());
    }
    const BoundaryFlowData d = flow_from_json(j);
    std::size_t counts[3] = {0, 0, 0};
    for (const auto& p : d.points)
        ++counts[static_cast<int>(p.kind)];
    ctx.out << "kind: flow data\n";
    ctx.out << "name: " << d.name << '\n';
    ctx.out << "points: " << counts[0] << " interior, " << counts[1] << " stable, " << counts[2]
            << " unstable\n";
    ctx.out << "grading: " << d.scheme.describe() << '\n';
    ctx.out << "u-cap: " << (d.u_cap ? "present" : "absent") << '\n';
    const Report r = validate_flow(d);
    print_failures(ctx.out, r.failures);
    return verdict(ctx.out, r.passed());
}

int run_homology(Context& ctx, const Options& o)
{
    const Flavor flavor = flavor_from_name(o.flavor);
    const BoundaryFlowData d = flow_from_json(ctx.load(o.file));
    const GradedComplex c = assemble(d, flavor);
    const HomologyResult h = homology(c);
    ctx.out << "flavor: " << flavor_name(flavor) << '\n';
    const GradedDims chain = c.chain_dims();
    const GradedDims hom = h.dims();
    Table t({"grading", "chain", "homology"});
    for (const auto& [g, n] : chain) {
        auto it = hom.find(g);
        t.add({str(g), std::to_string(n), std::to_string(it == hom.end() ? 0 : it->second)});
    }
    t.print(ctx.out);
    ctx.out << "H = " << describe(hom) << '\n';
    ctx.out << "total: " << h.total_dim() << '\n';
    return kPass;
}

void rank_rows(Table& t, const std::string& name, const GradedLinearMap& f)
{
    for (const auto& [g, n] : f.source)
        if (n)
            t.add({name, str(g), str(g + f.degree), std::to_string(f.rank_at(g))});
}

int run_triangle(Context& ctx, const Options& o)
{
    const BoundaryFlowData d = flow_from_json(ctx.load(o.file));
    const Triangle tri = triangle_maps(d);
    ctx.out << "homology:\n";
    Table h({"flavor", "H"});
    h.add({"to", describe(tri.h_to.dims())});
    h.add({"from", describe(tri.h_from.dims())});
    h.add({"bar", describe(tri.h_bar.dims())});
    h.print(ctx.out);
    ctx.out << "maps:\n";
    Table m({"map", "source", "target", "rank"});
    rank_rows(m, "i*", tri.i_star);
    rank_rows(m, "j*", tri.j_star);
    rank_rows(m, "p*", tri.p_star);
    m.print(ctx.out);
    ctx.out << "exactness:\n";
    Table e({"term", "status"});
    const char* terms[3] = {"to", "from", "bar"};
    std::vector<std::string> failures;
    for (std::size_t k = 0; k < 3; ++k) {
        e.add({terms[k], tri.exactness[k].exact ? "exact" : "not exact"});
        for (const auto& f : tri.exactness[k].failures)
            failures.push_back(std::string(terms[k]) + ": " + f);
    }
    e.print(ctx.out);
    print_failures(ctx.out, failures);
    return verdict(ctx.out, tri.exact());
}

int run_dual(Context& ctx, const Options& o)
{
    const std::string text = read_input(o.file, ctx.in);
    const BoundaryFlowData d = flow_from_json(parse_json(text));
    const BoundaryFlowData dual = dualize_flow(d);
    if (o.json) {
        ctx.out << flow_to_json(dual).dump(2) << '\n';
        return kPass;
    }
    ctx.out << "command: " << ctx.command << '\n';
    ctx.out << "input: " << (o.file == "-" ? "<stdin>" : o.file) << " sha256 " << sha256_hex(text)
            << '\n';
    const GradedDims to = homology(assemble_to(d)).dims();
    const GradedDims from = homology(assemble_from(d)).dims();
    const GradedDims dual_to = homology(assemble_to(dual)).dims();
    const GradedDims dual_from = homology(assemble_from(dual)).dims();
    auto reflect = [&d](const GradedDims& dims) {
        GradedDims out;
        for (const auto& [g, n] : dims)
            out[Rational(-1 - d.b1) - g] = n;
        return out;
    };
    Table t({"complex", "H"});
    t.add({"to", describe(to)});
    t.add({"from", describe(from)});
    t.add({"dual to", describe(dual_to)});
    t.add({"dual from", describe(dual_from)});
    t.print(ctx.out);
    Report r;
    if (dual_to != reflect(from))
        r.fail("dual to-homology is not the reflected from-homology");
    if (dual_from != reflect(to))
        r.fail("dual from-homology is not the reflected to-homology");
    print_failures(ctx.out, r.failures);
    return verdict(ctx.out, r.passed());
}

UModule load_umodule(Context& ctx, const std::string& path)
{
    const Json j = ctx.load(path);
    if (j.is_object() && j.contains("points"))
        return build_umodule(flow_from_json(j));
    return umodule_from_json(j);
}

int run_froyshov(Context& ctx, const Options& o)
{
    const UModule m = load_umodule(ctx, o.file);
    Report r = check_umodule(m);
    r.merge(verify_u_tower(m), "tower: ");
    print_failures(ctx.out, r.failures);
    if (!r.passed())
        return verdict(ctx.out, false);
    ctx.out << "h = " << str(froyshov(m)) << '\n';
    return verdict(ctx.out, true);
}

int run_umodule(Context& ctx, const Options& o)
{
    if (o.json) {
        const std::string text = read_input(o.file, ctx.in);
        ctx.out << umodule_to_json(build_umodule(flow_from_json(parse_json(text)))).dump(2)
                << '\n';
        return kPass;
    }
    const UModule m = load_umodule(ctx, o.file);
    Table t({"grading", "dim", "rank U", "marked"});
    for (const auto& [g, n] : m.dims) {
        if (!n)
            continue;
        auto it = m.i_image.find(g);
        const std::size_t marked = it == m.i_image.end() ? 0 : rank(BitMatrix::from_columns(n, it->second));
        t.add({str(g), std::to_string(n), std::to_string(rank(m.u_block(g))),
               std::to_string(marked)});
    }
    t.print(ctx.out);
    if (m.window_top)
        ctx.out << "window top: " << str(*m.window_top) << '\n';
    Report r = check_umodule(m);
    r.merge(verify_u_tower(m), "tower: ");
    print_failures(ctx.out, r.failures);
    return verdict(ctx.out, r.passed());
}

int run_rho(Context& ctx, const Options& o)
{
    const QuadraticForm q = form_from_json(ctx.load(o.file));
    const RhoResult r = rho(q, o.box);
    ctx.out << "rank = " << q.rank() << '\n';
    ctx.out << "min |Q(c)| = " << r.min_norm << '\n';
    ctx.out << "witness = (";
    for (std::size_t k = 0; k < r.witness.size(); ++k)
        ctx.out << (k ? ", " : "") << r.witness[k];
    ctx.out << ")\n";
    ctx.out << "box = " << r.box << '\n';
    ctx.out << "rho = " << str(r.rho) << '\n';
    return kPass;
}

int run_correction_terms(Context& ctx, const Options& o)
{
    const RModule m = rmodule_from_json(ctx.load(o.file));
    const Report check = check_rmodule(m);
    print_failures(ctx.out, check.failures);
    if (!check.passed())
        return verdict(ctx.out, false);
    const TowerBottoms b = r_tower_decompose(m);
    ctx.out << "tower bottoms: a = " << str(b.a) << ", b = " << str(b.b) << ", c = " << str(b.c)
            << '\n';
    const CorrectionTerms t = correction_terms(b.a, b.b, b.c);
    ctx.out << "alpha = " << str(t.alpha) << '\n';
    ctx.out << "beta = " << str(t.beta) << '\n';
    ctx.out << "gamma = " << str(t.gamma) << '\n';
    const CorrectionTerms dual = duality_terms(t);
    ctx.out << "reversed orientation: (" << str(dual.alpha) << ", " << str(dual.beta) << ", "
            << str(dual.gamma) << ")\n";
    bool pass = true;
    if (o.rokhlin) {
        const bool lift = rokhlin_lift_check(t, *o.rokhlin);
        ctx.out << "rokhlin lift (" << *o.rokhlin << "): " << (lift ? "consistent" : "inconsistent")
                << '\n';
        pass = lift;
    }
    return verdict(ctx.out, pass);
}

int run_spectral_flow(Context& ctx, const Options& o)
{
    const HermitianPath p = path_from_json(ctx.load(o.file));
    const SpectralFlowResult r = o.loop ? loop_flow_check(p, o.tol) : spectral_flow(p, o.tol);
    ctx.out << "samples: " << p.t.size() << ", size " << p.samples.front().rows() << '\n';
    if (!r.crossings.empty()) {
        Table t({"t", "direction"});
        for (const auto& c : r.crossings)
            t.add({format_double(c.t), c.direction > 0 ? "+1" : "-1"});
        t.print(ctx.out);
    }
    ctx.out << "flow = " << r.flow << '\n';
    if (o.modulus)
        ctx.out << "flow mod " << *o.modulus << " = " << relative_grading_mod_d(r.flow, *o.modulus)
                << '\n';
    return kPass;
}

TopologyNumbers topology(const Options& o)
{
    Rational c1;
    try {
        c1 = parse_rational(o.c1_sq);
    } catch (const std::invalid_argument& e) {
        throw PreconditionError(std::string("--c1sq: ") + e.what());
    }
    return {c1, o.chi, o.sigma, o.b1_in, o.b1_out};
}

int run_grading(Context& ctx, const std::string& which, const Options& o)
{
    const TopologyNumbers t = topology(o);
    ctx.no_input();
    if (which == "iota")
        ctx.out << "iota = " << iota(t) << '\n';
    else if (which == "degree")
        ctx.out << "degree = " << str(cobordism_map_degree(t)) << '\n';
    else if (which == "absolute")
        ctx.out << "absolute grading = " << str(absolute_grading(o.gr_z, t)) << '\n';
    else
        ctx.out << "closed dimension = " << str(closed_dimension(t.c1_sq, t.chi, t.sigma)) << '\n';
    return kPass;
}

int run_bott(Context& ctx, const std::string& which, const Options& o)
{
    if (which == "gysin") {
        const ComplexFile f = complex_from_json(ctx.load(o.file));
        if (!f.involution)
            throw PreconditionError("gysin needs an \"involution\" entry");
        const GysinReport g = gysin_check(f.complex, *f.involution);
        Table h({"space", "H"});
        h.add({"total", describe(g.h_total.dims())});
        h.add({"invariant", describe(g.h_invariant.dims())});
        h.print(ctx.out);
        ctx.out << "maps:\n";
        Table m({"map", "source", "target", "rank"});
        rank_rows(m, "inclusion", g.inclusion);
        rank_rows(m, "transfer", g.transfer);
        rank_rows(m, "Q", g.q);
        m.print(ctx.out);
        print_failures(ctx.out, g.failures);
        return verdict(ctx.out, g.exact);
    }
    const std::vector<BottLevel> levels = levels_from_json(ctx.load(o.file));
    if (which == "e1") {
        const E1Page page = e1_page(levels);
        dims_table(page).print(ctx.out);
        ctx.out << "E1 = " << describe(page) << '\n';
        return kPass;
    }
    Rational degree;
    try {
        degree = parse_rational(o.differential_degree);
    } catch (const std::invalid_argument& e) {
        throw PreconditionError(std::string("--degree: ") + e.what());
    }
    const CollapseResult c = lacunary_collapse(levels, degree);
    ctx.out << "collapsed: " << (c.collapsed ? "yes" : "no") << '\n';
    if (c.collapsed) {
        dims_table(c.homology).print(ctx.out);
        ctx.out << "H = " << describe(c.homology) << '\n';
    } else {
        ctx.out << "refusal: " << c.refusal << '\n';
    }
    return verdict(ctx.out, c.collapsed);
}

int run_model(std::ostream& out, const std::string& which, const Options& o)
{
    OrderedJson j;
    if (which == "interval")
        j = flow_to_json(gen_interval());
    else if (which == "hemisphere")
        j = flow_to_json(gen_hemisphere());
    else if (which == "disk4")
        j = flow_to_json(gen_disk4());
    else if (which == "hermitian")
        j = flow_to_json(gen_blowup_model({o.eigs}, o.offset));
    else if (which == "s3")
        j = flow_to_json(gen_s3_tower(o.levels, o.levels));
    else if (which == "pin2-s3")
        j = o.rmodule ? rmodule_to_json(pin2_s3_rmodule(o.levels))
                      : levels_to_json(gen_pin2_s3(o.levels, o.mirrored));
    else if (which == "antipodal") {
        const Involution inv = antipodal_involution(o.dim);
        j = complex_to_json(antipodal_sphere(o.dim), &inv);
    }
    out << j.dump(2) << '\n';
    return kPass;
}

std::string echo(const std::vector<std::string>& args)
{
    std::string s = "floer";
    for (const auto& a : args)
        s += " " + a;
    return s;
}

} // namespace

int dispatch(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
             std::ostream& err)
{
    CLI::App app{"Finite-dimensional Floer models over F_2", "floer"};
    app.require_subcommand(1);
    Options o;

    auto file_command = [&](const std::string& name, const std::string& help) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("file", o.file, "input JSON, '-' for stdin")->required();
        return sub;
    };

    auto* validate_cmd = file_command("validate", "check flow data or a complex");
    auto* homology_cmd = file_command("homology", "homology of one flavor");
    homology_cmd->add_option("--flavor", o.flavor, "to, from or bar")
        ->check(CLI::IsMember({"to", "from", "bar"}));
    auto* triangle_cmd = file_command("triangle", "maps and exactness of the triangle");
    auto* dual_cmd = file_command("dual", "compare homology with the reversed flow");
    dual_cmd->add_flag("--json", o.json, "emit the reversed flow data instead");
    auto* froyshov_cmd = file_command("froyshov", "Froyshov invariant of the U-tower");
    auto* umodule_cmd = file_command("umodule", "assemble the U-action and the image of i");
    umodule_cmd->add_flag("--json", o.json, "emit the module as JSON");
    auto* rho_cmd = file_command("rho", "characteristic-vector bound of a definite form");
    rho_cmd->add_option("--box", o.box, "coordinate box half-width")->check(CLI::NonNegativeNumber);
    auto* correction_cmd = file_command("correction-terms", "alpha, beta, gamma of an R-module");
    correction_cmd->add_option("--rokhlin", o.rokhlin, "check the lift of this Rokhlin bit")
        ->check(CLI::Range(0, 1));
    auto* spectral_cmd = file_command("spectral-flow", "spectral flow of a sampled path");
    spectral_cmd->add_option("--tol", o.tol, "zero tolerance at the endpoints")
        ->check(CLI::PositiveNumber);
    spectral_cmd->add_option("--mod", o.modulus, "also reduce the flow mod this even number");
    spectral_cmd->add_flag("--loop", o.loop, "require a closed path with zero flow");

    auto* model_cmd = app.add_subcommand("model", "emit model data as JSON");
    model_cmd->require_subcommand(1);
    std::vector<std::pair<std::string, CLI::App*>> models;
    for (const char* name : {"interval", "hemisphere", "disk4"})
        models.emplace_back(name, model_cmd->add_subcommand(name, std::string(name) + " flow data"));
    auto* hermitian = model_cmd->add_subcommand("hermitian", "diagonal Hermitian blow-up model");
    hermitian->add_option("--eigs", o.eigs, "comma-separated eigenvalues")
        ->required()
        ->delimiter(',');
    hermitian->add_option("--offset", o.offset, "grading offset");
    models.emplace_back("hermitian", hermitian);
    auto* s3 = model_cmd->add_subcommand("s3", "truncated tower with N stable and N unstable points");
    s3->add_option("--levels", o.levels, "N")->required()->check(CLI::PositiveNumber);
    models.emplace_back("s3", s3);
    auto* pin2 = model_cmd->add_subcommand("pin2-s3", "Pin(2) tower levels");
    pin2->add_option("--levels", o.levels, "number of levels")->required()->check(
        CLI::PositiveNumber);
    pin2->add_flag("--mirrored", o.mirrored, "add the negative levels");
    pin2->add_flag("--rmodule", o.rmodule, "emit the R-module instead of the levels");
    models.emplace_back("pin2-s3", pin2);
    auto* antipodal = model_cmd->add_subcommand("antipodal", "sphere with the antipodal map");
    antipodal->add_option("--dim", o.dim, "sphere dimension");
    models.emplace_back("antipodal", antipodal);

    auto* grading_cmd = app.add_subcommand("grading", "grading formulas");
    grading_cmd->require_subcommand(1);
    std::vector<std::pair<std::string, CLI::App*>> gradings;
    for (const char* name : {"iota", "absolute", "degree", "closed"}) {
        auto* sub = grading_cmd->add_subcommand(name);
        sub->add_option("--chi", o.chi, "Euler characteristic");
        sub->add_option("--sigma", o.sigma, "signature");
        if (std::string(name) != "iota")
            sub->add_option("--c1sq", o.c1_sq, "c1^2 as an integer or p/q");
        if (std::string(name) != "closed") {
            sub->add_option("--b1-in", o.b1_in, "b1 of the incoming end");
            sub->add_option("--b1-out", o.b1_out, "b1 of the outgoing end");
        }
        if (std::string(name) == "absolute")
            sub->add_option("--grz", o.gr_z, "relative grading of the generator")->required();
        gradings.emplace_back(name, sub);
    }
    gradings[0].second->description("(chi + sigma + b1_in - b1_out)/2");
    gradings[1].second->description("absolute grading of a generator");
    gradings[2].second->description("degree of the cobordism map");
    gradings[3].second->description("expected dimension of a closed manifold");

    auto* bott_cmd = app.add_subcommand("bott", "Morse-Bott spectral sequence tools");
    bott_cmd->require_subcommand(1);
    std::vector<std::pair<std::string, CLI::App*>> botts;
    for (const char* name : {"e1", "collapse", "gysin"}) {
        auto* sub = bott_cmd->add_subcommand(name);
        sub->add_option("file", o.file, "input JSON, '-' for stdin")->required();
        botts.emplace_back(name, sub);
    }
    botts[0].second->description("E1 page of the levels");
    botts[1].second->description("lacunary collapse test");
    botts[1].second->add_option("--degree", o.differential_degree, "differential degree");
    botts[2].second->description("Gysin sequence of a free involution");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kPass : kInputError;
    }

    std::ostringstream buffer;
    Context buffered{echo(args), in, buffer};
    int code = kPass;
    try {
        if (model_cmd->parsed()) {
            for (const auto& [name, sub] : models)
                if (sub->parsed())
                    code = run_model(buffer, name, o);
        } else if (grading_cmd->parsed()) {
            for (const auto& [name, sub] : gradings)
                if (sub->parsed())
                    code = run_grading(buffered, name, o);
        } else if (bott_cmd->parsed()) {
            for (const auto& [name, sub] : botts)
                if (sub->parsed())
                    code = run_bott(buffered, name, o);
        } else if (validate_cmd->parsed()) {
            code = run_validate(buffered, o);
        } else if (homology_cmd->parsed()) {
            code = run_homology(buffered, o);
        } else if (triangle_cmd->parsed()) {
            code = run_triangle(buffered, o);
        } else if (dual_cmd->parsed()) {
            code = run_dual(buffered, o);
        } else if (froyshov_cmd->parsed()) {
            code = run_froyshov(buffered, o);
        } else if (umodule_cmd->parsed()) {
            code = run_umodule(buffered, o);
        } else if (rho_cmd->parsed()) {
            code = run_rho(buffered, o);
        } else if (correction_cmd->parsed()) {
            code = run_correction_terms(buffered, o);
        } else if (spectral_cmd->parsed()) {
            code = run_spectral_flow(buffered, o);
        }
    } catch (const VerificationError& e) {
        out << buffer.str();
        err << "verification failed (" << e.identity << "): " << e.what() << '\n';
        return kFail;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const SchemaError& e) {
        err << "error: schema: " << e.what() << '\n';
        return kInputError;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
    out << buffer.str();
    return code;
}

} // namespace floer::cli
