#include "floer/io.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "floer/errors.hpp"

namespace floer {

namespace {

std::string escape(std::string_view token)
{
    std::string out;
    for (char ch : token) {
        if (ch == '~')
            out += "~0";
        else if (ch == '/')
            out += "~1";
        else
            out += ch;
    }
    return out;
}

/// A JSON value together with its pointer, for schema errors.
class Node {
public:
    Node(const Json& value, std::string pointer) : value_(value), pointer_(std::move(pointer)) {}

    const Json& json() const { return value_; }
    const std::string& pointer() const { return pointer_; }

    [[noreturn]] void fail(const std::string& what) const { throw SchemaError(what, pointer_); }

    void expect_object() const
    {
        if (!value_.is_object())
            fail("expected an object");
    }
    void expect_array() const
    {
        if (!value_.is_array())
            fail("expected an array");
    }

    bool has(std::string_view key) const
    {
        return value_.is_object() && value_.contains(std::string(key));
    }

    Node operator[](std::string_view key) const
    {
        expect_object();
        auto it = value_.find(std::string(key));
        if (it == value_.end())
            throw SchemaError("missing required key '" + std::string(key) + "'", pointer_);
        return {*it, pointer_ + "/" + escape(key)};
    }

    Node operator[](std::size_t index) const
    {
        expect_array();
        if (index >= value_.size())
            fail("array too short");
        return {value_[index], pointer_ + "/" + std::to_string(index)};
    }

    std::size_t size() const
    {
        expect_array();
        return value_.size();
    }

    std::vector<Node> items() const
    {
        std::vector<Node> out;
        for (std::size_t k = 0; k < size(); ++k)
            out.push_back((*this)[k]);
        return out;
    }

    std::vector<std::pair<std::string, Node>> entries() const
    {
        expect_object();
        std::vector<std::pair<std::string, Node>> out;
        for (auto it = value_.begin(); it != value_.end(); ++it)
            out.emplace_back(it.key(), Node(it.value(), pointer_ + "/" + escape(it.key())));
        return out;
    }

    std::string as_string() const
    {
        if (!value_.is_string())
            fail("expected a string");
        return value_.get<std::string>();
    }

    std::int64_t as_int() const
    {
        if (!value_.is_number_integer())
            fail("expected an integer");
        return value_.get<std::int64_t>();
    }

    std::size_t as_size() const
    {
        const auto v = as_int();
        if (v < 0)
            fail("expected a nonnegative integer");
        return static_cast<std::size_t>(v);
    }

    double as_double() const
    {
        if (!value_.is_number())
            fail("expected a number");
        return value_.get<double>();
    }

    bool as_bit() const
    {
        const auto v = as_int();
        if (v != 0 && v != 1)
            fail("expected 0 or 1");
        return v == 1;
    }

    Rational as_rational() const
    {
        if (value_.is_number_integer())
            return Rational(value_.get<std::int64_t>());
        if (value_.is_string()) {
            try {
                return parse_rational(value_.get<std::string>());
            } catch (const std::invalid_argument& e) {
                fail(e.what());
            }
        }
        fail("expected an integer or a \"p/q\" string");
    }

private:
    const Json& value_;
    std::string pointer_;
};

Rational key_rational(const std::string& key, const Node& where)
{
    try {
        return parse_rational(key);
    } catch (const std::invalid_argument& e) {
        where.fail(std::string("key is not a grading: ") + e.what());
    }
}

GradingScheme scheme_from(const Node& n)
{
    n.expect_object();
    const std::string kind = n["kind"].as_string();
    GradingScheme s;
    try {
        if (kind == "Z")
            s = GradingScheme::integers();
        else if (kind == "Q")
            s = GradingScheme::rationals(n.has("denominator") ? n["denominator"].as_int() : 1);
        else if (kind == "modd")
            s = GradingScheme::modular(n["d"].as_int());
        else
            n["kind"].fail("grading kind must be \"Z\", \"Q\" or \"modd\"");
    } catch (const PreconditionError& e) {
        n.fail(e.what());
    }
    return s;
}

OrderedJson scheme_to_json(const GradingScheme& s)
{
    OrderedJson j;
    switch (s.kind) {
    case GradingKind::integer:
        j["kind"] = "Z";
        break;
    case GradingKind::rational:
        j["kind"] = "Q";
        j["denominator"] = s.denominator;
        break;
    case GradingKind::modular:
        j["kind"] = "modd";
        j["d"] = s.modulus;
        break;
    }
    return j;
}

Rational grading_in(const GradingScheme& s, const Node& n)
{
    const Rational g = n.as_rational();
    try {
        s.check_value(g);
        return s.normalize(g);
    } catch (const PreconditionError& e) {
        n.fail(e.what());
    }
}

CountOperator pairs_from(const Node& n, const std::map<std::string, PointKind>& ids)
{
    CountOperator op;
    for (const auto& item : n.items()) {
        if (item.size() != 2)
            item.fail("expected a [source, target] pair");
        const std::string a = item[0].as_string();
        const std::string b = item[1].as_string();
        if (!ids.count(a))
            item[0].fail("unknown point id '" + a + "'");
        if (!ids.count(b))
            item[1].fail("unknown point id '" + b + "'");
        auto key = std::make_pair(a, b);
        // Counts are mod 2: a repeated pair cancels.
        if (!op.erase(key))
            op.insert(key);
    }
    return op;
}

OrderedJson pairs_to_json(const CountOperator& op)
{
    OrderedJson arr = OrderedJson::array();
    for (const auto& [a, b] : op)
        arr.push_back({a, b});
    return arr;
}

BitMatrix matrix_from(const Node& n, std::size_t rows, std::size_t cols)
{
    if (n.size() != rows)
        n.fail("expected " + std::to_string(rows) + " rows");
    BitMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const Node row = n[i];
        if (row.size() != cols)
            row.fail("expected " + std::to_string(cols) + " entries");
        for (std::size_t j = 0; j < cols; ++j)
            if (row[j].as_bit())
                m.set(i, j);
    }
    return m;
}

OrderedJson matrix_to_json(const BitMatrix& m)
{
    OrderedJson rows = OrderedJson::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        OrderedJson row = OrderedJson::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back(m.get(i, j) ? 1 : 0);
        rows.push_back(std::move(row));
    }
    return rows;
}

BitVector vector_from(const Node& n, std::size_t len)
{
    if (n.size() != len)
        n.fail("expected " + std::to_string(len) + " entries");
    BitVector v(len);
    for (std::size_t k = 0; k < len; ++k)
        if (n[k].as_bit())
            v.set(k);
    return v;
}

OrderedJson vector_to_json(const BitVector& v)
{
    OrderedJson arr = OrderedJson::array();
    for (std::size_t k = 0; k < v.size(); ++k)
        arr.push_back(v.test(k) ? 1 : 0);
    return arr;
}

std::size_t lookup(const GradedDims& dims, const Rational& g)
{
    auto it = dims.find(g);
    return it == dims.end() ? 0 : it->second;
}

GradedDims dims_from(const Node& n)
{
    GradedDims dims;
    for (const auto& [key, value] : n.entries()) {
        const auto d = value.as_size();
        if (d)
            dims[key_rational(key, value)] = d;
    }
    return dims;
}

OrderedJson dims_to_json(const GradedDims& dims)
{
    OrderedJson j = OrderedJson::object();
    for (const auto& [g, d] : dims)
        j[to_string(g)] = d;
    return j;
}

std::map<Rational, BitMatrix> blocks_from(const Node& n, const GradedDims& dims,
                                          std::int64_t degree)
{
    std::map<Rational, BitMatrix> out;
    for (const auto& [key, value] : n.entries()) {
        const Rational g = key_rational(key, value);
        out[g] = matrix_from(value, lookup(dims, g + degree), lookup(dims, g));
    }
    return out;
}

OrderedJson blocks_to_json(const std::map<Rational, BitMatrix>& blocks)
{
    OrderedJson j = OrderedJson::object();
    for (const auto& [g, m] : blocks)
        j[to_string(g)] = matrix_to_json(m);
    return j;
}

std::map<Rational, std::vector<BitVector>> marked_from(const Node& n, const GradedDims& dims)
{
    std::map<Rational, std::vector<BitVector>> out;
    for (const auto& [key, value] : n.entries()) {
        const Rational g = key_rational(key, value);
        auto& basis = out[g];
        for (const auto& item : value.items())
            basis.push_back(vector_from(item, lookup(dims, g)));
    }
    return out;
}

OrderedJson marked_to_json(const std::map<Rational, std::vector<BitVector>>& marked)
{
    OrderedJson j = OrderedJson::object();
    for (const auto& [g, basis] : marked) {
        OrderedJson arr = OrderedJson::array();
        for (const auto& v : basis)
            arr.push_back(vector_to_json(v));
        j[to_string(g)] = std::move(arr);
    }
    return j;
}

Node unwrap(const Node& root, std::string_view key)
{
    return root.json().is_object() && root.has(key) ? root[key] : root;
}

} // namespace

Json parse_json(std::string_view text)
{
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const Json::parse_error& e) {
        std::size_t line = 1, column = 1;
        const std::size_t limit = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        for (std::size_t k = 0; k < limit; ++k) {
            if (text[k] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        std::string what = e.what();
        const auto detail = what.find(": ", what.find("column"));
        if (detail != std::string::npos)
            what = what.substr(detail + 2);
        throw ParseError("malformed JSON at line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ": " + what,
                         line, column);
    }
}

OrderedJson grading_to_json(const Rational& g)
{
    if (g.denominator() == 1)
        return g.numerator();
    return to_string(g);
}

// ---------------------------------------------------------------- flow data

BoundaryFlowData flow_from_json(const Json& j)
{
    const Node root(j, "");
    root.expect_object();
    BoundaryFlowData d;
    d.name = root.has("name") ? root["name"].as_string() : "";
    d.b1 = root.has("b1") ? root["b1"].as_int() : 0;
    if (d.b1 < 0)
        root["b1"].fail("b1 must be nonnegative");
    if (root.has("grading"))
        d.scheme = scheme_from(root["grading"]);

    std::map<std::string, PointKind> ids;
    for (const auto& item : root["points"].items()) {
        item.expect_object();
        CriticalPoint p;
        p.id = item["id"].as_string();
        const std::string kind = item["kind"].as_string();
        if (kind != "o" && kind != "s" && kind != "u")
            item["kind"].fail("kind must be \"o\", \"s\" or \"u\"");
        p.kind = kind_from_code(kind[0]);
        p.grading = grading_in(d.scheme, item["grading"]);
        if (!ids.emplace(p.id, p.kind).second)
            item["id"].fail("duplicate point id '" + p.id + "'");
        d.points.push_back(std::move(p));
    }

    if (root.has("ops")) {
        for (const auto& [name, value] : root["ops"].entries()) {
            if (std::find(FlowOperators::names.begin(), FlowOperators::names.end(), name) ==
                FlowOperators::names.end())
                value.fail("unknown operator '" + name + "'");
            d.ops.get(name) = pairs_from(value, ids);
        }
    }

    if (root.has("u_cap")) {
        const Node cap = root["u_cap"];
        cap.expect_object();
        CrossOperators x;
        x.degree = cap.has("degree") ? cap["degree"].as_rational() : Rational(-2);
        for (const auto& [name, value] : cap.entries()) {
            if (name == "degree")
                continue;
            if (std::find(CrossOperators::names.begin(), CrossOperators::names.end(), name) ==
                CrossOperators::names.end())
                value.fail("unknown cross operator '" + name + "'");
            x.get(name) = pairs_from(value, ids);
        }
        d.u_cap = std::move(x);
    }
    return d;
}

OrderedJson flow_to_json(const BoundaryFlowData& d)
{
    OrderedJson j;
    j["name"] = d.name;
    j["b1"] = d.b1;
    j["grading"] = scheme_to_json(d.scheme);
    OrderedJson points = OrderedJson::array();
    for (const auto& p : d.points) {
        OrderedJson pj;
        pj["id"] = p.id;
        pj["kind"] = std::string(1, kind_code(p.kind));
        pj["grading"] = grading_to_json(p.grading);
        points.push_back(std::move(pj));
    }
    j["points"] = std::move(points);
    OrderedJson ops = OrderedJson::object();
    for (auto name : FlowOperators::names)
        if (!d.ops.get(name).empty())
            ops[std::string(name)] = pairs_to_json(d.ops.get(name));
    j["ops"] = std::move(ops);
    if (d.u_cap) {
        OrderedJson cap;
        cap["degree"] = grading_to_json(d.u_cap->degree);
        for (auto name : CrossOperators::names)
            if (!d.u_cap->get(name).empty())
                cap[std::string(name)] = pairs_to_json(d.u_cap->get(name));
        j["u_cap"] = std::move(cap);
    }
    return j;
}

// ---------------------------------------------------------------- complexes

ComplexFile complex_from_json(const Json& j)
{
    const Node root(j, "");
    root.expect_object();
    ComplexFile out;
    GradedComplex& c = out.complex;
    if (root.has("grading"))
        c.scheme = scheme_from(root["grading"]);
    if (root.has("degree"))
        c.degree = root["degree"].as_rational();
    std::map<std::string, std::size_t> index;
    for (const auto& item : root["generators"].items()) {
        item.expect_object();
        Generator g{item["id"].as_string(), grading_in(c.scheme, item["grading"])};
        if (!index.emplace(g.id, c.generators.size()).second)
            item["id"].fail("duplicate generator id '" + g.id + "'");
        c.generators.push_back(std::move(g));
    }
    c.differential = BitMatrix(c.size(), c.size());
    auto resolve = [&index](const Node& n) {
        const std::string id = n.as_string();
        auto it = index.find(id);
        if (it == index.end())
            n.fail("unknown generator id '" + id + "'");
        return it->second;
    };
    if (root.has("differential")) {
        for (const auto& item : root["differential"].items()) {
            if (item.size() != 2)
                item.fail("expected a [source, target] pair");
            c.differential.flip(resolve(item[1]), resolve(item[0]));
        }
    }
    if (root.has("involution")) {
        Involution inv;
        inv.image.resize(c.size());
        for (std::size_t k = 0; k < c.size(); ++k)
            inv.image[k] = k;
        for (const auto& item : root["involution"].items()) {
            if (item.size() != 2)
                item.fail("expected a pair of swapped generators");
            const auto a = resolve(item[0]);
            const auto b = resolve(item[1]);
            if (inv.image[a] != a || inv.image[b] != b)
                item.fail("generator already paired");
            inv.image[a] = b;
            inv.image[b] = a;
        }
        out.involution = std::move(inv);
    }
    return out;
}

OrderedJson complex_to_json(const GradedComplex& c, const Involution* inv)
{
    OrderedJson j;
    j["grading"] = scheme_to_json(c.scheme);
    j["degree"] = grading_to_json(c.degree);
    OrderedJson gens = OrderedJson::array();
    for (const auto& g : c.generators) {
        OrderedJson gj;
        gj["id"] = g.id;
        gj["grading"] = grading_to_json(g.grading);
        gens.push_back(std::move(gj));
    }
    j["generators"] = std::move(gens);
    OrderedJson diff = OrderedJson::array();
    for (std::size_t col = 0; col < c.size(); ++col)
        for (std::size_t row = 0; row < c.size(); ++row)
            if (c.differential.get(row, col))
                diff.push_back({c.generators[col].id, c.generators[row].id});
    j["differential"] = std::move(diff);
    if (inv) {
        OrderedJson pairs = OrderedJson::array();
        for (std::size_t k = 0; k < inv->image.size(); ++k)
            if (inv->image[k] > k)
                pairs.push_back({c.generators[k].id, c.generators[inv->image[k]].id});
        j["involution"] = std::move(pairs);
    }
    return j;
}

// ---------------------------------------------------------------- forms, paths, levels

QuadraticForm form_from_json(const Json& j)
{
    const Node matrix = unwrap(Node(j, ""), "matrix");
    QuadraticForm q;
    const std::size_t n = matrix.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Node row = matrix[i];
        if (row.size() != n)
            row.fail("expected " + std::to_string(n) + " entries");
        std::vector<std::int64_t> entries;
        for (std::size_t k = 0; k < n; ++k)
            entries.push_back(row[k].as_int());
        q.entries.push_back(std::move(entries));
    }
    try {
        q.check();
    } catch (const PreconditionError& e) {
        matrix.fail(e.what());
    }
    return q;
}

HermitianPath path_from_json(const Json& j)
{
    const Node samples = unwrap(Node(j, ""), "samples");
    HermitianPath p;
    for (const auto& item : samples.items()) {
        item.expect_object();
        p.t.push_back(item["t"].as_double());
        const Node m = item["matrix"];
        const std::size_t n = m.size();
        Eigen::MatrixXcd a(n, n);
        for (std::size_t r = 0; r < n; ++r) {
            const Node row = m[r];
            if (row.size() != n)
                row.fail("expected " + std::to_string(n) + " entries");
            for (std::size_t c = 0; c < n; ++c) {
                const Node e = row[c];
                if (e.json().is_array()) {
                    if (e.size() != 2)
                        e.fail("expected [re, im]");
                    a(r, c) = {e[0].as_double(), e[1].as_double()};
                } else {
                    a(r, c) = {e.as_double(), 0.0};
                }
            }
        }
        p.samples.push_back(std::move(a));
    }
    try {
        p.check();
    } catch (const PreconditionError& e) {
        if (e.index)
            samples[*e.index].fail(e.what());
        samples.fail(e.what());
    }
    return p;
}

std::vector<BottLevel> levels_from_json(const Json& j)
{
    const Node list = unwrap(Node(j, ""), "levels");
    std::vector<BottLevel> out;
    for (const auto& item : list.items()) {
        item.expect_object();
        BottLevel l;
        l.level = item["level"].as_int();
        l.offset = item["offset"].as_rational();
        for (const auto& d : item["dims"].items())
            l.dims.push_back(d.as_size());
        out.push_back(std::move(l));
    }
    return out;
}

OrderedJson levels_to_json(const std::vector<BottLevel>& levels)
{
    OrderedJson arr = OrderedJson::array();
    for (const auto& l : levels) {
        OrderedJson lj;
        lj["level"] = l.level;
        lj["offset"] = grading_to_json(l.offset);
        lj["dims"] = l.dims;
        arr.push_back(std::move(lj));
    }
    OrderedJson j;
    j["levels"] = std::move(arr);
    return j;
}

// ---------------------------------------------------------------- modules

UModule umodule_from_json(const Json& j)
{
    const Node root(j, "");
    root.expect_object();
    UModule m;
    m.dims = dims_from(root["dims"]);
    if (root.has("U"))
        m.u = blocks_from(root["U"], m.dims, -2);
    if (root.has("i_image"))
        m.i_image = marked_from(root["i_image"], m.dims);
    if (root.has("window_top"))
        m.window_top = root["window_top"].as_rational();
    return m;
}

OrderedJson umodule_to_json(const UModule& m)
{
    OrderedJson j;
    j["dims"] = dims_to_json(m.dims);
    j["U"] = blocks_to_json(m.u);
    j["i_image"] = marked_to_json(m.i_image);
    if (m.window_top)
        j["window_top"] = grading_to_json(*m.window_top);
    return j;
}

RModule rmodule_from_json(const Json& j)
{
    const Node root(j, "");
    root.expect_object();
    RModule m;
    m.dims = dims_from(root["dims"]);
    if (root.has("V"))
        m.v = blocks_from(root["V"], m.dims, -4);
    if (root.has("Q"))
        m.q = blocks_from(root["Q"], m.dims, -1);
    if (root.has("i_image"))
        m.i_image = marked_from(root["i_image"], m.dims);
    return m;
}

OrderedJson rmodule_to_json(const RModule& m)
{
    OrderedJson j;
    j["dims"] = dims_to_json(m.dims);
    j["V"] = blocks_to_json(m.v);
    j["Q"] = blocks_to_json(m.q);
    j["i_image"] = marked_to_json(m.i_image);
    return j;
}

} // namespace floer
