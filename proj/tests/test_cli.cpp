#include <doctest.h>

#include <sstream>

#include "cli.hpp"
#include "floer/io.hpp"
#include "support.hpp"

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args, const std::string& stdin_text = {})
{
    std::istringstream in(stdin_text);
    std::ostringstream out, err;
    const int code = floer::cli::dispatch(args, in, out, err);
    return {code, out.str(), err.str()};
}

bool has_line(const std::string& text, const std::string& line)
{
    std::istringstream s(text);
    for (std::string l; std::getline(s, l);)
        if (l == line)
            return true;
    return false;
}

} // namespace

TEST_CASE("sha256 of known strings")
{
    CHECK(floer::cli::sha256_hex("") ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(floer::cli::sha256_hex("abc") ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("reports start with the command and the input digest")
{
    const auto path = test::data_path("flows/interval.json");
    const auto r = run({"validate", path});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("command: floer validate " + path + "\n", 0) == 0);
    CHECK(r.out.find("input: " + path + " sha256 ") != std::string::npos);
    CHECK(has_line(r.out, "verdict: pass"));
}

TEST_CASE("exit codes")
{
    CHECK(run({"validate", test::data_path("mutations/osuo_dropped_step.json")}).code == 1);
    const auto corrupt = run({"validate", test::data_path("corrupt.json")});
    CHECK(corrupt.code == 2);
    CHECK(corrupt.err.find("/points/1/kind") != std::string::npos);
    const auto malformed = run({"validate", test::data_path("malformed.json")});
    CHECK(malformed.code == 2);
    CHECK(malformed.err.find("line 4") != std::string::npos);
    CHECK(run({"validate", test::data_path("no_such_file.json")}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"grading", "iota", "--chi", "11", "--sigma", "-8"}).code == 2);
    CHECK(run({"rho", test::data_path("forms/minus_one.json"), "--box", "0"}).code == 2);
}

TEST_CASE("numeric answers")
{
    CHECK(has_line(run({"rho", test::data_path("forms/minus_e8.json")}).out, "rho = 1"));
    CHECK(has_line(run({"rho", test::data_path("forms/minus_one.json")}).out, "rho = 0"));
    CHECK(has_line(run({"froyshov", test::data_path("flows/s3_tower.json")}).out, "h = 0"));
    CHECK(has_line(run({"grading", "iota", "--chi", "10", "--sigma", "-8"}).out, "iota = 1"));
    CHECK(has_line(run({"spectral-flow", test::data_path("paths/diag_t.json")}).out, "flow = 1"));
    const auto terms = run({"correction-terms", test::data_path("rmodules/pin2_s3.json"), "--rokhlin", "0"});
    CHECK(terms.code == 0);
    CHECK(has_line(terms.out, "alpha = 0"));
}

TEST_CASE("models pipe into homology")
{
    const auto model = run({"model", "s3", "--levels", "3"});
    REQUIRE(model.code == 0);
    CHECK_NOTHROW(floer::parse_json(model.out));
    const auto h = run({"homology", "-", "--flavor", "to"}, model.out);
    CHECK(h.code == 0);
    CHECK(has_line(h.out, "H = F@0, F@2, F@4"));
    CHECK(h.out.find("input: <stdin> sha256 " + floer::cli::sha256_hex(model.out)) != std::string::npos);
}

TEST_CASE("output is deterministic")
{
    for (const std::vector<std::string>& args :
         {std::vector<std::string>{"triangle", test::data_path("flows/disk4.json")},
          std::vector<std::string>{"rho", test::data_path("forms/minus_i8.json")},
          std::vector<std::string>{"bott", "gysin", test::data_path("complexes/s2_antipodal.json")},
          std::vector<std::string>{"model", "hermitian", "--eigs", "-2,-1,1,3"}}) {
        const auto a = run(args);
        const auto b = run(args);
        CHECK(a.code == b.code);
        CHECK(a.out == b.out);
    }
}
