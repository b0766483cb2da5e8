#include <doctest.h>

#include "fauto/cli.hpp"
#include "fauto/series.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace fauto;
using nlohmann::json;

namespace {

struct Run {
    int rc;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    int rc = run_cli(args, out, err);
    return {rc, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / ("fauto_cli_" + name);
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

}  // namespace

TEST_CASE("analyze reports the shrinking example") {
    Run r = run({"analyze", "--fixture", "shrinking"});
    REQUIRE(r.rc == 0);
    json j = json::parse(r.out);
    CHECK(j["m"] == 0);
    CHECK(j["alpha"] == "1/1");
    CHECK(j["verdicts"]["a"] == "pass");
    CHECK(j["verdicts"]["b"] == "pass");
    CHECK(j["verdicts"]["c"] == "certified_strong");
    CHECK(j["certificate"]["C0_lower_bound"] == "1/1");
    CHECK(j["corollary1"] == "no");
}

TEST_CASE("analyze on the gevrey fixture") {
    json j = json::parse(run({"analyze", "--fixture", "gevrey_h4"}).out);
    CHECK(j["m"] == 1);
    CHECK(j["s"] == "1/1");
    CHECK(j["alpha"] == "0/1");
    CHECK(j["polygon"]["vertices"] == json::parse("[[0,0],[1,1],[1,3]]"));
    CHECK(j["corollary1"] == "yes");
}

TEST_CASE("operator file with comments and params sidecar") {
    auto dir = scratch("opfile");
    std::ofstream(dir / "op.txt") << "# shrinking example\ndt*t*dz*z - (dt*t)^2*z*(dz*z + 1)  # P\n";
    Run a = run({"analyze", "--operator", (dir / "op.txt").string()});
    Run b = run({"analyze", "--fixture", "shrinking"});
    REQUIRE(a.rc == 0);
    CHECK(json::parse(a.out)["exponents"] == json::parse(b.out)["exponents"]);

    std::ofstream(dir / "p.txt") << "dt - c*dz";
    std::ofstream(dir / "p.json") << R"({"c": {"N": 2, "K": 2, "coeffs": [[0, 1, "1/2"]]}})";
    Run c = run({"analyze", "--operator", (dir / "p.txt").string(), "--params", (dir / "p.json").string()});
    CHECK(c.rc == 0);
    Run d = run({"analyze", "--operator", (dir / "p.txt").string()});
    CHECK(d.rc == 1);
    CHECK(json::parse(d.err)["error"]["code"] == "parse_error");
}

TEST_CASE("solve writes the table and a summary") {
    auto dir = scratch("solve");
    Run r = run({"solve", "--fixture", "shrinking", "--N", "12", "--K", "20", "--check-residual", "--out-dir",
                 dir.string()});
    REQUIRE(r.rc == 0);
    json j = json::parse(r.out);
    CHECK(j["residual_checked"] == true);
    CHECK(j["N"] == 12);
    CHECK(j["K"] == 20);
    std::ifstream in(dir / "solution.csv");
    SeriesTZ u = read_csv(in, {12, 20});
    for (int n = 0; n <= 12; ++n)
        for (int k = 0; k <= 20; ++k) {
            Integer p;
            mpz_pow_ui(p.get_mpz_t(), Integer(n + 1).get_mpz_t(), static_cast<unsigned long>(k));
            CHECK(u.coeff(n, k) == Rational(p));
        }
}

TEST_CASE("solve prints CSV without an output directory") {
    Run r = run({"solve", "--fixture", "shrinking", "--N", "2", "--K", "2"});
    REQUIRE(r.rc == 0);
    CHECK(r.out.rfind("n,k,numerator,denominator\n0,0,1,1\n", 0) == 0);
}

TEST_CASE("solve reports resonance and condition failures") {
    Run r = run({"solve", "--fixture", "resonant"});
    CHECK(r.rc == 1);
    json e = json::parse(r.err)["error"];
    CHECK(e["code"] == "resonance");
    CHECK(e["witness"] == json::parse("[0,5]"));

    auto dir = scratch("cond");
    std::ofstream(dir / "op.txt") << "t*dt";
    Run c = run({"solve", "--operator", (dir / "op.txt").string()});
    CHECK(c.rc == 1);
    CHECK(json::parse(c.err)["error"]["condition"] == "a");
}

TEST_CASE("fit recovers alpha from a solved table") {
    auto dir = scratch("fit");
    REQUIRE(run({"solve", "--fixture", "shrinking", "--N", "24", "--K", "64", "--out-dir", dir.string()}).rc == 0);
    Run r = run({"fit", "--solution", (dir / "solution.csv").string(), "--fixture", "shrinking", "--out-dir",
                 dir.string()});
    REQUIRE(r.rc == 0);
    json j = json::parse(r.out);
    CHECK(j["alpha_hat"].get<double>() == doctest::Approx(1.0).epsilon(0.05));
    CHECK(j["bound_constants"]["verified"] == true);
    CHECK(std::filesystem::exists(dir / "radii.csv"));
    CHECK(std::filesystem::exists(dir / "radii.svg"));
    CHECK(std::filesystem::exists(dir / "growth.json"));
}

TEST_CASE("sharpness on the shrinking family") {
    Run r = run({"sharpness", "--fixture", "shrinking_3_2"});
    REQUIRE(r.rc == 0);
    json j = json::parse(r.out);
    CHECK(j["alpha"] == "1/1");
    CHECK(j["lower_bound_verified"] == true);
    CHECK(j["pass"] == true);
}

TEST_CASE("liouville output") {
    Run r = run({"liouville", "--J", "3", "--N", "50", "--K", "50"});
    REQUIRE(r.rc == 0);
    CHECK(r.out.rfind("n,k,abs_w\n", 0) == 0);
    auto dir = scratch("liou");
    json j = json::parse(run({"liouville", "--N", "50", "--K", "50", "--out-dir", dir.string()}).out);
    CHECK(j["witnesses"]["2"]["n"] == 1);
    CHECK(j["witnesses"]["2"]["k"] == 7);
    CHECK(run({"liouville", "--J", "1"}).rc == 1);
}

TEST_CASE("demo is deterministic") {
    Run a = run({"demo", "--seed", "11"});
    Run b = run({"demo", "--seed", "11"});
    REQUIRE(a.rc == 0);
    CHECK(a.out == b.out);
    json j = json::parse(a.out);
    CHECK(j["runs"].size() >= 4);
}

TEST_CASE("usage errors and config round trip") {
    CHECK(run({}).rc == 2);
    CHECK(run({"analyze", "--N", "x", "--fixture", "shrinking"}).rc == 2);
    CHECK(run({"analyze", "--fixture", "nope"}).rc == 1);
    CHECK(run({"analyze", "--fixture", "shrinking", "--grid", "4,4"}).rc == 1);
    CHECK(run({"--help"}).rc == 0);

    auto dir = scratch("config");
    Run p = run({"--print-config", "--fixture", "shrinking", "--N", "20", "analyze"});
    REQUIRE(p.rc == 0);
    std::ofstream(dir / "c.ini") << p.out;
    Run r = run({"--config", (dir / "c.ini").string(), "analyze"});
    REQUIRE(r.rc == 0);
    CHECK(json::parse(r.out)["truncation"] == json::parse("[20,16]"));
}
