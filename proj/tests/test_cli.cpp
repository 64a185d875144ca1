#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dgl/holonomy.hpp"
#include "dgl/io.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace dgl;
namespace fs = std::filesystem;

namespace {

struct Run {
    int rc;
    std::string out, err;
};

fs::path scratch()
{
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / ("dglc_cli_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

Run dglc(const std::string& args)
{
    fs::path err = scratch() / "stderr.txt";
    std::string cmd = std::string(DGLC_PATH) + " " + args + " 2>" + err.string();
    FILE* p = ::popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    char buf[4096];
    std::size_t k;
    while ((k = std::fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, k);
    int status = ::pclose(p);
    std::ifstream e(err);
    std::stringstream es;
    es << e.rdbuf();
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out, es.str()};
}

std::string write_file(const std::string& name, const json& j)
{
    fs::path f = scratch() / name;
    std::ofstream(f) << j.dump();
    return f.string();
}

json read_file(const fs::path& f)
{
    std::ifstream in(f);
    return json::parse(in);
}

// nlohmann reads {{"a","b"}} as an object, so points are built explicitly
json path(int n, const std::vector<std::vector<std::string>>& pts)
{
    json arr = json::array();
    for (const auto& q : pts) arr.push_back(json(q));
    return json{{"n", n}, {"points", arr}};
}

fs::path golden() { return fs::path(__FILE__).parent_path() / "golden" / "cc_n2_d2.json"; }

}  // namespace

TEST_CASE("verify: exact suite passes and reports")
{
    Run r = dglc("verify --n 2 --max-letters 4 --json");
    REQUIRE(r.rc == 0);
    json j = json::parse(r.out);
    CHECK(j.at("failures") == 0);
    CHECK(j.at("checks").size() >= 10);
    for (const auto& c : j.at("checks")) CHECK(c.at("ok") == true);

    Run p = dglc("verify --n 2 --max-letters 3");
    CHECK(p.rc == 0);
    CHECK(p.out.find("0 failure(s)") != std::string::npos);
    Run c = dglc("verify --n 1 --max-letters 3 --degree 2 --format csv");
    CHECK(c.rc == 0);
    CHECK(c.out.rfind("name,ok,value,tol,seconds,detail", 0) == 0);
}

TEST_CASE("verify is deterministic given the seed")
{
    auto strip = [](json j) {
        for (auto& c : j["checks"]) c.erase("seconds");
        return j;
    };
    json a = strip(json::parse(dglc("verify --n 2 --max-letters 4 --seed 7 --json").out));
    json b = strip(json::parse(dglc("verify --n 2 --max-letters 4 --seed 7 --json").out));
    CHECK(a == b);
}

TEST_CASE("resource guards")
{
    Run r = dglc("verify --n 0");
    CHECK(r.rc == 2);
    CHECK(r.err.find("--n") != std::string::npos);
    CHECK(dglc("verify --n 7").rc == 2);
    Run l = dglc("verify --n 3 --max-letters 9");
    CHECK(l.rc == 2);
    CHECK(l.err.find("basis") != std::string::npos);
    CHECK(dglc("export-cc --n 2 --degree 7").rc == 2);
    CHECK(dglc("verify --n 2 --numeric").rc == 2);  // the numeric suite lives in R^3
    CHECK(dglc("verify --n 2 --format xml").rc == 2);
    CHECK(dglc("frobnicate").rc == 2);
}

TEST_CASE("dims table")
{
    Run r = dglc("dims --n 2 --max-letters 4 --json");
    REQUIRE(r.rc == 0);
    json rows = json::parse(r.out).at("rows");
    auto row = [&](int i, int ell) {
        for (const auto& x : rows)
            if (x.at("i") == i && x.at("ell") == ell) return x;
        FAIL("missing row");
        return json();
    };
    // (0,1): Z1, Z2, all cocycles, nothing hits them
    CHECK(row(0, 1).at("dim") == 2);
    CHECK(row(0, 1).at("H") == 2);
    // (0,2): [Z1,Z2] = dZ12
    CHECK(row(0, 2).at("dim") == 1);
    CHECK(row(0, 2).at("im") == 1);
    CHECK(row(0, 2).at("H") == 0);
    // (−1,2): [Z1,Z12], [Z2,Z12], with independent differentials
    CHECK(row(-1, 2).at("dim") == 2);
    CHECK(row(-1, 2).at("ker") == 0);
    for (const auto& x : rows) {
        CHECK(x.at("H") == x.at("H_pred"));
        CHECK(x.at("ab_dim") == x.at("ab_pred"));
        if (x.contains("sab_ker_pred")) CHECK(x.at("sab_ker") == x.at("sab_ker_pred"));
        if (-x.at("i").get<int>() >= 2) {  // no letter Z_I with |I| > 2
            CHECK(x.at("sab_dim") == 0);
            CHECK(x.at("ab_dim") == 0);
        }
    }
    Run csv = dglc("dims --n 2 --max-letters 3 --format csv");
    CHECK(csv.out.rfind("i,ell,dim,ker,im,H,H_pred", 0) == 0);
}

TEST_CASE("sig")
{
    auto sig = [](const json& path, int d) {
        Run r = dglc("sig " + write_file("path.json", path) + " --degree " + std::to_string(d));
        REQUIRE(r.rc == 0);
        return json::parse(r.out);
    };
    json constant = sig(path(2, {{"1/3", "2"}, {"1/3", "2"}}), 3);
    CHECK(tensor_from_json(constant.at("signature")) == Tensor::unit(2, 3));

    // one segment: exp(Z1 + 2 Z2)
    Tensor seg = tensor_from_json(sig(path(2, {{"0", "0"}, {"1", "2"}}), 3).at("signature"));
    Letter z1 = letter_from_indices({1}), z2 = letter_from_indices({2});
    CHECK(seg.coefficient(Word::from_letters({z1, z2})) == Rational(1));
    CHECK(seg.coefficient(Word::from_letters({z2, z2})) == Rational(2));
    CHECK(seg.coefficient(Word::from_letters({z2, z2, z2})) == Rational(4, 3));

    // concatenation is the product, the earlier path on the left
    json a = path(2, {{"0", "0"}, {"1", "0"}}), b = path(2, {{"1", "0"}, {"1", "1"}, {"-1/2", "3"}});
    json ab = path(2, {{"0", "0"}, {"1", "0"}, {"1", "1"}, {"-1/2", "3"}});
    Tensor sa = tensor_from_json(sig(a, 4).at("signature")), sb = tensor_from_json(sig(b, 4).at("signature"));
    CHECK(tensor_from_json(sig(ab, 4).at("signature")) == sa * sb);

    // floating-point input goes through the real signature
    json f = sig(json{{"n", 2}, {"points", json::array({json::array({0.0, 0.0}), json::array({1.0, 2.0})})}}, 2);
    CHECK(f.at("exact") == false);
    CHECK(f.at("log").at("coords").at(1).get<double>() == doctest::Approx(2.0));

    CHECK(dglc("sig " + write_file("bad.json", path(2, {{"0"}}))).rc == 2);
    CHECK(dglc("sig " + (scratch() / "missing.json").string()).rc == 2);
}

TEST_CASE("hol2 and holp")
{
    Run r = dglc("hol2 " + write_file("sq.json", brane_to_json(coordinate_square(2, 1, 2, 41, 41))) + " --degree 2");
    REQUIRE(r.rc == 0);
    json h = json::parse(r.out);
    CHECK(h.at("degree") == -1);
    CHECK(h.at("labels").at(0) == "Z12");
    CHECK(h.at("coords").at(0).get<double>() == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(h.at("diagnostics").at("boundary_residual").get<double>() < 1e-3);

    // not a globe: the t = 0 column moves with s
    auto broken = sample_surface([](double s, double t) { return Point{s * (1 - t) + t, t}; }, 2, 9, 9);
    CHECK(dglc("hol2 " + write_file("broken.json", brane_to_json(broken))).rc == 3);

    Run c = dglc("holp " + write_file("cube.json", brane_to_json(unit_cube_brane(8, 8, 8))) + " --degree 3");
    REQUIRE(c.rc == 0);
    json hc = json::parse(c.out);
    CHECK(hc.at("degree") == -2);
    CHECK(hc.at("labels").at(0) == "Z123");
    CHECK(hc.at("coords").at(0).get<double>() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(dglc("hol2 " + (scratch() / "cube.json").string()).rc == 2);
    CHECK(dglc("holp " + (scratch() / "sq.json").string()).rc == 2);
}

TEST_CASE("export-cc and import-cc")
{
    fs::path out = scratch() / "cc.json";
    REQUIRE(dglc("export-cc --n 2 --degree 2 --out " + out.string()).rc == 0);
    CHECK(read_file(out) == read_file(golden()));

    Run imp = dglc("import-cc " + golden().string() + " --json");
    CHECK(imp.rc == 0);
    json rep = json::parse(imp.out);
    CHECK(rep.at("round_trip") == true);
    CHECK(rep.at("violations").empty());
    CHECK(rep.at("dims") == json::array({3, 3}));

    // d Z12 = Z1 breaks d[Z2,Z12] = [Z2,dZ12]
    json bad = read_file(golden());
    bad["differential"][0]["terms"][0][0] = 0;
    Run b = dglc("import-cc " + write_file("bad_cc.json", bad) + " --json");
    CHECK(b.rc == 1);
    CHECK(!json::parse(b.out).at("violations").empty());

    REQUIRE(dglc("export-cc --n 3 --degree 3 --out " + out.string()).rc == 0);
    CHECK(dglc("import-cc " + out.string()).rc == 0);
}
