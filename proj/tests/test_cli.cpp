#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include "cuspfold/render.hpp"
#include "cuspfold/signature.hpp"
#include "cuspfold/verify.hpp"
#include "support/svg_check.hpp"

#include <json.hpp>

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

namespace {

std::string g_cli;
std::string g_dir;

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args)
{
    const std::string cmd = "'" + g_cli + "' " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
    const int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string path(const std::string& name)
{
    return g_dir + "/" + name;
}

} // namespace

TEST_CASE("catalog lists 32 forms")
{
    const Run r = run("catalog");
    CHECK(r.code == 0);
    int lines = 0;
    for (char c : r.out) lines += c == '\n';
    CHECK(lines == 33);
    const Run j = run("catalog --format json");
    CHECK(nlohmann::json::parse(j.out).size() == 32);
}

TEST_CASE("classify prints the signature")
{
    const Run r = run("classify +++++");
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["cusp_arrival"] == "Sigma+");
    CHECK(run("classify '(+-+,++)'").code == 0);
    CHECK(nlohmann::json::parse(run("classify '(+-+,++)'").out)["cusp_arrival"] == "Sigma-");
}

TEST_CASE("usage errors exit 2")
{
    CHECK(run("").code == 2);
    CHECK(run("nonsense").code == 2);
    CHECK(run("classify").code == 2);
    CHECK(run("classify ++").code == 2);
    CHECK(run("unfold --sv +++++ --lambda 0.1 --n 5").code == 2);
    CHECK(run("simulate --q0 0,0,0").code == 2);
    CHECK(run("--help").code == 0);
}

TEST_CASE("verify")
{
    const Run a = run("verify");
    CHECK(a.code == 0);
    CHECK(a.out.find("32/32 distinct; table cross-check: 1 known discrepancy") != std::string::npos);
    CHECK(a.out.rfind("seed 20240611", 0) == 0);
    const Run b = run("verify");
    CHECK(a.out == b.out);
    const Run c = run("verify --seed 99");
    CHECK(c.code == 0);
    CHECK(c.out.rfind("seed 99", 0) == 0);
}

TEST_CASE("simulate writes CSV and events")
{
    const std::string prefix = path("cli_sim");
    const Run r = run("simulate --sv +++++ --q0 0,-1,0 --t-max 2.5 --out '" + prefix + "'");
    CHECK(r.code == 0);
    const auto rows = cuspfold::parse_trajectory_csv(slurp(prefix + ".csv"));
    CHECK(rows.size() > 10);
    const auto events = nlohmann::json::parse(slurp(prefix + ".events.json"));
    bool returned = false;
    for (const auto& e : events) {
        if (std::abs(e["t"].get<double>() - 2.0) < 1e-9 && std::abs(e["y"].get<double>() - 1.0) < 1e-9) returned = true;
    }
    CHECK(returned);
    const Run rk = run("simulate --sv +++++ --q0 0.3,0.2,0.1 --t-max 0.5 --rk4 --format json");
    CHECK(rk.code == 0);
    CHECK(nlohmann::json::parse(rk.out).is_array());
}

TEST_CASE("simulate and signature read PSVF files")
{
    const std::string file = path("cli_fixture.json");
    {
        std::ofstream out(file);
        out << nlohmann::json(cuspfold::perturbed_fixture()).dump();
    }
    const Run s = run("signature --psvf '" + file + "' --point 0,0,0 --radius 0.1");
    CHECK(s.code == 0);
    CHECK(nlohmann::json::parse(s.out) == nlohmann::json(cuspfold::signature_of_sign_vector({1, 1, 1, 1, 1})));
    const Run sim = run("simulate --psvf '" + file + "' --q0 -0.5,-0.5,0.2 --t-max 1");
    CHECK(sim.code == 0);
    CHECK(sim.out.rfind("t,x,y,z,regime", 0) == 0);
    CHECK(run("signature --psvf '" + file + "' --point 0,1,0").code == 2);
}

TEST_CASE("unfold")
{
    const Run r = run("unfold --sv +++++ --epsilon 0.2 --n 5");
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["lambda_grid"].size() == 5);
    CHECK(j["records"][2]["cusp_fold"] == true);
    const Run one = run("unfold --sv +++++ --lambda 0.1");
    CHECK(nlohmann::json::parse(one.out)["record"]["singular_point"][1] == 0.1);
    CHECK(run("unfold --sv +++++ --lambda 0.9").code == 2);
}

TEST_CASE("portrait")
{
    const std::string file = path("cli_portrait.svg");
    CHECK(run("portrait --sv +++++ --out '" + file + "'").code == 0);
    const auto doc = svgcheck::parse(slurp(file));
    CHECK(doc.well_formed);
    CHECK(doc.with("class", "region").size() == 4);
    const Run all = run("portrait --sv +-+-+ --lambda 0.1 --show all");
    CHECK(svgcheck::parse(all.out).well_formed);
    CHECK(run("portrait --show bogus").code == 2);
}

int main(int argc, char** argv)
{
    if (argc < 3) {
        std::fprintf(stderr, "usage: test_cli <cli> <work-dir> [doctest options]\n");
        return 2;
    }
    g_cli = argv[1];
    g_dir = argv[2];
    doctest::Context ctx;
    ctx.applyCommandLine(argc - 2, argv + 2);
    return ctx.run();
}
