#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

fs::path work_dir() {
    static const fs::path dir = [] {
        fs::path p = fs::temp_directory_path() /
                     ("rotw_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(p);
        return p;
    }();
    return dir;
}

RunResult run_cli(const std::string& args) {
    const fs::path out_path = work_dir() / "stdout.txt";
    const std::string cmd =
        std::string(ROTW_CLI_PATH) + " " + args + " > " + out_path.string() + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out_path);
    std::stringstream ss;
    ss << in.rdbuf();
    r.out = ss.str();
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("catalog lists every surface") {
    const RunResult r = run_cli("catalog --json");
    REQUIRE(r.exit_code == 0);
    const auto listing = nlohmann::json::parse(r.out);
    CHECK(listing.size() == 15);
    bool has_ellipsoid = false;
    for (const auto& item : listing) has_ellipsoid |= item["name"] == "ellipsoid";
    CHECK(has_ellipsoid);
}

TEST_CASE("solve cubic reports the sphere classification") {
    const RunResult r = run_cli("solve cubic:mu=1 --c 0 --json");
    REQUIRE(r.exit_code == 0);
    const auto report = nlohmann::json::parse(r.out);
    CHECK(report["classification"] == "sphere");
    CHECK(report["R"].get<double>() == doctest::Approx(1.0));
    CHECK(report["residuals"]["max_abs"].get<double>() < 1e-10);
}

TEST_CASE("prescribe H=0 reconstructs a catenary") {
    const fs::path csv = work_dir() / "cat.csv";
    const RunResult r = run_cli("prescribe --H const:0 --c 1 --reconstruct --x0 1 --span 3 "
                                "-n 101 --out " +
                                csv.string());
    REQUIRE(r.exit_code == 0);
    std::ifstream in(csv);
    std::string header;
    std::getline(in, header);
    CHECK(header == "s,x,z,theta");
    std::string line;
    int rows = 0;
    double worst = 0;
    while (std::getline(in, line)) {
        double s, x, z, theta;
        REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &s, &x, &z, &theta) == 4);
        worst = std::max(worst, std::fabs(x - std::sqrt(1 + s * s)));
        ++rows;
    }
    CHECK(rows == 101);
    CHECK(worst < 1e-6);
}

TEST_CASE("mesh writes a valid OBJ deterministically") {
    const fs::path obj1 = work_dir() / "ps1.obj";
    const fs::path obj2 = work_dir() / "ps2.obj";
    const std::string common = "mesh --surface pseudosphere:a=1 --ns 200 --ntheta 128 --out ";
    REQUIRE(run_cli(common + obj1.string()).exit_code == 0);
    REQUIRE(run_cli(common + obj2.string()).exit_code == 0);
    const std::string body1 = slurp(obj1);
    CHECK(body1 == slurp(obj2));
    CHECK(body1.rfind("# surface of revolution", 0) == 0);
    std::istringstream in(body1);
    std::string line;
    std::size_t v = 0, f = 0;
    while (std::getline(in, line)) {
        if (line.rfind("v ", 0) == 0) ++v;
        if (line.rfind("f ", 0) == 0) ++f;
    }
    CHECK(v == 200 * 128);
    CHECK(f == 199 * 128);
}

TEST_CASE("wdiagram emits the documented header") {
    const RunResult r = run_cli("wdiagram --surface elasticoid:a=1,k=0.5 -n 10");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.rfind("x,k_m,k_p,H,K_G", 0) == 0);
}

TEST_CASE("exit codes distinguish parameter errors") {
    CHECK(run_cli("solve cubic:mu=-1 --c 0.5 --json").exit_code == 1);
    CHECK(run_cli("reconstruct --surface klein:a=1").exit_code == 1);
    CHECK(run_cli("wdiagram --surface sphere:R=-2").exit_code == 1);
}

TEST_CASE("every catalog surface passes verify") {
    for (const char* spec :
         {"plane", "cone:theta0=0.5", "sphere:R=2", "torus:a=2,R=1", "catenoid:a=1",
          "onducycloid:R=1", "pseudosphere:a=1", "antiparaboloid:c=1", "ellipsoid:a=2,b=1",
          "one-sheet-hyperboloid:a=1,b=1", "two-sheets-hyperboloid:a=1,b=1", "paraboloid:a=1",
          "elasticoid:a=1,k=0.5", "delaunay:H0=0.5,c=0.1", "darboux:K0=-1,c=0.75"}) {
        CAPTURE(spec);
        const RunResult r = run_cli(std::string("verify --surface ") + spec);
        CHECK(r.exit_code == 0);
    }
}

TEST_CASE("solve reports byte-identical output across runs") {
    const RunResult a = run_cli("solve hyperbola:mu=-2 --a-coef 1 --json");
    const RunResult b = run_cli("solve hyperbola:mu=-2 --a-coef 1 --json");
    REQUIRE(a.exit_code == 0);
    CHECK(a.out == b.out);
    const auto report = nlohmann::json::parse(a.out);
    CHECK(report["classification"] == "elasticoid");
    CHECK(report["k"].get<double>() == doctest::Approx(0.5));
}

}  // TEST_SUITE
