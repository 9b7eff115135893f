#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gwv/current.hpp"
#include "gwv/serialize.hpp"
#include "gwv/units.hpp"

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

struct CliResult {
    int exit_code;
    std::string output;
};

fs::path scratch_dir() {
    const fs::path dir = fs::temp_directory_path() / "gwv_cli_tests";
    fs::create_directories(dir);
    return dir;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

CliResult run_cli(const std::string& args, const std::string& tag) {
    const fs::path out = scratch_dir() / (tag + ".out");
    const fs::path err = scratch_dir() / (tag + ".err");
    const std::string cmd = std::string("\"") + GWV_CLI_PATH + "\" " + args + " > \"" +
                            out.string() + "\" 2> \"" + err.string() + "\"";
    const int status = std::system(cmd.c_str());
    const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return {code, read_file(out)};
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

}  // namespace

TEST_CASE("weak-value selection-rule mode emits the pinned JSON keys") {
    const CliResult r = run_cli("weak-value --px 1 --py 1", "wv_sel");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.output);
    CHECK(j.size() == 4);
    CHECK(j.at("sigma_x_w").get<double>() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(j.at("sigma_y_w").get<double>() == 0.0);
    CHECK(j.contains("overlap_re"));
    CHECK(j.contains("overlap_im"));
}

TEST_CASE("weak-value angle mode") {
    const CliResult r = run_cli(
        "weak-value --theta-pre 2.356194490192345 --theta-post 0.7853981633974483", "wv_ang");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.output);
    CHECK(j.at("sigma_x_w").get<double>() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(std::abs(j.at("sigma_y_w").get<double>()) < 1e-12);
}

TEST_CASE("weak-value usage and domain errors") {
    CHECK(run_cli("weak-value", "wv_none").exit_code == 2);
    CHECK(run_cli("weak-value --theta-pre 1 --theta-post 1", "wv_sing").exit_code == 3);
    CHECK(run_cli("weak-value --px -1", "wv_notrans").exit_code == 3);
}

TEST_CASE("transition subcommand") {
    const CliResult r = run_cli("transition --px 1 --py 1 --eps 1", "transition");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.output);
    CHECK(j.at("v_g").get<double>() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(j.at("T").get<double>() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(j.at("delta_E").get<double>() ==
          doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("conductivity matches the closed form") {
    const CliResult r = run_cli("conductivity --eps 1 --tbal 0.5 --units natural", "sigma");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.output);
    const double expected = 1.0 / (8.0 * std::numbers::pi * std::numbers::pi);
    CHECK(j.at("sigma_O").get<double>() == doctest::Approx(expected).epsilon(1e-8));
    CHECK(j.at("regime").get<std::string>() == "crossover");
}

TEST_CASE("conductivity accepts a sample length instead of t_bal") {
    const CliResult a = run_cli("conductivity --eps 1 --tbal 0.5", "sigma_tbal");
    const CliResult b = run_cli("conductivity --eps 1 --L 0.5", "sigma_len");  // v_f = 1
    REQUIRE(a.exit_code == 0);
    REQUIRE(b.exit_code == 0);
    CHECK(json::parse(a.output).at("sigma_O") == json::parse(b.output).at("sigma_O"));
    CHECK(run_cli("conductivity --eps 1 --tbal 0.5 --L 0.5", "sigma_both").exit_code == 2);
    CHECK(run_cli("conductivity --eps 1", "sigma_neither").exit_code == 2);
}

TEST_CASE("crossover-time subcommand") {
    const CliResult r = run_cli("crossover-time --eps 4", "tc");
    REQUIRE(r.exit_code == 0);
    CHECK(json::parse(r.output).at("t_c").get<double>() == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("schwinger-rate value and error regimes") {
    const CliResult r = run_cli("schwinger-rate --eps 1 --tbal 1000", "rate");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.output);
    CHECK(j.at("ratio_to_reference").get<double>() == doctest::Approx(0.599).epsilon(2e-3));
    CHECK(run_cli("schwinger-rate --eps 1 --tbal 0.5", "rate_regime").exit_code == 3);
    CHECK(run_cli("schwinger-rate --eps 1 --tbal 1000 --rel-tol 1e-15 --max-evals 1000",
                  "rate_budget")
              .exit_code == 4);
}

TEST_CASE("regions grid emits one row per grid point") {
    const CliResult r = run_cli("regions --eps 1 --tbal 100 --grid 3", "grid");
    REQUIRE(r.exit_code == 0);
    const auto lines = split_lines(r.output);
    REQUIRE(lines.size() == 10);
    CHECK(lines[0] == "p_x,p_y,in_V,in_B,in_F,klass");
    int s_count = 0;
    for (std::size_t i = 1; i < lines.size(); ++i)
        if (lines[i].find(",S") != std::string::npos) ++s_count;
    CHECK(s_count > 0);
}

TEST_CASE("regions boundary table") {
    const CliResult r = run_cli("regions --eps 1 --tbal 1 --boundaries --n 64", "bounds");
    REQUIRE(r.exit_code == 0);
    const auto lines = split_lines(r.output);
    REQUIRE(lines.size() == 1 + 3 * 64);
    CHECK(lines[0] == "p_x,p_y,curve");
    int v = 0, b = 0, f = 0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].ends_with(",V")) ++v;
        if (lines[i].ends_with(",B")) ++b;
        if (lines[i].ends_with(",F")) ++f;
    }
    CHECK(v == 64);
    CHECK(b == 64);
    CHECK(f == 64);
}

TEST_CASE("sweep CSV: pinned header, determinism, round-trip") {
    const std::string args =
        "sweep --eps-min 0.5 --eps-max 2 --eps-steps 2 --tbal-min 0.2 --tbal-max 20 "
        "--tbal-steps 2 --log --seed 5";
    const CliResult a = run_cli(args, "sweep_a");
    const CliResult b = run_cli(args, "sweep_b");
    REQUIRE(a.exit_code == 0);
    CHECK(a.output == b.output);

    const auto lines = split_lines(a.output);
    REQUIRE(lines.size() == 5);
    CHECK(lines[0] == "eps,t_bal,t_c,power_O,sigma_O,rate_S,n,j_quasi,j_schwinger,j_total,regime");

    // identical output for any worker count
    const CliResult threaded = run_cli(args + " --threads 4", "sweep_threads");
    CHECK(threaded.output == a.output);

    // every CSV double re-parses to the in-memory bit pattern
    const auto eps_grid = gwv::geometric_grid(0.5, 2.0, 2);
    const auto tb_grid = gwv::geometric_grid(0.2, 20.0, 2);
    const auto rows = gwv::sweep(eps_grid, tb_grid, gwv::natural_units(), gwv::QuadratureConfig{});
    REQUIRE(rows.size() == 4);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        std::istringstream cells(lines[i + 1]);
        std::string cell;
        std::getline(cells, cell, ',');
        CHECK(std::strtod(cell.c_str(), nullptr) == rows[i].epsilon);
        std::getline(cells, cell, ',');
        CHECK(std::strtod(cell.c_str(), nullptr) == rows[i].t_bal);
        std::getline(cells, cell, ',');
        CHECK(std::strtod(cell.c_str(), nullptr) == rows[i].t_c);
        std::getline(cells, cell, ',');
        CHECK(std::strtod(cell.c_str(), nullptr) == rows[i].power_O);
        std::getline(cells, cell, ',');
        CHECK(std::strtod(cell.c_str(), nullptr) == rows[i].sigma_O);
        std::getline(cells, cell, ',');
        CHECK(std::strtod(cell.c_str(), nullptr) == rows[i].rate_S);
        std::getline(cells, cell, ',');
        CHECK(std::strtod(cell.c_str(), nullptr) == rows[i].carrier_density);
        std::getline(cells, cell, ',');
        CHECK(std::strtod(cell.c_str(), nullptr) == rows[i].j_quasi);
        std::getline(cells, cell, ',');
        CHECK(std::strtod(cell.c_str(), nullptr) == rows[i].j_schwinger);
        std::getline(cells, cell, ',');
        CHECK(std::strtod(cell.c_str(), nullptr) == rows[i].j_total);
        std::getline(cells, cell, ',');
        CHECK(cell == rows[i].regime);
    }
}

TEST_CASE("sweep with Monte Carlo quadrature is seed-deterministic") {
    const std::string args =
        "sweep --eps-min 1 --eps-max 1 --eps-steps 1 --tbal-min 10 --tbal-max 10 "
        "--tbal-steps 1 --quad mc --max-evals 50000 --seed 31";
    const CliResult a = run_cli(args, "sweep_mc_a");
    const CliResult b = run_cli(args, "sweep_mc_b");
    REQUIRE(a.exit_code == 0);
    CHECK(a.output == b.output);
    const CliResult c = run_cli(
        "sweep --eps-min 1 --eps-max 1 --eps-steps 1 --tbal-min 10 --tbal-max 10 "
        "--tbal-steps 1 --quad mc --max-evals 50000 --seed 32",
        "sweep_mc_c");
    CHECK(c.output != a.output);
}

TEST_CASE("degeneracy multiplies serialized outputs and adds the metadata column") {
    const CliResult per_channel = run_cli("conductivity --eps 1 --tbal 0.5", "deg1");
    const CliResult four = run_cli("conductivity --eps 1 --tbal 0.5 --degeneracy 4", "deg4");
    REQUIRE(per_channel.exit_code == 0);
    REQUIRE(four.exit_code == 0);
    const double s1 = json::parse(per_channel.output).at("sigma_O").get<double>();
    const double s4 = json::parse(four.output).at("sigma_O").get<double>();
    CHECK(s4 == doctest::Approx(4.0 * s1).epsilon(1e-14));

    const CliResult swp = run_cli(
        "sweep --eps-min 1 --eps-max 1 --eps-steps 1 --tbal-min 0.2 --tbal-max 0.2 "
        "--tbal-steps 1 --degeneracy 4",
        "deg_sweep");
    const auto lines = split_lines(swp.output);
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] ==
          "eps,t_bal,t_c,power_O,sigma_O,rate_S,n,j_quasi,j_schwinger,j_total,regime,degeneracy");
    CHECK(lines[1].ends_with(",4"));
}

TEST_CASE("config file is honored and explicit flags win") {
    const fs::path cfg = scratch_dir() / "units.cfg";
    std::ofstream(cfg) << "units=si\n";
    const CliResult si = run_cli("crossover-time --eps 1 --config \"" + cfg.string() + "\"",
                                 "cfg_si");
    REQUIRE(si.exit_code == 0);
    const gwv::UnitSystem u = gwv::si_graphene_units();
    CHECK(json::parse(si.output).at("t_c").get<double>() ==
          doctest::Approx(gwv::crossover_time(u, 1.0)).epsilon(1e-12));

    const CliResult nat = run_cli(
        "crossover-time --eps 1 --config \"" + cfg.string() + "\" --units natural", "cfg_nat");
    CHECK(json::parse(nat.output).at("t_c").get<double>() == 1.0);

    const fs::path vf_cfg = scratch_dir() / "vf.cfg";
    std::ofstream(vf_cfg) << "units=si\nv_f=8.0e5\n";
    const CliResult vf = run_cli("crossover-time --eps 1 --config \"" + vf_cfg.string() + "\"",
                                 "cfg_vf");
    const gwv::UnitSystem overridden = gwv::make_units(u.hbar, u.e_charge, 8.0e5);
    CHECK(json::parse(vf.output).at("t_c").get<double>() ==
          doctest::Approx(gwv::crossover_time(overridden, 1.0)).epsilon(1e-12));

    const fs::path bad_cfg = scratch_dir() / "bad.cfg";
    std::ofstream(bad_cfg) << "nonsense=1\n";
    CHECK(run_cli("crossover-time --eps 1 --config \"" + bad_cfg.string() + "\"", "cfg_bad")
              .exit_code == 2);
}

TEST_CASE("verify-propagator reports a second-order slope") {
    const CliResult r = run_cli("verify-propagator --px 1 --py 0.5", "prop");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.output);
    CHECK(j.at("slope").get<double>() == doctest::Approx(2.0).epsilon(0.05));
    CHECK(j.at("samples").size() == 9);

    const CliResult csv = run_cli("verify-propagator --px 1 --py 0.5 --format csv", "prop_csv");
    const auto lines = split_lines(csv.output);
    CHECK(lines[0] == "t,error");
    CHECK(lines.size() == 10);
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli("no-such-subcommand", "bad_cmd").exit_code == 2);
    CHECK(run_cli("conductivity --tbal 1", "missing_eps").exit_code == 2);
    CHECK(run_cli("", "no_cmd").exit_code == 2);
    CHECK(run_cli("conductivity --eps 1 --tbal 1 --units imperial", "bad_units").exit_code == 2);
}

TEST_CASE("output lands in --out and is byte-identical to stdout") {
    const fs::path out = scratch_dir() / "direct.json";
    const CliResult direct = run_cli("crossover-time --eps 2 --out \"" + out.string() + "\"",
                                     "to_file");
    REQUIRE(direct.exit_code == 0);
    CHECK(direct.output.empty());
    const CliResult streamed = run_cli("crossover-time --eps 2", "to_stdout");
    CHECK(read_file(out) == streamed.output);
}
