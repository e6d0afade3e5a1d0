// End-to-end tests of the command-line binary: exit codes, output formats
// and the machine-readability contracts.

#define CATCH_CONFIG_MAIN
#include <catch2/catch.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#ifndef QUAQUA_CLI_PATH
#error "QUAQUA_CLI_PATH must point at the built binary"
#endif

namespace {

struct RunResult {
    int exit_code;
    std::string stdout_text;
};

RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
    const std::string cmd = env_prefix + QUAQUA_CLI_PATH " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string output;
    char buf[4096];
    while (size_t got = fread(buf, 1, sizeof buf, pipe)) output.append(buf, got);
    const int status = pclose(pipe);
    REQUIRE(WIFEXITED(status));
    return {WEXITSTATUS(status), output};
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

}  // namespace

TEST_CASE("spectrum json output") {
    const RunResult r = run_cli("spectrum --k 1 --format json");
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.stdout_text);
    REQUIRE(j["command"] == "spectrum");
    REQUIRE(j["pass"] == true);
    const auto& clusters = j["results"]["clusters"];
    REQUIRE(clusters.size() == 3);
    REQUIRE(clusters[0]["value"].get<double>() == Approx(0.125).margin(1e-10));
    REQUIRE(clusters[1]["value"].get<double>() == Approx(0.25).margin(1e-10));
    REQUIRE(clusters[2]["value"].get<double>() == Approx(0.5).margin(1e-10));
    for (const auto& c : clusters) REQUIRE(c["multiplicity"] == 1);
    REQUIRE(j["results"]["gap"].get<double>() == Approx(0.5).margin(1e-9));
}

TEST_CASE("emitted json re-serializes to itself") {
    for (const char* args : {"spectrum --k 2 --format json", "expected --k 5 --format json",
                             "blocks --k 1 --format json"}) {
        const RunResult r = run_cli(args);
        REQUIRE(r.exit_code == 0);
        const auto j = nlohmann::json::parse(r.stdout_text);
        REQUIRE(j.dump(2) + "\n" == r.stdout_text);
    }
}

TEST_CASE("spectrum of the trivial representation") {
    const RunResult r = run_cli("spectrum --k 0 --format json");
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.stdout_text);
    REQUIRE(j["results"]["clusters"].size() == 1);
    REQUIRE(j["results"]["clusters"][0]["value"].get<double>() == Approx(1.0).margin(1e-10));
    REQUIRE(j["results"]["clusters"][0]["multiplicity"] == 1);
}

TEST_CASE("spectrum csv has three columns and full multiplicity") {
    const RunResult r = run_cli("spectrum --k 2 --format csv");
    REQUIRE(r.exit_code == 0);
    const auto lines = split_lines(r.stdout_text);
    REQUIRE(lines[0] == "value,multiplicity,spread");
    int total = 0;
    for (size_t i = 1; i < lines.size(); ++i) {
        const auto first = lines[i].find(',');
        const auto second = lines[i].find(',', first + 1);
        REQUIRE(first != std::string::npos);
        REQUIRE(second != std::string::npos);
        REQUIRE(lines[i].find(',', second + 1) == std::string::npos);
        total += std::stoi(lines[i].substr(first + 1, second - first - 1));
    }
    REQUIRE(total == 5);
}

TEST_CASE("verify sweeps") {
    SECTION("small sweep passes") {
        const RunResult r = run_cli("verify --kmax 3 --format json");
        REQUIRE(r.exit_code == 0);
        const auto j = nlohmann::json::parse(r.stdout_text);
        REQUIRE(j["pass"] == true);
        REQUIRE(j["results"]["failed"] == 0);
    }
    SECTION("the default full sweep passes") {
        const RunResult r = run_cli("verify --format json");
        REQUIRE(r.exit_code == 0);
        const auto j = nlohmann::json::parse(r.stdout_text);
        REQUIRE(j["config"]["kmax"] == 40);
        REQUIRE(j["pass"] == true);
        REQUIRE(j["results"]["failed"] == 0);
    }
    SECTION("k=1 run reports the golden spectrum check") {
        const RunResult r = run_cli("verify --kmax 1");
        REQUIRE(r.exit_code == 0);
        REQUIRE(r.stdout_text.find("golden_spectrum_k1") != std::string::npos);
        REQUIRE(r.stdout_text.find("FAIL") == std::string::npos);
    }
    SECTION("kmax must be positive") {
        REQUIRE(run_cli("verify --kmax 0").exit_code == 2);
    }
    SECTION("thread cap does not change the output") {
        const RunResult a = run_cli("verify --kmax 2 --format csv", "QQ_THREADS=1 ");
        const RunResult b = run_cli("verify --kmax 2 --format csv", "QQ_THREADS=4 ");
        REQUIRE(a.exit_code == 0);
        REQUIRE(b.exit_code == 0);
        REQUIRE(a.stdout_text == b.stdout_text);
    }
}

TEST_CASE("blocks reports") {
    SECTION("k=1 dims and clean structure") {
        const RunResult r = run_cli("blocks --k 1 --format json");
        REQUIRE(r.exit_code == 0);
        const auto j = nlohmann::json::parse(r.stdout_text);
        REQUIRE(j["results"]["dims"] == nlohmann::json::array({0, 1, 1, 1}));
        REQUIRE(j["residuals"]["upper"].get<double>() <= 1e-9);
        REQUIRE(j["pass"] == true);
    }
    SECTION("k=2 dims") {
        const RunResult r = run_cli("blocks --k 2 --format json");
        const auto j = nlohmann::json::parse(r.stdout_text);
        REQUIRE(j["results"]["dims"] == nlohmann::json::array({2, 1, 1, 1}));
    }
    SECTION("swapped pair stays block triangular for the averaging operator") {
        const RunResult r = run_cli("blocks --k 3 --pair x,y --format json");
        REQUIRE(r.exit_code == 0);
        const auto j = nlohmann::json::parse(r.stdout_text);
        REQUIRE(j["residuals"]["upper"].get<double>() <= 1e-9);
        REQUIRE(j["residuals"]["zero_block"].get<double>() <= 1e-9);
        REQUIRE(j["pass"] == true);
    }
    SECTION("theta adds a theorem report") {
        const RunResult r = run_cli("blocks --k 2 --theta 1.1 --format json");
        const auto j = nlohmann::json::parse(r.stdout_text);
        REQUIRE(j["results"].contains("theorem"));
        REQUIRE(j["results"]["theorem"]["symmetric_leak"].get<double>() <= 1e-9);
    }
    SECTION("malformed pair is a usage error") {
        REQUIRE(run_cli("blocks --k 1 --pair q,w").exit_code == 2);
        REQUIRE(run_cli("blocks --k 1 --pair x,x").exit_code == 2);
    }
}

TEST_CASE("gap scan output") {
    SECTION("single row") {
        const RunResult r = run_cli("gap-scan --kmax 1 --format json");
        REQUIRE(r.exit_code == 0);
        const auto j = nlohmann::json::parse(r.stdout_text);
        REQUIRE(j["results"]["rows"].size() == 1);
        REQUIRE(j["results"]["rows"][0]["spectral_radius"].get<double>() ==
                Approx(0.5).margin(1e-9));
        REQUIRE(j["results"]["max_spectral_radius"].get<double>() == Approx(0.5).margin(1e-9));
    }
    SECTION("csv header contract and strict bound") {
        const RunResult r = run_cli("gap-scan --kmax 12 --format csv");
        REQUIRE(r.exit_code == 0);
        const auto lines = split_lines(r.stdout_text);
        REQUIRE(lines[0] == "k,spectral_radius,gap,realness_residual");
        REQUIRE(lines.size() == 13);
        for (size_t i = 1; i < lines.size(); ++i) {
            const auto first = lines[i].find(',');
            const auto second = lines[i].find(',', first + 1);
            const double radius = std::stod(lines[i].substr(first + 1, second - first - 1));
            REQUIRE(radius < 1.0);
        }
    }
    SECTION("kmax is required") { REQUIRE(run_cli("gap-scan").exit_code == 2); }
}

TEST_CASE("moments") {
    SECTION("exact small case") {
        const RunResult r = run_cli("moments --k 2 --N 3 --exact --format json");
        REQUIRE(r.exit_code == 0);
        const auto j = nlohmann::json::parse(r.stdout_text);
        REQUIRE(j["results"]["residual"].get<double>() <= 1e-10);
        REQUIRE(j["results"]["word_count"] == 512);
        REQUIRE(j["pass"] == true);
    }
    SECTION("oversized exact enumeration is refused") {
        REQUIRE(run_cli("moments --k 2 --N 10 --exact").exit_code == 1);
    }
    SECTION("sampled runs are reproducible") {
        const std::string args = "moments --k 2 --N 6 --samples 20000 --seed 7 --format json";
        const RunResult a = run_cli(args);
        const RunResult b = run_cli(args);
        REQUIRE(a.exit_code == 0);
        REQUIRE(a.stdout_text == b.stdout_text);
        const auto j = nlohmann::json::parse(a.stdout_text);
        REQUIRE(j["results"]["residual"].get<double>() <= 5e-2);
        REQUIRE(j["config"]["seed"] == 7);
    }
    SECTION("mode must be specified unambiguously") {
        REQUIRE(run_cli("moments --k 2 --N 3").exit_code == 2);
        REQUIRE(run_cli("moments --k 2 --N 3 --exact --samples 10").exit_code == 2);
    }
}

TEST_CASE("expected") {
    SECTION("k=1 all candidates agree") {
        const RunResult r = run_cli("expected --k 1 --format json");
        REQUIRE(r.exit_code == 0);
        const auto j = nlohmann::json::parse(r.stdout_text);
        REQUIRE(j["results"]["d"] == 1);
        REQUIRE(j["results"]["q"] == 1);
        REQUIRE(j["results"]["div5_floor_formula"] == 1);
        REQUIRE(j["results"]["q_matches_div5_formula"] == true);
        REQUIRE(j["results"]["q_matches_mod6_count"] == true);
    }
    SECTION("k=5 flags the disagreement") {
        const RunResult r = run_cli("expected --k 5 --format json");
        const auto j = nlohmann::json::parse(r.stdout_text);
        REQUIRE(j["results"]["q"] == 2);
        REQUIRE(j["results"]["div5_floor_formula"] == 1);
        REQUIRE(j["results"]["q_matches_div5_formula"] == false);
        REQUIRE(j["results"]["q_matches_mod6_count"] == true);
    }
    SECTION("csv shape") {
        const RunResult r = run_cli("expected --k 5 --format csv");
        const auto lines = split_lines(r.stdout_text);
        REQUIRE(lines[0] == "k,d,q,div5_floor,mod6_count,q_eq_div5,q_eq_mod6");
        REQUIRE(lines[1] == "5,3,2,1,2,0,1");
    }
}

TEST_CASE("usage errors") {
    REQUIRE(run_cli("").exit_code == 2);
    REQUIRE(run_cli("no-such-command").exit_code == 2);
    REQUIRE(run_cli("spectrum").exit_code == 2);             // --k is required
    REQUIRE(run_cli("spectrum --k -3").exit_code == 2);
    REQUIRE(run_cli("spectrum --k 1 --format yaml").exit_code == 2);
    REQUIRE(run_cli("expected --k 0").exit_code == 2);
    REQUIRE(run_cli("spectrum --k 500").exit_code == 2);     // beyond the hard cap
    REQUIRE(run_cli("--help").exit_code == 0);
}

TEST_CASE("output file writing") {
    const std::string path = "/tmp/quaqua_cli_test_out.json";
    std::remove(path.c_str());
    const RunResult r = run_cli("spectrum --k 1 --format json --out " + path);
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.stdout_text.empty());
    std::ifstream in(path);
    REQUIRE(in.good());
    const auto j = nlohmann::json::parse(in);
    REQUIRE(j["results"]["clusters"].size() == 3);
    std::remove(path.c_str());
}
