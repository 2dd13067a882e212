#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#ifndef POUW_CLI_BIN
#error "POUW_CLI_BIN must point at the CLI binary"
#endif

namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("pouw_cli_test_" + std::to_string(::getpid()) + "_" +
                                            std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    static inline int counter = 0;
};

int run_cli(const std::string& args) {
    const std::string cmd = std::string(POUW_CLI_BIN) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) out.push_back(field);
    return out;
}

double csv_value(const std::string& csv, const std::string& column, std::size_t row = 0) {
    std::stringstream ss(csv);
    std::string line;
    REQUIRE(std::getline(ss, line));
    const auto header = split_csv_line(line);
    std::size_t col = header.size();
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == column) col = i;
    REQUIRE(col < header.size());
    for (std::size_t r = 0;; ++r) {
        REQUIRE(std::getline(ss, line));
        if (r == row) return std::stod(split_csv_line(line)[col]);
    }
}

const char* kAnalyzeConfig = R"({
  "network": {"lambda1": 0.5, "p0": 0.005, "q0": 0.001},
  "improvement": {"s1": 1.0, "s2": 1.0001},
  "reward": {"kind": "power", "c": 1.2, "e": 0.5, "b": 1.0, "s_m": 1.0001}
})";

}  // namespace

TEST_CASE("analyze emits the published point") {
    TempDir dir;
    write_file(dir.path / "cfg.json", kAnalyzeConfig);
    const auto out = dir.path / "report.csv";
    REQUIRE(run_cli("analyze --config " + (dir.path / "cfg.json").string() + " --out " +
                    out.string()) == 0);
    const std::string csv = read_file(out);
    CHECK(csv_value(csv, "binding_ratio") == Catch::Approx(0.4412).margin(5e-4));
    CHECK(csv_value(csv, "mu") == Catch::Approx(2.2663).margin(5e-3));
    CHECK(csv_value(csv, "principle_holds") == 1.0);
    CHECK(csv_value(csv, "eta_gt_half") == 1.0);
}

TEST_CASE("analyze at low eta reports an insecure point") {
    TempDir dir;
    write_file(dir.path / "cfg.json", R"({
      "network": {"lambda1": 0.3, "p0": 0.0005, "q0": 0.001},
      "improvement": {"s1": 1.0, "s2": 1.5},
      "reward": {"kind": "constant", "b": 1.0, "s_m": 2.0}
    })");
    const auto out = dir.path / "report.csv";
    REQUIRE(run_cli("analyze --config " + (dir.path / "cfg.json").string() + " --out " +
                    out.string()) == 0);
    const std::string csv = read_file(out);
    CHECK(csv_value(csv, "secure_selfish") == 0.0);
    CHECK(csv_value(csv, "eta_gt_half") == 0.0);
}

TEST_CASE("malformed config exits 2 and writes nothing") {
    TempDir dir;
    write_file(dir.path / "bad.json", R"({"network": {"lambda1": 1.7, "p0": 0.005, "q0": 0.001},
      "improvement": {"s1": 1.0, "s2": 1.5},
      "reward": {"kind": "constant", "b": 1.0, "s_m": 2.0}})");
    const auto out = dir.path / "never.csv";
    CHECK(run_cli("analyze --config " + (dir.path / "bad.json").string() + " --out " +
                  out.string()) == 2);
    CHECK_FALSE(fs::exists(out));

    write_file(dir.path / "trash.json", "not json at all {");
    CHECK(run_cli("analyze --config " + (dir.path / "trash.json").string() + " --out " +
                  out.string()) == 2);
    CHECK_FALSE(fs::exists(out));

    CHECK(run_cli("analyze --out " + out.string()) == 2);  // missing --config
}

TEST_CASE("simulate validates rounds and emits one row per seed") {
    TempDir dir;
    write_file(dir.path / "cfg.json", R"({
      "network": {"lambda1": 0.45, "p0": 0.005, "q0": 0.001},
      "improvement": {"s1": 1.0, "s2": 1.5},
      "reward": {"kind": "constant", "b": 1.0, "s_m": 2.0},
      "sim": {"profile": "fork_steal", "rounds": 50000, "mode": "chain_exact", "seeds": [1, 2]}
    })");
    const auto out = dir.path / "sim.csv";
    REQUIRE(run_cli("simulate --config " + (dir.path / "cfg.json").string() + " --out " +
                    out.string()) == 0);
    const std::string csv = read_file(out);
    const auto r0 = csv_value(csv, "sim_reward1_mean", 0);
    const auto r1 = csv_value(csv, "sim_reward1_mean", 1);
    CHECK(r0 != r1);  // distinct seeds, distinct estimates
    CHECK(csv_value(csv, "analytic_reward1", 0) == csv_value(csv, "analytic_reward1", 1));

    CHECK(run_cli("simulate --config " + (dir.path / "cfg.json").string() + " --out " +
                  out.string() + " --rounds 0") == 2);

    // occupancy columns sum to one
    double occ_sum = 0.0;
    for (int id = 0; id <= 21; ++id) occ_sum += csv_value(csv, "occ_" + std::to_string(id));
    occ_sum += csv_value(csv, "occ_other");
    CHECK(occ_sum == Catch::Approx(1.0).margin(1e-9));

    // unwritable output path is a runtime failure, not a config one
    CHECK(run_cli("simulate --config " + (dir.path / "cfg.json").string() +
                  " --out /nonexistent_dir_xyz/out.csv") == 1);
}

TEST_CASE("sweep output is deterministic and ordered") {
    TempDir dir;
    write_file(dir.path / "cfg.json", R"({
      "improvement": {"s1": 1.0, "s2": 1.5},
      "reward": {"kind": "constant", "b": 1.0, "s_m": 2.0},
      "network": {"lambda1": 0.3, "p0": 0.005, "q0": 0.001},
      "sweep": {"lambda_s": {"from": 0.05, "to": 0.5, "step": 0.05},
                "eta": {"from": 0.6, "to": 0.9, "step": 0.1},
                "eta_budget": {"mode": "fix_sum", "value": 0.006},
                "with_sim": true},
      "sim": {"rounds": 20000, "seeds": [42]}
    })");
    const auto out1 = dir.path / "sweep1.csv";
    const auto out2 = dir.path / "sweep2.csv";
    const std::string base = "sweep --config " + (dir.path / "cfg.json").string();
    REQUIRE(run_cli(base + " --out " + out1.string() + " --jobs 3") == 0);
    REQUIRE(run_cli(base + " --out " + out2.string() + " --jobs 1") == 0);
    const std::string a = read_file(out1);
    CHECK(a == read_file(out2));  // byte-identical across runs and job counts

    // 10 lambda points x 4 eta points, plus header
    std::size_t lines = 0;
    for (char ch : a)
        if (ch == '\n') ++lines;
    CHECK(lines == 41);
}

TEST_CASE("region emits nested boundaries and reference curves") {
    TempDir dir;
    write_file(dir.path / "cfg.json", R"({
      "improvement": {"s1": 1.0, "s2": 1.5},
      "rewards": [{"kind": "constant", "b": 1.0, "s_m": 2.0},
                  {"kind": "linear", "k": 1.0, "b": 1.0, "s_m": 2.0}],
      "region": {"eta": {"from": 0.6, "to": 0.8, "step": 0.1},
                 "lambda_step": 0.01,
                 "eta_budget": {"mode": "fix_sum", "value": 0.006}}
    })");
    const auto out = dir.path / "region.csv";
    REQUIRE(run_cli("region --config " + (dir.path / "cfg.json").string() + " --out " +
                    out.string()) == 0);
    const std::string csv = read_file(out);
    for (std::size_t row = 0; row < 3; ++row) {
        CHECK(csv_value(csv, "selfish_lambda_max_0", row) <=
              csv_value(csv, "selfish_lambda_max_1", row));
        CHECK(csv_value(csv, "malice_lambda_max", row) < csv_value(csv, "prop1_bound", row));
    }
}

TEST_CASE("json format emits a parseable array") {
    TempDir dir;
    write_file(dir.path / "cfg.json", kAnalyzeConfig);
    const auto out = dir.path / "report.json";
    REQUIRE(run_cli("analyze --config " + (dir.path / "cfg.json").string() + " --out " +
                    out.string() + " --format json") == 0);
    const std::string text = read_file(out);
    CHECK(text.find("\"binding_ratio\"") != std::string::npos);
    CHECK(text.front() == '[');
}
