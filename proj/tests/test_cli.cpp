#include "doctest.h"

#include "json.hpp"

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#ifndef HYPERPART_CLI_PATH
#error "HYPERPART_CLI_PATH must point at the hyperpart binary"
#endif
#ifndef HYPERPART_PRESET_DIR
#error "HYPERPART_PRESET_DIR must point at the presets directory"
#endif

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

fs::path work_dir() {
    const fs::path dir = fs::temp_directory_path() / "hyperpart_cli_tests";
    fs::create_directories(dir);
    return dir;
}

std::string preset(const char* name) {
    return (fs::path(HYPERPART_PRESET_DIR) / name).string();
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

fs::path write_config(const char* name, const std::string& text) {
    const fs::path p = work_dir() / name;
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out << text;
    return p;
}

struct RunResult {
    int code = -1;
    std::string out;
};

// Runs the binary with the given argument string, capturing stdout.
RunResult run_cli(const std::string& args) {
    static int counter = 0;
    const fs::path outp =
        work_dir() / ("stdout_" + std::to_string(counter++) + ".txt");
    const std::string cmd = std::string("\"") + HYPERPART_CLI_PATH + "\" " +
                            args + " > \"" + outp.string() + "\" 2> \"" +
                            (work_dir() / "stderr.txt").string() + "\"";
    const int status = std::system(cmd.c_str());
    RunResult r;
    if (status != -1 && WIFEXITED(status)) r.code = WEXITSTATUS(status);
    r.out = read_file(outp);
    return r;
}

// ref-free sector/constants with the pieces swapped in per test
std::string free_config(const std::string& extra) {
    std::string s = R"({
  "mode": "free",
  "sector": {"r0": 0.9, "R0": 1.05, "theta0": 0.0, "thetaT": 0.25},
  "constants": {"c2": 0.9, "c4": 1.05},
  "sequence": {"kind": "arithmetic", "alpha": 0.0, "beta": 10.0},
  "seed": 1)";
    if (!extra.empty()) s += ",\n" + extra;
    return s + "\n}\n";
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli("--help").code == 0);
    CHECK(run_cli("").code == 2);               // a subcommand is required
    CHECK(run_cli("frobnicate").code == 2);     // unknown subcommand
    CHECK(run_cli("gen-sequence").code == 2);   // --config is required
    CHECK(run_cli("gen-sequence --config /nonexistent/nope.json").code == 2);
}

TEST_CASE("gen-sequence emits the arithmetic preset") {
    const RunResult r =
        run_cli("gen-sequence --config \"" + preset("ref-free.json") + "\"");
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["kind"] == "arithmetic");
    CHECK(j["beta"].get<double>() == 10.0);
    REQUIRE(j["prefix"].size() == 64);
    CHECK(j["prefix"][0][0].get<double>() == 10.0);
    CHECK(j["prefix"][0][1].get<double>() == 0.0);
    CHECK(j["growth_index"]["value"].get<double>() == 1.0);
    CHECK(j["growth_index"]["exact"].get<bool>() == true);
}

TEST_CASE("gen-sequence walks the factorial blocks exactly") {
    const fs::path cfg = write_config("prop61.json", R"({
  "mode": "free",
  "sector": {"r0": 0.9, "R0": 1.05, "theta0": 0.0, "thetaT": 0.25},
  "constants": {"c2": 0.9, "c4": 1.05},
  "sequence": {"kind": "prop61", "M0": 3, "cap": 100},
  "sequence_prefix": 32
}
)");
    const RunResult r = run_cli("gen-sequence --config \"" + cfg.string() + "\"");
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["kind"] == "prop61");
    CHECK(j["blocks_within_cap"].get<std::int64_t>() == 3);
    CHECK(j["prefix"][0][0].get<double>() == 1.0);
    CHECK(j["prefix"][1][0].get<double>() == 3.0);
    CHECK(j["prefix"][25][0].get<double>() == 27.0);
    CHECK(j["prefix"][26][0].get<double>() == 81.0);
    REQUIRE(j["blocks"].size() == 3);
    CHECK(j["blocks"][1]["a"].get<double>() == 3.0);
    CHECK(j["blocks"][1]["first"].get<std::int64_t>() == 2);
    CHECK(j["blocks"][1]["last"].get<std::int64_t>() == 26);
    CHECK(j["blocks"][1]["truncated"].get<bool>() == false);
    CHECK(j["blocks"][2]["a"].get<double>() == 81.0);
    CHECK(j["blocks"][2]["first"].get<std::int64_t>() == 27);
    CHECK(j["blocks"][2]["last"].get<std::int64_t>() == 100);
    CHECK(j["blocks"][2]["truncated"].get<bool>() == true);
    CHECK(j["growth_index"]["value"].get<double>() == 3.0);
    CHECK(j["growth_index"]["exact"].get<bool>() == true);
}

TEST_CASE("config validation failures exit with code 2") {
    // A multiplier of 1 never expands the blocks.
    const fs::path m0 = write_config("prop61_bad.json", R"({
  "mode": "free",
  "sector": {"r0": 0.9, "R0": 1.05, "theta0": 0.0, "thetaT": 0.25},
  "constants": {"c2": 0.9, "c4": 1.05},
  "sequence": {"kind": "prop61", "M0": 1, "cap": 100}
}
)");
    CHECK(run_cli("gen-sequence --config \"" + m0.string() + "\"").code == 2);

    const fs::path unknown = write_config(
        "unknown_key.json", free_config("  \"bogus\": 1"));
    CHECK(run_cli("gen-sequence --config \"" + unknown.string() + "\"").code == 2);

    // r0 = 2 pushes c3 = c4/(r0 c2) below 1: the constants chain is invalid.
    const fs::path badc = write_config("bad_constants.json", R"({
  "mode": "free",
  "sector": {"r0": 2.0, "R0": 2.1, "theta0": 0.0, "thetaT": 0.25},
  "constants": {"c2": 0.9, "c4": 1.05},
  "sequence": {"kind": "arithmetic", "alpha": 0.0, "beta": 10.0}
}
)");
    CHECK(run_cli("verify-geometry --config \"" + badc.string() + "\"").code == 2);
}

TEST_CASE("verify-geometry reports separation and invariants") {
    const RunResult r =
        run_cli("verify-geometry --config \"" + preset("ref-free.json") + "\"");
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["pass"].get<bool>() == true);
    CHECK(j["base"]["all_positive"].get<bool>() == true);
    CHECK(j["pairwise"]["all_positive"].get<bool>() == true);
    CHECK(j["invariants"]["sigma_ok"].get<bool>() == true);
    CHECK(j["invariants"]["ladder_monotone"].get<bool>() == true);
    CHECK(j["invariants"]["crossed"].get<bool>() == true);
    CHECK(j["invariants"]["levels_checked"].get<std::int64_t>() == 16);
}

TEST_CASE("verify-geometry is vacuous under an empty truncation") {
    const fs::path cfg = write_config(
        "trunc0.json", free_config("  \"truncation\": {\"max_levels\": 0}"));
    const RunResult r = run_cli("verify-geometry --config \"" + cfg.string() + "\"");
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["pass"].get<bool>() == true);
    CHECK(j["base"]["points"].get<std::int64_t>() == 0);
    CHECK(j["invariants"]["levels_checked"].get<std::int64_t>() == 0);
}

TEST_CASE("verify-covering scans the free sector without a gate") {
    const RunResult r = run_cli("verify-covering --config \"" +
                                preset("ref-free.json") + "\" --samples 500");
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["gate"] == "off");
    CHECK(j["pass"].get<bool>() == true);
    CHECK(j["samples"].get<std::int64_t>() == 500);
    CHECK(j["located"].get<std::int64_t>() == 500);
    CHECK(j["exhausted"].get<std::int64_t>() == 0);
    CHECK(j["max_defect"].get<double>() <=
          j["global_bound"].get<double>() * (1.0 + 1e-12));
}

TEST_CASE("verify-covering is deterministic per seed") {
    const std::string base = "verify-covering --config \"" +
                             preset("ref-free.json") + "\" --samples 100";
    const RunResult a = run_cli(base + " --seed 7");
    const RunResult b = run_cli(base + " --seed 7");
    const RunResult c = run_cli(base + " --seed 8");
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    const json ja = json::parse(a.out), jc = json::parse(c.out);
    CHECK(ja["seed"].get<std::uint64_t>() == 7);
    CHECK(jc["seed"].get<std::uint64_t>() == 8);
}

TEST_CASE("verify-covering under derived constants gates honestly") {
    // The witness climbs ~c2/|mu| per level: far too slow to cross R0 within
    // any sane budget, so sector points above the horizon count as exhausted
    // and the gate reports failure (exit 3).
    const std::string derived = R"({
  "mode": "derived",
  "sector": {"r0": 0.9, "R0": 1.05, "theta0": 0.0, "thetaT": 0.25},
  "constants": {"delta0": 0.9, "R1": 1.0},
  "sequence": {"kind": "arithmetic", "alpha": 150000.0, "beta": 150.0},
  "witness": {"gap": "auto"},
  "ladder_budget": 2000,
  "seed": 1
}
)";
    const fs::path cfg = write_config("derived_small.json", derived);
    const RunResult r =
        run_cli("verify-covering --config \"" + cfg.string() + "\" --samples 200");
    REQUIRE(r.code == 3);
    const json j = json::parse(r.out);
    CHECK(j["gate"] == "on");
    CHECK(j["pass"].get<bool>() == false);
    CHECK(j["exhausted"].get<std::int64_t>() > 0);
    CHECK(j["located"].get<std::int64_t>() + j["exhausted"].get<std::int64_t>() ==
          200);
    CHECK(j["delta0"].get<double>() == 0.9);

    // Zero samples: nothing scanned, nothing violated.
    const RunResult z =
        run_cli("verify-covering --config \"" + cfg.string() + "\" --samples 0");
    REQUIRE(z.code == 0);
    const json jz = json::parse(z.out);
    CHECK(jz["pass"].get<bool>() == true);
    CHECK(jz["located"].get<std::int64_t>() == 0);
}

TEST_CASE("build-universal writes a passing certificate") {
    const fs::path cert = work_dir() / "cert.json";
    fs::remove(cert);
    const RunResult r =
        run_cli("build-universal --config \"" + preset("e2e-2disk.json") +
                "\" --out \"" + cert.string() + "\"");
    REQUIRE(r.code == 0);
    REQUIRE(fs::exists(cert));
    CHECK_FALSE(fs::exists(cert.string() + ".tmp"));

    const json j = json::parse(read_file(cert));
    CHECK(j["disks"].get<std::int64_t>() == 2);
    CHECK(j["m1"].get<std::int64_t>() == 10);
    CHECK(j["fit"]["degree"].get<std::int64_t>() == 48);
    CHECK(j["fit"]["precision"] == "double");
    CHECK(j["target"]["delta0"].get<double>() == 0.25);  // auto from p = z
    CHECK(j["membership"]["pass_fraction"].get<double>() == 1.0);
    CHECK(j["membership"]["worst_margin"].get<double>() > 0.0);
    REQUIRE(j["per_disk_errors"].size() == 2);
    CHECK(j["per_disk_errors"][0].get<double>() < 0.25);
    CHECK(j["per_disk_errors"][1].get<double>() < 0.25);
}

TEST_CASE("build-universal honors the degree override") {
    const fs::path cert = work_dir() / "cert52.json";
    const RunResult r =
        run_cli("build-universal --config \"" + preset("e2e-2disk.json") +
                "\" --degree 52 --out \"" + cert.string() + "\"");
    REQUIRE(r.code == 0);
    const json j = json::parse(read_file(cert));
    CHECK(j["fit"]["degree"].get<std::int64_t>() == 52);
    CHECK(j["membership"]["pass_fraction"].get<double>() == 1.0);
}

TEST_CASE("build-universal fails the gate when the target outruns the grid") {
    // p = 1000 z makes the continuity term 1000 * defect: off-center grid
    // points blow the 1/s1 budget no matter how good the fit is.
    const fs::path cfg = write_config("steep.json", R"({
  "mode": "free",
  "sector": {"r0": 0.9, "R0": 0.902, "theta0": 0.0, "thetaT": 0.005},
  "constants": {"c2": 0.9, "c4": 1.05},
  "sequence": {"kind": "arithmetic", "alpha": 0.0, "beta": 1.0},
  "witness": {"gap": "auto"},
  "target": {
    "p": [0.0, 1000.0],
    "s1": 2,
    "k1": 0.5,
    "eps0": 0.25,
    "R1": 0.55,
    "delta0": "auto"
  },
  "fit": {"degree": 48, "precision": "double"},
  "grid": {"nr": 20, "ntheta": 20, "zsamples": 16, "sup_multiplier": 8},
  "seed": 1
}
)");
    const fs::path cert = work_dir() / "steep_cert.json";
    const RunResult r = run_cli("build-universal --config \"" + cfg.string() +
                                "\" --out \"" + cert.string() + "\"");
    REQUIRE(r.code == 3);
    const json j = json::parse(read_file(cert));
    CHECK(j["membership"]["pass_fraction"].get<double>() < 1.0);
    CHECK(j["membership"]["pass_fraction"].get<double>() > 0.0);
}

TEST_CASE("build-universal requires a target section") {
    CHECK(run_cli("build-universal --config \"" + preset("ref-free.json") + "\"")
              .code == 2);
}

TEST_CASE("export-svg draws disks and points deterministically") {
    const RunResult a =
        run_cli("export-svg --config \"" + preset("e2e-2disk.json") + "\"");
    REQUIRE(a.code == 0);
    CHECK(a.out.find("<svg") != std::string::npos);
    const std::size_t points_at = a.out.find("id=\"points\"");
    const std::size_t disks_at = a.out.find("id=\"disks\"");
    REQUIRE(points_at != std::string::npos);
    REQUIRE(disks_at != std::string::npos);

    const auto count_circles = [](const std::string& s, std::size_t from,
                                  std::size_t to) {
        std::size_t n = 0;
        for (std::size_t at = s.find("<circle", from);
             at != std::string::npos && at < to; at = s.find("<circle", at + 1))
            ++n;
        return n;
    };
    // One partition point: one translated disk, one dot.
    CHECK(count_circles(a.out, disks_at, points_at) == 1);
    CHECK(count_circles(a.out, points_at, a.out.size()) == 1);

    const RunResult b =
        run_cli("export-svg --config \"" + preset("e2e-2disk.json") + "\"");
    CHECK(a.out == b.out);

    // Truncated ref sector: level 0 has four points.
    const fs::path one = write_config(
        "svg_l1.json", free_config("  \"truncation\": {\"max_levels\": 1}"));
    const RunResult c = run_cli("export-svg --config \"" + one.string() + "\"");
    REQUIRE(c.code == 0);
    const std::size_t cpoints = c.out.find("id=\"points\"");
    CHECK(count_circles(c.out, c.out.find("id=\"disks\""), cpoints) == 4);
    CHECK(count_circles(c.out, cpoints, c.out.size()) == 4);

    // Empty truncation: the groups are still present, just empty.
    const fs::path zero = write_config(
        "svg_l0.json", free_config("  \"truncation\": {\"max_levels\": 0}"));
    const RunResult d = run_cli("export-svg --config \"" + zero.string() + "\"");
    REQUIRE(d.code == 0);
    CHECK(d.out.find("id=\"disks\"") != std::string::npos);
    CHECK(d.out.find("id=\"points\"") != std::string::npos);
    CHECK(count_circles(d.out, 0, d.out.size()) == 0);
}

} // TEST_SUITE
