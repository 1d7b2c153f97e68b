#include "landau/config.hpp"
#include "landau/driver.hpp"
#include "landau/errors.hpp"
#include "landau/io.hpp"
#include "landau/reports.hpp"

#include <doctest.h>

#include <filesystem>
#include <sstream>
#include <string>

using namespace landau;

namespace {

const char *minimal = R"({
  "gamma": -1.0,
  "dims": {"d_x": 1, "d_v": 2},
  "grid": {"n_x": 96, "n_v": 32, "L_x": 48.0, "v_max": 4.0},
  "time": {"t_final": 2.0},
  "initial_data": {"kind": "gaussian", "parameters": {"s_x": 2.0, "s_v": 0.6}}
})";

std::string with(const std::string &from, const std::string &to)
{
    std::string s = minimal;
    s.replace(s.find(from), from.size(), to);
    return s;
}

DiagnosticRecord sample_record()
{
    DiagnosticRecord r;
    r.t = 1.5;
    r.mass = 0.25;
    r.momentum = {1e-17, -2.0, 0.0};
    r.energy = 3.0;
    r.E_norms = {{1.0, 2.0}, {3.0, 4.0}};
    r.Z_norms = {5.0, 6.0};
    r.h_value = -0.125;
    r.clipped_mass = 1e-20;
    return r;
}

} // namespace

TEST_CASE("minimal config fills defaults")
{
    const SimulationConfig c = parse_config_text(minimal);
    CHECK(c.cfl_safety == 0.5);
    CHECK(c.K_diag == 2);
    CHECK(c.n_x == 96);
    CHECK(c.fit_window[0] == 5.0);
    CHECK(c.fit_window[1] == doctest::Approx(1.6));
    CHECK_NOTHROW(validate(c));
}

TEST_CASE("config gates")
{
    try {
        validate(parse_config_text(with("\"gamma\": -1.0", "\"gamma\": -2.0")));
        FAIL("expected ConfigInvalid");
    } catch (const ConfigInvalid &e) {
        CHECK(std::string(e.what()).find("gamma must lie in (-2,0)") != std::string::npos);
    }
    try {
        validate(parse_config_text(with("\"t_final\": 2.0", "\"t_final\": 20.0")));
        FAIL("expected ConfigInvalid");
    } catch (const ConfigInvalid &e) {
        CHECK(std::string(e.what()).find("no-wrap") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config_text(with("\"gamma\": -1.0", "\"gamma\": -1.0, \"colour\": 1")), ConfigInvalid);
    CHECK_THROWS_AS(parse_config_text(with("\"kind\": \"gaussian\"", "\"kind\": \"plaid\"")), ConfigInvalid);
}

TEST_CASE("malformed JSON reports its line")
{
    try {
        parse_config_text("{\n  \"gamma\": -1.0,\n  \"dims\": {,\n}");
        FAIL("expected ParseError");
    } catch (const ParseError &e) {
        CHECK(e.line() == 3);
    }
}

TEST_CASE("checkpoint round trip is byte identical")
{
    const SimulationConfig c = parse_config_text(minimal);
    DistributionField f = initial_data(c);
    f.time = 0.75;
    const std::string bytes = io::encode_checkpoint(f, c.gamma);
    CHECK(bytes.substr(0, 4) == "LNDK");
    const io::Checkpoint back = io::decode_checkpoint(bytes);
    CHECK(back.gamma == c.gamma);
    CHECK(back.f.time == 0.75);
    CHECK(back.f.grid == f.grid);
    CHECK(back.f.values == f.values);
    CHECK(io::encode_checkpoint(back.f, back.gamma) == bytes);
    CHECK_THROWS_AS(io::decode_checkpoint(bytes.substr(0, bytes.size() - 3)), IoError);
    CHECK_THROWS_AS(io::decode_checkpoint("NOPE" + bytes.substr(4)), IoError);
}

TEST_CASE("NDJSON round trip")
{
    const DiagnosticRecord r = sample_record();
    const std::string line = io::ndjson_line(r);
    CHECK(line.find('\n') == std::string::npos);
    std::istringstream in(line + "\n\n" + line + "\n");
    const auto back = io::read_ndjson(in);
    REQUIRE(back.size() == 2);
    CHECK(io::ndjson_line(back[1]) == line);

    std::istringstream bad(line + "\n{oops\n");
    try {
        io::read_ndjson(bad);
        FAIL("expected ParseError");
    } catch (const ParseError &e) {
        CHECK(e.line() == 2);
    }
}

TEST_CASE("CSV flattening")
{
    std::ostringstream out;
    io::write_csv(out, {sample_record()});
    const std::string text = out.str();
    const std::string header = text.substr(0, text.find('\n'));
    for (const char *col : {"t", "momentum_1", "E_norms_1_running", "Z_norms_0", "clipped_mass"})
        CHECK(header.find(col) != std::string::npos);
    CHECK(std::count(text.begin(), text.end(), '\n') == 2);
}

TEST_CASE("run writes its artifacts")
{
    SimulationConfig c = parse_config_text(minimal);
    c.t_final = 1.0;
    c.dt_max = 0.5;
    c.output_every = 0.5;
    c.checkpoint_every = 0.5;
    c.K_diag = 0;
    const auto dir = std::filesystem::temp_directory_path() / "landau-unit-run";
    std::filesystem::remove_all(dir);
    RunOptions opts;
    opts.output_directory = dir.string();
    const RunResult r = run_simulation(c, opts);
    CHECK(r.records.size() == 3);
    for (const char *name : {"diagnostics.ndjson", "diagnostics.csv", "final.lndk", "checkpoint-1.lndk"})
        CHECK(std::filesystem::exists(dir / name));
    const auto streamed = io::read_ndjson_file((dir / "diagnostics.ndjson").string());
    REQUIRE(streamed.size() == r.records.size());
    CHECK(io::ndjson_line(streamed.back()) == io::ndjson_line(r.records.back()));

    // resuming from the half-way checkpoint reproduces the final state
    RunOptions again;
    again.resume = (dir / "checkpoint-1.lndk").string();
    const RunResult resumed = run_simulation(c, again);
    CHECK(resumed.final_state.values == r.final_state.values);
    std::filesystem::remove_all(dir);
}

TEST_CASE("fit report on free streaming in one space dimension")
{
    SimulationConfig c = parse_config_text(R"({
      "gamma": -1.0,
      "dims": {"d_x": 1, "d_v": 1},
      "grid": {"n_x": 1024, "n_v": 512, "L_x": 640.0, "v_max": 6.0},
      "time": {"t_final": 50.0, "output_every": 1.0},
      "solver": {"collisions": false},
      "initial_data": {"kind": "gaussian", "parameters": {"s_x": 1.0, "s_v": 1.0}},
      "diagnostics": {"K_diag": 0, "fit_window": [5, 50], "coefficients": false}
    })");
    validate(c);
    const RunResult r = run_simulation(c);
    const auto checks = fit_report(c, r.records);
    bool found = false;
    for (const auto &ch : checks)
        if (ch.name.find("rho") != std::string::npos) {
            found = true;
            CHECK(ch.pass);
            CHECK(ch.value == doctest::Approx(-1.0).epsilon(0.1));
        }
    CHECK(found);
}
