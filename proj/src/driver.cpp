#include "landau/driver.hpp"

#include "landau/errors.hpp"
#include "landau/io.hpp"
#include "landau/stepper.hpp"
#include "landau/transport.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

namespace landau {

RunResult run_simulation(const SimulationConfig &config, const RunOptions &options)
{
    RunResult result;
    result.initial = initial_data(config);
    DistributionField start = result.initial;
    if (!options.resume.empty()) {
        io::Checkpoint cp = io::load_checkpoint(options.resume);
        if (!(cp.f.grid == start.grid))
            throw ConfigInvalid("resume: checkpoint grid differs from the configured grid");
        if (cp.gamma != config.gamma)
            throw ConfigInvalid("resume: checkpoint gamma differs from the configured gamma");
        start = std::move(cp.f);
    }

    std::ofstream ndjson;
    const bool to_disk = !options.output_directory.empty();
    std::filesystem::path dir(options.output_directory);
    if (to_disk) {
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec)
            throw IoError("cannot create " + dir.string() + ": " + ec.message());
        ndjson.open(dir / "diagnostics.ndjson", std::ios::binary | std::ios::trunc);
        if (!ndjson)
            throw IoError("cannot write " + (dir / "diagnostics.ndjson").string());
    }

    DiagnosticsRecorder recorder(result.initial, config.diagnostics());
    const KernelParams kernel = config.kernel();
    long next_checkpoint = 1;
    auto observer = [&](const RunProgress &p) {
        DiagnosticRecord r = recorder.record(p.f, p.clipped_mass);
        result.records.push_back(r);
        result.steps = p.steps;
        if (to_disk) {
            ndjson << io::ndjson_line(r) << '\n';
            ndjson.flush();
            if (config.checkpoint_every > 0.0 &&
                p.f.time >= next_checkpoint * config.checkpoint_every - 1e-9 * config.checkpoint_every) {
                next_checkpoint = static_cast<long>(std::floor(p.f.time / config.checkpoint_every + 1e-9));
                io::save_checkpoint((dir / ("checkpoint-" + std::to_string(next_checkpoint) + ".lndk")).string(),
                                    p.f, config.gamma);
                ++next_checkpoint;
            }
        }
        if (options.on_record)
            options.on_record(r, p.f);
    };
    if (config.checkpoint_every > 0.0)
        next_checkpoint = static_cast<long>(std::floor(start.time / config.checkpoint_every + 1e-9)) + 1;

    result.final_state = run(start, kernel, config.control(), observer);

    if (to_disk) {
        io::save_checkpoint((dir / "final.lndk").string(), result.final_state, config.gamma);
        std::ofstream csv(dir / "diagnostics.csv", std::ios::binary | std::ios::trunc);
        if (!csv)
            throw IoError("cannot write " + (dir / "diagnostics.csv").string());
        io::write_csv(csv, result.records);
    }
    return result;
}

double free_deviation(const DistributionField &f, const DistributionField &initial, double ell, double m)
{
    if (!(f.grid == initial.grid))
        throw GridMismatch("free_deviation: grids differ");
    const DistributionField free = free_solution(initial, f.time - initial.time);
    const Grid &g = f.grid;
    const std::size_t nv = g.velocity_cells();
    double sup = 0.0;
    for (std::size_t ix = 0; ix < g.spatial_cells(); ++ix) {
        const auto x = g.position(ix);
        for (std::size_t iv = 0; iv < nv; ++iv) {
            const auto v = g.velocity(iv);
            const auto y = x_minus_tv(f.time, std::span<const double>(x.data(), g.d_x),
                                      std::span<const double>(v.data(), g.d_v), g.L_x);
            const double w = std::pow(japanese(std::span<const double>(v.data(), g.d_v)), ell) *
                             std::pow(japanese(std::span<const double>(y.data(), g.d_x)), m);
            sup = std::max(sup, w * std::abs(f.values[ix * nv + iv] - free.values[ix * nv + iv]));
        }
    }
    return sup;
}

} // namespace landau
