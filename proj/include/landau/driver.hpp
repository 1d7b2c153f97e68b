#pragma once

#include "landau/config.hpp"
#include "landau/diagnostics.hpp"
#include "landau/phase_state.hpp"

#include <functional>
#include <string>
#include <vector>

namespace landau {

struct RunOptions {
    /// Empty: keep everything in memory. Otherwise diagnostics.ndjson,
    /// diagnostics.csv, periodic checkpoint-<k>.lndk and final.lndk go here.
    std::string output_directory;
    /// Checkpoint to continue from; its grid and γ must match the config.
    std::string resume;
    /// Called after each record with the state it describes.
    std::function<void(const DiagnosticRecord &, const DistributionField &)> on_record;
};

struct RunResult {
    DistributionField initial; ///< f_in of the config (not the resume state)
    DistributionField final_state;
    std::vector<DiagnosticRecord> records;
    int steps = 0;
};

/// Full pipeline: initial data (or resume), stepping, diagnostics at every
/// output time. Records and files are deterministic for a given config.
RunResult run_simulation(const SimulationConfig &config, const RunOptions &options = {});

/// sup ⟨v⟩^ℓ ⟨x − tv⟩^m |f − f_free| with f_free the free streaming of
/// `initial` to f's time.
double free_deviation(const DistributionField &f, const DistributionField &initial, double ell, double m);

} // namespace landau
