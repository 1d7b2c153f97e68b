#pragma once

#include "landau/diagnostics.hpp"
#include "landau/phase_state.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace landau::io {

/// One record as a JSON object, keys in DiagnosticRecord field order.
nlohmann::ordered_json to_json(const DiagnosticRecord &r);
DiagnosticRecord record_from_json(const nlohmann::json &j);

/// Single NDJSON line (no trailing newline).
std::string ndjson_line(const DiagnosticRecord &r);

/// Reads an NDJSON stream; blank lines are skipped. ParseError on bad lines.
std::vector<DiagnosticRecord> read_ndjson(std::istream &in);
std::vector<DiagnosticRecord> read_ndjson_file(const std::string &path);

/// CSV with one header row; vector fields are flattened to
/// name_index columns (E_norms to E_norms_k_fixed / E_norms_k_running).
void write_csv(std::ostream &out, const std::vector<DiagnosticRecord> &records);

struct Checkpoint {
    DistributionField f;
    double gamma = -1.0;
};

/// "LNDK", u32 version 1, i64 d_x d_v n_x n_v, f64 L_x v_max gamma t, then
/// f in spatial-cell-major order. All little-endian.
std::string encode_checkpoint(const DistributionField &f, double gamma);
Checkpoint decode_checkpoint(const std::string &bytes);
void save_checkpoint(const std::string &path, const DistributionField &f, double gamma);
Checkpoint load_checkpoint(const std::string &path);

} // namespace landau::io
