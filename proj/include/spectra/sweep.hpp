#pragma once

#include <map>
#include <string>
#include <vector>

namespace spectra {

enum class SweepTarget {
    LzsmRate,
    QdPower,
    SidebandLines,
    CoherentLines,
    InversionHarmonics,
    Mollow,
    FourierBias,
    FourierAmplitude,
    FourierDouble,
};

/// Grid description driving a sweep: which quantity, over which variable
/// and range, with every other parameter pinned in `fixed` and one value
/// column per requested method.
struct SweepSpec {
    SweepTarget target = SweepTarget::LzsmRate;
    std::string variable;
    double start = 0.0;
    double stop = 0.0;
    int points = 0;
    std::map<std::string, double> fixed;
    std::vector<std::string> methods;  // empty -> target default
};

struct SweepCell {
    double value = 0.0;
    double err = 0.0;
    bool valid = true;
};

struct SweepRow {
    double variable = 0.0;
    std::vector<SweepCell> cells;  // one per column, in declared order
    std::string status = "ok";     // ok | pole | domain | outside | boundary
};

struct SweepTable {
    bool line_format = false;  // true for discrete line-spectrum targets
    std::string variable;
    std::vector<std::string> columns;
    std::vector<SweepRow> rows;
};

/// Evaluate the sweep. Deterministic for identical input: row order
/// follows the grid, and grid points may be computed concurrently (worker
/// count capped by the SPECTRA_THREADS environment variable) but are
/// always assembled in input order. Pole/domain failures are flagged per
/// row, never dropped. Invalid specs raise std::invalid_argument naming
/// the offending field.
SweepTable run_sweep(const SweepSpec& spec);

struct Extremum {
    double location = 0.0;
    double value = 0.0;
    bool is_max = false;
};

/// Interior local extrema of one column by 3-point comparison with
/// parabolic refinement. Requires at least 5 rows.
std::vector<Extremum> detect_extrema(const SweepTable& table, const std::string& column);

/// Ratio of the detrended oscillation amplitude (largest jump between
/// successive interior local extrema of the first column) of sweep a to
/// that of sweep b; both sweeps must share variable, range, and point
/// count, and b must actually oscillate.
double suppression_report(const SweepSpec& spec_a, const SweepSpec& spec_b);

/// CSV with header `variable,<m1>,<m1_err>,...,status` (line-spectrum
/// targets use `ell,frequency,weight`), 17-significant-digit floats, and
/// `\n` line endings; byte-identical for identical tables.
std::string to_csv(const SweepTable& table);

/// JSON result document (top-level "schema": 1) that round-trips through
/// a JSON parser to identical structured values.
std::string to_json(const SweepTable& table);

/// Parse a JSON sweep config (top-level "schema": 1).
SweepSpec spec_from_json(const std::string& text);

/// Serialize a spec back to config JSON.
std::string spec_to_json(const SweepSpec& spec);

}  // namespace spectra
