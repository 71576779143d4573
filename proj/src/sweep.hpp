#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "model.hpp"
#include "otoc.hpp"

namespace ptkr {

/// Phase-diagram grid over (K, lambda). Each cell overrides base.K and
/// base.lambda and derives its own RNG stream from (base_seed, i, j), so
/// results are a pure function of the grid regardless of scheduling.
struct GridSpec {
    std::vector<double> k_values;
    std::vector<double> lambda_values;
    RotorParams base;
    std::uint64_t base_seed = 0;

    bool want_clsr = true;
    bool want_rlsr = false;
    bool want_otoc = false;
    WavepacketSpec wavepacket;
    long otoc_steps = 30;

    void validate() const;
};

struct CellRecord {
    int i = 0;  // index into k_values
    int j = 0;  // index into lambda_values
    double kick_strength = 0.0;
    double non_hermiticity = 0.0;
    std::uint64_t seed = 0;

    double clsr = std::numeric_limits<double>::quiet_NaN();
    double neg_cos = std::numeric_limits<double>::quiet_NaN();
    double rlsr = std::numeric_limits<double>::quiet_NaN();
    double alpha = std::numeric_limits<double>::quiet_NaN();
    double lambda_fit = std::numeric_limits<double>::quiet_NaN();
    bool pt_broken = false;
    std::string phase;

    bool failed = false;
    std::string error;
    double wall_time = 0.0;
};

struct SweepResult {
    GridSpec grid;
    std::vector<CellRecord> cells;  // sorted by (i, j)

    std::vector<const CellRecord*> failures() const;
};

/// alpha > 1e-10 is PT-broken; otherwise the CLSR decides, with 0.535 (the
/// midpoint of the Poisson 0.50 and GOE 0.57 landmarks) separating
/// integrable from chaotic.
std::string classify_phase(double clsr_value, double alpha);

CellRecord compute_cell(const GridSpec& grid, int i, int j);

/// Runs every cell, appending a checksummed JSON-lines record per cell to
/// checkpoint_path (first line carries the grid). Refuses to touch an
/// existing checkpoint unless resuming.
SweepResult run_sweep(const GridSpec& grid, int parallelism, const std::string& checkpoint_path);

/// Completes the remaining cells of an interrupted sweep. The grid is read
/// back from the checkpoint header; corrupt lines are an error, never a
/// silent restart.
SweepResult resume(const std::string& checkpoint_path, int parallelism);

/// CSV projection: K, lambda, clsr, neg_cos, alpha, phase.
void write_sweep_csv(const SweepResult& result, std::ostream& out);

/// Serialization used by the checkpoint and the C API.
std::string grid_to_json(const GridSpec& grid);
GridSpec grid_from_json(const std::string& text);
std::string cell_to_json(const CellRecord& cell);  // checksummed, single line

}  // namespace ptkr
