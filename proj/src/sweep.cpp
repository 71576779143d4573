#include "sweep.hpp"

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "io.hpp"
#include "rng.hpp"
#include "spectral.hpp"
#include "stats.hpp"

#ifdef PTKR_HAVE_OPENBLAS
extern "C" void openblas_set_num_threads(int);
extern "C" int openblas_get_num_threads(void);
#endif

namespace ptkr {

using nlohmann::json;

namespace {

bool strictly_increasing(const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i] > v[i - 1])) return false;
    return true;
}

json params_to_json(const RotorParams& p) {
    return json{{"K", p.kick_strength},         {"lambda", p.non_hermiticity},
                {"hbar_eff", p.hbar_eff},       {"m", p.mass},
                {"tau", p.period},              {"N", p.half_size},
                {"jitter", p.jitter_amplitude}, {"seed", p.seed}};
}

RotorParams params_from_json(const json& j) {
    RotorParams p;
    p.kick_strength = j.at("K").get<double>();
    p.non_hermiticity = j.at("lambda").get<double>();
    p.hbar_eff = j.at("hbar_eff").get<double>();
    p.mass = j.at("m").get<double>();
    p.period = j.at("tau").get<double>();
    p.half_size = j.at("N").get<long>();
    p.jitter_amplitude = j.at("jitter").get<double>();
    p.seed = j.at("seed").get<std::uint64_t>();
    return p;
}

// The checksum covers the record without its volatile fields, so reruns of
// the same cell produce the same digest.
std::string record_checksum(json record) {
    record.erase("crc");
    record.erase("wall_time");
    return to_hex(fnv1a64(record.dump()));
}

json cell_to_json_obj(const CellRecord& c) {
    json j{{"type", "cell"},     {"i", c.i},
           {"j", c.j},           {"K", c.kick_strength},
           {"lambda", c.non_hermiticity}, {"seed", c.seed},
           {"pt_broken", c.pt_broken},    {"phase", c.phase},
           {"failed", c.failed}, {"wall_time", c.wall_time}};
    auto put = [&](const char* key, double v) {
        if (std::isfinite(v)) j[key] = v;
    };
    put("clsr", c.clsr);
    put("neg_cos", c.neg_cos);
    put("rlsr", c.rlsr);
    put("alpha", c.alpha);
    put("lambda_fit", c.lambda_fit);
    if (c.failed) j["error"] = c.error;
    j["crc"] = "";
    j["crc"] = record_checksum(j);
    return j;
}

CellRecord cell_from_json(const json& j) {
    CellRecord c;
    c.i = j.at("i").get<int>();
    c.j = j.at("j").get<int>();
    c.kick_strength = j.at("K").get<double>();
    c.non_hermiticity = j.at("lambda").get<double>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.pt_broken = j.at("pt_broken").get<bool>();
    c.phase = j.at("phase").get<std::string>();
    c.failed = j.at("failed").get<bool>();
    c.wall_time = j.at("wall_time").get<double>();
    auto get = [&](const char* key, double& v) {
        if (j.contains(key)) v = j.at(key).get<double>();
    };
    get("clsr", c.clsr);
    get("neg_cos", c.neg_cos);
    get("rlsr", c.rlsr);
    get("alpha", c.alpha);
    get("lambda_fit", c.lambda_fit);
    if (j.contains("error")) c.error = j.at("error").get<std::string>();
    return c;
}

struct BlasThreadPin {
#ifdef PTKR_HAVE_OPENBLAS
    int saved;
    BlasThreadPin() : saved(openblas_get_num_threads()) { openblas_set_num_threads(1); }
    ~BlasThreadPin() { openblas_set_num_threads(saved); }
#else
    BlasThreadPin() {}
#endif
};

SweepResult run_cells(const GridSpec& grid, int parallelism, const std::string& checkpoint_path,
                      std::vector<CellRecord> done, bool fresh_file) {
    grid.validate();
    require(parallelism >= 1, ErrorCode::invalid_argument, "parallelism must be >= 1");

    std::vector<std::pair<int, int>> pending;
    std::vector<std::vector<bool>> have(grid.k_values.size(),
                                        std::vector<bool>(grid.lambda_values.size(), false));
    // Keep the first record per cell if a checkpoint ever holds duplicates.
    std::vector<CellRecord> unique;
    unique.reserve(done.size());
    for (CellRecord& c : done) {
        if (!have[c.i][c.j]) {
            have[c.i][c.j] = true;
            unique.push_back(std::move(c));
        }
    }
    done = std::move(unique);
    for (int i = 0; i < static_cast<int>(grid.k_values.size()); ++i)
        for (int j = 0; j < static_cast<int>(grid.lambda_values.size()); ++j)
            if (!have[i][j]) pending.emplace_back(i, j);

    std::ofstream out;
    if (!checkpoint_path.empty()) {
        out.open(checkpoint_path, fresh_file ? std::ios::out : std::ios::app);
        require(out.good(), ErrorCode::io_error, "cannot open checkpoint " + checkpoint_path);
        if (fresh_file) {
            json header{{"type", "grid"}, {"grid", json::parse(grid_to_json(grid))}};
            header["crc"] = "";
            header["crc"] = record_checksum(header);
            out << header.dump() << '\n' << std::flush;
        }
    }

    // Eigensolves inside cells stay single-threaded in BLAS so records do not
    // depend on the worker count.
    BlasThreadPin pin;

    std::vector<CellRecord> fresh(pending.size());
    std::atomic<std::size_t> next{0};
    std::mutex write_mutex;
    auto worker = [&]() {
        for (;;) {
            std::size_t idx = next.fetch_add(1);
            if (idx >= pending.size()) return;
            auto [i, j] = pending[idx];
            CellRecord cell = compute_cell(grid, i, j);
            {
                std::lock_guard<std::mutex> lock(write_mutex);
                if (out.is_open()) out << cell_to_json_obj(cell).dump() << '\n' << std::flush;
            }
            fresh[idx] = std::move(cell);
        }
    };
    if (parallelism == 1 || pending.size() <= 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        int nthreads = std::min<int>(parallelism, static_cast<int>(pending.size()));
        threads.reserve(nthreads);
        for (int t = 0; t < nthreads; ++t) threads.emplace_back(worker);
        for (std::thread& t : threads) t.join();
    }

    SweepResult result;
    result.grid = grid;
    result.cells = std::move(done);
    result.cells.insert(result.cells.end(), fresh.begin(), fresh.end());
    std::sort(result.cells.begin(), result.cells.end(), [](const CellRecord& a, const CellRecord& b) {
        return a.i != b.i ? a.i < b.i : a.j < b.j;
    });
    return result;
}

}  // namespace

void GridSpec::validate() const {
    require(!k_values.empty() && !lambda_values.empty(), ErrorCode::invalid_argument,
            "grid axes must be non-empty");
    require(strictly_increasing(k_values) && strictly_increasing(lambda_values),
            ErrorCode::invalid_argument, "grid axes must be strictly increasing");
    RotorParams probe = base;
    probe.kick_strength = k_values.front();
    probe.non_hermiticity = lambda_values.front();
    probe.validate();
    if (want_otoc) {
        require(otoc_steps >= 1, ErrorCode::invalid_argument, "otoc_steps must be >= 1");
        wavepacket.validate(probe);
    }
}

std::string classify_phase(double clsr_value, double alpha) {
    if (alpha > 1e-10) return "PT-broken-chaotic";
    if (clsr_value >= 0.535) return "PT-chaotic";
    return "PT-integrable";
}

CellRecord compute_cell(const GridSpec& grid, int i, int j) {
    CellRecord cell;
    cell.i = i;
    cell.j = j;
    cell.kick_strength = grid.k_values[i];
    cell.non_hermiticity = grid.lambda_values[j];
    cell.seed = derive_stream(grid.base_seed, static_cast<std::uint64_t>(i),
                              static_cast<std::uint64_t>(j));
    auto start = std::chrono::steady_clock::now();
    try {
        RotorParams params = grid.base;
        params.kick_strength = cell.kick_strength;
        params.non_hermiticity = cell.non_hermiticity;
        params.seed = cell.seed;
        auto jitter = sample_mass_jitter(params);
        QuasienergySpectrum spectrum = compute_spectrum(params, jitter);
        cell.alpha = spectrum.alpha;
        cell.pt_broken = pt_broken(spectrum);
        if (grid.want_clsr) {
            RatioStats stats = clsr(std::span<const std::complex<double>>(
                spectrum.epsilons.data(), spectrum.epsilons.size()));
            cell.clsr = stats.mean_r;
            cell.neg_cos = stats.mean_neg_cos;
        }
        if (grid.want_rlsr) {
            std::vector<double> re(spectrum.epsilons.size());
            for (Eigen::Index k = 0; k < spectrum.epsilons.size(); ++k)
                re[k] = spectrum.epsilons[k].real();
            cell.rlsr = rlsr(re);
        }
        if (grid.want_otoc) {
            OtocSeries series = otoc_series(params, grid.wavepacket, grid.otoc_steps);
            cell.lambda_fit = series.lambda_fit;
        }
        if (grid.want_clsr)
            cell.phase = classify_phase(cell.clsr, cell.alpha);
        else
            cell.phase = cell.pt_broken ? "PT-broken-chaotic" : "unclassified";
    } catch (const Error& e) {
        cell.failed = true;
        cell.error = e.what();
        cell.phase = "failed";
    }
    cell.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return cell;
}

SweepResult run_sweep(const GridSpec& grid, int parallelism, const std::string& checkpoint_path) {
    if (!checkpoint_path.empty())
        require(!std::filesystem::exists(checkpoint_path), ErrorCode::io_error,
                "checkpoint already exists (resume it or remove it): " + checkpoint_path);
    return run_cells(grid, parallelism, checkpoint_path, {}, true);
}

SweepResult resume(const std::string& checkpoint_path, int parallelism) {
    std::ifstream in(checkpoint_path);
    require(in.good(), ErrorCode::io_error, "cannot open checkpoint " + checkpoint_path);
    std::string line;
    std::optional<GridSpec> grid;
    std::vector<CellRecord> done;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        json record;
        try {
            record = json::parse(line);
        } catch (const json::exception& e) {
            fail(ErrorCode::bad_checkpoint, "checkpoint line " + std::to_string(lineno) +
                                                " is not valid JSON: " + e.what());
        }
        require(record.contains("crc"), ErrorCode::bad_checkpoint,
                "checkpoint line " + std::to_string(lineno) + " has no checksum");
        std::string stored = record.at("crc").get<std::string>();
        json probe = record;
        probe["crc"] = "";
        require(record_checksum(probe) == stored, ErrorCode::bad_checkpoint,
                "checkpoint line " + std::to_string(lineno) + " failed its checksum");
        std::string type = record.value("type", "");
        if (type == "grid") {
            require(!grid.has_value(), ErrorCode::bad_checkpoint, "duplicate grid header");
            grid = grid_from_json(record.at("grid").dump());
        } else if (type == "cell") {
            require(grid.has_value(), ErrorCode::bad_checkpoint, "cell record before grid header");
            CellRecord cell = cell_from_json(record);
            require(cell.i >= 0 && cell.i < static_cast<int>(grid->k_values.size()) &&
                        cell.j >= 0 && cell.j < static_cast<int>(grid->lambda_values.size()),
                    ErrorCode::bad_checkpoint, "cell record outside the grid");
            done.push_back(std::move(cell));
        } else {
            fail(ErrorCode::bad_checkpoint,
                 "unknown record type on checkpoint line " + std::to_string(lineno));
        }
    }
    require(grid.has_value(), ErrorCode::bad_checkpoint, "checkpoint has no grid header");
    return run_cells(*grid, parallelism, checkpoint_path, std::move(done), false);
}

std::vector<const CellRecord*> SweepResult::failures() const {
    std::vector<const CellRecord*> out;
    for (const CellRecord& c : cells)
        if (c.failed) out.push_back(&c);
    return out;
}

void write_sweep_csv(const SweepResult& result, std::ostream& out) {
    out << "K,lambda,clsr,neg_cos,alpha,phase\n";
    for (const CellRecord& c : result.cells) {
        out << fmt17(c.kick_strength) << ',' << fmt17(c.non_hermiticity) << ',' << fmt17(c.clsr)
            << ',' << fmt17(c.neg_cos) << ',' << fmt17(c.alpha) << ',' << c.phase << '\n';
    }
}

std::string grid_to_json(const GridSpec& grid) {
    json j{{"k_values", grid.k_values},
           {"lambda_values", grid.lambda_values},
           {"base", params_to_json(grid.base)},
           {"base_seed", grid.base_seed},
           {"diagnostics",
            json{{"clsr", grid.want_clsr}, {"rlsr", grid.want_rlsr}, {"otoc", grid.want_otoc}}},
           {"wavepacket", json{{"k0", grid.wavepacket.k0}, {"sigma", grid.wavepacket.sigma}}},
           {"otoc_steps", grid.otoc_steps}};
    return j.dump();
}

GridSpec grid_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        fail(ErrorCode::invalid_argument, std::string("bad grid JSON: ") + e.what());
    }
    GridSpec grid;
    try {
        grid.k_values = j.at("k_values").get<std::vector<double>>();
        grid.lambda_values = j.at("lambda_values").get<std::vector<double>>();
        grid.base = params_from_json(j.at("base"));
        grid.base_seed = j.at("base_seed").get<std::uint64_t>();
        const json& d = j.at("diagnostics");
        grid.want_clsr = d.value("clsr", true);
        grid.want_rlsr = d.value("rlsr", false);
        grid.want_otoc = d.value("otoc", false);
        if (j.contains("wavepacket")) {
            grid.wavepacket.k0 = j.at("wavepacket").value("k0", 0L);
            grid.wavepacket.sigma = j.at("wavepacket").value("sigma", 4.0);
        }
        grid.otoc_steps = j.value("otoc_steps", 30L);
    } catch (const json::exception& e) {
        fail(ErrorCode::invalid_argument, std::string("bad grid JSON: ") + e.what());
    }
    grid.validate();
    return grid;
}

std::string cell_to_json(const CellRecord& cell) { return cell_to_json_obj(cell).dump(); }

}  // namespace ptkr
