#ifndef ODDWAVES_RUNNER_HPP
#define ODDWAVES_RUNNER_HPP

#include "oddwaves/diagnostics.hpp"
#include "oddwaves/timestepper.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace oddwaves {

struct InitialTerm {
    std::string kind; ///< "sine" | "cosine"
    int wavenumber = 1;
    double amplitude = 0.0;
};

struct RandomData {
    unsigned seed = 1;
    int max_mode = 8;
    double amplitude = 0.1;
};

struct RunConfig {
    std::string run_id = "run";
    ModelParams params;
    std::size_t n_points = 256;
    double period = two_pi;
    std::vector<InitialTerm> initial_data;
    std::vector<InitialTerm> initial_data_t; ///< bidirectional f_t terms
    std::optional<RandomData> random_data;
    double t_final = 1.0;
    double output_stride = 0.1;
    int snapshot_count = 11;
    StepControl step;

    void validate() const; ///< throws config_error naming the field
    FourierGrid grid() const { return make_grid(n_points, period); }
    SpectralField build_initial(const FourierGrid& g) const;
    SpectralField build_initial_t(const FourierGrid& g) const;
};

/// Parse + validate a JSON config file; defaults are filled in.
RunConfig load_config(const std::filesystem::path& path);
RunConfig config_from_json_text(const std::string& text,
                                const std::string& origin = "<string>");
std::string config_to_json(const RunConfig& cfg);

struct RunManifest {
    std::string run_id;
    std::string termination; ///< completed | blow-up | step-limit
    double wall_seconds = 0.0;
    double final_time = 0.0;
    long accepted_steps = 0;
    std::vector<std::pair<std::string, std::string>> files; ///< name, checksum
};

/// Execute one run into out_dir (series.tsv, snapshots.tsv, config.json,
/// manifest.json). Partial output is kept on blow-up.
RunManifest run_simulation(const RunConfig& cfg,
                           const std::filesystem::path& out_dir);

struct SweepAxis {
    std::string name; ///< epsilon | alpha_o | beta | mu | amplitude
    std::vector<double> values;
};

struct SweepPoint {
    std::string dir;
    std::vector<std::pair<std::string, double>> coords;
    std::string termination; ///< also "error: ..." on per-run failure
};

struct SweepIndex {
    std::vector<SweepPoint> points;
};

/// Cartesian sweep; one subdirectory per grid point, executed concurrently
/// (worker cap: ODDWAVES_WORKERS). Points whose manifest already exists are
/// skipped, so a deleted point directory is the unit of resumption.
SweepIndex run_sweep(const RunConfig& base, const std::vector<SweepAxis>& axes,
                     const std::filesystem::path& out_dir,
                     std::size_t cap = 256);

/// Render profile_evolution.svg, sup_ux.svg, sup_uxx.svg from a run
/// directory. Output is byte-deterministic for identical inputs.
std::vector<std::filesystem::path> emit_plots(const std::filesystem::path& run_dir);

/// FNV-1a 64-bit checksum, hex-encoded (manifest file inventory).
std::string checksum_file(const std::filesystem::path& path);

std::size_t worker_cap();
std::filesystem::path output_root();

} // namespace oddwaves

#endif
