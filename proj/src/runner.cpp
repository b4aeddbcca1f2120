#include "oddwaves/runner.hpp"
#include "oddwaves/errors.hpp"
#include "oddwaves/operators.hpp"
#include "oddwaves/version.hpp"

#include <nlohmann/json.hpp>

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <random>
#include <thread>

namespace oddwaves {

using nlohmann::json;

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void check_term(const InitialTerm& t, int max_mode, const char* field) {
    if (t.kind != "sine" && t.kind != "cosine")
        throw config_error(std::string(field) + ": kind must be sine or cosine");
    if (t.wavenumber < 0 || t.wavenumber > max_mode)
        throw config_error(std::string(field) + ": wavenumber " +
                           std::to_string(t.wavenumber) +
                           " outside the grid band");
}

} // namespace

void RunConfig::validate() const {
    params.validate();
    step.validate();
    (void)make_grid(n_points, period); // throws with field context
    if (!(t_final > 0.0)) throw config_error("t_final must be positive");
    if (!(output_stride > 0.0))
        throw config_error("output_stride must be positive");
    if (snapshot_count < 2) throw config_error("snapshot_count must be >= 2");
    const int band = static_cast<int>(n_points) / 3;
    for (const auto& t : initial_data) check_term(t, band, "initial_data");
    for (const auto& t : initial_data_t) check_term(t, band, "initial_data_t");
    if (random_data) {
        if (random_data->max_mode < 1 || random_data->max_mode > band)
            throw config_error("random.max_mode outside the grid band");
    }
    if (params.model == ModelKind::UnidirectionalU) {
        for (const auto& t : initial_data)
            if (t.wavenumber == 0 && t.amplitude != 0.0)
                throw config_error(
                    "initial_data: unidirectional_u requires mean-zero data");
    }
}

namespace {

SpectralField build_terms(const FourierGrid& g,
                          const std::vector<InitialTerm>& terms) {
    SpectralField f(g);
    for (const auto& t : terms) {
        if (t.kind == "sine")
            f += make_sine(g, t.wavenumber, t.amplitude);
        else
            f += make_cosine(g, t.wavenumber, t.amplitude);
    }
    return f;
}

} // namespace

SpectralField RunConfig::build_initial(const FourierGrid& g) const {
    SpectralField f = build_terms(g, initial_data);
    if (random_data) {
        std::mt19937 rng(random_data->seed);
        std::uniform_real_distribution<double> unif(-1.0, 1.0);
        for (int k = 1; k <= random_data->max_mode; ++k) {
            // decaying random band: amplitude / (1 + k^2)
            const double scale = random_data->amplitude / (1.0 + k * k);
            f.set_mode_pair(k, complex_t{scale * unif(rng), scale * unif(rng)});
        }
    }
    return f;
}

SpectralField RunConfig::build_initial_t(const FourierGrid& g) const {
    return build_terms(g, initial_data_t);
}

namespace {

std::vector<InitialTerm> terms_from_json(const json& arr, const char* field) {
    std::vector<InitialTerm> out;
    if (!arr.is_array())
        throw config_error(std::string(field) + " must be an array");
    for (const auto& item : arr) {
        InitialTerm t;
        t.kind = item.value("kind", "sine");
        t.wavenumber = item.value("wavenumber", 1);
        t.amplitude = item.value("amplitude", 0.0);
        out.push_back(t);
    }
    return out;
}

} // namespace

RunConfig config_from_json_text(const std::string& text,
                                const std::string& origin) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw config_error(origin + ": " + e.what());
    }
    RunConfig cfg;
    try {
        cfg.run_id = j.value("run_id", cfg.run_id);
        if (!j.contains("model")) throw config_error("missing field 'model'");
        cfg.params.model = model_from_string(j.at("model").get<std::string>());
        if (j.contains("params")) {
            const json& p = j.at("params");
            cfg.params.epsilon = p.value("epsilon", cfg.params.epsilon);
            cfg.params.alpha_o = p.value("alpha_o", cfg.params.alpha_o);
            cfg.params.beta = p.value("beta", cfg.params.beta);
            cfg.params.mu = p.value("mu", cfg.params.mu);
        }
        if (j.contains("grid")) {
            const json& g = j.at("grid");
            cfg.n_points = g.value("n_points", cfg.n_points);
            cfg.period = g.value("period", cfg.period);
        }
        if (j.contains("initial_data"))
            cfg.initial_data = terms_from_json(j.at("initial_data"), "initial_data");
        if (j.contains("initial_data_t"))
            cfg.initial_data_t =
                terms_from_json(j.at("initial_data_t"), "initial_data_t");
        if (j.contains("random")) {
            RandomData r;
            r.seed = j.at("random").value("seed", r.seed);
            r.max_mode = j.at("random").value("max_mode", r.max_mode);
            r.amplitude = j.at("random").value("amplitude", r.amplitude);
            cfg.random_data = r;
        }
        if (!j.contains("t_final"))
            throw config_error("missing field 't_final'");
        cfg.t_final = j.at("t_final").get<double>();
        cfg.output_stride = j.value("output_stride", cfg.t_final / 100.0);
        cfg.snapshot_count = j.value("snapshot_count", cfg.snapshot_count);
        if (j.contains("step_control")) {
            const json& s = j.at("step_control");
            cfg.step.rel_tol = s.value("rel_tol", cfg.step.rel_tol);
            cfg.step.abs_tol = s.value("abs_tol", cfg.step.abs_tol);
            if (s.value("max_dt", 0.0) > 0.0) cfg.step.max_dt = s.at("max_dt");
            cfg.step.initial_dt = s.value("initial_dt", cfg.step.initial_dt);
            cfg.step.max_steps = s.value("max_steps", cfg.step.max_steps);
            cfg.step.blowup_ceiling =
                s.value("blowup_ceiling", cfg.step.blowup_ceiling);
        }
    } catch (const json::exception& e) {
        throw config_error(origin + ": " + e.what());
    }
    cfg.validate();
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open config file " + path.string());
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    return config_from_json_text(text, path.string());
}

std::string config_to_json(const RunConfig& cfg) {
    json j;
    j["run_id"] = cfg.run_id;
    j["model"] = to_string(cfg.params.model);
    j["params"] = {{"epsilon", cfg.params.epsilon},
                   {"alpha_o", cfg.params.alpha_o},
                   {"beta", cfg.params.beta},
                   {"mu", cfg.params.mu}};
    j["grid"] = {{"n_points", cfg.n_points}, {"period", cfg.period}};
    json terms = json::array();
    for (const auto& t : cfg.initial_data)
        terms.push_back({{"kind", t.kind},
                         {"wavenumber", t.wavenumber},
                         {"amplitude", t.amplitude}});
    j["initial_data"] = terms;
    json terms_t = json::array();
    for (const auto& t : cfg.initial_data_t)
        terms_t.push_back({{"kind", t.kind},
                           {"wavenumber", t.wavenumber},
                           {"amplitude", t.amplitude}});
    j["initial_data_t"] = terms_t;
    if (cfg.random_data)
        j["random"] = {{"seed", cfg.random_data->seed},
                       {"max_mode", cfg.random_data->max_mode},
                       {"amplitude", cfg.random_data->amplitude}};
    j["t_final"] = cfg.t_final;
    j["output_stride"] = cfg.output_stride;
    j["snapshot_count"] = cfg.snapshot_count;
    j["step_control"] = {{"rel_tol", cfg.step.rel_tol},
                         {"abs_tol", cfg.step.abs_tol},
                         {"max_dt", std::isfinite(cfg.step.max_dt)
                                        ? cfg.step.max_dt
                                        : 0.0},
                         {"initial_dt", cfg.step.initial_dt},
                         {"max_steps", cfg.step.max_steps},
                         {"blowup_ceiling", cfg.step.blowup_ceiling}};
    return j.dump(2) + "\n";
}

std::string checksum_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open " + path.string());
    std::uint64_t h = 14695981039346656037ull;
    char c;
    while (in.get(c)) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(h));
    return buf;
}

std::size_t worker_cap() {
    if (const char* env = std::getenv("ODDWAVES_WORKERS")) {
        const long v = std::atol(env);
        if (v > 0) return static_cast<std::size_t>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 2 : hw;
}

std::filesystem::path output_root() {
    if (const char* env = std::getenv("ODDWAVES_OUTPUT_ROOT")) return env;
    return std::filesystem::current_path();
}

namespace {

std::string reason_string(StopReason r) {
    switch (r) {
        case StopReason::Completed: return "completed";
        case StopReason::BlowUp: return "blow-up";
        case StopReason::StepLimit: return "step-limit";
    }
    return "?";
}

void write_series(const std::filesystem::path& path,
                  const std::vector<DiagnosticsRecord>& records) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot write " + path.string());
    const auto cols = diagnostics_columns();
    for (std::size_t i = 0; i < cols.size(); ++i)
        out << (i ? "\t" : "") << cols[i];
    out << "\n";
    for (const auto& r : records) {
        const auto vals = diagnostics_values(r);
        for (std::size_t i = 0; i < vals.size(); ++i)
            out << (i ? "\t" : "") << fmt(vals[i]);
        out << "\n";
    }
}

void write_snapshots(const std::filesystem::path& path, const FourierGrid& grid,
                     const std::vector<std::pair<double, std::vector<double>>>& snaps) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot write " + path.string());
    out << "x";
    for (const auto& [t, u] : snaps) out << "\tt=" << fmt(t);
    out << "\n";
    const auto x = grid.points();
    for (std::size_t j = 0; j < x.size(); ++j) {
        out << fmt(x[j]);
        for (const auto& [t, u] : snaps) out << "\t" << fmt(u[j]);
        out << "\n";
    }
}

} // namespace

RunManifest run_simulation(const RunConfig& cfg,
                           const std::filesystem::path& out_dir) {
    cfg.validate();
    const auto t_start = std::chrono::steady_clock::now();
    std::filesystem::create_directories(out_dir);

    const FourierGrid grid = cfg.grid();
    const bool bidi = is_bidirectional(cfg.params.model);

    std::vector<double> y0;
    if (bidi) {
        WaveState s0{cfg.build_initial(grid), cfg.build_initial_t(grid)};
        y0 = pack_state(s0);
    } else {
        y0 = pack_field(cfg.build_initial(grid));
    }

    std::vector<DiagnosticsRecord> records;
    std::vector<std::pair<double, std::vector<double>>> snaps;
    double next_record = 0.0;
    double next_snap = 0.0;
    const double snap_stride =
        cfg.t_final / static_cast<double>(cfg.snapshot_count - 1);

    auto diagnose = [&](double t, const std::vector<double>& y) {
        if (bidi) {
            const WaveState s = unpack_state(grid, y);
            return diagnose_state(t, s, cfg.params.beta);
        }
        return diagnose_field(t, unpack_field(grid, y));
    };

    Observer obs = [&](double t, const std::vector<double>& y) {
        if (t >= next_record - 1e-12 * cfg.t_final) {
            records.push_back(diagnose(t, y));
            while (next_record <= t + 1e-12 * cfg.t_final)
                next_record += cfg.output_stride;
        }
        if (t >= next_snap - 1e-12 * cfg.t_final) {
            std::vector<double> u(y.begin(),
                                  y.begin() + static_cast<long>(grid.size()));
            snaps.emplace_back(t, std::move(u));
            while (next_snap <= t + 1e-12 * cfg.t_final)
                next_snap += snap_stride;
        }
    };

    const RhsFn rhs = make_model_rhs(grid, cfg.params);
    const IntegrateResult res = integrate(rhs, y0, 0.0, cfg.t_final, cfg.step, obs);

    // Guarantee a final record/snapshot even when the stride skipped it.
    if (records.empty() || records.back().time < res.t)
        records.push_back(diagnose(res.t, res.y));
    if (snaps.empty() || snaps.back().first < res.t)
        snaps.emplace_back(res.t,
                           std::vector<double>(res.y.begin(),
                                               res.y.begin() +
                                                   static_cast<long>(grid.size())));

    {
        std::ofstream out(out_dir / "config.json");
        if (!out) throw io_error("cannot write config.json");
        out << config_to_json(cfg);
    }
    write_series(out_dir / "series.tsv", records);
    write_snapshots(out_dir / "snapshots.tsv", grid, snaps);

    RunManifest man;
    man.run_id = cfg.run_id;
    man.termination = reason_string(res.reason);
    man.final_time = res.t;
    man.accepted_steps = res.accepted;
    man.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
            .count();
    for (const char* name : {"config.json", "series.tsv", "snapshots.tsv"})
        man.files.emplace_back(name, checksum_file(out_dir / name));

    json m;
    m["run_id"] = man.run_id;
    m["tool_version"] = version;
    m["termination"] = man.termination;
    m["final_time"] = man.final_time;
    m["accepted_steps"] = man.accepted_steps;
    m["wall_seconds"] = man.wall_seconds;
    m["config"] = json::parse(config_to_json(cfg));
    json files = json::object();
    for (const auto& [name, sum] : man.files) files[name] = sum;
    m["files"] = files;
    std::ofstream out(out_dir / "manifest.json");
    if (!out) throw io_error("cannot write manifest.json");
    out << m.dump(2) << "\n";
    return man;
}

namespace {

RunConfig apply_point(RunConfig cfg,
                      const std::vector<std::pair<std::string, double>>& coords) {
    for (const auto& [name, v] : coords) {
        if (name == "epsilon")
            cfg.params.epsilon = v;
        else if (name == "alpha_o")
            cfg.params.alpha_o = v;
        else if (name == "beta")
            cfg.params.beta = v;
        else if (name == "mu")
            cfg.params.mu = v;
        else if (name == "amplitude") {
            for (auto& t : cfg.initial_data) t.amplitude *= v;
            for (auto& t : cfg.initial_data_t) t.amplitude *= v;
            if (cfg.random_data) cfg.random_data->amplitude *= v;
        } else {
            throw config_error("unknown sweep axis '" + name + "'");
        }
    }
    return cfg;
}

} // namespace

SweepIndex run_sweep(const RunConfig& base, const std::vector<SweepAxis>& axes,
                     const std::filesystem::path& out_dir, std::size_t cap) {
    std::size_t total = 1;
    for (const auto& ax : axes) {
        if (ax.values.empty())
            throw config_error("sweep axis '" + ax.name + "' has no values");
        total *= ax.values.size();
    }
    if (total > cap)
        throw config_error("sweep size " + std::to_string(total) +
                           " exceeds cap " + std::to_string(cap));

    // Enumerate the cartesian grid in row-major order.
    SweepIndex index;
    std::vector<std::size_t> idx(axes.size(), 0);
    for (std::size_t p = 0; p < total; ++p) {
        SweepPoint pt;
        char buf[16];
        std::snprintf(buf, sizeof buf, "point_%03zu", p);
        pt.dir = buf;
        for (std::size_t a = 0; a < axes.size(); ++a)
            pt.coords.emplace_back(axes[a].name, axes[a].values[idx[a]]);
        index.points.push_back(std::move(pt));
        for (std::size_t a = axes.size(); a-- > 0;) {
            if (++idx[a] < axes[a].values.size()) break;
            idx[a] = 0;
        }
    }

    std::filesystem::create_directories(out_dir);
    std::atomic<std::size_t> next{0};
    std::mutex mtx;
    auto worker = [&] {
        for (;;) {
            const std::size_t p = next.fetch_add(1);
            if (p >= index.points.size()) return;
            SweepPoint& pt = index.points[p];
            const auto dir = out_dir / pt.dir;
            if (std::filesystem::exists(dir / "manifest.json")) {
                std::lock_guard<std::mutex> lk(mtx);
                pt.termination = "skipped";
                continue;
            }
            try {
                RunConfig cfg = apply_point(base, pt.coords);
                cfg.run_id = base.run_id + "/" + pt.dir;
                const RunManifest man = run_simulation(cfg, dir);
                std::lock_guard<std::mutex> lk(mtx);
                pt.termination = man.termination;
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lk(mtx);
                pt.termination = std::string("error: ") + e.what();
            }
        }
    };

    const std::size_t nworkers = std::min(worker_cap(), index.points.size());
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < nworkers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    json j = json::array();
    for (const auto& pt : index.points) {
        json coords = json::object();
        for (const auto& [name, v] : pt.coords) coords[name] = v;
        j.push_back({{"dir", pt.dir},
                     {"coords", coords},
                     {"termination", pt.termination}});
    }
    std::ofstream out(out_dir / "index.json");
    if (!out) throw io_error("cannot write index.json");
    out << j.dump(2) << "\n";
    return index;
}

} // namespace oddwaves
