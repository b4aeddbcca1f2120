#include "oddwaves/runner.hpp"
#include "oddwaves/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace oddwaves {

namespace {

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> columns;
};

Table read_tsv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw io_error("missing series file " + path.string());
    Table t;
    std::string line;
    if (!std::getline(in, line))
        throw io_error("empty series file " + path.string());
    std::istringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, '\t')) t.header.push_back(cell);
    t.columns.resize(t.header.size());
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::size_t c = 0;
        while (std::getline(ls, cell, '\t') && c < t.columns.size())
            t.columns[c++].push_back(std::strtod(cell.c_str(), nullptr));
    }
    return t;
}

std::string fmt6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

struct Series {
    std::string label;
    const std::vector<double>* x;
    const std::vector<double>* y;
};

// Minimal deterministic SVG line plot: fixed canvas, %.6g coordinates.
void write_svg(const std::filesystem::path& path, const std::string& title,
               const std::string& xlabel, const std::string& ylabel,
               const std::vector<Series>& series) {
    constexpr double W = 720, H = 480, ML = 70, MR = 20, MT = 40, MB = 50;
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& s : series) {
        for (double v : *s.x) { xmin = std::min(xmin, v); xmax = std::max(xmax, v); }
        for (double v : *s.y) { ymin = std::min(ymin, v); ymax = std::max(ymax, v); }
    }
    if (!(xmax > xmin)) xmax = xmin + 1.0;
    if (!(ymax > ymin)) { ymax = ymin + 1.0; ymin -= 1.0; }
    const double pw = W - ML - MR, ph = H - MT - MB;
    auto px = [&](double x) { return ML + pw * (x - xmin) / (xmax - xmin); };
    auto py = [&](double y) { return MT + ph * (1.0 - (y - ymin) / (ymax - ymin)); };

    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
    std::ofstream out(path);
    if (!out) throw io_error("cannot write " + path.string());
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
        << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << " " << H
        << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"15\">" << title << "</text>\n";
    // axes box and ticks
    out << "<rect x=\"" << ML << "\" y=\"" << MT << "\" width=\"" << pw
        << "\" height=\"" << ph << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        const double xv = xmin + (xmax - xmin) * i / 5.0;
        const double yv = ymin + (ymax - ymin) * i / 5.0;
        out << "<text x=\"" << fmt6(px(xv)) << "\" y=\"" << H - MB + 18
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
               "font-size=\"11\">" << fmt6(xv) << "</text>\n";
        out << "<text x=\"" << ML - 6 << "\" y=\"" << fmt6(py(yv) + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
               "font-size=\"11\">" << fmt6(yv) << "</text>\n";
    }
    out << "<text x=\"" << W / 2 << "\" y=\"" << H - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"13\">" << xlabel << "</text>\n";
    out << "<text x=\"16\" y=\"" << H / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"13\" transform=\"rotate(-90 16 " << H / 2 << ")\">"
        << ylabel << "</text>\n";

    std::size_t ci = 0;
    for (const auto& s : series) {
        out << "<polyline fill=\"none\" stroke=\"" << palette[ci % 8]
            << "\" stroke-width=\"1.2\" points=\"";
        for (std::size_t j = 0; j < s.x->size(); ++j)
            out << fmt6(px((*s.x)[j])) << "," << fmt6(py((*s.y)[j])) << " ";
        out << "\"/>\n";
        if (series.size() > 1 && series.size() <= 16) {
            out << "<text x=\"" << W - MR - 6 << "\" y=\""
                << MT + 14 + 13 * static_cast<double>(ci)
                << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
                   "font-size=\"11\" fill=\"" << palette[ci % 8] << "\">"
                << s.label << "</text>\n";
        }
        ++ci;
    }
    out << "</svg>\n";
}

std::size_t column_index(const Table& t, const std::string& name) {
    for (std::size_t i = 0; i < t.header.size(); ++i)
        if (t.header[i] == name) return i;
    throw io_error("column '" + name + "' not found");
}

} // namespace

std::vector<std::filesystem::path> emit_plots(const std::filesystem::path& run_dir) {
    const Table series = read_tsv(run_dir / "series.tsv");
    const Table snaps = read_tsv(run_dir / "snapshots.tsv");

    std::vector<std::filesystem::path> out;

    // Fig. 1 analogue: profile overlay at the snapshot times.
    {
        std::vector<Series> lines;
        for (std::size_t c = 1; c < snaps.header.size(); ++c)
            lines.push_back({snaps.header[c], &snaps.columns[0], &snaps.columns[c]});
        const auto path = run_dir / "profile_evolution.svg";
        write_svg(path, "profile evolution", "x", "u(x, t)", lines);
        out.push_back(path);
    }

    // Fig. 2/3 analogues: sup-norm time series.
    const std::vector<double>& tcol = series.columns[column_index(series, "time")];
    {
        const auto path = run_dir / "sup_ux.svg";
        write_svg(path, "sup |u_x|", "t", "sup |u_x|",
                  {{"sup_ux", &tcol, &series.columns[column_index(series, "sup_ux")]}});
        out.push_back(path);
    }
    {
        const auto path = run_dir / "sup_uxx.svg";
        write_svg(path, "sup |u_xx|", "t", "sup |u_xx|",
                  {{"sup_uxx", &tcol, &series.columns[column_index(series, "sup_uxx")]}});
        out.push_back(path);
    }
    return out;
}

} // namespace oddwaves
