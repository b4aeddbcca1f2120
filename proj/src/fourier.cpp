#include "oddwaves/fourier.hpp"
#include "oddwaves/errors.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace oddwaves {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// FFTW plan creation is not reentrant; execution on distinct buffers is.
class PlanCache {
  public:
    void execute(std::span<const complex_t> in, std::span<complex_t> out,
                 bool forward) {
        const std::size_t n = in.size();
        fftw_plan plan;
        {
            std::lock_guard<std::mutex> lock(mutex_);
            auto key = std::make_pair(n, forward);
            auto it = plans_.find(key);
            if (it == plans_.end()) {
                std::vector<complex_t> buf(n);
                plan = fftw_plan_dft_1d(
                    static_cast<int>(n),
                    reinterpret_cast<fftw_complex*>(buf.data()),
                    reinterpret_cast<fftw_complex*>(buf.data()),
                    forward ? FFTW_FORWARD : FFTW_BACKWARD,
                    FFTW_ESTIMATE | FFTW_UNALIGNED);
                plans_.emplace(key, plan);
            } else {
                plan = it->second;
            }
        }
        // out-of-place new-array execution; FFTW requires distinct buffers
        // to match the planned (in-place) layout only up to alignment,
        // which FFTW_UNALIGNED waives.
        std::vector<complex_t> tmp(in.begin(), in.end());
        fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(tmp.data()),
                         reinterpret_cast<fftw_complex*>(tmp.data()));
        std::copy(tmp.begin(), tmp.end(), out.begin());
    }

  private:
    std::mutex mutex_;
    std::map<std::pair<std::size_t, bool>, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

} // namespace

namespace detail {
void fft(std::span<const complex_t> in, std::span<complex_t> out, bool forward) {
    cache().execute(in, out, forward);
}
} // namespace detail

FourierGrid::FourierGrid(std::size_t n_points, double period)
    : n_(n_points), period_(period) {}

FourierGrid make_grid(std::size_t n_points, double period) {
    if (n_points < 8 || !is_power_of_two(n_points))
        throw config_error("grid size must be a power of two >= 8, got " +
                           std::to_string(n_points));
    if (!(period > 0.0))
        throw config_error("grid period must be positive");
    return FourierGrid(n_points, period);
}

std::vector<double> FourierGrid::points() const {
    std::vector<double> x(n_);
    const double h = period_ / static_cast<double>(n_);
    for (std::size_t j = 0; j < n_; ++j)
        x[j] = -0.5 * period_ + h * static_cast<double>(j);
    return x;
}

SpectralField SpectralField::from_physical(const FourierGrid& grid,
                                           std::span<const double> samples) {
    if (samples.size() != grid.size())
        throw usage_error("sample count does not match grid size");
    const std::size_t n = grid.size();
    std::vector<complex_t> buf(samples.begin(), samples.end());
    SpectralField f(grid);
    detail::fft(buf, f.coeffs_, true);
    // Samples start at x = -period/2, so the plain DFT picks up a phase
    // (-1)^k relative to the series coefficients.
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t j = 0; j < n; ++j) {
        const int k = grid.mode(j);
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        f.coeffs_[j] *= sign * inv_n;
    }
    return f;
}

std::vector<double> SpectralField::to_physical() const {
    const std::size_t n = size();
    std::vector<complex_t> buf(n);
    for (std::size_t j = 0; j < n; ++j) {
        const int k = grid_.mode(j);
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        buf[j] = coeffs_[j] * sign;
    }
    std::vector<complex_t> out(n);
    detail::fft(buf, out, false);
    std::vector<double> samples(n);
    for (std::size_t j = 0; j < n; ++j) samples[j] = out[j].real();
    return samples;
}

double SpectralField::max_abs_coeff() const {
    double m = 0.0;
    for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

double SpectralField::hermitian_defect() const {
    const double scale = std::max(max_abs_coeff(), 1e-300);
    double worst = 0.0;
    const int n = static_cast<int>(size());
    for (int k = 1; k < n / 2; ++k)
        worst = std::max(worst, std::abs(coeff(k) - std::conj(coeff(-k))));
    worst = std::max(worst, std::abs(coeff(0).imag()));
    worst = std::max(worst, std::abs(coeff(n / 2).imag()));
    return worst / scale;
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
    if (!(grid_ == other.grid_)) throw usage_error("grid mismatch in +");
    for (std::size_t j = 0; j < coeffs_.size(); ++j) coeffs_[j] += other.coeffs_[j];
    return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
    if (!(grid_ == other.grid_)) throw usage_error("grid mismatch in -");
    for (std::size_t j = 0; j < coeffs_.size(); ++j) coeffs_[j] -= other.coeffs_[j];
    return *this;
}

SpectralField& SpectralField::operator*=(double a) {
    for (auto& c : coeffs_) c *= a;
    return *this;
}

SpectralField make_sine(const FourierGrid& grid, int k, double amplitude) {
    SpectralField f(grid);
    if (k == 0) return f; // sin(0) == 0
    // a*sin(kx) = a/(2i) e^{ikx} - a/(2i) e^{-ikx}
    f.set_mode_pair(k, complex_t{0.0, -0.5 * amplitude});
    return f;
}

SpectralField make_cosine(const FourierGrid& grid, int k, double amplitude) {
    SpectralField f(grid);
    if (k == 0) {
        f.set_coeff(0, amplitude);
        return f;
    }
    f.set_mode_pair(k, complex_t{0.5 * amplitude, 0.0});
    return f;
}

} // namespace oddwaves
