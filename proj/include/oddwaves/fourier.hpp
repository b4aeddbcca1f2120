#ifndef ODDWAVES_FOURIER_HPP
#define ODDWAVES_FOURIER_HPP

#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace oddwaves {

using complex_t = std::complex<double>;

inline constexpr double two_pi = 2.0 * std::numbers::pi;

/** Uniform periodic collocation grid on [-period/2, period/2).
 *
 *  Integer modes run over {-n/2+1, ..., n/2}; the physical wavenumber of
 *  integer mode k is k * 2*pi/period. The Nyquist mode k = n/2 is kept in
 *  storage but zeroed after every multiplier application.
 */
class FourierGrid {
  public:
    FourierGrid() = default;
    explicit FourierGrid(std::size_t n_points, double period = two_pi);

    std::size_t size() const { return n_; }
    double period() const { return period_; }

    /// Integer mode of storage slot j (FFT layout).
    int mode(std::size_t j) const {
        int k = static_cast<int>(j);
        return k <= static_cast<int>(n_) / 2 ? k : k - static_cast<int>(n_);
    }
    /// Physical wavenumber of integer mode k.
    double wavenumber(int k) const { return k * (two_pi / period_); }
    int nyquist() const { return static_cast<int>(n_) / 2; }
    /// Largest integer mode kept by the 2/3 dealiasing rule.
    int dealias_cutoff() const { return static_cast<int>(n_) / 3; }

    /// Collocation points x_j = -period/2 + j*period/n.
    std::vector<double> points() const;

    friend bool operator==(const FourierGrid&, const FourierGrid&) = default;

  private:
    std::size_t n_ = 0;
    double period_ = two_pi;
};

/// Spec'd constructor name; throws config_error on bad n_points/period.
FourierGrid make_grid(std::size_t n_points, double period = two_pi);

/** A real periodic function held as Fourier-series coefficients c_k with
 *  f(x) = sum_k c_k exp(i k x * 2*pi/period).
 *
 *  Coefficients are stored in FFT layout (slot j holds mode grid.mode(j)).
 *  Reality of the field is the Hermitian symmetry c_{-k} = conj(c_k).
 */
class SpectralField {
  public:
    SpectralField() = default;
    explicit SpectralField(FourierGrid grid)
        : grid_(grid), coeffs_(grid.size(), complex_t{0.0, 0.0}) {}

    static SpectralField from_physical(const FourierGrid& grid,
                                       std::span<const double> samples);
    std::vector<double> to_physical() const;

    const FourierGrid& grid() const { return grid_; }
    std::size_t size() const { return coeffs_.size(); }

    complex_t coeff(int k) const {
        int n = static_cast<int>(size());
        if (k <= -n / 2 || k > n / 2) return {0.0, 0.0};
        return coeffs_[static_cast<std::size_t>((k + n) % n)];
    }
    void set_coeff(int k, complex_t c) {
        int n = static_cast<int>(size());
        coeffs_[static_cast<std::size_t>((k + n) % n)] = c;
    }
    /// Set c_k and c_{-k} = conj(c_k) in one call (k != 0, below Nyquist).
    void set_mode_pair(int k, complex_t c) {
        set_coeff(k, c);
        set_coeff(-k, std::conj(c));
    }

    std::vector<complex_t>& data() { return coeffs_; }
    const std::vector<complex_t>& data() const { return coeffs_; }

    double mean() const { return coeffs_.empty() ? 0.0 : coeffs_[0].real(); }
    double max_abs_coeff() const;
    /// Max relative departure from c_{-k} = conj(c_k).
    double hermitian_defect() const;

    SpectralField& operator+=(const SpectralField& other);
    SpectralField& operator-=(const SpectralField& other);
    SpectralField& operator*=(double a);
    friend SpectralField operator+(SpectralField a, const SpectralField& b) {
        return a += b;
    }
    friend SpectralField operator-(SpectralField a, const SpectralField& b) {
        return a -= b;
    }
    friend SpectralField operator*(double a, SpectralField f) { return f *= a; }

  private:
    FourierGrid grid_;
    std::vector<complex_t> coeffs_;
};

/// Field built from a list of (kind, k, amplitude) sine/cosine terms.
SpectralField make_sine(const FourierGrid& grid, int k, double amplitude);
SpectralField make_cosine(const FourierGrid& grid, int k, double amplitude);

namespace detail {
/// Forward/backward complex FFT on n samples (plan-cached, reentrant).
void fft(std::span<const complex_t> in, std::span<complex_t> out, bool forward);
} // namespace detail

} // namespace oddwaves

#endif
