#include "oddwaves/selftest.hpp"
#include "oddwaves/ck_series.hpp"
#include "oddwaves/diagnostics.hpp"
#include "oddwaves/operators.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <ostream>
#include <random>

namespace oddwaves {

namespace {

using ModeMap = std::map<int, complex_t>;

// Direct convolution on sparse mode lists; the slow reference path.
ModeMap conv(const ModeMap& a, const ModeMap& b) {
    ModeMap out;
    for (const auto& [m, am] : a)
        for (const auto& [q, bq] : b) out[m + q] += am * bq;
    return out;
}

ModeMap hilbert_ref(const ModeMap& a) {
    ModeMap out;
    for (const auto& [k, c] : a)
        out[k] = complex_t{0.0, -(k > 0 ? 1.0 : (k < 0 ? -1.0 : 0.0))} * c;
    return out;
}

ModeMap commutator_ref(const ModeMap& f, const ModeMap& g) {
    ModeMap out = hilbert_ref(conv(f, g));
    const ModeMap fg = conv(f, hilbert_ref(g));
    for (const auto& [k, c] : fg) out[k] -= c;
    return out;
}

SpectralField to_field(const FourierGrid& grid, const ModeMap& a) {
    SpectralField f(grid);
    for (const auto& [k, c] : a) f.set_coeff(k, c);
    return f;
}

double field_diff(const SpectralField& f, const ModeMap& ref) {
    double worst = 0.0;
    const int ny = f.grid().nyquist();
    for (int k = -ny + 1; k <= ny - 1; ++k) {
        complex_t r{};
        if (auto it = ref.find(k); it != ref.end()) r = it->second;
        worst = std::max(worst, std::abs(f.coeff(k) - r));
    }
    return worst;
}

ModeMap random_real_field(std::mt19937& rng, int max_mode) {
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    ModeMap out;
    for (int k = 1; k <= max_mode; ++k) {
        const complex_t c{unif(rng), unif(rng)};
        out[k] = c;
        out[-k] = std::conj(c);
    }
    return out;
}

} // namespace

int run_selftest(std::ostream& out) {
    int failures = 0;
    auto check = [&](const char* name, bool ok) {
        out << (ok ? "PASS " : "FAIL ") << name << "\n";
        if (!ok) ++failures;
    };

    const FourierGrid grid = make_grid(256);
    std::mt19937 rng(12345);

    // exact multiplier algebra
    {
        const SpectralField s = make_sine(grid, 1, 1.0);
        const SpectralField c = make_cosine(grid, 1, 1.0);
        check("hilbert(sin) == -cos",
              field_diff(hilbert(s), {{1, {-0.5, 0.0}}, {-1, {-0.5, 0.0}}}) < 1e-13);
        check("hilbert(cos) == sin",
              field_diff(hilbert(c), {{1, {0.0, -0.5}}, {-1, {0.0, 0.5}}}) < 1e-13);
    }

    // operator identities on random mean-zero fields
    {
        double hh = 0.0, lam = 0.0, skew = 0.0, sym = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            const SpectralField f = to_field(grid, random_real_field(rng, 12));
            const SpectralField g = to_field(grid, random_real_field(rng, 12));
            const SpectralField r = hilbert(hilbert(f)) + f;
            hh = std::max(hh, r.max_abs_coeff());
            const SpectralField d = lambda_pow(f, 1.0) - hilbert(deriv(f, 1));
            lam = std::max(lam, d.max_abs_coeff());
            const double w = grid.period() / static_cast<double>(grid.size());
            auto dot = [&](const SpectralField& a, const SpectralField& b) {
                const auto pa = a.to_physical(), pb = b.to_physical();
                double acc = 0.0;
                for (std::size_t j = 0; j < pa.size(); ++j) acc += pa[j] * pb[j];
                return acc * w;
            };
            skew = std::max(skew, std::abs(dot(f, hilbert(g)) + dot(g, hilbert(f))));
            sym = std::max(sym, std::abs(dot(f, lambda_pow(g, 1.0)) -
                                         dot(g, lambda_pow(f, 1.0))));
        }
        check("H(H f) == -f (mean-zero)", hh < 1e-12);
        check("Lambda == H d/dx", lam < 1e-12);
        check("<f, Hg> == -<g, Hf>", skew < 1e-11);
        check("<f, Lg> == <g, Lf>", sym < 1e-11);
    }

    // commutator vs direct convolution, and the smoothing symbol
    {
        double worst = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            const ModeMap f = random_real_field(rng, 8);
            const ModeMap g = random_real_field(rng, 8);
            worst = std::max(worst,
                             field_diff(commutator_h(to_field(grid, f),
                                                     to_field(grid, g)),
                                        commutator_ref(f, g)));
        }
        check("[H,f]g matches convolution oracle", worst < 1e-11);

        bool symbol_ok = true;
        for (int k = -24; k <= 24; ++k)
            for (int m = -24; m <= 24; ++m) {
                const double s = std::abs(k) * std::abs(k - m) -
                                 static_cast<double>(k) * (k - m);
                const int sk = (k > 0) - (k < 0);
                const int skm = (k - m > 0) - (k - m < 0);
                if (sk == skm && s != 0.0) symbol_ok = false;
                if (s < 0.0) symbol_ok = false;
            }
        check("smoothing symbol vanishes when sgn(k) == sgn(k-m)", symbol_ok);
    }

    // Tricomi and cubic identities on random band-limited fields
    {
        double tri = 0.0, cub = 0.0;
        for (int trial = 0; trial < 50; ++trial) {
            const SpectralField f = to_field(grid, random_real_field(rng, 16));
            tri = std::max(tri, tricomi_residual(f) /
                                    (1.0 + sup_norm_deriv(f, 0) * sup_norm_deriv(f, 0)));
            const double h1 = sobolev_norm(f, 1.0);
            cub = std::max(cub, cubic_residual(f) / (h1 * h1 * h1));
        }
        check("Tricomi identity residual < 1e-10", tri < 1e-10);
        check("cubic integral residual < 1e-10", cub < 1e-10);
    }

    // dispersion rates and Catalan numbers
    {
        ModelParams p;
        const auto [rp, rm] = dispersion_rates(1.0, p);
        check("r+(1) == 2, r-(1) == -1 at alpha_o = beta = 1",
              std::abs(rp - 2.0) < 1e-14 && std::abs(rm + 1.0) < 1e-14);
        check("catalan(4) == 14", catalan(4) == 14);
    }

    out << (failures == 0 ? "selftest: all checks passed\n"
                          : "selftest: FAILURES DETECTED\n");
    return failures;
}

} // namespace oddwaves
