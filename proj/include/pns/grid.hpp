#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

#include "pns/errors.hpp"

namespace pns {

// Uniform collocation grid on the unit torus (0,1)^d, d in {2,3}.
// Retained Fourier modes are integer vectors k with |k_i| <= n/2; the
// Nyquist planes (k_i = -n/2) are always zeroed, as is the mean (k = 0).
// |Omega| = 1, so the regularization measure factor mu*|Omega| equals mu.
struct TorusGrid {
    int dim = 2;
    int n = 64;

    TorusGrid() = default;
    TorusGrid(int d, int points_per_axis) : dim(d), n(points_per_axis) {
        if (dim != 2 && dim != 3)
            throw ConfigError("TorusGrid: dim must be 2 or 3");
        if (n < 8 || n % 2 != 0)
            throw ConfigError("TorusGrid: n must be even and >= 8");
    }

    std::size_t total() const {
        std::size_t t = 1;
        for (int i = 0; i < dim; ++i) t *= static_cast<std::size_t>(n);
        return t;
    }

    // FFT storage index m in [0,n) -> signed wavenumber in [-n/2, n/2).
    int wavenumber(int m) const { return m <= n / 2 - 1 ? m : m - n; }

    bool is_nyquist_index(int m) const { return m == n / 2; }

    // Decompose a flat row-major index into per-axis storage indices.
    std::array<int, 3> unflatten(std::size_t idx) const {
        std::array<int, 3> m{0, 0, 0};
        if (dim == 2) {
            m[1] = static_cast<int>(idx % n);
            m[0] = static_cast<int>(idx / n);
        } else {
            m[2] = static_cast<int>(idx % n);
            idx /= n;
            m[1] = static_cast<int>(idx % n);
            m[0] = static_cast<int>(idx / n);
        }
        return m;
    }

    std::size_t flatten(const std::array<int, 3>& m) const {
        if (dim == 2) return static_cast<std::size_t>(m[0]) * n + m[1];
        return (static_cast<std::size_t>(m[0]) * n + m[1]) * n + m[2];
    }

    // Signed wavenumber tuple for a flat index, with Nyquist detection.
    struct Mode {
        std::array<int, 3> k{0, 0, 0};
        bool nyquist = false;
        long k2 = 0; // |k|^2
    };

    Mode mode(std::size_t idx) const {
        Mode out;
        auto m = unflatten(idx);
        for (int a = 0; a < dim; ++a) {
            if (is_nyquist_index(m[a])) out.nyquist = true;
            out.k[a] = wavenumber(m[a]);
            out.k2 += static_cast<long>(out.k[a]) * out.k[a];
        }
        return out;
    }

    TorusGrid padded(int factor = 2) const { return TorusGrid(dim, n * factor); }

    bool operator==(const TorusGrid& o) const { return dim == o.dim && n == o.n; }
};

} // namespace pns
