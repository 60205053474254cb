#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace potkit {

// Row-major lattice indexing shared by spatial grids and frequency lattices:
// m points per axis, n axes.
struct Lattice {
    int n = 0;
    int m = 0;

    std::size_t size() const {
        std::size_t s = 1;
        for (int i = 0; i < n; ++i) s *= static_cast<std::size_t>(m);
        return s;
    }
    void unflatten(std::size_t flat, std::span<int> out) const {
        for (int i = n - 1; i >= 0; --i) {
            out[static_cast<std::size_t>(i)] = static_cast<int>(flat % static_cast<std::size_t>(m));
            flat /= static_cast<std::size_t>(m);
        }
    }
    std::size_t flatten(std::span<const int> idx) const {
        std::size_t flat = 0;
        for (int i = 0; i < n; ++i)
            flat = flat * static_cast<std::size_t>(m) +
                   static_cast<std::size_t>(((idx[static_cast<std::size_t>(i)] % m) + m) % m);
        return flat;
    }
    // Signed frequency of a lattice index: k <= m/2 ? k : k - m.
    int signed_freq(int k) const { return k <= m / 2 ? k : k - m; }
};

// Real W-valued samples on the uniform grid x_j = j/m of the unit torus,
// fiber-contiguous storage.
class GridField {
  public:
    GridField() = default;
    GridField(int n, int d, int m)
        : n_(n), d_(d), m_(m), v_(Lattice{n, m}.size() * static_cast<std::size_t>(d), 0.0) {}

    int n() const { return n_; }
    int d() const { return d_; }
    int m() const { return m_; }
    Lattice lattice() const { return {n_, m_}; }
    std::size_t points() const { return lattice().size(); }
    double spacing() const { return 1.0 / m_; }

    double at(std::size_t point, int c) const { return v_[point * static_cast<std::size_t>(d_) + static_cast<std::size_t>(c)]; }
    double& at(std::size_t point, int c) { return v_[point * static_cast<std::size_t>(d_) + static_cast<std::size_t>(c)]; }
    std::span<const double> fiber(std::size_t point) const {
        return {v_.data() + point * static_cast<std::size_t>(d_), static_cast<std::size_t>(d_)};
    }
    const std::vector<double>& data() const { return v_; }
    std::vector<double>& data() { return v_; }

    // Midpoint-rule integrals over the unit cube.
    std::vector<double> mean() const;
    double l2_norm() const;           // (integral of |fiber|^2)^{1/2}
    double linf_norm() const;
    double fiber_norm(std::size_t point) const;

    bool shape_matches(const GridField& other) const {
        return n_ == other.n_ && d_ == other.d_ && m_ == other.m_;
    }

  private:
    int n_ = 0, d_ = 0, m_ = 0;
    std::vector<double> v_;
};

// Complex Fourier coefficients w-hat(xi) on the frequency lattice
// xi_i in {-(m-1)/2..m/2}; coefficient at flat index 0 is the field mean.
class TorusField {
  public:
    TorusField() = default;
    TorusField(int n, int d, int m, bool real_flag = true)
        : n_(n), d_(d), m_(m), real_(real_flag),
          c_(Lattice{n, m}.size() * static_cast<std::size_t>(d), {0.0, 0.0}) {}

    int n() const { return n_; }
    int d() const { return d_; }
    int m() const { return m_; }
    bool real_flag() const { return real_; }
    void set_real_flag(bool f) { real_ = f; }
    Lattice lattice() const { return {n_, m_}; }
    std::size_t points() const { return lattice().size(); }

    std::complex<double> at(std::size_t point, int c) const {
        return c_[point * static_cast<std::size_t>(d_) + static_cast<std::size_t>(c)];
    }
    std::complex<double>& at(std::size_t point, int c) {
        return c_[point * static_cast<std::size_t>(d_) + static_cast<std::size_t>(c)];
    }
    const std::vector<std::complex<double>>& data() const { return c_; }
    std::vector<std::complex<double>>& data() { return c_; }

    // Coefficient lookup by signed frequency tuple.
    std::complex<double> coeff(std::span<const int> xi, int c) const {
        return at(lattice().flatten(xi), c);
    }
    std::complex<double>& coeff(std::span<const int> xi, int c) {
        return at(lattice().flatten(xi), c);
    }

    // Parseval L2 norm: (sum over xi of |w-hat(xi)|^2)^{1/2}.
    double l2_norm() const;
    std::vector<std::complex<double>> mean() const;  // coefficient at xi = 0

    // Max |w-hat(-xi) - conj(w-hat(xi))| over the lattice.
    double hermitian_defect() const;

    bool shape_matches(const TorusField& other) const {
        return n_ == other.n_ && d_ == other.d_ && m_ == other.m_;
    }

  private:
    int n_ = 0, d_ = 0, m_ = 0;
    bool real_ = true;
    std::vector<std::complex<double>> c_;
};

// Coordinates of grid point `flat`: x_i = j_i / m.
void grid_point(const Lattice& lat, std::size_t flat, std::span<double> x);

}  // namespace potkit
