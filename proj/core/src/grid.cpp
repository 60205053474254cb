#include "potkit/grid.hpp"

#include <cmath>

namespace potkit {

std::vector<double> GridField::mean() const {
    std::vector<double> acc(static_cast<std::size_t>(d_), 0.0);
    const std::size_t np = points();
    for (std::size_t p = 0; p < np; ++p)
        for (int c = 0; c < d_; ++c) acc[static_cast<std::size_t>(c)] += at(p, c);
    for (auto& v : acc) v /= static_cast<double>(np);
    return acc;
}

double GridField::fiber_norm(std::size_t point) const {
    double s = 0.0;
    for (int c = 0; c < d_; ++c) s += at(point, c) * at(point, c);
    return std::sqrt(s);
}

double GridField::l2_norm() const {
    double s = 0.0;
    const std::size_t np = points();
    for (std::size_t p = 0; p < np; ++p)
        for (int c = 0; c < d_; ++c) s += at(p, c) * at(p, c);
    return std::sqrt(s / static_cast<double>(np));
}

double GridField::linf_norm() const {
    double s = 0.0;
    const std::size_t np = points();
    for (std::size_t p = 0; p < np; ++p) s = std::max(s, fiber_norm(p));
    return s;
}

double TorusField::l2_norm() const {
    double s = 0.0;
    for (const auto& z : c_) s += std::norm(z);
    return std::sqrt(s);
}

std::vector<std::complex<double>> TorusField::mean() const {
    std::vector<std::complex<double>> out(static_cast<std::size_t>(d_));
    for (int c = 0; c < d_; ++c) out[static_cast<std::size_t>(c)] = at(0, c);
    return out;
}

double TorusField::hermitian_defect() const {
    const Lattice lat = lattice();
    std::vector<int> idx(static_cast<std::size_t>(n_)), mirror(static_cast<std::size_t>(n_));
    double worst = 0.0;
    const std::size_t np = points();
    for (std::size_t p = 0; p < np; ++p) {
        lat.unflatten(p, idx);
        for (int i = 0; i < n_; ++i) mirror[static_cast<std::size_t>(i)] = -idx[static_cast<std::size_t>(i)];
        const std::size_t q = lat.flatten(mirror);
        for (int c = 0; c < d_; ++c)
            worst = std::max(worst, std::abs(at(q, c) - std::conj(at(p, c))));
    }
    return worst;
}

void grid_point(const Lattice& lat, std::size_t flat, std::span<double> x) {
    for (int i = lat.n - 1; i >= 0; --i) {
        x[static_cast<std::size_t>(i)] =
            static_cast<double>(flat % static_cast<std::size_t>(lat.m)) / lat.m;
        flat /= static_cast<std::size_t>(lat.m);
    }
}

}  // namespace potkit
