#include "coherence.hpp"

#include <cmath>
#include <stdexcept>

#include "errors.hpp"

namespace mw {

namespace {

double spectral_norm_of(const Eigen::MatrixXcd& m) {
    if (m.size() == 0) return 0.0;
    return m.jacobiSvd().singularValues()(0);
}

// splitmix64 + Box-Muller; self-contained so seeded runs are reproducible
// across standard libraries.
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    double uniform() {  // (0, 1)
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u = uniform(), v = uniform();
        const double r = std::sqrt(-2.0 * std::log(u));
        const double a = 6.283185307179586 * v;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

  private:
    double spare_ = 0.0;
    bool have_spare_ = false;
};

Eigen::MatrixXcd gaussian_complex(Rng& rng, std::uint32_t rows, std::uint32_t cols) {
    Eigen::MatrixXcd m(rows, cols);
    for (std::uint32_t i = 0; i < rows; ++i)
        for (std::uint32_t j = 0; j < cols; ++j)
            m(i, j) = std::complex<double>(rng.normal(), rng.normal());
    return m;
}

Eigen::MatrixXcd commutator(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    return a * b - b * a;
}

} // namespace

double BlockState::offdiag_norm() const { return spectral_norm_of(Ls); }

void BlockState::validate(double trace_tol, double herm_tol) const {
    if (LL.rows() != LL.cols() || ss.rows() != ss.cols() || Ls.rows() != LL.rows() ||
        Ls.cols() != ss.rows())
        throw std::invalid_argument("BlockState: non-conformable blocks");
    if ((LL - LL.adjoint()).cwiseAbs().maxCoeff() > herm_tol ||
        (ss - ss.adjoint()).cwiseAbs().maxCoeff() > herm_tol)
        throw std::invalid_argument("BlockState: diagonal blocks not Hermitian");
    if (std::abs(trace_LL() + trace_ss() - 1.0) > trace_tol)
        throw std::invalid_argument("BlockState: total trace differs from 1");
}

void BlockHamiltonian::validate_shapes() const {
    if (LL.rows() != LL.cols() || ss.rows() != ss.cols() || Ls.rows() != LL.rows() ||
        Ls.cols() != ss.rows())
        throw std::invalid_argument("BlockHamiltonian: non-conformable blocks");
    if ((LL - LL.adjoint()).cwiseAbs().maxCoeff() > 1e-12 ||
        (ss - ss.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("BlockHamiltonian: diagonal blocks not Hermitian");
}

void BlockHamiltonian::validate(double norm_band) const {
    validate_shapes();
    const double nLL = spectral_norm_of(LL);
    const double nss = spectral_norm_of(ss);
    const double nLs = spectral_norm_of(Ls);
    const double hi = std::max({nLL, nss, nLs});
    const double lo = std::min({nLL, nss, nLs});
    if (lo <= 0.0 || hi / lo > norm_band * (1.0 + 1e-9))
        throw std::invalid_argument("BlockHamiltonian: block norms not of similar magnitude");
}

double BlockHamiltonian::spectral_norm() const {
    const auto dl = LL.rows(), ds = ss.rows();
    Eigen::MatrixXcd full(dl + ds, dl + ds);
    full.topLeftCorner(dl, dl) = LL;
    full.topRightCorner(dl, ds) = Ls;
    full.bottomLeftCorner(ds, dl) = Ls.adjoint();
    full.bottomRightCorner(ds, ds) = ss;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(full, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

BlockState init_two_worlds(std::uint32_t d_L, std::uint32_t d_s, double delta, double eps,
                           std::uint64_t seed) {
    if (d_L < 1 || d_s < 1)
        throw std::invalid_argument("init_two_worlds: dimensions must be >= 1");
    if (!(delta > 0.0) || !(delta < 1.0))
        throw std::invalid_argument("init_two_worlds: delta must lie strictly in (0,1)");
    if (eps < 0.0 || !(eps < 1.0))
        throw std::invalid_argument("init_two_worlds: eps must lie in [0,1)");

    Rng rng(seed);
    const double trace_L = 1.0 / (1.0 + delta * delta);
    const double trace_s = delta * delta * trace_L;

    auto positive_diagonal = [&](std::uint32_t d, double trace) {
        Eigen::VectorXd v(d);
        for (std::uint32_t i = 0; i < d; ++i) {
            const double g = rng.normal();
            v(i) = g * g + 1e-12;  // chi-square(1): wide positive spread
        }
        v *= trace / v.sum();
        return Eigen::MatrixXcd(v.asDiagonal());
    };

    BlockState s;
    s.LL = positive_diagonal(d_L, trace_L);
    s.ss = positive_diagonal(d_s, trace_s);
    if (eps > 0.0) {
        Eigen::MatrixXcd x = gaussian_complex(rng, d_L, d_s);
        s.Ls = x * (eps * std::sqrt(trace_L * trace_s) / spectral_norm_of(x));
    } else {
        s.Ls = Eigen::MatrixXcd::Zero(d_L, d_s);
    }
    return s;
}

BlockHamiltonian random_block_hamiltonian(std::uint32_t d_L, std::uint32_t d_s,
                                          std::uint64_t seed) {
    // Offset keeps the H draw decoupled from the state draw at equal seeds.
    Rng rng(seed ^ 0xc2b2ae3d27d4eb4full);
    auto hermitian_unit = [&](std::uint32_t d) {
        Eigen::MatrixXcd a = gaussian_complex(rng, d, d);
        Eigen::MatrixXcd h = 0.5 * (a + a.adjoint());
        return Eigen::MatrixXcd(h / spectral_norm_of(h));
    };
    BlockHamiltonian h;
    h.LL = hermitian_unit(d_L);
    h.ss = hermitian_unit(d_s);
    Eigen::MatrixXcd c = gaussian_complex(rng, d_L, d_s);
    h.Ls = c * (0.5 / spectral_norm_of(c));
    h.validate();
    return h;
}

namespace {

struct BlockDeriv {
    Eigen::MatrixXcd LL, Ls, ss;
};

// d rho/dt = -i [H, rho], decomposed by the two projections.
BlockDeriv deriv(const BlockState& r, const BlockHamiltonian& h) {
    const std::complex<double> mi(0.0, -1.0);
    const Eigen::MatrixXcd sL = r.Ls.adjoint();
    const Eigen::MatrixXcd HsL = h.Ls.adjoint();
    BlockDeriv d;
    d.LL = mi * (commutator(h.LL, r.LL) + (h.Ls * sL - r.Ls * HsL));
    d.ss = mi * (commutator(h.ss, r.ss) + (HsL * r.Ls - sL * h.Ls));
    d.Ls = mi * (h.LL * r.Ls - r.LL * h.Ls + h.Ls * r.ss - r.Ls * h.ss);
    return d;
}

} // namespace

BlockState evolve(const BlockState& state, const BlockHamiltonian& h, double dt,
                  std::uint32_t steps) {
    if (!(dt > 0.0)) throw std::invalid_argument("evolve: dt must be positive");
    if (steps < 1) throw std::invalid_argument("evolve: steps must be >= 1");
    state.validate(1e-6, 1e-9);
    h.validate_shapes();
    if (dt * h.spectral_norm() > 0.1)
        throw NumericalError("evolve: dt * |H| exceeds the stability bound 0.1");

    BlockState r = state;
    for (std::uint32_t n = 0; n < steps; ++n) {
        const BlockDeriv k1 = deriv(r, h);
        BlockState tmp{r.LL + 0.5 * dt * k1.LL, r.Ls + 0.5 * dt * k1.Ls,
                       r.ss + 0.5 * dt * k1.ss};
        const BlockDeriv k2 = deriv(tmp, h);
        tmp = BlockState{r.LL + 0.5 * dt * k2.LL, r.Ls + 0.5 * dt * k2.Ls,
                         r.ss + 0.5 * dt * k2.ss};
        const BlockDeriv k3 = deriv(tmp, h);
        tmp = BlockState{r.LL + dt * k3.LL, r.Ls + dt * k3.Ls, r.ss + dt * k3.ss};
        const BlockDeriv k4 = deriv(tmp, h);
        r.LL += (dt / 6.0) * (k1.LL + 2.0 * k2.LL + 2.0 * k3.LL + k4.LL);
        r.Ls += (dt / 6.0) * (k1.Ls + 2.0 * k2.Ls + 2.0 * k3.Ls + k4.Ls);
        r.ss += (dt / 6.0) * (k1.ss + 2.0 * k2.ss + 2.0 * k3.ss + k4.ss);
    }
    return r;
}

std::pair<double, double> influence_ratios(const BlockState& state,
                                           const BlockHamiltonian& h) {
    const Eigen::MatrixXcd sL = state.Ls.adjoint();
    const Eigen::MatrixXcd HsL = h.Ls.adjoint();
    const double cross_L = spectral_norm_of(h.Ls * sL - state.Ls * HsL);
    const double own_L = spectral_norm_of(commutator(h.LL, state.LL));
    const double cross_s = spectral_norm_of(HsL * state.Ls - sL * h.Ls);
    const double own_s = spectral_norm_of(commutator(h.ss, state.ss));
    const double floor_L = 1e-14 * spectral_norm_of(h.LL) * state.trace_LL();
    const double floor_s = 1e-14 * spectral_norm_of(h.ss) * state.trace_ss();
    if (own_L <= floor_L || own_s <= floor_s)
        throw NumericalError("influence_ratios: own-block drive vanishes (commuting block)");
    return {cross_L / own_L, cross_s / own_s};
}

} // namespace mw
