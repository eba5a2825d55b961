#ifndef MW_COHERENCE_HPP
#define MW_COHERENCE_HPP

#include <cstdint>
#include <utility>

#include <Eigen/Dense>

namespace mw {

// Two-world density matrix in block form under projections P_L, P_s.
// Magnitude conventions: |rho_aa| = trace for the diagonal blocks, largest
// singular value for the off-diagonal block.
struct BlockState {
    Eigen::MatrixXcd LL;  // d_L x d_L
    Eigen::MatrixXcd Ls;  // d_L x d_s
    Eigen::MatrixXcd ss;  // d_s x d_s

    Eigen::MatrixXcd sL() const { return Ls.adjoint(); }
    double trace_LL() const { return LL.trace().real(); }
    double trace_ss() const { return ss.trace().real(); }
    double offdiag_norm() const;  // largest singular value of Ls

    // Hermiticity of the diagonal blocks and unit total trace.
    void validate(double trace_tol = 1e-9, double herm_tol = 1e-12) const;
};

struct BlockHamiltonian {
    Eigen::MatrixXcd LL;
    Eigen::MatrixXcd Ls;
    Eigen::MatrixXcd ss;

    Eigen::MatrixXcd sL() const { return Ls.adjoint(); }
    // Conformability and Hermitian diagonal blocks.
    void validate_shapes() const;
    // validate_shapes plus spectral norms within norm_band of each other
    // ("similar magnitudes", falsifiable rather than vacuous).  Not required
    // for integration: H_Ls = 0 is a legitimate decoupled configuration.
    void validate(double norm_band = 2.0) const;
    double spectral_norm() const;  // of the composed matrix
};

// Random two-world state with |rho_LL| ~ 1, |rho_ss| = delta^2 |rho_LL|,
// |rho_Ls| = eps sqrt(|rho_LL| |rho_ss|) (the decoherence bound met with
// equality).  Diagonal blocks are random positive diagonals (chi-square(1)
// entries), the coupling block a complex Gaussian rescaled to the target
// singular value.  Deterministic in seed; eps = 0 gives exact decoherence.
BlockState init_two_worlds(std::uint32_t d_L, std::uint32_t d_s, double delta, double eps,
                           std::uint64_t seed);

// Matching random Hamiltonian: GUE-style Hermitian diagonal blocks at unit
// spectral norm, complex Gaussian coupling block at norm 1/2.
BlockHamiltonian random_block_hamiltonian(std::uint32_t d_L, std::uint32_t d_s,
                                          std::uint64_t seed);

// Fixed-step RK4 on the block commutator equations (hbar = 1, environment
// term zero):
//   i dLL/dt = [H_LL, LL] + (H_Ls sL - Ls H_sL)
//   i dss/dt = [H_ss, ss] + (H_sL Ls - sL H_Ls)
//   i dLs/dt = H_LL Ls - LL H_Ls + H_Ls ss - Ls H_ss
// Identical, block for block, to evolving the composed matrix.  Rejects
// dt * |H| > 0.1 (stability bound; accuracy statements assume <= 0.01).
BlockState evolve(const BlockState& state, const BlockHamiltonian& h, double dt,
                  std::uint32_t steps);

// Norm ratio of the cross-block drive to the own-block drive in the LL and
// ss equations; scales as (eps*delta, eps/delta) for states built above.
// Throws NumericalError when an own-block drive vanishes (commuting block).
std::pair<double, double> influence_ratios(const BlockState& state,
                                           const BlockHamiltonian& h);

} // namespace mw

#endif
