#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "dqd/constants.hpp"

namespace dqd {

using cplx = std::complex<double>;

// Single-dot channel of the box model. H = -Omega S_z + alpha S.J conserves
// S_z + J_z, so it splits into 2x2 blocks spanned by |up,m>, |dn,m+1> with
//   delta = (-Omega + alpha (m + 1/2)) / 2,  V = (alpha/2) sqrt(Q),
// Q = j(j+1) - m(m+1). The common block energy -alpha/4 is dropped.

struct BlockAmplitudes {
  cplx A_amp;     // <up,m|U|up,m>
  cplx D_amp;     // <dn,m+1|U|dn,m+1>
  double f_prob;  // |<dn,m+1|U|up,m>|^2
};

BlockAmplitudes block_amplitudes(double delta, double V, double t, double hbar = 0.6582119569);

/// Minimal Gauss-Hermite node count for m: max(257, ceil(8 sigma alpha t_max / (2 pi hbar))).
int required_m_nodes(const DotParameters& dot, double t_max);
constexpr int kMinQNodes = 64;

/// Throws Validity when t_max exceeds the box-model window hbar N / A by more
/// than the 2% slack used for the 1.2e4 ns long runs, and for N < 100 where
/// the Gaussian bath statistics do not apply.
void check_validity(const DotParameters& dot, double t_max);

struct BathQuadrature {
  std::vector<double> m_nodes, m_weights;  // m ~ Normal(0, sigma^2)
  std::vector<double> q_nodes, q_weights;  // J_perp^2 ~ Exp(mean 2 sigma^2)
  double t_max = 0.0;
};

/// Product Gauss-Hermite x Gauss-Laguerre rule. Zero counts select the
/// minimum rule; smaller explicit counts are raised to it.
BathQuadrature build_quadrature(const DotParameters& dot, double t_max, int m_nodes = 0,
                                int q_nodes = 0);

struct ChannelPoint {
  double p = 0.0;
  cplx c = 1.0;
};

struct ChannelTrajectory {
  std::vector<double> times;
  std::vector<double> p;
  std::vector<cplx> c;  // lab frame: carries the Zeeman phase e^{i Omega t / hbar}
  DotParameters dot;
};

/// One oscillator pair of the channel sum. A node (or an aggregate of nodes
/// sharing the same two block frequencies) contributes
///   c += K0 C1 C2 - K12 S1 S2 - i (K1 S1 C2 + K2 C1 S2)
///   p += (Kf1 S1^2 + Kf2 S2^2) / 2
/// with Ck = cos(wk t), Sk = sin(wk t). Block 1 holds |up,m> (ket), block 2
/// holds |dn,m> (bra side of the up-dn coherence).
struct ChannelMode {
  double w1 = 0.0, w2 = 0.0;  // rad / ns
  double K0 = 0.0, K12 = 0.0, K1 = 0.0, K2 = 0.0, Kf1 = 0.0, Kf2 = 0.0;
};

/// Evaluates a mode set on a time grid. Uniform runs of the grid use phasor
/// rotation; the node summation order is fixed, so output is independent of
/// the worker count.
void evaluate_modes(const std::vector<ChannelMode>& modes, const std::vector<double>& times,
                    std::vector<double>& p, std::vector<cplx>& c);
ChannelPoint evaluate_modes(const std::vector<ChannelMode>& modes, double t);

/// Cartesian path: sums block amplitudes over the (m, Q) product rule. The
/// ket block sees Q - m and the bra block Q + m. With clip_edges, V^2 is
/// clipped at 0 (the state is then a lone pure-phase state); otherwise only
/// where the block energy would turn imaginary, as in the radial rule.
std::vector<ChannelMode> cartesian_modes(const DotParameters& dot, const BathQuadrature& quad,
                                         bool clip_edges = false);
ChannelTrajectory compute_channel(const DotParameters& dot, const std::vector<double>& times,
                                  const BathQuadrature& quad, bool clip_edges = false);

struct RadialOptions {
  double r_half_width = 10.0;  // R range is Omega +- r_half_width * s
  double panel_s = 0.5;        // panel width <= panel_s * s ...
  double panel_phase = 16.0;   // ... and <= panel_phase * hbar / t_max
  int order = 16;              // Gauss-Legendre order per panel (R and nu)
  int sliver_order = 3;        // order on nu pieces where a block is clipped ...
  double sliver_phase = 1.0;   // ... each spanning at most this phase (rad) at t_max
  // Clip V^2 at 0 where Q -+ m < 0 (edge states as lone states). Off by
  // default: the unclipped continuation keeps c = 1 - 2p exact at B = 0,
  // and the two differ by O(1/sigma^2).
  bool clip_edges = false;
};

/// Default path. Integrates over the total field F = Omega z - alpha J,
/// which is Normal(Omega z, s^2) with s = alpha sigma, in spherical
/// coordinates R = |F|, nu = cos(F, z). Unclipped block frequencies depend
/// on R only, so the nu integral folds into one mode per R node; nu pieces
/// where a block is clipped (clip_edges, or R^2 < alpha Omega) keep one mode
/// per node.
class ChannelModel {
 public:
  ChannelModel(const DotParameters& dot, double t_max, const RadialOptions& opts = {});

  ChannelPoint evaluate(double t) const;
  ChannelTrajectory trajectory(const std::vector<double>& times) const;

  const DotParameters& dot() const { return dot_; }
  double t_max() const { return t_max_; }
  std::size_t mode_count() const { return modes_.size(); }
  const std::vector<ChannelMode>& modes() const { return modes_; }

 private:
  DotParameters dot_;
  double t_max_;
  bool conjugate_;  // B < 0: c(-B) = conj c(B)
  std::vector<ChannelMode> modes_;
};

ChannelTrajectory compute_channel(const DotParameters& dot, const std::vector<double>& times);

struct CpReport {
  bool pass = true;
  double worst_margin = 0.0;  // min over t of (1 - p) - |c|; p itself when p leaves [0, 1]
  double worst_time = 0.0;
  std::size_t worst_index = 0;
};

/// Per-time check of 0 <= p <= 1 and |c| <= 1 - p; pass allows -tol.
CpReport verify_channel_cp(const ChannelTrajectory& traj, double tol = 1e-12);

/// Zeeman phase removed: c e^{-i Omega t / hbar}.
cplx rotating_frame(cplx c, double t, const DotParameters& dot);

}  // namespace dqd
