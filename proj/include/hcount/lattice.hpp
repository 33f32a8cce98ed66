#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "hcount/numfield.hpp"

namespace hcount {

// r+s embedding blocks of n coordinates each; complex blocks store (Re, Im)
// pairs, so the ambient dimension is (r+2s)n.
struct CoordLayout {
  int r = 1, s = 0, n = 1;

  int blocks() const { return r + s; }
  int block_dim(int i) const { return i < r ? 1 : 2; }  // d_i
  int dim() const { return (r + 2 * s) * n; }
  // flat offset of coordinate j in block i; complex blocks: Re at the
  // returned offset, Im right after it
  int offset(int i, int j) const {
    if (i < r) return i * n + j;
    return r * n + (i - r) * 2 * n + 2 * j;
  }
};

using QVec = std::vector<Quad>;

struct EuclideanLattice {
  int dim = 0;
  BigInt M = 0;             // shared radicand of the exact entries
  std::vector<QVec> basis;  // basis[k] is the k-th basis vector
  CoordLayout layout;
  Interval det;  // positive; exact when rational

  QVec vector_from_coords(const std::vector<BigInt>& a) const;
  Quad norm_sq(const QVec& v) const;
  std::string to_json() const;  // {"dim":D,"basis":[[...]]}, approximate
};

// Standard integer lattice Z^D (layout r=D, s=0, n=1).
EuclideanLattice integer_lattice(int D);
EuclideanLattice lattice_from_basis(std::vector<QVec> basis, CoordLayout layout);

// sigma(O)^n under the Minkowski embedding; exact entries require the
// embeddings to live in a single real quadratic extension, i.e. deg K <= 2.
EuclideanLattice minkowski_embed(const NumberField& K, const Submodule& O,
                                 int n);

struct DiagonalFlow {
  std::vector<Rat> xi;  // one positive scale per block

  // checks prod xi_i^{d_i} == 1 exactly
  bool admissible(const CoordLayout& layout) const;
};

DiagonalFlow identity_flow(const CoordLayout& layout);
// Log-uniform scales on [1/8, 8], last block solved from the determinant
// constraint (squares are sampled when the last block is complex, keeping
// everything rational).
DiagonalFlow sample_flow(const CoordLayout& layout, std::mt19937_64& rng);

EuclideanLattice apply_flow(const EuclideanLattice& L, const DiagonalFlow& phi);

struct SuccessiveMinima {
  std::vector<Quad> lambda_sq;               // exact squared minima
  std::vector<QVec> witnesses;               // independent vectors, |v_i|^2 = lambda_sq[i]
  std::vector<std::vector<BigInt>> preimages;  // integer coords wrt lattice basis
};

// Exact successive minima via LLL reduction and exhaustive short-vector
// enumeration.  Throws above the dimension cap (default 12).
SuccessiveMinima successive_minima(const EuclideanLattice& L, int cap = 12);

// All lattice points with per-coordinate bounds lo <= x_i <= hi, as integer
// coordinates in lexicographic order.  Throws when the candidate count
// exceeds the cap.
std::vector<std::vector<BigInt>> enumerate_in_box(
    const EuclideanLattice& L, const std::vector<std::pair<Rat, Rat>>& bounds,
    std::uint64_t cap = 100000000);

// All lattice points with |x - center|^2 <= radius_sq.
std::vector<std::vector<BigInt>> enumerate_in_ball(const EuclideanLattice& L,
                                                   const QVec& center,
                                                   const Quad& radius_sq);

struct LipschitzCertificate {
  int D = 1;
  int M = 1;     // number of covering maps
  double L = 0;  // Lipschitz constant (upper bound)
};

LipschitzCertificate box_certificate(const std::vector<std::pair<Rat, Rat>>& bounds);

// c_4(D) M max_{0<=i<D} L^i/(lambda_1...lambda_i), c_4(D) = D^{3D^2/2}.
double counting_bound(const LipschitzCertificate& cert,
                      const SuccessiveMinima& minima);
// c_5(D) M (kL)^{D-1} / (lambda_1^{a-1} lambda_a^{D-a}), c_5 = c_4 (2 pi D)^D.
double counting_bound_restricted(const LipschitzCertificate& cert,
                                 const SuccessiveMinima& minima, int a,
                                 double kappa_L);

// Sublattice-like subset {x : |x| >= lambda_a}.
struct RestrictedLattice {
  const EuclideanLattice* parent;
  int a;
  Quad lambda_sq;
  bool contains(const std::vector<BigInt>& coords) const;
};
RestrictedLattice restrict_lattice(const EuclideanLattice& L,
                                   const SuccessiveMinima& minima, int a);

struct CriticalIndex {
  int l = 1;
  int g = 1;  // [K_0 : k] for K_0 generated by the first l-1 ratios
  std::vector<FieldElem> witnesses;
};

// Minimal l with K = k(theta_1/theta_1, ..., theta_l/theta_1), by exact
// linear algebra on the generated subalgebras.
CriticalIndex critical_index(const std::vector<FieldElem>& witnesses,
                             const ExtensionContext& ctx);

struct MinimaCheckRecord {
  DiagonalFlow flow;
  Quad lambda1_sq;
  bool lower_bound_holds;   // lambda_1 >= sqrt(d/2) eta
  bool critical_checked;    // lambda_l vs eta delta_g/(sqrt2 e d)
  bool critical_holds;
  bool critical_caveat;     // delta_g bound not flagged exact
  int l = 1, g = 1;
};

struct MinimaCheckReport {
  std::vector<MinimaCheckRecord> records;
  int failures = 0;
};

// Checks lambda_1(phi sigma O) >= sqrt(d/2) eta_O for each sampled flow, and
// when a certified delta_g upper bound is supplied (delta_g_sq, exact flag),
// also lambda_l >= eta delta_g / (sqrt2 e d).  A non-exact delta bound only
// yields a recorded caveat, never an assertion.
MinimaCheckReport verify_minima_inequalities(
    const NumberField& K, const Submodule& O, const ExtensionContext& ctx,
    const std::vector<DiagonalFlow>& flows,
    std::optional<std::pair<Quad, bool>> delta_g_sq = std::nullopt);

// Dimension over Q of the Q-subalgebra of K generated by the elements.
int subalgebra_degree(const NumberField& K, const std::vector<FieldElem>& gens);

}  // namespace hcount
