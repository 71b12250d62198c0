#ifndef QCW_SCHMIDT_HPP
#define QCW_SCHMIDT_HPP

// Schmidt decomposition, the generalized-DFT complementary decomposition in
// terms of maximally entangled states, norm-geometry classification, and the
// maximally entangled Fourier basis.

#include <vector>

#include "qcw/core.hpp"
#include "qcw/types.hpp"

namespace qcw {

// |psi> = sum_n sigma_n |e_n> (x) |f_n>, sigma descending and non-negative,
// columns of basis_a / basis_b are the local Schmidt vectors.
struct SchmidtData {
  RVec sigma;
  CMat basis_a;
  CMat basis_b;
};

// Expansion of the Schmidt-rotated state over d orthonormal ME states
// |F_{k,0}>:  sum_k tau_k |F_{k,0}> = sum_n sigma_n |n,n>.  tau and the
// phases theta come from the generalized DFT of sigma; basis_a / basis_b
// carry the Schmidt rotation so callers can map back to the original frame.
struct ComplementarySchmidtData {
  RVec tau;
  RVec theta;
  std::vector<CVec> me_states;
  CMat basis_a;
  CMat basis_b;
};

enum class StateClass { SeparablePure, MaximallyEntangled, Intermediate };

const char* to_string(StateClass c);

// 1-, 2- and inf-norms of a Schmidt vector plus the class they imply:
// separable-pure on the octahedron surface, maximally entangled on the cube
// surface, intermediate in between.
struct GeometryProfile {
  double norm1 = 0.0;
  double norm2 = 0.0;
  double norm_inf = 0.0;
  StateClass classification = StateClass::Intermediate;
};

// Result of the generalized DFT: tau_k >= 0 plus the phase theta_k that
// rotates the raw Fourier coefficient onto the non-negative axis.
struct GdftResult {
  RVec tau;
  RVec theta;
};

// SVD-based Schmidt decomposition with a deterministic phase convention:
// the largest-magnitude component of each |e_n> is real positive; equal
// Schmidt coefficients are ordered lexicographically by |e_n>.
SchmidtData schmidt_decompose(const PureState& psi);

// tau_k = |d^{-1/2} sum_n e^{2 pi i k n / d} sigma_n|, theta_k the matching
// phase (0 whenever tau_k <= 1e-12).  Input entries must be non-negative.
GdftResult gdft(const RVec& sigma, int d);

// Inverse of gdft given the phase bookkeeping; returns sigma.
RVec gdft_inverse(const RVec& tau, const RVec& theta, int d);

ComplementarySchmidtData complementary_decompose(const PureState& psi);

// Requires ||sigma||_2 = 1 within 1e-10; classification tolerance is the
// looser 1e-8 to absorb decomposition error.
GeometryProfile geometry_profile(const RVec& sigma,
                                 double class_tol = tol::classify);

// d^2 orthonormal ME states |F_{m,n}> = d^{-1/2} sum_q w^{qm} |q, q+n mod d>,
// w = exp(2 pi i / d), listed in row-major (m,n) order.
std::vector<CVec> fourier_me_basis(int d);

}  // namespace qcw

#endif  // QCW_SCHMIDT_HPP
