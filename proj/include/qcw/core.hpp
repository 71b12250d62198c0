#ifndef QCW_CORE_HPP
#define QCW_CORE_HPP

// Dense complex linear algebra for bipartite d x d systems: Kronecker
// products, partial trace / transpose, and the reshaping dictionary between
// operators M and vectors (1 (x) M)|Phi>, with |Phi> = sum_n |n,n>
// unnormalized.  Basis convention: |m,n> lives at index m*d + n.

#include <string>

#include "qcw/types.hpp"

namespace qcw {

enum class Subsystem { A, B };
enum class OperatorSide { Left, Right };

// Kronecker product; dimensions multiply.
template <typename DerivedA, typename DerivedB>
CMat kron(const Eigen::MatrixBase<DerivedA>& a,
          const Eigen::MatrixBase<DerivedB>& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
          a(i, j) * b.derived();
  return out;
}

// |Phi> = sum_n |n,n>, unnormalized; callers normalize explicitly.
CVec phi_vector(int d);

// Flip (swap) operator F|x,y> = |y,x>.
CMat flip_operator(int d);

// Trace over one subsystem of a d^2 x d^2 operator; preserves the trace.
CMat partial_trace(const CMat& op, BipartiteDims dims, Subsystem traced);

// Transposition on one tensor factor only; involutive.
CMat partial_transpose(const CMat& op, BipartiteDims dims, Subsystem which);

// (1 (x) M)|Phi> for Right, (M^T (x) 1)|Phi> for Left; both agree.
CVec operator_to_state(const CMat& m, OperatorSide side = OperatorSide::Right);

// Inverse of operator_to_state(., Right); round trip is the identity.
CMat state_to_operator(const CVec& psi);

// Side of the bipartite system a vector length corresponds to, or throws.
int local_dim_of_vector_length(Eigen::Index len);

// Pure bipartite state: unit 2-norm amplitude vector of length d^2.
class PureState {
 public:
  PureState(BipartiteDims dims, CVec amplitudes);

  // Infers d from the vector length (must be a perfect square).
  static PureState from_vector(const CVec& amplitudes);

  const BipartiteDims& dims() const { return dims_; }
  const CVec& amplitudes() const { return amplitudes_; }

 private:
  BipartiteDims dims_;
  CVec amplitudes_;
};

// Mixed bipartite state: Hermitian, PSD, unit-trace d^2 x d^2 matrix.
class DensityOperator {
 public:
  DensityOperator(BipartiteDims dims, CMat matrix);

  static DensityOperator from_matrix(const CMat& matrix);
  static DensityOperator from_pure(const PureState& psi);

  const BipartiteDims& dims() const { return dims_; }
  const CMat& matrix() const { return matrix_; }

 private:
  BipartiteDims dims_;
  CMat matrix_;
};

}  // namespace qcw

#endif  // QCW_CORE_HPP
