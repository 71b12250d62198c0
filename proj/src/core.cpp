#include "qcw/core.hpp"

#include <cmath>
#include <sstream>

namespace qcw {

namespace {

void require_square(const CMat& m, const char* what) {
  if (m.rows() != m.cols()) {
    std::ostringstream msg;
    msg << what << " must be square, got " << m.rows() << "x" << m.cols();
    throw InvalidInput(msg.str());
  }
}

void require_bipartite(const CMat& op, BipartiteDims dims, const char* what) {
  require_square(op, what);
  if (op.rows() != dims.total()) {
    std::ostringstream msg;
    msg << what << " has size " << op.rows() << ", expected d^2 = "
        << dims.total();
    throw InvalidInput(msg.str());
  }
}

}  // namespace

CVec phi_vector(int d) {
  CVec phi = CVec::Zero(d * d);
  for (int n = 0; n < d; ++n) phi(n * d + n) = 1.0;
  return phi;
}

CMat flip_operator(int d) {
  CMat f = CMat::Zero(d * d, d * d);
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y) f(y * d + x, x * d + y) = 1.0;
  return f;
}

CMat partial_trace(const CMat& op, BipartiteDims dims, Subsystem traced) {
  require_bipartite(op, dims, "partial_trace input");
  const int d = dims.d;
  CMat out = CMat::Zero(d, d);
  if (traced == Subsystem::A) {
    for (int n = 0; n < d; ++n)
      for (int np = 0; np < d; ++np)
        for (int m = 0; m < d; ++m) out(n, np) += op(m * d + n, m * d + np);
  } else {
    for (int m = 0; m < d; ++m)
      for (int mp = 0; mp < d; ++mp)
        for (int n = 0; n < d; ++n) out(m, mp) += op(m * d + n, mp * d + n);
  }
  return out;
}

CMat partial_transpose(const CMat& op, BipartiteDims dims, Subsystem which) {
  require_bipartite(op, dims, "partial_transpose input");
  const int d = dims.d;
  CMat out(d * d, d * d);
  for (int m = 0; m < d; ++m)
    for (int n = 0; n < d; ++n)
      for (int mp = 0; mp < d; ++mp)
        for (int np = 0; np < d; ++np) {
          if (which == Subsystem::B)
            out(m * d + np, mp * d + n) = op(m * d + n, mp * d + np);
          else
            out(mp * d + n, m * d + np) = op(m * d + n, mp * d + np);
        }
  return out;
}

CVec operator_to_state(const CMat& m, OperatorSide side) {
  require_square(m, "operator_to_state input");
  const int d = static_cast<int>(m.rows());
  CVec psi(d * d);
  // Both sides produce psi_{(n,p)} = M_{p,n}; kept separate so the identity
  // (M^T (x) 1)|Phi> = (1 (x) M)|Phi> stays visible at the call site.
  if (side == OperatorSide::Right) {
    for (int n = 0; n < d; ++n)
      for (int p = 0; p < d; ++p) psi(n * d + p) = m(p, n);
  } else {
    for (int q = 0; q < d; ++q)
      for (int p = 0; p < d; ++p) psi(p * d + q) = m.transpose()(p, q);
  }
  return psi;
}

CMat state_to_operator(const CVec& psi) {
  const int d = local_dim_of_vector_length(psi.size());
  CMat m(d, d);
  for (int n = 0; n < d; ++n)
    for (int p = 0; p < d; ++p) m(p, n) = psi(n * d + p);
  return m;
}

int local_dim_of_vector_length(Eigen::Index len) {
  const int d = static_cast<int>(std::llround(std::sqrt(double(len))));
  if (d < 1 || Eigen::Index(d) * d != len) {
    std::ostringstream msg;
    msg << "vector length " << len << " is not a perfect square";
    throw InvalidInput(msg.str());
  }
  return d;
}

PureState::PureState(BipartiteDims dims, CVec amplitudes)
    : dims_(dims), amplitudes_(std::move(amplitudes)) {
  if (dims_.d < 1) throw InvalidInput("local dimension must be positive");
  if (amplitudes_.size() != dims_.total()) {
    std::ostringstream msg;
    msg << "amplitude vector has length " << amplitudes_.size()
        << ", expected d^2 = " << dims_.total();
    throw InvalidInput(msg.str());
  }
  if (!amplitudes_.allFinite())
    throw InvalidInput("state amplitudes contain NaN or Inf");
  const double norm = amplitudes_.norm();
  if (std::abs(norm - 1.0) > tol::state) {
    std::ostringstream msg;
    msg << "state norm " << norm << " exceeds tolerance " << tol::state
        << " from 1";
    throw InvalidInput(msg.str());
  }
}

PureState PureState::from_vector(const CVec& amplitudes) {
  const int d = local_dim_of_vector_length(amplitudes.size());
  return PureState(BipartiteDims{d}, amplitudes);
}

DensityOperator::DensityOperator(BipartiteDims dims, CMat matrix)
    : dims_(dims), matrix_(std::move(matrix)) {
  if (dims_.d < 1) throw InvalidInput("local dimension must be positive");
  require_bipartite(matrix_, dims_, "density operator");
  if (!matrix_.allFinite())
    throw InvalidInput("density operator contains NaN or Inf");
  const double herm = hermiticity_deviation(matrix_);
  if (herm > tol::state) {
    std::ostringstream msg;
    msg << "density operator hermiticity deviation " << herm
        << " exceeds tolerance " << tol::state;
    throw InvalidInput(msg.str());
  }
  Eigen::SelfAdjointEigenSolver<CMat> es(matrix_, Eigen::EigenvaluesOnly);
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < -tol::state) {
    std::ostringstream msg;
    msg << "density operator minimum eigenvalue " << min_eig
        << " below -" << tol::state;
    throw InvalidInput(msg.str());
  }
  const double trace_dev = std::abs(matrix_.trace() - Complex(1.0));
  if (trace_dev > tol::state) {
    std::ostringstream msg;
    msg << "density operator trace deviates from 1 by " << trace_dev;
    throw InvalidInput(msg.str());
  }
}

DensityOperator DensityOperator::from_matrix(const CMat& matrix) {
  if (matrix.rows() != matrix.cols())
    throw InvalidInput("density operator must be square");
  const int d = local_dim_of_vector_length(matrix.rows());
  return DensityOperator(BipartiteDims{d}, matrix);
}

DensityOperator DensityOperator::from_pure(const PureState& psi) {
  const CVec& v = psi.amplitudes();
  return DensityOperator(psi.dims(), v * v.adjoint());
}

}  // namespace qcw
