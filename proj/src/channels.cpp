#include "qcw/channels.hpp"

#include <cmath>
#include <sstream>

namespace qcw {

namespace {

double unitarity_deviation(const CMat& u) {
  return max_abs_diff(u.adjoint() * u, CMat::Identity(u.rows(), u.cols()));
}

void check_probability_vector(const std::vector<double>& probs) {
  double sum = 0.0;
  for (double p : probs) {
    if (p < 0.0) {
      std::ostringstream msg;
      msg << "negative probability " << p;
      throw InvalidInput(msg.str());
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > tol::state) {
    std::ostringstream msg;
    msg << "probabilities sum to " << sum << ", expected 1 within "
        << tol::state;
    throw InvalidInput(msg.str());
  }
}

}  // namespace

const char* to_string(ChannelTag t) {
  switch (t) {
    case ChannelTag::General: return "general";
    case ChannelTag::RU: return "ru";
    case ChannelTag::RP: return "rp";
  }
  return "general";
}

KrausChannel::KrausChannel(BipartiteDims dims, std::vector<KrausTerm> terms,
                           ChannelTag tag)
    : dims_(dims), terms_(std::move(terms)), tag_(tag) {
  if (dims_.d < 1) throw InvalidInput("channel dimension must be positive");
  if (terms_.empty()) throw InvalidInput("channel has no Kraus terms");
  double weight_sum = 0.0;
  for (std::size_t j = 0; j < terms_.size(); ++j) {
    const KrausTerm& t = terms_[j];
    if (t.weight < 0.0) {
      std::ostringstream msg;
      msg << "Kraus term " << j << " has negative weight " << t.weight;
      throw InvalidInput(msg.str());
    }
    if (t.op.rows() != dims_.d || t.op.cols() != dims_.d) {
      std::ostringstream msg;
      msg << "Kraus term " << j << " is " << t.op.rows() << "x" << t.op.cols()
          << ", expected " << dims_.d << "x" << dims_.d;
      throw InvalidInput(msg.str());
    }
    if (!t.op.allFinite())
      throw InvalidInput("Kraus operator contains NaN or Inf");
    weight_sum += t.weight;
  }
  if (tag_ == ChannelTag::RU || tag_ == ChannelTag::RP) {
    if (std::abs(weight_sum - 1.0) > tol::state) {
      std::ostringstream msg;
      msg << to_string(tag_) << " weights sum to " << weight_sum
          << ", expected 1 within " << tol::state;
      throw InvalidInput(msg.str());
    }
  }
  if (tag_ == ChannelTag::RU) {
    for (std::size_t j = 0; j < terms_.size(); ++j) {
      const double dev = unitarity_deviation(terms_[j].op);
      if (dev > tol::state) {
        std::ostringstream msg;
        msg << "RU operator " << j << " deviates from unitarity by " << dev;
        throw InvalidInput(msg.str());
      }
    }
  }
  if (tag_ == ChannelTag::RP) {
    for (std::size_t j = 0; j < terms_.size(); ++j) {
      Eigen::JacobiSVD<CMat> svd(terms_[j].op);
      const auto& sv = svd.singularValues();
      // Scale-invariant rank-one test: second singular value against first.
      if (sv(0) <= 0.0 || (sv.size() > 1 && sv(1) > tol::state * sv(0))) {
        std::ostringstream msg;
        msg << "RP operator " << j << " is not rank one (singular values "
            << sv(0) << ", " << (sv.size() > 1 ? sv(1) : 0.0) << ")";
        throw InvalidInput(msg.str());
      }
    }
  }
}

CMat apply_channel(const KrausChannel& ch, const CMat& rho, bool normalize) {
  const int d = ch.dims().d;
  if (rho.rows() != d || rho.cols() != d) {
    std::ostringstream msg;
    msg << "apply_channel: state is " << rho.rows() << "x" << rho.cols()
        << ", channel expects " << d << "x" << d;
    throw InvalidInput(msg.str());
  }
  CMat out = CMat::Zero(d, d);
  for (const KrausTerm& t : ch.terms())
    out.noalias() += t.weight * (t.op * rho * t.op.adjoint());
  if (normalize) {
    const Complex tr = out.trace();
    if (std::abs(tr) < 1e-12)
      throw NumericalError("apply_channel: output trace is zero, channel "
                           "annihilates this state");
    out /= tr;
  }
  return out;
}

ChoiState choi_of_channel(const KrausChannel& ch) {
  const int d = ch.dims().d;
  CMat raw = CMat::Zero(d * d, d * d);
  for (const KrausTerm& t : ch.terms()) {
    if (t.weight == 0.0) continue;
    const CVec v = operator_to_state(t.op);
    raw.noalias() += t.weight * (v * v.adjoint());
  }
  const double raw_trace = raw.trace().real();
  if (raw_trace < 1e-12)
    throw InvalidInput("choi_of_channel: channel is (numerically) zero");
  return ChoiState{DensityOperator(ch.dims(), raw / raw_trace), raw_trace};
}

KrausChannel kraus_of_choi(const ChoiState& choi) {
  const BipartiteDims dims = choi.state.dims();
  if (choi.raw_trace <= 0.0)
    throw InvalidInput("kraus_of_choi: raw trace must be positive");
  const CMat rescaled = choi.raw_trace * choi.state.matrix();
  Eigen::SelfAdjointEigenSolver<CMat> es(rescaled);
  std::vector<KrausTerm> terms;
  for (Eigen::Index i = es.eigenvalues().size(); i-- > 0;) {
    const double lambda = es.eigenvalues()(i);
    if (lambda <= tol::rank_cut) continue;
    CVec v = es.eigenvectors().col(i);
    // Deterministic phase: largest-magnitude component real positive.
    Eigen::Index idx = 0;
    v.cwiseAbs().maxCoeff(&idx);
    if (std::abs(v(idx)) > 0.0) v *= std::conj(v(idx)) / std::abs(v(idx));
    terms.push_back(KrausTerm{lambda, state_to_operator(v)});
  }
  return KrausChannel(dims, std::move(terms), ChannelTag::General);
}

KrausChannel make_ru(const std::vector<double>& probs,
                     const std::vector<CMat>& unitaries) {
  if (probs.size() != unitaries.size())
    throw InvalidInput("make_ru: probability and unitary counts differ");
  if (probs.empty()) throw InvalidInput("make_ru: empty channel");
  check_probability_vector(probs);
  const int d = static_cast<int>(unitaries.front().rows());
  std::vector<KrausTerm> terms;
  terms.reserve(probs.size());
  for (std::size_t j = 0; j < probs.size(); ++j)
    terms.push_back(KrausTerm{probs[j], unitaries[j]});
  return KrausChannel(BipartiteDims{d}, std::move(terms), ChannelTag::RU);
}

KrausChannel make_rp(const std::vector<double>& probs,
                     const std::vector<std::pair<CVec, CVec>>& phi_psi_pairs) {
  if (probs.size() != phi_psi_pairs.size())
    throw InvalidInput("make_rp: probability and pair counts differ");
  if (probs.empty()) throw InvalidInput("make_rp: empty channel");
  check_probability_vector(probs);
  const int d = static_cast<int>(phi_psi_pairs.front().first.size());
  std::vector<KrausTerm> terms;
  terms.reserve(probs.size());
  for (std::size_t j = 0; j < probs.size(); ++j) {
    const auto& [phi, psi] = phi_psi_pairs[j];
    for (const CVec* v : {&phi, &psi}) {
      const double dev = std::abs(v->norm() - 1.0);
      if (dev > tol::state) {
        std::ostringstream msg;
        msg << "make_rp: vector in pair " << j << " has norm " << v->norm()
            << ", expected unit within " << tol::state;
        throw InvalidInput(msg.str());
      }
    }
    terms.push_back(KrausTerm{probs[j], phi * psi.adjoint()});
  }
  return KrausChannel(BipartiteDims{d}, std::move(terms), ChannelTag::RP);
}

}  // namespace qcw
