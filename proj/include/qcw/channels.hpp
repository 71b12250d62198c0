#ifndef QCW_CHANNELS_HPP
#define QCW_CHANNELS_HPP

// Kraus-form channels, random-unitary (RU) and random-projective (RP)
// constructors, and the Choi isomorphism in both directions.

#include <utility>
#include <vector>

#include "qcw/core.hpp"
#include "qcw/types.hpp"

namespace qcw {

enum class ChannelTag { General, RU, RP };

const char* to_string(ChannelTag t);

struct KrausTerm {
  double weight = 0.0;
  CMat op;
};

// Weighted Kraus map E(rho) = sum_j w_j K_j rho K_j^dagger.  Not necessarily
// trace preserving.  RU-tagged channels have unit-sum weights and unitary
// operators, RP-tagged channels unit-sum weights and rank-one operators.
class KrausChannel {
 public:
  KrausChannel(BipartiteDims dims, std::vector<KrausTerm> terms,
               ChannelTag tag = ChannelTag::General);

  const BipartiteDims& dims() const { return dims_; }
  const std::vector<KrausTerm>& terms() const { return terms_; }
  ChannelTag tag() const { return tag_; }

 private:
  BipartiteDims dims_;
  std::vector<KrausTerm> terms_;
  ChannelTag tag_;
};

// Trace-normalized Choi state with the pre-normalization trace kept, so
// both of the conventions N = 1/d (RU) and N = 1 (RP) are recoverable.
struct ChoiState {
  DensityOperator state;
  double raw_trace = 0.0;
};

// sum_j w_j K_j rho K_j^dagger; optionally divided by its trace.  Throws
// NumericalError when normalization meets a (near-)zero output trace.
CMat apply_channel(const KrausChannel& ch, const CMat& rho,
                   bool normalize = false);

// (1 (x) E)(|Phi><Phi|), normalized to trace one with the raw trace recorded.
ChoiState choi_of_channel(const KrausChannel& ch);

// Spectral decomposition of the raw-trace-rescaled Choi matrix; eigenvalues
// above 1e-12 become weighted Kraus terms.  Action-equivalent to the channel
// the Choi state came from.
KrausChannel kraus_of_choi(const ChoiState& choi);

// RU channel sum_j p_j U_j rho U_j^dagger from explicit probabilities.
KrausChannel make_ru(const std::vector<double>& probs,
                     const std::vector<CMat>& unitaries);

// RP channel with rank-one Kraus operators K_j = |phi_j><psi_j|.
KrausChannel make_rp(const std::vector<double>& probs,
                     const std::vector<std::pair<CVec, CVec>>& phi_psi_pairs);

}  // namespace qcw

#endif  // QCW_CHANNELS_HPP
