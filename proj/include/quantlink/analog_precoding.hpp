#pragma once

#include <vector>

#include "quantlink/channel.hpp"
#include "quantlink/types.hpp"

namespace quantlink {

struct AlternatingProjectionOptions {
  double epsilon = 1e-5;
  int max_iter = 1000;
};

// Hardware-realizable analog precoder F_RF and combiner W_RF.
//
// f_rf / w_rf are constant-modulus iterates: for each side, the one with the
// smallest normalized distance ||F_hat - F_tilde||_F / sqrt(n_rf_tx) (resp. W),
// which is reported as residual_f / residual_w. `converged` is false when
// max_iter was reached before both distances fell below epsilon.
struct AnalogPrecoderPair {
  CMatrix f_rf;
  CMatrix w_rf;
  double residual_f = 0.0;
  double residual_w = 0.0;
  int iterations = 0;
  bool converged = false;
  // Per-iteration normalized distances, index 0 is iteration 1.
  std::vector<double> history_f;
  std::vector<double> history_w;

  // ||A^* A - I||_F / sqrt(n_rf) for the returned matrices.
  double orthogonality_error_f() const;
  double orthogonality_error_w() const;
};

// Elementwise projection onto {|x_mn| = modulus}; zero entries get phase 0.
CMatrix constant_modulus_projection(const CMatrix& m, double modulus);

// Nearest matrix with orthonormal columns, M (M^* M)^{-1/2}, computed as
// U V^* from the thin SVD of M. Throws DegenerateIterateError when M is
// numerically rank deficient.
CMatrix semi_unitary_projection(const CMatrix& m);

// Alternating projection between the constant-modulus and semi-unitary sets,
// initialised with the leading singular vectors of H.
AnalogPrecoderPair alternating_projection(const ChannelMatrix& h, int n_rf_tx, int n_rf_rx,
                                          const AlternatingProjectionOptions& options = {});

// G = W_RF^* H F_RF with cached singular values nu_1 >= nu_2 >= ...
class EffectiveChannel {
 public:
  explicit EffectiveChannel(CMatrix g);

  const CMatrix& matrix() const noexcept { return g_; }
  const RVector& singular_values() const noexcept { return nu_; }
  double max_singular_value() const { return nu_(0); }
  Eigen::Index n_rf_rx() const noexcept { return g_.rows(); }
  Eigen::Index n_rf_tx() const noexcept { return g_.cols(); }

 private:
  CMatrix g_;
  RVector nu_;
};

EffectiveChannel effective_channel(const ChannelMatrix& h, const AnalogPrecoderPair& pair);
EffectiveChannel effective_channel(const ChannelMatrix& h, const CMatrix& w_rf, const CMatrix& f_rf);

}  // namespace quantlink
