#pragma once

#include <string_view>
#include <utility>

#include "exactprob/dsl.hpp"
#include "exactprob/partition.hpp"
#include "exactprob/tree.hpp"

namespace exactprob::qkd {

/// The 16-outcome space over (AsOne, AchX, BchX, BmOne): "A sends 1",
/// "A/B chooses the diagonal polarisation scheme", "B measures 1".
OutcomeSpace qkd_space();

/// The a-priori weight of every outcome, as a literal table. The same
/// numbers are produced independently by qkd_tree(); the two encodings are
/// kept deliberately separate and compared in tests.
PriorAssignment qkd_ops();

/// Probability that the measured bit is 1, given the encoding basis, the
/// encoded bit, and the measuring basis: matching bases transmit the bit
/// faithfully, mismatched bases give a uniform result.
Rational measurement_prob_one(bool encode_basis_x, bool encoded_bit, bool measure_basis_x);

/// The four-level protocol tree: fair choices for AsOne, AchX, BchX, then
/// BmOne distributed per measurement_prob_one.
ProtocolTree qkd_tree();

/// All outcomes where the named variable has the given polarity. Works on
/// any boolean-cube space (the QKD space, the Eve space, DSL spaces).
Event named_event(const OutcomeSpace& space, std::string_view variable, bool polarity);

/// The 8-block partition by the sign pattern of (BchX, AchX, AsOne), in the
/// order TTT, FTT, TFT, FFT, TTF, FTF, TFF, FFF.
Partition partition_a(const OutcomeSpace& space);

/// P(BmOne) decomposed over partition_a by the law of total probability
/// (not by direct summation); the per-block breakdown is part of the
/// result. The total is 1/2.
TotalProbabilityResult p_b_measures_one();

struct PosteriorReport {
  Rational posterior;   // P(AsOne | BmOne) = 3/4
  Rational error_prob;  // 1 - posterior = 1/4
  Rational joint;       // P(AsOne ∩ BmOne) = 3/8
  Rational evidence;    // P(BmOne) = 1/2
};

/// How likely A sent 1 given that B measured 1, with the 25% error chance
/// this leaves for Bob (and equally for an eavesdropper).
PosteriorReport p_a_sent_one_given_b_measured_one();

/// Intercept-resend extension: Eve measures A's photon in a fair random
/// basis EchX, obtaining EmOne, and resends that bit encoded in her basis;
/// Bob then measures the resent photon. 64 outcomes over
/// (AsOne, AchX, EchX, EmOne, BchX, BmOne) in protocol order.
std::pair<OutcomeSpace, PriorAssignment> eve_space_and_prior();

struct InterceptResendStats {
  Rational sifted_prob;            // P(AchX = BchX) = 1/2
  Rational sifted_qber;            // P(BmOne ≠ AsOne | AchX = BchX) = 1/4
  Rational eve_correct_given_sift; // P(EmOne = AsOne | AchX = BchX) = 3/4
};

InterceptResendStats intercept_resend_stats();

/// The base model as a DSL model file: the 16-row table, the partition
/// events, and the standard queries. Emittable, reloadable, requeryable.
dsl::ModelFile qkd_model();

/// The intercept-resend model as a DSL model file: nonzero rows plus a
/// `default -> 0` row, the sifting/error events, and the attack queries.
dsl::ModelFile eve_model();

}  // namespace exactprob::qkd
