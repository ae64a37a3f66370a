#pragma once

// The four order relations (majorization, thermo-majorization, N,T- and
// J-majorization) as one comparison of rescaled Lorenz curves.
//
// +---------------------------------------------------------------------+
// | DIRECTION WARNING                                                   |
// | precedes(rel, a, b) means "a can be transformed into b": a's curve  |
// | lies on or above b's everywhere. A pure state precedes every state  |
// | of its dimension. Much of the majorization literature writes the    |
// | same relation with the opposite symbol.                             |
// +---------------------------------------------------------------------+

#include <functional>
#include <string_view>

#include "lytherm/spectra.hpp"

namespace lytherm {

/// Absolute tolerance on cumulative probabilities.
inline constexpr double kOrderTolerance = 1e-12;

enum class OrderTag { M, T, NT, J };

std::string_view to_string(OrderTag tag) noexcept;
/// Parses "m", "t", "nt", "j" (case-insensitive). Throws InvalidInput.
OrderTag parse_order_tag(std::string_view text);
ReservoirKind kind_for(OrderTag tag) noexcept;

struct Relation {
  OrderTag tag = OrderTag::M;
  ReservoirSpec reservoir;

  Bath bath() const { return bath_of(reservoir); }
};

/// Builds a relation; the reservoir kind is forced to match the tag.
Relation make_relation(OrderTag tag, ReservoirSpec reservoir = {});

/// a's Lorenz curve dominates b's within kOrderTolerance. Both spectra must
/// carry rel's bath (or none). Throws WeightMismatch.
bool precedes(const Relation& rel, const WeightedSpectrum& a,
              const WeightedSpectrum& b);

/// Same comparison with the relation inferred from the operands' baths.
bool precedes(const WeightedSpectrum& a, const WeightedSpectrum& b);

/// Zero-tolerance variant for the entropy searches. Where b's curve exceeds
/// one half the comparison is carried out on the complementary tail sums, so
/// small trailing blocks keep their relative precision. An absolute slack on
/// the curves would shift a searched lambda by roughly slack / (p_min W).
bool precedes_exact(const WeightedSpectrum& a, const WeightedSpectrum& b);

inline bool can_transform_into(const Relation& rel, const WeightedSpectrum& a,
                               const WeightedSpectrum& b) {
  return precedes(rel, a, b);
}

/// Flat states are ordered by support weight alone: rank for majorization,
/// the partition function of the occupied levels otherwise.
bool precedes_flat(const Relation& rel, double z_a, double z_b);

enum class Comparison { ABeforeB, BBeforeA, Equivalent, Incomparable };

std::string_view to_string(Comparison c) noexcept;

Comparison comparable(const Relation& rel, const WeightedSpectrum& a,
                      const WeightedSpectrum& b);

using OrderFn =
    std::function<bool(const WeightedSpectrum&, const WeightedSpectrum&)>;

namespace detail {

/// Curve dominance at the union of both breakpoint sets. The second overload
/// reverses the inequality at the first interior breakpoint; it exists only
/// to mutation-test the verification harnesses.
bool dominates(const LorenzCurve& a, const LorenzCurve& b);
bool dominates_corrupted(const LorenzCurve& a, const LorenzCurve& b);

void check_baths(const WeightedSpectrum& a, const WeightedSpectrum& b);

}  // namespace detail

/// Order predicate with one comparison flipped (harness self-tests).
OrderFn corrupted_order();

}  // namespace lytherm
