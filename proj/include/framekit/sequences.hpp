#pragma once

// Sequence model. A FiniteSequence is a concrete list of vectors in C^n.
// A StructuredSequence describes an infinite family in closed form so that
// domains and bounds stay decidable:
//
//   WeightedOnb  elements psi_i = w_i * e_{sigma(i)}, where sigma maps the
//                element index to a basis index and w is a closed-form
//                weight (constant, a*i^p + b, a*r^i, or an explicit prefix
//                followed by one of those).
//   AnchoredOnb  elements psi_i = e_i + e_{anchor}; every element carries
//                the anchor coordinate.
//
// Indices are 1-based throughout.

#include <optional>
#include <variant>
#include <vector>

#include "framekit/numkernel.hpp"

namespace framekit {

inline constexpr int kDefaultMaxDim = 4096;

struct FiniteSequence {
    Eigen::Index space_dim = 0;
    std::vector<CVector> elements;

    Eigen::Index count() const { return static_cast<Eigen::Index>(elements.size()); }
};

// ---- weight forms ----------------------------------------------------------

struct ConstantWeight {
    double c = 0.0;
};

// w_i = a * i^p + b with integer p >= 0.
struct PolyWeight {
    double a = 0.0;
    int p = 0;
    double b = 0.0;
};

// w_i = a * r^i.
struct ExpWeight {
    double a = 0.0;
    double r = 0.0;
};

using TailWeight = std::variant<ConstantWeight, PolyWeight, ExpWeight>;

// Explicit leading values, then a closed-form tail evaluated at the absolute
// index. Nesting prefixes is not allowed (enforced by the type).
struct PrefixWeight {
    std::vector<double> values;
    TailWeight tail;
};

using WeightForm = std::variant<ConstantWeight, PolyWeight, ExpWeight, PrefixWeight>;

// ---- index maps ------------------------------------------------------------

// sigma(i) = i.
struct IdentityMap {};

// Blocks of growing length visiting the basis round-robin:
// (1), (1,2), (1,2,3), ... so every basis index is hit infinitely often.
struct RoundRobinBlocks {};

// Periodic tail slot: either a fixed basis index (hit once per period, so
// infinitely often overall) or an arithmetic progression start + step*cycle.
struct FixedSlot {
    int k = 1;
};
struct ArithSlot {
    int start = 1;
    int step = 1;
};
using Slot = std::variant<FixedSlot, ArithSlot>;

// Explicit prefix of basis indices, then the slots repeat forever.
struct PrefixPeriodicMap {
    std::vector<int> prefix;
    std::vector<Slot> slots;
};

using IndexMap = std::variant<IdentityMap, RoundRobinBlocks, PrefixPeriodicMap>;

// ---- structured sequences ---------------------------------------------------

struct WeightedOnb {
    IndexMap sigma;
    WeightForm weights;
};

struct AnchoredOnb {
    int anchor = 1;
};

using StructuredSequence = std::variant<WeightedOnb, AnchoredOnb>;

// Strictly increasing truncation sizes; optional fixed ambient dimension.
struct TruncationPlan {
    std::vector<int> sizes;
    std::optional<int> dim_override;
};

// ---- operations -------------------------------------------------------------

void validate(const FiniteSequence& s);
void validate(const StructuredSequence& s);
void validate(const TruncationPlan& p);

// sigma(i) and w_i for a validated family.
int map_index(const IndexMap& sigma, int i);
double weight_at(const WeightForm& w, int i);

// First n elements materialized as a FiniteSequence. The ambient dimension
// is the largest basis index reached (or the override); exceeding max_dim
// raises ResourceError, an override smaller than a reached index raises
// InputError.
FiniteSequence truncate(const StructuredSequence& s, int n,
                        int max_dim = kDefaultMaxDim,
                        std::optional<int> dim_override = std::nullopt);

// Coordinate projection: zero every coordinate outside `support`
// (1-based, must be distinct and within range). Dimension is unchanged.
FiniteSequence project_onto(const FiniteSequence& s, const std::vector<int>& support);

}  // namespace framekit
