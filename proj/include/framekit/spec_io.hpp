#pragma once

// JSON sequence specs: one object per file, discriminated by "kind".
//
//   {"kind": "explicit", "space_dim": 2,
//    "elements": [[[1, 0], [0, 0]], [[1, 0], [1, 0]]]}
//     Entries are [re, im] pairs; a bare number is a real entry.
//
//   {"kind": "weighted_onb",
//    "sigma":   {"map": "identity"}
//             | {"map": "round_robin_blocks"}
//             | {"map": "prefix_periodic", "prefix": [1, 2],
//                "slots": [{"slot": "fixed", "k": 1},
//                          {"slot": "arith", "start": 2, "step": 1}]},
//    "weights": {"form": "const", "c": 1}
//             | {"form": "poly", "a": 1, "p": 1, "b": 1}
//             | {"form": "exp", "a": 1, "r": 0.5}
//             | {"form": "prefix", "values": [...], "tail": {...}}}
//     The prefix tail takes the const/poly/exp forms, not another prefix.
//
//   {"kind": "anchored_onb", "anchor": 1}
//
// Parse errors keep the parser's line/column diagnostics; schema errors name
// the offending field by path. Both raise InputError. The parsed value is
// also run through validate(), so semantic violations surface as
// ValidationError exactly as if the object had been built in code.

#include <string>
#include <variant>

#include "framekit/sequences.hpp"

namespace framekit {

using AnySequence = std::variant<FiniteSequence, StructuredSequence>;

AnySequence parse_sequence_spec(const std::string& text);
AnySequence load_sequence_spec(const std::string& path);

inline bool is_structured(const AnySequence& s) {
    return std::holds_alternative<StructuredSequence>(s);
}

}  // namespace framekit
