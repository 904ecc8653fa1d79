#pragma once

// Report assembly and deterministic rendering.
//
// Every artifact is first built as an ordered JSON document; insertion order
// is the documented field order. One writer renders it: floats always print
// as %.17g (round-trip exact), objects keep their field order, and nothing
// depends on locale or hashing, so identical configs produce byte-identical
// bytes. The text rendering is an indented outline of the same document and
// the CSV rendering is the study table, both through the same float format.

#include <string>

#include "framekit/classify.hpp"
#include "framekit/duality.hpp"
#include "framekit/truncation.hpp"
#include "json.hpp"

namespace framekit {

using OrderedJson = nlohmann::ordered_json;

// %.17g, the one float format every rendering uses.
std::string fmt_float(double v);

// ---- document builders ------------------------------------------------------

OrderedJson json_tolerance(const Tolerance& t);
OrderedJson json_bound(const Bound& b);          // {"finite": bool, "value"?: x}
OrderedJson json_xreal(const XReal& x);          // {"kind": "...", "value"?: x}
OrderedJson json_trend(const Trend& t);          // {"kind": "...", "value"?: x}
OrderedJson json_support(const SupportSet& s);   // {"kind": "...", "indices"?: [...]}
OrderedJson json_complex(const Complex& z);      // [re, im]
OrderedJson json_vector(const CVector& v);       // [[re, im], ...]
OrderedJson json_elements(const FiniteSequence& s);
OrderedJson json_profile(const DomainProfile& p);
OrderedJson json_classification(const ClassificationReport& r);
OrderedJson json_study(const StudySeries& s);
OrderedJson json_reconciliation(const Reconciliation& r);

// Dual-system block. `bio` may be null (then `bio_reason` says why); the
// pairing matrix is included only when requested (the dedicated dual
// command wants it, the analyze summary does not).
OrderedJson json_dual_system(const OperatorBundle& b, const DualSystem& d,
                             const BiorthogonalReport* bio, const std::string& bio_reason,
                             bool include_pairing);

// ---- rendering --------------------------------------------------------------

std::string json_text(const OrderedJson& doc);  // ends with '\n'
std::string text_report(const OrderedJson& doc);
std::string study_csv(const StudySeries& s);

}  // namespace framekit
