#pragma once

// Frame-related operators at a finite truncation, and exact domain analysis
// for the structured families.
//
// For a finite sequence with elements as columns of D (n x m):
//   synthesis  D : C^m -> C^n
//   analysis   C = D^*            (exactly the adjoint, by construction)
//   frame_op   S = D C            (n x n, Hermitian PSD)
//   gram       G = C D            (m x m, Hermitian PSD)
//   span_basis B                  (n x r, orthonormal columns spanning ran D)
//   gamma_span = B^* S B          (r x r: the frame operator restricted to
//                                  the span, written in span coordinates;
//                                  this is the part that is safe to invert)
//
// For a structured family the per-basis-index mass
//   W_k = sum over { i : sigma(i) = k } of |w_i|^2
// decides every domain question: the analysis operator is densely defined
// iff every W_k is finite, and the closure of its domain is spanned by
// { e_k : W_k < infinity }.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "framekit/numkernel.hpp"
#include "framekit/sequences.hpp"

namespace framekit {

// A series value that is either an exact finite number or +infinity.
// The infinite state is a flag, never a sentinel float.
struct Mass {
    bool infinite = false;
    double value = 0.0;

    static Mass inf() { return {true, 0.0}; }
    static Mass of(double v) { return {false, v}; }
};

// Extended value for extrema taken over possibly-empty index sets.
struct XReal {
    enum class Kind { Absent, Finite, Infinite };
    Kind kind = Kind::Absent;
    double value = 0.0;

    static XReal absent() { return {Kind::Absent, 0.0}; }
    static XReal finite(double v) { return {Kind::Finite, v}; }
    static XReal infinite() { return {Kind::Infinite, 0.0}; }
    bool is_finite() const { return kind == Kind::Finite; }
};

// Subset of basis indices, either a finite list or the complement of one.
struct SupportSet {
    bool cofinite = false;       // true: all indices except `indices`
    std::vector<int> indices;    // sorted, distinct

    bool contains(int k) const;
    bool covers_everything() const { return cofinite && indices.empty(); }
    bool empty() const { return !cofinite && indices.empty(); }
    // Members within [1, dim], ascending.
    std::vector<int> within(int dim) const;
};

struct OperatorBundle {
    CMatrix synthesis;    // D
    CMatrix analysis;     // C = D^*
    CMatrix frame_op;     // S = D C
    CMatrix gram;         // G = C D
    CMatrix span_basis;   // B, orthonormal columns
    CMatrix gamma_span;   // B^* S B
    Tolerance tol;

    Eigen::Index dim() const { return synthesis.rows(); }
    Eigen::Index count() const { return synthesis.cols(); }
    Eigen::Index span_dim() const { return span_basis.cols(); }
};

// Exact description of the domain structure of a family's analysis operator.
struct DomainProfile {
    SupportSet support;                    // { k : W_k finite }
    bool analysis_densely_defined = false; // every W_k finite
    bool synthesis_closable = false;       // equivalent to the line above
    // The frame operator acts diagonally (through the masses) on the finite
    // part; we flag it closable on the whole space only when those finite
    // masses stay bounded. The anchored family gets an explicit witness
    // instead (see notes).
    bool frame_operator_closable = false;

    bool analytic_classification = false;  // false: defer verdicts to truncation
    bool sigma_injective = false;
    bool any_zero_mass = false;            // some basis index never weighted
    bool any_zero_weight = false;          // some element is the zero vector
    bool any_infinite_mass = false;

    XReal inf_finite_mass;                 // inf over finite W_k (absent if none)
    XReal sup_finite_mass;                 // sup over finite W_k (infinite = unbounded)
    XReal sup_mass;                        // sup over all W_k
    double inf_weight_sq = 0.0;            // inf over i of |w_i|^2

    std::vector<std::pair<int, Mass>> lead_masses;  // W_1 .. W_8
    std::string notes;                     // derivation trace, human readable
};

// Build all operators for a finite sequence. The tolerance fixes the rank
// decision behind span_basis.
OperatorBundle assemble(const FiniteSequence& s, const Tolerance& tol);

// Same, starting from an explicit synthesis matrix (columns = elements).
// Accepts degenerate shapes (0 rows) so restricted bundles can be empty.
OperatorBundle assemble_matrix(const CMatrix& synthesis, const Tolerance& tol);

// Exact W_k for one basis index.
Mass mass_at(const StructuredSequence& s, int k);

// Full domain analysis. Raises UnsupportedFamilyError when the family falls
// outside the window where the series analysis is exact.
DomainProfile domain_profile(const StructuredSequence& s);

// Operators of the projected sequence, assembled inside the support
// subspace (rows outside the support are dropped, not just zeroed).
OperatorBundle restricted_bundle(const FiniteSequence& s, const std::vector<int>& support,
                                 const Tolerance& tol);
OperatorBundle restricted_bundle(const FiniteSequence& s, const DomainProfile& profile,
                                 const Tolerance& tol);

// <U c, d> where U is the Gram form: equals sum_{i,j} c_i conj(d_j) <psi_i, psi_j>.
Complex gram_quadratic_form(const OperatorBundle& b, const CVector& c, const CVector& d);

}  // namespace framekit
