#include "framekit/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

#include "framekit/errors.hpp"

namespace framekit {

namespace {

bool finite(double x) { return std::isfinite(x); }

void validate_tail(const TailWeight& t) {
    if (const auto* c = std::get_if<ConstantWeight>(&t)) {
        if (!finite(c->c)) throw ValidationError("weights: constant must be finite");
    } else if (const auto* p = std::get_if<PolyWeight>(&t)) {
        if (!finite(p->a) || !finite(p->b))
            throw ValidationError("weights: polynomial coefficients must be finite");
        if (p->p < 0 || p->p > 32)
            throw ValidationError("weights: polynomial exponent must lie in [0, 32]");
    } else if (const auto* e = std::get_if<ExpWeight>(&t)) {
        if (!finite(e->a) || !finite(e->r))
            throw ValidationError("weights: exponential parameters must be finite");
    }
}

double eval_tail(const TailWeight& t, int i) {
    if (const auto* c = std::get_if<ConstantWeight>(&t)) return c->c;
    if (const auto* p = std::get_if<PolyWeight>(&t)) {
        double ip = 1.0;
        for (int k = 0; k < p->p; ++k) ip *= static_cast<double>(i);
        return p->a * ip + p->b;
    }
    const auto& e = std::get<ExpWeight>(t);
    return e.a * std::pow(e.r, i);
}

}  // namespace

void validate(const FiniteSequence& s) {
    if (s.space_dim < 1) throw ValidationError("sequence: space dimension must be >= 1");
    if (s.elements.empty()) throw ValidationError("sequence: must contain at least one element");
    for (std::size_t j = 0; j < s.elements.size(); ++j) {
        const CVector& v = s.elements[j];
        if (v.size() != s.space_dim)
            throw ValidationError("sequence: element " + std::to_string(j + 1) +
                                  " has dimension " + std::to_string(v.size()) +
                                  ", expected " + std::to_string(s.space_dim));
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            if (!finite(v(i).real()) || !finite(v(i).imag()))
                throw ValidationError("sequence: element " + std::to_string(j + 1) +
                                      " has a non-finite entry");
        }
    }
}

void validate(const StructuredSequence& s) {
    if (const auto* w = std::get_if<WeightedOnb>(&s)) {
        if (const auto* pw = std::get_if<PrefixWeight>(&w->weights)) {
            if (pw->values.size() > 100000)
                throw ValidationError("weights: prefix longer than 100000 entries");
            for (double v : pw->values)
                if (!finite(v)) throw ValidationError("weights: prefix value must be finite");
            validate_tail(pw->tail);
        } else if (const auto* c = std::get_if<ConstantWeight>(&w->weights)) {
            validate_tail(TailWeight(*c));
        } else if (const auto* p = std::get_if<PolyWeight>(&w->weights)) {
            validate_tail(TailWeight(*p));
        } else if (const auto* e = std::get_if<ExpWeight>(&w->weights)) {
            validate_tail(TailWeight(*e));
        }

        if (const auto* pp = std::get_if<PrefixPeriodicMap>(&w->sigma)) {
            if (pp->slots.empty())
                throw ValidationError("index map: periodic part needs at least one slot");
            if (pp->prefix.size() > 100000)
                throw ValidationError("index map: prefix longer than 100000 entries");
            for (int k : pp->prefix)
                if (k < 1) throw ValidationError("index map: prefix indices must be >= 1");
            for (const Slot& slot : pp->slots) {
                if (const auto* f = std::get_if<FixedSlot>(&slot)) {
                    if (f->k < 1)
                        throw ValidationError("index map: fixed slot index must be >= 1");
                } else {
                    const auto& a = std::get<ArithSlot>(slot);
                    if (a.start < 1)
                        throw ValidationError("index map: arithmetic slot start must be >= 1");
                    if (a.step < 1)
                        throw ValidationError("index map: arithmetic slot step must be >= 1");
                }
            }
        }
    } else {
        const auto& a = std::get<AnchoredOnb>(s);
        if (a.anchor < 1) throw ValidationError("anchored family: anchor must be >= 1");
    }
}

void validate(const TruncationPlan& p) {
    if (p.sizes.empty()) throw ValidationError("truncation plan: needs at least one size");
    int prev = 0;
    for (int n : p.sizes) {
        if (n < 1) throw ValidationError("truncation plan: sizes must be >= 1");
        if (n <= prev) throw ValidationError("truncation plan: sizes must be strictly increasing");
        prev = n;
    }
    if (p.dim_override && *p.dim_override < 1)
        throw ValidationError("truncation plan: dimension override must be >= 1");
}

int map_index(const IndexMap& sigma, int i) {
    if (i < 1) throw InputError("map_index: element index must be >= 1");
    if (std::holds_alternative<IdentityMap>(sigma)) return i;
    if (std::holds_alternative<RoundRobinBlocks>(sigma)) {
        // Block b covers indices b(b-1)/2 + 1 .. b(b+1)/2 and visits 1..b.
        const double bi = (std::sqrt(8.0 * i - 7.0) + 1.0) / 2.0;
        long long b = static_cast<long long>(bi);
        while (b * (b - 1) / 2 >= i) --b;
        while (b * (b + 1) / 2 < i) ++b;
        return static_cast<int>(i - b * (b - 1) / 2);
    }
    const auto& pp = std::get<PrefixPeriodicMap>(sigma);
    const int plen = static_cast<int>(pp.prefix.size());
    if (i <= plen) return pp.prefix[i - 1];
    const long long off = static_cast<long long>(i) - plen - 1;  // 0-based in the tail
    const long long q = static_cast<long long>(pp.slots.size());
    const long long cycle = off / q;
    const Slot& slot = pp.slots[static_cast<std::size_t>(off % q)];
    if (const auto* f = std::get_if<FixedSlot>(&slot)) return f->k;
    const auto& a = std::get<ArithSlot>(slot);
    const long long k = a.start + static_cast<long long>(a.step) * cycle;
    if (k > 1000000000LL) throw ResourceError("map_index: basis index overflow");
    return static_cast<int>(k);
}

double weight_at(const WeightForm& w, int i) {
    if (i < 1) throw InputError("weight_at: element index must be >= 1");
    if (const auto* pw = std::get_if<PrefixWeight>(&w)) {
        if (static_cast<std::size_t>(i) <= pw->values.size()) return pw->values[i - 1];
        return eval_tail(pw->tail, i);
    }
    if (const auto* c = std::get_if<ConstantWeight>(&w)) return eval_tail(TailWeight(*c), i);
    if (const auto* p = std::get_if<PolyWeight>(&w)) return eval_tail(TailWeight(*p), i);
    return eval_tail(TailWeight(std::get<ExpWeight>(w)), i);
}

FiniteSequence truncate(const StructuredSequence& s, int n, int max_dim,
                        std::optional<int> dim_override) {
    validate(s);
    if (n < 1) throw InputError("truncate: size must be >= 1");
    if (max_dim < 1) throw InputError("truncate: max_dim must be >= 1");

    struct Entry {
        int k;
        double w;
    };
    std::vector<Entry> entries;
    entries.reserve(static_cast<std::size_t>(n));
    int max_k = 1;

    if (const auto* wo = std::get_if<WeightedOnb>(&s)) {
        for (int i = 1; i <= n; ++i) {
            const int k = map_index(wo->sigma, i);
            const double w = weight_at(wo->weights, i);
            if (!std::isfinite(w))
                throw ValidationError("truncate: weight overflows at index " + std::to_string(i));
            entries.push_back({k, w});
            max_k = std::max(max_k, k);
        }
    } else {
        const auto& a = std::get<AnchoredOnb>(s);
        max_k = std::max(n, a.anchor);
    }

    if (max_k > max_dim)
        throw ResourceError("truncate: basis index " + std::to_string(max_k) +
                            " exceeds the maximum ambient dimension " + std::to_string(max_dim));
    int dim = max_k;
    if (dim_override) {
        if (*dim_override < max_k)
            throw InputError("truncate: dimension override " + std::to_string(*dim_override) +
                             " is smaller than the largest basis index " + std::to_string(max_k));
        if (*dim_override > max_dim)
            throw ResourceError("truncate: dimension override exceeds the maximum ambient dimension");
        dim = *dim_override;
    }

    FiniteSequence out;
    out.space_dim = dim;
    out.elements.reserve(static_cast<std::size_t>(n));
    if (std::holds_alternative<WeightedOnb>(s)) {
        for (const Entry& e : entries) {
            CVector v = CVector::Zero(dim);
            v(e.k - 1) = Complex(e.w, 0.0);
            out.elements.push_back(std::move(v));
        }
    } else {
        const auto& a = std::get<AnchoredOnb>(s);
        for (int i = 1; i <= n; ++i) {
            CVector v = CVector::Zero(dim);
            v(i - 1) += Complex(1.0, 0.0);
            v(a.anchor - 1) += Complex(1.0, 0.0);
            out.elements.push_back(std::move(v));
        }
    }
    return out;
}

FiniteSequence project_onto(const FiniteSequence& s, const std::vector<int>& support) {
    validate(s);
    std::set<int> keep;
    for (int k : support) {
        if (k < 1 || k > s.space_dim)
            throw InputError("project_onto: support index " + std::to_string(k) +
                             " outside [1, " + std::to_string(s.space_dim) + "]");
        if (!keep.insert(k).second)
            throw InputError("project_onto: duplicate support index " + std::to_string(k));
    }
    FiniteSequence out;
    out.space_dim = s.space_dim;
    out.elements.reserve(s.elements.size());
    for (const CVector& v : s.elements) {
        CVector w = CVector::Zero(s.space_dim);
        for (int k : keep) w(k - 1) = v(k - 1);
        out.elements.push_back(std::move(w));
    }
    return out;
}

}  // namespace framekit
