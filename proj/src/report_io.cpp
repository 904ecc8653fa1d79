#include "framekit/report_io.hpp"

#include <cstdio>

namespace framekit {

std::string fmt_float(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

// Inline-rendering limit; purely a function of content, so deterministic.
constexpr std::size_t kInlineLimit = 140;

std::string escape_string(const std::string& s) {
    std::string out = "\"";
    char buf[8];
    for (unsigned char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            case '\b': out += "\\b"; break;
            case '\f': out += "\\f"; break;
            default:
                if (c < 0x20) {
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += static_cast<char>(c);
                }
        }
    }
    out += '"';
    return out;
}

std::string scalar_json(const OrderedJson& v) {
    if (v.is_null()) return "null";
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_string()) return escape_string(v.get<std::string>());
    if (v.is_number_float()) return fmt_float(v.get<double>());
    if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
    return std::to_string(v.get<long long>());
}

// Flat "[a, b, ...]" for arrays with only scalar (possibly nested) content.
bool inline_array(const OrderedJson& v, std::string& out) {
    std::string s = "[";
    bool first = true;
    for (const auto& item : v) {
        if (!first) s += ", ";
        first = false;
        if (item.is_object()) return false;
        if (item.is_array()) {
            std::string nested;
            if (!inline_array(item, nested)) return false;
            s += nested;
        } else {
            s += scalar_json(item);
        }
        if (s.size() > kInlineLimit) return false;
    }
    s += "]";
    if (s.size() > kInlineLimit) return false;
    out = s;
    return true;
}

void write_json_value(std::string& out, const OrderedJson& v, int indent) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    const std::string pad2(static_cast<std::size_t>(indent) + 2, ' ');
    if (v.is_object()) {
        if (v.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        std::size_t i = 0;
        for (auto it = v.begin(); it != v.end(); ++it, ++i) {
            out += pad2 + escape_string(it.key()) + ": ";
            write_json_value(out, it.value(), indent + 2);
            if (i + 1 < v.size()) out += ",";
            out += "\n";
        }
        out += pad + "}";
        return;
    }
    if (v.is_array()) {
        if (v.empty()) {
            out += "[]";
            return;
        }
        std::string flat;
        if (inline_array(v, flat)) {
            out += flat;
            return;
        }
        out += "[\n";
        for (std::size_t i = 0; i < v.size(); ++i) {
            out += pad2;
            write_json_value(out, v[i], indent + 2);
            if (i + 1 < v.size()) out += ",";
            out += "\n";
        }
        out += pad + "]";
        return;
    }
    out += scalar_json(v);
}

std::string scalar_text(const OrderedJson& v) {
    if (v.is_string()) return v.get<std::string>();
    return scalar_json(v);
}

// Bounds, extended reals and trends read as one word in the outline:
// {"finite": false} -> infinite, {"kind": "converged", "value": 4} ->
// converged(4), and so on. Anything else keeps its structure.
bool sugar_text(const OrderedJson& v, std::string& out) {
    if (!v.is_object()) return false;
    if (v.contains("finite") && v["finite"].is_boolean()) {
        if (v.size() == 1 && !v["finite"].get<bool>()) {
            out = "infinite";
            return true;
        }
        if (v.size() == 2 && v.contains("value") && v["finite"].get<bool>()) {
            out = fmt_float(v["value"].get<double>());
            return true;
        }
        return false;
    }
    if (v.contains("kind") && v["kind"].is_string()) {
        const std::string k = v["kind"].get<std::string>();
        const bool valued = v.size() == 2 && v.contains("value");
        if (v.size() > 1 && !valued) return false;
        if (k == "finite" && valued) {
            out = fmt_float(v["value"].get<double>());
            return true;
        }
        if (k == "converged" && valued) {
            out = "converged(" + fmt_float(v["value"].get<double>()) + ")";
            return true;
        }
        if ((k == "infinite" || k == "absent" || k == "diverging" || k == "inconclusive") &&
            v.size() == 1) {
            out = k;
            return true;
        }
    }
    return false;
}

bool inline_text(const OrderedJson& v, std::string& out) {
    std::string s;
    if (!v.is_object() && !v.is_array()) {
        s = scalar_text(v);
    } else if (sugar_text(v, s)) {
        // done
    } else if (v.is_array()) {
        s = "[";
        bool first = true;
        for (const auto& item : v) {
            if (!first) s += ", ";
            first = false;
            std::string part;
            if (!inline_text(item, part)) return false;
            s += part;
            if (s.size() > kInlineLimit) return false;
        }
        s += "]";
    } else {
        s = "{";
        bool first = true;
        for (auto it = v.begin(); it != v.end(); ++it) {
            if (!first) s += ", ";
            first = false;
            std::string part;
            if (!inline_text(it.value(), part)) return false;
            s += it.key() + ": " + part;
            if (s.size() > kInlineLimit) return false;
        }
        s += "}";
    }
    if (s.size() > kInlineLimit) return false;
    out = s;
    return true;
}

void write_text_value(std::string& out, const OrderedJson& v, int indent) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    if (v.is_object()) {
        for (auto it = v.begin(); it != v.end(); ++it) {
            std::string flat;
            if (inline_text(it.value(), flat)) {
                out += pad + it.key() + ": " + flat + "\n";
            } else {
                out += pad + it.key() + ":\n";
                write_text_value(out, it.value(), indent + 2);
            }
        }
        return;
    }
    if (v.is_array()) {
        for (const auto& item : v) {
            std::string flat;
            if (inline_text(item, flat)) {
                out += pad + "- " + flat + "\n";
            } else {
                out += pad + "-\n";
                write_text_value(out, item, indent + 2);
            }
        }
        return;
    }
    out += pad + scalar_text(v) + "\n";
}

const char* provenance_name(Provenance p) {
    return p == Provenance::Analytic ? "analytic" : "numeric_at_truncation";
}

const char* verdict_name(ReconcileVerdict v) {
    switch (v) {
        case ReconcileVerdict::Agree: return "agree";
        case ReconcileVerdict::Mismatch: return "mismatch";
        case ReconcileVerdict::EmpiricalOnly: return "empirical_only";
        default: return "inconclusive";
    }
}

}  // namespace

OrderedJson json_tolerance(const Tolerance& t) {
    OrderedJson j;
    j["rank_rel"] = t.rank_rel;
    j["abs_floor"] = t.abs_floor;
    return j;
}

OrderedJson json_bound(const Bound& b) {
    OrderedJson j;
    j["finite"] = !b.infinite;
    if (!b.infinite) j["value"] = b.value;
    return j;
}

OrderedJson json_xreal(const XReal& x) {
    OrderedJson j;
    switch (x.kind) {
        case XReal::Kind::Absent: j["kind"] = "absent"; break;
        case XReal::Kind::Infinite: j["kind"] = "infinite"; break;
        case XReal::Kind::Finite:
            j["kind"] = "finite";
            j["value"] = x.value;
            break;
    }
    return j;
}

OrderedJson json_trend(const Trend& t) {
    OrderedJson j;
    switch (t.kind) {
        case TrendKind::Converged:
            j["kind"] = "converged";
            j["value"] = t.value;
            break;
        case TrendKind::Diverging: j["kind"] = "diverging"; break;
        case TrendKind::Inconclusive: j["kind"] = "inconclusive"; break;
    }
    return j;
}

OrderedJson json_support(const SupportSet& s) {
    OrderedJson j;
    if (s.covers_everything()) {
        j["kind"] = "all";
    } else if (s.cofinite) {
        j["kind"] = "all_except";
        j["indices"] = s.indices;
    } else if (s.empty()) {
        j["kind"] = "none";
    } else {
        j["kind"] = "only";
        j["indices"] = s.indices;
    }
    return j;
}

OrderedJson json_complex(const Complex& z) {
    return OrderedJson::array({z.real(), z.imag()});
}

OrderedJson json_vector(const CVector& v) {
    OrderedJson j = OrderedJson::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(json_complex(v(i)));
    return j;
}

OrderedJson json_elements(const FiniteSequence& s) {
    OrderedJson j = OrderedJson::array();
    for (const CVector& v : s.elements) j.push_back(json_vector(v));
    return j;
}

OrderedJson json_profile(const DomainProfile& p) {
    OrderedJson j;
    j["support"] = json_support(p.support);
    j["analysis_densely_defined"] = p.analysis_densely_defined;
    j["synthesis_closable"] = p.synthesis_closable;
    j["frame_operator_closable"] = p.frame_operator_closable;
    j["analytic_classification"] = p.analytic_classification;
    j["sigma_injective"] = p.sigma_injective;
    j["any_zero_mass"] = p.any_zero_mass;
    j["any_zero_weight"] = p.any_zero_weight;
    j["any_infinite_mass"] = p.any_infinite_mass;
    j["inf_finite_mass"] = json_xreal(p.inf_finite_mass);
    j["sup_finite_mass"] = json_xreal(p.sup_finite_mass);
    j["sup_mass"] = json_xreal(p.sup_mass);
    j["inf_weight_sq"] = p.inf_weight_sq;
    OrderedJson leads = OrderedJson::array();
    for (const auto& [k, m] : p.lead_masses) {
        OrderedJson e;
        e["k"] = k;
        e["finite"] = !m.infinite;
        if (!m.infinite) e["value"] = m.value;
        leads.push_back(std::move(e));
    }
    j["lead_masses"] = std::move(leads);
    j["notes"] = p.notes;
    return j;
}

OrderedJson json_classification(const ClassificationReport& r) {
    OrderedJson j;
    j["resolved"] = r.resolved;
    j["provenance"] = provenance_name(r.provenance);
    j["truncation_size"] = r.truncation_size;
    OrderedJson bounds;
    bounds["A"] = json_bound(r.lower_frame_bound);
    bounds["B"] = json_bound(r.bessel_bound);
    bounds["A_prime"] = json_bound(r.riesz_fischer_bound);
    j["bounds"] = std::move(bounds);
    OrderedJson flags;
    flags["bessel"] = r.is_bessel;
    flags["frame"] = r.is_frame;
    flags["lower_frame"] = r.is_lower_frame;
    flags["riesz_fischer"] = r.is_riesz_fischer;
    flags["riesz_basis"] = r.is_riesz_basis;
    flags["complete"] = r.is_complete;
    flags["minimal"] = r.is_minimal;
    flags["omega_independent"] = r.is_omega_independent;
    flags["exact"] = r.is_exact;
    j["flags"] = std::move(flags);
    j["tolerance"] = json_tolerance(r.tol);
    return j;
}

OrderedJson json_study(const StudySeries& s) {
    OrderedJson j;
    OrderedJson cfg;
    cfg["converge_rel"] = s.config.converge_rel;
    cfg["blowup_factor"] = s.config.blowup_factor;
    cfg["growth_ratio"] = s.config.growth_ratio;
    cfg["window"] = s.config.window;
    j["config"] = std::move(cfg);
    j["has_restricted"] = s.has_restricted;
    OrderedJson rows = OrderedJson::array();
    for (const StudyRow& r : s.rows) {
        OrderedJson row;
        row["size"] = r.size;
        row["ambient_dim"] = r.ambient_dim;
        row["span_dim"] = r.span_dim;
        row["A"] = r.a;
        row["B"] = r.b;
        row["A_prime"] = r.a_prime;
        if (s.has_restricted) {
            row["restricted_span_dim"] = r.restricted_span_dim;
            row["restricted_A"] = r.restricted_a;
            row["restricted_B"] = r.restricted_b;
            row["restricted_A_prime"] = r.restricted_a_prime;
        }
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    OrderedJson trends;
    trends["A"] = json_trend(s.trend_a);
    trends["B"] = json_trend(s.trend_b);
    trends["A_prime"] = json_trend(s.trend_a_prime);
    if (s.has_restricted) {
        trends["restricted_A"] = json_trend(s.trend_restricted_a);
        trends["restricted_B"] = json_trend(s.trend_restricted_b);
    }
    j["trends"] = std::move(trends);
    return j;
}

OrderedJson json_reconciliation(const Reconciliation& r) {
    OrderedJson j;
    OrderedJson rows = OrderedJson::array();
    for (const ReconcileRow& row : r.rows) {
        OrderedJson e;
        e["quantity"] = row.quantity;
        e["analytic"] = row.analytic;
        e["numeric"] = row.numeric;
        e["verdict"] = verdict_name(row.verdict);
        rows.push_back(std::move(e));
    }
    j["rows"] = std::move(rows);
    j["any_mismatch"] = r.any_mismatch;
    return j;
}

OrderedJson json_dual_system(const OperatorBundle& b, const DualSystem& d,
                             const BiorthogonalReport* bio, const std::string& bio_reason,
                             bool include_pairing) {
    OrderedJson j;
    j["available"] = true;
    j["space_dim"] = static_cast<int>(b.dim());
    j["count"] = static_cast<int>(b.count());
    j["span_dim"] = static_cast<int>(b.span_dim());
    j["span_lower_bound"] = d.span_lower_bound;
    j["reconstruction_residual"] = d.residual;
    j["duals"] = json_elements(d.duals);
    OrderedJson bj;
    if (bio) {
        bj["available"] = true;
        bj["max_deviation"] = bio->max_deviation;
        if (include_pairing) {
            OrderedJson rows = OrderedJson::array();
            for (Eigen::Index i = 0; i < bio->pairing.rows(); ++i) {
                OrderedJson row = OrderedJson::array();
                for (Eigen::Index k = 0; k < bio->pairing.cols(); ++k)
                    row.push_back(json_complex(bio->pairing(i, k)));
                rows.push_back(std::move(row));
            }
            bj["pairing"] = std::move(rows);
        }
    } else {
        bj["available"] = false;
        bj["reason"] = bio_reason;
    }
    j["biorthogonal"] = std::move(bj);
    return j;
}

std::string json_text(const OrderedJson& doc) {
    std::string out;
    write_json_value(out, doc, 0);
    out += "\n";
    return out;
}

std::string text_report(const OrderedJson& doc) {
    std::string out;
    write_text_value(out, doc, 0);
    return out;
}

std::string study_csv(const StudySeries& s) {
    std::string out =
        "N,ambient_dim,span_dim,A,B,A_prime,"
        "restricted_span_dim,restricted_A,restricted_B,restricted_A_prime\n";
    for (const StudyRow& r : s.rows) {
        out += std::to_string(r.size) + "," + std::to_string(r.ambient_dim) + "," +
               std::to_string(r.span_dim) + ",";
        out += fmt_float(r.a) + "," + fmt_float(r.b) + "," + fmt_float(r.a_prime) + ",";
        if (s.has_restricted) {
            out += std::to_string(r.restricted_span_dim) + "," + fmt_float(r.restricted_a) + "," +
                   fmt_float(r.restricted_b) + "," + fmt_float(r.restricted_a_prime);
        } else {
            out += ",,,";
        }
        out += "\n";
    }
    return out;
}

}  // namespace framekit
