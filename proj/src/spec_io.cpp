#include "framekit/spec_io.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "framekit/errors.hpp"
#include "json.hpp"

namespace framekit {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw InputError("spec field '" + path + "': " + msg);
}

std::string type_name(const json& v) {
    switch (v.type()) {
        case json::value_t::null: return "null";
        case json::value_t::boolean: return "a boolean";
        case json::value_t::string: return "a string";
        case json::value_t::array: return "an array";
        case json::value_t::object: return "an object";
        default: return "a number";
    }
}

const json& field(const json& obj, const std::string& path, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) fail(path.empty() ? key : path + "." + key, "missing");
    return *it;
}

// Typo guard: every object must have exactly the keys its kind declares.
void check_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : allowed)
            if (it.key() == k) known = true;
        if (!known) fail(path.empty() ? it.key() : path + "." + it.key(), "unknown field");
    }
}

double num_at(const json& obj, const std::string& path, const char* key) {
    const json& v = field(obj, path, key);
    if (!v.is_number()) fail(path + "." + key, "expected a number, got " + type_name(v));
    return v.get<double>();
}

int int_at(const json& obj, const std::string& path, const char* key) {
    const json& v = field(obj, path, key);
    if (!v.is_number_integer()) fail(path + "." + key, "expected an integer, got " + type_name(v));
    long long n = v.get<long long>();
    if (n < -1000000000LL || n > 1000000000LL) fail(path + "." + key, "integer out of range");
    return static_cast<int>(n);
}

std::string string_at(const json& obj, const std::string& path, const char* key) {
    const json& v = field(obj, path, key);
    if (!v.is_string()) fail(path + "." + key, "expected a string, got " + type_name(v));
    return v.get<std::string>();
}

const json& array_at(const json& obj, const std::string& path, const char* key) {
    const json& v = field(obj, path, key);
    if (!v.is_array()) fail(path + "." + key, "expected an array, got " + type_name(v));
    return v;
}

const json& object_at(const json& obj, const std::string& path, const char* key) {
    const json& v = field(obj, path, key);
    if (!v.is_object()) fail(path + "." + key, "expected an object, got " + type_name(v));
    return v;
}

Complex entry_from(const json& v, const std::string& path) {
    if (v.is_number()) return Complex(v.get<double>(), 0.0);
    if (v.is_array()) {
        if (v.size() != 2 || !v[0].is_number() || !v[1].is_number())
            fail(path, "a complex entry is a [re, im] pair of numbers");
        return Complex(v[0].get<double>(), v[1].get<double>());
    }
    fail(path, "expected a number or a [re, im] pair, got " + type_name(v));
}

FiniteSequence parse_explicit(const json& root) {
    check_keys(root, "", {"kind", "space_dim", "elements"});
    FiniteSequence s;
    s.space_dim = int_at(root, "", "space_dim");
    const json& elems = array_at(root, "", "elements");
    for (std::size_t j = 0; j < elems.size(); ++j) {
        const std::string epath = "elements[" + std::to_string(j + 1) + "]";
        const json& ev = elems[j];
        if (!ev.is_array()) fail(epath, "expected an array of entries, got " + type_name(ev));
        CVector v(static_cast<Eigen::Index>(ev.size()));
        for (std::size_t i = 0; i < ev.size(); ++i)
            v(static_cast<Eigen::Index>(i)) =
                entry_from(ev[i], epath + "[" + std::to_string(i + 1) + "]");
        s.elements.push_back(std::move(v));
    }
    return s;
}

TailWeight parse_tail(const json& w, const std::string& path) {
    const std::string form = string_at(w, path, "form");
    if (form == "const") {
        check_keys(w, path, {"form", "c"});
        return ConstantWeight{num_at(w, path, "c")};
    }
    if (form == "poly") {
        check_keys(w, path, {"form", "a", "p", "b"});
        return PolyWeight{num_at(w, path, "a"), int_at(w, path, "p"), num_at(w, path, "b")};
    }
    if (form == "exp") {
        check_keys(w, path, {"form", "a", "r"});
        return ExpWeight{num_at(w, path, "a"), num_at(w, path, "r")};
    }
    fail(path + ".form", "expected one of const|poly|exp, got \"" + form + "\"");
}

WeightForm parse_weights(const json& w, const std::string& path) {
    const std::string form = string_at(w, path, "form");
    if (form == "prefix") {
        check_keys(w, path, {"form", "values", "tail"});
        PrefixWeight p;
        const json& vals = array_at(w, path, "values");
        for (std::size_t i = 0; i < vals.size(); ++i) {
            const json& v = vals[i];
            if (!v.is_number())
                fail(path + ".values[" + std::to_string(i + 1) + "]",
                     "expected a number, got " + type_name(v));
            p.values.push_back(v.get<double>());
        }
        p.tail = parse_tail(object_at(w, path, "tail"), path + ".tail");
        return p;
    }
    TailWeight t = parse_tail(w, path);
    return std::visit([](auto v) -> WeightForm { return v; }, t);
}

IndexMap parse_sigma(const json& m, const std::string& path) {
    const std::string map = string_at(m, path, "map");
    if (map == "identity") {
        check_keys(m, path, {"map"});
        return IdentityMap{};
    }
    if (map == "round_robin_blocks") {
        check_keys(m, path, {"map"});
        return RoundRobinBlocks{};
    }
    if (map == "prefix_periodic") {
        check_keys(m, path, {"map", "prefix", "slots"});
        PrefixPeriodicMap pp;
        const json& prefix = array_at(m, path, "prefix");
        for (std::size_t i = 0; i < prefix.size(); ++i) {
            const json& v = prefix[i];
            if (!v.is_number_integer())
                fail(path + ".prefix[" + std::to_string(i + 1) + "]",
                     "expected an integer basis index, got " + type_name(v));
            pp.prefix.push_back(v.get<int>());
        }
        const json& slots = array_at(m, path, "slots");
        for (std::size_t i = 0; i < slots.size(); ++i) {
            const std::string spath = path + ".slots[" + std::to_string(i + 1) + "]";
            const json& sv = slots[i];
            if (!sv.is_object()) fail(spath, "expected an object, got " + type_name(sv));
            const std::string slot = string_at(sv, spath, "slot");
            if (slot == "fixed") {
                check_keys(sv, spath, {"slot", "k"});
                pp.slots.push_back(FixedSlot{int_at(sv, spath, "k")});
            } else if (slot == "arith") {
                check_keys(sv, spath, {"slot", "start", "step"});
                pp.slots.push_back(ArithSlot{int_at(sv, spath, "start"), int_at(sv, spath, "step")});
            } else {
                fail(spath + ".slot", "expected fixed|arith, got \"" + slot + "\"");
            }
        }
        return pp;
    }
    fail(path + ".map", "expected one of identity|round_robin_blocks|prefix_periodic, got \"" + map + "\"");
}

}  // namespace

AnySequence parse_sequence_spec(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        // nlohmann's message already carries line/column position.
        throw InputError(std::string("spec parse error: ") + e.what());
    }
    if (!root.is_object()) throw InputError("spec: top level must be an object");

    const std::string kind = string_at(root, "", "kind");
    AnySequence result;
    if (kind == "explicit") {
        result = parse_explicit(root);
    } else if (kind == "weighted_onb") {
        check_keys(root, "", {"kind", "sigma", "weights"});
        WeightedOnb w;
        w.sigma = parse_sigma(object_at(root, "", "sigma"), "sigma");
        w.weights = parse_weights(object_at(root, "", "weights"), "weights");
        result = StructuredSequence{w};
    } else if (kind == "anchored_onb") {
        check_keys(root, "", {"kind", "anchor"});
        result = StructuredSequence{AnchoredOnb{int_at(root, "", "anchor")}};
    } else {
        fail("kind", "expected one of explicit|weighted_onb|anchored_onb, got \"" + kind + "\"");
    }

    std::visit([](const auto& s) { validate(s); }, result);
    return result;
}

AnySequence load_sequence_spec(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open spec file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_sequence_spec(buf.str());
    } catch (const Error& e) {
        throw InputError(path + ": " + e.what());
    }
}

}  // namespace framekit
