#include "varbv/json_io.hpp"

#include "varbv/errors.hpp"

#include <fstream>
#include <limits>
#include <utility>
#include <vector>

namespace varbv {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ParseError(path + ": " + what);
}

const json& field(const json& j, const std::string& path, const char* key) {
    if (!j.is_object()) fail(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(path, std::string("missing field \"") + key + "\"");
    return *it;
}

double double_from_json(const json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    return j.get<double>();
}

std::vector<Rational> rational_array(const json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array");
    std::vector<Rational> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(rational_from_json(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

std::vector<double> double_array(const json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array");
    std::vector<double> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(double_from_json(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

} // namespace

Rational rational_from_json(const json& j, const std::string& path) {
    if (j.is_number_integer() || j.is_number_unsigned()) return Rational(j.get<long long>());
    if (j.is_number_float())
        fail(path, "decimal literals are not exact; use \"num/den\"");
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const ParseError& e) {
            fail(path, e.what());
        }
    }
    fail(path, "expected an integer or a \"num/den\" string");
}

json rational_to_json(const Rational& r) {
    if (denominator(r) == 1) {
        const BigInt& num = numerator(r);
        if (num >= std::numeric_limits<long long>::min() &&
            num <= std::numeric_limits<long long>::max())
            return json(num.convert_to<long long>());
    }
    return json(format_rational(r));
}

StepExponent exponent_from_json(const json& j) {
    const std::string root = "exponent";
    std::vector<Rational> bps = rational_array(field(j, root, "breakpoints"), root + ".breakpoints");
    std::vector<Rational> vals = rational_array(field(j, root, "values"), root + ".values");
    if (j.is_object() && j.contains("domain")) {
        const std::vector<Rational> dom = rational_array(j.at("domain"), root + ".domain");
        if (dom.size() != 2) fail(root + ".domain", "expected [lo, hi]");
        if (bps.empty() || bps.front() != dom[0] || bps.back() != dom[1])
            fail(root + ".breakpoints", "must span the declared domain");
    }
    std::vector<std::pair<Rational, Rational>> overrides;
    if (j.is_object() && j.contains("overrides")) {
        const json& ovs = j.at("overrides");
        if (!ovs.is_array()) fail(root + ".overrides", "expected an array of [x, value] pairs");
        for (std::size_t i = 0; i < ovs.size(); ++i) {
            const std::string p = root + ".overrides[" + std::to_string(i) + "]";
            if (!ovs[i].is_array() || ovs[i].size() != 2) fail(p, "expected [x, value]");
            overrides.emplace_back(rational_from_json(ovs[i][0], p + "[0]"),
                                   rational_from_json(ovs[i][1], p + "[1]"));
        }
    }
    try {
        return StepExponent(std::move(bps), std::move(vals), std::move(overrides));
    } catch (const Error& e) {
        fail(root, e.what());
    }
}

json exponent_to_json(const StepExponent& p) {
    json j;
    j["domain"] = json::array({rational_to_json(p.domain().lo), rational_to_json(p.domain().hi)});
    json bps = json::array();
    for (const Rational& b : p.breakpoints()) bps.push_back(rational_to_json(b));
    j["breakpoints"] = std::move(bps);
    json vals = json::array();
    for (const Rational& v : p.piece_values()) vals.push_back(rational_to_json(v));
    j["values"] = std::move(vals);
    if (!p.overrides().empty()) {
        json ovs = json::array();
        for (const auto& [x, v] : p.overrides())
            ovs.push_back(json::array({rational_to_json(x), rational_to_json(v)}));
        j["overrides"] = std::move(ovs);
    }
    return j;
}

namespace {

PointFunction step_from_json(const json& j, const std::string& root) {
    std::vector<Rational> bps =
        rational_array(field(j, root, "breakpoints"), root + ".breakpoints");
    std::vector<double> pvals =
        double_array(field(j, root, "piece_values"), root + ".piece_values");
    std::vector<double> bvals =
        double_array(field(j, root, "breakpoint_values"), root + ".breakpoint_values");
    const bool zero_at_a = j.value("zero_at_a", false);
    try {
        return PointFunction::step(std::move(bps), std::move(pvals), std::move(bvals), zero_at_a);
    } catch (const Error& e) {
        fail(root, e.what());
    }
}

} // namespace

PointFunction function_from_json(const json& j) {
    const std::string root = "function";
    const json& kind_j = field(j, root, "kind");
    if (!kind_j.is_string()) fail(root + ".kind", "expected \"step\", \"spike\" or \"sampled\"");
    const std::string kind = kind_j.get<std::string>();
    const bool zero_at_a = j.value("zero_at_a", false);

    if (kind == "step") return step_from_json(j, root);

    if (kind == "spike") {
        PointFunction base = [&]() {
            if (j.contains("base")) return step_from_json(j.at("base"), root + ".base");
            const std::vector<Rational> dom =
                rational_array(field(j, root, "domain"), root + ".domain");
            if (dom.size() != 2) fail(root + ".domain", "expected [lo, hi]");
            try {
                return PointFunction::zero({dom[0], dom[1]});
            } catch (const Error& e) {
                fail(root + ".domain", e.what());
            }
        }();
        const json& pts = field(j, root, "points");
        if (!pts.is_array()) fail(root + ".points", "expected an array of [x, value] pairs");
        std::vector<std::pair<Rational, double>> spikes;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const std::string p = root + ".points[" + std::to_string(i) + "]";
            if (!pts[i].is_array() || pts[i].size() != 2) fail(p, "expected [x, value]");
            spikes.emplace_back(rational_from_json(pts[i][0], p + "[0]"),
                                double_from_json(pts[i][1], p + "[1]"));
        }
        try {
            return PointFunction::spike(std::move(base), std::move(spikes), zero_at_a);
        } catch (const Error& e) {
            fail(root, e.what());
        }
    }

    if (kind == "sampled") {
        std::vector<Rational> pts = rational_array(field(j, root, "points"), root + ".points");
        std::vector<double> vals = double_array(field(j, root, "values"), root + ".values");
        try {
            return PointFunction::sampled(std::move(pts), std::move(vals), zero_at_a);
        } catch (const Error& e) {
            fail(root, e.what());
        }
    }

    fail(root + ".kind", "unknown kind \"" + kind + "\"");
}

json function_to_json(const PointFunction& f) {
    json j;
    switch (f.kind()) {
    case PointFunction::Kind::Step: {
        j["kind"] = "step";
        json bps = json::array();
        for (const Rational& b : f.step_breakpoints()) bps.push_back(rational_to_json(b));
        j["breakpoints"] = std::move(bps);
        j["piece_values"] = f.step_piece_values();
        j["breakpoint_values"] = f.step_breakpoint_values();
        break;
    }
    case PointFunction::Kind::Spike: {
        j["kind"] = "spike";
        json base;
        base["kind"] = "step";
        json bps = json::array();
        for (const Rational& b : f.step_breakpoints()) bps.push_back(rational_to_json(b));
        base["breakpoints"] = std::move(bps);
        base["piece_values"] = f.step_piece_values();
        base["breakpoint_values"] = f.step_breakpoint_values();
        j["base"] = std::move(base);
        json pts = json::array();
        for (const auto& [x, v] : f.spikes())
            pts.push_back(json::array({rational_to_json(x), json(v)}));
        j["points"] = std::move(pts);
        break;
    }
    case PointFunction::Kind::Sampled: {
        j["kind"] = "sampled";
        json pts = json::array();
        for (const Rational& x : f.sample_points()) pts.push_back(rational_to_json(x));
        j["points"] = std::move(pts);
        j["values"] = f.sample_values();
        break;
    }
    }
    if (f.zero_at_a()) j["zero_at_a"] = true;
    return j;
}

namespace {

json parse_file(const std::string& file) {
    std::ifstream in(file);
    if (!in) throw ParseError(file + ": cannot open file");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(file + ": " + e.what());
    }
}

} // namespace

StepExponent load_exponent(const std::string& file) { return exponent_from_json(parse_file(file)); }

PointFunction load_function(const std::string& file) { return function_from_json(parse_file(file)); }

} // namespace varbv
