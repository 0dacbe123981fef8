#include "varbv/errors.hpp"
#include "varbv/json_io.hpp"
#include "varbv/mean_exponent.hpp"
#include "varbv/norm.hpp"
#include "varbv/scenarios.hpp"
#include "varbv/variation.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;
using namespace varbv;

std::size_t env_max_points() {
    const char* env = std::getenv("VARBV_MAX_GRID");
    if (env == nullptr) return RefineOptions{}.max_points;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || v < 2)
        throw ParseError("VARBV_MAX_GRID: expected an integer >= 2");
    return static_cast<std::size_t>(v);
}

json side_json(Side s) {
    switch (s) {
    case Side::Full: return "full";
    case Side::Left: return "left";
    case Side::Right: return "right";
    }
    return "full";
}

json rational_pair(const Rational& r) {
    return json{{"exact", rational_to_json(r)}, {"value", to_double(r)}};
}

json witness_json(const Witness& w) {
    return json{{"interval", json::array({rational_to_json(w.lo), rational_to_json(w.hi)})},
                {"attained", w.attained}};
}

json partition_json(const Partition& P) {
    json pts = json::array();
    for (const Rational& t : P.points) pts.push_back(rational_to_json(t));
    return pts;
}

bool text_output = false;

// Flattened dotted-path lines; object keys come out sorted, so the text form is
// as byte-deterministic as the JSON one.
void render_text(const json& j, const std::string& path, std::string& out) {
    if (j.is_object()) {
        for (const auto& [key, value] : j.items())
            render_text(value, path.empty() ? key : path + "." + key, out);
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i)
            render_text(j[i], path + "[" + std::to_string(i) + "]", out);
    } else {
        out += path + " = " + j.dump() + "\n";
    }
}

void emit(const json& report) {
    if (text_output) {
        std::string out;
        render_text(report, "", out);
        std::cout << out;
    } else {
        std::cout << report.dump(2) << "\n";
    }
}

struct CommonOpts {
    std::string exponent_file;
    std::string function_file;
    double tol = 1e-9;
    std::size_t max_points = 0; // filled from env default in main
    std::vector<std::string> extra;

    RefineOptions refine() const {
        RefineOptions o;
        o.tol = tol;
        o.max_points = max_points;
        for (const std::string& s : extra) o.extra_points.push_back(parse_rational(s));
        return o;
    }
};

void add_refine_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--tol", o.tol, "relative per-round improvement threshold")
        ->capture_default_str();
    cmd->add_option("--max-points", o.max_points, "refinement grid cap (overrides VARBV_MAX_GRID)")
        ->capture_default_str();
    cmd->add_option("--extra", o.extra, "extra rational grid points");
}

json diagnostics_json(const VariationResult& r) {
    return json{{"grid_size", r.grid_size}, {"rounds", r.rounds}, {"converged", r.converged}};
}

int run_variation(const CommonOpts& o, Mode mode) {
    const StepExponent p = load_exponent(o.exponent_file);
    const PointFunction f = load_function(o.function_file);
    const VariationResult r = refine_variation(p, f, o.refine(), mode);
    json rep;
    rep["schema"] = 1;
    rep["command"] = mode == Mode::Plain ? "variation" : "tagged-variation";
    rep["inputs"] = {{"exponent", exponent_to_json(p)},
                     {"function", function_to_json(f)},
                     {"tol", o.tol},
                     {"max_points", o.max_points}};
    rep["result"] = {{"lower_bound", r.lower_bound},
                     {"best_partition", partition_json(r.best_partition)},
                     {"last_increment", r.last_increment}};
    rep["diagnostics"] = diagnostics_json(r);
    if (!r.converged)
        rep["warning"] = "grid cap reached before the improvement threshold; "
                         "the bound is valid but may not be tight";
    emit(rep);
    return 0;
}

int run_mean_exp(const std::string& exponent_file, const std::vector<std::string>& interval) {
    const StepExponent p = load_exponent(exponent_file);
    const Interval q{parse_rational(interval[0]), parse_rational(interval[1])};
    const Rational m = mean_exponent(p, q);
    json rep;
    rep["schema"] = 1;
    rep["command"] = "mean-exp";
    rep["inputs"] = {{"exponent", exponent_to_json(p)},
                     {"interval", json::array({rational_to_json(q.lo), rational_to_json(q.hi)})}};
    rep["result"] = rational_pair(m);
    emit(rep);
    return 0;
}

int run_norm(const CommonOpts& o, double norm_tol) {
    const StepExponent p = load_exponent(o.exponent_file);
    const PointFunction f = load_function(o.function_file);
    const NormResult n = luxemburg_norm(p, f, norm_tol, o.refine());
    json rep;
    rep["schema"] = 1;
    rep["command"] = "norm";
    rep["inputs"] = {{"exponent", exponent_to_json(p)},
                     {"function", function_to_json(f)},
                     {"norm_tol", norm_tol},
                     {"max_points", o.max_points}};
    rep["result"] = {{"norm", n.norm},
                     {"bracket", json::array({n.bracket_lo, n.bracket_hi})},
                     {"modular_at_norm", n.modular_at_norm}};
    rep["diagnostics"] = {{"grid_size", n.grid_size},
                          {"rounds", n.rounds},
                          {"converged", n.converged},
                          {"evaluations", n.evaluations}};
    if (!n.converged)
        rep["warning"] = "grid cap reached before the improvement threshold; "
                         "the norm is computed on the frozen grid";
    emit(rep);
    return 0;
}

int run_maximal(const std::string& exponent_file, const std::string& point) {
    const StepExponent p = load_exponent(exponent_file);
    const Rational x = parse_rational(point);
    const MaximalProfile mp = maximal_profile(p, x);
    const AdditivityCondition cond = additivity_condition(p, x);
    json rep;
    rep["schema"] = 1;
    rep["command"] = "maximal";
    rep["inputs"] = {{"exponent", exponent_to_json(p)}, {"point", rational_to_json(x)}};
    rep["result"] = {
        {"maximal",
         {{"full", {{"value", rational_pair(mp.m_full)}, {"witness", witness_json(mp.w_full)}}},
          {"left", {{"value", rational_pair(mp.m_left)}, {"witness", witness_json(mp.w_left)}}},
          {"right",
           {{"value", rational_pair(mp.m_right)}, {"witness", witness_json(mp.w_right)}}}}},
        {"p_minus",
         {{"full", rational_pair(p_minus(p, x, Side::Full))},
          {"left", rational_pair(p_minus(p, x, Side::Left))},
          {"right", rational_pair(p_minus(p, x, Side::Right))}}},
        {"additivity",
         {{"holds", cond.holds},
          {"gap", rational_pair(cond.gap)},
          {"max_side", side_json(cond.max_side)}}}};
    emit(rep);
    return 0;
}

int run_variation_function(const CommonOpts& o, const std::vector<std::string>& points) {
    const StepExponent p = load_exponent(o.exponent_file);
    const PointFunction f = load_function(o.function_file);
    std::vector<Rational> xs;
    xs.reserve(points.size());
    for (const std::string& s : points) xs.push_back(parse_rational(s));
    const std::vector<double> values = variation_function(p, f, xs, o.refine());
    json rep;
    rep["schema"] = 1;
    rep["command"] = "variation-function";
    json pts = json::array();
    for (const Rational& x : xs) pts.push_back(rational_to_json(x));
    rep["inputs"] = {{"exponent", exponent_to_json(p)},
                     {"function", function_to_json(f)},
                     {"points", pts},
                     {"max_points", o.max_points}};
    rep["result"] = {{"values", values}};
    emit(rep);
    return 0;
}

int run_compare(const CommonOpts& o, const std::string& exponent2_file, double norm_tol) {
    const StepExponent p1 = load_exponent(o.exponent_file);
    const StepExponent p2 = load_exponent(exponent2_file);
    const PointFunction f = load_function(o.function_file);
    const EmbeddingComparison ec = embedding_compare(p1, p2, f, norm_tol, o.refine());
    json rep;
    rep["schema"] = 1;
    rep["command"] = "compare-embedding";
    rep["inputs"] = {{"exponent", exponent_to_json(p1)},
                     {"exponent2", exponent_to_json(p2)},
                     {"function", function_to_json(f)},
                     {"norm_tol", norm_tol}};
    rep["result"] = {{"lhs_norm", ec.lhs.norm},
                     {"rhs_norm", ec.rhs.norm},
                     {"ordered", ec.ordered}};
    rep["diagnostics"] = {{"grid_size", ec.lhs.grid_size},
                          {"rounds", std::max(ec.lhs.rounds, ec.rhs.rounds)},
                          {"converged", ec.lhs.converged && ec.rhs.converged},
                          {"evaluations", ec.lhs.evaluations + ec.rhs.evaluations}};
    if (!(ec.lhs.converged && ec.rhs.converged))
        rep["warning"] = "grid cap reached before the improvement threshold; "
                         "norms are computed on the frozen shared grid";
    emit(rep);
    return 0;
}

int run_verify(const std::string& id, const json& params, std::size_t max_points) {
    const ScenarioReport sr = run_scenario(id, params, max_points);
    json rep;
    rep["schema"] = 1;
    rep["command"] = "verify";
    rep["inputs"] = {{"id", sr.id}, {"params", sr.parameters}};
    json checks = json::array();
    for (const Check& c : sr.checks)
        checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    rep["result"] = {{"pass", sr.pass},
                     {"checks", checks},
                     {"values", sr.values},
                     {"narrative", sr.narrative}};
    rep["diagnostics"] = {{"checks_run", sr.checks.size()}};
    emit(rep);
    return sr.pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"variable-exponent variation calculator"};
    app.require_subcommand(1);

    CommonOpts opts;
    try {
        opts.max_points = env_max_points();
    } catch (const varbv::Error& e) {
        json rep;
        rep["schema"] = 1;
        rep["error"] = e.what();
        emit(rep);
        return 2;
    }
    std::vector<std::string> interval_strs;
    std::vector<std::string> point_strs;
    std::string point_str;
    std::string exponent2_file;
    double norm_tol = 1e-8;

    std::string scenario_id;
    long long param_n = 0, param_depth = 0, param_count_v = 0, param_seed = 0;
    std::string param_c, param_m;

    CLI::App* mean_cmd = app.add_subcommand("mean-exp", "harmonic-mean exponent of an interval");
    mean_cmd->add_option("--exponent", opts.exponent_file, "exponent JSON file")->required();
    mean_cmd->add_option("--interval", interval_strs, "interval endpoints LO HI")
        ->expected(2)
        ->required();

    CLI::App* var_cmd = app.add_subcommand("variation", "certified variation lower bound");
    var_cmd->add_option("--exponent", opts.exponent_file, "exponent JSON file")->required();
    var_cmd->add_option("--function", opts.function_file, "function JSON file")->required();
    add_refine_flags(var_cmd, opts);

    CLI::App* tag_cmd =
        app.add_subcommand("tagged-variation", "variation with tag-optimal pointwise exponents");
    tag_cmd->add_option("--exponent", opts.exponent_file, "exponent JSON file")->required();
    tag_cmd->add_option("--function", opts.function_file, "function JSON file")->required();
    add_refine_flags(tag_cmd, opts);

    CLI::App* norm_cmd = app.add_subcommand("norm", "scaling threshold norm by bisection");
    norm_cmd->add_option("--exponent", opts.exponent_file, "exponent JSON file")->required();
    norm_cmd->add_option("--function", opts.function_file, "function JSON file")->required();
    norm_cmd->add_option("--norm-tol", norm_tol, "bracket width target")->capture_default_str();
    add_refine_flags(norm_cmd, opts);

    CLI::App* max_cmd =
        app.add_subcommand("maximal", "one-sided and two-sided maximal means of 1/p");
    max_cmd->add_option("--exponent", opts.exponent_file, "exponent JSON file")->required();
    max_cmd->add_option("--point", point_str, "interior evaluation point")->required();

    CLI::App* vf_cmd =
        app.add_subcommand("variation-function", "variation of f over [a,x] per query point");
    vf_cmd->add_option("--exponent", opts.exponent_file, "exponent JSON file")->required();
    vf_cmd->add_option("--function", opts.function_file, "function JSON file")->required();
    vf_cmd->add_option("--points", point_strs, "sorted query points")->required();
    add_refine_flags(vf_cmd, opts);

    CLI::App* cmp_cmd =
        app.add_subcommand("compare-embedding", "norm comparison under pointwise-ordered exponents");
    cmp_cmd->add_option("--exponent", opts.exponent_file, "smaller exponent JSON file")->required();
    cmp_cmd->add_option("--exponent2", exponent2_file, "larger exponent JSON file")->required();
    cmp_cmd->add_option("--function", opts.function_file, "function JSON file")->required();
    cmp_cmd->add_option("--norm-tol", norm_tol, "bracket width target")->capture_default_str();
    add_refine_flags(cmp_cmd, opts);

    CLI::App* verify_cmd = app.add_subcommand("verify", "run a named end-to-end verification");
    verify_cmd->add_option("id", scenario_id, "scenario id; see --list")->required();
    CLI::Option* opt_n = verify_cmd->add_option("--n", param_n, "truncation depth");
    CLI::Option* opt_depth = verify_cmd->add_option("--depth", param_depth, "recursion depth");
    CLI::Option* opt_c = verify_cmd->add_option("--c", param_c, "comparison factor (rational)");
    CLI::Option* opt_m = verify_cmd->add_option("--m", param_m, "divergence threshold (rational)");
    CLI::Option* opt_count = verify_cmd->add_option("--count", param_count_v, "instance count");
    CLI::Option* opt_seed = verify_cmd->add_option("--seed", param_seed, "random seed");

    CLI::App* list_cmd = app.add_subcommand("list-scenarios", "print the scenario ids");

    for (CLI::App* sub : {mean_cmd, var_cmd, tag_cmd, norm_cmd, max_cmd, vf_cmd, cmp_cmd,
                          verify_cmd, list_cmd})
        sub->add_flag("--text", text_output, "flattened key = value lines instead of JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (mean_cmd->parsed()) return run_mean_exp(opts.exponent_file, interval_strs);
        if (var_cmd->parsed()) return run_variation(opts, Mode::Plain);
        if (tag_cmd->parsed()) return run_variation(opts, Mode::Tagged);
        if (norm_cmd->parsed()) return run_norm(opts, norm_tol);
        if (max_cmd->parsed()) return run_maximal(opts.exponent_file, point_str);
        if (vf_cmd->parsed()) return run_variation_function(opts, point_strs);
        if (cmp_cmd->parsed()) return run_compare(opts, exponent2_file, norm_tol);
        if (list_cmd->parsed()) {
            json rep;
            rep["schema"] = 1;
            rep["command"] = "list-scenarios";
            rep["result"] = {{"ids", scenario_ids()}};
            emit(rep);
            return 0;
        }
        if (verify_cmd->parsed()) {
            json params = json::object();
            if (opt_n->count() > 0) params["n"] = param_n;
            if (opt_depth->count() > 0) params["depth"] = param_depth;
            if (opt_c->count() > 0) params["c"] = param_c;
            if (opt_m->count() > 0) params["m"] = param_m;
            if (opt_count->count() > 0) params["count"] = param_count_v;
            if (opt_seed->count() > 0) params["seed"] = param_seed;
            return run_verify(scenario_id, params, opts.max_points);
        }
    } catch (const varbv::Error& e) {
        json rep;
        rep["schema"] = 1;
        rep["error"] = e.what();
        emit(rep);
        return 2;
    }
    return 2;
}
