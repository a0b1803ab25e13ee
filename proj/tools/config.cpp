#include "config.hpp"

#include <cstdlib>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "rothe/error.hpp"

namespace rothe::cli {

using json = nlohmann::json;

namespace {

// Read-only view of one JSON object that rejects keys it was not asked about.
class Obj {
public:
    Obj(const json& j, std::string path, std::initializer_list<const char*> allowed) : j_(j), path_(std::move(path)) {
        if (!j.is_object()) throw ConfigError(where() + ": expected an object");
        for (const auto& [key, value] : j.items()) {
            bool ok = false;
            for (const char* a : allowed) ok = ok || key == a;
            if (!ok) {
                std::string list;
                for (const char* a : allowed) list += std::string(list.empty() ? "" : ", ") + a;
                throw ConfigError(field(key) + ": unknown key (allowed: " + list + ")");
            }
        }
    }

    bool has(const char* key) const { return j_.contains(key); }
    const json& at(const char* key) const { return j_.at(key); }
    std::string field(const std::string& key) const { return "field " + path_ + "/" + key; }
    std::string where() const { return path_.empty() ? "top level" : "field " + path_; }
    std::string child(const char* key) const { return path_ + "/" + key; }

    double number(const char* key, double fallback) const {
        if (!has(key)) return fallback;
        const json& v = at(key);
        if (!v.is_number()) throw ConfigError(field(key) + ": expected a number");
        return v.get<double>();
    }
    int integer(const char* key, int fallback) const {
        if (!has(key)) return fallback;
        const json& v = at(key);
        if (!v.is_number_integer()) throw ConfigError(field(key) + ": expected an integer");
        return v.get<int>();
    }
    std::uint64_t unsigned_integer(const char* key, std::uint64_t fallback) const {
        if (!has(key)) return fallback;
        const json& v = at(key);
        if (!v.is_number_unsigned()) throw ConfigError(field(key) + ": expected a nonnegative integer");
        return v.get<std::uint64_t>();
    }
    bool boolean(const char* key, bool fallback) const {
        if (!has(key)) return fallback;
        const json& v = at(key);
        if (!v.is_boolean()) throw ConfigError(field(key) + ": expected true or false");
        return v.get<bool>();
    }
    std::string string(const char* key, const std::string& fallback) const {
        if (!has(key)) return fallback;
        const json& v = at(key);
        if (!v.is_string()) throw ConfigError(field(key) + ": expected a string");
        return v.get<std::string>();
    }
    std::vector<double> numbers(const char* key) const {
        const json& v = at(key);
        if (!v.is_array()) throw ConfigError(field(key) + ": expected an array of numbers");
        std::vector<double> out;
        for (const json& x : v) {
            if (!x.is_number()) throw ConfigError(field(key) + ": expected an array of numbers");
            out.push_back(x.get<double>());
        }
        return out;
    }

private:
    const json& j_;
    std::string path_;
};

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        // nlohmann reports line and column in the message
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
}

template <class E>
E pick(const Obj& o, const char* key, const std::string& value, std::initializer_list<std::pair<const char*, E>> map) {
    std::string names;
    for (const auto& [name, e] : map) {
        if (value == name) return e;
        names += std::string(names.empty() ? "" : ", ") + name;
    }
    throw ConfigError(o.field(key) + ": unknown value '" + value + "' (expected " + names + ")");
}

ProfileSpec parse_profile(const json& j, const std::string& path) {
    const Obj o(j, path, {"kind", "amplitude", "mode"});
    using K = ProfileSpec::Kind;
    ProfileSpec s;
    s.kind = pick<K>(o, "kind", o.string("kind", "zero"),
                     {{"zero", K::Zero}, {"constant", K::Constant}, {"sine", K::Sine},
                      {"half-sine", K::HalfSine}, {"ramp", K::Ramp}, {"hat", K::Hat}});
    s.amplitude = o.number("amplitude", 1.0);
    s.mode = o.integer("mode", 1);
    if (s.mode < 1) throw ConfigError(o.field("mode") + ": must be at least 1");
    return s;
}

TimeProfileSpec parse_time_profile(const json& j, const std::string& path) {
    const Obj o(j, path, {"kind", "amplitude", "omega"});
    using K = TimeProfileSpec::Kind;
    TimeProfileSpec s;
    s.kind = pick<K>(o, "kind", o.string("kind", "constant"),
                     {{"constant", K::Constant}, {"linear", K::Linear}, {"sin", K::Sin}, {"cos", K::Cos}});
    s.amplitude = o.number("amplitude", 1.0);
    s.omega = o.number("omega", 1.0);
    return s;
}

GridSpec parse_grid(const json& j, const std::string& path) {
    const Obj o(j, path, {"kind", "N", "T", "ratio", "seed", "D", "steps"});
    using K = GridSpec::Kind;
    GridSpec g;
    g.kind = pick<K>(o, "kind", o.string("kind", "uniform"),
                     {{"uniform", K::Uniform}, {"geometric", K::Geometric},
                      {"seeded-random", K::SeededRandom}, {"steps", K::Steps}});
    g.N = o.integer("N", 0);
    g.T = o.number("T", 1.0);
    g.ratio = o.number("ratio", 1.0);
    g.seed = o.unsigned_integer("seed", 0);
    g.D = o.number("D", 1.0);
    if (o.has("steps")) g.steps = o.numbers("steps");
    if (g.kind == K::Steps) {
        if (g.steps.empty()) throw ConfigError(o.field("steps") + ": required for kind 'steps'");
        g.N = static_cast<int>(g.steps.size());
    } else if (g.N < 1) {
        throw ConfigError(o.field("N") + ": required positive integer");
    }
    return g;
}

SolverConfig parse_solver(const json& j, const std::string& path) {
    const Obj o(j, path, {"tol", "eps0", "eps_target", "max_newton", "stall_window"});
    SolverConfig s;
    s.tol = o.number("tol", s.tol);
    s.eps0 = o.number("eps0", s.eps0);
    s.eps_target = o.number("eps_target", s.eps_target);
    s.max_newton = o.integer("max_newton", s.max_newton);
    s.stall_window = o.integer("stall_window", s.stall_window);
    if (!(s.tol > 0)) throw ConfigError(o.field("tol") + ": must be positive");
    if (!(s.eps_target > 0) || !(s.eps0 >= s.eps_target))
        throw ConfigError(o.field("eps0") + ": need eps0 >= eps_target > 0");
    if (s.max_newton < 1) throw ConfigError(o.field("max_newton") + ": must be positive");
    if (s.stall_window < 1) throw ConfigError(o.field("stall_window") + ": must be positive");
    return s;
}

RunSetup parse_setup(const json& j, const std::string& path, std::filesystem::path* output) {
    const Obj o(j, path, {"problem", "p", "delta", "alpha", "g", "j", "mesh", "grid", "solver", "initial", "load",
                          "audit", "output"});
    RunSetup s;
    s.problem = pick<ProblemChoice>(o, "problem", o.string("problem", "P2"),
                                    {{"P1", ProblemChoice::P1}, {"P2", ProblemChoice::P2},
                                     {"manufactured", ProblemChoice::Manufactured}});
    s.p = o.number("p", s.p);
    s.delta = o.number("delta", s.delta);
    s.alpha = o.number("alpha", s.alpha);
    if (o.has("g")) {
        const Obj g(o.at("g"), o.child("g"), {"law", "c"});
        s.g_law = pick<std::string>(g, "law", g.string("law", s.g_law),
                                    {{"zero", "zero"}, {"arctan", "arctan"}, {"identity", "identity"}, {"power", "power"}});
        s.g_c = g.number("c", s.g_c);
    }
    if (o.has("j")) {
        const Obj jj(o.at("j"), o.child("j"), {"law", "scale"});
        s.j_law = pick<std::string>(jj, "law", jj.string("law", s.j_law),
                                    {{"zero", "zero"}, {"quadratic", "quadratic"}, {"abs", "abs"}, {"jump", "jump"},
                                     {"double-well", "double-well"}});
        s.j_scale = jj.number("scale", s.j_scale);
    }
    if (o.has("mesh")) {
        const Obj m(o.at("mesh"), o.child("mesh"), {"M", "dirichlet"});
        s.mesh_M = m.integer("M", s.mesh_M);
        if (m.has("dirichlet"))
            s.dirichlet = pick<Dirichlet>(m, "dirichlet", m.string("dirichlet", ""),
                                          {{"left", Dirichlet::Left}, {"right", Dirichlet::Right},
                                           {"both", Dirichlet::Both}});
    }
    if (!o.has("grid")) throw ConfigError(o.field("grid") + ": required");
    s.grid = parse_grid(o.at("grid"), o.child("grid"));
    if (o.has("solver")) s.solver = parse_solver(o.at("solver"), o.child("solver"));
    if (o.has("initial")) {
        const Obj i(o.at("initial"), o.child("initial"), {"u0", "v0"});
        if (i.has("u0")) s.u0 = parse_profile(i.at("u0"), i.child("u0"));
        if (i.has("v0")) s.v0 = parse_profile(i.at("v0"), i.child("v0"));
    }
    if (o.has("load")) {
        const json& l = o.at("load");
        if (!l.is_array()) throw ConfigError(o.field("load") + ": expected an array of terms");
        for (std::size_t k = 0; k < l.size(); ++k) {
            const std::string p = o.child("load") + "/" + std::to_string(k);
            const Obj t(l[k], p, {"time", "space"});
            LoadTermSpec term;
            if (t.has("time")) term.time = parse_time_profile(t.at("time"), t.child("time"));
            if (!t.has("space")) throw ConfigError(t.field("space") + ": required");
            term.space = parse_profile(t.at("space"), t.child("space"));
            s.load.push_back(term);
        }
    }
    if (o.has("audit")) {
        const Obj a(o.at("audit"), o.child("audit"), {"samples", "seed"});
        s.audit_samples = a.integer("samples", s.audit_samples);
        s.audit_seed = a.unsigned_integer("seed", s.audit_seed);
        if (s.audit_samples < 1) throw ConfigError(a.field("samples") + ": must be positive");
    }
    if (output) *output = o.string("output", output->string());
    return s;
}

}  // namespace

RunConfig parse_run_config(const std::string& text) {
    const json j = parse_json(text);
    RunConfig c;
    c.setup = parse_setup(j, "", &c.output);
    return c;
}

StudyConfig parse_study_config(const std::string& text) {
    const json j = parse_json(text);
    const Obj o(j, "", {"study", "levels", "seed", "parallel", "order_bracket", "ratio_spread", "base", "output"});
    StudyConfig c;
    StudyPlan& plan = c.plan;
    plan.kind = pick<StudyKind>(o, "study", o.string("study", ""),
                                {{"order", StudyKind::Order}, {"cauchy", StudyKind::Cauchy},
                                 {"hypothesis", StudyKind::Hypothesis}});
    if (!o.has("levels")) throw ConfigError(o.field("levels") + ": required");
    for (double x : o.numbers("levels")) {
        if (x != static_cast<int>(x)) throw ConfigError(o.field("levels") + ": expected integers");
        plan.levels.push_back(static_cast<int>(x));
    }
    plan.seed = o.unsigned_integer("seed", plan.seed);
    plan.parallel = o.boolean("parallel", false);
    if (o.has("order_bracket")) {
        const std::vector<double> b = o.numbers("order_bracket");
        if (b.size() != 2 || !(b[0] < b[1])) throw ConfigError(o.field("order_bracket") + ": expected [lo, hi]");
        plan.order_min = b[0];
        plan.order_max = b[1];
    }
    plan.ratio_spread = o.number("ratio_spread", plan.ratio_spread);
    if (!o.has("base")) throw ConfigError(o.field("base") + ": required");
    json base = o.at("base");
    // levels supply N; a base grid needs only the family
    if (base.is_object() && !base.contains("grid")) base["grid"] = json::object();
    if (base.is_object() && base["grid"].is_object() && !base["grid"].contains("N"))
        base["grid"]["N"] = plan.levels.empty() ? 1 : plan.levels.front();
    plan.base = parse_setup(base, "/base", nullptr);
    c.output = o.string("output", c.output.string());
    return c;
}

GridConfig parse_grid_config(const std::string& text) {
    const json j = parse_json(text);
    GridConfig c;
    if (j.is_object() && j.contains("grid")) {
        const Obj o(j, "", {"grid", "output"});
        c.grid = parse_grid(o.at("grid"), "/grid");
        c.output = o.string("output", c.output.string());
    } else {
        c.grid = parse_grid(j, "");
    }
    return c;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read " + path.string());
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::filesystem::path output_dir(const std::filesystem::path& configured) {
    const char* env = std::getenv("ROTHE_OUTPUT_DIR");
    if (env != nullptr && *env != '\0') return env;
    return configured;
}

}  // namespace rothe::cli
