#include "fakeplane/surface_file.hpp"

#include "fakeplane/error.hpp"

#include <limits>

namespace fakeplane {

namespace {

[[noreturn]] void parse_error(const std::string& path, const std::string& what) {
    throw Error(ErrorKind::ParseError, path + ": " + what);
}

const Json& field(const Json& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object()) parse_error(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) parse_error(path + "." + key, "missing");
    return *it;
}

const Json* optional_field(const Json& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object()) parse_error(path, "expected an object");
    auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

std::string get_string(const Json& j, const std::string& path) {
    if (!j.is_string()) parse_error(path, "expected a string");
    return j.get<std::string>();
}

BigInt get_big(const Json& j, const std::string& path) {
    if (j.is_number_integer()) return BigInt(j.get<long long>());
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        const std::size_t start = !s.empty() && s[0] == '-' ? 1 : 0;
        if (s.size() > start && s.find_first_not_of("0123456789", start) == std::string::npos) return BigInt(s);
    }
    parse_error(path, "expected an integer");
}

long long get_int(const Json& j, const std::string& path) {
    BigInt v = get_big(j, path);
    if (v > std::numeric_limits<int>::max() || v < std::numeric_limits<int>::min()) parse_error(path, "out of range");
    return static_cast<long long>(v);
}

bool get_bool(const Json& j, const std::string& path) {
    if (!j.is_boolean()) parse_error(path, "expected true or false");
    return j.get<bool>();
}

const Json& get_array(const Json& j, const std::string& path) {
    if (!j.is_array()) parse_error(path, "expected an array");
    return j;
}

IntVector get_vector(const Json& j, const std::string& path) {
    IntVector v;
    const Json& a = get_array(j, path);
    for (std::size_t i = 0; i < a.size(); ++i) v.push_back(get_big(a[i], path + "[" + std::to_string(i) + "]"));
    return v;
}

std::vector<std::string> get_names(const Json& j, const std::string& path) {
    std::vector<std::string> v;
    const Json& a = get_array(j, path);
    for (std::size_t i = 0; i < a.size(); ++i) v.push_back(get_string(a[i], path + "[" + std::to_string(i) + "]"));
    return v;
}

IntMatrix get_matrix(const Json& j, const std::string& path) {
    const Json& a = get_array(j, path);
    std::vector<IntVector> rows;
    for (std::size_t i = 0; i < a.size(); ++i) {
        rows.push_back(get_vector(a[i], path + "[" + std::to_string(i) + "]"));
        if (rows.back().size() != rows.front().size()) parse_error(path, "rows have different lengths");
    }
    return IntMatrix::from_rows(rows);
}

Field get_field(const Json& j, const std::string& path) {
    const std::string s = get_string(j, path);
    if (s == "Real") return Field::Real;
    if (s == "ComplexPair") return Field::ComplexPair;
    parse_error(path, "unknown field '" + s + "', expected Real or ComplexPair");
}

Role get_role(const Json& j, const std::string& path) {
    const std::string s = get_string(j, path);
    if (s == "Boundary") return Role::Boundary;
    if (s == "Interior") return Role::Interior;
    parse_error(path, "unknown role '" + s + "', expected Boundary or Interior");
}

BaseKind get_base_kind(const Json& j, const std::string& path) {
    const std::string s = get_string(j, path);
    for (BaseKind k : {BaseKind::P2, BaseKind::P1xP1, BaseKind::Fn, BaseKind::Quadric})
        if (to_string(k) == s) return k;
    parse_error(path, "unknown base kind '" + s + "'");
}

template <typename T, typename F>
T value_or(const Json& obj, const std::string& key, const std::string& path, T fallback, F get) {
    const Json* j = optional_field(obj, key, path);
    return j ? get(*j, path + "." + key) : fallback;
}

NodeRef resolve(const SurfacePair& s, const Json& j, const std::string& path) {
    std::string name = get_string(j, path);
    int half = 0;
    if (s.find(name) < 0 && !name.empty() && name.back() == '\'') {
        name.pop_back();
        half = 1;
    }
    const int id = s.find(name);
    if (id < 0) throw Error(ErrorKind::ReplayError, path + ": no curve named '" + get_string(j, path) + "'");
    if (half == 1 && s.component(id).field != Field::ComplexPair)
        throw Error(ErrorKind::ReplayError, path + ": " + name + " has no conjugate half");
    return {id, half};
}

int resolve_component(const SurfacePair& s, const Json& j, const std::string& path) {
    const std::string name = get_string(j, path);
    const int id = s.find(name);
    if (id < 0) throw Error(ErrorKind::ReplayError, path + ": no curve named '" + name + "'");
    return id;
}

BaseSpec parse_base(const Json& j, const std::string& path) {
    BaseSpec spec;
    spec.kind = get_base_kind(field(j, "kind", path), path + ".kind");
    spec.n = static_cast<int>(value_or<long long>(j, "n", path, 0, get_int));
    const Json& curves = get_array(field(j, "curves", path), path + ".curves");
    for (std::size_t i = 0; i < curves.size(); ++i) {
        const std::string p = path + ".curves[" + std::to_string(i) + "]";
        BaseCurve c;
        c.name = get_string(field(curves[i], "name", p), p + ".name");
        c.base_class = get_vector(field(curves[i], "class", p), p + ".class");
        c.field = value_or(curves[i], "field", p, Field::Real, get_field);
        c.has_real_points = value_or(curves[i], "real_points", p, true, get_bool);
        c.role = value_or(curves[i], "role", p, Role::Boundary, get_role);
        spec.curves.push_back(c);
    }
    return spec;
}

Center parse_center(const SurfacePair& s, const Json& j, const std::string& path) {
    const std::string kind = get_string(field(j, "kind", path), path + ".kind");
    const std::string name = value_or<std::string>(j, "name", path, "", get_string);
    const Field f = value_or(j, "field", path, Field::Real, get_field);
    Center c;
    if (kind == "free_point") {
        c = Center::free_point(resolve(s, field(j, "on", path), path + ".on"), f, name);
    } else if (kind == "double_point") {
        c = Center::double_point(resolve(s, field(j, "a", path), path + ".a"),
                                 resolve(s, field(j, "b", path), path + ".b"), f, name);
    } else if (kind == "point") {
        const Json& through = get_array(field(j, "through", path), path + ".through");
        std::vector<Incidence> inc;
        for (std::size_t i = 0; i < through.size(); ++i) {
            const std::string p = path + ".through[" + std::to_string(i) + "]";
            inc.push_back({resolve(s, field(through[i], "curve", p), p + ".curve"),
                           static_cast<int>(value_or<long long>(through[i], "mult", p, 1, get_int))});
        }
        c = Center::point(inc, f, name);
    } else if (kind == "expansion") {
        c = Center::expansion(resolve(s, field(j, "minus", path), path + ".minus"),
                              resolve(s, field(j, "plus", path), path + ".plus"),
                              static_cast<int>(get_int(field(j, "mu_minus", path), path + ".mu_minus")),
                              static_cast<int>(get_int(field(j, "mu_plus", path), path + ".mu_plus")), name);
    } else {
        parse_error(path + ".kind",
                    "unknown center kind '" + kind + "', expected free_point, double_point, point or expansion");
    }
    c.role = value_or(j, "role", path, Role::Boundary, get_role);
    return c;
}

Step parse_step(const SurfacePair& s, const Json& j, const std::string& path) {
    const std::string op = get_string(field(j, "op", path), path + ".op");
    Step st;
    if (op == "blow_up") {
        st.kind = Step::Kind::BlowUp;
        st.center = parse_center(s, field(j, "center", path), path + ".center");
    } else if (op == "contract") {
        st.kind = Step::Kind::Contract;
        st.target = resolve_component(s, field(j, "curve", path), path + ".curve");
    } else if (op == "add_curve") {
        st.kind = Step::Kind::AddCurve;
        st.cls = get_vector(field(j, "class", path), path + ".class");
        st.field = value_or(j, "field", path, Field::Real, get_field);
        st.name = get_string(field(j, "name", path), path + ".name");
        st.role = value_or(j, "role", path, Role::Interior, get_role);
        st.has_real_points = value_or(j, "real_points", path, true, get_bool);
    } else if (op == "forget") {
        st.kind = Step::Kind::Forget;
        st.target = resolve_component(s, field(j, "curve", path), path + ".curve");
    } else if (op == "set_role") {
        st.kind = Step::Kind::SetRole;
        st.target = resolve_component(s, field(j, "curve", path), path + ".curve");
        st.role = get_role(field(j, "role", path), path + ".role");
    } else {
        parse_error(path + ".op", "unknown operation '" + op +
                                      "', expected blow_up, contract, add_curve, forget or set_role");
    }
    return st;
}

WeightedChain parse_chain(const Json& j, const std::string& path) {
    std::vector<long long> w;
    const IntVector v = get_vector(field(j, "weights", path), path + ".weights");
    for (const auto& x : v) w.push_back(static_cast<long long>(x));
    const std::string sym = value_or<std::string>(j, "symmetry", path, "none", get_string);
    WeightedChain c = WeightedChain::plain(w);
    if (sym == "none") return c;
    if (sym == "reversal") return WeightedChain::symmetric(w);
    parse_error(path + ".symmetry", "unknown symmetry '" + sym + "', expected none or reversal");
}

std::string chain_symmetry_name(const WeightedChain& c) { return c.is_symmetric() ? "reversal" : "none"; }

Json center_to_json(const SurfacePair& s, const Center& c) {
    Json j;
    switch (c.kind) {
        case Center::Kind::FreePointOn:
            j["kind"] = "free_point";
            j["on"] = node_label(s, c.a);
            break;
        case Center::Kind::DoublePoint:
            j["kind"] = "double_point";
            j["a"] = node_label(s, c.a);
            j["b"] = node_label(s, c.b);
            break;
        case Center::Kind::Point: {
            j["kind"] = "point";
            Json through = Json::array();
            for (const auto& inc : c.incidence) through.push_back({{"curve", node_label(s, inc.node)}, {"mult", inc.mult}});
            j["through"] = through;
            break;
        }
        case Center::Kind::SubdivExpansion:
            j["kind"] = "expansion";
            j["minus"] = node_label(s, c.a);
            j["plus"] = node_label(s, c.b);
            j["mu_minus"] = c.mu_minus;
            j["mu_plus"] = c.mu_plus;
            break;
    }
    if (c.kind != Center::Kind::SubdivExpansion) j["field"] = to_string(c.rationality);
    if (!c.name.empty()) j["name"] = c.name;
    j["role"] = to_string(c.role);
    return j;
}

}  // namespace

std::string node_label(const SurfacePair& s, NodeRef n) { return s.node_name(n); }

Json to_json(const BigInt& v) {
    if (v <= std::numeric_limits<long long>::max() && v >= std::numeric_limits<long long>::min())
        return Json(static_cast<long long>(v));
    return Json(v.str());
}

Json to_json(const IntMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
        rows.push_back(row);
    }
    return rows;
}

Json step_to_json(const SurfacePair& before, const Step& step) {
    Json j;
    switch (step.kind) {
        case Step::Kind::BlowUp:
            j["op"] = "blow_up";
            j["center"] = center_to_json(before, step.center);
            break;
        case Step::Kind::Contract:
            j["op"] = "contract";
            j["curve"] = before.component(step.target).name;
            break;
        case Step::Kind::AddCurve: {
            j["op"] = "add_curve";
            Json cls = Json::array();
            for (const auto& x : step.cls) cls.push_back(to_json(x));
            j["class"] = cls;
            j["field"] = to_string(step.field);
            j["name"] = step.name;
            j["role"] = to_string(step.role);
            j["real_points"] = step.has_real_points;
            break;
        }
        case Step::Kind::Forget:
            j["op"] = "forget";
            j["curve"] = before.component(step.target).name;
            break;
        case Step::Kind::SetRole:
            j["op"] = "set_role";
            j["curve"] = before.component(step.target).name;
            j["role"] = to_string(step.role);
            break;
    }
    return j;
}

SurfaceFile surface_file_from_json(const Json& j) {
    if (!j.is_object()) parse_error("$", "expected an object");
    SurfaceFile f;
    if (const Json* base = optional_field(j, "base", "$")) {
        SurfacePair s;
        try {
            s = SurfacePair::from_base(parse_base(*base, "base"));
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::ParseError) throw;
            throw Error(ErrorKind::ReplayError, std::string("base: ") + e.what());
        }
        if (const Json* prog = optional_field(j, "program", "$")) {
            get_array(*prog, "program");
            for (std::size_t i = 0; i < prog->size(); ++i) {
                const std::string p = "program[" + std::to_string(i) + "]";
                Step st = parse_step(s, (*prog)[i], p);
                try {
                    s = apply_step(s, st);
                } catch (const Error& e) {
                    throw Error(ErrorKind::ReplayError, p + ": " + e.what());
                }
            }
        }
        if (const Json* b = optional_field(j, "boundary", "$")) {
            f.boundary = get_names(*b, "boundary");
            for (std::size_t i = 0; i < f.boundary->size(); ++i)
                if (s.find((*f.boundary)[i]) < 0)
                    throw Error(ErrorKind::ReplayError,
                                "boundary[" + std::to_string(i) + "]: no curve named '" + (*f.boundary)[i] + "'");
            const std::vector<Component> comps = s.components();
            for (const auto& c : comps) {
                const bool in = std::find(f.boundary->begin(), f.boundary->end(), c.name) != f.boundary->end();
                const Role want = in ? Role::Boundary : Role::Interior;
                if (c.role != want) s = set_role(s, c.id, want);
            }
        }
        f.surface = std::move(s);
    } else if (optional_field(j, "program", "$") || optional_field(j, "boundary", "$")) {
        parse_error("base", "missing");
    }
    if (const Json* a = optional_field(j, "arrangement", "$")) {
        ArrangementNames names;
        names.d = get_names(field(*a, "D", "arrangement"), "arrangement.D");
        if (const Json* b = optional_field(*a, "B", "arrangement")) names.b = get_names(*b, "arrangement.B");
        if (const Json* r = optional_field(*a, "relations", "arrangement"))
            names.relations = get_matrix(*r, "arrangement.relations");
        f.arrangement = names;
    }
    if (const Json* r = optional_field(j, "r_standard", "$")) {
        RStandardRoles roles;
        roles.f_inf = value_or<std::string>(*r, "f_inf", "r_standard", kFiberAtInfinity, get_string);
        roles.c0 = value_or<std::string>(*r, "c0", "r_standard", kSection, get_string);
        if (const Json* a0 = optional_field(*r, "a0", "r_standard")) roles.a0 = get_string(*a0, "r_standard.a0");
        f.r_standard = roles;
    }
    if (const Json* c = optional_field(j, "chain", "$")) {
        try {
            f.chain = parse_chain(*c, "chain");
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::ParseError) throw;
            parse_error("chain", e.what());
        }
    }
    if (const Json* m = optional_field(j, "matrix", "$")) f.matrix = get_matrix(*m, "matrix");
    return f;
}

SurfaceFile parse_surface_file(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw Error(ErrorKind::ParseError, std::string("invalid JSON: ") + e.what());
    }
    return surface_file_from_json(j);
}

Json to_json(const SurfaceFile& f) {
    Json j = Json::object();
    if (f.surface) {
        const SurfacePair& s = *f.surface;
        const BaseSpec& spec = s.base_spec();
        Json curves = Json::array();
        for (const auto& c : spec.curves) {
            Json cls = Json::array();
            for (const auto& x : c.base_class) cls.push_back(to_json(x));
            curves.push_back({{"name", c.name},
                              {"class", cls},
                              {"field", to_string(c.field)},
                              {"real_points", c.has_real_points},
                              {"role", to_string(c.role)}});
        }
        j["base"] = {{"kind", to_string(spec.kind)}, {"n", spec.n}, {"curves", curves}};
        Json prog = Json::array();
        SurfacePair cur = SurfacePair::from_base(spec);
        for (const Step& st : s.history()) {
            prog.push_back(step_to_json(cur, st));
            cur = apply_step(cur, st);
        }
        j["program"] = prog;
        if (f.boundary) j["boundary"] = *f.boundary;
    }
    if (f.arrangement) {
        Json a = {{"D", f.arrangement->d}};
        if (f.arrangement->b) a["B"] = *f.arrangement->b;
        if (f.arrangement->relations) a["relations"] = to_json(*f.arrangement->relations);
        j["arrangement"] = a;
    }
    if (f.r_standard) {
        Json r = {{"f_inf", f.r_standard->f_inf}, {"c0", f.r_standard->c0}};
        if (f.r_standard->a0) r["a0"] = *f.r_standard->a0;
        j["r_standard"] = r;
    }
    if (f.chain) j["chain"] = {{"weights", f.chain->weights}, {"symmetry", chain_symmetry_name(*f.chain)}};
    if (f.matrix) j["matrix"] = to_json(*f.matrix);
    return j;
}

std::string serialize_surface_file(const SurfaceFile& f) { return to_json(f).dump(2) + "\n"; }

ArrangementInput arrangement_input(const SurfaceFile& f) {
    if (!f.surface) throw Error(ErrorKind::ParseError, "base: missing");
    if (!f.arrangement) throw Error(ErrorKind::ParseError, "arrangement: missing");
    const SurfacePair& s = *f.surface;
    auto ids = [&](const std::vector<std::string>& names, const std::string& path) {
        std::vector<int> out;
        for (std::size_t i = 0; i < names.size(); ++i) {
            const int id = s.find(names[i]);
            if (id < 0)
                throw Error(ErrorKind::ReplayError,
                            path + "[" + std::to_string(i) + "]: no curve named '" + names[i] + "'");
            out.push_back(id);
        }
        return out;
    };
    ArrangementInput in;
    in.d = ids(f.arrangement->d, "arrangement.D");
    in.b = f.arrangement->b ? ids(*f.arrangement->b, "arrangement.B") : s.boundary_ids();
    in.relations = f.arrangement->relations;
    return in;
}

RStandardPair r_standard_pair(const SurfaceFile& f) {
    if (!f.surface) throw Error(ErrorKind::ParseError, "base: missing");
    const SurfacePair& s = *f.surface;
    const RStandardRoles roles = f.r_standard.value_or(RStandardRoles{});
    int a0 = -1;
    if (roles.a0) {
        a0 = s.find(*roles.a0);
    } else {
        for (const auto& c : s.components()) {
            if (c.role != Role::Interior) continue;
            if (a0 >= 0) throw Error(ErrorKind::BadGrammar, "more than one interior curve; name a0 in r_standard");
            a0 = c.id;
        }
    }
    const int f_inf = s.find(roles.f_inf), c0 = s.find(roles.c0);
    if (f_inf < 0 || c0 < 0 || a0 < 0) throw Error(ErrorKind::BadGrammar, "r_standard roles do not name curves");
    return make_r_standard(s, f_inf, c0, a0);
}

SurfaceFile surface_file(const SurfacePair& s) {
    SurfaceFile f;
    f.surface = s;
    return f;
}

SurfaceFile surface_file(const RStandardPair& p) {
    SurfaceFile f = surface_file(p.surface);
    const auto name = [&](int id) { return p.surface.component(id).name; };
    f.r_standard = RStandardRoles{name(p.f_inf), name(p.c0), name(p.a0)};
    return f;
}

}  // namespace fakeplane
