#include "iterindex/cli_schema.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace iterindex::cli {

namespace {

void require_object(const Json& j, const std::string& where) {
    if (!j.is_object()) throw SchemaError(where + ": expected an object");
}

void check_keys(const Json& j, const std::string& where, std::initializer_list<const char*> allowed) {
    require_object(j, where);
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, value] : j.items()) {
        if (!ok.count(key)) throw SchemaError(where + ": unknown field '" + key + "'");
    }
}

const Json& field(const Json& j, const char* key, const std::string& where) {
    auto it = j.find(key);
    if (it == j.end()) throw SchemaError(where + ": missing field '" + key + "'");
    return *it;
}

std::int64_t integer(const Json& j, const std::string& where) {
    if (!j.is_number_integer()) throw SchemaError(where + ": expected an integer");
    return j.get<std::int64_t>();
}

std::int64_t integer_field(const Json& j, const char* key, const std::string& where) {
    return integer(field(j, key, where), where + "." + key);
}

std::int64_t integer_key(const std::string& text, const std::string& where) {
    std::int64_t v = 0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end) throw SchemaError(where + ": '" + text + "' is not an integer");
    return v;
}

mec::PeriodicTail tail_from_json(const Json& j, const std::string& where) {
    check_keys(j, where, {"start", "pattern"});
    mec::PeriodicTail t;
    t.start = integer_field(j, "start", where);
    const Json& p = field(j, "pattern", where);
    if (!p.is_array()) throw SchemaError(where + ".pattern: expected a list");
    t.pattern.clear();
    for (const auto& d : p) t.pattern.push_back(integer(d, where + ".pattern"));
    return t;
}

}  // namespace

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw SchemaError("'" + path + "' is not valid JSON: " + e.what());
    }
}

Rational rational_from_json(const Json& j, const std::string& where) {
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const std::invalid_argument& e) {
            throw SchemaError(where + ": " + e.what());
        }
    }
    throw SchemaError(where + ": expected \"num/den\" or an integer");
}

Json rational_to_json(const Rational& r) { return format_rational(r); }

SequenceInput sequence_from_json(const Json& j) {
    require_object(j, "sequence");
    if (j.contains("period")) {
        check_keys(j, "sequence", {"period", "values"});
        const std::int64_t period = integer_field(j, "period", "sequence");
        const Json& values = field(j, "values", "sequence");
        if (!values.is_array() || static_cast<std::int64_t>(values.size()) != period || period < 1) {
            throw SchemaError("sequence.values: expected exactly `period` values");
        }
        std::vector<Rational> raw;
        for (std::size_t i = 0; i < values.size(); ++i) {
            raw.push_back(rational_from_json(values[i], "sequence.values[" + std::to_string(i) + "]"));
        }
        auto fitted = seq::fit_periodic(raw);
        if (fitted.set().size() > kMaxSetSize) throw SchemaError("fitted set exceeds 64 elements");
        return {std::move(fitted), true};
    }
    check_keys(j, "sequence", {"set", "values"});
    const Json& set_json = field(j, "set", "sequence");
    if (!set_json.is_array()) throw SchemaError("sequence.set: expected a list");
    if (set_json.size() > kMaxSetSize) throw SchemaError("sequence.set: more than 64 elements");
    std::vector<std::int64_t> elements;
    for (const auto& e : set_json) elements.push_back(integer(e, "sequence.set"));
    seq::DivisorClosedSet set = seq::DivisorClosedSet::validate(elements);

    const Json& values = field(j, "values", "sequence");
    require_object(values, "sequence.values");
    std::map<std::int64_t, Rational> by_element;
    for (const auto& [key, value] : values.items()) {
        const std::int64_t q = integer_key(key, "sequence.values");
        if (!set.contains(q)) throw SchemaError("sequence.values: " + key + " is not in the set");
        by_element[q] = rational_from_json(value, "sequence.values." + key);
    }
    std::vector<Rational> ordered;
    for (auto q : set.elements()) {
        auto it = by_element.find(q);
        if (it == by_element.end()) {
            throw SchemaError("sequence.values: missing value for " + std::to_string(q));
        }
        ordered.push_back(it->second);
    }
    return {seq::SubordinatedSequence(set, std::move(ordered)), false};
}

Json sequence_to_json(const seq::SubordinatedSequence& s) {
    Json values = Json::object();
    for (auto q : s.set().elements()) values[std::to_string(q)] = rational_to_json(s.at_element(q));
    return Json{{"set", s.set().elements()}, {"values", values}};
}

germ::GermModel germ_from_json(const Json& j) {
    require_object(j, "germ");
    const Json& variant = field(j, "variant", "germ");
    if (!variant.is_string()) throw SchemaError("germ.variant: expected a string");
    const std::string v = variant.get<std::string>();
    germ::GermModel out;
    if (v == "nondeg") {
        check_keys(j, "germ", {"variant", "real_eigenvalues", "unit_rotations",
                               "irrational_rotations", "offcircle_pairs"});
        germ::EigenData e;
        if (j.contains("real_eigenvalues")) {
            for (const auto& x : j["real_eigenvalues"]) {
                e.real_eigenvalues.push_back(rational_from_json(x, "germ.real_eigenvalues"));
            }
        }
        if (j.contains("unit_rotations")) {
            for (const auto& r : j["unit_rotations"]) {
                check_keys(r, "germ.unit_rotations", {"angle", "twist_order"});
                germ::UnitRotation rot;
                rot.angle = rational_from_json(field(r, "angle", "germ.unit_rotations"),
                                               "germ.unit_rotations.angle");
                if (r.contains("twist_order")) {
                    rot.twist_order = integer(r["twist_order"], "germ.unit_rotations.twist_order");
                }
                e.unit_rotations.push_back(rot);
            }
        }
        if (j.contains("irrational_rotations")) {
            e.irrational_rotation_count = integer(j["irrational_rotations"], "germ.irrational_rotations");
        }
        if (j.contains("offcircle_pairs")) {
            e.offcircle_complex_pair_count = integer(j["offcircle_pairs"], "germ.offcircle_pairs");
        }
        out = germ::NondegenerateLinear{e};
    } else if (v == "elliptic2d") {
        check_keys(j, "germ", {"variant", "p", "q", "r"});
        out = germ::Elliptic2D{integer_field(j, "p", "germ"), integer_field(j, "q", "germ"),
                               integer_field(j, "r", "germ")};
    } else if (v == "degenerate2d") {
        check_keys(j, "germ", {"variant", "index", "branch"});
        const Json& b = field(j, "branch", "germ");
        if (!b.is_string()) throw SchemaError("germ.branch: expected a string");
        try {
            out = germ::TotallyDegenerate2D{integer_field(j, "index", "germ"),
                                            germ::parse_branch(b.get<std::string>())};
        } catch (const std::invalid_argument& e) {
            throw SchemaError(std::string("germ.branch: ") + e.what());
        }
    } else if (v == "numeric") {
        throw SchemaError("numeric germs are available through the library only");
    } else {
        throw SchemaError("germ.variant: unknown variant '" + v + "'");
    }
    try {
        germ::validate(out);
    } catch (const std::invalid_argument& e) {
        throw SchemaError(std::string("germ: ") + e.what());
    }
    return out;
}

mec::ReebOrbitRecord orbit_from_json(const Json& j) {
    check_keys(j, "orbit", {"label", "n", "delta", "germ", "m", "action"});
    mec::ReebOrbitRecord rec;
    if (j.contains("label")) {
        if (!j["label"].is_string()) throw SchemaError("orbit.label: expected a string");
        rec.label = j["label"].get<std::string>();
    }
    if (j.contains("n")) rec.n = integer(j["n"], "orbit.n");
    rec.mean_index = rational_from_json(field(j, "delta", "orbit"), "orbit.delta");
    rec.germ = germ_from_json(field(j, "germ", "orbit"));
    if (j.contains("m")) rec.delta_integer_part = integer(j["m"], "orbit.m");
    if (j.contains("action")) rec.action = rational_from_json(j["action"], "orbit.action");
    return rec;
}

OrbitTable orbit_table_from_json(const Json& j) {
    OrbitTable t;
    const Json* list = &j;
    if (j.is_object()) {
        check_keys(j, "orbit table", {"orbits", "local_tables"});
        list = &field(j, "orbits", "orbit table");
        if (j.contains("local_tables")) {
            require_object(j["local_tables"], "local_tables");
            for (const auto& [label, entries] : j["local_tables"].items()) {
                if (!entries.is_array()) throw SchemaError("local_tables." + label + ": expected a list");
                for (const auto& e : entries) {
                    check_keys(e, "local_tables." + label, {"iterate", "degree", "dimension"});
                    mec::LocalHomologyEntry entry;
                    entry.label = label;
                    entry.iterate = integer_field(e, "iterate", "local_tables." + label);
                    if (e.contains("degree") && !e["degree"].is_null()) {
                        entry.degree = integer(e["degree"], "local_tables." + label + ".degree");
                    }
                    entry.dimension = integer_field(e, "dimension", "local_tables." + label);
                    t.local_tables[label].push_back(entry);
                }
            }
        }
    }
    if (!list->is_array()) throw SchemaError("orbit table: expected a list of orbits");
    std::set<std::string> labels;
    for (const auto& o : *list) {
        t.orbits.push_back(orbit_from_json(o));
        if (!labels.insert(t.orbits.back().label).second) {
            throw SchemaError("orbit table: duplicate label '" + t.orbits.back().label + "'");
        }
    }
    return t;
}

mec::HomologyProfile profile_from_json(const Json& j) {
    require_object(j, "profile");
    try {
        if (j.contains("builtin")) {
            check_keys(j, "profile", {"builtin", "n"});
            const std::string name = field(j, "builtin", "profile").get<std::string>();
            if (name == "sphere") {
                return mec::HomologyProfile::standard_sphere(
                    j.contains("n") ? integer(j["n"], "profile.n") : 2);
            }
            if (name == "zero") return mec::HomologyProfile::zero();
            throw SchemaError("profile.builtin: unknown profile '" + name + "'");
        }
        check_keys(j, "profile", {"explicit", "positive_tail", "negative_tail", "l_plus", "l_minus"});
        std::map<std::int64_t, std::int64_t> dims;
        if (j.contains("explicit")) {
            require_object(j["explicit"], "profile.explicit");
            for (const auto& [key, value] : j["explicit"].items()) {
                dims[integer_key(key, "profile.explicit")] = integer(value, "profile.explicit." + key);
            }
        }
        mec::PeriodicTail pos = tail_from_json(field(j, "positive_tail", "profile"), "profile.positive_tail");
        mec::PeriodicTail neg = j.contains("negative_tail")
                                    ? tail_from_json(j["negative_tail"], "profile.negative_tail")
                                    : mec::PeriodicTail{1, {0}};
        const std::int64_t lp = j.contains("l_plus") ? integer(j["l_plus"], "profile.l_plus") : 0;
        const std::int64_t lm = j.contains("l_minus") ? integer(j["l_minus"], "profile.l_minus") : 0;
        return mec::HomologyProfile(std::move(dims), std::move(pos), std::move(neg), lp, lm);
    } catch (const std::invalid_argument& e) {
        throw SchemaError(std::string("profile: ") + e.what());
    } catch (const Json::exception& e) {
        throw SchemaError(std::string("profile: ") + e.what());
    }
}

orbits::MapModel map_from_spec(const std::string& spec) {
    orbits::MapModel model;
    auto numbers = [&](const std::string& text) {
        std::vector<std::int64_t> out;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) out.push_back(integer_key(item, "--map"));
        return out;
    };
    if (spec.rfind("circle:d=", 0) == 0) {
        const auto v = numbers(spec.substr(9));
        if (v.size() != 1) throw SchemaError("--map circle:d=<degree>");
        model = orbits::CircleEndo{v[0]};
    } else if (spec.rfind("torus:", 0) == 0) {
        const auto v = numbers(spec.substr(6));
        if (v.size() != 4) throw SchemaError("--map torus:a,b,c,d needs four integers");
        model = orbits::TorusLinear{{{{v[0], v[1]}, {v[2], v[3]}}}};
    } else {
        throw SchemaError("--map must be circle:d=<degree> or torus:a,b,c,d");
    }
    try {
        orbits::validate(model);
    } catch (const std::invalid_argument& e) {
        throw SchemaError(std::string("--map: ") + e.what());
    }
    return model;
}

}  // namespace iterindex::cli
