#include <algorithm>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "iterindex/cli.hpp"
#include "iterindex/cli_schema.hpp"

namespace iterindex::cli {

namespace {

constexpr const char* kVersion = "0.1.0";

// Aligned text table.
class Table {
public:
    explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}
    void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

    void print(std::ostream& out) const {
        std::vector<std::size_t> width(header_.size(), 0);
        auto widen = [&](const std::vector<std::string>& row) {
            for (std::size_t i = 0; i < row.size() && i < width.size(); ++i)
                width[i] = std::max(width[i], row[i].size());
        };
        widen(header_);
        for (const auto& r : rows_) widen(r);
        auto line = [&](const std::vector<std::string>& row) {
            std::string text;
            for (std::size_t i = 0; i < row.size(); ++i) {
                std::string cell = row[i];
                if (i + 1 < row.size()) cell.resize(width[i], ' ');
                text += (i ? "  " : "") + cell;
            }
            out << text << '\n';
        };
        line(header_);
        std::vector<std::string> rule;
        for (auto w : width) rule.emplace_back(w, '-');
        line(rule);
        for (const auto& r : rows_) line(r);
    }

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

struct Report {
    Json data = Json::object();
    std::vector<Table> tables;
    std::vector<std::string> notes;
};

std::string fr(const Rational& r) { return format_rational(r); }

struct Context {
    std::string command;
    std::string format = "table";
    Json defaults = Json::object();
    std::ostream* out = nullptr;

    void emit(const Report& r) const {
        if (format == "json") {
            Json doc = r.data;
            doc["header"] = {{"tool", "iterindex"},
                             {"version", kVersion},
                             {"command", command},
                             {"defaults", defaults}};
            *out << doc.dump(2) << '\n';
            return;
        }
        *out << "# iterindex " << kVersion << " " << command;
        for (const auto& [k, v] : defaults.items()) {
            *out << " " << k << "=" << (v.is_string() ? v.get<std::string>() : v.dump());
        }
        *out << '\n';
        for (const auto& t : r.tables) {
            t.print(*out);
            *out << '\n';
        }
        for (const auto& n : r.notes) *out << n << '\n';
    }
};

// --- seq ----------------------------------------------------------------------

int cmd_seq(const Context& ctx, const std::string& action, const std::string& path) {
    const SequenceInput in = sequence_from_json(read_json_file(path));
    const auto& s = in.sequence;
    Report r;
    r.data["input"] = sequence_to_json(s);
    r.data["fitted"] = in.fitted;
    int code = kExitOk;

    if (action == "transform" || action == "inverse") {
        const auto result = action == "transform" ? seq::phi_transform(s) : seq::inverse_phi_transform(s);
        r.data["result"] = sequence_to_json(result);
        Table t({"q", "input", action == "transform" ? "phi" : "inverse"});
        for (auto q : s.set().elements()) t.add({std::to_string(q), fr(s.at_element(q)), fr(result.at_element(q))});
        r.tables.push_back(std::move(t));
    } else if (action == "decompose") {
        const auto d = seq::decompose_basis(s);
        Json coeffs = Json::object();
        Table t({"q", "coefficient of delta(q)"});
        for (std::size_t i = 0; i < d.coefficients.size(); ++i) {
            const auto q = d.set.elements()[i];
            coeffs[std::to_string(q)] = rational_to_json(d.coefficients[i]);
            t.add({std::to_string(q), fr(d.coefficients[i])});
        }
        r.data["coefficients"] = coeffs;
        r.tables.push_back(std::move(t));
    } else if (action == "mean") {
        const Rational m = seq::mean_value(s);
        r.data["mean"] = rational_to_json(m);
        r.notes.push_back("mean " + fr(m));
    } else if (action == "integrality") {
        const auto rep = seq::integrality_check(s);
        Json coeffs = Json::object();
        Table t({"q", "coefficient of q*delta(q)"});
        for (const auto& [q, c] : rep.coefficients) {
            coeffs[std::to_string(q)] = rational_to_json(c);
            t.add({std::to_string(q), fr(c)});
        }
        r.data["coefficients"] = coeffs;
        r.data["integral"] = rep.integral;
        r.data["mean"] = rational_to_json(rep.mean);
        r.tables.push_back(std::move(t));
        r.notes.push_back(std::string("integral ") + (rep.integral ? "yes" : "no") + ", mean " +
                          fr(rep.mean));
        if (!rep.integral) code = kExitMismatch;
    }
    ctx.emit(r);
    return code;
}

// --- germ ---------------------------------------------------------------------

int cmd_germ(const Context& ctx, const std::string& action, const std::string& path,
             std::int64_t k) {
    const germ::GermModel g = germ_from_json(read_json_file(path));
    Report r;
    if (action == "index") {
        const auto index = germ::index_of_iterate(g, k);
        const auto iterated = germ::iterated_index_germ(g, k);
        r.data["k"] = k;
        r.data["index"] = index;
        r.data["iterated_index"] = iterated;
        Table t({"k", "index", "iterated index"});
        t.add({std::to_string(k), std::to_string(index), std::to_string(iterated)});
        r.tables.push_back(std::move(t));
    } else if (action == "sequence") {
        const auto iota = germ::index_sequence(g, k);
        const auto I = seq::phi_transform(iota);
        r.data["index_sequence"] = sequence_to_json(iota);
        r.data["iterated_index_sequence"] = sequence_to_json(I);
        Json rows = Json::array();
        Table t({"k", "index", "iterated index"});
        for (std::int64_t i = 1; i <= k; ++i) {
            rows.push_back({{"k", i}, {"index", rational_to_json(iota(i))},
                            {"iterated_index", rational_to_json(I(i))}});
            t.add({std::to_string(i), fr(iota(i)), fr(I(i))});
        }
        r.data["values"] = rows;
        r.tables.push_back(std::move(t));
    } else if (action == "sigma") {
        const Rational s = germ::sigma(g);
        r.data["sigma"] = rational_to_json(s);
        r.data["set"] = germ::subordinating_set(g).elements();
        r.notes.push_back("sigma " + fr(s));
    }
    ctx.emit(r);
    return kExitOk;
}

// --- orbits -------------------------------------------------------------------

int cmd_verify(const Context& ctx, const std::string& map_spec, std::int64_t max_k) {
    const orbits::MapModel model = map_from_spec(map_spec);
    const auto rows = orbits::verify_theorem_index_maps(model, max_k);
    Report r;
    r.data["map"] = orbits::describe(model);
    Json list = Json::array();
    Table t({"k", "good-orbit sum", "totient formula", "L(F^k)", "equal"});
    bool all = true;
    for (const auto& row : rows) {
        all = all && row.equal;
        list.push_back({{"k", row.k},
                        {"direct", row.direct},
                        {"formula", rational_to_json(row.formula)},
                        {"lefschetz", row.lefschetz},
                        {"equal", row.equal}});
        t.add({std::to_string(row.k), std::to_string(row.direct), fr(row.formula),
               std::to_string(row.lefschetz), row.equal ? "yes" : "NO"});
    }
    r.data["rows"] = list;
    r.data["all_equal"] = all;
    r.tables.push_back(std::move(t));
    r.notes.push_back(all ? "all rows agree" : "MISMATCH");
    ctx.emit(r);
    return all ? kExitOk : kExitMismatch;
}

// --- mec ----------------------------------------------------------------------

struct MecArgs {
    std::string example;
    std::int64_t n = 2;
    std::int64_t p = 1;
    std::int64_t chi_b = 2;
    std::int64_t chern = 1;
    std::int64_t r = 1;
    bool full = false;
    std::string profile_path;
    std::string orbits_path;
    std::int64_t q_max = 12, r_max = 12, m_max = 12, n_max = 60;
    std::int64_t k = 12;
    bool pairs = false;
};

Json entry_json(const mec::LocalHomologyEntry& e) {
    Json j{{"label", e.label}, {"iterate", e.iterate}, {"dimension", e.dimension}};
    j["degree"] = e.degree ? Json(*e.degree) : Json(nullptr);
    if (e.branch) j["branch"] = germ::to_string(*e.branch);
    return j;
}

Json consistency_json(const mec::ConsistencyReport& c) {
    Json v = Json::array();
    for (const auto& x : c.violations) {
        Json j{{"constraint", x.constraint}, {"message", x.message}};
        j["degree"] = x.degree ? Json(*x.degree) : Json(nullptr);
        if (x.constraint == "C1" || x.constraint == "C2") {
            j["local"] = x.local;
            j["homology"] = x.profile;
            if (x.constraint == "C2") j["neighbours"] = x.neighbours;
        }
        v.push_back(j);
    }
    Json a = Json::array();
    for (const auto& e : c.assignment) a.push_back(entry_json(e));
    return {{"verdict", mec::to_string(c.verdict)},
            {"violations", v},
            {"assignment", a},
            {"log", c.case_log},
            {"warnings", c.warnings},
            {"window", {c.window_lo, c.window_hi}}};
}

int cmd_mec_chi(const Context& ctx, const MecArgs& a) {
    Report r;
    Table t({"source", "chi+", "chi-"});
    auto row = [&](const std::string& source, const Rational& plus, const Rational& minus) {
        r.data[source] = {{"chi_plus", rational_to_json(plus)}, {"chi_minus", rational_to_json(minus)}};
        t.add({source, fr(plus), fr(minus)});
    };
    const int sources = !a.example.empty() + !a.profile_path.empty() + !a.orbits_path.empty();
    if (sources == 0) throw SchemaError("mec chi needs --example, --profile or --orbits");
    if (!a.example.empty()) {
        if (a.example == "sphere") {
            const auto h = mec::HomologyProfile::standard_sphere(a.n);
            row("sphere", mec::chi_from_profile(h, mec::Sign::positive),
                mec::chi_from_profile(h, mec::Sign::negative));
        } else if (a.example == "ustilovsky") {
            row("ustilovsky", mec::ustilovsky_chi(a.p, a.n), 0);
        } else if (a.example == "prequant") {
            row("prequant", mec::prequantization_chi(a.chi_b, a.chern, a.r), 0);
        } else if (a.example == "cotangent") {
            row("cotangent",
                mec::unit_cotangent_chi(a.n, a.full ? mec::FundamentalClassMode::full
                                                    : mec::FundamentalClassMode::trivial),
                0);
        } else {
            throw SchemaError("--example must be sphere, ustilovsky, prequant or cotangent");
        }
    }
    if (!a.profile_path.empty()) {
        const auto h = profile_from_json(read_json_file(a.profile_path));
        row("profile", mec::chi_from_profile(h, mec::Sign::positive),
            mec::chi_from_profile(h, mec::Sign::negative));
    }
    if (!a.orbits_path.empty()) {
        const auto table = orbit_table_from_json(read_json_file(a.orbits_path));
        for (const auto& o : table.orbits) mec::validate(o);
        row("orbits", mec::chi_from_orbits(table.orbits, mec::Sign::positive),
            mec::chi_from_orbits(table.orbits, mec::Sign::negative));
    }
    r.tables.push_back(std::move(t));
    ctx.emit(r);
    return kExitOk;
}

int cmd_mec_check(const Context& ctx, const MecArgs& a) {
    if (a.orbits_path.empty() || a.profile_path.empty()) {
        throw SchemaError("mec check needs --orbits and --profile");
    }
    const auto table = orbit_table_from_json(read_json_file(a.orbits_path));
    const auto h = profile_from_json(read_json_file(a.profile_path));
    mec::MorseOptions opts;
    opts.max_iterate = a.n_max;
    opts.supplied_tables = table.local_tables;
    const auto rep = mec::morse_consistency(table.orbits, h, opts);
    Report r;
    r.data["result"] = consistency_json(rep);
    Table t({"constraint", "degree", "detail"});
    for (const auto& v : rep.violations) {
        t.add({v.constraint, v.degree ? std::to_string(*v.degree) : "-", v.message});
    }
    r.notes.push_back("verdict " + mec::to_string(rep.verdict));
    for (const auto& l : rep.case_log) r.notes.push_back("  " + l);
    for (const auto& w : rep.warnings) r.notes.push_back("warning: " + w);
    if (!rep.violations.empty()) r.tables.push_back(std::move(t));
    ctx.emit(r);
    return rep.verdict == mec::Verdict::consistent ? kExitOk : kExitMismatch;
}

std::string describe_case(const mec::S3Case& c) {
    std::string text = c.family;
    for (const auto& [k, v] : c.parameters) text += " " + k + "=" + v;
    return text;
}

int cmd_mec_exclude(const Context& ctx, const MecArgs& a) {
    const mec::S3Bounds b{a.q_max, a.r_max, a.m_max, a.n_max};
    const auto rep = a.pairs ? mec::explore_symmetric_pair_s3(b) : mec::exclude_single_orbit_s3(b);
    Report r;
    Json cases = Json::array();
    Table t({"case", "stage", "verdict", "reason"});
    for (const auto& c : rep.cases) {
        Json params = Json::object();
        for (const auto& [k, v] : c.parameters) params[k] = v;
        cases.push_back({{"family", c.family},
                         {"stage", c.stage},
                         {"parameters", params},
                         {"report", consistency_json(c.report)}});
        const std::string reason =
            c.report.violations.empty() ? "" : c.report.violations.front().constraint + ": " +
                                                   c.report.violations.front().message;
        t.add({describe_case(c), c.stage, mec::to_string(c.report.verdict), reason});
    }
    Json survivors = Json::array();
    for (auto i : rep.survivors) survivors.push_back(describe_case(rep.cases[i]));
    r.data["copies"] = rep.copies;
    r.data["cases"] = cases;
    r.data["survivors"] = survivors;
    r.tables.push_back(std::move(t));
    r.notes.push_back("cases " + std::to_string(rep.cases.size()) + ", survivors " +
                      std::to_string(rep.survivors.size()));
    for (auto i : rep.survivors) r.notes.push_back("survivor: " + describe_case(rep.cases[i]));
    ctx.emit(r);
    return rep.survivors.empty() ? kExitMismatch : kExitOk;
}

int cmd_mec_beta(const Context& ctx, const MecArgs& a) {
    if (a.profile_path.empty()) throw SchemaError("mec beta needs --profile");
    std::vector<mec::ReebOrbitRecord> orbits;
    if (!a.orbits_path.empty()) orbits = orbit_table_from_json(read_json_file(a.orbits_path)).orbits;
    for (const auto& o : orbits) mec::validate(o);
    const auto h = profile_from_json(read_json_file(a.profile_path));
    const auto rep = mec::beta_bound_check(orbits, h);
    Report r;
    r.data["plus"] = {{"homology", rational_to_json(rep.profile_plus)},
                      {"orbits", rational_to_json(rep.orbits_plus)},
                      {"pass", rep.pass_plus}};
    r.data["minus"] = {{"homology", rational_to_json(rep.profile_minus)},
                       {"orbits", rational_to_json(rep.orbits_minus)},
                       {"pass", rep.pass_minus}};
    Json per = Json::object();
    for (const auto& o : orbits) per[o.label] = rational_to_json(mec::beta_of_orbit(o));
    r.data["beta_orbit"] = per;
    Table t({"sign", "beta (homology)", "bound (orbits)", "holds"});
    t.add({"+", fr(rep.profile_plus), fr(rep.orbits_plus), rep.pass_plus ? "yes" : "no"});
    t.add({"-", fr(rep.profile_minus), fr(rep.orbits_minus), rep.pass_minus ? "yes" : "no"});
    r.tables.push_back(std::move(t));
    ctx.emit(r);
    return rep.pass() ? kExitOk : kExitMismatch;
}

int cmd_mec_experiment(const Context& ctx, const MecArgs& a) {
    if (a.orbits_path.empty()) throw SchemaError("mec experiment needs --orbits");
    const auto table = orbit_table_from_json(read_json_file(a.orbits_path));
    Report r;
    Json list = Json::array();
    Table t({"orbit", "set", "dims", "subordinated"});
    for (const auto& o : table.orbits) {
        mec::validate(o);
        const auto e = mec::subordination_experiment(o, a.k);
        Json j{{"label", e.label}, {"set", e.set.elements()}, {"dims", e.dims},
               {"subordinated", e.subordinated}};
        j["first_mismatch"] = e.first_mismatch ? Json(*e.first_mismatch) : Json(nullptr);
        list.push_back(j);
        std::string set_text, dims_text;
        for (auto q : e.set.elements()) set_text += (set_text.empty() ? "" : ",") + std::to_string(q);
        for (auto d : e.dims) dims_text += (dims_text.empty() ? "" : ",") + std::to_string(d);
        t.add({e.label, "{" + set_text + "}", dims_text, e.subordinated ? "yes" : "no"});
    }
    r.data["orbits"] = list;
    r.tables.push_back(std::move(t));
    ctx.emit(r);
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Iterated fixed-point indices, periodic orbit counts and mean Euler characteristics"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    Context ctx;
    ctx.out = &out;
    std::function<int()> action;

    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", ctx.format, "Output format")
            ->check(CLI::IsMember({"json", "table"}))
            ->capture_default_str();
    };
    auto positive = CLI::Range(std::int64_t{1}, std::numeric_limits<std::int64_t>::max());

    // seq
    std::string seq_file;
    auto* seq_cmd = app.add_subcommand("seq", "Subordinated sequences");
    seq_cmd->require_subcommand(1);
    for (const char* name : {"transform", "inverse", "decompose", "mean", "integrality"}) {
        auto* sub = seq_cmd->add_subcommand(name);
        sub->add_option("file", seq_file, "Sequence JSON")->required();
        add_format(sub);
        sub->callback([&, name = std::string(name)] {
            ctx.command = "seq " + name;
            action = [&, name] { return cmd_seq(ctx, name, seq_file); };
        });
    }

    // germ
    std::string germ_file;
    std::int64_t germ_k = 12;
    auto* germ_cmd = app.add_subcommand("germ", "Indices of fixed-point germs");
    germ_cmd->require_subcommand(1);
    for (const char* name : {"index", "sequence", "sigma"}) {
        auto* sub = germ_cmd->add_subcommand(name);
        sub->add_option("file", germ_file, "Germ JSON")->required();
        if (std::string(name) != "sigma") {
            sub->add_option("--k", germ_k, "Iterate (index) or count (sequence)")
                ->check(positive)
                ->capture_default_str();
        }
        add_format(sub);
        sub->callback([&, name = std::string(name)] {
            ctx.command = "germ " + name;
            if (name != "sigma") ctx.defaults["k"] = germ_k;
            action = [&, name] { return cmd_germ(ctx, name, germ_file, germ_k); };
        });
    }

    // orbits verify (also top-level verify)
    std::string map_spec;
    std::int64_t max_k = 12;
    auto setup_verify = [&](CLI::App* sub, std::string command) {
        sub->add_option("--map", map_spec, "circle:d=<degree> or torus:a,b,c,d")->required();
        sub->add_option("--max-k", max_k, "Largest iterate")->check(positive)->capture_default_str();
        add_format(sub);
        sub->callback([&, command] {
            ctx.command = command;
            ctx.defaults["max_k"] = max_k;
            action = [&] { return cmd_verify(ctx, map_spec, max_k); };
        });
    };
    auto* orbits_cmd = app.add_subcommand("orbits", "Periodic orbits of global maps");
    orbits_cmd->require_subcommand(1);
    setup_verify(orbits_cmd->add_subcommand("verify", "Check the totient formula for iterated indices"),
                 "orbits verify");
    setup_verify(app.add_subcommand("verify", "Alias of 'orbits verify'"), "verify");

    // mec
    MecArgs mec_args;
    auto* mec_cmd = app.add_subcommand("mec", "Mean Euler characteristic tools");
    mec_cmd->require_subcommand(1);

    auto* chi = mec_cmd->add_subcommand("chi", "Mean Euler characteristic");
    chi->add_option("--example", mec_args.example, "sphere | ustilovsky | prequant | cotangent");
    chi->add_option("--n", mec_args.n, "Half dimension")->capture_default_str();
    chi->add_option("--p", mec_args.p, "Brieskorn exponent")->capture_default_str();
    chi->add_option("--chi-b", mec_args.chi_b, "Euler characteristic of the base")->capture_default_str();
    chi->add_option("--chern", mec_args.chern, "Minimal Chern number")->capture_default_str();
    chi->add_option("--r", mec_args.r, "Fibre multiple")->capture_default_str();
    chi->add_flag("--full", mec_args.full, "Full fundamental-class group (cotangent, n = 2)");
    chi->add_option("--profile", mec_args.profile_path, "Homology profile JSON");
    chi->add_option("--orbits", mec_args.orbits_path, "Orbit table JSON");
    add_format(chi);
    chi->callback([&] {
        ctx.command = "mec chi";
        if (!mec_args.example.empty()) {
            ctx.defaults = {{"n", mec_args.n}, {"p", mec_args.p}, {"chi_b", mec_args.chi_b},
                            {"chern", mec_args.chern}, {"r", mec_args.r}, {"full", mec_args.full}};
        }
        action = [&] { return cmd_mec_chi(ctx, mec_args); };
    });

    auto* check = mec_cmd->add_subcommand("check", "Morse consistency of an orbit table");
    check->add_option("--orbits", mec_args.orbits_path, "Orbit table JSON")->required();
    check->add_option("--profile", mec_args.profile_path, "Homology profile JSON")->required();
    check->add_option("--nmax", mec_args.n_max, "Largest iterate")->check(positive)->capture_default_str();
    add_format(check);
    check->callback([&] {
        ctx.command = "mec check";
        ctx.defaults = {{"nmax", mec_args.n_max}};
        action = [&] { return cmd_mec_check(ctx, mec_args); };
    });

    auto* excl = mec_cmd->add_subcommand("exclude-s3", "Single-orbit exclusion on the standard 3-sphere");
    excl->add_option("--qmax", mec_args.q_max)->check(CLI::Range(2, 1000))->capture_default_str();
    excl->add_option("--rmax", mec_args.r_max)->check(CLI::Range(0, 1000))->capture_default_str();
    excl->add_option("--mmax", mec_args.m_max)->check(CLI::Range(1, 1000))->capture_default_str();
    excl->add_option("--nmax", mec_args.n_max)->check(CLI::Range(1, 10000))->capture_default_str();
    excl->add_flag("--pairs", mec_args.pairs, "Explore two orbits with identical invariants (report only)");
    add_format(excl);
    excl->callback([&] {
        ctx.command = "mec exclude-s3";
        ctx.defaults = {{"qmax", mec_args.q_max}, {"rmax", mec_args.r_max}, {"mmax", mec_args.m_max},
                        {"nmax", mec_args.n_max}, {"pairs", mec_args.pairs}};
        action = [&] { return cmd_mec_exclude(ctx, mec_args); };
    });

    auto* beta = mec_cmd->add_subcommand("beta", "Asymptotic Morse inequality");
    beta->add_option("--orbits", mec_args.orbits_path, "Orbit table JSON (omit for no orbits)");
    beta->add_option("--profile", mec_args.profile_path, "Homology profile JSON")->required();
    add_format(beta);
    beta->callback([&] {
        ctx.command = "mec beta";
        action = [&] { return cmd_mec_beta(ctx, mec_args); };
    });

    auto* exper = mec_cmd->add_subcommand("experiment", "Subordination of local homology dimensions");
    exper->add_option("--orbits", mec_args.orbits_path, "Orbit table JSON")->required();
    exper->add_option("--k", mec_args.k, "Number of iterates")->check(positive)->capture_default_str();
    add_format(exper);
    exper->callback([&] {
        ctx.command = "mec experiment";
        ctx.defaults = {{"k", mec_args.k}};
        action = [&] { return cmd_mec_experiment(ctx, mec_args); };
    });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitSchema;
    }
    if (!action) return kExitSchema;

    try {
        return action();
    } catch (const SchemaError& e) {
        err << "input error: " << e.what() << '\n';
        return kExitSchema;
    } catch (const seq::FitError& e) {
        err << "fit failure: " << e.what() << '\n';
        return kExitOracle;
    } catch (const germ::OracleFailure& e) {
        err << "oracle failure: " << e.what() << '\n';
        return kExitOracle;
    } catch (const orbits::SeedError& e) {
        err << "oracle failure: " << e.what() << '\n';
        return kExitOracle;
    } catch (const germ::ModelInconsistency& e) {
        err << "inconsistent model: " << e.what() << '\n';
        return kExitSchema;
    } catch (const std::invalid_argument& e) {
        err << "invalid input: " << e.what() << '\n';
        return kExitSchema;
    } catch (const std::domain_error& e) {
        err << "invalid input: " << e.what() << '\n';
        return kExitSchema;
    } catch (const Json::exception& e) {
        err << "input error: " << e.what() << '\n';
        return kExitSchema;
    } catch (const std::exception& e) {
        err << "computation failed: " << e.what() << '\n';
        return kExitOracle;
    }
}

}  // namespace iterindex::cli
