#include "cli.hpp"

#include <catkit/io.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

namespace catkit::cli {

using nlohmann::json;

namespace {

struct Options {
    int level = 3;
    int depth = 3;
    std::optional<std::size_t> cap;
    bool two_of_three = false;
    bool as_json = false;
    std::optional<std::string> weq;
    std::string category, functor, fibration, section, presection, sset, subset, map, string, out;
    int k = 2;
};

// A command fills a machine report and human lines and returns its exit code.
struct Result {
    json report = json::object();
    std::vector<std::string> lines;
    int code = exit_pass;
    void line(std::string s) { lines.push_back(std::move(s)); }
};

class Session {
public:
    explicit Session(const Options& o) : opt(o), limits(make_limits(o)), ws(limits) {}

    const Options& opt;
    Limits limits;
    Workspace ws;

    static Limits make_limits(const Options& o) {
        Limits l;
        if (o.cap) l.max_items = *o.cap;
        return l;
    }
    static const std::string& need(const std::string& value, const char* flag) {
        if (value.empty()) throw Error(ErrorKind::usage, std::string("missing required option ") + flag);
        return value;
    }

    CatPtr category() { return ws.load_category(need(opt.category, "--category")); }
    FinFunctor functor() { return ws.load_functor(need(opt.functor, "--functor")); }
    MarkedIndexedCat fibration() {
        MarkedIndexedCat m = ws.load_indexed(need(opt.fibration, "--fibration"));
        if (opt.weq) m = mark(m.cat, parse_weq_preset(*opt.weq));
        return m;
    }
    TruncatedSSet sset() { return ws.load_sset(need(opt.sset, "--sset")); }

    // The presection given directly, or the embedding of a section.
    Section presection(const SimplicialExtension& x) {
        if (!opt.presection.empty()) return read_presection(x, read_file(opt.presection));
        Section s = read_section(x.base, read_file(need(opt.section, "--section or --presection")));
        return embed(x, s);
    }
};

json parsed(const std::string& text) { return json::parse(text); }

std::string homology_text(const HomologyResult& h) {
    std::ostringstream os;
    for (int n = 0; n <= h.valid_to; ++n) {
        HomologyResult one;
        one.betti = {h.betti[static_cast<std::size_t>(n)]};
        one.torsion = {h.torsion[static_cast<std::size_t>(n)]};
        one.valid_to = 0;
        std::string group = one.str();
        os << (n ? ", " : "") << "H_" << n << "=" << group.substr(1, group.size() - 2);
    }
    os << " (valid to degree " << h.valid_to << ")";
    return os.str();
}

void report_lines(Result& r, const DiagnosticReport& d) {
    r.line("verdict: " + to_string(d.verdict));
    r.line("fibres diagnosed: " + std::to_string(d.per_fibre.size()) + ", skipped: " + std::to_string(d.skipped));
    if (const auto* w = d.witness()) r.line("witness: " + w->name + " " + w->verdict.str());
    for (const auto& f : d.per_fibre)
        if (f.verdict.kind != Contractibility::certified)
            r.line("  " + f.name + " [" + std::to_string(f.objects) + " objects] " + f.verdict.str());
}

void cmd_validate(Session& s, Result& r) {
    json checked = json::array();
    auto add = [&](const std::string& kind, const std::string& file, const std::string& summary) {
        checked.push_back({{"kind", kind}, {"file", file}, {"summary", summary}});
        r.line(kind + " " + file + ": valid (" + summary + ")");
    };
    if (!s.opt.category.empty()) {
        CatPtr c = s.category();
        add("category", s.opt.category,
            std::to_string(c->num_objects()) + " objects, " + std::to_string(c->num_arrows()) + " arrows");
    }
    if (!s.opt.functor.empty()) {
        FinFunctor f = s.functor();
        add("functor", s.opt.functor,
            std::to_string(f.dom()->num_objects()) + " objects to " + std::to_string(f.cod()->num_objects()));
    }
    if (!s.opt.fibration.empty()) {
        MarkedIndexedCat m = s.fibration();
        add("fibration", s.opt.fibration, "base with " + std::to_string(m.cat.base->num_objects()) + " objects");
        if (!s.opt.section.empty()) {
            read_section(m.cat, read_file(s.opt.section));
            add("section", s.opt.section, "strict section");
        }
        if (!s.opt.presection.empty()) {
            SimplicialExtension x = build_extension(m.cat, s.opt.level, s.limits);
            read_presection(x, read_file(s.opt.presection));
            add("presection", s.opt.presection, "strict presection at N=" + std::to_string(s.opt.level));
        }
    }
    if (!s.opt.sset.empty()) {
        TruncatedSSet x = s.sset();
        if (auto f = x.check_functoriality(x.level()); !f) throw Error(ErrorKind::validation, f.violation);
        add("sset", s.opt.sset, "level " + std::to_string(x.level()));
    }
    if (checked.empty()) throw Error(ErrorKind::usage, "nothing to validate");
    r.report["validated"] = checked;
}

void cmd_nerve(Session& s, Result& r) {
    Nerve nv = nerve(s.category(), s.opt.level, s.limits);
    json sizes = json::array(), nondeg = json::array();
    std::string text;
    for (int n = 0; n <= s.opt.level; ++n) {
        std::size_t count = 0;
        for (std::size_t x = 0; x < nv.sset->size(n); ++x) count += nv.sset->is_degenerate(n, x) ? 0 : 1;
        sizes.push_back(nv.sset->size(n));
        nondeg.push_back(count);
        text += (n ? ", " : "") + std::to_string(nv.sset->size(n));
    }
    r.report["sizes"] = sizes;
    r.report["nondegenerate"] = nondeg;
    r.line("nerve sizes: (" + text + ")");
    if (!s.opt.out.empty()) {
        std::ofstream(s.opt.out) << write_sset(*nv.sset);
        r.line("wrote " + s.opt.out);
    }
}

void cmd_replace(Session& s, Result& r) {
    CatPtr c = s.category();
    Replacement rep = simplicial_replacement(c, s.opt.level, s.limits);
    json per_dim = json::array();
    for (int n = 0; n <= s.opt.level; ++n) per_dim.push_back(rep.nerve.sset->size(n));
    std::map<std::string, std::size_t> labels;
    for (ArrowId a = 0; a < rep.cat()->num_arrows(); ++a)
        for (const auto& l : label_names(classify(rep.delta(a)))) ++labels[l];
    r.report["objects_per_dim"] = per_dim;
    r.report["objects"] = rep.cat()->num_objects();
    r.report["arrows"] = rep.cat()->num_arrows();
    r.report["labels"] = labels;
    r.line("replacement: " + std::to_string(rep.cat()->num_objects()) + " objects, " +
           std::to_string(rep.cat()->num_arrows()) + " maps");
    for (const auto& [l, n] : labels) r.line("  " + l + ": " + std::to_string(n));
}

void cmd_transpose(Session& s, Result& r) {
    MarkedIndexedCat m = s.fibration();
    TotalCat t = transpose(m.cat, s.limits);
    TotalCat g = grothendieck_op(m.cat, s.limits);
    CheckReport fib = check_fibration(t), opfib = check_opfibration(g);
    r.report["transpose"] = {{"objects", t.total->num_objects()}, {"arrows", t.total->num_arrows()},
                             {"cartesian", t.marked.size()}, {"fibration", fib.ok}, {"violation", fib.violation}};
    r.report["total"] = {{"objects", g.total->num_objects()}, {"arrows", g.total->num_arrows()},
                         {"opcartesian", g.marked.size()}, {"opfibration", opfib.ok}, {"violation", opfib.violation}};
    r.line("transpose: " + std::to_string(t.total->num_objects()) + " objects, " + std::to_string(t.total->num_arrows()) +
           " arrows, " + std::to_string(t.marked.size()) + " cartesian; fibration " + (fib ? "yes" : "NO: " + fib.violation));
    r.line("total: " + std::to_string(g.total->num_objects()) + " objects, " + std::to_string(g.total->num_arrows()) +
           " arrows, " + std::to_string(g.marked.size()) + " opcartesian; opfibration " +
           (opfib ? "yes" : "NO: " + opfib.violation));
    if (!fib || !opfib) r.code = exit_failed;
}

ObjectId string_object(const Replacement& rep, const std::string& name) {
    auto o = rep.cat()->find_object(name);
    if (!o) throw Error(ErrorKind::usage, "no string named '" + name + "' at this truncation");
    return *o;
}

void cmd_extend(Session& s, Result& r) {
    MarkedIndexedCat m = s.fibration();
    SimplicialExtension x = build_extension(m.cat, s.opt.level, s.limits);
    const Replacement& rep = *x.replacement;
    json fibres = json::array();
    for (ObjectId c = 0; c < rep.cat()->num_objects(); ++c) {
        if (!s.opt.string.empty() && rep.cat()->object_name(c) != s.opt.string) continue;
        const ExtensionFibre& f = x.fibre(c);
        json entry = {{"string", rep.cat()->object_name(c)}, {"objects", f.cat->num_objects()}, {"arrows", f.cat->num_arrows()}};
        r.line(rep.cat()->object_name(c) + ": " + std::to_string(f.cat->num_objects()) + " sections, " +
               std::to_string(f.cat->num_arrows()) + " maps");
        if (!s.opt.string.empty()) {
            json sections = json::array();
            for (const auto& a : f.sections) {
                sections.push_back(parsed(write_string_section(m.cat, rep.string(c), a)));
                r.line("  " + sections.back()["objects"].dump() + " " + sections.back()["comparisons"].dump());
            }
            entry["sections"] = sections;
        }
        fibres.push_back(entry);
    }
    if (!s.opt.string.empty() && fibres.empty()) string_object(rep, s.opt.string);
    r.report["fibres"] = fibres;
}

void cmd_adjoint(Session& s, Result& r) {
    MarkedIndexedCat m = s.fibration();
    SimplicialExtension x = build_extension(m.cat, s.opt.level, s.limits);
    const FinCat& c = *x.replacement->cat();
    json maps = json::array();
    std::map<std::string, std::size_t> per_case;
    std::size_t failures = 0;
    for (ArrowId a = 0; a < c.num_arrows(); ++a) {
        if (!s.opt.map.empty() ? c.arrow_name(a) != s.opt.map : c.is_identity(a)) continue;
        std::string kind = to_string(adjoint_case(x.replacement->delta(a)));
        json entry = {{"map", c.arrow_name(a)}, {"case", kind}};
        try {
            AdjunctionVerdict v = check_adjunction(x.transition(a), right_adjoint(x, a));
            entry["holds"] = v.holds;
            entry["witness"] = v.witness;
            if (!v.holds) {
                ++failures;
                r.line("FAIL " + c.arrow_name(a) + " (" + kind + "): " + v.witness);
            }
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::missing_limit) throw;
            entry["holds"] = false;
            entry["witness"] = e.what();
            ++failures;
            r.line("FAIL " + c.arrow_name(a) + " (" + kind + "): " + e.what());
        }
        ++per_case[kind];
        maps.push_back(entry);
    }
    if (maps.empty()) throw Error(ErrorKind::usage, "no map named '" + s.opt.map + "' at this truncation");
    r.report["maps"] = maps;
    r.report["cases"] = per_case;
    r.report["failures"] = failures;
    r.line("adjunctions checked: " + std::to_string(maps.size()) + ", failures: " + std::to_string(failures));
    for (const auto& [k, n] : per_case) r.line("  " + k + ": " + std::to_string(n));
    if (failures) r.code = exit_failed;
}

void cmd_embed(Session& s, Result& r) {
    MarkedIndexedCat m = s.fibration();
    SimplicialExtension x = build_extension(m.cat, s.opt.level, s.limits);
    Section sec = read_section(m.cat, read_file(Session::need(s.opt.section, "--section")));
    Section p = embed(x, sec);
    const FinCat& c = *x.replacement->cat();
    std::size_t segal = 0, cartesian = 0;
    for (ArrowId a = 0; a < c.num_arrows(); ++a) {
        if (!(classify(x.replacement->delta(a)) & label_segal)) continue;
        ++segal;
        cartesian += sends_segal_to_cartesian(x, p, a) ? 1 : 0;
    }
    r.report["presection"] = parsed(write_presection(x, p));
    r.report["segal_maps"] = segal;
    r.report["cartesian"] = cartesian;
    r.line("embedded presection: " + std::to_string(cartesian) + " of " + std::to_string(segal) +
           " Segal maps go to cartesian maps");
    if (!s.opt.out.empty()) {
        std::ofstream(s.opt.out) << write_presection(x, p);
        r.line("wrote " + s.opt.out);
    }
    if (cartesian != segal) r.code = exit_failed;
}

json witnesses_json(const std::vector<ComponentWitness>& ws) {
    json out = json::array();
    for (const auto& w : ws) out.push_back({{"map", w.map}, {"component", w.component}, {"description", w.description}});
    return out;
}

void cmd_check_segal(Session& s, Result& r) {
    MarkedIndexedCat m = s.fibration();
    SimplicialExtension x = build_extension(m.cat, s.opt.level, s.limits);
    Section p = s.presection(x);
    SegalOptions o;
    o.two_of_three = s.opt.two_of_three;
    SegalVerdict v = is_segal(x, p, m, o);
    r.report = {{"pass", v.pass}, {"criterion", to_string(v.criterion)}, {"witnesses", witnesses_json(v.witnesses)},
                {"cross_checked", v.cross_checked}, {"criteria_agree", v.criteria_agree}, {"convention", v.convention}};
    r.line(std::string("Segal: ") + (v.pass ? "PASS" : "FAIL") + " (" + to_string(v.criterion) + "; " + v.convention + ")");
    if (v.cross_checked) r.line(std::string("criteria agree: ") + (v.criteria_agree ? "yes" : "NO"));
    for (const auto& w : v.witnesses) r.line("  witness: " + w.description);
    if (!v.pass || !v.criteria_agree) r.code = exit_failed;
}

void cmd_check_locally_constant(Session& s, Result& r) {
    MarkedIndexedCat m = s.fibration();
    SimplicialExtension x = build_extension(m.cat, s.opt.level, s.limits);
    Section p = s.presection(x);
    MapSubset sub = read_map_subset(m.cat.base, read_file(Session::need(s.opt.subset, "--subset")));
    SegalOptions o;
    o.two_of_three = s.opt.two_of_three;
    LocallyConstantVerdict v = is_locally_constant(x, p, m, sub, o);
    r.report = {{"pass", v.pass}, {"witnesses", witnesses_json(v.witnesses)}, {"cross_checked", v.cross_checked},
                {"criteria_agree", v.criteria_agree}, {"convention", v.convention}};
    r.line(std::string("locally constant: ") + (v.pass ? "PASS" : "FAIL") + " (" + v.convention + ")");
    if (v.cross_checked) r.line(std::string("criteria agree: ") + (v.criteria_agree ? "yes" : "NO"));
    for (const auto& w : v.witnesses) r.line("  witness: " + w.description);
    if (!v.pass || !v.criteria_agree) r.code = exit_failed;
}

void cmd_check_resolution(Session& s, Result& r) {
    DiagnosticReport d = check_resolution(s.functor(), s.opt.level, s.opt.depth, s.limits);
    r.report = parsed(write_report(d));
    report_lines(r, d);
    if (d.verdict == Verdict::refuted) r.code = exit_failed;
}

void cmd_check_comma_resolution(Session& s, Result& r) {
    CommaResolutionReport c = check_comma_resolution(s.functor(), s.opt.level, s.opt.depth, s.limits);
    r.report = parsed(write_report(c.left));
    r.report["verdict"] = to_string(c.verdict);
    r.report["comma"] = {{"objects", c.comma_objects}, {"arrows", c.comma_arrows}};
    json tau = json::array();
    for (const auto& t : c.tau)
        tau.push_back({{"string", t.name}, {"comma_fibre", parsed(write_contractibility(t.comma_fibre))},
                       {"target", parsed(write_contractibility(t.target))}, {"cofinal", to_string(t.cofinal)}});
    r.report["tau"] = tau;
    r.line("comma: " + std::to_string(c.comma_objects) + " objects, " + std::to_string(c.comma_arrows) + " arrows");
    report_lines(r, c.left);
    for (const auto& t : c.tau) r.line("  " + t.name + " cofinal: " + to_string(t.cofinal));
    if (c.verdict == Verdict::refuted) r.code = exit_failed;
}

void cmd_comma(Session& s, Result& r) {
    FinFunctor f = s.functor();
    Nerve nd = nerve(f.dom(), s.opt.level, s.limits);
    Nerve nc = nerve(f.cod(), s.opt.level, s.limits);
    SimplicialMap id{nc.sset, nc.sset, {}};
    for (int n = 0; n <= s.opt.level; ++n) {
        std::vector<std::size_t> v(nc.sset->size(n));
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = i;
        id.maps.push_back(std::move(v));
    }
    RelComma rc = relative_comma(id, nerve_map(nd, nc, f), s.limits);
    CheckReport structure = check_rel_comma(rc), lifts = check_face_lifts(rc);
    std::map<int, std::size_t> degrees;
    for (ObjectId o = 0; o < rc.objects.size(); ++o) ++degrees[rc.degree(o)];
    json by_degree = json::object();
    for (const auto& [deg, n] : degrees) by_degree[std::to_string(deg)] = n;
    r.report = {{"objects", rc.cat->num_objects()}, {"arrows", rc.cat->num_arrows()}, {"by_degree", by_degree},
                {"structure", {{"ok", structure.ok}, {"violation", structure.violation}}},
                {"face_lifts", {{"ok", lifts.ok}, {"violation", lifts.violation}}}};
    r.line("relative comma: " + std::to_string(rc.cat->num_objects()) + " objects, " +
           std::to_string(rc.cat->num_arrows()) + " arrows");
    for (const auto& [deg, n] : degrees) r.line("  degree " + std::to_string(deg) + ": " + std::to_string(n));
    r.line(std::string("structure: ") + (structure ? "ok" : "FAIL: " + structure.violation));
    r.line(std::string("face lifts: ") + (lifts ? "ok" : "FAIL: " + lifts.violation));
    if (!structure || !lifts) r.code = exit_failed;
}

TruncatedSSet input_sset(Session& s, int level) {
    if (!s.opt.sset.empty()) return s.sset();
    return *nerve(s.category(), level, s.limits).sset;
}

void cmd_homology(Session& s, Result& r) {
    TruncatedSSet x = input_sset(s, s.opt.depth);
    HomologyResult h = homology(x, s.opt.depth);
    r.report = parsed(write_homology(h));
    r.line(homology_text(h));
}

void cmd_subdivide(Session& s, Result& r) {
    int k = s.opt.k;
    TruncatedSSet x = input_sset(s, k * (s.opt.depth + 1) - 1);
    TruncatedSSet sub = edgewise_subdivide(k, x);
    HomologyComparison cmp = homology_equal(sub, x, s.opt.depth);
    json sizes = json::array();
    for (int n = 0; n <= sub.level(); ++n) sizes.push_back(sub.size(n));
    r.report = {{"k", k}, {"sizes", sizes}, {"homology_equal", cmp.equal}, {"compared_to", cmp.compared_to},
                {"original", parsed(write_homology(homology(x, s.opt.depth)))},
                {"subdivision", parsed(write_homology(homology(sub, s.opt.depth)))}};
    r.line("subdivision i_" + std::to_string(k) + ": level " + std::to_string(sub.level()));
    r.line("original:    " + homology_text(homology(x, s.opt.depth)));
    r.line("subdivision: " + homology_text(homology(sub, s.opt.depth)));
    r.line(std::string("homology equal through degree ") + std::to_string(cmp.compared_to) + ": " + (cmp.equal ? "yes" : "NO"));
    if (!s.opt.out.empty()) std::ofstream(s.opt.out) << write_sset(sub);
    if (!cmp.equal) r.code = exit_failed;
}

void cmd_cofinal(Session& s, Result& r) {
    DiagnosticReport d = cofinality(s.functor(), s.opt.depth, s.limits);
    r.report = parsed(write_report(d));
    report_lines(r, d);
    if (d.verdict == Verdict::refuted) r.code = exit_failed;
}

void cmd_witness_localisation(Session& s, Result& r) {
    Replacement rep = simplicial_replacement(s.category(), s.opt.level, s.limits);
    std::vector<LocalisationWitness> ws = localisation_witnesses(rep);
    const FinCat& c = *rep.cat();
    json list = json::array();
    std::size_t failed = 0;
    auto name = [&](ArrowId a) { return a == no_arrow ? std::string() : c.arrow_name(a); };
    for (const auto& w : ws) {
        json checks = json::array();
        for (const auto& ch : w.checks) checks.push_back({{"relation", ch.relation}, {"holds", ch.holds}});
        list.push_back({{"map", name(w.map)}, {"dropped", w.dropped}, {"gamma", name(w.gamma)},
                        {"alpha_prime", name(w.alpha_prime)}, {"beta", name(w.beta)}, {"degeneracy", name(w.degeneracy)},
                        {"segal_unit", name(w.segal_unit)}, {"checks", checks}, {"verified", w.verified()}});
        if (!w.verified()) {
            ++failed;
            for (const auto& ch : w.checks)
                if (!ch.holds) r.line("FAIL " + name(w.map) + ": " + ch.relation);
        }
    }
    r.report = {{"witnesses", list}, {"failed", failed}};
    r.line("head-identity maps: " + std::to_string(ws.size()) + ", zigzags verified: " + std::to_string(ws.size() - failed));
    if (failed) r.code = exit_failed;
}

int exit_for(ErrorKind k) {
    switch (k) {
        case ErrorKind::size_cap: return exit_size_cap;
        case ErrorKind::missing_limit:
        case ErrorKind::quotient_not_finite: return exit_failed;
        case ErrorKind::usage:
        case ErrorKind::validation:
        case ErrorKind::precondition: return exit_usage;
    }
    return exit_usage;
}

std::string kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::usage: return "usage";
        case ErrorKind::validation: return "validation";
        case ErrorKind::size_cap: return "size_cap";
        case ErrorKind::missing_limit: return "missing_limit";
        case ErrorKind::precondition: return "precondition";
        case ErrorKind::quotient_not_finite: return "quotient_not_finite";
    }
    return "error";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options opt;
    CLI::App app{"Finite category, simplicial replacement and resolution checks", "catkit"};
    app.require_subcommand(1);
    using Handler = std::function<void(Session&, Result&)>;
    std::map<CLI::App*, std::pair<std::string, Handler>> handlers;

    auto add = [&](const std::string& name, const std::string& help, Handler h, std::vector<std::string> inputs) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("-N", opt.level, "truncation level")->capture_default_str();
        sub->add_option("-d", opt.depth, "homology depth (degrees 0..d-1 are trusted)")->capture_default_str();
        sub->add_option("--cap", opt.cap, "size cap for enumerations");
        sub->add_flag("--json", opt.as_json, "machine-readable output");
        for (const auto& in : inputs) {
            if (in == "category") sub->add_option("--category", opt.category, "category JSON");
            if (in == "functor") sub->add_option("--functor", opt.functor, "functor JSON");
            if (in == "fibration") {
                sub->add_option("--fibration", opt.fibration, "indexed category JSON");
                sub->add_option("--weq", opt.weq, "weak equivalence preset: iso, all, identities");
            }
            if (in == "section") sub->add_option("--section", opt.section, "section JSON");
            if (in == "presection") sub->add_option("--presection", opt.presection, "presection JSON");
            if (in == "sset") sub->add_option("--sset", opt.sset, "truncated simplicial set JSON");
            if (in == "subset") sub->add_option("--subset", opt.subset, "map subset JSON of the base");
            if (in == "map") sub->add_option("--map", opt.map, "map of the replacement by name");
            if (in == "string") sub->add_option("--string", opt.string, "string of the replacement by name");
            if (in == "out") sub->add_option("--out", opt.out, "write the produced structure to a file");
            if (in == "k") sub->add_option("-k", opt.k, "subdivision factor")->capture_default_str();
            if (in == "two-of-three") sub->add_flag("--two-of-three", opt.two_of_three, "use the adjacent comparison criterion");
        }
        handlers[sub] = {name, std::move(h)};
    };
    add("validate", "validate input files", cmd_validate,
        {"category", "functor", "fibration", "section", "presection", "sset"});
    add("nerve", "nerve sizes of a category", cmd_nerve, {"category", "out"});
    add("replace", "simplicial replacement and its map classes", cmd_replace, {"category"});
    add("transpose", "transpose fibration and total category", cmd_transpose, {"fibration"});
    add("extend", "fibres of the simplicial extension", cmd_extend, {"fibration", "string"});
    add("adjoint", "right adjoints of the transitions and their adjunctions", cmd_adjoint, {"fibration", "map"});
    add("embed", "presection of a section", cmd_embed, {"fibration", "section", "out"});
    add("check-segal", "Segal condition of a presection", cmd_check_segal,
        {"fibration", "section", "presection", "two-of-three"});
    add("check-locally-constant", "local constancy of a Segal presection", cmd_check_locally_constant,
        {"fibration", "section", "presection", "subset", "two-of-three"});
    add("check-resolution", "contractibility of the string fibres of a functor", cmd_check_resolution, {"functor"});
    add("check-comma-resolution", "left resolution diagnostics of the relative comma projection",
        cmd_check_comma_resolution, {"functor"});
    add("comma", "relative comma object of the nerve of a functor", cmd_comma, {"functor"});
    add("homology", "integral homology of a simplicial set or a nerve", cmd_homology, {"sset", "category"});
    add("subdivide", "edgewise subdivision and homology comparison", cmd_subdivide, {"sset", "category", "k", "out"});
    add("cofinal", "contractibility of the under categories of a functor", cmd_cofinal, {"functor"});
    add("witness-localisation", "zigzags inverting head-identity maps", cmd_witness_localisation, {"category"});

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_pass;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return exit_pass;
        }
        err << "usage error: " << e.what() << "\n";
        return exit_usage;
    }

    CLI::App* chosen = app.get_subcommands().front();
    const auto& [name, handler] = handlers.at(chosen);
    Result r;
    try {
        Session s(opt);
        handler(s, r);
    } catch (const Error& e) {
        int code = exit_for(e.kind());
        if (opt.as_json) {
            json j = {{"command", name}, {"exit", code}, {"error", {{"kind", kind_name(e.kind())}, {"message", e.what()}}}};
            out << j.dump(2) << "\n";
        } else {
            err << kind_name(e.kind()) << " error: " << e.what() << "\n";
        }
        return code;
    }
    if (opt.as_json) {
        r.report["command"] = name;
        r.report["exit"] = r.code;
        out << r.report.dump(2) << "\n";
    } else {
        for (const auto& l : r.lines) out << l << "\n";
    }
    return r.code;
}

}  // namespace catkit::cli
