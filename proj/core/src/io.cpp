#include <catkit/io.hpp>

#include <json.hpp>

#include <fstream>
#include <limits>
#include <sstream>

namespace catkit {

using nlohmann::json;

namespace {

Error invalid(const std::string& what) { return Error(ErrorKind::validation, what); }

json parse(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw invalid(std::string("malformed JSON: ") + e.what());
    }
}

const json& member(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw invalid(std::string("missing field '") + key + "'");
    return j.at(key);
}

std::string text_of(const json& j, const std::string& what) {
    if (!j.is_string()) throw invalid(what + " must be a string");
    return j.get<std::string>();
}

int int_of(const json& j, const std::string& what) {
    if (!j.is_number_integer()) throw invalid(what + " must be an integer");
    return j.get<int>();
}

ObjectId object_named(const FinCat& c, const json& j) {
    auto name = text_of(j, "object name");
    auto x = c.find_object(name);
    if (!x) throw invalid("unknown object '" + name + "'");
    return *x;
}

ArrowId arrow_named(const FinCat& c, const json& j) {
    auto name = text_of(j, "arrow name");
    auto f = c.find_arrow(name);
    if (!f) throw invalid("unknown arrow '" + name + "'");
    return *f;
}

void require(const CheckReport& r, const std::string& what) {
    if (!r) throw invalid(what + ": " + r.violation);
}

FinCat table_category(const json& j) {
    FinCat::Builder b;
    std::map<std::string, ObjectId> objects;
    for (const auto& o : member(j, "objects")) {
        auto name = text_of(o, "object name");
        if (objects.count(name)) throw invalid("duplicate object '" + name + "'");
        objects[name] = b.add_object(name);
    }
    auto obj = [&](const json& n) {
        auto name = text_of(n, "object name");
        auto it = objects.find(name);
        if (it == objects.end()) throw invalid("unknown object '" + name + "'");
        return it->second;
    };
    std::map<std::string, ArrowId> arrows;
    if (j.contains("arrows"))
        for (const auto& a : j.at("arrows")) {
            auto name = text_of(member(a, "name"), "arrow name");
            if (arrows.count(name)) throw invalid("duplicate arrow '" + name + "'");
            arrows[name] = b.add_arrow(name, obj(member(a, "src")), obj(member(a, "dst")));
        }
    auto arr = [&](const json& n) {
        auto name = text_of(n, "arrow name");
        auto it = arrows.find(name);
        if (it == arrows.end()) throw invalid("unknown arrow '" + name + "'");
        return it->second;
    };
    const json none = json::object();
    const json& ids = j.contains("identities") ? j.at("identities") : none;
    for (const auto& [name, x] : objects) {
        if (ids.contains(name)) {
            ArrowId f = arr(ids.at(name));
            if (b.src(f) != x || b.dst(f) != x) throw invalid("identity of '" + name + "' is not a loop on it");
            b.set_identity(x, f);
        } else if (auto it = arrows.find("id_" + name); it != arrows.end() && b.src(it->second) == x &&
                                                           b.dst(it->second) == x) {
            b.set_identity(x, it->second);
        } else {
            arrows["id_" + name] = b.add_identity(x);
        }
    }
    if (j.contains("compose"))
        for (const auto& e : j.at("compose")) {
            if (!e.is_array() || e.size() != 3) throw invalid("compose entries are [g, f, gf]");
            ArrowId g = arr(e[0]), f = arr(e[1]), gf = arr(e[2]);
            if (b.dst(f) != b.src(g) || b.src(gf) != b.src(f) || b.dst(gf) != b.dst(g))
                throw invalid("compose entry " + e.dump() + " has mismatched endpoints");
            b.set_composite(g, f, gf);
        }
    FinCat c = b.build();
    require(validate(c), "invalid category");
    return c;
}

FinCat generator_category(const json& j, const Limits& limits) {
    std::vector<std::string> objects;
    std::map<std::string, ObjectId> index;
    for (const auto& o : member(j, "objects")) {
        objects.push_back(text_of(o, "object name"));
        index[objects.back()] = static_cast<ObjectId>(objects.size() - 1);
    }
    auto obj = [&](const json& n) {
        auto it = index.find(text_of(n, "object name"));
        if (it == index.end()) throw invalid("unknown object '" + n.dump() + "'");
        return it->second;
    };
    std::vector<Generator> gens;
    std::map<std::string, std::size_t> gen_index;
    for (const auto& g : member(j, "generators")) {
        gens.push_back({text_of(member(g, "name"), "generator name"), obj(member(g, "src")), obj(member(g, "dst"))});
        gen_index[gens.back().name] = gens.size() - 1;
    }
    auto word = [&](const json& w) {
        std::vector<std::size_t> out;
        for (const auto& g : w) {
            auto it = gen_index.find(text_of(g, "generator name"));
            if (it == gen_index.end()) throw invalid("unknown generator " + g.dump());
            out.push_back(it->second);
        }
        return out;
    };
    std::vector<Rewrite> rules;
    if (j.contains("relations"))
        for (const auto& r : j.at("relations")) rules.push_back({word(member(r, "lhs")), word(member(r, "rhs"))});
    FinCat c = close_generators(objects, gens, rules, limits);
    require(validate(c), "invalid category");
    return c;
}

FinCat category_from(const json& j, const Limits& limits) {
    return j.contains("generators") ? generator_category(j, limits) : table_category(j);
}

FinFunctor functor_from(const json& j, const CatPtr& dom, const CatPtr& cod) {
    std::vector<ObjectId> objs(dom->num_objects());
    std::vector<ArrowId> arrs(dom->num_arrows(), no_arrow);
    const json& om = member(j, "objects");
    for (ObjectId x = 0; x < dom->num_objects(); ++x) {
        const auto& name = dom->object_name(x);
        if (!om.contains(name)) throw invalid("functor misses object '" + name + "'");
        objs[x] = object_named(*cod, om.at(name));
    }
    const json none = json::object();
    const json& am = j.contains("arrows") ? j.at("arrows") : none;
    for (auto it = am.begin(); it != am.end(); ++it) {
        auto f = dom->find_arrow(it.key());
        if (!f) throw invalid("unknown arrow '" + it.key() + "'");
        arrs[*f] = arrow_named(*cod, it.value());
    }
    for (ArrowId f = 0; f < dom->num_arrows(); ++f) {
        if (arrs[f] != no_arrow) continue;
        if (!dom->is_identity(f)) throw invalid("functor misses arrow '" + dom->arrow_name(f) + "'");
        arrs[f] = cod->identity(objs[dom->src(f)]);
    }
    FinFunctor out(dom, cod, std::move(objs), std::move(arrs));
    require(validate(out), "invalid functor");
    return out;
}

json functor_table(const FinFunctor& f) {
    json objects = json::object(), arrows = json::object();
    const FinCat& d = *f.dom();
    const FinCat& c = *f.cod();
    for (ObjectId x = 0; x < d.num_objects(); ++x) objects[d.object_name(x)] = c.object_name(f.obj(x));
    for (ArrowId a = 0; a < d.num_arrows(); ++a)
        if (!d.is_identity(a)) arrows[d.arrow_name(a)] = c.arrow_name(f.arr(a));
    return {{"objects", objects}, {"arrows", arrows}};
}

json category_json(const FinCat& c) {
    json objects = json::array(), arrows = json::array(), compose = json::array(), ids = json::object();
    for (ObjectId x = 0; x < c.num_objects(); ++x) {
        objects.push_back(c.object_name(x));
        ids[c.object_name(x)] = c.arrow_name(c.identity(x));
    }
    for (ArrowId f = 0; f < c.num_arrows(); ++f)
        arrows.push_back({{"name", c.arrow_name(f)}, {"src", c.object_name(c.src(f))}, {"dst", c.object_name(c.dst(f))}});
    for (ArrowId f = 0; f < c.num_arrows(); ++f) {
        if (c.is_identity(f)) continue;
        for (ArrowId g : c.out_arrows(c.dst(f)))
            if (!c.is_identity(g))
                compose.push_back({c.arrow_name(g), c.arrow_name(f), c.arrow_name(c.compose(g, f))});
    }
    return {{"objects", objects}, {"arrows", arrows}, {"identities", ids}, {"compose", compose}};
}

json integer_json(const Integer& v) {
    if (v >= 0 && v <= Integer(std::numeric_limits<std::uint64_t>::max())) return v.convert_to<std::uint64_t>();
    return v.str();
}

json homology_json(const HomologyResult& h) {
    json torsion = json::array();
    for (const auto& t : h.torsion) {
        json row = json::array();
        for (const auto& v : t) row.push_back(integer_json(v));
        torsion.push_back(row);
    }
    return {{"betti", h.betti}, {"torsion", torsion}, {"valid_to", h.valid_to}};
}

json contractibility_json(const ContractibilityVerdict& v) {
    json out = {{"kind", to_string(v.kind)}, {"depth", v.depth}, {"witness", v.witness}};
    if (v.homology) out["homology"] = homology_json(*v.homology);
    return out;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

struct WorkspaceAccess {
    static CatPtr ref(Workspace& w, const json& j, const std::filesystem::path& base) {
        if (j.is_string()) return w.load_category(base / j.get<std::string>());
        if (j.is_object()) return share(category_from(j, w.limits_));
        throw invalid("a category reference is a path or an inline category");
    }
};

std::string read_file(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw invalid("cannot read '" + file.string() + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

CatPtr Workspace::load_category(const std::filesystem::path& file) {
    auto key = std::filesystem::weakly_canonical(file);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    CatPtr c = read_category(read_file(file), file.parent_path());
    cache_.emplace(key, c);
    return c;
}

CatPtr Workspace::read_category(const std::string& text, const std::filesystem::path&) {
    return share(category_from(parse(text), limits_));
}

FinFunctor Workspace::load_functor(const std::filesystem::path& file) {
    return read_functor(read_file(file), file.parent_path());
}

FinFunctor Workspace::read_functor(const std::string& text, const std::filesystem::path& base) {
    json j = parse(text);
    CatPtr dom = WorkspaceAccess::ref(*this, member(j, "dom"), base);
    CatPtr cod = WorkspaceAccess::ref(*this, member(j, "cod"), base);
    return functor_from(j, dom, cod);
}

WeqPreset parse_weq_preset(const std::string& name) {
    if (name == "iso" || name == "isos") return WeqPreset::isos;
    if (name == "all") return WeqPreset::all;
    if (name == "identities" || name == "id") return WeqPreset::identities;
    throw Error(ErrorKind::usage, "unknown weq preset '" + name + "' (iso, all, identities)");
}

MarkedIndexedCat Workspace::load_indexed(const std::filesystem::path& file) {
    return read_indexed(read_file(file), file.parent_path());
}

MarkedIndexedCat Workspace::read_indexed(const std::string& text, const std::filesystem::path& base) {
    json j = parse(text);
    IndexedCat e;
    e.base = WorkspaceAccess::ref(*this, member(j, "base"), base);
    const FinCat& b = *e.base;
    const json& fibres = member(j, "fibres");
    for (ObjectId c = 0; c < b.num_objects(); ++c) {
        if (!fibres.contains(b.object_name(c))) throw invalid("missing fibre over '" + b.object_name(c) + "'");
        e.fibres.push_back(WorkspaceAccess::ref(*this, fibres.at(b.object_name(c)), base));
    }
    std::vector<std::optional<FinFunctor>> push(b.num_arrows());
    const json none = json::object();
    const json& tr = j.contains("transitions") ? j.at("transitions") : none;
    for (auto it = tr.begin(); it != tr.end(); ++it) {
        auto f = b.find_arrow(it.key());
        if (!f) throw invalid("unknown base arrow '" + it.key() + "'");
        push[*f] = functor_from(it.value(), e.fibres[b.src(*f)], e.fibres[b.dst(*f)]);
    }
    for (ObjectId c = 0; c < b.num_objects(); ++c)
        if (!push[b.identity(c)]) push[b.identity(c)] = identity_functor(e.fibres[c]);
    for (bool grew = true; grew;) {
        grew = false;
        for (ArrowId f = 0; f < b.num_arrows(); ++f) {
            if (!push[f]) continue;
            for (ArrowId g : b.out_arrows(b.dst(f))) {
                ArrowId gf = b.compose(g, f);
                if (push[g] && !push[gf]) {
                    push[gf] = compose(*push[g], *push[f]);
                    grew = true;
                }
            }
        }
    }
    for (ArrowId f = 0; f < b.num_arrows(); ++f) {
        if (!push[f]) throw invalid("missing transition for '" + b.arrow_name(f) + "'");
        e.transitions.push_back(std::move(*push[f]));
    }
    require(validate(e), "invalid indexed category");

    MarkedIndexedCat m;
    if (!j.contains("weq")) {
        m = mark(e, WeqPreset::isos);
    } else if (j.at("weq").is_string()) {
        m = mark(e, parse_weq_preset(j.at("weq").get<std::string>()));
    } else {
        m = mark(e, WeqPreset::identities);
        const json& w = j.at("weq");
        for (auto it = w.begin(); it != w.end(); ++it) {
            auto c = b.find_object(it.key());
            if (!c) throw invalid("unknown base object '" + it.key() + "'");
            for (const auto& a : it.value()) m.weq[*c].insert(arrow_named(*e.fibres[*c], a));
        }
    }
    require(check_marked(m), "invalid weak equivalences");
    return m;
}

TruncatedSSet Workspace::load_sset(const std::filesystem::path& file) { return read_sset(read_file(file)); }

TruncatedSSet Workspace::read_sset(const std::string& text) {
    json j = parse(text);
    int level = int_of(member(j, "N"), "N");
    if (level < 0) throw invalid("N must be nonnegative");
    const json& simplices = member(j, "simplices");
    if (!simplices.is_array() || static_cast<int>(simplices.size()) != level + 1)
        throw invalid("simplices must list levels 0..N");
    TruncatedSSet::Builder b(level);
    std::vector<std::map<std::string, std::size_t>> names(static_cast<std::size_t>(level + 1));
    for (int n = 0; n <= level; ++n)
        for (const auto& s : simplices[static_cast<std::size_t>(n)]) {
            auto name = text_of(s, "simplex name");
            if (names[static_cast<std::size_t>(n)].count(name)) throw invalid("duplicate simplex '" + name + "'");
            names[static_cast<std::size_t>(n)][name] = b.add_simplex(n, name);
        }
    limits_.check(b.size(0), "simplices");
    const json& action = member(j, "action");
    std::vector<std::pair<SimplexMap, std::vector<std::size_t>>> listed;
    for (auto it = action.begin(); it != action.end(); ++it) {
        SimplexMap f = parse_simplex_map(it.key());
        if (f.n > level || f.m > level) throw invalid("map " + it.key() + " exceeds the truncation");
        const json& values = it.value();
        if (!values.is_array() || values.size() != b.size(f.n))
            throw invalid("action of " + it.key() + " must list one simplex per simplex of level " + std::to_string(f.n));
        std::vector<std::size_t> image;
        for (const auto& v : values) {
            if (v.is_number_unsigned()) {
                image.push_back(v.get<std::size_t>());
                if (image.back() >= b.size(f.m)) throw invalid("simplex index out of range in " + it.key());
                continue;
            }
            auto& level_names = names[static_cast<std::size_t>(f.m)];
            auto found = level_names.find(text_of(v, "simplex name"));
            if (found == level_names.end()) throw invalid("unknown simplex " + v.dump() + " in " + it.key());
            image.push_back(found->second);
        }
        listed.emplace_back(f, std::move(image));
    }
    for (const auto& [f, image] : listed) {
        bool face = f.m + 1 == f.n && f.is_injective();
        bool degeneracy = f.m == f.n + 1 && f.is_surjective();
        for (std::size_t x = 0; x < image.size(); ++x) {
            if (face) {
                int i = 0;
                while (i <= f.m && f(i) == i) ++i;
                b.set_face(f.n, i, x, image[x]);
            } else if (degeneracy) {
                int i = 0;
                while (f(i) != f(i + 1)) ++i;
                b.set_degeneracy(f.n, i, x, image[x]);
            }
        }
    }
    TruncatedSSet x = b.build();
    require(x.validate(), "invalid simplicial set");
    for (const auto& [f, image] : listed)
        for (std::size_t s = 0; s < image.size(); ++s)
            if (x.act(f, s) != image[s])
                throw invalid("action of " + f.str() + " on " + x.name(f.n, s) + " disagrees with its faces and degeneracies");
    return x;
}

Section read_section(const IndexedCat& e, const std::string& text) {
    json j = parse(text);
    const FinCat& b = *e.base;
    Section s;
    const json& values = member(j, "values");
    for (ObjectId c = 0; c < b.num_objects(); ++c) {
        if (!values.contains(b.object_name(c))) throw invalid("section misses a value over '" + b.object_name(c) + "'");
        s.values.push_back(object_named(e.fibre(c), values.at(b.object_name(c))));
    }
    const json none = json::object();
    const json& structure = j.contains("structure") ? j.at("structure") : none;
    s.structure.assign(b.num_arrows(), no_arrow);
    for (auto it = structure.begin(); it != structure.end(); ++it) {
        auto f = b.find_arrow(it.key());
        if (!f) throw invalid("unknown base arrow '" + it.key() + "'");
        s.structure[*f] = arrow_named(e.fibre(b.dst(*f)), it.value());
    }
    for (ArrowId f = 0; f < b.num_arrows(); ++f) {
        if (s.structure[f] != no_arrow) continue;
        if (!b.is_identity(f)) throw invalid("section misses the structure map of '" + b.arrow_name(f) + "'");
        s.structure[f] = e.fibre(b.src(f)).identity(s.values[b.src(f)]);
    }
    require(validate(e, s), "invalid section");
    return s;
}

std::string write_section(const IndexedCat& e, const Section& s) {
    const FinCat& b = *e.base;
    json values = json::object(), structure = json::object();
    for (ObjectId c = 0; c < b.num_objects(); ++c) values[b.object_name(c)] = e.fibre(c).object_name(s.values[c]);
    for (ArrowId f = 0; f < b.num_arrows(); ++f)
        if (!b.is_identity(f)) structure[b.arrow_name(f)] = e.fibre(b.dst(f)).arrow_name(s.structure[f]);
    return dump({{"values", values}, {"structure", structure}});
}

namespace {

StringSection string_section_from(const IndexedCat& e, const SimplexString& str, const json& j) {
    StringSection a;
    const json& objects = member(j, "objects");
    if (!objects.is_array() || static_cast<int>(objects.size()) != str.dim() + 1)
        throw invalid("a string section lists one object per vertex");
    for (int i = 0; i <= str.dim(); ++i)
        a.objects.push_back(object_named(e.fibre(str.objects[static_cast<std::size_t>(i)]), objects[static_cast<std::size_t>(i)]));
    const json& comparisons = member(j, "comparisons");
    if (!comparisons.is_array() || static_cast<int>(comparisons.size()) != str.dim())
        throw invalid("a string section lists one comparison per arrow");
    for (int i = 1; i <= str.dim(); ++i)
        a.comparisons.push_back(arrow_named(e.fibre(str.objects[static_cast<std::size_t>(i)]), comparisons[static_cast<std::size_t>(i - 1)]));
    require(validate(e, str, a), "invalid string section");
    return a;
}

json string_section_json(const IndexedCat& e, const SimplexString& s, const StringSection& a) {
    json objects = json::array(), comparisons = json::array(), arrows = json::array();
    for (std::size_t i = 0; i < a.objects.size(); ++i) objects.push_back(e.fibre(s.objects[i]).object_name(a.objects[i]));
    for (std::size_t i = 0; i < a.comparisons.size(); ++i)
        comparisons.push_back(e.fibre(s.objects[i + 1]).arrow_name(a.comparisons[i]));
    for (ArrowId f : s.arrows) arrows.push_back(e.base->arrow_name(f));
    if (s.arrows.empty()) arrows.push_back(e.base->arrow_name(e.base->identity(s.objects.front())));
    return {{"string", arrows}, {"objects", objects}, {"comparisons", comparisons}};
}

}  // namespace

Section read_presection(const SimplicialExtension& x, const std::string& text) {
    json j = parse(text);
    const Replacement& r = *x.replacement;
    const FinCat& c = *r.cat();
    Section s;
    const json& values = member(j, "values");
    for (ObjectId o = 0; o < c.num_objects(); ++o) {
        if (!values.contains(c.object_name(o))) throw invalid("presection misses a value over '" + c.object_name(o) + "'");
        StringSection a = string_section_from(x.base, r.string(o), values.at(c.object_name(o)));
        auto found = x.fibre(o).find(a);
        if (!found) throw invalid("value over '" + c.object_name(o) + "' is not a string section");
        s.values.push_back(*found);
    }
    const json none = json::object();
    const json& structure = j.contains("structure") ? j.at("structure") : none;
    s.structure.assign(c.num_arrows(), no_arrow);
    for (auto it = structure.begin(); it != structure.end(); ++it) {
        auto alpha = c.find_arrow(it.key());
        if (!alpha) throw invalid("unknown replacement map '" + it.key() + "'");
        ObjectId dst = c.dst(*alpha);
        const SimplexString& str = r.string(dst);
        const json& comps = it.value();
        if (!comps.is_array() || static_cast<int>(comps.size()) != str.dim() + 1)
            throw invalid("structure of '" + it.key() + "' lists one component per vertex");
        std::vector<ArrowId> arrows;
        for (int i = 0; i <= str.dim(); ++i)
            arrows.push_back(arrow_named(x.base.fibre(str.objects[static_cast<std::size_t>(i)]), comps[static_cast<std::size_t>(i)]));
        ObjectId from = x.transition(*alpha).obj(s.values[c.src(*alpha)]);
        auto found = x.fibre(dst).find_arrow(from, s.values[dst], arrows);
        if (!found) throw invalid("structure of '" + it.key() + "' is not a map of string sections");
        s.structure[*alpha] = *found;
    }
    for (ArrowId a = 0; a < c.num_arrows(); ++a) {
        if (s.structure[a] != no_arrow) continue;
        if (!c.is_identity(a)) throw invalid("presection misses the structure of '" + c.arrow_name(a) + "'");
        s.structure[a] = x.fibre(c.src(a)).cat->identity(s.values[c.src(a)]);
    }
    require(validate(x.indexed(), s), "invalid presection");
    return s;
}

std::string write_presection(const SimplicialExtension& x, const Section& s) {
    const Replacement& r = *x.replacement;
    const FinCat& c = *r.cat();
    json values = json::object(), structure = json::object();
    for (ObjectId o = 0; o < c.num_objects(); ++o) {
        json v = string_section_json(x.base, r.string(o), x.fibre(o).sections[s.values[o]]);
        values[c.object_name(o)] = {{"objects", v["objects"]}, {"comparisons", v["comparisons"]}};
    }
    for (ArrowId a = 0; a < c.num_arrows(); ++a) {
        if (c.is_identity(a)) continue;
        ObjectId dst = c.dst(a);
        const SimplexString& str = r.string(dst);
        json comps = json::array();
        const auto& cs = x.fibre(dst).components[s.structure[a]];
        for (std::size_t i = 0; i < cs.size(); ++i) comps.push_back(x.base.fibre(str.objects[i]).arrow_name(cs[i]));
        structure[c.arrow_name(a)] = comps;
    }
    return dump({{"values", values}, {"structure", structure}});
}

MapSubset read_map_subset(const CatPtr& c, const std::string& text) {
    json j = parse(text);
    MapSubset s(c);
    for (const auto& a : member(j, "arrows")) s.insert(arrow_named(*c, a));
    return s;
}

std::string write_category(const FinCat& c) { return dump(category_json(c)); }

std::string write_functor(const FinFunctor& f) {
    json j = functor_table(f);
    j["dom"] = category_json(*f.dom());
    j["cod"] = category_json(*f.cod());
    return dump(j);
}

std::string write_sset(const TruncatedSSet& x) {
    json simplices = json::array(), action = json::object();
    for (int n = 0; n <= x.level(); ++n) {
        json names = json::array();
        for (std::size_t s = 0; s < x.size(n); ++s) names.push_back(x.name(n, s));
        simplices.push_back(names);
    }
    auto put = [&](const SimplexMap& f) {
        json image = json::array();
        for (std::size_t s = 0; s < x.size(f.n); ++s) image.push_back(x.name(f.m, x.act(f, s)));
        action[f.str()] = image;
    };
    for (int n = 1; n <= x.level(); ++n)
        for (int i = 0; i <= n; ++i) put(coface(n, i));
    for (int n = 0; n < x.level(); ++n)
        for (int i = 0; i <= n; ++i) put(codegeneracy(n, i));
    return dump({{"N", x.level()}, {"simplices", simplices}, {"action", action}});
}

std::string write_indexed(const MarkedIndexedCat& m) {
    const IndexedCat& e = m.cat;
    const FinCat& b = *e.base;
    json fibres = json::object(), transitions = json::object(), weq = json::object();
    for (ObjectId c = 0; c < b.num_objects(); ++c) {
        fibres[b.object_name(c)] = category_json(e.fibre(c));
        json w = json::array();
        for (ArrowId a = 0; a < e.fibre(c).num_arrows(); ++a)
            if (m.weq[c].contains(a)) w.push_back(e.fibre(c).arrow_name(a));
        weq[b.object_name(c)] = w;
    }
    for (ArrowId f = 0; f < b.num_arrows(); ++f)
        if (!b.is_identity(f)) transitions[b.arrow_name(f)] = functor_table(e.push(f));
    return dump({{"base", category_json(b)}, {"fibres", fibres}, {"transitions", transitions}, {"weq", weq}});
}

std::string write_string_section(const IndexedCat& e, const SimplexString& s, const StringSection& a) {
    return dump(string_section_json(e, s, a));
}

std::string write_homology(const HomologyResult& h) { return dump(homology_json(h)); }

std::string write_contractibility(const ContractibilityVerdict& v) { return dump(contractibility_json(v)); }

std::string write_report(const DiagnosticReport& r) {
    json fibres = json::array();
    for (const auto& f : r.per_fibre) {
        json evidence = contractibility_json(f.verdict);
        evidence["objects"] = f.objects;
        evidence["arrows"] = f.arrows;
        fibres.push_back({{"string", f.name}, {"verdict", to_string(f.verdict.kind)}, {"evidence", evidence}});
    }
    json witness = nullptr;
    if (const auto* w = r.witness()) witness = w->name;
    return dump({{"verdict", to_string(r.verdict)}, {"per_fibre", fibres}, {"skipped", r.skipped}, {"witness", witness}});
}

}  // namespace catkit
