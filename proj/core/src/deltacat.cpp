#include <catkit/deltacat.hpp>

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

namespace catkit {

bool SimplexMap::is_identity() const {
    if (m != n) return false;
    for (int i = 0; i <= m; ++i)
        if (values[static_cast<std::size_t>(i)] != i) return false;
    return true;
}

bool SimplexMap::is_injective() const {
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] == values[i - 1]) return false;
    return true;
}

bool SimplexMap::is_surjective() const {
    if (values.front() != 0 || values.back() != n) return false;
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] > values[i - 1] + 1) return false;
    return true;
}

std::string SimplexMap::str() const {
    std::string s = std::to_string(m) + "->" + std::to_string(n) + ":";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(values[i]);
    }
    return s;
}

SimplexMap make_simplex_map(int m, int n, std::vector<int> values) {
    if (m < 0 || n < 0 || values.size() != static_cast<std::size_t>(m + 1))
        throw Error(ErrorKind::validation, "simplex map needs exactly m+1 values");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] < 0 || values[i] > n) throw Error(ErrorKind::validation, "simplex map value out of range");
        if (i && values[i] < values[i - 1]) throw Error(ErrorKind::validation, "simplex map is not monotone");
    }
    return SimplexMap{m, n, std::move(values)};
}

SimplexMap parse_simplex_map(std::string_view text) {
    auto bad = [&] { return Error(ErrorKind::validation, "cannot parse simplex map '" + std::string(text) + "'"); };
    auto arrow = text.find("->");
    auto colon = text.find(':');
    if (arrow == std::string_view::npos || colon == std::string_view::npos || colon < arrow) throw bad();
    auto number = [&](std::string_view part) {
        int v = 0;
        auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
        if (ec != std::errc{} || ptr != part.data() + part.size()) throw bad();
        return v;
    };
    int m = number(text.substr(0, arrow));
    int n = number(text.substr(arrow + 2, colon - arrow - 2));
    std::vector<int> values;
    std::string_view rest = text.substr(colon + 1);
    while (!rest.empty()) {
        auto comma = rest.find(',');
        values.push_back(number(rest.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
    }
    return make_simplex_map(m, n, std::move(values));
}

SimplexMap identity_map(int n) {
    std::vector<int> v(static_cast<std::size_t>(n + 1));
    std::iota(v.begin(), v.end(), 0);
    return {n, n, std::move(v)};
}

SimplexMap compose(const SimplexMap& g, const SimplexMap& f) {
    if (f.n != g.m) throw Error(ErrorKind::precondition, "simplex maps are not composable");
    std::vector<int> v(f.values.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = g(f.values[i]);
    return {f.m, g.n, std::move(v)};
}

SimplexMap coface(int n, int i) {
    std::vector<int> v;
    for (int j = 0; j <= n; ++j)
        if (j != i) v.push_back(j);
    return {n - 1, n, std::move(v)};
}

SimplexMap codegeneracy(int n, int i) {
    std::vector<int> v;
    for (int j = 0; j <= n + 1; ++j) v.push_back(j <= i ? j : j - 1);
    return {n + 1, n, std::move(v)};
}

SimplexMap interval_inclusion(int m, int n, int offset) {
    std::vector<int> v(static_cast<std::size_t>(m + 1));
    std::iota(v.begin(), v.end(), offset);
    return make_simplex_map(m, n, std::move(v));
}

std::vector<SimplexMap> all_maps(int m, int n) {
    std::vector<SimplexMap> out;
    std::vector<int> v(static_cast<std::size_t>(m + 1), 0);
    while (true) {
        out.push_back({m, n, v});
        int i = m;
        while (i >= 0 && v[static_cast<std::size_t>(i)] == n) --i;
        if (i < 0) break;
        int next = v[static_cast<std::size_t>(i)] + 1;
        for (int j = i; j <= m; ++j) v[static_cast<std::size_t>(j)] = next;
    }
    return out;
}

ReedyFactorization factor_reedy(const SimplexMap& f) {
    std::vector<int> image(f.values);
    image.erase(std::unique(image.begin(), image.end()), image.end());
    int k = static_cast<int>(image.size()) - 1;
    std::vector<int> s(f.values.size());
    for (std::size_t i = 0, j = 0; i < f.values.size(); ++i) {
        while (image[j] != f.values[i]) ++j;
        s[i] = static_cast<int>(j);
    }
    return {SimplexMap{f.m, k, std::move(s)}, SimplexMap{k, f.n, std::move(image)}};
}

InitialFactorization factor_initial(const SimplexMap& f) {
    int k = f.values.back();
    return {SimplexMap{f.m, k, f.values}, interval_inclusion(k, f.n, 0), f.values.front() == 0};
}

unsigned classify(const SimplexMap& d) {
    unsigned out = 0;
    if (d.m <= d.n) {
        bool left = true, right = true;
        for (int i = 0; i <= d.m; ++i) {
            left = left && d(i) == i;
            right = right && d(i) == d.n - d.m + i;
        }
        if (left) out |= label_segal;
        if (right) out |= label_anti_segal;
    }
    if (d.values.back() == d.n) out |= label_anchor;
    if (d.values.front() == 0 && d.values.back() == d.n) out |= label_convex;
    if (d.is_surjective()) out |= label_degeneracy;
    if (d.is_injective()) out |= label_face;
    return out;
}

std::vector<std::string> label_names(unsigned labels) {
    static const std::pair<MapLabel, const char*> table[] = {
        {label_segal, "segal"},   {label_anti_segal, "anti_segal"}, {label_anchor, "anchor"},
        {label_convex, "convex"}, {label_degeneracy, "degeneracy"}, {label_face, "face"},
    };
    std::vector<std::string> out;
    for (auto [bit, name] : table)
        if (labels & bit) out.emplace_back(name);
    return out;
}

namespace {

std::uint64_t pack(const std::vector<int>& v) {
    std::uint64_t key = 0;
    for (int x : v) key = (key << 4) | static_cast<std::uint64_t>(x);
    return key;
}

}  // namespace

SimplexMapIndex::SimplexMapIndex(int level) : level_(level) {
    if (level < 0 || level > 14) throw Error(ErrorKind::precondition, "simplex map index supports levels 0..14");
    maps_.resize(static_cast<std::size_t>((level + 1) * (level + 1)));
    ranks_.resize(maps_.size());
    for (int m = 0; m <= level; ++m)
        for (int n = 0; n <= level; ++n) {
            auto& slot_maps = maps_[slot(m, n)];
            slot_maps = all_maps(m, n);
            for (std::size_t r = 0; r < slot_maps.size(); ++r) ranks_[slot(m, n)].emplace(pack(slot_maps[r].values), r);
        }
}

std::size_t SimplexMapIndex::rank(const SimplexMap& f) const {
    if (f.m > level_ || f.n > level_) throw Error(ErrorKind::precondition, "simplex map exceeds the indexed level");
    return ranks_[slot(f.m, f.n)].at(pack(f.values));
}

ArrowId SimplexCategory::arrow_of(const SimplexMap& f) const {
    return static_cast<ArrowId>(offset[static_cast<std::size_t>(f.m * (index->level() + 1) + f.n)] + index->rank(f));
}

SimplexCategory simplex_category(int level) {
    SimplexCategory sc;
    sc.index = std::make_shared<const SimplexMapIndex>(level);
    FinCat::Builder b;
    for (int i = 0; i <= level; ++i) b.add_object("[" + std::to_string(i) + "]");
    for (int m = 0; m <= level; ++m)
        for (int n = 0; n <= level; ++n) {
            sc.offset.push_back(sc.maps.size());
            for (const auto& f : sc.index->maps(m, n)) {
                ArrowId a = b.add_arrow(f.str(), static_cast<ObjectId>(m), static_cast<ObjectId>(n));
                if (f.is_identity()) b.set_identity(static_cast<ObjectId>(m), a);
                sc.maps.push_back(f);
            }
        }
    sc.cat = share(b.build([&](ArrowId g, ArrowId f) { return sc.arrow_of(compose(sc.maps[g], sc.maps[f])); }));
    return sc;
}

std::size_t TruncatedSSet::act(const SimplexMap& f, std::size_t x) const {
    if (f.n > level_ || f.m > level_) throw Error(ErrorKind::precondition, "simplex map exceeds the truncation level");
    std::vector<int> v = f.values;
    std::vector<int> degeneracies;
    for (bool again = true; again;) {
        again = false;
        for (std::size_t j = 0; j + 1 < v.size(); ++j)
            if (v[j] == v[j + 1]) {
                degeneracies.push_back(static_cast<int>(j));
                v.erase(v.begin() + static_cast<std::ptrdiff_t>(j) + 1);
                again = true;
                break;
            }
    }
    int n = f.n;
    int k = static_cast<int>(v.size()) - 1;
    while (n > k) {
        int missing = n;
        for (int j = static_cast<int>(v.size()) - 1; j >= 0 && v[static_cast<std::size_t>(j)] == missing; --j) --missing;
        x = face(n, missing, x);
        for (auto& value : v)
            if (value > missing) --value;
        --n;
    }
    int dim = k;
    for (auto it = degeneracies.rbegin(); it != degeneracies.rend(); ++it) x = degeneracy(dim++, *it, x);
    return x;
}

std::optional<std::size_t> TruncatedSSet::find(int n, std::string_view name) const {
    const auto& names = names_[static_cast<std::size_t>(n)];
    for (std::size_t x = 0; x < names.size(); ++x)
        if (names[x] == name) return x;
    return std::nullopt;
}

CheckReport TruncatedSSet::validate() const {
    auto where = [](const char* what, int n, int i, std::size_t x) {
        return std::string(what) + " at level " + std::to_string(n) + ", index " + std::to_string(i) + ", simplex " +
               std::to_string(x);
    };
    for (int n = 1; n <= level_; ++n)
        for (int i = 0; i <= n; ++i)
            for (std::size_t x = 0; x < size(n); ++x)
                if (face(n, i, x) >= size(n - 1)) return CheckReport::fail(where("face undefined", n, i, x));
    for (int n = 0; n < level_; ++n)
        for (int i = 0; i <= n; ++i)
            for (std::size_t x = 0; x < size(n); ++x)
                if (degeneracy(n, i, x) >= size(n + 1)) return CheckReport::fail(where("degeneracy undefined", n, i, x));
    for (int n = 2; n <= level_; ++n)
        for (int j = 1; j <= n; ++j)
            for (int i = 0; i < j; ++i)
                for (std::size_t x = 0; x < size(n); ++x)
                    if (face(n - 1, i, face(n, j, x)) != face(n - 1, j - 1, face(n, i, x)))
                        return CheckReport::fail(where("d_i d_j = d_{j-1} d_i fails", n, i, x));
    for (int n = 0; n < level_; ++n)
        for (int j = 0; j <= n; ++j)
            for (std::size_t x = 0; x < size(n); ++x) {
                std::size_t y = degeneracy(n, j, x);
                for (int i = 0; i <= n + 1; ++i) {
                    std::size_t lhs = face(n + 1, i, y);
                    if (i == j || i == j + 1) {
                        if (lhs != x) return CheckReport::fail(where("d_j s_j = id fails", n + 1, i, x));
                    } else if (i < j) {
                        if (lhs != degeneracy(n - 1, j - 1, face(n, i, x)))
                            return CheckReport::fail(where("d_i s_j = s_{j-1} d_i fails", n + 1, i, x));
                    } else if (lhs != degeneracy(n - 1, j, face(n, i - 1, x))) {
                        return CheckReport::fail(where("d_i s_j = s_j d_{i-1} fails", n + 1, i, x));
                    }
                }
            }
    for (int n = 0; n + 2 <= level_; ++n)
        for (int j = 0; j <= n; ++j)
            for (int i = 0; i <= j; ++i)
                for (std::size_t x = 0; x < size(n); ++x)
                    if (degeneracy(n + 1, i, degeneracy(n, j, x)) != degeneracy(n + 1, j + 1, degeneracy(n, i, x)))
                        return CheckReport::fail(where("s_i s_j = s_{j+1} s_i fails", n, i, x));
    return CheckReport::pass();
}

CheckReport TruncatedSSet::check_functoriality(int bound) const {
    bound = std::min(bound, level_);
    for (int n = 0; n <= bound; ++n)
        for (int m = 0; m <= bound; ++m)
            for (const auto& g : all_maps(m, n)) {
                for (std::size_t x = 0; x < size(n); ++x) {
                    if (g.is_identity() && act(g, x) != x) return CheckReport::fail("identity acts nontrivially");
                }
                for (int l = 0; l <= bound; ++l)
                    for (const auto& f : all_maps(l, m)) {
                        SimplexMap gf = compose(g, f);
                        for (std::size_t x = 0; x < size(n); ++x)
                            if (act(gf, x) != act(f, act(g, x)))
                                return CheckReport::fail("action of " + gf.str() + " is not the composite of " +
                                                         g.str() + " and " + f.str());
                    }
            }
    return CheckReport::pass();
}

TruncatedSSet::Builder::Builder(int level) : level_(level) {
    if (level < 0) throw Error(ErrorKind::validation, "truncation level must be nonnegative");
    names_.resize(static_cast<std::size_t>(level + 1));
    faces_.resize(static_cast<std::size_t>(level + 1));
    degeneracies_.resize(static_cast<std::size_t>(level + 1));
    for (int n = 0; n <= level; ++n) {
        faces_[static_cast<std::size_t>(n)].resize(n == 0 ? 0 : static_cast<std::size_t>(n + 1));
        degeneracies_[static_cast<std::size_t>(n)].resize(n == level ? 0 : static_cast<std::size_t>(n + 1));
    }
}

std::size_t TruncatedSSet::Builder::add_simplex(int n, std::string name) {
    auto& names = names_[static_cast<std::size_t>(n)];
    names.push_back(std::move(name));
    for (auto& table : faces_[static_cast<std::size_t>(n)]) table.push_back(unset_simplex);
    for (auto& table : degeneracies_[static_cast<std::size_t>(n)]) table.push_back(unset_simplex);
    return names.size() - 1;
}

void TruncatedSSet::Builder::set_face(int n, int i, std::size_t x, std::size_t y) {
    faces_[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)][x] = y;
}

void TruncatedSSet::Builder::set_degeneracy(int n, int i, std::size_t x, std::size_t y) {
    degeneracies_[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)][x] = y;
}

TruncatedSSet TruncatedSSet::Builder::build() {
    TruncatedSSet s;
    s.level_ = level_;
    s.names_ = names_;
    s.faces_.resize(names_.size());
    s.degeneracies_.resize(names_.size());
    s.degenerate_.resize(names_.size());
    for (std::size_t n = 0; n < names_.size(); ++n) {
        for (const auto& t : faces_[n]) s.faces_[n].insert(s.faces_[n].end(), t.begin(), t.end());
        for (const auto& t : degeneracies_[n]) s.degeneracies_[n].insert(s.degeneracies_[n].end(), t.begin(), t.end());
        s.degenerate_[n].assign(names_[n].size(), 0);
    }
    for (std::size_t n = 0; n + 1 < names_.size(); ++n)
        for (const auto& t : degeneracies_[n])
            for (auto y : t)
                if (y < names_[n + 1].size()) s.degenerate_[n + 1][y] = 1;
    return s;
}

CheckReport SimplicialMap::validate() const {
    int level = std::min(src->level(), dst->level());
    if (maps.size() < static_cast<std::size_t>(level + 1)) return CheckReport::fail("simplicial map is missing levels");
    for (int n = 0; n <= level; ++n) {
        const auto& fn = maps[static_cast<std::size_t>(n)];
        if (fn.size() != src->size(n)) return CheckReport::fail("simplicial map does not cover level " + std::to_string(n));
        for (std::size_t x = 0; x < fn.size(); ++x) {
            if (fn[x] >= dst->size(n)) return CheckReport::fail("simplicial map leaves the target");
            if (n > 0)
                for (int i = 0; i <= n; ++i)
                    if (maps[static_cast<std::size_t>(n - 1)][src->face(n, i, x)] != dst->face(n, i, fn[x]))
                        return CheckReport::fail("simplicial map does not commute with d_" + std::to_string(i));
            if (n < level)
                for (int i = 0; i <= n; ++i)
                    if (maps[static_cast<std::size_t>(n + 1)][src->degeneracy(n, i, x)] != dst->degeneracy(n, i, fn[x]))
                        return CheckReport::fail("simplicial map does not commute with s_" + std::to_string(i));
        }
    }
    return CheckReport::pass();
}

TruncatedSSet permute(const TruncatedSSet& x, const std::vector<std::vector<std::size_t>>& perms) {
    TruncatedSSet::Builder b(x.level());
    for (int n = 0; n <= x.level(); ++n) {
        std::vector<std::size_t> inv(x.size(n));
        for (std::size_t s = 0; s < x.size(n); ++s) inv[perms[static_cast<std::size_t>(n)][s]] = s;
        for (std::size_t t = 0; t < x.size(n); ++t) b.add_simplex(n, x.name(n, inv[t]));
    }
    for (int n = 0; n <= x.level(); ++n) {
        const auto& p = perms[static_cast<std::size_t>(n)];
        for (std::size_t s = 0; s < x.size(n); ++s) {
            if (n > 0)
                for (int i = 0; i <= n; ++i) b.set_face(n, i, p[s], perms[static_cast<std::size_t>(n - 1)][x.face(n, i, s)]);
            if (n < x.level())
                for (int i = 0; i <= n; ++i)
                    b.set_degeneracy(n, i, p[s], perms[static_cast<std::size_t>(n + 1)][x.degeneracy(n, i, s)]);
        }
    }
    return b.build();
}

SimplexString restrict_string(const FinCat& c, const SimplexString& s, const SimplexMap& f) {
    SimplexString out;
    for (int i = 0; i <= f.m; ++i) out.objects.push_back(s.objects[static_cast<std::size_t>(f(i))]);
    for (int i = 1; i <= f.m; ++i) {
        int from = f(i - 1), to = f(i);
        if (from == to) {
            out.arrows.push_back(c.identity(s.objects[static_cast<std::size_t>(from)]));
        } else {
            std::span<const ArrowId> path(s.arrows.data() + from, static_cast<std::size_t>(to - from));
            out.arrows.push_back(compose_path(c, path));
        }
    }
    return out;
}

std::string string_name(const FinCat& c, const SimplexString& s) {
    if (s.arrows.empty()) return c.object_name(s.objects.front());
    std::string name;
    for (std::size_t i = 0; i < s.arrows.size(); ++i) {
        if (i) name += "|";
        name += c.arrow_name(s.arrows[i]);
    }
    return name;
}

namespace {

std::string string_key(const SimplexString& s) {
    std::string key;
    key.reserve(4 * (s.arrows.size() + 2));
    auto put = [&](std::uint32_t v) { key.append(reinterpret_cast<const char*>(&v), sizeof v); };
    put(static_cast<std::uint32_t>(s.arrows.size()));
    put(s.objects.front());
    for (auto a : s.arrows) put(a);
    return key;
}

}  // namespace

std::size_t Nerve::index_of(const SimplexString& s) const { return lookup.at(string_key(s)); }

Nerve nerve(const CatPtr& cp, int level, const Limits& limits) {
    const FinCat& c = *cp;
    Nerve nv;
    nv.base = cp;
    nv.strings.resize(static_cast<std::size_t>(level + 1));
    std::size_t total = 0;
    for (ObjectId x = 0; x < c.num_objects(); ++x) nv.strings[0].push_back({{x}, {}});
    for (int n = 1; n <= level; ++n)
        for (const auto& s : nv.strings[static_cast<std::size_t>(n - 1)])
            for (ArrowId f : c.out_arrows(s.objects.back())) {
                SimplexString t = s;
                t.objects.push_back(c.dst(f));
                t.arrows.push_back(f);
                nv.strings[static_cast<std::size_t>(n)].push_back(std::move(t));
                limits.check(++total, "nerve simplices");
            }
    TruncatedSSet::Builder b(level);
    for (int n = 0; n <= level; ++n) {
        const auto& level_strings = nv.strings[static_cast<std::size_t>(n)];
        for (std::size_t i = 0; i < level_strings.size(); ++i) {
            nv.lookup.emplace(string_key(level_strings[i]), i);
            b.add_simplex(n, string_name(c, level_strings[i]));
        }
    }
    for (int n = 0; n <= level; ++n) {
        const auto& level_strings = nv.strings[static_cast<std::size_t>(n)];
        for (std::size_t x = 0; x < level_strings.size(); ++x) {
            if (n > 0)
                for (int i = 0; i <= n; ++i)
                    b.set_face(n, i, x, nv.index_of(restrict_string(c, level_strings[x], coface(n, i))));
            if (n < level)
                for (int i = 0; i <= n; ++i)
                    b.set_degeneracy(n, i, x, nv.index_of(restrict_string(c, level_strings[x], codegeneracy(n, i))));
        }
    }
    nv.sset = std::make_shared<const TruncatedSSet>(b.build());
    return nv;
}

SimplicialMap nerve_map(const Nerve& src, const Nerve& dst, const FinFunctor& f) {
    SimplicialMap out{src.sset, dst.sset, {}};
    int level = std::min(src.sset->level(), dst.sset->level());
    for (int n = 0; n <= level; ++n) {
        std::vector<std::size_t> images;
        for (const auto& s : src.strings[static_cast<std::size_t>(n)]) {
            SimplexString t;
            for (auto x : s.objects) t.objects.push_back(f.obj(x));
            for (auto a : s.arrows) t.arrows.push_back(f.arr(a));
            images.push_back(dst.index_of(t));
        }
        out.maps.push_back(std::move(images));
    }
    return out;
}

ArrowId ElementsCategory::arrow_of(ObjectId src, const SimplexMap& f) const {
    int level = sset->level();
    return static_cast<ArrowId>(arrow_base[src] + map_offset[static_cast<std::size_t>(f.n * (level + 1) + f.m)] +
                                index->rank(f));
}

ElementsCategory elements(const SSetPtr& x, const Limits& limits) {
    ElementsCategory e;
    e.sset = x;
    const int level = x->level();
    e.index = std::make_shared<const SimplexMapIndex>(level);
    FinCat::Builder b;
    for (int n = 0; n <= level; ++n) {
        e.dim_offset.push_back(e.dim.size());
        for (std::size_t s = 0; s < x->size(n); ++s) {
            b.add_object(x->name(n, s));
            e.dim.push_back(n);
            e.simplex.push_back(s);
        }
    }
    e.dim_offset.push_back(e.dim.size());
    e.map_offset.assign(static_cast<std::size_t>((level + 1) * (level + 1)), 0);
    for (int n = 0; n <= level; ++n) {
        std::size_t off = 0;
        for (int m = 0; m <= level; ++m) {
            e.map_offset[static_cast<std::size_t>(n * (level + 1) + m)] = off;
            off += e.index->maps(m, n).size();
        }
    }
    std::size_t total = e.dim.size();
    for (ObjectId o = 0; o < e.dim.size(); ++o) {
        int n = e.dim[o];
        e.arrow_base.push_back(e.delta.size());
        for (int m = 0; m <= level; ++m)
            for (const auto& f : e.index->maps(m, n)) {
                ObjectId t = e.object_of(m, x->act(f, e.simplex[o]));
                ArrowId a = b.add_arrow(x->name(n, e.simplex[o]) + "|" + f.str(), o, t);
                if (f.is_identity()) b.set_identity(o, a);
                e.delta.push_back(f);
                limits.check(++total, "category of elements");
            }
    }
    e.cat = share(b.build([&](ArrowId g, ArrowId f) { return e.arrow_of(b.src(f), compose(e.delta[f], e.delta[g])); }));
    return e;
}

FinFunctor elements_functor(const ElementsCategory& src, const ElementsCategory& dst, const SimplicialMap& f) {
    std::vector<ObjectId> objs(src.dim.size());
    for (ObjectId o = 0; o < objs.size(); ++o)
        objs[o] = dst.object_of(src.dim[o], f.maps[static_cast<std::size_t>(src.dim[o])][src.simplex[o]]);
    std::vector<ArrowId> arrs(src.delta.size());
    for (ArrowId a = 0; a < arrs.size(); ++a) arrs[a] = dst.arrow_of(objs[src.cat->src(a)], src.delta[a]);
    return FinFunctor(src.cat, dst.cat, std::move(objs), std::move(arrs));
}

ArrowId Replacement::composite(ObjectId c, int from, int to) const {
    const SimplexString& s = string(c);
    if (from == to) return base->identity(s.objects[static_cast<std::size_t>(from)]);
    return compose_path(*base, std::span<const ArrowId>(s.arrows.data() + from, static_cast<std::size_t>(to - from)));
}

Replacement simplicial_replacement(const CatPtr& c, int level, const Limits& limits) {
    if (level < 0) throw Error(ErrorKind::usage, "truncation level must be nonnegative");
    Replacement r;
    r.base = c;
    r.base_op = share(opposite(*c));
    r.level = level;
    r.nerve = nerve(c, level, limits);
    r.elements = elements(r.nerve.sset, limits);
    r.delta_cat = std::make_shared<const SimplexCategory>(simplex_category(level));
    CatPtr delta_op = share(opposite(*r.delta_cat->cat));
    const FinCat& rc = *r.elements.cat;
    std::vector<ObjectId> head_obj, tail_obj, delta_obj;
    for (ObjectId o = 0; o < rc.num_objects(); ++o) {
        const auto& s = r.string(o);
        head_obj.push_back(s.objects.front());
        tail_obj.push_back(s.objects.back());
        delta_obj.push_back(static_cast<ObjectId>(s.dim()));
    }
    std::vector<ArrowId> head_arr, tail_arr, delta_arr;
    for (ArrowId a = 0; a < rc.num_arrows(); ++a) {
        const auto& d = r.delta(a);
        ObjectId src = rc.src(a);
        head_arr.push_back(r.composite(src, 0, d.values.front()));
        tail_arr.push_back(r.composite(src, d.values.back(), d.n));
        delta_arr.push_back(r.delta_cat->arrow_of(d));
    }
    r.head = FinFunctor(r.elements.cat, c, std::move(head_obj), std::move(head_arr));
    r.tail = FinFunctor(r.elements.cat, r.base_op, std::move(tail_obj), std::move(tail_arr));
    r.to_delta = FinFunctor(r.elements.cat, delta_op, std::move(delta_obj), std::move(delta_arr));
    return r;
}

bool LocalisationWitness::verified() const {
    return std::all_of(checks.begin(), checks.end(), [](const WitnessCheck& c) { return c.holds; });
}

std::vector<LocalisationWitness> localisation_witnesses(const Replacement& r) {
    if (r.level < 2) throw Error(ErrorKind::precondition, "localisation witnesses need truncation level >= 2");
    const FinCat& rc = *r.cat();
    const FinCat& base = *r.base;
    auto segal_to_head = [&](ObjectId o) { return r.arrow_of(o, interval_inclusion(0, r.elements.dim[o], 0)); };
    std::vector<LocalisationWitness> out;
    for (ArrowId a = 0; a < rc.num_arrows(); ++a) {
        if (!base.is_identity(r.head.arr(a))) continue;
        LocalisationWitness w;
        w.map = a;
        if (rc.is_identity(a)) {
            out.push_back(std::move(w));
            continue;
        }
        auto check = [&](std::string relation, bool holds) { w.checks.push_back({std::move(relation), holds}); };
        const ObjectId c = rc.src(a);
        const SimplexMap& d = r.delta(a);
        const int n = d.n;
        const int k = d.values.front();
        w.dropped = k;
        if (k == 0) {
            w.initial_part = a;
            check("segal(target) o alpha = segal(source)", rc.compose(segal_to_head(rc.dst(a)), a) == segal_to_head(c));
            out.push_back(std::move(w));
            continue;
        }
        SimplexMap shift = interval_inclusion(n - k, n, k);
        std::vector<int> p;
        for (int v : d.values) p.push_back(v - k);
        SimplexMap initial{d.m, n - k, p};
        w.anti_segal_part = r.arrow_of(c, shift);
        ObjectId cr = rc.dst(w.anti_segal_part);
        w.initial_part = r.arrow_of(cr, initial);
        check("alpha = initial_part o anti_segal_part", rc.compose(w.initial_part, w.anti_segal_part) == a);
        if (!rc.is_identity(w.initial_part))
            check("segal(target) o initial_part = segal(intermediate)",
                  rc.compose(segal_to_head(rc.dst(a)), w.initial_part) == segal_to_head(cr));

        std::vector<int> g{0};
        for (int i = 1; i <= n - k + 1; ++i) g.push_back(k + i - 1);
        SimplexMap gamma{n - k + 1, n, g};
        w.gamma = r.arrow_of(c, gamma);
        ObjectId c2 = rc.dst(w.gamma);
        w.alpha_prime = r.arrow_of(c2, interval_inclusion(n - k, n - k + 1, 1));
        check("anti_segal_part = alpha_prime o gamma", rc.compose(w.alpha_prime, w.gamma) == w.anti_segal_part);
        check("gamma preserves endpoints", (classify(gamma) & label_convex) != 0);
        check("segal(c'') o gamma = segal(c)", rc.compose(segal_to_head(c2), w.gamma) == segal_to_head(c));

        ArrowId segal_top = r.arrow_of(c2, interval_inclusion(1, n - k + 1, 0));
        ObjectId loop = rc.dst(segal_top);
        ArrowId segal_bottom = segal_to_head(cr);
        w.beta = r.arrow_of(loop, make_simplex_map(0, 1, {1}));
        check("segal_bottom o alpha_prime = beta o segal_top",
              rc.compose(segal_bottom, w.alpha_prime) == rc.compose(w.beta, segal_top));
        ObjectId point = rc.dst(w.beta);
        w.degeneracy = r.arrow_of(point, make_simplex_map(1, 0, {0, 0}));
        w.segal_unit = r.arrow_of(loop, make_simplex_map(0, 1, {0}));
        check("degeneracy lands on the identity loop", rc.dst(w.degeneracy) == loop);
        check("beta o degeneracy = id", rc.compose(w.beta, w.degeneracy) == rc.identity(point));
        check("segal o degeneracy = id", rc.compose(w.segal_unit, w.degeneracy) == rc.identity(point));
        out.push_back(std::move(w));
    }
    return out;
}

SimplexMap concatenate(int k, const SimplexMap& f) {
    std::vector<int> v;
    for (int b = 0; b < k; ++b)
        for (int i = 0; i <= f.m; ++i) v.push_back(b * (f.n + 1) + f(i));
    return {k * (f.m + 1) - 1, k * (f.n + 1) - 1, std::move(v)};
}

TruncatedSSet edgewise_subdivide(int k, const TruncatedSSet& x, std::optional<int> level) {
    if (k < 1) throw Error(ErrorKind::usage, "subdivision factor must be positive");
    int out_level = level.value_or((x.level() + 1) / k - 1);
    if (out_level < 0 || k * (out_level + 1) - 1 > x.level())
        throw Error(ErrorKind::precondition, "truncation budget too small: level " + std::to_string(out_level) +
                                                 " of the subdivision needs level " +
                                                 std::to_string(k * (out_level + 1) - 1));
    TruncatedSSet::Builder b(out_level);
    for (int n = 0; n <= out_level; ++n) {
        int big = k * (n + 1) - 1;
        for (std::size_t s = 0; s < x.size(big); ++s) b.add_simplex(n, x.name(big, s));
    }
    for (int n = 0; n <= out_level; ++n) {
        int big = k * (n + 1) - 1;
        for (std::size_t s = 0; s < x.size(big); ++s) {
            if (n > 0)
                for (int i = 0; i <= n; ++i) b.set_face(n, i, s, x.act(concatenate(k, coface(n, i)), s));
            if (n < out_level)
                for (int i = 0; i <= n; ++i) b.set_degeneracy(n, i, s, x.act(concatenate(k, codegeneracy(n, i)), s));
        }
    }
    return b.build();
}

}  // namespace catkit
