#include <catkit/resolution.hpp>

#include "tuple_category.hpp"

#include <algorithm>
#include <functional>

namespace catkit {

namespace {

std::vector<char> iso_flags(const FinCat& c) {
    std::vector<char> out(c.num_arrows(), 0);
    for (ArrowId f = 0; f < c.num_arrows(); ++f) out[f] = is_iso(c, f) ? 1 : 0;
    return out;
}

// Composite of the string arrows from vertex i to vertex j >= i.
ArrowId string_composite(const FinCat& c, const std::vector<ObjectId>& objects, const std::vector<ArrowId>& arrows,
                         int i, int j) {
    if (i == j) return c.identity(objects[static_cast<std::size_t>(i)]);
    std::span<const ArrowId> path(arrows.data() + i, static_cast<std::size_t>(j - i));
    return compose_path(c, path);
}

// j(i) is the least preimage of i.
std::vector<int> least_section(const SimplexMap& s) {
    std::vector<int> j(static_cast<std::size_t>(s.n + 1), -1);
    for (int t = s.m; t >= 0; --t) j[static_cast<std::size_t>(s(t))] = t;
    return j;
}

std::vector<SimplexMap> surjections(int m, int n) {
    std::vector<SimplexMap> out;
    for (auto& f : all_maps(m, n))
        if (f.is_surjective()) out.push_back(std::move(f));
    return out;
}

std::vector<std::uint32_t> with_values(std::vector<std::uint32_t> key, const SimplexMap& f) {
    for (int v : f.values) key.push_back(static_cast<std::uint32_t>(v));
    return key;
}

std::vector<int> image(const SimplexMap& f) {
    std::vector<int> out(f.values.begin(), f.values.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

int position(const std::vector<int>& sorted, int v) {
    return static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), v) - sorted.begin());
}

}  // namespace

std::vector<std::uint32_t> FibreCategory::key(const std::vector<ObjectId>& d, const std::vector<ArrowId>& g,
                                              const std::vector<ArrowId>& u) const {
    std::vector<std::uint32_t> k{d.front()};
    k.insert(k.end(), g.begin(), g.end());
    k.insert(k.end(), u.begin(), u.end());
    return k;
}

std::optional<ObjectId> FibreCategory::find(const std::vector<ObjectId>& d, const std::vector<ArrowId>& g,
                                            const std::vector<ArrowId>& u) const {
    auto it = object_index_.find(key(d, g, u));
    if (it == object_index_.end()) return std::nullopt;
    return it->second;
}

std::optional<ArrowId> FibreCategory::find_arrow(ObjectId a, ObjectId b, const std::vector<ArrowId>& comps) const {
    std::vector<std::uint32_t> k{a, b};
    k.insert(k.end(), comps.begin(), comps.end());
    auto it = arrow_index_.find(k);
    if (it == arrow_index_.end()) return std::nullopt;
    return it->second;
}

FibreCategory fibre_category(const FinFunctor& f, const SimplexString& s, const Limits& limits) {
    const FinCat& D = *f.dom();
    const FinCat& C = *f.cod();
    const int n = s.dim();
    const auto iso = iso_flags(C);
    std::vector<std::vector<ObjectId>> over(C.num_objects());
    for (ObjectId d = 0; d < D.num_objects(); ++d) over[f.obj(d)].push_back(d);

    FibreCategory out;
    out.functor = f;
    out.string = s;
    detail::TupleCategory t(limits, "fibre category");

    std::vector<ObjectId> d;
    std::vector<ArrowId> g, u;
    auto name = [&] {
        std::string text = "[" + D.object_name(d.front());
        for (ArrowId a : g) text += ";" + D.arrow_name(a);
        text += "|";
        for (std::size_t i = 0; i < u.size(); ++i) text += (i ? "," : "") + C.arrow_name(u[i]);
        return text + "]";
    };
    std::function<void(int)> extend = [&](int i) {
        if (i > n) {
            auto key = out.key(d, g, u);
            ObjectId id = t.add_object(key, name());
            out.object_index_.emplace(std::move(key), id);
            out.lifts.push_back(d);
            out.lift_arrows.push_back(g);
            out.isos.push_back(u);
            return;
        }
        ObjectId c = s.objects[static_cast<std::size_t>(i)];
        if (i == 0) {
            for (ArrowId v : C.in_arrows(c)) {
                if (!iso[v]) continue;
                for (ObjectId d0 : over[C.src(v)]) {
                    d = {d0};
                    u = {v};
                    extend(1);
                }
            }
            return;
        }
        ArrowId target = C.compose(s.arrows[static_cast<std::size_t>(i - 1)], u.back());
        for (ArrowId a : D.out_arrows(d.back())) {
            ObjectId di = D.dst(a);
            for (ArrowId v : C.hom(f.obj(di), c)) {
                if (!iso[v] || C.compose(v, f.arr(a)) != target) continue;
                d.push_back(di);
                g.push_back(a);
                u.push_back(v);
                extend(i + 1);
                d.pop_back();
                g.pop_back();
                u.pop_back();
            }
        }
    };
    extend(0);

    const std::size_t count = out.lifts.size();
    std::vector<ArrowId> h;
    for (ObjectId a = 0; a < count; ++a)
        for (ObjectId b = 0; b < count; ++b) {
            const auto& da = out.lifts[a];
            const auto& db = out.lifts[b];
            std::function<void(int)> pick = [&](int i) {
                if (i > n) {
                    std::vector<std::uint32_t> key{a, b};
                    key.insert(key.end(), h.begin(), h.end());
                    std::string text = std::to_string(a) + "->" + std::to_string(b) + ":(";
                    for (std::size_t k = 0; k < h.size(); ++k) text += (k ? "," : "") + D.arrow_name(h[k]);
                    bool ident = a == b && std::all_of(h.begin(), h.end(), [&](ArrowId x) { return D.is_identity(x); });
                    ArrowId id = t.add_arrow(a, b, h, text + ")", ident);
                    out.arrow_index_.emplace(std::move(key), id);
                    out.components.push_back(h);
                    return;
                }
                auto k = static_cast<std::size_t>(i);
                for (ArrowId x : D.hom(da[k], db[k])) {
                    if (C.compose(out.isos[b][k], f.arr(x)) != out.isos[a][k]) continue;
                    if (i > 0 && D.compose(x, out.lift_arrows[a][k - 1]) != D.compose(out.lift_arrows[b][k - 1], h.back()))
                        continue;
                    h.push_back(x);
                    pick(i + 1);
                    h.pop_back();
                }
            };
            pick(0);
        }

    FinCat cat = t.build([&](ArrowId second, ArrowId first) {
        const auto& x = t.arrow_data(second);
        const auto& y = t.arrow_data(first);
        detail::Key k(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) k[i] = D.compose(x[i], y[i]);
        return k;
    });
    out.cat = share(std::move(cat));
    return out;
}

FinFunctor restrict_fibre(const FibreCategory& from, const FibreCategory& to, const SimplexMap& delta) {
    const FinCat& D = *from.functor.dom();
    const FinCat& C = *from.functor.cod();
    if (delta.n != from.string.dim() || !(restrict_string(C, from.string, delta) == to.string))
        throw Error(ErrorKind::precondition, "restriction target is not the restricted string");
    std::vector<ObjectId> objs;
    for (std::size_t o = 0; o < from.lifts.size(); ++o) {
        std::vector<ObjectId> d;
        std::vector<ArrowId> g, u;
        for (int j = 0; j <= delta.m; ++j) {
            d.push_back(from.lifts[o][static_cast<std::size_t>(delta(j))]);
            u.push_back(from.isos[o][static_cast<std::size_t>(delta(j))]);
            if (j > 0) g.push_back(string_composite(D, from.lifts[o], from.lift_arrows[o], delta(j - 1), delta(j)));
        }
        auto found = to.find(d, g, u);
        if (!found) throw Error(ErrorKind::precondition, "restricted lift is missing from the target fibre");
        objs.push_back(*found);
    }
    std::vector<ArrowId> arrs;
    for (ArrowId a = 0; a < from.components.size(); ++a) {
        std::vector<ArrowId> comps;
        for (int j = 0; j <= delta.m; ++j) comps.push_back(from.components[a][static_cast<std::size_t>(delta(j))]);
        auto found = to.find_arrow(objs[from.cat->src(a)], objs[from.cat->dst(a)], comps);
        if (!found) throw Error(ErrorKind::precondition, "restricted map is missing from the target fibre");
        arrs.push_back(*found);
    }
    return FinFunctor(from.cat, to.cat, std::move(objs), std::move(arrs));
}

CheckReport is_isofibration(const FinFunctor& f) {
    const FinCat& D = *f.dom();
    const FinCat& C = *f.cod();
    const auto iso_c = iso_flags(C);
    const auto iso_d = iso_flags(D);
    for (ObjectId d = 0; d < D.num_objects(); ++d)
        for (ArrowId u : C.out_arrows(f.obj(d))) {
            if (!iso_c[u]) continue;
            bool lifted = false;
            for (ArrowId v : D.out_arrows(d)) lifted = lifted || (iso_d[v] && f.arr(v) == u);
            if (!lifted)
                return CheckReport::fail("iso " + C.arrow_name(u) + " does not lift at " + D.object_name(d));
        }
    return CheckReport::pass();
}

void DiagnosticReport::add(FibreDiagnostic d) {
    verdict = combine(verdict, d.verdict.kind);
    per_fibre.push_back(std::move(d));
}

const FibreDiagnostic* DiagnosticReport::witness() const {
    for (const auto& d : per_fibre)
        if (d.verdict.kind == Contractibility::empty || d.verdict.kind == Contractibility::not_contractible) return &d;
    return nullptr;
}

namespace {

FibreDiagnostic diagnose(std::string name, const CatPtr& c, int d, const Limits& limits) {
    FibreDiagnostic out;
    out.name = std::move(name);
    out.objects = c->num_objects();
    out.arrows = c->num_arrows();
    out.verdict = contractibility(c, d, limits);
    return out;
}

SimplexString point_string(ObjectId c) { return {{c}, {}}; }

// The strict fibre of D(c' -> c) over an end object (dd, uu): the other end varies, the given end is fixed.
CatPtr end_fibre(const FinFunctor& f, const std::vector<char>& iso, ArrowId a, ObjectId dd, ArrowId uu, bool right,
                 const Limits& limits) {
    const FinCat& D = *f.dom();
    const FinCat& C = *f.cod();
    detail::TupleCategory t(limits, "strict fibre");
    std::vector<std::pair<ArrowId, ArrowId>> objs;
    auto arrows = right ? D.in_arrows(dd) : D.out_arrows(dd);
    ObjectId other = right ? C.src(a) : C.dst(a);
    for (ArrowId g : arrows) {
        ObjectId e = right ? D.src(g) : D.dst(g);
        for (ArrowId v : C.hom(f.obj(e), other)) {
            if (!iso[v]) continue;
            bool square = right ? C.compose(uu, f.arr(g)) == C.compose(a, v) : C.compose(v, f.arr(g)) == C.compose(a, uu);
            if (!square) continue;
            t.add_object({g, v}, "(" + D.arrow_name(g) + "," + C.arrow_name(v) + ")");
            objs.emplace_back(g, v);
        }
    }
    for (ObjectId x = 0; x < objs.size(); ++x)
        for (ObjectId y = 0; y < objs.size(); ++y) {
            auto [gx, vx] = objs[x];
            auto [gy, vy] = objs[y];
            ObjectId ex = right ? D.src(gx) : D.dst(gx), ey = right ? D.src(gy) : D.dst(gy);
            for (ArrowId h : D.hom(ex, ey)) {
                if (C.compose(vy, f.arr(h)) != vx) continue;
                if (right ? D.compose(gy, h) != gx : D.compose(h, gx) != gy) continue;
                t.add_arrow(x, y, {h}, std::to_string(x) + "->" + std::to_string(y) + ":" + D.arrow_name(h),
                            x == y && D.is_identity(h));
            }
        }
    FinCat cat = t.build([&](ArrowId second, ArrowId first) {
        return detail::Key{D.compose(t.arrow_data(second)[0], t.arrow_data(first)[0])};
    });
    return share(std::move(cat));
}

DiagnosticReport one_sided_resolution(const FinFunctor& f, int d, const Limits& limits, bool right,
                                      const FibreSelection& select) {
    if (auto iso = is_isofibration(f); !iso)
        throw Error(ErrorKind::precondition, "functor is not an isofibration: " + iso.violation);
    const FinCat& C = *f.cod();
    const auto iso = iso_flags(C);
    DiagnosticReport report;
    std::vector<FibreCategory> points;
    for (ObjectId c = 0; c < C.num_objects(); ++c) {
        points.push_back(fibre_category(f, point_string(c), limits));
        int depth = select.object ? std::min(d, select.object(c)) : d;
        if (depth < 1) {
            ++report.skipped;
            continue;
        }
        report.add(diagnose("D(" + C.object_name(c) + ")", points.back().cat, depth, limits));
    }
    for (ArrowId a = 0; a < C.num_arrows(); ++a) {
        const FibreCategory& end = points[right ? C.dst(a) : C.src(a)];
        for (ObjectId x = 0; x < end.cat->num_objects(); ++x) {
            int depth = select.arrow ? std::min(d, select.arrow(a, end, x)) : d;
            if (depth < 1) {
                ++report.skipped;
                continue;
            }
            CatPtr fib = end_fibre(f, iso, a, end.lifts[x].front(), end.isos[x].front(), right, limits);
            std::string name = right ? "F(" + C.arrow_name(a) + "," + end.cat->object_name(x) + ")"
                                     : "F(" + end.cat->object_name(x) + "," + C.arrow_name(a) + ")";
            report.add(diagnose(std::move(name), fib, depth, limits));
        }
    }
    return report;
}

}  // namespace

DiagnosticReport check_resolution(const FinFunctor& f, int n, int d, const Limits& limits) {
    Nerve nv = nerve(f.cod(), n, limits);
    DiagnosticReport report;
    for (const auto& level : nv.strings)
        for (const auto& s : level) {
            FibreCategory fc = fibre_category(f, s, limits);
            report.add(diagnose("D(" + string_name(*f.cod(), s) + ")", fc.cat, d, limits));
        }
    return report;
}

DiagnosticReport check_right_resolution(const FinFunctor& f, int d, const Limits& limits,
                                        const FibreSelection& select) {
    return one_sided_resolution(f, d, limits, true, select);
}

DiagnosticReport check_left_resolution(const FinFunctor& f, int d, const Limits& limits,
                                       const FibreSelection& select) {
    return one_sided_resolution(f, d, limits, false, select);
}

DiagnosticReport cofinality(const FinFunctor& f, int d, const Limits& limits) {
    const FinCat& B = *f.cod();
    DiagnosticReport report;
    for (ObjectId b = 0; b < B.num_objects(); ++b) {
        CommaCategory cm = under(b, f, limits);
        report.add(diagnose(B.object_name(b) + "\\f", cm.cat, d, limits));
    }
    return report;
}

std::optional<ObjectId> RelComma::find(int n, std::size_t x, int m, std::size_t y, const SimplexMap& s) const {
    auto key = with_values({static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(m),
                            static_cast<std::uint32_t>(y)},
                           s);
    auto it = object_index_.find(key);
    if (it == object_index_.end()) return std::nullopt;
    return it->second;
}

std::optional<ArrowId> RelComma::find_arrow(ObjectId src, ObjectId dst, const SimplexMap& a,
                                            const SimplexMap& b) const {
    auto it = arrow_index_.find(with_values(with_values({src, dst}, a), b));
    if (it == arrow_index_.end()) return std::nullopt;
    return it->second;
}

RelComma relative_comma(const SimplicialMap& f, const SimplicialMap& g, const Limits& limits) {
    if (f.dst != g.dst) throw Error(ErrorKind::precondition, "relative comma requires a common target");
    const TruncatedSSet& X = *f.src;
    const TruncatedSSet& Y = *g.src;
    const TruncatedSSet& Z = *f.dst;
    const int lx = std::min(X.level(), Z.level()), ly = std::min(Y.level(), Z.level());

    RelComma out;
    out.left = f;
    out.right = g;
    out.x_elements = elements(f.src, limits);
    out.y_elements = elements(g.src, limits);

    std::vector<std::vector<std::vector<std::size_t>>> preimage(static_cast<std::size_t>(lx + 1));
    for (int n = 0; n <= lx; ++n) {
        auto& level = preimage[static_cast<std::size_t>(n)];
        level.resize(Z.size(n));
        for (std::size_t x = 0; x < X.size(n); ++x) level[f.maps[static_cast<std::size_t>(n)][x]].push_back(x);
    }
    std::vector<std::vector<std::vector<SimplexMap>>> surj(static_cast<std::size_t>(ly + 1));
    for (int m = 0; m <= ly; ++m)
        for (int n = 0; n <= std::min(m, lx); ++n) surj[static_cast<std::size_t>(m)].push_back(surjections(m, n));

    detail::TupleCategory t(limits, "relative comma");
    for (int m = 0; m <= ly; ++m)
        for (std::size_t y = 0; y < Y.size(m); ++y) {
            std::size_t gy = g.maps[static_cast<std::size_t>(m)][y];
            for (int n = 0; n <= std::min(m, lx); ++n)
                for (const SimplexMap& s : surj[static_cast<std::size_t>(m)][static_cast<std::size_t>(n)]) {
                    auto j = least_section(s);
                    SimplexMap sec = make_simplex_map(n, m, j);
                    std::size_t z = Z.act(sec, gy);
                    for (std::size_t x : preimage[static_cast<std::size_t>(n)][z]) {
                        if (Z.act(s, f.maps[static_cast<std::size_t>(n)][x]) != gy) continue;
                        auto key = with_values({static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(x),
                                                static_cast<std::uint32_t>(m), static_cast<std::uint32_t>(y)},
                                               s);
                        ObjectId id = t.add_object(key, "(" + X.name(n, x) + "," + Y.name(m, y) + "," + s.str() + ")");
                        out.object_index_.emplace(std::move(key), id);
                        out.objects.push_back({n, x, m, y, s});
                    }
                }
        }

    for (ObjectId o = 0; o < out.objects.size(); ++o) {
        const auto src = out.objects[o];
        for (int m2 = 0; m2 <= ly; ++m2)
            for (const SimplexMap& b : all_maps(m2, src.m)) {
                SimplexMap sb = compose(src.s, b);
                std::size_t y2 = Y.act(b, src.y);
                for (int n2 = 0; n2 <= std::min(m2, lx); ++n2)
                    for (const SimplexMap& s2 : surj[static_cast<std::size_t>(m2)][static_cast<std::size_t>(n2)]) {
                        // a o s2 = s o b forces a on the least section of s2.
                        auto j = least_section(s2);
                        std::vector<int> av;
                        for (int i = 0; i <= n2; ++i) av.push_back(sb(j[static_cast<std::size_t>(i)]));
                        SimplexMap a{n2, src.n, std::move(av)};
                        if (!(compose(a, s2) == sb)) continue;
                        std::size_t x2 = X.act(a, src.x);
                        auto dst = out.find(n2, x2, m2, y2, s2);
                        if (!dst) throw Error(ErrorKind::validation, "relative comma target is missing");
                        auto data = with_values(with_values({}, a), b);
                        std::string name = std::to_string(o) + "->" + std::to_string(*dst) + ":(" + a.str() + "," +
                                           b.str() + ")";
                        bool ident = a.is_identity() && b.is_identity();
                        ArrowId id = t.add_arrow(o, *dst, data, std::move(name), ident);
                        out.arrow_index_.emplace(with_values(with_values({o, *dst}, a), b), id);
                        out.arrows.push_back({std::move(a), b});
                    }
            }
    }

    FinCat cat = t.build([&](ArrowId second, ArrowId first) {
        const auto& a2 = out.arrows[second];
        const auto& a1 = out.arrows[first];
        return with_values(with_values({}, compose(a1.a, a2.a)), compose(a1.b, a2.b));
    });
    out.cat = share(std::move(cat));

    std::vector<ObjectId> xo, yo;
    for (const auto& obj : out.objects) {
        xo.push_back(out.x_elements.object_of(obj.n, obj.x));
        yo.push_back(out.y_elements.object_of(obj.m, obj.y));
    }
    std::vector<ArrowId> xa, ya;
    for (ArrowId e = 0; e < out.arrows.size(); ++e) {
        ObjectId s = out.cat->src(e);
        xa.push_back(out.x_elements.arrow_of(xo[s], out.arrows[e].a));
        ya.push_back(out.y_elements.arrow_of(yo[s], out.arrows[e].b));
    }
    out.to_x = FinFunctor(out.cat, out.x_elements.cat, std::move(xo), std::move(xa));
    out.to_y = FinFunctor(out.cat, out.y_elements.cat, std::move(yo), std::move(ya));

    bool identity_left = f.src == f.dst;
    for (std::size_t n = 0; identity_left && n < f.maps.size(); ++n)
        for (std::size_t x = 0; identity_left && x < f.maps[n].size(); ++x) identity_left = f.maps[n][x] == x;
    if (identity_left && ly <= lx) {
        const ElementsCategory& ey = out.y_elements;
        std::vector<ObjectId> io;
        for (ObjectId y = 0; y < ey.cat->num_objects(); ++y) {
            int m = ey.dim[y];
            std::size_t gy = g.maps[static_cast<std::size_t>(m)][ey.simplex[y]];
            io.push_back(*out.find(m, gy, m, ey.simplex[y], identity_map(m)));
        }
        std::vector<ArrowId> ia;
        for (ArrowId e = 0; e < ey.cat->num_arrows(); ++e) {
            const SimplexMap& b = ey.delta[e];
            ia.push_back(*out.find_arrow(io[ey.cat->src(e)], io[ey.cat->dst(e)], b, b));
        }
        out.include_y = FinFunctor(ey.cat, out.cat, std::move(io), std::move(ia));
    }
    return out;
}

CheckReport check_rel_comma(const RelComma& r) {
    const TruncatedSSet& Z = *r.left.dst;
    for (ObjectId o = 0; o < r.objects.size(); ++o) {
        const auto& obj = r.objects[o];
        if (!obj.s.is_surjective() || obj.s.m != obj.m || obj.s.n != obj.n)
            return CheckReport::fail("connecting map of " + r.cat->object_name(o) + " is not a degeneracy");
        if (Z.act(obj.s, r.left.maps[static_cast<std::size_t>(obj.n)][obj.x]) !=
            r.right.maps[static_cast<std::size_t>(obj.m)][obj.y])
            return CheckReport::fail("object " + r.cat->object_name(o) + " does not commute");
        if (r.x_elements.dim[r.to_x.obj(o)] + r.y_elements.dim[r.to_y.obj(o)] != r.degree(o))
            return CheckReport::fail("degree of " + r.cat->object_name(o) + " is not n + m");
    }
    if (auto v = validate(*r.cat); !v) return CheckReport::fail("comma category: " + v.violation);
    if (auto v = validate(r.to_x); !v) return CheckReport::fail("projection to X: " + v.violation);
    if (auto v = validate(r.to_y); !v) return CheckReport::fail("projection to Y: " + v.violation);
    if (!r.include_y) return CheckReport::pass();

    const FinFunctor& i = *r.include_y;
    const FinCat& Y = *r.y_elements.cat;
    if (auto v = validate(i); !v) return CheckReport::fail("inclusion of Y: " + v.violation);
    if (!same_tables(compose(r.to_y, i), identity_functor(r.y_elements.cat)))
        return CheckReport::fail("projection to Y after the inclusion is not the identity");
    if (!same_tables(compose(r.to_x, i), elements_functor(r.y_elements, r.x_elements, r.right)))
        return CheckReport::fail("projection to X after the inclusion is not G");
    for (ObjectId a = 0; a < Y.num_objects(); ++a)
        for (ObjectId b = 0; b < Y.num_objects(); ++b) {
            auto src = Y.hom(a, b);
            auto dst = r.cat->hom(i.obj(a), i.obj(b));
            std::vector<ArrowId> images;
            for (ArrowId e : src) images.push_back(i.arr(e));
            std::sort(images.begin(), images.end());
            if (images.size() != dst.size() || std::adjacent_find(images.begin(), images.end()) != images.end())
                return CheckReport::fail("inclusion of Y is not fully faithful at " + Y.object_name(a) + "," +
                                         Y.object_name(b));
        }
    for (ObjectId y = 0; y < Y.num_objects(); ++y) {
        FibreInclusion fib = strict_fibre(r.to_y, y);
        const auto& objs = fib.inclusion.object_map();
        auto local = static_cast<ObjectId>(std::find(objs.begin(), objs.end(), i.obj(y)) - objs.begin());
        for (ObjectId z = 0; z < fib.fibre->num_objects(); ++z)
            if (fib.fibre->hom(z, local).size() != 1)
                return CheckReport::fail("inclusion of " + Y.object_name(y) + " is not terminal in its fibre");
    }
    if (auto adj = check_adjunction(r.to_y, i); !adj.holds)
        return CheckReport::fail("projection to Y is not left adjoint to the inclusion: " + adj.witness);
    return CheckReport::pass();
}

ArrowId face_lift(const RelComma& r, ObjectId o, const SimplexMap& a) {
    const auto& obj = r.objects[o];
    if (!a.is_injective() || a.n != obj.n) throw Error(ErrorKind::precondition, "face lift needs a face map at x");
    std::vector<int> preimage;
    for (int i = 0; i <= obj.m; ++i)
        if (std::binary_search(a.values.begin(), a.values.end(), obj.s(i))) preimage.push_back(i);
    const int m2 = static_cast<int>(preimage.size()) - 1;
    SimplexMap b{m2, obj.m, preimage};
    std::vector<int> sv;
    for (int v : preimage) sv.push_back(position(a.values, obj.s(v)));
    SimplexMap s2{m2, a.m, std::move(sv)};
    auto dst = r.find(a.m, r.left.src->act(a, obj.x), m2, r.right.src->act(b, obj.y), s2);
    if (!dst) throw Error(ErrorKind::precondition, "face lift leaves the truncation");
    return *r.find_arrow(o, *dst, a, b);
}

CheckReport check_face_lifts(const RelComma& r) {
    for (ObjectId o = 0; o < r.objects.size(); ++o) {
        const auto& obj = r.objects[o];
        for (int k = 0; k <= obj.n; ++k)
            for (const SimplexMap& a : all_maps(k, obj.n)) {
                if (!a.is_injective()) continue;
                ArrowId e = face_lift(r, o, a);
                const auto& lift = r.arrows[e];
                const auto& tgt = r.objects[r.cat->dst(e)];
                std::string where = " at " + r.cat->object_name(o) + " along " + a.str();
                if (r.to_x.arr(e) != r.x_elements.arrow_of(r.to_x.obj(o), a))
                    return CheckReport::fail("face lift does not project to the face" + where);
                if (!(compose(obj.s, lift.b) == compose(a, tgt.s)) || !lift.b.is_injective())
                    return CheckReport::fail("face lift square does not recompose" + where);
                if (!is_opcartesian(r.to_x, e)) return CheckReport::fail("face lift is not opcartesian" + where);
            }
    }
    return CheckReport::pass();
}

CommaMapLabels classify_comma_map(const RelComma& r, ArrowId f) {
    const auto& e = r.arrows[f];
    CommaMapLabels out;
    out.x_labels = classify(e.a);
    out.y_labels = classify(e.b);
    out.segal = (out.x_labels & label_segal) && (out.y_labels & label_segal);
    out.face = e.a.is_injective() && e.b.is_injective();
    out.degeneracy = e.a.is_surjective() && e.b.is_surjective();
    return out;
}

CommaFactorization reedy_factor_comma(const RelComma& r, ArrowId f) {
    const auto& e = r.arrows[f];
    const auto& src = r.objects[r.cat->src(f)];
    ReedyFactorization fa = factor_reedy(e.a), fb = factor_reedy(e.b);
    const SimplexMap& ai = fa.injection;
    const SimplexMap& bi = fb.injection;
    std::vector<int> mid;
    for (int t = 0; t <= bi.m; ++t) mid.push_back(position(ai.values, src.s(bi(t))));
    SimplexMap s2{bi.m, ai.m, std::move(mid)};
    CommaFactorization out;
    auto middle = r.find(ai.m, r.left.src->act(ai, src.x), bi.m, r.right.src->act(bi, src.y), s2);
    if (!middle) throw Error(ErrorKind::validation, "middle object of the factorization is missing");
    out.middle = *middle;
    out.lowering = *r.find_arrow(r.cat->src(f), out.middle, ai, bi);
    out.raising = *r.find_arrow(out.middle, r.cat->dst(f), fa.surjection, fb.surjection);
    return out;
}

CheckReport DeltaSquare::validate() const {
    if (top.n != left.m || left.n != bottom.n || right.m != top.m || right.n != bottom.m)
        return CheckReport::fail("square maps have mismatched endpoints");
    if (!left.is_surjective() || !right.is_surjective()) return CheckReport::fail("vertical maps must be surjective");
    if (!(compose(left, top) == compose(bottom, right))) return CheckReport::fail("square does not commute");
    return CheckReport::pass();
}

DeltaSquare paste(const DeltaSquare& first, const DeltaSquare& second) {
    if (!(first.right == second.left)) throw Error(ErrorKind::precondition, "squares do not share a vertical map");
    return {compose(first.top, second.top), compose(first.bottom, second.bottom), first.left, second.right};
}

std::string to_string(IntervalSide s) { return s == IntervalSide::left ? "left" : "right"; }

std::optional<IntervalSide> interval_side(const SimplexMap& f) {
    unsigned labels = classify(f);
    if (labels & label_segal) return IntervalSide::left;
    if (labels & label_anti_segal) return IntervalSide::right;
    return std::nullopt;
}

namespace {

bool has_side(const SimplexMap& f, IntervalSide side) {
    return classify(f) & (side == IntervalSide::left ? label_segal : label_anti_segal);
}

void record(SquareFactorization& out, bool holds, const std::string& relation) {
    out.checks.push_back(relation);
    if (!holds && out.verified) out.verified = CheckReport::fail(relation + " fails");
}

void check_pasting(SquareFactorization& out, const DeltaSquare& sq) {
    record(out, static_cast<bool>(out.first.validate()), "first square commutes");
    record(out, static_cast<bool>(out.second.validate()), "second square commutes");
    record(out, out.first.right == out.second.left && paste(out.first, out.second) == sq, "pasting recomposes");
}

}  // namespace

SquareFactorization factor_square_1(const DeltaSquare& sq) {
    if (auto v = sq.validate(); !v) throw Error(ErrorKind::precondition, v.violation);
    auto side = interval_side(sq.top);
    if (!side) throw Error(ErrorKind::precondition, "hypothesis violated: top map is not an interval inclusion");
    auto img = image(sq.bottom);
    const int m2 = static_cast<int>(img.size()) - 1;
    SimplexMap gamma{m2, sq.bottom.n, img};
    std::vector<int> zv;
    for (int v : sq.bottom.values) zv.push_back(position(img, v));
    SimplexMap zeta{sq.bottom.m, m2, std::move(zv)};
    SquareFactorization out;
    out.side = *side;
    SimplexMap middle = compose(zeta, sq.right);
    out.first = {sq.top, gamma, sq.left, middle};
    out.second = {identity_map(sq.top.m), zeta, middle, sq.right};
    check_pasting(out, sq);
    record(out, has_side(gamma, *side), "gamma is a " + to_string(*side) + " interval inclusion");
    record(out, zeta.is_surjective(), "zeta is surjective");
    record(out, compose(gamma, zeta) == sq.bottom, "gamma o zeta = bottom");
    return out;
}

SquareFactorization factor_square_2(const DeltaSquare& sq) {
    if (auto v = sq.validate(); !v) throw Error(ErrorKind::precondition, v.violation);
    auto side = interval_side(sq.bottom);
    if (!side) throw Error(ErrorKind::precondition, "hypothesis violated: bottom map is not an interval inclusion");
    std::vector<int> pre;
    for (int i = 0; i <= sq.left.m; ++i)
        if (std::binary_search(sq.bottom.values.begin(), sq.bottom.values.end(), sq.left(i))) pre.push_back(i);
    const int k2 = static_cast<int>(pre.size()) - 1;
    SimplexMap epsilon{k2, sq.left.m, pre};
    std::vector<int> pv, mv;
    for (int v : pre) pv.push_back(position(sq.bottom.values, sq.left(v)));
    for (int v : sq.top.values) mv.push_back(position(pre, v));
    SimplexMap p2{k2, sq.bottom.m, std::move(pv)};
    SimplexMap mu{sq.top.m, k2, std::move(mv)};
    SquareFactorization out;
    out.side = *side;
    out.first = {epsilon, sq.bottom, sq.left, p2};
    out.second = {mu, identity_map(sq.bottom.m), p2, sq.right};
    check_pasting(out, sq);
    record(out, has_side(epsilon, *side), "epsilon is a " + to_string(*side) + " interval inclusion");
    record(out, compose(epsilon, mu) == sq.top, "epsilon o mu = top");
    record(out, is_pullback(out.first), "first square is a pullback");
    return out;
}

// Cones from [0] and [1] detect pullbacks in the simplex category: maps out of [t] are
// determined by their points, and monotonicity is a condition on pairs.
bool is_pullback(const DeltaSquare& sq) {
    if (!sq.validate()) return false;
    for (int t = 0; t <= 1; ++t)
        for (const SimplexMap& u : all_maps(t, sq.left.m))
            for (const SimplexMap& v : all_maps(t, sq.bottom.m)) {
                if (!(compose(sq.left, u) == compose(sq.bottom, v))) continue;
                int count = 0;
                for (const SimplexMap& w : all_maps(t, sq.top.m))
                    if (compose(sq.top, w) == u && compose(sq.right, w) == v) ++count;
                if (count != 1) return false;
            }
    return true;
}

DeltaSquare complete_from_top(const SimplexMap& top, const SimplexMap& left) {
    if (!interval_side(top)) throw Error(ErrorKind::precondition, "hypothesis violated: not an interval inclusion");
    if (!left.is_surjective() || left.m != top.n)
        throw Error(ErrorKind::precondition, "left map must be a surjection out of the target");
    SimplexMap lt = compose(left, top);
    auto img = image(lt);
    const int m = static_cast<int>(img.size()) - 1;
    std::vector<int> rv;
    for (int v : lt.values) rv.push_back(position(img, v));
    return {top, SimplexMap{m, left.n, img}, left, SimplexMap{top.m, m, std::move(rv)}};
}

DeltaSquare complete_from_bottom(const SimplexMap& bottom, const SimplexMap& right) {
    auto side = interval_side(bottom);
    if (!side) throw Error(ErrorKind::precondition, "hypothesis violated: not an interval inclusion");
    if (!right.is_surjective() || right.n != bottom.m)
        throw Error(ErrorKind::precondition, "right map must be a surjection onto the source");
    const int k = right.m, shift = bottom.n - bottom.m, l = k + shift;
    std::vector<int> lv;
    if (*side == IntervalSide::left) {
        for (int i = 0; i <= l; ++i) lv.push_back(i <= k ? right(i) : bottom.m + (i - k));
        return {interval_inclusion(k, l, 0), bottom, SimplexMap{l, bottom.n, std::move(lv)}, right};
    }
    for (int i = 0; i <= l; ++i) lv.push_back(i < shift ? i : shift + right(i - shift));
    return {interval_inclusion(k, l, shift), bottom, SimplexMap{l, bottom.n, std::move(lv)}, right};
}

CommaResolutionReport check_comma_resolution(const FinFunctor& f, int n, int d, const Limits& limits) {
    if (auto iso = is_isofibration(f); !iso)
        throw Error(ErrorKind::precondition, "functor is not an isofibration: " + iso.violation);
    DiagnosticReport res = check_resolution(f, n, d, limits);
    if (res.verdict == Verdict::refuted)
        throw Error(ErrorKind::precondition, "functor is not a resolution: " + res.witness()->name + " is " +
                                                 to_string(res.witness()->verdict.kind));
    const FinCat& D = *f.dom();
    Nerve nc = nerve(f.cod(), n, limits);
    Nerve nd = nerve(f.dom(), n, limits);
    SimplicialMap id{nc.sset, nc.sset, {}};
    for (int k = 0; k <= n; ++k) {
        std::vector<std::size_t> v(nc.sset->size(k));
        for (std::size_t x = 0; x < v.size(); ++x) v[x] = x;
        id.maps.push_back(std::move(v));
    }
    RelComma rc = relative_comma(id, nerve_map(nd, nc, f), limits);

    CommaResolutionReport out;
    out.comma_objects = rc.cat->num_objects();
    out.comma_arrows = rc.cat->num_arrows();

    // Over a string of dimension k the truncated fibre keeps n - k levels of subdivision, so its
    // homology is read below degree n - k. A lift of a degeneracy raising the dimension by r from an
    // object of height m starts at height m + r.
    const ElementsCategory& ex = rc.x_elements;
    FibreSelection select;
    select.object = [&](ObjectId c) { return n - ex.dim[c]; };
    select.arrow = [&](ArrowId a, const FibreCategory& end, ObjectId x) {
        int rise = std::max(0, ex.dim[ex.cat->dst(a)] - ex.dim[ex.cat->src(a)]);
        return n + 1 - rc.objects[end.lifts[x].front()].m - rise;
    };
    out.left = check_left_resolution(rc.to_x, d, limits, select);
    out.verdict = out.left.verdict;

    for (ObjectId c = 0; c < ex.cat->num_objects(); ++c) {
        int depth = std::min(d, select.object(c));
        if (depth < 1) continue;
        const SimplexString& s = nc.strings[static_cast<std::size_t>(ex.dim[c])][ex.simplex[c]];
        FibreCategory source = fibre_category(rc.to_x, point_string(c), limits);
        FibreCategory target = fibre_category(f, s, limits);
        std::vector<ObjectId> objs;
        std::vector<std::vector<int>> sections;
        for (const auto& lift : source.lifts) {
            const auto& obj = rc.objects[lift.front()];
            const SimplexString& y = nd.strings[static_cast<std::size_t>(obj.m)][obj.y];
            auto j = least_section(obj.s);
            std::vector<ObjectId> dv;
            std::vector<ArrowId> gv, uv;
            for (int i = 0; i <= obj.n; ++i) {
                dv.push_back(y.objects[static_cast<std::size_t>(j[static_cast<std::size_t>(i)])]);
                uv.push_back(f.cod()->identity(s.objects[static_cast<std::size_t>(i)]));
                if (i > 0)
                    gv.push_back(string_composite(D, y.objects, y.arrows, j[static_cast<std::size_t>(i - 1)],
                                                  j[static_cast<std::size_t>(i)]));
            }
            auto found = target.find(dv, gv, uv);
            if (!found) throw Error(ErrorKind::validation, "first-vertex restriction is not a strict lift");
            objs.push_back(*found);
            sections.push_back(std::move(j));
        }
        std::vector<ArrowId> arrs;
        for (ArrowId e = 0; e < source.components.size(); ++e) {
            ObjectId a = source.cat->src(e), b = source.cat->dst(e);
            const auto& obj = rc.objects[source.lifts[a].front()];
            const SimplexString& y = nd.strings[static_cast<std::size_t>(obj.m)][obj.y];
            const SimplexMap& bm = rc.arrows[source.components[e].front()].b;
            std::vector<ArrowId> comps;
            for (int i = 0; i <= obj.n; ++i)
                comps.push_back(string_composite(D, y.objects, y.arrows, sections[a][static_cast<std::size_t>(i)],
                                                 bm(sections[b][static_cast<std::size_t>(i)])));
            auto found = target.find_arrow(objs[a], objs[b], comps);
            if (!found) throw Error(ErrorKind::validation, "first-vertex restriction of a map is missing");
            arrs.push_back(*found);
        }
        FinFunctor tau(source.cat, target.cat, std::move(objs), std::move(arrs));
        if (auto v = validate(tau); !v) throw Error(ErrorKind::validation, "first-vertex comparison: " + v.violation);
        TauDiagnostic diag;
        diag.name = "tau(" + string_name(*f.cod(), s) + ")";
        diag.comma_fibre = contractibility(source.cat, depth, limits);
        diag.target = contractibility(target.cat, d, limits);
        diag.cofinal = cofinality(tau, depth, limits).verdict;
        out.tau.push_back(std::move(diag));
    }
    return out;
}

}  // namespace catkit
