#include <catkit/fincat.hpp>

#include "tuple_category.hpp"

#include <algorithm>
#include <numeric>

namespace catkit {

namespace {

std::uint64_t pair_key(ArrowId g, ArrowId f) { return (static_cast<std::uint64_t>(g) << 32) | f; }

bool same_category(const CatPtr& a, const CatPtr& b) {
    return a == b || (a && b && a->num_objects() == b->num_objects() && a->num_arrows() == b->num_arrows());
}

}  // namespace

std::span<const ArrowId> FinCat::hom(ObjectId a, ObjectId b) const {
    auto first = out_.begin() + static_cast<std::ptrdiff_t>(out_offset_[a]);
    auto last = out_.begin() + static_cast<std::ptrdiff_t>(out_offset_[a + 1]);
    auto lo = std::lower_bound(first, last, b, [&](ArrowId f, ObjectId t) { return dst_[f] < t; });
    auto hi = std::upper_bound(lo, last, b, [&](ObjectId t, ArrowId f) { return t < dst_[f]; });
    return {out_.data() + (lo - out_.begin()), static_cast<std::size_t>(hi - lo)};
}

std::optional<ObjectId> FinCat::find_object(std::string_view name) const {
    auto it = object_index_.find(std::string(name));
    if (it == object_index_.end()) return std::nullopt;
    return it->second;
}

std::optional<ArrowId> FinCat::find_arrow(std::string_view name) const {
    auto it = arrow_index_.find(std::string(name));
    if (it == arrow_index_.end()) return std::nullopt;
    return it->second;
}

ObjectId FinCat::Builder::add_object(std::string name) {
    object_names_.push_back(std::move(name));
    identity_.push_back(no_arrow);
    return static_cast<ObjectId>(object_names_.size() - 1);
}

ArrowId FinCat::Builder::add_arrow(std::string name, ObjectId src, ObjectId dst) {
    if (src >= object_names_.size() || dst >= object_names_.size())
        throw Error(ErrorKind::validation, "arrow '" + name + "' has an endpoint outside the object list");
    arrow_names_.push_back(std::move(name));
    src_.push_back(src);
    dst_.push_back(dst);
    return static_cast<ArrowId>(arrow_names_.size() - 1);
}

ArrowId FinCat::Builder::add_identity(ObjectId x) {
    ArrowId f = add_arrow("id_" + object_names_[x], x, x);
    identity_[x] = f;
    return f;
}

void FinCat::Builder::set_identity(ObjectId x, ArrowId f) { identity_[x] = f; }

void FinCat::Builder::set_composite(ArrowId g, ArrowId f, ArrowId gf) { explicit_[pair_key(g, f)] = gf; }

FinCat FinCat::Builder::build() {
    return finish([this](ArrowId g, ArrowId f) -> ArrowId {
        if (auto it = explicit_.find(pair_key(g, f)); it != explicit_.end()) return it->second;
        if (identity_[src_[g]] == g) return f;
        if (identity_[dst_[f]] == f) return g;
        return no_arrow;
    });
}

FinCat FinCat::Builder::build(const std::function<ArrowId(ArrowId g, ArrowId f)>& compose) { return finish(compose); }

FinCat FinCat::Builder::finish(const std::function<ArrowId(ArrowId g, ArrowId f)>& compose) {
    FinCat c;
    const std::size_t n = object_names_.size();
    const std::size_t m = arrow_names_.size();
    c.object_names_ = object_names_;
    c.arrow_names_ = arrow_names_;
    c.src_ = src_;
    c.dst_ = dst_;
    c.identity_ = identity_;

    c.out_.resize(m);
    std::iota(c.out_.begin(), c.out_.end(), 0);
    std::stable_sort(c.out_.begin(), c.out_.end(), [&](ArrowId a, ArrowId b) {
        return std::pair(src_[a], dst_[a]) < std::pair(src_[b], dst_[b]);
    });
    c.in_.resize(m);
    std::iota(c.in_.begin(), c.in_.end(), 0);
    std::stable_sort(c.in_.begin(), c.in_.end(), [&](ArrowId a, ArrowId b) {
        return std::pair(dst_[a], src_[a]) < std::pair(dst_[b], src_[b]);
    });
    c.out_offset_.assign(n + 1, 0);
    c.in_offset_.assign(n + 1, 0);
    for (std::size_t f = 0; f < m; ++f) {
        ++c.out_offset_[src_[f] + 1];
        ++c.in_offset_[dst_[f] + 1];
    }
    for (std::size_t x = 0; x < n; ++x) {
        c.out_offset_[x + 1] += c.out_offset_[x];
        c.in_offset_[x + 1] += c.in_offset_[x];
    }
    c.out_position_.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
        ArrowId f = c.out_[k];
        c.out_position_[f] = static_cast<std::uint32_t>(k - c.out_offset_[src_[f]]);
    }
    c.row_offset_.resize(m + 1);
    c.row_offset_[0] = 0;
    for (std::size_t f = 0; f < m; ++f) {
        ObjectId t = dst_[f];
        c.row_offset_[f + 1] = c.row_offset_[f] + (c.out_offset_[t + 1] - c.out_offset_[t]);
    }
    c.table_.assign(c.row_offset_[m], no_arrow);
    for (ArrowId f = 0; f < m; ++f) {
        for (ArrowId g : c.out_arrows(dst_[f])) c.table_[c.row_offset_[f] + c.out_position_[g]] = compose(g, f);
    }
    for (ObjectId x = 0; x < n; ++x) c.object_index_.emplace(c.object_names_[x], x);
    for (ArrowId f = 0; f < m; ++f) c.arrow_index_.emplace(c.arrow_names_[f], f);
    return c;
}

CheckReport validate(const FinCat& c) {
    for (ObjectId x = 0; x < c.num_objects(); ++x) {
        ArrowId e = c.identity(x);
        if (e == no_arrow) return CheckReport::fail("object '" + c.object_name(x) + "' has no identity");
        if (c.src(e) != x || c.dst(e) != x)
            return CheckReport::fail("identity of '" + c.object_name(x) + "' is not an endomorphism of it");
    }
    for (ArrowId f = 0; f < c.num_arrows(); ++f) {
        for (ArrowId g : c.out_arrows(c.dst(f))) {
            ArrowId h = c.compose(g, f);
            if (h == no_arrow || h >= c.num_arrows())
                return CheckReport::fail("composite " + c.arrow_name(g) + " o " + c.arrow_name(f) + " is undefined");
            if (c.src(h) != c.src(f) || c.dst(h) != c.dst(g))
                return CheckReport::fail("composite " + c.arrow_name(g) + " o " + c.arrow_name(f) +
                                         " has the wrong endpoints");
        }
    }
    for (ArrowId f = 0; f < c.num_arrows(); ++f) {
        if (c.compose(f, c.identity(c.src(f))) != f || c.compose(c.identity(c.dst(f)), f) != f)
            return CheckReport::fail("unit law fails for " + c.arrow_name(f));
    }
    for (ArrowId f = 0; f < c.num_arrows(); ++f) {
        for (ArrowId g : c.out_arrows(c.dst(f))) {
            ArrowId gf = c.compose(g, f);
            for (ArrowId h : c.out_arrows(c.dst(g))) {
                if (c.compose(h, gf) != c.compose(c.compose(h, g), f))
                    return CheckReport::fail("associativity fails on (" + c.arrow_name(h) + ", " + c.arrow_name(g) +
                                             ", " + c.arrow_name(f) + ")");
            }
        }
    }
    return CheckReport::pass();
}

FinCat opposite(const FinCat& c) {
    FinCat::Builder b;
    for (ObjectId x = 0; x < c.num_objects(); ++x) b.add_object(c.object_name(x));
    for (ArrowId f = 0; f < c.num_arrows(); ++f) b.add_arrow(c.arrow_name(f), c.dst(f), c.src(f));
    for (ObjectId x = 0; x < c.num_objects(); ++x) b.set_identity(x, c.identity(x));
    return b.build([&](ArrowId g, ArrowId f) { return c.compose(f, g); });
}

std::optional<ArrowId> inverse(const FinCat& c, ArrowId f) {
    for (ArrowId g : c.hom(c.dst(f), c.src(f))) {
        if (c.compose(g, f) == c.identity(c.src(f)) && c.compose(f, g) == c.identity(c.dst(f))) return g;
    }
    return std::nullopt;
}

bool is_iso(const FinCat& c, ArrowId f) { return inverse(c, f).has_value(); }

ArrowId compose_path(const FinCat& c, std::span<const ArrowId> path) {
    ArrowId acc = path.front();
    for (std::size_t i = 1; i < path.size(); ++i) acc = c.compose(path[i], acc);
    return acc;
}

CheckReport validate(const FinFunctor& F) {
    const FinCat& A = *F.dom();
    const FinCat& B = *F.cod();
    if (F.object_map().size() != A.num_objects() || F.arrow_map().size() != A.num_arrows())
        return CheckReport::fail("functor tables do not cover the domain");
    for (ObjectId x = 0; x < A.num_objects(); ++x)
        if (F.obj(x) >= B.num_objects()) return CheckReport::fail("object '" + A.object_name(x) + "' has no image");
    for (ArrowId f = 0; f < A.num_arrows(); ++f) {
        ArrowId g = F.arr(f);
        if (g >= B.num_arrows()) return CheckReport::fail("arrow '" + A.arrow_name(f) + "' has no image");
        if (B.src(g) != F.obj(A.src(f)) || B.dst(g) != F.obj(A.dst(f)))
            return CheckReport::fail("image of '" + A.arrow_name(f) + "' has the wrong endpoints");
    }
    for (ObjectId x = 0; x < A.num_objects(); ++x)
        if (F.arr(A.identity(x)) != B.identity(F.obj(x)))
            return CheckReport::fail("identity of '" + A.object_name(x) + "' is not preserved");
    for (ArrowId f = 0; f < A.num_arrows(); ++f) {
        for (ArrowId g : A.out_arrows(A.dst(f))) {
            if (F.arr(A.compose(g, f)) != B.compose(F.arr(g), F.arr(f)))
                return CheckReport::fail("composite " + A.arrow_name(g) + " o " + A.arrow_name(f) + " is not preserved");
        }
    }
    return CheckReport::pass();
}

FinFunctor identity_functor(const CatPtr& c) {
    std::vector<ObjectId> objs(c->num_objects());
    std::iota(objs.begin(), objs.end(), 0);
    std::vector<ArrowId> arrs(c->num_arrows());
    std::iota(arrs.begin(), arrs.end(), 0);
    return FinFunctor(c, c, std::move(objs), std::move(arrs));
}

FinFunctor compose(const FinFunctor& g, const FinFunctor& f) {
    if (!same_category(f.cod(), g.dom()))
        throw Error(ErrorKind::precondition, "functors are not composable");
    std::vector<ObjectId> objs(f.dom()->num_objects());
    for (ObjectId x = 0; x < objs.size(); ++x) objs[x] = g.obj(f.obj(x));
    std::vector<ArrowId> arrs(f.dom()->num_arrows());
    for (ArrowId a = 0; a < arrs.size(); ++a) arrs[a] = g.arr(f.arr(a));
    return FinFunctor(f.dom(), g.cod(), std::move(objs), std::move(arrs));
}

FinFunctor constant_functor(const CatPtr& dom, const CatPtr& cod, ObjectId value) {
    return FinFunctor(dom, cod, std::vector<ObjectId>(dom->num_objects(), value),
                      std::vector<ArrowId>(dom->num_arrows(), cod->identity(value)));
}

bool same_tables(const FinFunctor& a, const FinFunctor& b) {
    return a.object_map() == b.object_map() && a.arrow_map() == b.arrow_map();
}

CheckReport validate(const NatTrans& t) {
    const FinCat& A = *t.source.dom();
    const FinCat& B = *t.source.cod();
    if (t.components.size() != A.num_objects()) return CheckReport::fail("component table does not cover the domain");
    for (ObjectId x = 0; x < A.num_objects(); ++x) {
        ArrowId c = t.components[x];
        if (c >= B.num_arrows() || B.src(c) != t.source.obj(x) || B.dst(c) != t.target.obj(x))
            return CheckReport::fail("component at '" + A.object_name(x) + "' has the wrong endpoints");
    }
    for (ArrowId f = 0; f < A.num_arrows(); ++f) {
        if (B.compose(t.target.arr(f), t.components[A.src(f)]) != B.compose(t.components[A.dst(f)], t.source.arr(f)))
            return CheckReport::fail("naturality fails at '" + A.arrow_name(f) + "'");
    }
    return CheckReport::pass();
}

MapSubset MapSubset::all(const CatPtr& c) {
    MapSubset s(c);
    std::fill(s.member_.begin(), s.member_.end(), 1);
    return s;
}

MapSubset MapSubset::isos(const CatPtr& c) {
    MapSubset s(c);
    for (ArrowId f = 0; f < c->num_arrows(); ++f)
        if (is_iso(*c, f)) s.insert(f);
    return s;
}

MapSubset MapSubset::identities(const CatPtr& c) {
    MapSubset s(c);
    for (ObjectId x = 0; x < c->num_objects(); ++x) s.insert(c->identity(x));
    return s;
}

std::size_t MapSubset::size() const { return static_cast<std::size_t>(std::count(member_.begin(), member_.end(), 1)); }

CommaCategory comma(const FinFunctor& f, const FinFunctor& g, const Limits& limits) {
    if (!same_category(f.cod(), g.cod())) throw Error(ErrorKind::precondition, "comma requires a common codomain");
    const FinCat& A = *f.dom();
    const FinCat& B = *g.dom();
    const FinCat& C = *f.cod();
    detail::TupleCategory t(limits, "comma category");
    CommaCategory out;
    for (ObjectId a = 0; a < A.num_objects(); ++a)
        for (ObjectId b = 0; b < B.num_objects(); ++b)
            for (ArrowId u : C.hom(f.obj(a), g.obj(b))) {
                t.add_object({a, b, u}, "(" + A.object_name(a) + "," + B.object_name(b) + "," + C.arrow_name(u) + ")");
                out.objects.push_back({a, b, u});
            }
    for (ObjectId o = 0; o < t.num_objects(); ++o) {
        auto [a, b, u] = out.objects[o];
        for (ArrowId p : A.out_arrows(a))
            for (ArrowId q : B.out_arrows(b)) {
                ArrowId lhs = C.compose(g.arr(q), u);
                ObjectId a2 = A.dst(p), b2 = B.dst(q);
                for (ArrowId u2 : C.hom(f.obj(a2), g.obj(b2))) {
                    if (C.compose(u2, f.arr(p)) != lhs) continue;
                    ObjectId o2 = *t.find_object({a2, b2, u2});
                    t.add_arrow(o, o2, {p, q}, "(" + A.arrow_name(p) + "," + B.arrow_name(q) + ")",
                                o == o2 && A.is_identity(p) && B.is_identity(q));
                }
            }
    }
    FinCat c = t.build([&](ArrowId second, ArrowId first) {
        const auto& d2 = t.arrow_data(second);
        const auto& d1 = t.arrow_data(first);
        return detail::Key{A.compose(d2[0], d1[0]), B.compose(d2[1], d1[1])};
    });
    out.cat = share(std::move(c));
    std::vector<ObjectId> lo, ro;
    for (const auto& obj : out.objects) {
        lo.push_back(obj.left);
        ro.push_back(obj.right);
    }
    std::vector<ArrowId> la, ra;
    for (ArrowId x = 0; x < out.cat->num_arrows(); ++x) {
        la.push_back(t.arrow_data(x)[0]);
        ra.push_back(t.arrow_data(x)[1]);
    }
    out.to_left = FinFunctor(out.cat, f.dom(), std::move(lo), std::move(la));
    out.to_right = FinFunctor(out.cat, g.dom(), std::move(ro), std::move(ra));
    return out;
}

CommaCategory under(ObjectId b, const FinFunctor& f, const Limits& limits) {
    auto point = share(ordinal(0));
    return comma(constant_functor(point, f.cod(), b), f, limits);
}

namespace {

UniversalObject find_universal(const FinCat& c, bool initial) {
    UniversalObject u;
    for (ObjectId x = 0; x < c.num_objects(); ++x) {
        bool ok = true;
        for (ObjectId y = 0; y < c.num_objects() && ok; ++y)
            ok = (initial ? c.hom(x, y) : c.hom(y, x)).size() == 1;
        if (ok) {
            if (!u.object) u.object = x;
            ++u.count;
        }
    }
    return u;
}

}  // namespace

UniversalObject find_initial(const FinCat& c) { return find_universal(c, true); }
UniversalObject find_terminal(const FinCat& c) { return find_universal(c, false); }

AdjunctionVerdict check_adjunction(const FinFunctor& l, const FinFunctor& r) {
    if (!same_category(l.cod(), r.dom()) || !same_category(r.cod(), l.dom()))
        throw Error(ErrorKind::precondition, "adjunction candidates have mismatched endpoints");
    const FinCat& A = *l.dom();
    const FinCat& B = *l.cod();
    AdjunctionVerdict v;
    auto fail = [&](std::optional<ObjectId> a, std::optional<ObjectId> b, std::string why) {
        v.holds = false;
        v.witness_a = a;
        v.witness_b = b;
        v.witness = std::move(why);
        return v;
    };

    std::vector<ArrowId> counit(B.num_objects(), no_arrow);
    std::vector<ArrowId> images;
    for (ObjectId b = 0; b < B.num_objects(); ++b) {
        ObjectId rb = r.obj(b);
        for (ObjectId a = 0; a < A.num_objects(); ++a) {
            auto left = A.hom(a, rb).size();
            auto right = B.hom(l.obj(a), b).size();
            if (left != right)
                return fail(a, b,
                            "hom-set sizes differ at (a=" + A.object_name(a) + ", b=" + B.object_name(b) +
                                "): |A(a, r b)| = " + std::to_string(left) + ", |B(l a, b)| = " + std::to_string(right));
        }
        for (ArrowId eps : B.hom(l.obj(rb), b)) {
            bool bijective = true;
            for (ObjectId a = 0; a < A.num_objects() && bijective; ++a) {
                images.clear();
                for (ArrowId g : A.hom(a, rb)) images.push_back(B.compose(eps, l.arr(g)));
                std::sort(images.begin(), images.end());
                bijective = std::adjacent_find(images.begin(), images.end()) == images.end();
            }
            if (bijective) {
                counit[b] = eps;
                break;
            }
        }
        if (counit[b] == no_arrow)
            return fail(std::nullopt, b, "no universal arrow into b=" + B.object_name(b));
    }
    for (ArrowId v2 = 0; v2 < B.num_arrows(); ++v2) {
        ObjectId b = B.src(v2), b2 = B.dst(v2);
        if (B.compose(v2, counit[b]) != B.compose(counit[b2], l.arr(r.arr(v2))))
            return fail(std::nullopt, b, "counit is not natural at " + B.arrow_name(v2));
    }
    std::vector<ArrowId> unit(A.num_objects(), no_arrow);
    for (ObjectId a = 0; a < A.num_objects(); ++a) {
        ObjectId la = l.obj(a);
        for (ArrowId g : A.hom(a, r.obj(la))) {
            if (B.compose(counit[la], l.arr(g)) == B.identity(la)) {
                unit[a] = g;
                break;
            }
        }
        if (unit[a] == no_arrow) return fail(a, std::nullopt, "no unit component at a=" + A.object_name(a));
    }
    for (ArrowId u = 0; u < A.num_arrows(); ++u) {
        ObjectId a = A.src(u), a2 = A.dst(u);
        if (A.compose(r.arr(l.arr(u)), unit[a]) != A.compose(unit[a2], u))
            return fail(a, std::nullopt, "unit is not natural at " + A.arrow_name(u));
    }
    for (ObjectId a = 0; a < A.num_objects(); ++a) {
        ObjectId la = l.obj(a);
        if (B.compose(counit[la], l.arr(unit[a])) != B.identity(la))
            return fail(a, std::nullopt, "triangle identity on l fails at a=" + A.object_name(a));
    }
    for (ObjectId b = 0; b < B.num_objects(); ++b) {
        ObjectId rb = r.obj(b);
        if (A.compose(r.arr(counit[b]), unit[rb]) != A.identity(rb))
            return fail(std::nullopt, b, "triangle identity on r fails at b=" + B.object_name(b));
    }
    v.holds = true;
    v.unit = NatTrans{identity_functor(l.dom()), compose(r, l), std::move(unit)};
    v.counit = NatTrans{compose(l, r), identity_functor(l.cod()), std::move(counit)};
    return v;
}

EquivalenceVerdict is_equivalence(const FinFunctor& F) {
    const FinCat& A = *F.dom();
    const FinCat& B = *F.cod();
    EquivalenceVerdict v;
    v.faithful = v.full = true;
    std::vector<char> seen(B.num_arrows(), 0);
    for (ObjectId a = 0; a < A.num_objects(); ++a)
        for (ObjectId a2 = 0; a2 < A.num_objects(); ++a2) {
            auto src = A.hom(a, a2);
            auto dst = B.hom(F.obj(a), F.obj(a2));
            std::size_t distinct = 0;
            for (ArrowId f : src) {
                if (!seen[F.arr(f)]) ++distinct;
                seen[F.arr(f)] = 1;
            }
            for (ArrowId f : src) seen[F.arr(f)] = 0;
            if (distinct != src.size() && v.faithful) {
                v.faithful = false;
                if (v.witness.empty())
                    v.witness = "not faithful on (" + A.object_name(a) + ", " + A.object_name(a2) + ")";
            }
            if (distinct != dst.size() && v.full) {
                v.full = false;
                if (v.witness.empty()) v.witness = "not full on (" + A.object_name(a) + ", " + A.object_name(a2) + ")";
            }
        }
    v.essentially_surjective = true;
    for (ObjectId b = 0; b < B.num_objects(); ++b) {
        bool hit = false;
        for (ObjectId a = 0; a < A.num_objects() && !hit; ++a)
            for (ArrowId u : B.hom(F.obj(a), b))
                if (is_iso(B, u)) {
                    hit = true;
                    break;
                }
        if (!hit) {
            v.essentially_surjective = false;
            if (v.witness.empty()) v.witness = "object '" + B.object_name(b) + "' is not in the essential image";
            break;
        }
    }
    return v;
}

FinCat ordinal(int n) {
    FinCat::Builder b;
    for (int i = 0; i <= n; ++i) b.add_object(std::to_string(i));
    std::vector<std::vector<ArrowId>> le(n + 1, std::vector<ArrowId>(n + 1, no_arrow));
    for (int i = 0; i <= n; ++i)
        for (int j = i; j <= n; ++j) {
            std::string name = i == j ? "id_" + std::to_string(i) : std::to_string(i) + "->" + std::to_string(j);
            le[i][j] = b.add_arrow(name, i, j);
            if (i == j) b.set_identity(i, le[i][j]);
        }
    return b.build([&](ArrowId g, ArrowId f) { return le[b.src(f)][b.dst(g)]; });
}

FinCat discrete(std::size_t k) {
    FinCat::Builder b;
    for (std::size_t i = 0; i < k; ++i) b.add_identity(b.add_object(std::to_string(i)));
    return b.build();
}

FinCat cyclic_group(std::size_t n) {
    FinCat::Builder b;
    b.add_object("*");
    for (std::size_t k = 0; k < n; ++k) {
        std::string name = k == 0 ? "e" : (k == 1 ? "g" : "g^" + std::to_string(k));
        b.add_arrow(name, 0, 0);
    }
    b.set_identity(0, 0);
    return b.build([n](ArrowId g, ArrowId f) { return static_cast<ArrowId>((g + f) % n); });
}

FinCat codiscrete(std::size_t k) {
    FinCat::Builder b;
    for (std::size_t i = 0; i < k; ++i) b.add_object(std::to_string(i));
    std::vector<std::vector<ArrowId>> arr(k, std::vector<ArrowId>(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            std::string name = i == j ? "id_" + std::to_string(i) : std::to_string(i) + "->" + std::to_string(j);
            arr[i][j] = b.add_arrow(name, static_cast<ObjectId>(i), static_cast<ObjectId>(j));
            if (i == j) b.set_identity(static_cast<ObjectId>(i), arr[i][j]);
        }
    return b.build([&](ArrowId g, ArrowId f) { return arr[b.src(f)][b.dst(g)]; });
}

FinCat product(const FinCat& a, const FinCat& b) {
    FinCat::Builder p;
    const auto nb = b.num_objects();
    const auto mb = b.num_arrows();
    for (ObjectId x = 0; x < a.num_objects(); ++x)
        for (ObjectId y = 0; y < nb; ++y) p.add_object("(" + a.object_name(x) + "," + b.object_name(y) + ")");
    for (ArrowId f = 0; f < a.num_arrows(); ++f)
        for (ArrowId g = 0; g < mb; ++g)
            p.add_arrow("(" + a.arrow_name(f) + "," + b.arrow_name(g) + ")",
                        static_cast<ObjectId>(a.src(f) * nb + b.src(g)), static_cast<ObjectId>(a.dst(f) * nb + b.dst(g)));
    for (ObjectId x = 0; x < a.num_objects(); ++x)
        for (ObjectId y = 0; y < nb; ++y)
            p.set_identity(static_cast<ObjectId>(x * nb + y), static_cast<ArrowId>(a.identity(x) * mb + b.identity(y)));
    return p.build([&](ArrowId second, ArrowId first) {
        return static_cast<ArrowId>(a.compose(second / mb, first / mb) * mb + b.compose(second % mb, first % mb));
    });
}

}  // namespace catkit
