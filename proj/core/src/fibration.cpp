#include <catkit/fibration.hpp>

#include "tuple_category.hpp"

namespace catkit {

CheckReport validate(const IndexedCat& e) {
    const FinCat& b = *e.base;
    if (e.fibres.size() != b.num_objects()) return CheckReport::fail("fibre count differs from base object count");
    if (e.transitions.size() != b.num_arrows())
        return CheckReport::fail("transition count differs from base arrow count");
    for (ObjectId c = 0; c < b.num_objects(); ++c)
        if (!e.fibres[c]) return CheckReport::fail("missing fibre over " + b.object_name(c));
    for (ArrowId f = 0; f < b.num_arrows(); ++f) {
        const FinFunctor& t = e.push(f);
        if (t.dom().get() != e.fibres[b.src(f)].get() || t.cod().get() != e.fibres[b.dst(f)].get())
            return CheckReport::fail("transition " + b.arrow_name(f) + " has the wrong endpoints");
        if (auto r = validate(t); !r) return CheckReport::fail("transition " + b.arrow_name(f) + ": " + r.violation);
    }
    for (ObjectId c = 0; c < b.num_objects(); ++c)
        if (!same_tables(e.push(b.identity(c)), identity_functor(e.fibres[c])))
            return CheckReport::fail("transition along " + b.arrow_name(b.identity(c)) + " is not the identity");
    for (ArrowId f = 0; f < b.num_arrows(); ++f)
        for (ArrowId g : b.out_arrows(b.dst(f)))
            if (!same_tables(e.push(b.compose(g, f)), compose(e.push(g), e.push(f))))
                return CheckReport::fail("transitions are not strictly functorial on (" + b.arrow_name(g) + ", " +
                                         b.arrow_name(f) + ")");
    return CheckReport::pass();
}

IndexedCat constant_indexed(const CatPtr& base, const CatPtr& fibre) {
    IndexedCat e;
    e.base = base;
    e.fibres.assign(base->num_objects(), fibre);
    FinFunctor id = identity_functor(fibre);
    e.transitions.assign(base->num_arrows(), id);
    return e;
}

IndexedCat pullback(const FinFunctor& f, const IndexedCat& e) {
    IndexedCat out;
    out.base = f.dom();
    for (ObjectId d = 0; d < f.dom()->num_objects(); ++d) out.fibres.push_back(e.fibres[f.obj(d)]);
    for (ArrowId a = 0; a < f.dom()->num_arrows(); ++a) out.transitions.push_back(e.push(f.arr(a)));
    return out;
}

std::optional<ObjectId> TotalCat::object_of(ObjectId c, ObjectId x) const {
    for (ObjectId i = 0; i < objects.size(); ++i)
        if (objects[i] == std::pair{c, x}) return i;
    return std::nullopt;
}

namespace {

std::string object_label(const IndexedCat& e, ObjectId c, ObjectId x) {
    return e.base->object_name(c) + ":" + e.fibre(c).object_name(x);
}

TotalCat finish_total(detail::TupleCategory& t, const IndexedCat& e, CatPtr proj_base,
                      const std::function<detail::Key(ArrowId, ArrowId)>& compose_data) {
    TotalCat out;
    out.total = share(t.build(compose_data));
    std::vector<ObjectId> po;
    std::vector<ArrowId> pa;
    for (ObjectId i = 0; i < t.num_objects(); ++i) {
        const auto& k = t.object_key(i);
        out.objects.emplace_back(k[0], k[1]);
        po.push_back(k[0]);
    }
    out.marked = MapSubset(out.total);
    for (ArrowId a = 0; a < t.num_arrows(); ++a) {
        const auto& d = t.arrow_data(a);
        out.arrows.emplace_back(d[0], d[1]);
        pa.push_back(d[0]);
        // In both constructions the fibre component lives over the target of the base arrow.
        if (is_iso(e.fibre(e.base->dst(d[0])), d[1])) out.marked.insert(a);
    }
    out.proj = FinFunctor(out.total, std::move(proj_base), std::move(po), std::move(pa));
    return out;
}

}  // namespace

TotalCat grothendieck_op(const IndexedCat& e, const Limits& limits) {
    const FinCat& b = *e.base;
    detail::TupleCategory t(limits, "Grothendieck construction");
    for (ObjectId c = 0; c < b.num_objects(); ++c)
        for (ObjectId x = 0; x < e.fibre(c).num_objects(); ++x) t.add_object({c, x}, object_label(e, c, x));
    for (ObjectId c = 0; c < b.num_objects(); ++c)
        for (ObjectId x = 0; x < e.fibre(c).num_objects(); ++x) {
            ObjectId from = *t.find_object({c, x});
            for (ArrowId f : b.out_arrows(c)) {
                ObjectId c2 = b.dst(f);
                ObjectId fx = e.push(f).obj(x);
                const FinCat& fib = e.fibre(c2);
                for (ObjectId x2 = 0; x2 < fib.num_objects(); ++x2)
                    for (ArrowId phi : fib.hom(fx, x2)) {
                        bool id = b.is_identity(f) && fib.is_identity(phi);
                        t.add_arrow(from, *t.find_object({c2, x2}), {f, phi},
                                    b.arrow_name(f) + "|" + fib.arrow_name(phi), id);
                    }
            }
        }
    return finish_total(t, e, e.base, [&](ArrowId g, ArrowId f) -> detail::Key {
        const auto& dg = t.arrow_data(g);
        const auto& df = t.arrow_data(f);
        const FinCat& fib = e.fibre(b.dst(dg[0]));
        return {b.compose(dg[0], df[0]), fib.compose(dg[1], e.push(dg[0]).arr(df[1]))};
    });
}

TotalCat transpose(const IndexedCat& e, const Limits& limits) {
    const FinCat& b = *e.base;
    detail::TupleCategory t(limits, "transpose fibration");
    for (ObjectId c = 0; c < b.num_objects(); ++c)
        for (ObjectId x = 0; x < e.fibre(c).num_objects(); ++x) t.add_object({c, x}, object_label(e, c, x));
    for (ObjectId c = 0; c < b.num_objects(); ++c) {
        const FinCat& fib = e.fibre(c);
        for (ObjectId x = 0; x < fib.num_objects(); ++x) {
            ObjectId from = *t.find_object({c, x});
            for (ArrowId g : b.in_arrows(c)) {
                ObjectId c2 = b.src(g);
                for (ObjectId z = 0; z < e.fibre(c2).num_objects(); ++z)
                    for (ArrowId phi : fib.hom(x, e.push(g).obj(z))) {
                        bool id = b.is_identity(g) && fib.is_identity(phi);
                        t.add_arrow(from, *t.find_object({c2, z}), {g, phi},
                                    b.arrow_name(g) + "|" + fib.arrow_name(phi), id);
                    }
            }
        }
    }
    return finish_total(t, e, share(opposite(b)), [&](ArrowId second, ArrowId first) -> detail::Key {
        const auto& dg = t.arrow_data(first);   // over g: c' -> c
        const auto& dh = t.arrow_data(second);  // over h: c'' -> c'
        const FinCat& fib = e.fibre(b.dst(dg[0]));
        return {b.compose(dg[0], dh[0]), fib.compose(e.push(dg[0]).arr(dh[1]), dg[1])};
    });
}

bool is_opcartesian(const FinFunctor& p, ArrowId a) {
    const FinCat& tc = *p.dom();
    const FinCat& b = *p.cod();
    ObjectId e = tc.src(a), e1 = tc.dst(a);
    for (ArrowId psi : tc.out_arrows(e)) {
        ObjectId e2 = tc.dst(psi);
        for (ArrowId h : b.hom(p.obj(e1), p.obj(e2))) {
            if (b.compose(h, p.arr(a)) != p.arr(psi)) continue;
            int count = 0;
            for (ArrowId chi : tc.hom(e1, e2))
                if (p.arr(chi) == h && tc.compose(chi, a) == psi) ++count;
            if (count != 1) return false;
        }
    }
    return true;
}

bool is_cartesian(const FinFunctor& p, ArrowId a) {
    const FinCat& tc = *p.dom();
    const FinCat& b = *p.cod();
    ObjectId e1 = tc.src(a), e = tc.dst(a);
    for (ArrowId psi : tc.in_arrows(e)) {
        ObjectId e2 = tc.src(psi);
        for (ArrowId h : b.hom(p.obj(e2), p.obj(e1))) {
            if (b.compose(p.arr(a), h) != p.arr(psi)) continue;
            int count = 0;
            for (ArrowId chi : tc.hom(e2, e1))
                if (p.arr(chi) == h && tc.compose(a, chi) == psi) ++count;
            if (count != 1) return false;
        }
    }
    return true;
}

namespace {

CheckReport check_lifts(const TotalCat& t, bool cartesian) {
    const FinCat& tc = *t.total;
    const FinCat& b = *t.proj.cod();
    for (ArrowId a = 0; a < tc.num_arrows(); ++a) {
        bool universal = cartesian ? is_cartesian(t.proj, a) : is_opcartesian(t.proj, a);
        if (universal != t.marked.contains(a))
            return CheckReport::fail("arrow " + tc.arrow_name(a) + (universal ? " is universal but unmarked"
                                                                              : " is marked but not universal"));
    }
    for (ObjectId x = 0; x < tc.num_objects(); ++x) {
        ObjectId c = t.proj.obj(x);
        auto base_arrows = cartesian ? b.in_arrows(c) : b.out_arrows(c);
        auto lifts = cartesian ? tc.in_arrows(x) : tc.out_arrows(x);
        for (ArrowId f : base_arrows) {
            bool found = false;
            for (ArrowId a : lifts)
                if (t.proj.arr(a) == f && t.marked.contains(a)) found = true;
            if (!found)
                return CheckReport::fail("no marked lift of " + b.arrow_name(f) + " at " + tc.object_name(x));
        }
    }
    return CheckReport::pass();
}

}  // namespace

CheckReport check_opfibration(const TotalCat& t) { return check_lifts(t, false); }
CheckReport check_fibration(const TotalCat& t) { return check_lifts(t, true); }

FibreInclusion strict_fibre(const FinFunctor& p, ObjectId c) {
    const FinCat& tc = *p.dom();
    const FinCat& b = *p.cod();
    FinCat::Builder builder;
    std::vector<ObjectId> objs, local(tc.num_objects(), static_cast<ObjectId>(-1));
    for (ObjectId x = 0; x < tc.num_objects(); ++x)
        if (p.obj(x) == c) {
            local[x] = builder.add_object(tc.object_name(x));
            objs.push_back(x);
        }
    std::vector<ArrowId> arrs, local_arrow(tc.num_arrows(), no_arrow);
    for (ArrowId a = 0; a < tc.num_arrows(); ++a)
        if (p.arr(a) == b.identity(c) && local[tc.src(a)] != static_cast<ObjectId>(-1)) {
            local_arrow[a] = builder.add_arrow(tc.arrow_name(a), local[tc.src(a)], local[tc.dst(a)]);
            if (tc.is_identity(a)) builder.set_identity(local[tc.src(a)], local_arrow[a]);
            arrs.push_back(a);
        }
    FinCat fib = builder.build([&](ArrowId g, ArrowId f) { return local_arrow[tc.compose(arrs[g], arrs[f])]; });
    FibreInclusion out;
    out.fibre = share(std::move(fib));
    out.inclusion = FinFunctor(out.fibre, p.dom(), std::move(objs), std::move(arrs));
    return out;
}

MarkedIndexedCat mark(const IndexedCat& e, WeqPreset preset) {
    MarkedIndexedCat m{e, {}};
    for (const auto& f : e.fibres) {
        switch (preset) {
            case WeqPreset::isos: m.weq.push_back(MapSubset::isos(f)); break;
            case WeqPreset::all: m.weq.push_back(MapSubset::all(f)); break;
            case WeqPreset::identities: m.weq.push_back(MapSubset::identities(f)); break;
        }
    }
    return m;
}

CheckReport check_marked(const MarkedIndexedCat& m) {
    const IndexedCat& e = m.cat;
    const FinCat& b = *e.base;
    if (m.weq.size() != b.num_objects()) return CheckReport::fail("weak equivalences missing for some fibre");
    for (ObjectId c = 0; c < b.num_objects(); ++c) {
        const FinCat& fib = e.fibre(c);
        const MapSubset& w = m.weq[c];
        if (w.carrier().get() != e.fibres[c].get())
            return CheckReport::fail("weak equivalences over " + b.object_name(c) + " live in another category");
        for (ObjectId x = 0; x < fib.num_objects(); ++x)
            if (!w.contains(fib.identity(x)))
                return CheckReport::fail("identity " + fib.arrow_name(fib.identity(x)) + " over " + b.object_name(c) +
                                         " is not a weak equivalence");
        for (ArrowId f = 0; f < fib.num_arrows(); ++f) {
            if (!w.contains(f)) continue;
            for (ArrowId g : fib.out_arrows(fib.dst(f)))
                if (is_iso(fib, g) && !w.contains(fib.compose(g, f)))
                    return CheckReport::fail("weak equivalences over " + b.object_name(c) +
                                             " are not closed under composing " + fib.arrow_name(f) + " with " +
                                             fib.arrow_name(g));
            for (ArrowId g : fib.in_arrows(fib.src(f)))
                if (is_iso(fib, g) && !w.contains(fib.compose(f, g)))
                    return CheckReport::fail("weak equivalences over " + b.object_name(c) +
                                             " are not closed under composing " + fib.arrow_name(g) + " with " +
                                             fib.arrow_name(f));
        }
    }
    for (ArrowId a = 0; a < b.num_arrows(); ++a) {
        const FinFunctor& t = e.push(a);
        const FinCat& fib = e.fibre(b.src(a));
        for (ArrowId f = 0; f < fib.num_arrows(); ++f)
            if (m.weq[b.src(a)].contains(f) && !m.weq[b.dst(a)].contains(t.arr(f)))
                return CheckReport::fail("transition " + b.arrow_name(a) + " does not preserve the weak equivalence " +
                                         fib.arrow_name(f));
    }
    return CheckReport::pass();
}

CheckReport check_two_of_three(const MapSubset& w) {
    const FinCat& c = *w.carrier();
    for (ArrowId f = 0; f < c.num_arrows(); ++f)
        for (ArrowId g : c.out_arrows(c.dst(f))) {
            ArrowId gf = c.compose(g, f);
            int in = w.contains(f) + w.contains(g) + w.contains(gf);
            if (in == 2)
                return CheckReport::fail("two-out-of-three fails for " + c.arrow_name(g) + " after " +
                                         c.arrow_name(f));
        }
    return CheckReport::pass();
}

}  // namespace catkit
