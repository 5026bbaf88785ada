#include <catkit/sections.hpp>

#include <algorithm>

namespace catkit {

CheckReport validate(const IndexedCat& e, const Section& s) {
    const FinCat& b = *e.base;
    if (s.values.size() != b.num_objects() || s.structure.size() != b.num_arrows())
        return CheckReport::fail("section tables do not match the base");
    for (ObjectId c = 0; c < b.num_objects(); ++c)
        if (s.values[c] >= e.fibre(c).num_objects())
            return CheckReport::fail("value over " + b.object_name(c) + " is not an object of its fibre");
    for (ArrowId f = 0; f < b.num_arrows(); ++f) {
        const FinCat& fib = e.fibre(b.dst(f));
        ArrowId sf = s.structure[f];
        if (sf >= fib.num_arrows() || fib.src(sf) != e.push(f).obj(s.values[b.src(f)]) ||
            fib.dst(sf) != s.values[b.dst(f)])
            return CheckReport::fail("structure map over " + b.arrow_name(f) + " has the wrong endpoints");
        if (b.is_identity(f) && !fib.is_identity(sf))
            return CheckReport::fail("structure map over " + b.arrow_name(f) + " is not an identity");
    }
    for (ArrowId f = 0; f < b.num_arrows(); ++f)
        for (ArrowId g : b.out_arrows(b.dst(f))) {
            const FinCat& fib = e.fibre(b.dst(g));
            ArrowId want = fib.compose(s.structure[g], e.push(g).arr(s.structure[f]));
            if (s.structure[b.compose(g, f)] != want)
                return CheckReport::fail("cocycle fails on (" + b.arrow_name(g) + ", " + b.arrow_name(f) + ")");
        }
    return CheckReport::pass();
}

std::vector<Section> enumerate_sections(const IndexedCat& e, const Limits& limits, const StructureFilter& accept) {
    const FinCat& b = *e.base;
    const std::size_t nobj = b.num_objects();
    std::vector<std::vector<ArrowId>> arrows_at(nobj);
    for (ArrowId f = 0; f < b.num_arrows(); ++f) arrows_at[std::max(b.src(f), b.dst(f))].push_back(f);
    std::vector<std::size_t> pos(b.num_arrows());
    std::size_t p = 0;
    for (const auto& list : arrows_at)
        for (ArrowId f : list) pos[f] = p++;
    struct Triple {
        ArrowId g, f, h;
    };
    std::vector<std::vector<Triple>> triples_at(b.num_arrows());
    for (ArrowId f = 0; f < b.num_arrows(); ++f) {
        if (b.is_identity(f)) continue;
        for (ArrowId g : b.out_arrows(b.dst(f))) {
            if (b.is_identity(g)) continue;
            ArrowId h = b.compose(g, f);
            ArrowId last = f;
            if (pos[g] > pos[last]) last = g;
            if (pos[h] > pos[last]) last = h;
            triples_at[last].push_back({g, f, h});
        }
    }

    std::vector<Section> out;
    Section cur{std::vector<ObjectId>(nobj, 0), std::vector<ArrowId>(b.num_arrows(), no_arrow)};
    std::size_t budget = limits.max_items * 100;
    std::size_t visited = 0;

    std::function<void(ObjectId)> assign_object;
    std::function<void(ObjectId, std::size_t)> assign_arrow = [&](ObjectId v, std::size_t k) {
        if (++visited > budget)
            throw Error(ErrorKind::size_cap, "size cap exceeded while searching sections");
        if (k == arrows_at[v].size()) {
            assign_object(v + 1);
            return;
        }
        ArrowId f = arrows_at[v][k];
        const FinCat& fib = e.fibre(b.dst(f));
        auto try_value = [&](ArrowId sigma) {
            cur.structure[f] = sigma;
            for (const auto& t : triples_at[f]) {
                const FinCat& tf = e.fibre(b.dst(t.g));
                if (cur.structure[t.h] != tf.compose(cur.structure[t.g], e.push(t.g).arr(cur.structure[t.f]))) return;
            }
            if (accept && !accept(cur, f)) return;
            assign_arrow(v, k + 1);
        };
        if (b.is_identity(f)) {
            try_value(fib.identity(cur.values[v]));
        } else {
            for (ArrowId sigma : fib.hom(e.push(f).obj(cur.values[b.src(f)]), cur.values[b.dst(f)])) try_value(sigma);
        }
        cur.structure[f] = no_arrow;
    };
    assign_object = [&](ObjectId v) {
        if (v == nobj) {
            out.push_back(cur);
            limits.check(out.size(), "sections");
            return;
        }
        for (ObjectId x = 0; x < e.fibre(v).num_objects(); ++x) {
            cur.values[v] = x;
            assign_arrow(v, 0);
        }
    };
    assign_object(0);
    return out;
}

Section embed(const SimplicialExtension& x, const Section& s) {
    const Replacement& r = *x.replacement;
    const FinCat& rc = *r.cat();
    const IndexedCat& e = x.base;
    const FinCat& base = *e.base;
    Section out;
    std::vector<StringSection> values;
    for (ObjectId c = 0; c < rc.num_objects(); ++c) {
        const SimplexString& str = x.fibre(c).string;
        StringSection a;
        ObjectId v = s.values[str.objects[0]];
        for (int i = 0; i <= str.dim(); ++i) {
            ObjectId y = e.push(chain_arrow(base, str, 0, i)).obj(v);
            a.objects.push_back(y);
            if (i > 0) a.comparisons.push_back(e.fibre(str.objects[static_cast<std::size_t>(i)]).identity(y));
        }
        out.values.push_back(*x.fibre(c).find(a));
        values.push_back(std::move(a));
    }
    for (ArrowId alpha = 0; alpha < rc.num_arrows(); ++alpha) {
        ObjectId c = rc.src(alpha), c2 = rc.dst(alpha);
        const SimplexString& str = x.fibre(c).string;
        const SimplexMap& d = r.delta(alpha);
        ArrowId head = s.structure[chain_arrow(base, str, 0, d(0))];
        std::vector<ArrowId> comps;
        for (int j = 0; j <= d.m; ++j) comps.push_back(e.push(chain_arrow(base, str, d(0), d(j))).arr(head));
        auto from = x.fibre(c2).find(pull_section(e, str, values[c], d));
        auto found = x.fibre(c2).find_arrow(*from, out.values[c2], comps);
        if (!found) throw Error(ErrorKind::validation, "embedded structure map is not a map of string sections");
        out.structure.push_back(*found);
    }
    return out;
}

bool sends_segal_to_cartesian(const SimplicialExtension& x, const Section& p, ArrowId alpha) {
    const FinCat& rc = *x.replacement->cat();
    ObjectId c = rc.src(alpha);
    ArrowId phi = adjunct(x, alpha, p.values[c], p.structure[alpha]);
    return is_iso(*x.fibre(c).cat, phi);
}

std::string to_string(SegalCriterion c) {
    switch (c) {
        case SegalCriterion::composite_adjunct: return "composite-adjunct";
        case SegalCriterion::head_adjunct: return "head-adjunct";
        case SegalCriterion::adjacent: return "adjacent-comparison";
    }
    return "?";
}

std::string to_string(LocalCriterion c) {
    switch (c) {
        case LocalCriterion::decolouring: return "decolouring";
        case LocalCriterion::over_subset: return "over-subset";
    }
    return "?";
}

namespace {

// Records components of comps (over string s) that fall outside w.
bool components_in_weq(const IndexedCat& e, const MarkedIndexedCat& w, const SimplexString& s,
                       const std::vector<ArrowId>& comps, ArrowId map, const std::string& what,
                       std::vector<ComponentWitness>& witnesses, std::size_t max_witnesses) {
    bool ok = true;
    for (std::size_t i = 0; i < comps.size(); ++i) {
        ObjectId c = s.objects[i];
        if (w.weq[c].contains(comps[i])) continue;
        ok = false;
        if (witnesses.size() < max_witnesses)
            witnesses.push_back({map, static_cast<int>(i),
                                 what + ": component " + std::to_string(i) + " = " + e.fibre(c).arrow_name(comps[i]) +
                                     " over " + e.base->object_name(c) + " is not a weak equivalence"});
    }
    return ok;
}

ArrowId head_map(const Replacement& r, ObjectId c) {
    return r.arrow_of(c, make_simplex_map(0, r.string(c).dim(), {0}));
}

void require_two_of_three(const MarkedIndexedCat& w) {
    for (ObjectId c = 0; c < w.weq.size(); ++c)
        if (auto rep = check_two_of_three(w.weq[c]); !rep)
            throw Error(ErrorKind::precondition,
                        "weak equivalences over " + w.cat.base->object_name(c) + ": " + rep.violation);
}

}  // namespace

SegalVerdict check_segal_criterion(const SimplicialExtension& x, const Section& p, const MarkedIndexedCat& w,
                                   SegalCriterion criterion, std::size_t max_witnesses) {
    const Replacement& r = *x.replacement;
    const FinCat& rc = *r.cat();
    const IndexedCat& e = x.base;
    SegalVerdict v;
    v.criterion = criterion;
    v.pass = true;
    auto check_adjunct = [&](ArrowId alpha) {
        ObjectId c = rc.src(alpha);
        const ExtensionFibre& f = x.fibre(c);
        ArrowId phi = adjunct(x, alpha, p.values[c], p.structure[alpha]);
        if (!components_in_weq(e, w, f.string, f.components[phi], alpha, "adjunct along " + rc.arrow_name(alpha),
                               v.witnesses, max_witnesses))
            v.pass = false;
    };
    switch (criterion) {
        case SegalCriterion::composite_adjunct:
            for (ArrowId alpha = 0; alpha < rc.num_arrows(); ++alpha)
                if (classify(r.delta(alpha)) & label_segal) check_adjunct(alpha);
            break;
        case SegalCriterion::head_adjunct:
            for (ObjectId c = 0; c < rc.num_objects(); ++c) check_adjunct(head_map(r, c));
            break;
        case SegalCriterion::adjacent:
            for (ObjectId c = 0; c < rc.num_objects(); ++c) {
                const ExtensionFibre& f = x.fibre(c);
                const StringSection& a = f.sections[p.values[c]];
                for (std::size_t i = 0; i < a.comparisons.size(); ++i) {
                    ObjectId ci = f.string.objects[i + 1];
                    if (w.weq[ci].contains(a.comparisons[i])) continue;
                    v.pass = false;
                    if (v.witnesses.size() < max_witnesses)
                        v.witnesses.push_back({no_arrow, static_cast<int>(i + 1),
                                               "comparison " + std::to_string(i + 1) + " of the value at " +
                                                   rc.object_name(c) + " = " + e.fibre(ci).arrow_name(a.comparisons[i]) +
                                                   " is not a weak equivalence"});
                }
                ArrowId h = head_map(r, c);
                ArrowId sigma = p.structure[h];
                const ExtensionFibre& target = x.fibre(rc.dst(h));
                ArrowId start = target.components[sigma][0];
                ObjectId c0 = f.string.objects[0];
                if (!w.weq[c0].contains(start)) {
                    v.pass = false;
                    if (v.witnesses.size() < max_witnesses)
                        v.witnesses.push_back({h, 0,
                                               "structure map along " + rc.arrow_name(h) + " = " +
                                                   e.fibre(c0).arrow_name(start) + " is not a weak equivalence"});
                }
            }
            break;
    }
    return v;
}

SegalVerdict is_segal(const SimplicialExtension& x, const Section& p, const MarkedIndexedCat& w,
                      const SegalOptions& options) {
    if (auto rep = check_marked(w); !rep) throw Error(ErrorKind::precondition, rep.violation);
    SegalVerdict v = check_segal_criterion(x, p, w, SegalCriterion::composite_adjunct, options.max_witnesses);
    if (options.two_of_three) {
        require_two_of_three(w);
        SegalVerdict head = check_segal_criterion(x, p, w, SegalCriterion::head_adjunct, options.max_witnesses);
        SegalVerdict adjacent = check_segal_criterion(x, p, w, SegalCriterion::adjacent, options.max_witnesses);
        v.cross_checked = true;
        v.criteria_agree = head.pass == v.pass && adjacent.pass == v.pass;
        if (v.pass && !adjacent.pass) v.witnesses = adjacent.witnesses;
    }
    return v;
}

CheckReport check_factor_closed(const MapSubset& s) {
    const FinCat& c = *s.carrier();
    for (ObjectId x = 0; x < c.num_objects(); ++x)
        if (!s.contains(c.identity(x))) return CheckReport::fail("identity of " + c.object_name(x) + " is missing");
    for (ArrowId f = 0; f < c.num_arrows(); ++f)
        for (ArrowId g : c.out_arrows(c.dst(f))) {
            bool in_f = s.contains(f), in_g = s.contains(g), in_gf = s.contains(c.compose(g, f));
            if (in_f && in_g && !in_gf)
                return CheckReport::fail("not closed under composing " + c.arrow_name(g) + " after " + c.arrow_name(f));
            if (in_gf && !(in_f && in_g))
                return CheckReport::fail("composite " + c.arrow_name(c.compose(g, f)) + " has a factor outside the set");
        }
    return CheckReport::pass();
}

LocallyConstantVerdict check_local_criterion(const SimplicialExtension& x, const Section& p, const MarkedIndexedCat& w,
                                             const MapSubset& s, LocalCriterion criterion, std::size_t max_witnesses) {
    const Replacement& r = *x.replacement;
    const FinCat& rc = *r.cat();
    const IndexedCat& e = x.base;
    LocallyConstantVerdict v;
    v.pass = true;
    for (ArrowId alpha = 0; alpha < rc.num_arrows(); ++alpha) {
        const SimplexMap& d = r.delta(alpha);
        const SimplexString& str = x.fibre(rc.src(alpha)).string;
        bool applies = false;
        if (criterion == LocalCriterion::decolouring) {
            if (!(classify(d) & label_anti_segal)) continue;
            applies = true;
            for (int i = 0; i < d.n - d.m; ++i)
                if (!s.contains(str.arrows[static_cast<std::size_t>(i)])) applies = false;
        } else {
            applies = s.contains(r.head.arr(alpha));
        }
        if (!applies) continue;
        const ExtensionFibre& target = x.fibre(rc.dst(alpha));
        if (!components_in_weq(e, w, target.string, target.components[p.structure[alpha]], alpha,
                               "structure map along " + rc.arrow_name(alpha), v.witnesses, max_witnesses))
            v.pass = false;
    }
    return v;
}

LocallyConstantVerdict is_locally_constant(const SimplicialExtension& x, const Section& p, const MarkedIndexedCat& w,
                                           const MapSubset& s, const SegalOptions& options) {
    if (!is_segal(x, p, w).pass) throw Error(ErrorKind::precondition, "presection is not Segal");
    LocallyConstantVerdict v = check_local_criterion(x, p, w, s, LocalCriterion::decolouring, options.max_witnesses);
    if (options.two_of_three) {
        require_two_of_three(w);
        if (auto rep = check_factor_closed(s); !rep)
            throw Error(ErrorKind::precondition, "criteria are only comparable for factor-closed sets: " + rep.violation);
        LocallyConstantVerdict over = check_local_criterion(x, p, w, s, LocalCriterion::over_subset, options.max_witnesses);
        v.cross_checked = true;
        v.criteria_agree = over.pass == v.pass;
    }
    return v;
}

HoSection section_to_ho(const SimplicialExtension& x, const Section& p, const MarkedIndexedCat& w,
                        const Limits& limits) {
    require_two_of_three(w);
    if (!is_segal(x, p, w).pass) throw Error(ErrorKind::precondition, "presection is not Segal");
    const IndexedCat& e = x.base;
    const FinCat& b = *e.base;
    const Replacement& r = *x.replacement;
    const FinCat& rc = *r.cat();
    HoSection out;
    for (ObjectId c = 0; c < b.num_objects(); ++c) out.fibres.push_back(localize(e.fibres[c], w.weq[c], limits));
    out.ho.base = e.base;
    for (const auto& l : out.fibres) out.ho.fibres.push_back(l.cat);
    for (ArrowId f = 0; f < b.num_arrows(); ++f)
        out.ho.transitions.push_back(induced_functor(out.fibres[b.src(f)], out.fibres[b.dst(f)], e.push(f)));

    for (ObjectId c = 0; c < b.num_objects(); ++c) {
        ObjectId point = r.object_of(SimplexString{{c}, {}});
        out.section.values.push_back(x.fibre(point).sections[p.values[point]].objects[0]);
    }
    for (ArrowId f = 0; f < b.num_arrows(); ++f) {
        ObjectId c = b.src(f), c2 = b.dst(f);
        ObjectId edge = r.object_of(SimplexString{{c, c2}, {f}});
        const StringSection& a = x.fibre(edge).sections[p.values[edge]];
        ArrowId to_start = r.arrow_of(edge, make_simplex_map(0, 1, {0}));
        ArrowId to_end = r.arrow_of(edge, make_simplex_map(0, 1, {1}));
        ArrowId sigma_start = x.fibre(rc.dst(to_start)).components[p.structure[to_start]][0];
        ArrowId sigma_end = x.fibre(rc.dst(to_end)).components[p.structure[to_end]][0];
        const Localization& lc = out.fibres[c2];
        const FinCat& ho = *lc.cat;
        ArrowId back_start = lc.inverse_of[e.push(f).arr(sigma_start)];
        ArrowId back_kappa = lc.inverse_of[a.comparisons[0]];
        if (back_start == no_arrow || back_kappa == no_arrow)
            throw Error(ErrorKind::precondition, "Segal data over " + b.arrow_name(f) + " is not invertible");
        out.section.structure.push_back(ho.compose(lc.quotient.arr(sigma_end), ho.compose(back_kappa, back_start)));
    }
    out.valid = validate(out.ho, out.section);
    return out;
}

}  // namespace catkit
