#include <catkit/extension.hpp>

#include <functional>

namespace catkit {

ArrowId chain_arrow(const FinCat& base, const SimplexString& s, int b, int a) {
    if (a == b) return base.identity(s.objects[static_cast<std::size_t>(b)]);
    return compose_path(base, std::span<const ArrowId>(s.arrows.data() + b, static_cast<std::size_t>(a - b)));
}

ArrowId comparison(const IndexedCat& e, const SimplexString& s, const StringSection& a, int to, int from) {
    ArrowId acc = e.fibre(s.objects[static_cast<std::size_t>(from)]).identity(a.objects[static_cast<std::size_t>(from)]);
    for (int i = from + 1; i <= to; ++i) {
        const FinCat& fib = e.fibre(s.objects[static_cast<std::size_t>(i)]);
        acc = fib.compose(e.push(s.arrows[static_cast<std::size_t>(i - 1)]).arr(acc),
                          a.comparisons[static_cast<std::size_t>(i - 1)]);
    }
    return acc;
}

CheckReport validate(const IndexedCat& e, const SimplexString& s, const StringSection& a) {
    if (a.objects.size() != s.objects.size() || a.comparisons.size() != s.arrows.size())
        return CheckReport::fail("section length does not match the string");
    for (std::size_t i = 0; i < a.objects.size(); ++i)
        if (a.objects[i] >= e.fibre(s.objects[i]).num_objects())
            return CheckReport::fail("object " + std::to_string(i) + " is not in its fibre");
    for (std::size_t i = 1; i < a.objects.size(); ++i) {
        const FinCat& fib = e.fibre(s.objects[i]);
        ArrowId k = a.comparisons[i - 1];
        if (k >= fib.num_arrows() || fib.src(k) != a.objects[i] ||
            fib.dst(k) != e.push(s.arrows[i - 1]).obj(a.objects[i - 1]))
            return CheckReport::fail("comparison " + std::to_string(i) + " has the wrong endpoints");
    }
    return CheckReport::pass();
}

namespace {

std::vector<std::uint32_t> section_key(const StringSection& a) {
    std::vector<std::uint32_t> k(a.objects.begin(), a.objects.end());
    k.insert(k.end(), a.comparisons.begin(), a.comparisons.end());
    return k;
}

}  // namespace

std::optional<ObjectId> ExtensionFibre::find(const StringSection& a) const {
    auto it = object_index_.find(section_key(a));
    if (it == object_index_.end()) return std::nullopt;
    return it->second;
}

std::optional<ArrowId> ExtensionFibre::find_arrow(ObjectId a, ObjectId b, const std::vector<ArrowId>& comps) const {
    std::vector<std::uint32_t> k{a, b};
    k.insert(k.end(), comps.begin(), comps.end());
    auto it = arrow_index_.find(k);
    if (it == arrow_index_.end()) return std::nullopt;
    return it->second;
}

bool ExtensionFibre::is_cartesian(const IndexedCat& e, ObjectId a) const {
    const StringSection& s = sections[a];
    for (std::size_t i = 0; i < s.comparisons.size(); ++i)
        if (!catkit::is_iso(e.fibre(string.objects[i + 1]), s.comparisons[i])) return false;
    return true;
}

ExtensionFibre extension_fibre(const IndexedCat& e, const SimplexString& s, const Limits& limits) {
    ExtensionFibre out;
    out.string = s;
    const std::size_t len = s.objects.size();
    auto fibre_at = [&](std::size_t i) -> const FinCat& { return e.fibre(s.objects[i]); };

    std::vector<StringSection> level;
    for (ObjectId x = 0; x < fibre_at(0).num_objects(); ++x) level.push_back({{x}, {}});
    for (std::size_t i = 1; i < len; ++i) {
        std::vector<StringSection> next;
        const FinCat& fib = fibre_at(i);
        const FinFunctor& push = e.push(s.arrows[i - 1]);
        for (const auto& a : level)
            for (ObjectId x = 0; x < fib.num_objects(); ++x)
                for (ArrowId k : fib.hom(x, push.obj(a.objects.back()))) {
                    StringSection b = a;
                    b.objects.push_back(x);
                    b.comparisons.push_back(k);
                    next.push_back(std::move(b));
                    limits.check(next.size(), "string sections");
                }
        level = std::move(next);
    }
    out.sections = std::move(level);

    FinCat::Builder builder;
    for (ObjectId i = 0; i < out.sections.size(); ++i) {
        const auto& a = out.sections[i];
        std::string name = "[" + fibre_at(0).object_name(a.objects[0]);
        for (std::size_t j = 1; j < len; ++j)
            name += "|" + fibre_at(j).arrow_name(a.comparisons[j - 1]) + ":" + fibre_at(j).object_name(a.objects[j]);
        name += "]";
        builder.add_object(std::move(name));
        out.object_index_.emplace(section_key(a), i);
    }
    std::vector<ArrowId> comps(len);
    for (ObjectId ai = 0; ai < out.sections.size(); ++ai)
        for (ObjectId bi = 0; bi < out.sections.size(); ++bi) {
            const auto& a = out.sections[ai];
            const auto& b = out.sections[bi];
            std::function<void(std::size_t)> extend = [&](std::size_t i) {
                if (i == len) {
                    std::string name = std::to_string(ai) + "->" + std::to_string(bi) + ":(";
                    bool identity = ai == bi;
                    for (std::size_t j = 0; j < len; ++j) {
                        name += (j ? "," : "") + fibre_at(j).arrow_name(comps[j]);
                        identity = identity && fibre_at(j).is_identity(comps[j]);
                    }
                    ArrowId id = builder.add_arrow(name + ")", ai, bi);
                    if (identity) builder.set_identity(ai, id);
                    std::vector<std::uint32_t> key{ai, bi};
                    key.insert(key.end(), comps.begin(), comps.end());
                    out.arrow_index_.emplace(std::move(key), id);
                    out.components.push_back(comps);
                    limits.check(out.sections.size() + out.components.size(), "string section maps");
                    return;
                }
                const FinCat& fib = fibre_at(i);
                for (ArrowId t : fib.hom(a.objects[i], b.objects[i])) {
                    if (i > 0) {
                        ArrowId lhs = fib.compose(b.comparisons[i - 1], t);
                        ArrowId rhs = fib.compose(e.push(s.arrows[i - 1]).arr(comps[i - 1]), a.comparisons[i - 1]);
                        if (lhs != rhs) continue;
                    }
                    comps[i] = t;
                    extend(i + 1);
                }
            };
            extend(0);
        }
    out.cat = share(builder.build([&](ArrowId g, ArrowId f) -> ArrowId {
        std::vector<ArrowId> c(len);
        for (std::size_t j = 0; j < len; ++j) c[j] = fibre_at(j).compose(out.components[g][j], out.components[f][j]);
        auto found = out.find_arrow(builder.src(f), builder.dst(g), c);
        return found ? *found : no_arrow;
    }));
    return out;
}

StringSection pull_section(const IndexedCat& e, const SimplexString& s, const StringSection& a, const SimplexMap& f) {
    StringSection out;
    for (int j = 0; j <= f.m; ++j) {
        out.objects.push_back(a.objects[static_cast<std::size_t>(f(j))]);
        if (j > 0) out.comparisons.push_back(comparison(e, s, a, f(j), f(j - 1)));
    }
    return out;
}

std::vector<ArrowId> pull_components(const std::vector<ArrowId>& comps, const SimplexMap& f) {
    std::vector<ArrowId> out;
    for (int j = 0; j <= f.m; ++j) out.push_back(comps[static_cast<std::size_t>(f(j))]);
    return out;
}

FinFunctor pull_functor(const IndexedCat& e, const ExtensionFibre& from, const ExtensionFibre& to,
                        const SimplexMap& f) {
    const FinCat& a = *from.cat;
    std::vector<ObjectId> objs(a.num_objects());
    for (ObjectId x = 0; x < a.num_objects(); ++x) {
        auto y = to.find(pull_section(e, from.string, from.sections[x], f));
        if (!y) throw Error(ErrorKind::validation, "reindexed section is missing from the target fibre");
        objs[x] = *y;
    }
    std::vector<ArrowId> arrs(a.num_arrows());
    for (ArrowId g = 0; g < a.num_arrows(); ++g) {
        auto h = to.find_arrow(objs[a.src(g)], objs[a.dst(g)], pull_components(from.components[g], f));
        if (!h) throw Error(ErrorKind::validation, "reindexed section map is missing from the target fibre");
        arrs[g] = *h;
    }
    return FinFunctor(from.cat, to.cat, std::move(objs), std::move(arrs));
}

FinFunctor SimplicialExtension::transition(ArrowId alpha) const {
    const FinCat& c = *replacement->cat();
    return pull_functor(base, fibre(c.src(alpha)), fibre(c.dst(alpha)), replacement->delta(alpha));
}

IndexedCat SimplicialExtension::indexed() const {
    IndexedCat out;
    out.base = replacement->cat();
    for (const auto& f : fibres) out.fibres.push_back(f->cat);
    for (ArrowId a = 0; a < out.base->num_arrows(); ++a) out.transitions.push_back(transition(a));
    return out;
}

SimplicialExtension build_extension(const IndexedCat& e, std::shared_ptr<const Replacement> r, const Limits& limits) {
    SimplicialExtension x;
    x.base = e;
    x.replacement = std::move(r);
    std::size_t total = 0;
    for (ObjectId c = 0; c < x.replacement->cat()->num_objects(); ++c) {
        auto f = std::make_shared<const ExtensionFibre>(extension_fibre(e, x.replacement->string(c), limits));
        total += f->cat->num_objects() + f->cat->num_arrows();
        limits.check(total, "simplicial extension");
        x.fibres.push_back(std::move(f));
    }
    return x;
}

SimplicialExtension build_extension(const IndexedCat& e, int level, const Limits& limits) {
    auto r = std::make_shared<const Replacement>(simplicial_replacement(e.base, level, limits));
    return build_extension(e, std::move(r), limits);
}

std::string to_string(AdjointCase c) {
    switch (c) {
        case AdjointCase::identity: return "identity";
        case AdjointCase::degeneracy: return "degeneracy";
        case AdjointCase::fill: return "fill";
        case AdjointCase::drop_last: return "drop-last";
        case AdjointCase::drop_first: return "drop-first";
        case AdjointCase::composite: return "composite";
    }
    return "?";
}

AdjointCase adjoint_case(const SimplexMap& d) {
    if (d.is_identity()) return AdjointCase::identity;
    if (d.is_surjective()) return AdjointCase::degeneracy;
    if (!d.is_injective()) return AdjointCase::composite;
    if (d(0) == 0) return d(d.m) == d.n ? AdjointCase::fill : AdjointCase::drop_last;
    if (d(d.m) == d.n && d(d.m) - d(0) == d.m) return AdjointCase::drop_first;
    return AdjointCase::composite;
}

namespace {

template <class Accept>
std::optional<LimitCone> cone_search(const FinCat& c, ObjectId x, ObjectId y, Accept accept) {
    for (ObjectId p = 0; p < c.num_objects(); ++p)
        for (ArrowId p1 : c.hom(p, x))
            for (ArrowId p2 : c.hom(p, y)) {
                if (!accept(p1, p2)) continue;
                bool universal = true;
                for (ObjectId q = 0; q < c.num_objects() && universal; ++q)
                    for (ArrowId q1 : c.hom(q, x)) {
                        for (ArrowId q2 : c.hom(q, y)) {
                            if (!accept(q1, q2)) continue;
                            int count = 0;
                            for (ArrowId u : c.hom(q, p))
                                if (c.compose(p1, u) == q1 && c.compose(p2, u) == q2) ++count;
                            if (count != 1) {
                                universal = false;
                                break;
                            }
                        }
                        if (!universal) break;
                    }
                if (universal) return LimitCone{p, {p1, p2}};
            }
    return std::nullopt;
}

}  // namespace

std::optional<ObjectId> canonical_terminal(const FinCat& c) { return find_terminal(c).object; }

std::optional<LimitCone> canonical_product(const FinCat& c, ObjectId x, ObjectId y) {
    return cone_search(c, x, y, [](ArrowId, ArrowId) { return true; });
}

std::optional<LimitCone> canonical_pullback(const FinCat& c, ArrowId f, ArrowId g) {
    return cone_search(c, c.src(f), c.src(g), [&](ArrowId p1, ArrowId p2) { return c.compose(f, p1) == c.compose(g, p2); });
}

namespace {

enum class StepKind { surjection, pushforward, shift };

// One factor of alpha^*: takes sections over target o map to sections over target.
struct Step {
    StepKind kind;
    SimplexMap map;
    SimplexString target;
};

std::vector<Step> adjoint_steps(const FinCat& base, const SimplexString& s, const SimplexMap& delta) {
    ReedyFactorization rf = factor_reedy(delta);
    const int n = delta.n;
    const int k0 = rf.injection(0);
    const int k = rf.injection.m;
    SimplexMap shift = interval_inclusion(n - k0, n, k0);
    std::vector<int> shifted;
    for (int j = 0; j <= k; ++j) shifted.push_back(rf.injection(j) - k0);
    SimplexMap inner = make_simplex_map(k, n - k0, std::move(shifted));
    SimplexString s_shift = restrict_string(base, s, shift);
    SimplexString s_inj = restrict_string(base, s, rf.injection);
    std::vector<Step> steps;
    if (!rf.surjection.is_identity()) steps.push_back({StepKind::surjection, rf.surjection, s_inj});
    if (!inner.is_identity()) steps.push_back({StepKind::pushforward, inner, s_shift});
    if (k0 > 0) steps.push_back({StepKind::shift, shift, s});
    return steps;
}

// Result of one step on a section: the value and the counit components over the map's domain.
struct StepValue {
    StringSection value;
    std::vector<ArrowId> counit;
    std::vector<ArrowId> projection;  // shift only: C_i -> B_{i-q} for i >= q
};

int last_preimage(const SimplexMap& s, int i) {
    int last = -1;
    for (int j = 0; j <= s.m; ++j)
        if (s(j) == i) last = j;
    return last;
}

int last_below(const SimplexMap& p, int i) {
    int j = 0;
    while (j + 1 <= p.m && p(j + 1) <= i) ++j;
    return j;
}

std::string fibre_label(const FinCat& base, const SimplexString& d, int i) {
    return "fibre over " + base.object_name(d.objects[static_cast<std::size_t>(i)]);
}

StepValue apply_step(const IndexedCat& e, const Step& st, const StringSection& b) {
    const FinCat& base = *e.base;
    const SimplexString& d = st.target;
    const SimplexMap& f = st.map;
    SimplexString t = restrict_string(base, d, f);  // string carrying b
    StepValue out;
    auto fib = [&](int i) -> const FinCat& { return e.fibre(d.objects[static_cast<std::size_t>(i)]); };
    switch (st.kind) {
        case StepKind::surjection: {
            for (int i = 0; i <= f.n; ++i) {
                int l = last_preimage(f, i);
                out.value.objects.push_back(b.objects[static_cast<std::size_t>(l)]);
                if (i > 0) out.value.comparisons.push_back(comparison(e, t, b, l, last_preimage(f, i - 1)));
            }
            for (int j = 0; j <= f.m; ++j) out.counit.push_back(comparison(e, t, b, last_preimage(f, f(j)), j));
            break;
        }
        case StepKind::pushforward: {
            for (int i = 0; i <= f.n; ++i) {
                int j = last_below(f, i);
                ArrowId up = chain_arrow(base, d, f(j), i);
                ObjectId x = e.push(up).obj(b.objects[static_cast<std::size_t>(j)]);
                out.value.objects.push_back(x);
                if (i > 0)
                    out.value.comparisons.push_back(f(j) == i ? b.comparisons[static_cast<std::size_t>(j - 1)]
                                                              : fib(i).identity(x));
            }
            for (int j = 0; j <= f.m; ++j)
                out.counit.push_back(
                    e.fibre(t.objects[static_cast<std::size_t>(j)]).identity(b.objects[static_cast<std::size_t>(j)]));
            break;
        }
        case StepKind::shift: {
            const int q = f(0);
            auto terminal = canonical_terminal(fib(0));
            if (!terminal) throw Error(ErrorKind::missing_limit, "no terminal object in the " + fibre_label(base, d, 0));
            out.value.objects.push_back(*terminal);
            out.projection.assign(static_cast<std::size_t>(f.n + 1), no_arrow);
            for (int i = 1; i <= f.n; ++i) {
                const FinFunctor& push = e.push(d.arrows[static_cast<std::size_t>(i - 1)]);
                ObjectId pushed = push.obj(out.value.objects.back());
                if (i < q) {
                    out.value.objects.push_back(pushed);
                    out.value.comparisons.push_back(fib(i).identity(pushed));
                    continue;
                }
                std::optional<LimitCone> cone;
                ObjectId bi = b.objects[static_cast<std::size_t>(i - q)];
                if (i == q) {
                    cone = canonical_product(fib(i), bi, pushed);
                    if (!cone)
                        throw Error(ErrorKind::missing_limit, "no product of " + fib(i).object_name(bi) + " and " +
                                                                  fib(i).object_name(pushed) + " in the " +
                                                                  fibre_label(base, d, i));
                } else {
                    ArrowId kappa = b.comparisons[static_cast<std::size_t>(i - q - 1)];
                    ArrowId pushed_proj = push.arr(out.projection[static_cast<std::size_t>(i - 1)]);
                    cone = canonical_pullback(fib(i), kappa, pushed_proj);
                    if (!cone)
                        throw Error(ErrorKind::missing_limit, "no pullback of " + fib(i).arrow_name(kappa) + " and " +
                                                                  fib(i).arrow_name(pushed_proj) + " in the " +
                                                                  fibre_label(base, d, i));
                }
                out.value.objects.push_back(cone->apex);
                out.value.comparisons.push_back(cone->legs[1]);
                out.projection[static_cast<std::size_t>(i)] = cone->legs[0];
            }
            for (int j = 0; j <= f.m; ++j) out.counit.push_back(out.projection[static_cast<std::size_t>(j + q)]);
            break;
        }
    }
    return out;
}

std::vector<ArrowId> apply_step_arrow(const IndexedCat& e, const Step& st, const StepValue& from, const StepValue& to,
                                      const std::vector<ArrowId>& comps) {
    const FinCat& base = *e.base;
    const SimplexString& d = st.target;
    const SimplexMap& f = st.map;
    std::vector<ArrowId> out;
    auto fib = [&](int i) -> const FinCat& { return e.fibre(d.objects[static_cast<std::size_t>(i)]); };
    switch (st.kind) {
        case StepKind::surjection:
            for (int i = 0; i <= f.n; ++i) out.push_back(comps[static_cast<std::size_t>(last_preimage(f, i))]);
            break;
        case StepKind::pushforward:
            for (int i = 0; i <= f.n; ++i) {
                int j = last_below(f, i);
                out.push_back(e.push(chain_arrow(base, d, f(j), i)).arr(comps[static_cast<std::size_t>(j)]));
            }
            break;
        case StepKind::shift: {
            const int q = f(0);
            out.push_back(fib(0).identity(from.value.objects[0]));
            for (int i = 1; i <= f.n; ++i) {
                const FinFunctor& push = e.push(d.arrows[static_cast<std::size_t>(i - 1)]);
                ArrowId below = push.arr(out.back());
                if (i < q) {
                    out.push_back(below);
                    continue;
                }
                const FinCat& c = fib(i);
                auto si = static_cast<std::size_t>(i);
                ArrowId want_first = c.compose(comps[static_cast<std::size_t>(i - q)], from.projection[si]);
                ArrowId want_second = c.compose(below, from.value.comparisons[si - 1]);
                ArrowId found = no_arrow;
                for (ArrowId u : c.hom(from.value.objects[si], to.value.objects[si]))
                    if (c.compose(to.projection[si], u) == want_first &&
                        c.compose(to.value.comparisons[si - 1], u) == want_second) {
                        found = u;
                        break;
                    }
                if (found == no_arrow) throw Error(ErrorKind::missing_limit, "limit comparison map not found");
                out.push_back(found);
            }
            break;
        }
    }
    return out;
}

struct AdjointTrace {
    std::vector<Step> steps;
    std::vector<StepValue> values;  // values[k] is the output of steps[k]
};

AdjointTrace trace_adjoint(const IndexedCat& e, const SimplexString& source, const SimplexMap& delta,
                           const StringSection& b) {
    AdjointTrace tr;
    tr.steps = adjoint_steps(*e.base, source, delta);
    const StringSection* current = &b;
    for (const auto& st : tr.steps) {
        tr.values.push_back(apply_step(e, st, *current));
        current = &tr.values.back().value;
    }
    return tr;
}

}  // namespace

StringSection right_adjoint_section(const IndexedCat& e, const SimplexString& source, const SimplexMap& delta,
                                    const StringSection& b) {
    AdjointTrace tr = trace_adjoint(e, source, delta, b);
    return tr.values.empty() ? b : tr.values.back().value;
}

std::vector<ArrowId> counit_components(const IndexedCat& e, const SimplexString& source, const SimplexMap& delta,
                                       const StringSection& b) {
    AdjointTrace tr = trace_adjoint(e, source, delta, b);
    SimplexString target = restrict_string(*e.base, source, delta);
    std::vector<ArrowId> out;
    for (int j = 0; j <= delta.m; ++j) {
        const FinCat& fib = e.fibre(target.objects[static_cast<std::size_t>(j)]);
        ArrowId acc = fib.identity(b.objects[static_cast<std::size_t>(j)]);
        // eps = eps_1 o L_1(eps_2) o L_1 L_2(eps_3): walk the steps, reindexing j through each map.
        int idx = j;
        for (std::size_t k = 0; k < tr.steps.size(); ++k) {
            acc = fib.compose(acc, tr.values[k].counit[static_cast<std::size_t>(idx)]);
            idx = tr.steps[k].map(idx);
        }
        out.push_back(acc);
    }
    return out;
}

FinFunctor right_adjoint(const SimplicialExtension& x, ArrowId alpha) {
    const FinCat& rc = *x.replacement->cat();
    const ExtensionFibre& source = x.fibre(rc.src(alpha));
    const ExtensionFibre& target = x.fibre(rc.dst(alpha));
    const SimplexMap& delta = x.replacement->delta(alpha);
    const IndexedCat& e = x.base;
    const FinCat& t = *target.cat;
    std::vector<AdjointTrace> traces;
    std::vector<ObjectId> objs;
    for (ObjectId b = 0; b < t.num_objects(); ++b) {
        traces.push_back(trace_adjoint(e, source.string, delta, target.sections[b]));
        const StringSection& v = traces.back().values.empty() ? target.sections[b] : traces.back().values.back().value;
        auto found = source.find(v);
        if (!found) throw Error(ErrorKind::validation, "right adjoint produced a section outside the fibre");
        objs.push_back(*found);
    }
    std::vector<ArrowId> arrs;
    for (ArrowId g = 0; g < t.num_arrows(); ++g) {
        const AdjointTrace& from = traces[t.src(g)];
        const AdjointTrace& to = traces[t.dst(g)];
        std::vector<ArrowId> comps = target.components[g];
        for (std::size_t k = 0; k < from.steps.size(); ++k)
            comps = apply_step_arrow(e, from.steps[k], from.values[k], to.values[k], comps);
        auto found = source.find_arrow(objs[t.src(g)], objs[t.dst(g)], comps);
        if (!found) throw Error(ErrorKind::validation, "right adjoint produced a map outside the fibre");
        arrs.push_back(*found);
    }
    return FinFunctor(target.cat, source.cat, std::move(objs), std::move(arrs));
}

ArrowId adjunct(const SimplicialExtension& x, ArrowId alpha, ObjectId a, ArrowId sigma) {
    const FinCat& rc = *x.replacement->cat();
    const ExtensionFibre& source = x.fibre(rc.src(alpha));
    const ExtensionFibre& target = x.fibre(rc.dst(alpha));
    const SimplexMap& delta = x.replacement->delta(alpha);
    const IndexedCat& e = x.base;
    ObjectId b = target.cat->dst(sigma);
    const StringSection& bs = target.sections[b];
    auto rb = source.find(right_adjoint_section(e, source.string, delta, bs));
    if (!rb) throw Error(ErrorKind::validation, "right adjoint produced a section outside the fibre");
    std::vector<ArrowId> eps = counit_components(e, source.string, delta, bs);
    const auto& want = target.components[sigma];
    for (ArrowId phi : source.cat->hom(a, *rb)) {
        auto pulled = pull_components(source.components[phi], delta);
        bool ok = true;
        for (std::size_t j = 0; j < pulled.size() && ok; ++j) {
            const FinCat& fib = e.fibre(target.string.objects[j]);
            ok = fib.compose(eps[j], pulled[j]) == want[j];
        }
        if (ok) return phi;
    }
    throw Error(ErrorKind::validation, "no adjunct found for " + target.cat->arrow_name(sigma));
}

FinFunctor functor_S(const SimplicialExtension& x, ObjectId c) {
    const ExtensionFibre& f = x.fibre(c);
    const IndexedCat& e = x.base;
    const SimplexString& s = f.string;
    const CatPtr& start = e.fibres[s.objects[0]];
    const int n = s.dim();
    std::vector<ObjectId> objs;
    for (ObjectId v = 0; v < start->num_objects(); ++v) {
        StringSection a;
        for (int i = 0; i <= n; ++i) {
            ObjectId y = e.push(chain_arrow(*e.base, s, 0, i)).obj(v);
            a.objects.push_back(y);
            if (i > 0) a.comparisons.push_back(e.fibre(s.objects[static_cast<std::size_t>(i)]).identity(y));
        }
        objs.push_back(*f.find(a));
    }
    std::vector<ArrowId> arrs;
    for (ArrowId g = 0; g < start->num_arrows(); ++g) {
        std::vector<ArrowId> comps;
        for (int i = 0; i <= n; ++i) comps.push_back(e.push(chain_arrow(*e.base, s, 0, i)).arr(g));
        arrs.push_back(*f.find_arrow(objs[start->src(g)], objs[start->dst(g)], comps));
    }
    return FinFunctor(start, f.cat, std::move(objs), std::move(arrs));
}

FinFunctor functor_T(const SimplicialExtension& x, ObjectId c) {
    const SimplexString& s = x.fibre(c).string;
    return x.base.push(chain_arrow(*x.base.base, s, 0, s.dim()));
}

FinFunctor evaluation(const SimplicialExtension& x, ObjectId c, int i) {
    const ExtensionFibre& f = x.fibre(c);
    const CatPtr& target = x.base.fibres[f.string.objects[static_cast<std::size_t>(i)]];
    std::vector<ObjectId> objs;
    for (const auto& a : f.sections) objs.push_back(a.objects[static_cast<std::size_t>(i)]);
    std::vector<ArrowId> arrs;
    for (const auto& comps : f.components) arrs.push_back(comps[static_cast<std::size_t>(i)]);
    return FinFunctor(f.cat, target, std::move(objs), std::move(arrs));
}

}  // namespace catkit
