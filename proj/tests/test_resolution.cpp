#include "support.hpp"

#include <gtest/gtest.h>

#include <catkit/resolution.hpp>

using namespace catkit;
using namespace catkit::test;

namespace {

SimplexString point_string(ObjectId c) { return SimplexString{{c}, {}}; }

SimplicialMap identity_map_of(const SSetPtr& x) {
    SimplicialMap id{x, x, {}};
    for (int k = 0; k <= x->level(); ++k) {
        std::vector<std::size_t> v(x->size(k));
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = i;
        id.maps.push_back(std::move(v));
    }
    return id;
}

RelComma identity_comma(const std::string& category, int level) {
    Nerve nv = nerve(corpus_category(category), level);
    SimplicialMap id = identity_map_of(nv.sset);
    return relative_comma(id, id);
}

std::vector<SimplexMap> surjections(int k, int m) {
    std::vector<SimplexMap> out;
    for (auto& f : all_maps(k, m))
        if (f.is_surjective()) out.push_back(f);
    return out;
}

std::vector<SimplexMap> intervals(int k, int l) {
    if (k > l) return {};
    if (k == l) return {identity_map(k)};
    return {interval_inclusion(k, l, 0), interval_inclusion(k, l, l - k)};
}

// Consecutive values starting at 0 (left) or ending at n (right).
bool is_interval(const SimplexMap& f, IntervalSide side) {
    for (int i = 1; i <= f.m; ++i)
        if (f(i) != f(i - 1) + 1) return false;
    return side == IntervalSide::left ? f(0) == 0 : f(f.m) == f.n;
}

// Pullbacks in the simplex category: the poset fibre product is a chain matched bijectively by the apex.
bool brute_pullback(const DeltaSquare& sq) {
    std::vector<std::pair<int, int>> p;
    for (int i = 0; i <= sq.left.m; ++i)
        for (int j = 0; j <= sq.bottom.m; ++j)
            if (sq.left(i) == sq.bottom(j)) p.push_back({i, j});
    for (std::size_t a = 0; a < p.size(); ++a)
        for (std::size_t b = a + 1; b < p.size(); ++b) {
            bool le = p[a].first <= p[b].first && p[a].second <= p[b].second;
            bool ge = p[a].first >= p[b].first && p[a].second >= p[b].second;
            if (!le && !ge) return false;
        }
    if (static_cast<int>(p.size()) != sq.top.m + 1) return false;
    std::sort(p.begin(), p.end());
    for (int w = 0; w <= sq.top.m; ++w)
        if (p[static_cast<std::size_t>(w)] != std::pair{sq.top(w), sq.right(w)}) return false;
    return true;
}

const int square_bound = 5;

const FibreDiagnostic* find_diagnostic(const DiagnosticReport& r, const std::string& name) {
    for (const auto& d : r.per_fibre)
        if (d.name == name) return &d;
    return nullptr;
}

}  // namespace

TEST(FibreCategory, IdentityHasTheTautologicalLift) {
    for (const auto& name : corpus_categories()) {
        auto c = corpus_category(name);
        FinFunctor id = identity_functor(c);
        Nerve nv = nerve(c, 2);
        for (const auto& level : nv.strings)
            for (const auto& s : level) {
                FibreCategory fc = fibre_category(id, s);
                ASSERT_GT(fc.cat->num_objects(), 0u) << name;
                std::vector<ArrowId> ids;
                for (ObjectId x : s.objects) ids.push_back(c->identity(x));
                EXPECT_TRUE(fc.find(s.objects, s.arrows, ids).has_value()) << name;
            }
    }
}

TEST(FibreCategory, CollapseOverThePointIsTheArrow) {
    FibreCategory fc = fibre_category(corpus_functor("arrow_to_point"), point_string(0));
    EXPECT_TRUE(find_isomorphism(fc.cat, corpus_category("arrow")).has_value());
    FibreCategory empty = fibre_category(corpus_functor("discrete2_to_arrow"), SimplexString{{0, 1}, {*corpus_category("arrow")->find_arrow("01")}});
    EXPECT_EQ(empty.cat->num_objects(), 0u);
}

TEST(FibreCategory, ObjectsCommuteWithTheString) {
    FinFunctor f = corpus_functor("iso2_to_point");
    Nerve nv = nerve(f.cod(), 2);
    for (const auto& s : nv.strings[2]) {
        FibreCategory fc = fibre_category(f, s);
        const FinCat& c = *f.cod();
        const FinCat& d = *f.dom();
        ASSERT_TRUE(validate(*fc.cat));
        for (ObjectId o = 0; o < fc.cat->num_objects(); ++o)
            for (std::size_t i = 1; i < s.objects.size(); ++i) {
                ArrowId g = fc.lift_arrows[o][i - 1];
                EXPECT_EQ(d.src(g), fc.lifts[o][i - 1]);
                EXPECT_EQ(c.compose(fc.isos[o][i], f.arr(g)), c.compose(s.arrows[i - 1], fc.isos[o][i - 1]));
            }
    }
}

TEST(FibreCategory, RestrictionIsFunctorial) {
    FinFunctor f = corpus_functor("square_to_arrow");
    const FinCat& c = *f.cod();
    SimplexString s{{0, 1}, {*c.find_arrow("01")}};
    FibreCategory from = fibre_category(f, s);
    for (int v = 0; v <= 1; ++v) {
        FibreCategory to = fibre_category(f, point_string(s.objects[static_cast<std::size_t>(v)]));
        EXPECT_TRUE(validate(restrict_fibre(from, to, make_simplex_map(0, 1, {v}))));
    }
    EXPECT_TRUE(same_tables(restrict_fibre(from, from, identity_map(1)), identity_functor(from.cat)));
}

TEST(Resolution, Ladder) {
    for (const auto& name : {"point", "arrow", "bz2", "iso2"}) {
        DiagnosticReport r = check_resolution(identity_functor(corpus_category(name)), 3, 2);
        EXPECT_EQ(r.verdict, Verdict::certified) << name;
    }
    EXPECT_EQ(check_resolution(corpus_functor("iso2_to_point"), 3, 2).verdict, Verdict::certified);
    EXPECT_EQ(check_resolution(corpus_functor("arrow_to_point"), 3, 2).verdict, Verdict::certified);
    DiagnosticReport bad = check_resolution(corpus_functor("discrete2_to_arrow"), 3, 2);
    EXPECT_EQ(bad.verdict, Verdict::refuted);
    ASSERT_NE(bad.witness(), nullptr);
    EXPECT_EQ(bad.witness()->name, "D(01)");
    EXPECT_EQ(bad.witness()->verdict.kind, Contractibility::empty);
}

TEST(Resolution, ProjectionsWithContractibleFibres) {
    for (const auto& name : {"constant", "chain", "terminal_correction"}) {
        auto e = corpus_fibration(name).cat;
        DiagnosticReport left = check_left_resolution(grothendieck_op(e).proj, 2);
        EXPECT_NE(left.verdict, Verdict::refuted) << name << " " << (left.witness() ? left.witness()->name : "");
        DiagnosticReport right = check_right_resolution(transpose(e).proj, 2);
        EXPECT_NE(right.verdict, Verdict::refuted) << name << " " << (right.witness() ? right.witness()->name : "");
    }
    EXPECT_EQ(check_right_resolution(corpus_functor("arrow_to_point"), 2).verdict, Verdict::certified);
    EXPECT_EQ(check_left_resolution(corpus_functor("arrow_to_point"), 2).verdict, Verdict::certified);
    EXPECT_EQ(check_right_resolution(identity_functor(corpus_category("iso2")), 2).verdict, Verdict::certified);
}

TEST(Resolution, OneSidedNeedsAnIsofibration) {
    FinFunctor f = constant_functor(corpus_category("point"), corpus_category("iso2"), 0);
    EXPECT_FALSE(is_isofibration(f));
    EXPECT_TRUE(is_isofibration(corpus_functor("iso2_to_point")));
    try {
        check_right_resolution(f, 2);
        FAIL() << "accepted a non-isofibration";
    } catch (const Error& err) {
        EXPECT_EQ(err.kind(), ErrorKind::precondition);
    }
}

TEST(Resolution, EndFibresAreStrictFibresOfTheRestriction) {
    std::vector<FinFunctor> fs{corpus_functor("arrow_to_point"), corpus_functor("square_to_arrow"),
                               grothendieck_op(corpus_fibration("chain").cat).proj,
                               transpose(corpus_fibration("terminal_correction").cat).proj};
    for (const auto& f : fs)
        for (bool right : {true, false}) {
            DiagnosticReport rep = right ? check_right_resolution(f, 1) : check_left_resolution(f, 1);
            const FinCat& c = *f.cod();
            for (ArrowId a = 0; a < c.num_arrows(); ++a) {
                FibreCategory from = fibre_category(f, SimplexString{{c.src(a), c.dst(a)}, {a}});
                ObjectId end_object = right ? c.dst(a) : c.src(a);
                FibreCategory end = fibre_category(f, point_string(end_object));
                FinFunctor r = restrict_fibre(from, end, make_simplex_map(0, 1, {right ? 1 : 0}));
                for (ObjectId x = 0; x < end.cat->num_objects(); ++x) {
                    FibreInclusion sf = strict_fibre(r, x);
                    std::string name = right ? "F(" + c.arrow_name(a) + "," + end.cat->object_name(x) + ")"
                                             : "F(" + end.cat->object_name(x) + "," + c.arrow_name(a) + ")";
                    const FibreDiagnostic* d = find_diagnostic(rep, name);
                    ASSERT_NE(d, nullptr) << name;
                    EXPECT_EQ(d->objects, sf.fibre->num_objects()) << name;
                    EXPECT_EQ(d->arrows, sf.fibre->num_arrows()) << name;
                }
            }
        }
}

TEST(Cofinality, Endpoints) {
    EXPECT_EQ(cofinality(corpus_functor("point_to_arrow_end"), 2).verdict, Verdict::certified);
    DiagnosticReport r = cofinality(corpus_functor("point_to_arrow_start"), 2);
    EXPECT_EQ(r.verdict, Verdict::refuted);
    ASSERT_NE(r.witness(), nullptr);
    EXPECT_EQ(r.witness()->name, "1\\f");
    EXPECT_EQ(r.witness()->verdict.kind, Contractibility::empty);
}

TEST(Cofinality, FunctorsWithLeftAdjointsAreCertified) {
    std::vector<CatPtr> cats;
    for (const auto& n : {"point", "arrow", "chain2", "discrete2", "bz2", "iso2", "square"}) cats.push_back(corpus_category(n));
    std::size_t with_adjoint = 0, total = 0;
    for (const auto& a : cats)
        for (const auto& b : cats) {
            auto forward = all_functors(a, b);
            auto backward = all_functors(b, a);
            for (const auto& f : forward) {
                ++total;
                bool found = false;
                for (const auto& l : backward)
                    if (check_adjunction(l, f).holds) {
                        found = true;
                        break;
                    }
                if (!found) continue;
                ++with_adjoint;
                DiagnosticReport r = cofinality(f, 2);
                EXPECT_EQ(r.verdict, Verdict::certified) << a->num_objects() << "->" << b->num_objects();
            }
        }
    EXPECT_GT(with_adjoint, 10u);
    EXPECT_GT(total, with_adjoint);
}

TEST(Cofinality, HeadOfTheReplacement) {
    Replacement r = simplicial_replacement(corpus_category("arrow"), 3);
    DiagnosticReport rep = cofinality(r.head, 2);
    EXPECT_NE(rep.verdict, Verdict::refuted);
    for (ObjectId b = 0; b < r.base->num_objects(); ++b) {
        CommaCategory u = under(b, r.head);
        EXPECT_TRUE(nerve_homology(u.cat, 2).trivial_reduced());
    }
}

TEST(RelComma, DegreesAndConnectingMaps) {
    for (const auto& [name, level] : {std::pair{"point", 3}, std::pair{"arrow", 2}, std::pair{"bz2", 2}}) {
        RelComma r = identity_comma(name, level);
        ASSERT_TRUE(validate(*r.cat)) << name;
        for (ObjectId o = 0; o < r.cat->num_objects(); ++o) {
            const auto& obj = r.objects[o];
            EXPECT_EQ(r.degree(o), obj.n + obj.m);
            EXPECT_TRUE(obj.s.is_surjective());
            EXPECT_EQ(obj.s.m, obj.m);
            EXPECT_EQ(obj.s.n, obj.n);
            EXPECT_EQ(r.right.maps[static_cast<std::size_t>(obj.m)][obj.y],
                      r.left.dst->act(obj.s, r.left.maps[static_cast<std::size_t>(obj.n)][obj.x]));
        }
        CheckReport c = check_rel_comma(r);
        EXPECT_TRUE(c) << name << ": " << c.violation;
    }
}

TEST(RelComma, OverThePointObjectsAreSurjections) {
    const int level = 3;
    RelComma r = identity_comma("point", level);
    std::size_t expected = 0;
    for (int m = 0; m <= level; ++m)
        for (int n = 0; n <= m; ++n) expected += surjections(m, n).size();
    EXPECT_EQ(r.cat->num_objects(), expected);
}

TEST(RelComma, InclusionOfY) {
    for (const auto& [name, level] : {std::pair{"point", 3}, std::pair{"arrow", 2}}) {
        RelComma r = identity_comma(name, level);
        ASSERT_TRUE(r.include_y.has_value());
        const FinFunctor& i = *r.include_y;
        EXPECT_TRUE(validate(i));
        EXPECT_TRUE(same_tables(compose(r.to_y, i), identity_functor(r.y_elements.cat)));
        auto eq = is_equivalence(i);
        EXPECT_TRUE(eq.full && eq.faithful) << name;
        EXPECT_TRUE(check_adjunction(r.to_y, i).holds) << name;
        for (ObjectId y = 0; y < r.y_elements.cat->num_objects(); ++y) {
            FibreInclusion fi = strict_fibre(r.to_y, y);
            auto t = find_terminal(*fi.fibre);
            ASSERT_TRUE(t.object.has_value());
            EXPECT_EQ(fi.inclusion.obj(*t.object), i.obj(y));
        }
    }
    // With F the identity the inclusion exists for any G.
    Nerve a = nerve(corpus_category("arrow"), 2), p = nerve(corpus_category("point"), 2);
    RelComma r = relative_comma(identity_map_of(p.sset), nerve_map(a, p, corpus_functor("arrow_to_point")));
    ASSERT_TRUE(r.include_y.has_value());
    EXPECT_TRUE(check_rel_comma(r)) << check_rel_comma(r).violation;
    // Otherwise it is not provided.
    RelComma q = relative_comma(nerve_map(a, p, corpus_functor("arrow_to_point")), identity_map_of(p.sset));
    EXPECT_FALSE(q.include_y.has_value());
}

TEST(RelComma, FaceLiftsAreOpcartesian) {
    for (const auto& [name, level] : {std::pair{"point", 3}, std::pair{"arrow", 2}, std::pair{"bz2", 2}}) {
        RelComma r = identity_comma(name, level);
        CheckReport c = check_face_lifts(r);
        EXPECT_TRUE(c) << name << ": " << c.violation;
        for (ObjectId o = 0; o < r.cat->num_objects(); ++o) {
            const auto& obj = r.objects[o];
            for (int k = 0; k <= obj.n; ++k)
                for (const auto& a : all_maps(k, obj.n)) {
                    if (!a.is_injective()) continue;
                    ArrowId e = face_lift(r, o, a);
                    EXPECT_EQ(r.cat->src(e), o);
                    EXPECT_EQ(r.arrows[e].a, a);
                    EXPECT_TRUE(is_opcartesian(r.to_x, e));
                }
        }
    }
}

TEST(RelComma, MapLabels) {
    RelComma r = identity_comma("arrow", 2);
    std::size_t x_only = 0, both = 0;
    for (ArrowId f = 0; f < r.cat->num_arrows(); ++f) {
        CommaMapLabels l = classify_comma_map(r, f);
        const auto& e = r.arrows[f];
        bool xs = classify(e.a) & label_segal, ys = classify(e.b) & label_segal;
        EXPECT_EQ(l.segal, xs && ys);
        EXPECT_EQ(l.face, e.a.is_injective() && e.b.is_injective());
        EXPECT_EQ(l.degeneracy, e.a.is_surjective() && e.b.is_surjective());
        if (r.cat->is_identity(f)) EXPECT_TRUE(l.segal && l.face && l.degeneracy);
        x_only += xs && !ys;
        both += xs && ys && !r.cat->is_identity(f);
    }
    EXPECT_GT(x_only, 0u);
    EXPECT_GT(both, 0u);
}

TEST(RelComma, ReedyFactorizationLowersThenRaises) {
    for (const auto& [name, level] : {std::pair{"point", 3}, std::pair{"arrow", 2}}) {
        RelComma r = identity_comma(name, level);
        for (ArrowId f = 0; f < r.cat->num_arrows(); ++f) {
            CommaFactorization fac = reedy_factor_comma(r, f);
            EXPECT_EQ(r.cat->compose(fac.raising, fac.lowering), f);
            EXPECT_TRUE(classify_comma_map(r, fac.lowering).face);
            EXPECT_TRUE(classify_comma_map(r, fac.raising).degeneracy);
            ObjectId src = r.cat->src(f), dst = r.cat->dst(f);
            if (!r.cat->is_identity(fac.lowering)) EXPECT_LT(r.degree(fac.middle), r.degree(src));
            else EXPECT_EQ(fac.middle, src);
            if (!r.cat->is_identity(fac.raising)) EXPECT_GT(r.degree(dst), r.degree(fac.middle));
        }
    }
}

TEST(Squares, FirstLemmaOverAllSquares) {
    std::size_t seen = 0;
    for (int k = 0; k <= square_bound; ++k)
        for (int l = k; l <= square_bound; ++l)
            for (int n = 0; n <= l; ++n)
                for (int m = 0; m <= k; ++m)
                    for (const auto& top : intervals(k, l))
                        for (const auto& left : surjections(l, n))
                            for (const auto& right : surjections(k, m)) {
                                // The bottom map is forced by the surjection on the right.
                                std::vector<int> bv(static_cast<std::size_t>(m + 1), -1);
                                for (int i = 0; i <= k; ++i) bv[static_cast<std::size_t>(right(i))] = left(top(i));
                                bool consistent = true;
                                for (int i = 0; i <= k; ++i)
                                    consistent = consistent && bv[static_cast<std::size_t>(right(i))] == left(top(i));
                                if (!consistent) continue;
                                DeltaSquare sq{top, SimplexMap{m, n, bv}, left, right};
                                if (!sq.validate()) continue;
                                SquareFactorization fac = factor_square_1(sq);
                                ASSERT_TRUE(fac.verified) << fac.verified.violation;
                                EXPECT_EQ(paste(fac.first, fac.second), sq);
                                EXPECT_TRUE(is_interval(fac.first.bottom, fac.side));
                                EXPECT_TRUE(fac.second.bottom.is_surjective());
                                EXPECT_EQ(compose(fac.first.bottom, fac.second.bottom), sq.bottom);
                                EXPECT_EQ(fac.side, *interval_side(top));
                                ++seen;
                            }
    EXPECT_GT(seen, 1000u);
}

TEST(Squares, SecondLemmaOverAllSquares) {
    std::size_t seen = 0;
    for (int m = 0; m <= square_bound; ++m)
        for (int n = m; n <= square_bound; ++n)
            for (int l = n; l <= square_bound; ++l)
                for (int k = m; k <= square_bound; ++k)
                    for (const auto& bottom : intervals(m, n))
                        for (const auto& left : surjections(l, n))
                            for (const auto& right : surjections(k, m)) {
                                SimplexMap target = compose(bottom, right);
                                for (const auto& top : all_maps(k, l)) {
                                    if (!(compose(left, top) == target)) continue;
                                    DeltaSquare sq{top, bottom, left, right};
                                    SquareFactorization fac = factor_square_2(sq);
                                    ASSERT_TRUE(fac.verified) << fac.verified.violation;
                                    EXPECT_EQ(paste(fac.first, fac.second), sq);
                                    EXPECT_TRUE(is_interval(fac.first.top, fac.side));
                                    EXPECT_EQ(compose(fac.first.top, fac.second.top), top);
                                    EXPECT_TRUE(brute_pullback(fac.first));
                                    ++seen;
                                }
                            }
    EXPECT_GT(seen, 1000u);
}

TEST(Squares, HypothesesAreChecked) {
    DeltaSquare sq{make_simplex_map(0, 2, {1}), make_simplex_map(0, 1, {0}), make_simplex_map(2, 1, {0, 0, 1}),
                   identity_map(0)};
    ASSERT_TRUE(sq.validate());
    try {
        factor_square_1(sq);
        FAIL() << "inner vertex accepted as an interval";
    } catch (const Error& err) {
        EXPECT_EQ(err.kind(), ErrorKind::precondition);
    }
    DeltaSquare bad{identity_map(1), identity_map(1), make_simplex_map(1, 0, {0, 0}), identity_map(1)};
    EXPECT_FALSE(bad.validate());
}

TEST(Squares, PullbacksMatchTheFibreProduct) {
    std::size_t pullbacks = 0, others = 0;
    for (int k = 0; k <= 3; ++k)
        for (int l = 0; l <= 3; ++l)
            for (int m = 0; m <= k; ++m)
                for (int n = 0; n <= l; ++n)
                    for (const auto& left : surjections(l, n))
                        for (const auto& right : surjections(k, m))
                            for (const auto& bottom : all_maps(m, n))
                                for (const auto& top : all_maps(k, l)) {
                                    DeltaSquare sq{top, bottom, left, right};
                                    if (!(compose(left, top) == compose(bottom, right))) continue;
                                    bool p = is_pullback(sq);
                                    ASSERT_EQ(p, brute_pullback(sq));
                                    (p ? pullbacks : others) += 1;
                                }
    EXPECT_GT(pullbacks, 0u);
    EXPECT_GT(others, 0u);
}

TEST(Squares, Completions) {
    for (int k = 0; k <= square_bound; ++k)
        for (int l = k; l <= square_bound; ++l)
            for (const auto& top : intervals(k, l))
                for (int n = 0; n <= l; ++n)
                    for (const auto& left : surjections(l, n)) {
                        DeltaSquare sq = complete_from_top(top, left);
                        ASSERT_TRUE(sq.validate());
                        EXPECT_EQ(sq.top, top);
                        EXPECT_EQ(sq.left, left);
                        EXPECT_TRUE(is_interval(sq.bottom, *interval_side(top)));
                        // The bottom interval is forced: it is the image of left o top.
                        std::size_t alternatives = 0;
                        for (int m = 0; m <= k; ++m)
                            for (const auto& right : surjections(k, m))
                                for (const auto& bottom : intervals(m, n))
                                    alternatives += compose(left, top) == compose(bottom, right) &&
                                                    is_interval(bottom, *interval_side(top));
                        EXPECT_GE(alternatives, 1u);
                    }
    for (int m = 0; m <= 3; ++m)
        for (int n = m; n <= 4; ++n)
            for (const auto& bottom : intervals(m, n))
                for (int k = m; k <= 3; ++k)
                    for (const auto& right : surjections(k, m)) {
                        DeltaSquare sq = complete_from_bottom(bottom, right);
                        ASSERT_TRUE(sq.validate());
                        EXPECT_EQ(sq.bottom, bottom);
                        EXPECT_EQ(sq.right, right);
                        EXPECT_TRUE(is_interval(sq.top, *interval_side(bottom)));
                        EXPECT_TRUE(brute_pullback(sq));
                    }
}

TEST(CommaResolution, Verdicts) {
    FinFunctor id = identity_functor(corpus_category("arrow"));
    EXPECT_EQ(check_comma_resolution(id, 1, 2).verdict, Verdict::certified);
    // Higher truncations cut off the universal objects of the lift fibres; homology is still trivial.
    CommaResolutionReport deeper = check_comma_resolution(id, 2, 2);
    EXPECT_EQ(deeper.verdict, Verdict::evidence_only);
    EXPECT_GT(deeper.left.skipped, 0u);
    CommaResolutionReport collapse = check_comma_resolution(corpus_functor("arrow_to_point"), 2, 2);
    EXPECT_NE(collapse.verdict, Verdict::refuted);
    EXPECT_GT(collapse.tau.size(), 0u);
    CommaResolutionReport iso = check_comma_resolution(corpus_functor("iso2_to_point"), 2, 2);
    EXPECT_NE(iso.verdict, Verdict::refuted);
    try {
        check_comma_resolution(corpus_functor("discrete2_to_arrow"), 2, 2);
        FAIL() << "non-resolution accepted";
    } catch (const Error& err) {
        EXPECT_EQ(err.kind(), ErrorKind::precondition);
    }
}
